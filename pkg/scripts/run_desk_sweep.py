#!/usr/bin/env python3
"""Generate the three desk-scale codes, sweep masks/schedules, and fit.

Produces campaign.csv and fits.csv in --outdir; these are the inputs the
plotting frontend consumes.  Defaults are sized for a quick desk run;
raise --trials for publication-quality error bars.
"""

import argparse
import sys
import time
from pathlib import Path

from hgpsim.cli import main as cli_main

DESK_CODES = ((18, 1), (24, 4), (30, 3))  # (n, sampler seed)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="desk_out")
    ap.add_argument("--trials", type=int, default=400)
    ap.add_argument("--tau", default="60,100")
    ap.add_argument("--p-phys", default="0.003")
    ap.add_argument("--p-mask", default="0.0,0.1,0.2,0.4")
    ap.add_argument("--schedules", default="simple,iterative")
    ap.add_argument("--base-seed", type=int, default=7)
    ap.add_argument("--parallelism", type=int, default=2)
    ap.add_argument("--t-min", type=int, default=50)
    args = ap.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    code_files = []
    for n, seed in DESK_CODES:
        path = outdir / f"base_n{n}_s{seed}.code"
        if cli_main(["gen-code", "--n", str(n), "--dv", "5", "--dc", "6",
                     "--seed", str(seed), "--out", str(path)]) != 0:
            return 2
        code_files.append(str(path))

    campaign = outdir / "campaign.csv"
    if campaign.exists():
        campaign.unlink()
    cfg = outdir / "sweep.cfg"
    cfg.write_text(
        f"code_files = {','.join(code_files)}\n"
        f"p_phys = {args.p_phys}\n"
        f"p_mask = {args.p_mask}\n"
        f"schedule = {args.schedules}\n"
        f"tau = {args.tau}\n"
        f"trials = {args.trials}\n"
        f"base_seed = {args.base_seed}\n"
        f"parallelism = {args.parallelism}\n"
        f"output = {campaign}\n"
    )
    t0 = time.time()
    if cli_main(["run", "--config", str(cfg)]) != 0:
        return 2
    print(f"sweep finished in {time.time() - t0:.0f}s", file=sys.stderr)
    return cli_main(["fit", str(campaign), "--t-min", str(args.t_min),
                     "--out", str(outdir / "fits.csv")])


if __name__ == "__main__":
    sys.exit(main())
