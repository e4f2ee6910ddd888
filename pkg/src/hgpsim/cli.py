"""Command-line entry point: gen-code, run, and fit subcommands.

Campaign configs are flat "key = value" text files with comma-separated
list values; see configs/ for examples.  Exit codes: 0 success, 1
validation error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .codes import (
    ClassicalCode,
    classical_distance,
    hgp_product,
    load_code,
    sample_biregular_code,
    save_code,
)
from .csvio import read_campaign_csv, write_campaign_csv, write_fits_csv
from .errors import CapacityError, CsvSchemaError, GenerationError
from .fits import fit_campaign_rows
from .masking import FIXED_FRACTION, MASK_MODELS, SCHEDULE_KINDS
from .protocol import ScheduleSpec, run_campaign
from .ssf import precompute_small_sets


class ValidationError(ValueError):
    """Invalid CLI arguments or campaign config."""


def _gen_code(n: int, dv: int, dc: int, seed: int) -> ClassicalCode:
    code = sample_biregular_code(n, dv, dc, seed)
    if code.k <= 20:
        code.d = classical_distance(code)
    return code


def cmd_gen_code(args: argparse.Namespace) -> int:
    code = _gen_code(args.n, args.dv, args.dc, args.seed)
    save_code(code, args.out)
    d = code.d if code.d is not None else "?"
    n_qubits = code.n**2 + (code.n - code.k) ** 2
    print(f"[[{n_qubits}, {code.k**2}, {d}]]")
    print(f"base [{code.n},{code.k},{d}] ({code.dv},{code.dc})-biregular, seed {code.seed} -> {args.out}")
    return 0


@dataclass
class CampaignConfig:
    code_files: list[str] = field(default_factory=list)
    n: int | None = None
    dv: int | None = None
    dc: int | None = None
    code_seed: int | None = None
    p_phys: list[float] = field(default_factory=list)
    p_mask: list[float] = field(default_factory=list)
    schedule: list[str] = field(default_factory=lambda: ["simple"])
    tau: list[int] = field(default_factory=list)
    trials: int = 0
    base_seed: int = 0
    parallelism: int = 1
    mask_model: str = FIXED_FRACTION
    output: str = "campaign.csv"


def parse_config(path: str | Path) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path) as f:
        for line_no, raw in enumerate(f, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValidationError(f"{path}:{line_no}: expected 'key = value', got {line!r}")
            key, value = line.split("=", 1)
            values[key.strip()] = value.strip()
    return values


def _split_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def build_config(values: dict[str, str]) -> CampaignConfig:
    cfg = CampaignConfig()
    problems: list[str] = []
    try_parsers = {
        "code_files": lambda v: _split_list(v),
        "n": int, "dv": int, "dc": int, "code_seed": int,
        "p_phys": lambda v: [float(x) for x in _split_list(v)],
        "p_mask": lambda v: [float(x) for x in _split_list(v)],
        "schedule": _split_list,
        "tau": lambda v: [int(x) for x in _split_list(v)],
        "trials": int, "base_seed": int, "parallelism": int,
        "mask_model": str, "output": str,
    }
    for key, value in values.items():
        if key not in try_parsers:
            problems.append(f"unknown key {key!r}")
            continue
        try:
            setattr(cfg, key, try_parsers[key](value))
        except ValueError:
            problems.append(f"bad value for {key}: {value!r}")
    if problems:
        raise ValidationError("; ".join(problems))

    if not cfg.code_files and cfg.n is None:
        problems.append("either code_files or (n, dv, dc, code_seed) is required")
    if cfg.n is not None and None in (cfg.dv, cfg.dc, cfg.code_seed):
        problems.append("n, dv, dc, code_seed must be given together")
    for f in cfg.code_files:
        if not Path(f).exists():
            problems.append(f"code file not found: {f}")
    if not cfg.p_phys:
        problems.append("p_phys is required")
    if any(not 0 <= p <= 1 for p in cfg.p_phys):
        problems.append("p_phys values must be in [0, 1]")
    if not cfg.p_mask:
        problems.append("p_mask is required")
    if any(not 0 <= p <= 1 for p in cfg.p_mask):
        problems.append("p_mask values must be in [0, 1]")
    if any(s not in SCHEDULE_KINDS for s in cfg.schedule):
        problems.append(f"schedule values must be among {SCHEDULE_KINDS}")
    if not cfg.tau or any(t < 0 for t in cfg.tau):
        problems.append("tau is required and must be nonnegative")
    if cfg.trials < 1:
        problems.append("trials must be >= 1")
    if cfg.parallelism < 1:
        problems.append("parallelism must be >= 1")
    if cfg.mask_model not in MASK_MODELS:
        problems.append(f"mask_model must be one of {MASK_MODELS}")
    if problems:
        raise ValidationError("; ".join(problems))
    return cfg


def config_hash(cfg: CampaignConfig) -> str:
    """Digest of the simulation-relevant configuration.

    Code files enter via their content, never their path, and the output
    path is excluded, so reruns from different directories hash alike.
    """
    parts = [
        "codes=" + ",".join(
            hashlib.sha256(Path(f).read_bytes()).hexdigest() for f in cfg.code_files
        ),
        f"base={cfg.n},{cfg.dv},{cfg.dc},{cfg.code_seed}",
        "p_phys=" + ",".join(repr(p) for p in cfg.p_phys),
        "p_mask=" + ",".join(repr(p) for p in cfg.p_mask),
        "schedule=" + ",".join(cfg.schedule),
        "tau=" + ",".join(str(t) for t in cfg.tau),
        f"trials={cfg.trials}",
        f"base_seed={cfg.base_seed}",
        f"mask_model={cfg.mask_model}",
    ]
    return hashlib.sha256("\n".join(parts).encode()).hexdigest()[:16]


def cmd_run(args: argparse.Namespace) -> int:
    values = parse_config(args.config)
    cfg = build_config(values)
    if args.output:
        cfg.output = args.output

    bases: list[ClassicalCode] = []
    if cfg.code_files:
        bases = [load_code(f) for f in cfg.code_files]
    else:
        bases = [_gen_code(cfg.n, cfg.dv, cfg.dc, cfg.code_seed)]

    records = []
    cell_index = 0
    for base in bases:
        code = hgp_product(base)
        table = precompute_small_sets(code)
        for p_phys in cfg.p_phys:
            for p_mask in cfg.p_mask:
                for kind in cfg.schedule:
                    for tau in cfg.tau:
                        spec = ScheduleSpec(kind=kind, p_mask=p_mask, mask_model=cfg.mask_model)
                        rec = run_campaign(
                            code, spec, p_phys, tau, cfg.trials, cfg.base_seed,
                            parallelism=cfg.parallelism, cell_index=cell_index, table=table,
                        )
                        records.append(rec)
                        cell_index += 1
                        print(
                            f"cell {cell_index}: {rec.code_id} p_phys={p_phys} p_mask={p_mask} "
                            f"{kind} tau={tau} -> p_log={rec.p_log:.5f}",
                            file=sys.stderr,
                        )

    metadata = {
        "config_hash": config_hash(cfg),
        "base_seed": str(cfg.base_seed),
        "mask_model": cfg.mask_model,
    }
    write_campaign_csv(cfg.output, records, metadata=metadata, append=True)
    print(f"wrote {len(records)} rows to {cfg.output}")
    return 0


def cmd_fit(args: argparse.Namespace) -> int:
    rows = []
    for path in args.inputs:
        rows.extend(read_campaign_csv(path))
    fit_rows = fit_campaign_rows(rows, t_min=args.t_min)
    write_fits_csv(args.out, fit_rows)
    print(f"wrote {len(fit_rows)} fit rows to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hgpsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen-code", help="sample a biregular base code and store it")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--dv", type=int, required=True)
    p_gen.add_argument("--dc", type=int, required=True)
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=cmd_gen_code)

    p_run = sub.add_parser("run", help="run a campaign sweep from a config file")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--output", help="override the config's output path")
    p_run.set_defaults(func=cmd_run)

    p_fit = sub.add_parser("fit", help="fit eps_L and Lambda from campaign CSVs")
    p_fit.add_argument("inputs", nargs="+", metavar="CSV")
    p_fit.add_argument("--t-min", type=int, default=300)
    p_fit.add_argument("--out", required=True)
    p_fit.set_defaults(func=cmd_fit)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, ValueError, CsvSchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (GenerationError, CapacityError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
