"""Acceptance suite: one test per exit criterion, heaviest last.

Every tolerance and confidence level is pinned here.  The desk-scale trend
tests run the frozen campaign configuration in DESK below (about ten
minutes at parallelism 2); all other criteria finish in seconds to a few
minutes.  A summary table prints at the end of the pytest run.
"""

import math
import sys
import time
from itertools import combinations

import numpy as np
import pytest

from hgpsim.cli import main
from hgpsim.codes import (
    ClassicalCode,
    classical_distance,
    hgp_product,
    quantum_distance_bruteforce,
    sample_biregular_code,
)
from hgpsim.csvio import read_campaign_csv
from hgpsim.fits import RoundsCurvePoint, fit_error_per_round, fit_lambda
from hgpsim.gf2 import BinaryMatrix, BitVector, row_space_member, syndrome
from hgpsim.masking import (
    IID_BERNOULLI,
    Schedule,
    exists_isolated_qubit,
    residual_degree_distribution,
    sample_mask,
)
from hgpsim.protocol import ScheduleSpec, run_campaign, run_trial
from hgpsim.reference import reference_run_trial
from hgpsim.ssf import precompute_small_sets, ssf_decode

Z95 = 1.6448536269514722  # one-sided 95%

DESK = dict(
    codes=((18, 1), (24, 4), (30, 3)),  # (base n, sampler seed); distances 6, 8, 10
    p_phys=0.003,
    trials=2000,
    trials_schedule_cells=4000,  # the two cells compared in the schedule-ordering test
    tau=100,
    fit_taus=(60, 100),
    t_min=50,
    base_seed=20260809,
    parallelism=2,
)

REP3 = np.array([[1, 1, 0], [0, 1, 1]], dtype=np.uint8)


@pytest.fixture(scope="module")
def code13():
    base = ClassicalCode.from_matrix(BinaryMatrix.from_dense(REP3))
    base.d = classical_distance(base)
    return hgp_product(base)


@pytest.fixture(scope="module")
def table13(code13):
    return precompute_small_sets(code13)


def test_c1_hgp_structural_identity():
    """20 sampled (5,6) codes: qubit count, k, commutation, degree bounds; exact."""
    checked = 0
    for n in (12, 18, 24, 30, 48):
        for seed in range(4):
            base = sample_biregular_code(n, 5, 6, seed)
            code = hgp_product(base)
            m = base.m
            assert code.n_qubits == n * n + m * m
            assert code.k == base.k**2
            assert not ((code.Hx.to_dense() @ code.Hz.to_dense().T) % 2).any()
            assert code.Hx.row_weights().max() == 11
            assert code.Hz.row_weights().max() == 11
            degrees = code.Hx.col_weights() + code.Hz.col_weights()
            assert degrees.max() == 12
            checked += 1
    assert checked == 20


def test_c2_repetition_base_gives_13_1_3(code13):
    """[3,1,3] base -> [[13,1,3]] with brute-force distance 3 at w_max 4; exact."""
    assert (code13.n_qubits, code13.k) == (13, 1)
    assert code13.base.d == 3
    assert quantum_distance_bruteforce(code13, w_max=4) == 3
    assert quantum_distance_bruteforce(code13, w_max=2) is None


def test_c3_ssf_weight1_exhaustive(code13, table13):
    """Every weight-1 error on [[13,1,3]] and an n=12-base code is corrected; 100%."""
    cases = [(code13, table13)]
    code244 = hgp_product(sample_biregular_code(12, 5, 6, seed=0))
    cases.append((code244, precompute_small_sets(code244)))
    for code, table in cases:
        for q in range(code.n_qubits):
            e = np.zeros(code.n_qubits, dtype=np.uint8)
            e[q] = 1
            res = ssf_decode(code, table, syndrome(code.Hz, BitVector.from_bits(e)))
            resid = BitVector.from_bits(e ^ res.correction.to_bits())
            assert syndrome(code.Hz, resid).is_zero(), (code.n_qubits, q)
            assert code.hx_rowspace.contains(resid), (code.n_qubits, q)


def test_c4_isolated_qubit_certificate():
    """Half-masked n=30-base code isolates some qubit in >= 99/100 seeds."""
    code = hgp_product(sample_biregular_code(30, 5, 6, seed=3))
    hits = sum(
        exists_isolated_qubit(code, sample_mask(code, 0.5, seed=seed)) for seed in range(100)
    )
    assert hits >= 99, f"isolated qubit in only {hits}/100 masks"


def test_c5_masked_degree_distribution():
    """iid masks at 10% and 30%: residual degrees within TV 0.02 of the binomial law."""
    code = hgp_product(sample_biregular_code(30, 5, 6, seed=3))
    n_masks = math.ceil(1e5 / code.n_qubits)
    for p in (0.1, 0.3):
        totals: dict[int, np.ndarray] = {}
        for seed in range(n_masks):
            hist = residual_degree_distribution(code, sample_mask(code, p, IID_BERNOULLI, seed))
            for deg, counts in hist.items():
                totals.setdefault(deg, np.zeros(deg + 1, dtype=np.int64))
                totals[deg] += counts
        assert sum(int(t.sum()) for t in totals.values()) >= 1e5
        for deg, counts in totals.items():
            emp = counts / counts.sum()
            ref = np.array(
                [math.comb(deg, i) * (1 - p) ** i * p ** (deg - i) for i in range(deg + 1)]
            )
            tv = 0.5 * float(np.abs(emp - ref).sum())
            assert tv < 0.02, f"p={p} degree {deg}: TV {tv:.4f}"


def test_c6_protocol_oracle_equivalence(code13, table13):
    """10^3 trials of [[13,1,3]]: optimized protocol matches the straight-line
    reference trial for trial (outcome and full residual-weight trace); exact."""
    groups = [("simple", 0.0, 400), ("simple", 0.3, 400), ("iterative", 0.5, 200)]
    p_phys, tau = 0.01, 30
    total = 0
    for gi, (kind, p_mask, n_trials) in enumerate(groups):
        sched = Schedule(kind=kind, base_mask=sample_mask(code13, p_mask, seed=gi), tau=tau)
        for seed in range(n_trials):
            fast = run_trial(code13, table13, sched, p_phys, seed=seed, record_trace=True)
            failed_ref, _, trace_ref = reference_run_trial(code13, sched, p_phys, seed=seed)
            assert fast.failed == failed_ref, (kind, p_mask, seed)
            assert fast.residual_weight_trace == trace_ref, (kind, p_mask, seed)
            total += 1
    assert total == 1000


def test_c7_fit_recovery():
    """eps to 1e-6 and Lambda to 1e-6 noiseless; 1% / 2% median under noise."""
    # noiseless
    eps_true = 0.01
    pts = []
    for t in (300, 600, 1000):
        p = 1 - (1 - eps_true) ** t
        pts.append(RoundsCurvePoint(t, p, math.sqrt(p * (1 - p) / 1e4), 10_000))
    fit = fit_error_per_round(pts, t_min=300)
    assert abs(fit.eps_L - eps_true) / eps_true < 1e-6

    lam_true, c_true = 1.8, 0.1
    fam = [(d, c_true / lam_true ** ((d + 1) / 2), 1e-9) for d in (4, 8, 16)]
    lam_fit = fit_lambda(fam)
    assert abs(lam_fit.Lambda - lam_true) / lam_true < 1e-6
    assert abs(lam_fit.C - c_true) / c_true < 1e-6

    # binomial / multiplicative noise, 100 repetitions, median relative error
    rng = np.random.default_rng(0)
    eps_errs, lam_errs = [], []
    for _ in range(100):
        pts = []
        for t in (300, 500, 800):
            p_true = 1 - (1 - 0.005) ** t
            p = rng.binomial(10_000, p_true) / 10_000
            pts.append(RoundsCurvePoint(t, p, math.sqrt(p * (1 - p) / 1e4), 10_000))
        eps_errs.append(abs(fit_error_per_round(pts, t_min=300).eps_L - 0.005) / 0.005)
        fam = []
        for d in (4, 8, 16):
            eps = c_true / lam_true ** ((d + 1) / 2)
            fam.append((d, eps * (1 + 0.05 * rng.standard_normal()), 0.05 * eps))
        lam_errs.append(abs(fit_lambda(fam).Lambda - lam_true) / lam_true)
    assert np.median(eps_errs) < 0.01
    assert np.median(lam_errs) < 0.02


@pytest.fixture(scope="module")
def desk_cells():
    """The frozen desk-scale campaign: ten cells on three codes."""
    codes = {}
    for n, seed in DESK["codes"]:
        base = sample_biregular_code(n, 5, 6, seed)
        base.d = classical_distance(base)
        code = hgp_product(base)
        codes[n] = (code, precompute_small_sets(code))
        print(f"desk code n={n}: [[{code.n_qubits},{code.k},{code.d}]]", file=sys.stderr)

    cells_spec = []
    for n, _ in DESK["codes"]:
        for tau in DESK["fit_taus"]:
            cells_spec.append((n, "simple", 0.1, tau, DESK["trials"]))
    for pm in (0.0, 0.2):
        cells_spec.append((24, "simple", pm, DESK["tau"], DESK["trials"]))
    cells_spec.append((24, "simple", 0.4, DESK["tau"], DESK["trials_schedule_cells"]))
    cells_spec.append((24, "iterative", 0.4, DESK["tau"], DESK["trials_schedule_cells"]))

    cells = {}
    for idx, (n, kind, pm, tau, trials) in enumerate(cells_spec):
        code, table = codes[n]
        t0 = time.perf_counter()
        rec = run_campaign(
            code,
            ScheduleSpec(kind, pm),
            DESK["p_phys"],
            tau,
            trials,
            DESK["base_seed"],
            parallelism=DESK["parallelism"],
            cell_index=idx,
            table=table,
        )
        cells[(n, kind, pm, tau)] = rec
        print(
            f"desk cell {idx}: n={n} {kind} p_mask={pm} tau={tau} trials={trials} "
            f"-> p_log={rec.p_log:.4f}±{rec.stderr:.4f} ({time.perf_counter() - t0:.0f}s)",
            file=sys.stderr,
        )
    return codes, cells


def _diff_se(a, b):
    return math.sqrt(a.stderr**2 + b.stderr**2)


def test_c8a_desk_mask_monotonicity(desk_cells):
    """p_log strictly increases with p_mask in {0, 0.2, 0.4} at 95% confidence."""
    _, cells = desk_cells
    series = [cells[(24, "simple", pm, DESK["tau"])] for pm in (0.0, 0.2, 0.4)]
    for lo, hi in zip(series, series[1:]):
        margin = Z95 * _diff_se(lo, hi)
        assert hi.p_log - lo.p_log > margin, (
            f"p_mask {lo.p_mask}->{hi.p_mask}: {lo.p_log:.4f} -> {hi.p_log:.4f} "
            f"(needed increase > {margin:.4f})"
        )


def test_c8b_desk_suppression_lambda(desk_cells):
    """At 10% masking, error per round falls with distance: Lambda > 1 at 95%."""
    codes, cells = desk_cells
    family = []
    for n, _ in DESK["codes"]:
        code, _tbl = codes[n]
        pts = [
            RoundsCurvePoint(
                tau=rec.tau, p_log=rec.p_log, stderr=rec.stderr, trials=rec.trials
            )
            for tau in DESK["fit_taus"]
            for rec in [cells[(n, "simple", 0.1, tau)]]
        ]
        fit = fit_error_per_round(pts, t_min=DESK["t_min"])
        family.append((code.d, fit.eps_L, fit.stderr))
        print(f"desk eps n={n} d={code.d}: {fit.eps_L:.5f}±{fit.stderr:.5f}", file=sys.stderr)
    eps_by_d = sorted(family)
    assert all(a[1] > b[1] for a, b in zip(eps_by_d, eps_by_d[1:])), family
    sup = fit_lambda(family)
    print(f"desk Lambda = {sup.Lambda:.3f} ± {sup.Lambda_stderr:.3f}", file=sys.stderr)
    assert sup.Lambda - Z95 * sup.Lambda_stderr > 1.0


def test_c8c_desk_schedule_ordering(desk_cells):
    """At 40% masking, iterative unmasking beats the simple schedule at 95%."""
    _, cells = desk_cells
    simple = cells[(24, "simple", 0.4, DESK["tau"])]
    iterative = cells[(24, "iterative", 0.4, DESK["tau"])]
    margin = Z95 * _diff_se(simple, iterative)
    assert simple.p_log - iterative.p_log > margin, (
        f"simple {simple.p_log:.4f} vs iterative {iterative.p_log:.4f} "
        f"(needed gap > {margin:.4f})"
    )


def test_c9_pipeline_determinism(tmp_path):
    """gen -> run -> fit is byte-identical across executions and parallelism 1 vs 8."""
    def pipeline(workdir, parallelism):
        workdir.mkdir(exist_ok=True)
        code_file = workdir / "base.code"
        assert main(["gen-code", "--n", "12", "--dv", "5", "--dc", "6", "--seed", "1",
                     "--out", str(code_file)]) == 0
        cfg = workdir / "sweep.cfg"
        cfg.write_text(
            f"code_files = {code_file}\n"
            "p_phys = 0.004\n"
            "p_mask = 0.0,0.3\n"
            "schedule = simple,iterative\n"
            "tau = 40,80\n"
            "trials = 30\n"
            "base_seed = 5\n"
            f"parallelism = {parallelism}\n"
            f"output = {workdir / 'campaign.csv'}\n"
        )
        assert main(["run", "--config", str(cfg)]) == 0
        assert main(["fit", str(workdir / "campaign.csv"), "--t-min", "30",
                     "--out", str(workdir / "fits.csv")]) == 0
        return (
            code_file.read_bytes(),
            (workdir / "campaign.csv").read_bytes(),
            (workdir / "fits.csv").read_bytes(),
        )

    first = pipeline(tmp_path / "a", parallelism=1)
    second = pipeline(tmp_path / "b", parallelism=1)
    eight = pipeline(tmp_path / "c", parallelism=8)
    assert first == second
    assert first == eight
    rows = read_campaign_csv(tmp_path / "a" / "campaign.csv")
    assert len(rows) == 8
