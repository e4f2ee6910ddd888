import numpy as np
import pytest

from hgpsim.codes import ClassicalCode, hgp_product, sample_biregular_code
from hgpsim.errors import CapacityError
from hgpsim.gf2 import BinaryMatrix, BitVector, row_space_member, syndrome
from hgpsim.masking import Mask, FIXED_FRACTION
from hgpsim.reference import reference_decode
from hgpsim.ssf import (
    NEVER_POSITIVE,
    precompute_small_sets,
    ssf_decode,
    ssf_decode_flipped,
)

REP3 = [[1, 1, 0], [0, 1, 1]]


@pytest.fixture(scope="module")
def code13():
    return hgp_product(ClassicalCode.from_matrix(BinaryMatrix.from_dense(np.array(REP3, dtype=np.uint8))))


@pytest.fixture(scope="module")
def table13(code13):
    return precompute_small_sets(code13)


@pytest.fixture(scope="module")
def code_small():
    # (3,4)-biregular base keeps the reference decoder affordable
    return hgp_product(sample_biregular_code(8, 3, 4, seed=1))


@pytest.fixture(scope="module")
def table_small(code_small):
    return precompute_small_sets(code_small)


def residual_ok(code, error_bits, correction):
    resid = BitVector.from_bits(np.asarray(error_bits, dtype=np.uint8) ^ correction.to_bits())
    return syndrome(code.Hz, resid).is_zero() and row_space_member(code.Hx, resid)


class TestTable:
    def test_candidate_counts(self, code13, table13):
        for c in range(code13.n_xchecks):
            w = len(code13.xcheck_qubits[c])
            assert table13.candidates_of_check(c) == 2**w - 1

    def test_weight_eleven_checks(self):
        code = hgp_product(sample_biregular_code(12, 5, 6, seed=0))
        table = precompute_small_sets(code)
        weights = code.Hx.row_weights()
        assert weights.max() == 11
        c = int(np.argmax(weights))
        assert table.candidates_of_check(c) == 2047

    def test_total_size_matches_row_weights(self, code13, table13):
        expected = sum(2 ** int(w) - 1 for w in code13.Hx.row_weights())
        assert table13.n_candidates == expected

    def test_cached_syndromes_match_definition(self, code13, table13):
        # every stored pattern equals syndrome(Hz, indicator(F)) on the local list
        for k in range(table13.n_candidates):
            qubits = table13.subset_qubits(k)
            sig = syndrome(code13.Hz, BitVector.from_indices(code13.n_qubits, qubits))
            c = int(np.searchsorted(table13.sub_off, k, side="right") - 1)
            local = table13.lz_z[table13.lz_off[c] : table13.lz_off[c + 1]]
            word = int(table13.sub_smask[k])
            bits_from_table = {int(local[p]) for p in range(len(local)) if (word >> p) & 1}
            assert bits_from_table == set(sig.indices().tolist())

    def test_subset_order_size_then_lex(self, code13, table13):
        for c in range(code13.n_xchecks):
            lo, hi = table13.sub_off[c], table13.sub_off[c + 1]
            sizes = table13.sub_size[lo:hi]
            assert (np.diff(sizes) >= 0).all()
            masks = table13.sub_qmask[lo:hi]
            for k in range(1, len(masks)):
                if sizes[k] == sizes[k - 1]:
                    # lexicographic on sorted position tuples
                    a = sorted(p for p in range(20) if (int(masks[k - 1]) >> p) & 1)
                    b = sorted(p for p in range(20) if (int(masks[k]) >> p) & 1)
                    assert a < b

    def test_min_positive_weight(self, table13):
        assert (table13.min_swt > 0).all()
        assert (table13.min_swt < NEVER_POSITIVE).all()

    def test_weight_budget(self):
        # [21,20] single-parity base gives X-checks of weight 22 > 20
        wide = ClassicalCode.from_matrix(BinaryMatrix.from_dense(np.ones((1, 21), dtype=np.uint8)))
        code = hgp_product(wide)
        with pytest.raises(CapacityError):
            precompute_small_sets(code)


class TestDecode:
    def test_zero_syndrome(self, code13, table13):
        res = ssf_decode(code13, table13, BitVector.zeros(code13.n_zchecks))
        assert res.correction.is_zero()
        assert res.iterations == 0
        assert not res.stalled

    def test_weight_one_exhaustive(self, code13, table13):
        for q in range(code13.n_qubits):
            e = np.zeros(code13.n_qubits, dtype=np.uint8)
            e[q] = 1
            syn = syndrome(code13.Hz, BitVector.from_bits(e))
            res = ssf_decode(code13, table13, syn)
            assert residual_ok(code13, e, res.correction), f"qubit {q}"
            assert not res.stalled

    def test_weight_one_exhaustive_hgp_family(self, code_small, table_small):
        for q in range(code_small.n_qubits):
            e = np.zeros(code_small.n_qubits, dtype=np.uint8)
            e[q] = 1
            res = ssf_decode(code_small, table_small, syndrome(code_small.Hz, BitVector.from_bits(e)))
            assert residual_ok(code_small, e, res.correction), f"qubit {q}"

    def test_isolated_error_invisible(self, code13, table13):
        # mask all Z-checks of qubit 0: its weight-1 error yields nothing to do
        q = 0
        mask = frozenset(int(z) for z in code13.qubit_zchecks[q])
        e = BitVector.from_indices(code13.n_qubits, [q])
        syn = syndrome(code13.Hz, e)
        res = ssf_decode(code13, table13, syn, mask)
        assert res.correction.is_zero()
        assert not res.stalled  # nothing visible remains

    def test_masked_positions_pinned(self, code13, table13):
        e = BitVector.from_indices(code13.n_qubits, [0])
        syn = syndrome(code13.Hz, e)
        mask = frozenset(int(z) for z in syn.indices()[:1])
        res_prepinned = ssf_decode(code13, table13, _zeroed(syn, mask), mask)
        res_raw = ssf_decode(code13, table13, syn, mask)
        assert res_prepinned.correction == res_raw.correction

    def test_syndrome_length_checked(self, code13, table13):
        with pytest.raises(ValueError):
            ssf_decode(code13, table13, BitVector.zeros(5))

    def test_determinism(self, code13, table13):
        rng = np.random.default_rng(0)
        e = BitVector.from_indices(code13.n_qubits, rng.choice(13, 3, replace=False))
        syn = syndrome(code13.Hz, e)
        r1 = ssf_decode(code13, table13, syn, {1, 4})
        r2 = ssf_decode(code13, table13, syn, {1, 4})
        assert r1.correction == r2.correction and r1.iterations == r2.iterations

    def test_stalled_flag_consistent(self, code13, table13):
        rng = np.random.default_rng(5)
        for _ in range(50):
            e = BitVector.from_indices(code13.n_qubits, rng.choice(13, 4, replace=False))
            syn = syndrome(code13.Hz, e)
            res = ssf_decode(code13, table13, syn)
            assert res.stalled == (res.final_visible_syndrome_weight > 0)

    def test_iterations_bounded_by_initial_weight(self, code_small, table_small):
        rng = np.random.default_rng(2)
        for _ in range(60):
            e = BitVector.from_indices(
                code_small.n_qubits, rng.choice(code_small.n_qubits, 5, replace=False)
            )
            syn = syndrome(code_small.Hz, e)
            res = ssf_decode(code_small, table_small, syn)
            assert res.iterations <= syn.weight()

    def test_every_flip_strictly_decreases_visible_weight(self, code13, table13):
        # instrumented trajectory from the reference, validated against the
        # fast path's iteration count
        rng = np.random.default_rng(8)
        for _ in range(40):
            e = BitVector.from_indices(13, rng.choice(13, rng.integers(1, 5), replace=False))
            syn = syndrome(code13.Hz, e)
            mask = frozenset(int(z) for z in rng.choice(code13.n_zchecks, rng.integers(0, 4), replace=False))
            trace: list[int] = []
            _, iters, _ = reference_decode(code13, syn.to_bits(), mask, weight_trace=trace)
            assert len(trace) == iters + 1
            assert all(b < a for a, b in zip(trace, trace[1:]))
            fast = ssf_decode(code13, table13, syn, mask)
            assert fast.iterations == iters


class TestDecodeFlipped:
    def test_no_flips_equals_plain(self, code13, table13):
        e = BitVector.from_indices(code13.n_qubits, [2, 7])
        plain = ssf_decode(code13, table13, syndrome(code13.Hz, e))
        flipped = ssf_decode_flipped(code13, table13, e, flips=())
        assert plain.correction == flipped.correction
        assert plain.iterations == flipped.iterations

    def test_phantom_syndrome_recorded(self, code13, table13):
        res = ssf_decode_flipped(code13, table13, BitVector.zeros(code13.n_qubits), flips={3})
        # decoder acted on a weight-1 phantom; outcome is deterministic
        again = ssf_decode_flipped(code13, table13, BitVector.zeros(code13.n_qubits), flips={3})
        assert res == again

    def test_cancelling_flips(self, code13, table13):
        e = BitVector.from_indices(code13.n_qubits, [5])
        support = {int(z) for z in syndrome(code13.Hz, e).indices()}
        res = ssf_decode_flipped(code13, table13, e, flips=support)
        assert res.correction.is_zero()
        assert res.iterations == 0


class TestReferenceEquivalence:
    def test_random_masked_cases_13(self, code13, table13):
        rng = np.random.default_rng(123)
        for _ in range(150):
            e = BitVector.from_indices(13, rng.choice(13, rng.integers(0, 5), replace=False))
            syn = syndrome(code13.Hz, e)
            mask = frozenset(
                int(z) for z in rng.choice(code13.n_zchecks, rng.integers(0, 7), replace=False)
            )
            fast = ssf_decode(code13, table13, syn, mask)
            corr, iters, final_w = reference_decode(code13, syn.to_bits(), mask)
            assert np.array_equal(corr, fast.correction.to_bits())
            assert iters == fast.iterations
            assert final_w == fast.final_visible_syndrome_weight

    def test_random_cases_small_hgp(self, code_small, table_small):
        rng = np.random.default_rng(7)
        for _ in range(25):
            e = BitVector.from_indices(
                code_small.n_qubits, rng.choice(code_small.n_qubits, rng.integers(0, 4), replace=False)
            )
            syn = syndrome(code_small.Hz, e)
            mask = frozenset(
                int(z) for z in rng.choice(code_small.n_zchecks, rng.integers(0, 20), replace=False)
            )
            fast = ssf_decode(code_small, table_small, syn, mask)
            corr, iters, _ = reference_decode(code_small, syn.to_bits(), mask)
            assert np.array_equal(corr, fast.correction.to_bits())
            assert iters == fast.iterations


def _zeroed(syn, mask):
    out = syn.copy()
    for z in mask:
        if out.get(z):
            out.flip(z)
    return out
