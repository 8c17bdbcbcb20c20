"""Tests for the exact Pauli algebra.

Dense oracles are built inline from an independent 2x2 matrix table so they
do not share any code path with the module under test.
"""

import itertools

import numpy as np
import pytest

from designlab import paulialg
from designlab.paulialg import (
    PauliString,
    commutes,
    enumerate_paulis,
    from_label,
    identity,
    k_phase,
    mul,
    random_pauli,
    trace_product,
)

SIGMA = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
LETTER = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}


def dense(p: PauliString) -> np.ndarray:
    """Independent dense oracle: i**phase times a Kronecker chain."""
    m = np.array([[1]], dtype=complex)
    for x, z in zip(p.x_bits, p.z_bits):
        m = np.kron(m, SIGMA[LETTER[(x, z)]])
    return (1j**p.phase) * m


def all_paulis(n):
    return enumerate_paulis(n)


X = from_label("X")
Y = from_label("Y")
Z = from_label("Z")
I1 = from_label("I")


class TestMul:
    def test_involution(self):
        assert mul(X, X) == identity(1)

    def test_zx_is_i_y(self):
        # ZX = iY: bits of Y with phase exponent 1
        r = mul(Z, X)
        assert (r.x_bits, r.z_bits) == ((1,), (1,))
        assert r.phase == 1

    def test_xz_chain_is_minus_identity(self):
        r = paulialg.mul_all([X, Z, X, Z])
        oracle = SIGMA["X"] @ SIGMA["Z"] @ SIGMA["X"] @ SIGMA["Z"]
        assert r.is_identity_bits
        np.testing.assert_allclose(dense(r), oracle, atol=1e-12)
        assert r.phase == 2  # -I

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            mul(X, from_label("XX"))

    @pytest.mark.parametrize("n", [1, 2])
    def test_mul_matches_dense_all_pairs(self, n):
        ps = all_paulis(n)
        for p, q in itertools.product(ps, ps):
            np.testing.assert_allclose(dense(mul(p, q)), dense(p) @ dense(q), atol=1e-12)

    def test_mul_matches_dense_random_n3(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            p = random_pauli(3, rng)
            q = random_pauli(3, rng)
            np.testing.assert_allclose(dense(mul(p, q)), dense(p) @ dense(q), atol=1e-12)


class TestCommutes:
    def test_x_z_anticommute(self):
        assert not commutes(X, Z)

    def test_two_anticommuting_sites_commute(self):
        assert commutes(from_label("XZ"), from_label("ZX"))

    def test_single_qubit_commutant_counts(self):
        # Of the d^2 - 1 non-identity Paulis, d^2/2 - 1 commute with a fixed
        # non-identity P (P itself included) and d^2/2 anticommute; at n=1
        # that is 1 commuting and 2 anticommuting.
        for p in all_paulis(1)[1:]:
            others = all_paulis(1)[1:]
            n_comm = sum(commutes(p, q) for q in others)
            assert n_comm == 1
            assert len(others) - n_comm == 2

    def test_matches_k_phase(self):
        for p, q in itertools.product(all_paulis(2), repeat=2):
            assert commutes(p, q) == (k_phase(p, q) == 1)


class TestKPhase:
    def test_examples(self):
        assert k_phase(X, Z) == -1
        for p in all_paulis(2):
            assert k_phase(p, identity(2)) == 1

    def test_xy_zz_dense_oracle(self):
        p = from_label("XY")
        q = from_label("ZZ")
        lhs = dense(q).conj().T @ dense(p) @ dense(q)
        assert k_phase(p, q) == 1
        np.testing.assert_allclose(lhs, k_phase(p, q) * dense(p), atol=1e-12)

    def test_conjugation_identity_random(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            p = random_pauli(2, rng)
            q = random_pauli(2, rng)
            lhs = dense(q).conj().T @ dense(p) @ dense(q)
            np.testing.assert_allclose(lhs, k_phase(p, q) * dense(p), atol=1e-12)


class TestTraceProduct:
    def test_traceless(self):
        assert trace_product([X]) == 0

    def test_orthogonality(self):
        # tr{P_i^dag P_j} = d delta_ij
        assert trace_product([X, X]) == 2
        for p, q in itertools.product(all_paulis(1), repeat=2):
            val = trace_product([p.adjoint(), q])
            assert val == (2 if p == q else 0)

    def test_xzxz(self):
        assert trace_product([X, Z, X, Z]) == -2
        oracle = np.trace(SIGMA["X"] @ SIGMA["Z"] @ SIGMA["X"] @ SIGMA["Z"])
        assert trace_product([X, Z, X, Z]) == pytest.approx(oracle)

    def test_empty_returns_d(self):
        assert trace_product([], n=3) == 8
        with pytest.raises(ValueError):
            trace_product([])

    def test_matches_dense_exactly(self):
        ps = all_paulis(2)
        rng = np.random.default_rng(3)
        for length in (1, 2, 3, 4):
            for _ in range(40):
                factors = [ps[rng.integers(len(ps))] for _ in range(length)]
                oracle = np.trace(np.linalg.multi_dot([dense(f) for f in factors])) if length > 1 else np.trace(dense(factors[0]))
                assert trace_product(factors) == oracle


class TestEnumerate:
    def test_n1_order(self):
        labels = [p.label() for p in enumerate_paulis(1)]
        assert labels == ["I", "X", "Z", "Y"]

    def test_n2_count(self):
        assert len(enumerate_paulis(2)) == 16

    def test_all_phase_zero_and_distinct(self):
        ps = enumerate_paulis(2)
        assert all(p.phase == 0 for p in ps)
        assert len(set(ps)) == 16

    def test_guard(self):
        with pytest.raises(ValueError):
            enumerate_paulis(9)

    def test_index_roundtrip(self):
        for i, p in enumerate(enumerate_paulis(2)):
            assert paulialg.pauli_index(p) == i


class TestRandomPauli:
    def test_exclude_identity(self):
        rng = np.random.default_rng(0)
        for _ in range(1000):
            p = random_pauli(2, rng, exclude_identity=True)
            assert not p.is_identity_bits

    def test_uniform_frequencies(self):
        # binomial 5-sigma band around 1/4 per single-qubit Pauli
        rng = np.random.default_rng(42)
        n_draws = 100_000
        counts = {lbl: 0 for lbl in "IXZY"}
        for _ in range(n_draws):
            counts[random_pauli(1, rng).label()] += 1
        sigma = np.sqrt(n_draws * 0.25 * 0.75)
        for c in counts.values():
            assert abs(c - n_draws / 4) < 5 * sigma

    def test_seed_determinism(self):
        a = [random_pauli(3, np.random.default_rng(5)) for _ in range(20)]
        b = [random_pauli(3, np.random.default_rng(5)) for _ in range(20)]
        assert a == b


class TestPauliTwirl:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_twirl_projects_to_trace(self, n):
        # (1/4^n) sum_P P^dag A P == tr(A)/d * I for random dense A
        rng = np.random.default_rng(n)
        d = 2**n
        a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        acc = np.zeros((d, d), dtype=complex)
        for p in enumerate_paulis(n):
            m = dense(p)
            acc += m.conj().T @ a @ m
        acc /= 4**n
        np.testing.assert_allclose(acc, np.trace(a) / d * np.eye(d), atol=1e-10)


class TestLabels:
    def test_roundtrip(self):
        for p in enumerate_paulis(2):
            assert from_label(p.label()) == p

    def test_leftmost_is_qubit_zero(self):
        p = from_label("XI")
        assert p.x_bits == (1, 0)

    def test_phase_never_serialized(self):
        with pytest.raises(ValueError):
            mul(Z, X).label()

    def test_bad_label(self):
        with pytest.raises(ValueError):
            from_label("XQ")
