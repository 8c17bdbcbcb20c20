"""Tests for the exact Weingarten layer.

Character tables and Weingarten closed forms are frozen from the S_2, S_3
and S_4 tables; brute-force oracles (permutation sums, dense matrices,
Monte Carlo moments) provide the independent routes.
"""

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from designlab import wg

F = Fraction


class TestPartitions:
    def test_two(self):
        assert wg.partitions(2) == [(2,), (1, 1)]

    def test_three_order(self):
        assert wg.partitions(3) == [(3,), (2, 1), (1, 1, 1)]

    def test_four_count(self):
        assert len(wg.partitions(4)) == 5

    def test_guard(self):
        with pytest.raises(ValueError):
            wg.partitions(13)


# Frozen character tables, rows = irrep partition, cols = class cycle type.
S2_TABLE = {((2,), (1, 1)): 1, ((2,), (2,)): 1,
            ((1, 1), (1, 1)): 1, ((1, 1), (2,)): -1}
S3_TABLE = {
    ((3,), (1, 1, 1)): 1, ((3,), (2, 1)): 1, ((3,), (3,)): 1,
    ((2, 1), (1, 1, 1)): 2, ((2, 1), (2, 1)): 0, ((2, 1), (3,)): -1,
    ((1, 1, 1), (1, 1, 1)): 1, ((1, 1, 1), (2, 1)): -1, ((1, 1, 1), (3,)): 1,
}
S4_TABLE = {
    ((4,), (1, 1, 1, 1)): 1, ((4,), (2, 1, 1)): 1, ((4,), (2, 2)): 1, ((4,), (3, 1)): 1, ((4,), (4,)): 1,
    ((3, 1), (1, 1, 1, 1)): 3, ((3, 1), (2, 1, 1)): 1, ((3, 1), (2, 2)): -1, ((3, 1), (3, 1)): 0, ((3, 1), (4,)): -1,
    ((2, 2), (1, 1, 1, 1)): 2, ((2, 2), (2, 1, 1)): 0, ((2, 2), (2, 2)): 2, ((2, 2), (3, 1)): -1, ((2, 2), (4,)): 0,
    ((2, 1, 1), (1, 1, 1, 1)): 3, ((2, 1, 1), (2, 1, 1)): -1, ((2, 1, 1), (2, 2)): -1, ((2, 1, 1), (3, 1)): 0, ((2, 1, 1), (4,)): 1,
    ((1, 1, 1, 1), (1, 1, 1, 1)): 1, ((1, 1, 1, 1), (2, 1, 1)): -1, ((1, 1, 1, 1), (2, 2)): 1, ((1, 1, 1, 1), (3, 1)): 1, ((1, 1, 1, 1), (4,)): -1,
}


class TestCharacters:
    @pytest.mark.parametrize("table", [S2_TABLE, S3_TABLE, S4_TABLE])
    def test_tables(self, table):
        for (lam, mu), val in table.items():
            assert wg.character(lam, mu) == val, (lam, mu)

    def test_examples(self):
        assert wg.character((1, 1), (2,)) == -1
        assert wg.character((2, 1), (3,)) == -1
        assert wg.character((2, 2), (1, 1, 1, 1)) == 2

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            wg.character((2,), (3,))

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_orthogonality(self, k):
        # sum_mu |class(mu)| chi^lam(mu) chi^lam'(mu) = k! delta
        parts = wg.partitions(k)
        for lam, lam2 in itertools.product(parts, repeat=2):
            s = sum(wg.class_size(mu) * wg.character(lam, mu) * wg.character(lam2, mu)
                    for mu in parts)
            assert s == (math.factorial(k) if lam == lam2 else 0)

    def test_character_matches_permutation_matrix_trace(self):
        # chi^lam at identity equals hook dimension; cross-check class sizes
        for k in (2, 3, 4):
            assert sum(wg.class_size(mu) for mu in wg.partitions(k)) == math.factorial(k)


class TestDimensions:
    def test_hook_examples(self):
        assert wg.irrep_dimension((3, 1)) == 3
        for k in range(1, 8):
            assert wg.irrep_dimension((k,)) == 1

    @pytest.mark.parametrize("k", range(2, 7))
    def test_burnside(self, k):
        assert sum(wg.irrep_dimension(lam) ** 2 for lam in wg.partitions(k)) == math.factorial(k)

    def test_dimension_is_character_at_identity(self):
        for k in (2, 3, 4):
            ident = (1,) * k
            for lam in wg.partitions(k):
                assert wg.irrep_dimension(lam) == wg.character(lam, ident)


class TestContentPolynomial:
    def test_examples(self):
        assert wg.content_polynomial((1, 1), 2) == 2
        for d in (2, 3, 5, 7):
            assert wg.content_polynomial((2,), d) == d * (d + 1)
            assert wg.content_polynomial((2, 2), d) == d * d * (d + 1) * (d - 1)

    def test_vanishing_flagged_as_zero(self):
        assert wg.content_polynomial((1, 1, 1), 2) == 0


def wg_s2(d):
    return {(1, 1): F(1, d * d - 1), (2,): F(-1, d * (d * d - 1))}


def wg_s3(d):
    # Wg(1,1,1) from the character sum; the printed closed form carries a
    # denominator typo, so freeze the correct (d^2-2)/(d(d^2-1)(d^2-4)).
    return {
        (1, 1, 1): F(d * d - 2, d * (d * d - 1) * (d * d - 4)),
        (2, 1): F(-1, (d * d - 1) * (d * d - 4)),
        (3,): F(2, d * (d * d - 1) * (d * d - 4)),
    }


def wg_s4(d):
    den = d * d * (d * d - 1) * (d * d - 4) * (d * d - 9)
    return {
        (1, 1, 1, 1): F(d**4 - 8 * d * d + 6, den),
        (2, 1, 1): F(-(d**3) + 4 * d, den),
        (2, 2): F(d * d + 6, den),
        (3, 1): F(2 * d * d - 3, den),
        (4,): F(-5 * d, den),
    }


class TestWeingarten:
    def test_examples(self):
        assert wg.weingarten((1, 1), 4) == F(1, 15)
        assert wg.weingarten((2,), 2) == F(-1, 6)
        assert wg.weingarten((2, 1, 1), 4) == F(-1, 420)

    @pytest.mark.parametrize("d", [2, 3, 4, 5])
    def test_s2_table(self, d):
        for mu, val in wg_s2(d).items():
            assert wg.weingarten(mu, d) == val

    @pytest.mark.parametrize("d", [3, 4, 5])
    def test_s3_table(self, d):
        for mu, val in wg_s3(d).items():
            assert wg.weingarten(mu, d) == val

    @pytest.mark.parametrize("d", [4, 5])
    def test_s4_table(self, d):
        for mu, val in wg_s4(d).items():
            assert wg.weingarten(mu, d) == val

    def test_k1_forced_value(self):
        for d in range(1, 9):
            assert wg.weingarten((1,), d) == F(1, d)

    def test_undefined_beyond_dimension(self):
        with pytest.raises(ValueError, match="undefined"):
            wg.weingarten((2, 1), 2)


class TestQMatrix:
    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_k2(self, d):
        assert wg.q_matrix(2, d) == ((d * d, d), (d, d * d))

    def test_q_inverse_k2_d2(self):
        inv = wg.q_inverse(2, 2)
        assert inv == ((F(1, 3), F(-1, 6)), (F(-1, 6), F(1, 3)))

    @pytest.mark.parametrize("k,d", [(2, 2), (2, 4), (3, 3), (3, 4), (4, 4), (4, 5)])
    def test_q_times_inverse_is_identity_exactly(self, k, d):
        q = wg.q_matrix(k, d)
        qi = wg.q_inverse(k, d)
        m = len(q)
        for i in range(m):
            for j in range(m):
                s = sum(q[i][l] * qi[l][j] for l in range(m))
                assert s == (1 if i == j else 0)

    @pytest.mark.parametrize("k,d", [(2, 3), (3, 4), (4, 4)])
    def test_inverse_entries_are_weingarten_values(self, k, d):
        perms = wg.permutations_of(k)
        qi = wg.q_inverse(k, d)
        for i, pi in enumerate(perms):
            for j, sigma in enumerate(perms):
                assert qi[i][j] == wg.weingarten(wg.cycle_type(wg.compose(pi, sigma)), d)

    def test_singular_guard(self):
        with pytest.raises(ValueError):
            wg.q_inverse(3, 2)


class TestPermutationCombinatorics:
    def test_compose_convention(self):
        sigma = (1, 2, 0)
        tau = (0, 2, 1)
        assert wg.compose(sigma, tau) == tuple(sigma[tau[j]] for j in range(3))

    def test_matrix_homomorphism_s3(self):
        for sigma, tau in itertools.product(wg.permutations_of(3), repeat=2):
            lhs = wg.permutation_matrix(sigma, 2) @ wg.permutation_matrix(tau, 2)
            rhs = wg.permutation_matrix(wg.compose(sigma, tau), 2)
            assert np.array_equal(lhs, rhs)

    def test_trace_cycle_property(self):
        rng = np.random.default_rng(0)
        for k in (2, 3, 4):
            mats = [rng.normal(size=(3, 3)) for _ in range(k)]
            big = mats[0]
            for m in mats[1:]:
                big = np.kron(big, m)
            w = wg.permutation_matrix(wg.trace_cycle(k), 3)
            chained = np.linalg.multi_dot(mats) if k > 1 else mats[0]
            assert np.trace(big @ w) == pytest.approx(np.trace(chained), rel=1e-10)

    def test_trace_of_w_counts_cycles(self):
        for pi in wg.permutations_of(4):
            assert np.trace(wg.permutation_matrix(pi, 3)) == 3 ** len(wg.cycles_of(pi))


class TestHaarFramePotential:
    def test_values(self):
        assert wg.haar_frame_potential_exact(2, 4) == 2
        assert wg.haar_frame_potential_exact(3, 2) == 5
        assert wg.haar_frame_potential_exact(4, 2) == 14

    def test_catalan_consistency_at_small_k(self):
        # the d=2 closed form agrees with k! where both apply
        assert wg.haar_frame_potential_exact(1, 2) == 1
        assert wg.haar_frame_potential_exact(2, 2) == 2

    def test_out_of_scope(self):
        with pytest.raises(ValueError):
            wg.haar_frame_potential_exact(4, 3)


class TestHaarStateKfold:
    def test_k1(self):
        np.testing.assert_allclose(wg.haar_state_kfold(1, 4), np.eye(4) / 4, atol=1e-14)

    @pytest.mark.parametrize("k", [2, 3])
    def test_trace_one(self, k):
        assert np.trace(wg.haar_state_kfold(k, 2)) == pytest.approx(1.0, abs=1e-13)

    def test_matches_monte_carlo(self):
        # MC average of (|psi><psi|)^(x2) over Haar states at d=2, 5-sigma
        rng = np.random.default_rng(123)
        d, k, n = 2, 2, 10_000
        acc = np.zeros((d**k, d**k), dtype=complex)
        acc2 = np.zeros((d**k, d**k))
        for _ in range(n):
            v = rng.normal(size=d) + 1j * rng.normal(size=d)
            v /= np.linalg.norm(v)
            rho = np.outer(v, v.conj())
            m = np.kron(rho, rho)
            acc += m
            acc2 += np.abs(m) ** 2
        mean = acc / n
        var = acc2 / n - np.abs(mean) ** 2
        sigma = np.sqrt(np.maximum(var, 1e-18) / n)
        ref = wg.haar_state_kfold(k, d)
        assert np.all(np.abs(mean - ref) <= 5 * sigma + 1e-12)


class TestMonteCarloMoment:
    def test_fourth_moment_matches_weingarten_sum(self):
        # E[U_{i1 j1} U_{i2 j2} U*_{i1' j1'} U*_{i2' j2'}] at d=3 against the
        # exact double Weingarten sum, three index patterns, 5 sigma.
        d, n = 3, 100_000
        rng = np.random.default_rng(2024)
        perms = wg.permutations_of(2)

        def reference(i, j, ip, jp):
            tot = F(0)
            for sigma in perms:
                for tau in perms:
                    if all(i[a] == ip[sigma[a]] for a in range(2)) and all(
                        j[a] == jp[tau[a]] for a in range(2)
                    ):
                        tot += wg.weingarten(wg.cycle_type(wg.compose(sigma, wg.inverse(tau))), d)
            return float(tot)

        patterns = [
            ((0, 0), (0, 0), (0, 0), (0, 0)),  # E|U00|^4 = 2/(d(d+1))
            ((0, 1), (0, 1), (0, 1), (0, 1)),  # E|U00 U11|^2
            ((0, 1), (0, 1), (1, 0), (1, 0)),  # off-diagonal sigma term
        ]
        # sanity anchor for the reference itself
        assert reference(*patterns[0]) == pytest.approx(2 / (d * (d + 1)))

        samples = {p: [] for p in patterns}
        for _ in range(n):
            g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
            q, r = np.linalg.qr(g)
            u = q * (np.diagonal(r) / np.abs(np.diagonal(r)))
            for (i, j, ip, jp) in patterns:
                val = (u[i[0], j[0]] * u[i[1], j[1]]
                       * np.conj(u[ip[0], jp[0]]) * np.conj(u[ip[1], jp[1]]))
                samples[i, j, ip, jp].append(val)

        for p in patterns:
            arr = np.asarray(samples[p])
            mean = arr.mean()
            se = arr.std() / np.sqrt(n)
            assert abs(mean - reference(*p)) <= 5 * se + 1e-12
