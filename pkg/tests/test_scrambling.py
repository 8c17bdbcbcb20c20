"""Tests for Choi-state scrambling diagnostics and the catch game."""

import math

import numpy as np
import pytest

from designlab import densemat as dm
from designlab import paulialg
from designlab import scrambling as sc
from designlab.paulialg import from_label


def swap_unitary():
    s = np.zeros((4, 4))
    for a in range(2):
        for b in range(2):
            s[b * 2 + a, a * 2 + b] = 1.0
    return s.astype(complex)


class TestChoiState:
    def test_identity_gives_epr(self):
        state = sc.choi_state(np.eye(2))
        want = np.zeros(4, dtype=complex)
        want[0] = want[3] = 1 / math.sqrt(2)
        np.testing.assert_allclose(state.amplitudes, want, atol=1e-12)

    def test_norm_random(self):
        rng = np.random.default_rng(0)
        state = sc.choi_state(dm.haar_unitary(4, rng))
        assert np.linalg.norm(state.amplitudes) == pytest.approx(1.0, abs=1e-12)

    def test_swap_pairs_registers_crosswise(self):
        # SWAP pairs in1<->out2 and in2<->out1: both marginals maximally mixed,
        # and the (in1, out2) marginal is a pure EPR pair
        state = sc.choi_state(swap_unitary())
        rho = state.density()
        # qubit layout: (in1, in2, out1, out2)
        rho_in1_out2 = dm.partial_trace(rho, (1, 0, 0, 1))
        epr = np.zeros(4, dtype=complex)
        epr[0] = epr[3] = 1 / math.sqrt(2)
        np.testing.assert_allclose(rho_in1_out2, np.outer(epr, epr.conj()), atol=1e-10)

    def test_input_marginal_maximally_mixed(self):
        rng = np.random.default_rng(1)
        state = sc.choi_state(dm.haar_unitary(4, rng))
        rho_in = dm.partial_trace(state.density(), (1, 1, 0, 0))
        np.testing.assert_allclose(rho_in, np.eye(4) / 4, atol=1e-10)


class TestRenyiEntropy:
    def test_maximally_mixed(self):
        for m in (1, 2, 3):
            rho = np.eye(2**m) / 2**m
            for k in (1, 2, 3):
                assert sc.renyi_entropy(rho, k) == pytest.approx(m, abs=1e-12)

    def test_pure_state(self):
        rho = np.zeros((4, 4), dtype=complex)
        rho[2, 2] = 1.0
        for k in (1, 2, 4):
            assert sc.renyi_entropy(rho, k) == pytest.approx(0.0, abs=1e-12)

    def test_two_level_example(self):
        rho = np.diag([0.75, 0.25]).astype(complex)
        assert sc.renyi_entropy(rho, 2) == pytest.approx(math.log2(8 / 5), abs=1e-12)

    def test_monotone_in_k(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            rho = a @ a.conj().T
            rho /= np.trace(rho)
            assert sc.renyi_entropy(rho, 2) >= sc.renyi_entropy(rho, 3) - 1e-12
            assert sc.renyi_entropy(rho, 1) >= sc.renyi_entropy(rho, 2) - 1e-12

    def test_invalid_state(self):
        with pytest.raises(ValueError):
            sc.renyi_entropy(np.diag([1.5, -0.5]).astype(complex), 2)


class TestRenyi2Identity:
    def test_identity_unitary(self):
        part = sc.IoPartition(2, (0,), (1,))
        lhs, rhs = sc.oto_renyi2_check(np.eye(4), part)
        assert lhs == pytest.approx(1.0, abs=1e-12)
        assert rhs == pytest.approx(1.0, abs=1e-12)

    def test_swap(self):
        part = sc.IoPartition(2, (0,), (1,))
        lhs, rhs = sc.oto_renyi2_check(swap_unitary(), part)
        # commutation counting gives (10 - 6)/16 on the lhs
        assert lhs == pytest.approx(0.25, abs=1e-12)
        assert rhs == pytest.approx(0.25, abs=1e-12)

    def test_random_unitaries_all_placements(self):
        rng = np.random.default_rng(3)
        placements = [sc.IoPartition(2, a, d)
                      for a in ((0,), (1,)) for d in ((0,), (1,))]
        for _ in range(50):
            u = dm.haar_unitary(4, rng)
            for part in placements:
                lhs, rhs = sc.oto_renyi2_check(u, part)
                assert abs(lhs - rhs) <= 1e-10

    def test_larger_regions(self):
        rng = np.random.default_rng(4)
        u = dm.haar_unitary(8, rng)
        part = sc.IoPartition(3, (0, 2), (1,))
        lhs, rhs = sc.oto_renyi2_check(u, part)
        assert abs(lhs - rhs) <= 1e-10


class TestRenyiKIdentity:
    def test_k2_reduces_to_renyi2(self):
        rng = np.random.default_rng(5)
        u = dm.haar_unitary(4, rng)
        part = sc.IoPartition(2, (0,), (1,))
        assert sc.renyi_k_oto(u, part, 2) == pytest.approx(sc.oto_renyi2_check(u, part))

    def test_identity_unitary_k3(self):
        part = sc.IoPartition(2, (0,), (1,))
        lhs, rhs = sc.renyi_k_oto(np.eye(4), part, 3)
        assert lhs == pytest.approx(1.0, abs=1e-12)
        assert rhs == pytest.approx(1.0, abs=1e-12)

    def test_random_unitaries_k3(self):
        rng = np.random.default_rng(6)
        part = sc.IoPartition(2, (0,), (1,))
        for _ in range(10):
            u = dm.haar_unitary(4, rng)
            lhs, rhs = sc.renyi_k_oto(u, part, 3)
            assert abs(lhs - rhs) <= 1e-8


class TestMutualInfo:
    def test_swap_is_two_bits(self):
        part = sc.IoPartition(2, (0,), (1,))
        assert sc.mutual_info_2(swap_unitary(), part) == pytest.approx(2.0, abs=1e-10)

    def test_identity_is_zero(self):
        part = sc.IoPartition(2, (0,), (1,))
        assert sc.mutual_info_2(np.eye(4), part) == pytest.approx(0.0, abs=1e-10)

    def test_haar_near_maximal_on_average(self):
        # recovery needs d_D >= d_A: with one input qubit as A and the whole
        # output register as D, I2(A:BD) sits within 0.5 bits of 2 S_A = 2
        # on average (with D a single qubit the exact Haar mean of the
        # correlator average is 2/5, i.e. only ~1.34 bits)
        rng = np.random.default_rng(7)
        part = sc.IoPartition(2, (0,), (0, 1))
        vals = [sc.mutual_info_2(dm.haar_unitary(4, rng), part) for _ in range(100)]
        assert abs(np.mean(vals) - 2.0) <= 0.5


class TestCatchGame:
    def test_identity_perturbation(self):
        rng = np.random.default_rng(8)
        for _ in range(5):
            u = dm.haar_unitary(4, rng)
            assert sc.catch_game(u, {paulialg.identity(2): 1.0}) == pytest.approx(1.0, abs=1e-12)

    def test_probability_equals_p_identity(self):
        rng = np.random.default_rng(9)
        u = dm.haar_unitary(4, rng)
        x1 = paulialg.single_site(2, 0, "X")
        dist = {paulialg.identity(2): 0.7, x1: 0.3}
        assert sc.catch_game(u, dist) == pytest.approx(0.7, abs=1e-10)

    def test_no_identity_weight(self):
        rng = np.random.default_rng(10)
        u = dm.haar_unitary(4, rng)
        dist = {paulialg.single_site(2, 0, "X"): 0.5,
                paulialg.single_site(2, 1, "Z"): 0.5}
        assert sc.catch_game(u, dist) == pytest.approx(0.0, abs=1e-12)

    def test_unitary_independence(self):
        rng = np.random.default_rng(11)
        dist = {paulialg.identity(2): 0.4,
                paulialg.single_site(2, 0, "Y"): 0.35,
                from_label("ZX"): 0.25}
        p1 = sc.catch_game(dm.haar_unitary(4, rng), dist)
        p2 = sc.catch_game(dm.haar_unitary(4, rng), dist)
        assert abs(p1 - p2) <= 1e-10
        assert p1 == pytest.approx(0.4, abs=1e-10)

    def test_unnormalized_rejected(self):
        with pytest.raises(ValueError):
            sc.catch_game(np.eye(4), {paulialg.identity(2): 0.5})
