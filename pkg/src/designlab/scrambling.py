"""Channel-state diagnostics of information scrambling.

A unitary on n qubits becomes a pure state on 2n qubits (input register
first): |U> = d^(-1/2) sum_ij u_ij |j> (x) |i>. Subsystem Renyi entropies of
that state, the identities tying Pauli-averaged OTO correlators to Renyi-2
(and Renyi-k) entropies, the Renyi-2 mutual information I(A:BD), and the
single-round catch game all live here.

Partitions split the input register into A|B and the output register into
C|D; entropies are in bits throughout, matching the 2^(-S) form of the
identities.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import paulialg
from .densemat import check_unitary, partial_trace, pauli_to_dense
from .paulialg import PauliString


@dataclass(frozen=True)
class ChoiState:
    """|U> as a state vector on 2n qubits (input register first)."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if abs(np.linalg.norm(self.amplitudes) - 1.0) > 1e-10:
            raise ValueError("Choi state must be normalized")

    def density(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True)
class IoPartition:
    """Input qubits split A|B, output qubits split C|D.

    a_qubits and d_qubits list the qubit indices owned by A and D; the
    complements are B and C respectively.
    """

    n: int
    a_qubits: tuple[int, ...]
    d_qubits: tuple[int, ...]

    def __post_init__(self):
        for idx in self.a_qubits + self.d_qubits:
            if not 0 <= idx < self.n:
                raise ValueError("partition indices out of range")
        if len(set(self.a_qubits)) != len(self.a_qubits) or len(set(self.d_qubits)) != len(self.d_qubits):
            raise ValueError("partition indices must be distinct")

    @property
    def b_qubits(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.n) if j not in self.a_qubits)

    @property
    def c_qubits(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.n) if j not in self.d_qubits)

    @property
    def d_a(self) -> int:
        return 2 ** len(self.a_qubits)

    @property
    def d_d(self) -> int:
        return 2 ** len(self.d_qubits)


def choi_state(u: np.ndarray) -> ChoiState:
    """|U> = d^(-1/2) sum_ij u_ij |j>|i> = (I (x) U) |EPR>."""
    u = check_unitary(u)
    d = u.shape[0]
    n = d.bit_length() - 1
    if 2**n != d:
        raise ValueError("need a 2^n-dimensional unitary")
    amps = np.zeros(d * d, dtype=complex)
    for i in range(d):
        for j in range(d):
            amps[j * d + i] = u[i, j] / math.sqrt(d)
    return ChoiState(n, amps)


def renyi_entropy(rho: np.ndarray, k: int) -> float:
    """Renyi-k entropy in bits: log2 tr(rho^k) / (1-k); k=1 is the von
    Neumann entropy via the eigenvalue Shannon sum."""
    rho = np.asarray(rho, dtype=complex)
    if np.max(np.abs(rho - rho.conj().T)) > 1e-10 or abs(np.trace(rho) - 1) > 1e-10:
        raise ValueError("rho must be Hermitian with unit trace")
    evals = np.linalg.eigvalsh(rho)
    if evals.min() < -1e-10:
        raise ValueError("rho is not positive semidefinite")
    evals = np.clip(evals, 0.0, None)
    if k == 1:
        nz = evals[evals > 1e-15]
        return float(-(nz * np.log2(nz)).sum())
    if k < 1:
        raise ValueError("k must be a positive integer")
    return float(np.log2((evals**k).sum()) / (1 - k))


def _choi_marginal(state: ChoiState, in_qubits, out_qubits) -> np.ndarray:
    mask = [0] * (2 * state.n)
    for q in in_qubits:
        mask[q] = 1
    for q in out_qubits:
        mask[state.n + q] = 1
    return partial_trace(state.density(), mask)


def _region_paulis(n: int, qubits) -> list[PauliString]:
    """All Paulis supported on `qubits` (identity included), embedded in n."""
    out = []
    for combo in itertools.product("IXZY", repeat=len(qubits)):
        xs = [0] * n
        zs = [0] * n
        for q, letter in zip(qubits, combo):
            p = paulialg.from_label(letter)
            xs[q], zs[q] = p.x_bits[0], p.z_bits[0]
        out.append(PauliString(n, tuple(xs), tuple(zs)))
    return out


def oto_renyi2_check(u: np.ndarray, part: IoPartition) -> tuple[float, float]:
    """Both sides of the Renyi-2 identity.

    lhs: average over all Pauli pairs (A on the input-A qubits, D on the
    output-D qubits, identities included) of <A D~ A+ D~+> with D~ = U+ D U.
    rhs: (d / (d_A d_D)) 2^(-S2(rho_AC)) from the Choi state.
    """
    u = check_unitary(u)
    d = 2**part.n
    a_ops = [pauli_to_dense(p) for p in _region_paulis(part.n, part.a_qubits)]
    d_ops = [pauli_to_dense(p) for p in _region_paulis(part.n, part.d_qubits)]
    dt = [u.conj().T @ m @ u for m in d_ops]
    a_stack = np.stack(a_ops)
    d_stack = np.stack(dt)
    vals = np.einsum("aij,djk,akl,dli->ad", a_stack, d_stack,
                     a_stack.conj().transpose(0, 2, 1),
                     d_stack.conj().transpose(0, 2, 1))
    lhs = float(vals.real.sum() / (len(a_ops) * len(d_ops) * d))

    rho_ac = _choi_marginal(choi_state(u), part.a_qubits, part.c_qubits)
    s2 = renyi_entropy(rho_ac, 2)
    rhs = d / (part.d_a * part.d_d) * 2.0 ** (-s2)
    return lhs, rhs


def renyi_k_oto(u: np.ndarray, part: IoPartition, k: int) -> tuple[float, float]:
    """Both sides of the Renyi-k generalization.

    lhs: the cyclically-constrained Pauli average of
    <A_1 D~_1 ... A_k D~_k>: A_1..A_{k-1} and D_1..D_{k-1} run freely over
    their regions while A_k and D_k are fixed to the inverse products
    (A_1 A_2 ... A_{k-1})^-1 and (D_1 ... D_{k-1})^-1, normalized by the
    number of free tuples.
    rhs: (d/(d_A d_D))^(k-1) 2^(-(k-1) S_k(rho_AC)) = that prefactor times
    tr(rho_AC^k). k=2 reduces to oto_renyi2_check.
    """
    u = check_unitary(u)
    d = 2**part.n
    a_paulis = _region_paulis(part.n, part.a_qubits)
    d_paulis = _region_paulis(part.n, part.d_qubits)
    a_mats = {p: pauli_to_dense(p) for p in a_paulis}
    d_mats = {p: u.conj().T @ pauli_to_dense(p) @ u for p in d_paulis}

    def inverse_product(ops):
        prod = paulialg.mul_all(list(ops)) if ops else None
        inv = prod.adjoint() if prod is not None else None
        return inv

    total = 0j
    count = 0
    for a_free in itertools.product(a_paulis, repeat=k - 1):
        a_last = inverse_product(a_free) if a_free else None
        for d_free in itertools.product(d_paulis, repeat=k - 1):
            d_last = inverse_product(d_free)
            acc = np.eye(d, dtype=complex)
            for a_p, d_p in zip(a_free, d_free):
                acc = acc @ a_mats[a_p] @ d_mats[d_p]
            acc = acc @ pauli_to_dense(a_last) @ (u.conj().T @ pauli_to_dense(d_last) @ u)
            total += np.trace(acc) / d
            count += 1
    lhs = float((total / count).real)

    rho_ac = _choi_marginal(choi_state(u), part.a_qubits, part.c_qubits)
    sk = renyi_entropy(rho_ac, k)
    rhs = (d / (part.d_a * part.d_d)) ** (k - 1) * 2.0 ** (-(k - 1) * sk)
    return lhs, rhs


def mutual_info_2(u: np.ndarray, part: IoPartition) -> float:
    """Renyi-2 mutual information I2(A:BD) from the Choi state; asserts the
    equality with -log2 of the Pauli-averaged OTO correlator."""
    state = choi_state(u)
    s_a = renyi_entropy(_choi_marginal(state, part.a_qubits, ()), 2)
    s_bd = renyi_entropy(_choi_marginal(state, part.b_qubits, part.d_qubits), 2)
    s_abd = renyi_entropy(_choi_marginal(state, range(part.n), part.d_qubits), 2)
    info = s_a + s_bd - s_abd
    lhs, _ = oto_renyi2_check(u, part)
    if abs(info - (-math.log2(lhs))) > 1e-10:
        raise AssertionError(
            f"Renyi-2 identity violated: I2 = {info}, -log2(avg) = {-math.log2(lhs)}")
    return float(info)


def catch_game(u: np.ndarray, perturbation: dict[PauliString, float]) -> float:
    """Probability that the EPR comparison accepts: build n EPR pairs, let
    the sender apply Pauli A_i with probability p_i on her half, send both
    halves through U (x) U*, and project back onto the EPR state. Equals
    p_I for every unitary."""
    u = check_unitary(u)
    d = u.shape[0]
    n = d.bit_length() - 1
    total_p = sum(perturbation.values())
    if abs(total_p - 1.0) > 1e-10:
        raise ValueError("perturbation distribution must be normalized")
    epr = np.zeros(d * d, dtype=complex)
    for j in range(d):
        epr[j * d + j] = 1.0 / math.sqrt(d)
    big_u = np.kron(u, u.conj())
    prob = 0.0
    for p, weight in perturbation.items():
        if p.n != n:
            raise ValueError("perturbation acts on the wrong qubit count")
        perturbed = np.kron(pauli_to_dense(p), np.eye(d)) @ epr
        amp = epr.conj() @ (big_u @ perturbed)
        prob += weight * abs(amp) ** 2
    return float(prob)
