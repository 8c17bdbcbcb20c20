"""Dense complex linear algebra at desk scale.

Unitary/Hamiltonian sampling, matrix exponentials, tensor products, partial
traces, permutation operators, k-fold channel application and the ensemble
abstraction. Operators are plain complex numpy arrays ("DenseOperator");
unitaries are arrays validated by `check_unitary` at construction sites.

All samplers are reproducible: identical seeds give bitwise-identical
outputs, and Monte-Carlo block streams derive from (seed, block index) so
loops can fan out across workers without changing results.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from . import paulialg, wg
from .estimate import Estimate
from .paulialg import PauliString

DENSE_GUARD = 4096  # largest matrix side constructed anywhere
UNITARY_TOL = 1e-10


def check_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError("unitary must be a square matrix")
    err = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
    if err > tol:
        raise ValueError(f"matrix is not unitary: ||U^dag U - I||_max = {err:.2e}")
    return u


def check_hermitian(h: np.ndarray, tol: float = UNITARY_TOL) -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    if np.max(np.abs(h - h.conj().T)) > tol:
        raise ValueError("matrix is not Hermitian")
    return h


_SIGMA = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_LETTER = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}


def pauli_to_dense(p: PauliString) -> np.ndarray:
    """Dense matrix of a PauliString, phase included."""
    m = np.array([[1]], dtype=complex)
    for x, z in zip(p.x_bits, p.z_bits):
        m = np.kron(m, _SIGMA[_LETTER[(x, z)]])
    return (1j**p.phase) * m


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random d x d unitary: QR of a complex Ginibre matrix with the
    R-diagonal phases folded into Q so the distribution is exactly Haar."""
    if d < 1:
        raise ValueError("d must be positive")
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(g)
    diag = np.diagonal(r)
    # numerical rank deficiency of a Ginibre draw has probability zero;
    # redraw rather than divide by ~0
    while np.any(np.abs(diag) < 1e-12):
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        q, r = np.linalg.qr(g)
        diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


def gue_hamiltonian(d: int, rng: np.random.Generator) -> np.ndarray:
    """GUE draw, Hermitian by construction, normalized so E[tr H^2] = d."""
    if d < 1:
        raise ValueError("d must be positive")
    g = rng.normal(size=(d, d)) / np.sqrt(2) + 1j * rng.normal(size=(d, d)) / np.sqrt(2)
    h = (g + g.conj().T) / 2
    return h * math.sqrt(2.0 / d)


def evolve(h: np.ndarray, t: float) -> np.ndarray:
    """U = exp(-i H t) by Hermitian eigendecomposition."""
    h = check_hermitian(h)
    evals, vecs = np.linalg.eigh(h)
    return (vecs * np.exp(-1j * evals * t)) @ vecs.conj().T


# ---------------------------------------------------------------------------
# tensor algebra
# ---------------------------------------------------------------------------

def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def partial_trace(rho: np.ndarray, keep: list[int] | tuple[int, ...]) -> np.ndarray:
    """Trace out the qubits whose mask entry is 0.

    `keep` is a 0/1 mask of length n (qubit 0 = most significant factor).
    Requires dim = 2^n; mask/dimension mismatch is an error.
    """
    rho = np.asarray(rho, dtype=complex)
    dim = rho.shape[0]
    n = dim.bit_length() - 1
    if 2**n != dim:
        raise ValueError("partial_trace needs a 2^n-dimensional operator")
    if len(keep) != n or any(b not in (0, 1) for b in keep):
        raise ValueError("keep mask must be a 0/1 sequence of length n")
    keep_idx = [i for i, b in enumerate(keep) if b]
    drop = [i for i in range(n) if i not in keep_idx]
    t = rho.reshape([2] * (2 * n))
    for count, q in enumerate(drop):
        axis = q - sum(1 for dqq in drop[:count] if dqq < q)
        t = np.trace(t, axis1=axis, axis2=axis + t.ndim // 2)
    m = 2 ** len(keep_idx)
    return t.reshape(m, m)


def permutation_operator(perm: tuple[int, ...], d: int) -> np.ndarray:
    """Dense W_perm on (C^d)^(x)k, moving the factor in slot j to slot
    perm(j); satisfies W_sigma @ W_tau == W_{sigma tau} exactly."""
    if d ** len(perm) > DENSE_GUARD:
        raise ValueError("dense guard exceeded")
    if sorted(perm) != list(range(len(perm))):
        raise ValueError("not a permutation")
    return wg.permutation_matrix(tuple(perm), d)


# ---------------------------------------------------------------------------
# ensembles
# ---------------------------------------------------------------------------

def element_to_matrix(el: Any) -> np.ndarray:
    """Dense matrix of an ensemble element (array, Pauli, or tableau-like)."""
    if isinstance(el, np.ndarray):
        return el
    if isinstance(el, PauliString):
        return pauli_to_dense(el)
    if hasattr(el, "dense"):
        return el.dense()
    raise TypeError(f"cannot convert ensemble element of type {type(el)!r}")


@dataclass(frozen=True)
class Ensemble:
    """A discrete weighted list of unitaries, or a seeded sampler.

    Discrete: `weights` (nonnegative, summing to 1 within 1e-12) paired with
    `elements` (dense arrays, PauliStrings or Clifford tableaux).
    Sampler: `sampler(rng) -> element`; draws are deterministic given
    (seed, block index) via `sample_block`.
    """

    label: str
    dim: int
    weights: tuple[float, ...] | None = None
    elements: tuple[Any, ...] | None = None
    sampler: Callable[[np.random.Generator], Any] | None = None
    seed: int | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.elements is None) == (self.sampler is None):
            raise ValueError("ensemble must be exactly one of discrete or sampler")
        if self.elements is not None:
            if self.weights is None or len(self.weights) != len(self.elements):
                raise ValueError("discrete ensemble needs one weight per element")
            if len(self.elements) == 0:
                raise ValueError("empty ensemble")
            if any(w < 0 for w in self.weights):
                raise ValueError("weights must be nonnegative")
            if abs(sum(self.weights) - 1.0) > 1e-12:
                raise ValueError("weights must sum to 1")

    @property
    def kind(self) -> str:
        return "discrete" if self.elements is not None else "sampler"

    def sample_block(self, seed: int, count: int, block: int = 0) -> list:
        """Deterministic block of draws from (seed, block)."""
        if self.sampler is None:
            raise ValueError("sample_block is only for sampler ensembles")
        rng = np.random.default_rng([seed, block])
        return [self.sampler(rng) for _ in range(count)]

    def resolve_seed(self, seed: int | None) -> int:
        if seed is not None:
            return seed
        if self.seed is not None:
            return self.seed
        raise ValueError(f"ensemble {self.label!r} needs a seed")


def trivial_ensemble(n: int) -> Ensemble:
    d = 2**n
    return Ensemble("trivial", d, weights=(1.0,), elements=(np.eye(d, dtype=complex),))


def pauli_ensemble(n: int) -> Ensemble:
    """Uniform over the 4^n representative Pauli operators (a 1-design)."""
    ps = tuple(paulialg.enumerate_paulis(n))
    w = (1.0 / len(ps),) * len(ps)
    return Ensemble("pauli", 2**n, weights=w, elements=ps)


def pauli_x_ensemble(n: int) -> Ensemble:
    """Uniform over the 2^n tensor products of I and X (bit-flip strings)."""
    els = []
    for bits in range(2**n):
        xs = tuple((bits >> j) & 1 for j in range(n))
        els.append(PauliString(n, xs, (0,) * n))
    w = (1.0 / len(els),) * len(els)
    return Ensemble("pauli-x", 2**n, weights=w, elements=tuple(els))


def haar_ensemble(d: int, seed: int | None = None) -> Ensemble:
    return Ensemble("haar", d, sampler=lambda rng: haar_unitary(d, rng), seed=seed,
                    params={"d": d})


def gue_evolution_ensemble(d: int, t: float, seed: int | None = None) -> Ensemble:
    """Evolution for a fixed time t under independently drawn GUE Hamiltonians."""
    def draw(rng):
        return evolve(gue_hamiltonian(d, rng), t)
    return Ensemble("gue-evolution", d, sampler=draw, seed=seed, params={"d": d, "t": t})


def hamiltonian_evolution_ensemble(h: np.ndarray, t_max: float, seed: int | None = None) -> Ensemble:
    """{exp(-i H t)} with t uniform in [0, t_max] for a fixed Hamiltonian."""
    h = check_hermitian(h)
    evals, vecs = np.linalg.eigh(h)

    def draw(rng):
        t = rng.uniform(0.0, t_max)
        return (vecs * np.exp(-1j * evals * t)) @ vecs.conj().T

    return Ensemble("hamiltonian-evolution", h.shape[0], sampler=draw, seed=seed,
                    params={"d": h.shape[0], "t_max": t_max})


def brickwork_ensemble(n: int, depth: int, seed: int | None = None) -> Ensemble:
    """Brickwork random circuit on n qubits: alternating even/odd
    nearest-neighbour pairings (open boundary), each layer made of fresh
    independent Haar 2-qubit gates. The gate arrangement is a modeling
    choice; nothing here depends on it beyond nearest-neighbour locality.
    """
    if n < 2:
        raise ValueError("brickwork needs at least 2 qubits")
    d = 2**n

    def draw(rng):
        u = np.eye(d, dtype=complex)
        for layer in range(depth):
            start = 0 if layer % 2 == 0 else 1
            layer_u = np.eye(d, dtype=complex)
            for a in range(start, n - 1, 2):
                g = haar_unitary(4, rng)
                full = _embed_two_qubit(g, a, n)
                layer_u = full @ layer_u
            u = layer_u @ u
        return u

    return Ensemble("brickwork", d, sampler=draw, seed=seed,
                    params={"n": n, "depth": depth})


def _embed_two_qubit(g: np.ndarray, a: int, n: int) -> np.ndarray:
    """Embed a 2-qubit gate acting on adjacent qubits (a, a+1)."""
    left = np.eye(2**a, dtype=complex)
    right = np.eye(2 ** (n - a - 2), dtype=complex)
    return np.kron(np.kron(left, g), right)


# ---------------------------------------------------------------------------
# channels
# ---------------------------------------------------------------------------

def _kfold_conjugate(u: np.ndarray, a: np.ndarray, k: int) -> np.ndarray:
    uk = u
    for _ in range(k - 1):
        uk = np.kron(uk, u)
    return uk.conj().T @ a @ uk


@dataclass(frozen=True)
class ChannelApplyResult:
    matrix: np.ndarray
    std_error: np.ndarray | None  # entrywise, None for exact results
    n_samples: int
    method: str


def kfold_channel_apply(ens: Ensemble, a: np.ndarray, k: int,
                        mc_samples: int | None = None,
                        seed: int | None = None) -> ChannelApplyResult:
    """Apply the k-fold channel of an ensemble to an operator on d^k.

    Discrete ensembles give the exact weighted sum
    sum_j p_j (U_j^(x)k)^dag A U_j^(x)k; samplers give a Monte-Carlo mean
    with an entrywise standard error.
    """
    a = np.asarray(a, dtype=complex)
    side = ens.dim**k
    if a.shape != (side, side):
        raise ValueError(f"operator must be {side} x {side}")
    if side > DENSE_GUARD:
        raise ValueError("dense guard exceeded")
    if ens.kind == "discrete":
        out = np.zeros_like(a)
        for w, el in zip(ens.weights, ens.elements):
            out += w * _kfold_conjugate(element_to_matrix(el), a, k)
        return ChannelApplyResult(out, None, len(ens.elements), "exact")
    if mc_samples is None or mc_samples < 1:
        raise ValueError("sampler ensembles need a positive mc_samples")
    seed = ens.resolve_seed(seed)
    acc = np.zeros_like(a)
    acc2 = np.zeros(a.shape)
    for el in ens.sample_block(seed, mc_samples):
        term = _kfold_conjugate(element_to_matrix(el), a, k)
        acc += term
        acc2 += np.abs(term) ** 2
    mean = acc / mc_samples
    var = np.maximum(acc2 / mc_samples - np.abs(mean) ** 2, 0.0)
    return ChannelApplyResult(mean, np.sqrt(var / mc_samples), mc_samples, "monte-carlo")


def haar_channel_reference(a: np.ndarray, k: int, d: int) -> np.ndarray:
    """Exact Haar k-fold channel via the Weingarten decomposition:
    sum_{pi,sigma} (Q^-1)_{pi,sigma} W_pi tr{W_sigma A}. Needs k <= d."""
    a = np.asarray(a, dtype=complex)
    side = d**k
    if a.shape != (side, side):
        raise ValueError(f"operator must be {side} x {side}")
    if side > DENSE_GUARD:
        raise ValueError("dense guard exceeded")
    if k > d:
        raise ValueError(f"Haar reference needs k <= d (Q singular): k={k}, d={d}")
    perms = wg.permutations_of(k)
    qinv = wg.q_inverse(k, d)
    ws = [wg.permutation_matrix(pi, d) for pi in perms]
    traces = [np.trace(w @ a) for w in ws]
    out = np.zeros_like(a)
    for i, w in enumerate(ws):
        coeff = sum(float(qinv[i][j]) * traces[j] for j in range(len(perms)))
        out += coeff * w
    return out


# ---------------------------------------------------------------------------
# random sign states
# ---------------------------------------------------------------------------

def random_sign_state_overlap(d: int, pairs: int, rng: np.random.Generator) -> Estimate:
    """Mean |<a|b>| over pairs of uniform +/-1-coefficient states
    (normalized by 1/sqrt(d)), with a standard error."""
    if d < 2:
        raise ValueError("d must be at least 2")
    signs = rng.integers(0, 2, size=(pairs, 2, d)) * 2 - 1
    overlaps = np.abs((signs[:, 0, :] * signs[:, 1, :]).sum(axis=1)) / d
    se = overlaps.std(ddof=1) / np.sqrt(pairs)
    return Estimate(float(overlaps.mean()), float(se), pairs, method="monte-carlo")


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def matrix_to_json(m: np.ndarray) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in np.asarray(m, dtype=complex)]


def matrix_from_json(data: list) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in data])


def ensemble_to_json(ens: Ensemble) -> dict:
    if ens.kind == "discrete":
        return {
            "kind": "discrete",
            "label": ens.label,
            "elements": [
                {"weight": w, "matrix": matrix_to_json(element_to_matrix(el))}
                for w, el in zip(ens.weights, ens.elements)
            ],
            "seed": ens.seed,
        }
    return {"kind": "sampler", "label": ens.label, "seed": ens.seed, **ens.params}


_SAMPLER_BUILDERS = {
    "haar": lambda p, seed: haar_ensemble(int(p["d"]), seed),
    "gue-evolution": lambda p, seed: gue_evolution_ensemble(int(p["d"]), float(p["t"]), seed),
    "brickwork": lambda p, seed: brickwork_ensemble(int(p["n"]), int(p["depth"]), seed),
}


def ensemble_from_json(data: dict) -> Ensemble:
    if data["kind"] == "discrete":
        mats = tuple(matrix_from_json(e["matrix"]) for e in data["elements"])
        weights = tuple(float(e["weight"]) for e in data["elements"])
        return Ensemble(data.get("label", "discrete"), mats[0].shape[0],
                        weights=weights, elements=mats, seed=data.get("seed"))
    label = data["label"]
    if label not in _SAMPLER_BUILDERS:
        raise ValueError(f"unknown sampler label {label!r}")
    return _SAMPLER_BUILDERS[label](data, data.get("seed"))


def save_ensemble(ens: Ensemble, path: str):
    with open(path, "w") as fh:
        json.dump(ensemble_to_json(ens), fh)


def load_ensemble(path: str) -> Ensemble:
    with open(path) as fh:
        return ensemble_from_json(json.load(fh))
