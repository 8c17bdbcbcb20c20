"""Clifford group elements as symplectic tableaux.

A tableau stores the images of the 2n Pauli generators X_1..X_n, Z_1..Z_n
under conjugation P -> C^dag P C (Heisenberg picture), each image a
PauliString with a +/- sign. The bit part of the images forms a 2n x 2n
symplectic matrix over GF(2); the sign part is 2n bits.

Conjugation of arbitrary Paulis, composition, inversion, exactly uniform
sampling, the 24-element single-qubit enumeration, exact |trace|^2, and
dense synthesis (for n <= 5) by symplectic Gaussian elimination into
H/S/CZ/Pauli gates all live here. Tableaux are immutable and operations
are pure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import paulialg
from .densemat import Ensemble, pauli_to_dense
from .paulialg import PauliString, mul

DENSE_QUBIT_GUARD = 5


@dataclass(frozen=True)
class CliffordTableau:
    """Images of X_i and Z_i under P -> C^dag P C, with signs."""

    n: int
    x_images: tuple[PauliString, ...]
    z_images: tuple[PauliString, ...]

    def __post_init__(self):
        if len(self.x_images) != self.n or len(self.z_images) != self.n:
            raise ValueError("need one image per generator")
        for img in self.x_images + self.z_images:
            if img.n != self.n:
                raise ValueError("image qubit count mismatch")
            if img.phase not in (0, 2):
                raise ValueError("generator images must be Hermitian (+/- sign)")

    def symplectic_matrix(self) -> np.ndarray:
        """2n x 2n GF(2) matrix; row r = (x_bits | z_bits) of image r."""
        rows = [img.x_bits + img.z_bits for img in self.x_images + self.z_images]
        return np.array(rows, dtype=np.uint8)

    def phase_bits(self) -> tuple[int, ...]:
        return tuple(img.phase // 2 for img in self.x_images + self.z_images)

    def key(self) -> bytes:
        """Canonical hashable identity (mod global phase)."""
        return self.symplectic_matrix().tobytes() + bytes(self.phase_bits())

    def dense(self) -> np.ndarray:
        return to_dense(self)


def _symplectic_product(u: np.ndarray, v: np.ndarray, n: int) -> int:
    return int(np.dot(u[:n], v[n:]) + np.dot(u[n:], v[:n])) % 2


def is_symplectic(mat: np.ndarray) -> bool:
    """Check S Omega S^T = Omega over GF(2), Omega = [[0,I],[I,0]]."""
    mat = np.asarray(mat, dtype=int)
    n = mat.shape[0] // 2
    omega = np.block([[np.zeros((n, n), int), np.eye(n, dtype=int)],
                      [np.eye(n, dtype=int), np.zeros((n, n), int)]])
    return bool(np.array_equal((mat @ omega @ mat.T) % 2, omega))


def check_tableau(c: CliffordTableau):
    if not is_symplectic(c.symplectic_matrix()):
        raise ValueError("tableau violates the symplectic condition")


def conjugate_pauli(c: CliffordTableau, p: PauliString) -> PauliString:
    """C^dag p C, exact phase included.

    Decomposes p = i^(e + x.z) * prod_j X_j^{x_j} * prod_j Z_j^{z_j} and
    multiplies the generator images in that order.
    """
    if c.n != p.n:
        raise ValueError("qubit count mismatch")
    out = paulialg.identity(c.n)
    for j, xb in enumerate(p.x_bits):
        if xb:
            out = mul(out, c.x_images[j])
    for j, zb in enumerate(p.z_bits):
        if zb:
            out = mul(out, c.z_images[j])
    # scalar i^(e + x.z) multiplying the generator product; scalars add
    # directly onto the Hermitian-convention phase
    scalar = (p.phase + sum(a & b for a, b in zip(p.x_bits, p.z_bits))) % 4
    return PauliString(c.n, out.x_bits, out.z_bits, (out.phase + scalar) % 4)


def identity_tableau(n: int) -> CliffordTableau:
    xs = tuple(paulialg.single_site(n, j, "X") for j in range(n))
    zs = tuple(paulialg.single_site(n, j, "Z") for j in range(n))
    return CliffordTableau(n, xs, zs)


def _with_sign(p: PauliString, sign: int) -> PauliString:
    return PauliString(p.n, p.x_bits, p.z_bits, (p.phase + (0 if sign > 0 else 2)) % 4)


def hadamard_tableau(n: int, site: int) -> CliffordTableau:
    base = identity_tableau(n)
    xs = list(base.x_images)
    zs = list(base.z_images)
    xs[site] = paulialg.single_site(n, site, "Z")
    zs[site] = paulialg.single_site(n, site, "X")
    return CliffordTableau(n, tuple(xs), tuple(zs))


def phase_gate_tableau(n: int, site: int) -> CliffordTableau:
    # S = diag(1, i): S^dag X S = -Y, S^dag Z S = Z
    base = identity_tableau(n)
    xs = list(base.x_images)
    xs[site] = _with_sign(paulialg.single_site(n, site, "Y"), -1)
    return CliffordTableau(n, tuple(xs), base.z_images)


def cz_tableau(n: int, a: int, b: int) -> CliffordTableau:
    base = identity_tableau(n)
    xs = list(base.x_images)
    xs[a] = mul(paulialg.single_site(n, a, "X"), paulialg.single_site(n, b, "Z"))
    xs[b] = mul(paulialg.single_site(n, b, "X"), paulialg.single_site(n, a, "Z"))
    return CliffordTableau(n, tuple(xs), base.z_images)


def pauli_tableau(p: PauliString) -> CliffordTableau:
    """A Pauli operator as a Clifford: images are generators up to sign."""
    n = p.n
    xs = [_with_sign(paulialg.single_site(n, j, "X"), paulialg.k_phase(paulialg.single_site(n, j, "X"), p)) for j in range(n)]
    zs = [_with_sign(paulialg.single_site(n, j, "Z"), paulialg.k_phase(paulialg.single_site(n, j, "Z"), p)) for j in range(n)]
    return CliffordTableau(n, tuple(xs), tuple(zs))


def compose(a: CliffordTableau, b: CliffordTableau) -> CliffordTableau:
    """Tableau of the operator product a @ b (conjugation by b after a)."""
    if a.n != b.n:
        raise ValueError("qubit count mismatch")
    xs = tuple(conjugate_pauli(b, img) for img in a.x_images)
    zs = tuple(conjugate_pauli(b, img) for img in a.z_images)
    return CliffordTableau(a.n, xs, zs)


def inverse(c: CliffordTableau) -> CliffordTableau:
    """Tableau of C^-1: symplectic inverse Omega S^T Omega with phases fixed
    by pushing candidate preimages back through c."""
    n = c.n
    s = c.symplectic_matrix().astype(int)
    omega = np.block([[np.zeros((n, n), int), np.eye(n, dtype=int)],
                      [np.eye(n, dtype=int), np.zeros((n, n), int)]])
    sinv = (omega @ s.T @ omega) % 2

    def image_row(r: int) -> PauliString:
        bits = sinv[r]
        cand = PauliString(n, tuple(int(v) for v in bits[:n]), tuple(int(v) for v in bits[n:]), 0)
        fwd = conjugate_pauli(c, cand)
        # fwd must be +/- the generator r; cancel its phase
        return PauliString(n, cand.x_bits, cand.z_bits, (-fwd.phase) % 4)

    xs = tuple(image_row(r) for r in range(n))
    zs = tuple(image_row(n + r) for r in range(n))
    return CliffordTableau(n, xs, zs)


def adjoint_compose_trace_sq(a: CliffordTableau, b: CliffordTableau) -> int:
    """|tr(a^dag b)|^2, exact."""
    return trace_sq(compose(inverse(a), b))


def trace_sq(c: CliffordTableau) -> int:
    """|tr C|^2 as an exact integer: the number of representative Paulis
    fixed by conjugation with a + sign minus those fixed with a - sign."""
    total = 0
    for p in paulialg.enumerate_paulis(c.n):
        img = conjugate_pauli(c, p)
        if img.x_bits == p.x_bits and img.z_bits == p.z_bits:
            total += 1 if img.phase == 0 else -1
    return total


# ---------------------------------------------------------------------------
# sampling and enumeration
# ---------------------------------------------------------------------------

def random_clifford(n: int, rng: np.random.Generator) -> CliffordTableau:
    """Exactly uniform over the Clifford group mod global phase.

    Samples a uniform symplectic matrix by choosing images of the generator
    pairs sequentially, uniformly among valid completions (maintaining the
    symplectic complement of the pairs chosen so far), then uniform signs.
    """
    if n < 1:
        raise ValueError("n must be positive")
    basis = np.eye(2 * n, dtype=np.uint8)
    pairs = []
    for _ in range(n):
        m = basis.shape[0]
        while True:
            coeff = rng.integers(0, 2, size=m).astype(np.uint8)
            if coeff.any():
                break
        a = coeff @ basis % 2
        while True:
            coeff = rng.integers(0, 2, size=m).astype(np.uint8)
            b = coeff @ basis % 2
            if _symplectic_product(a, b, n) == 1:
                break
        pairs.append((a, b))
        for vec in (a, b):
            vals = np.array([_symplectic_product(vec, row, n) for row in basis])
            hot = np.flatnonzero(vals)
            if hot.size:
                pivot = hot[0]
                for r in hot[1:]:
                    basis[r] = (basis[r] + basis[pivot]) % 2
                basis = np.delete(basis, pivot, axis=0)

    def as_pauli(bits, sign_bit):
        return PauliString(n, tuple(int(v) for v in bits[:n]),
                           tuple(int(v) for v in bits[n:]), 2 * int(sign_bit))

    signs = rng.integers(0, 2, size=2 * n)
    xs = tuple(as_pauli(pairs[i][0], signs[i]) for i in range(n))
    zs = tuple(as_pauli(pairs[i][1], signs[n + i]) for i in range(n))
    return CliffordTableau(n, xs, zs)


def enumerate_single_qubit() -> list[CliffordTableau]:
    """All 24 single-qubit Cliffords (mod global phase), deterministic order,
    by closure of {H, S} under composition."""
    gens = [hadamard_tableau(1, 0), phase_gate_tableau(1, 0)]
    seen: dict[bytes, CliffordTableau] = {}
    frontier = [identity_tableau(1)]
    seen[frontier[0].key()] = frontier[0]
    while frontier:
        nxt = []
        for c in frontier:
            for g in gens:
                cg = compose(c, g)
                k = cg.key()
                if k not in seen:
                    seen[k] = cg
                    nxt.append(cg)
        frontier = nxt
    return [seen[k] for k in sorted(seen)]


def clifford_ensemble(n: int, seed: int | None = None) -> Ensemble:
    """Uniform Clifford ensemble: the exact 24-element list at n=1, a
    uniform sampler for larger n."""
    if n == 1:
        els = tuple(enumerate_single_qubit())
        w = (1.0 / len(els),) * len(els)
        return Ensemble("clifford", 2, weights=w, elements=els)
    return Ensemble("clifford", 2**n, sampler=lambda rng: random_clifford(n, rng),
                    seed=seed, params={"n": n})


# ---------------------------------------------------------------------------
# dense synthesis
# ---------------------------------------------------------------------------

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_S = np.diag([1, 1j]).astype(complex)


def _gate_dense(gate: tuple, n: int) -> np.ndarray:
    kind = gate[0]
    if kind == "h":
        mats = [_H if j == gate[1] else np.eye(2) for j in range(n)]
    elif kind == "s":
        mats = [_S if j == gate[1] else np.eye(2) for j in range(n)]
    elif kind == "cz":
        d = 2**n
        out = np.eye(d, dtype=complex)
        i, j = gate[1], gate[2]
        for b in range(d):
            if (b >> (n - 1 - i)) & 1 and (b >> (n - 1 - j)) & 1:
                out[b, b] = -1
        return out
    else:
        raise ValueError(f"unknown gate {gate!r}")
    m = np.array([[1]], dtype=complex)
    for factor in mats:
        m = np.kron(m, factor)
    return m


def _apply_gate_bits(mat: np.ndarray, gate: tuple, n: int):
    """Column action of P -> g^dag P g on (x|z) bit rows, in place."""
    kind = gate[0]
    if kind == "h":
        s = gate[1]
        mat[:, [s, n + s]] = mat[:, [n + s, s]]
    elif kind == "s":
        s = gate[1]
        mat[:, n + s] ^= mat[:, s]
    elif kind == "cz":
        i, j = gate[1], gate[2]
        mat[:, n + j] ^= mat[:, i]
        mat[:, n + i] ^= mat[:, j]
    else:
        raise ValueError(f"unknown gate {gate!r}")


def _cnot(c: int, t: int) -> list[tuple]:
    return [("h", t), ("cz", c, t), ("h", t)]


def _synthesis_word(c: CliffordTableau) -> list[tuple]:
    """Primitive gates g_1..g_m with tableau-bits(C g_1 ... g_m) = identity."""
    n = c.n
    m = c.symplectic_matrix().copy()
    word: list[tuple] = []

    def do(gates):
        for g in gates if isinstance(gates, list) else [gates]:
            _apply_gate_bits(m, g, n)
            word.append(g)

    for i in range(n):
        v = m[i]
        if not v[i:n].any():
            j = i + int(np.flatnonzero(v[n + i:])[0])
            do(("h", j))
        if v[i] == 0:
            j = i + 1 + int(np.flatnonzero(v[i + 1:n])[0])
            do(_cnot(j, i))
        for j in range(i + 1, n):
            if v[j]:
                do(_cnot(i, j))
        if v[n + i]:
            do(("s", i))
        for j in range(i + 1, n):
            if v[n + j]:
                do(("cz", i, j))
        w = m[n + i]
        for j in range(i + 1, n):
            if w[j] and w[n + j]:
                do(("s", j))
            if w[j]:
                do(("h", j))
            if w[n + j]:
                do(_cnot(j, i))
        if w[i]:
            do([("h", i), ("s", i), ("h", i)])
    if not np.array_equal(m, np.eye(2 * n, dtype=np.uint8)):
        raise RuntimeError("symplectic elimination failed to reach identity")
    return word


def to_dense(c: CliffordTableau) -> np.ndarray:
    """Dense unitary of the tableau (global phase normalized so the first
    maximum-modulus entry is real positive). Guarded at n <= 5."""
    n = c.n
    if n > DENSE_QUBIT_GUARD:
        raise ValueError(f"dense guard exceeded: n={n} > {DENSE_QUBIT_GUARD}")
    word = _synthesis_word(c)
    u0 = np.eye(2**n, dtype=complex)
    for g in reversed(word):
        u0 = u0 @ _gate_dense(g, n).conj().T
    # Pauli correction from sign mismatches of generator images
    zs_fix = []
    xs_fix = []
    for r in range(2 * n):
        gen = (paulialg.single_site(n, r, "X") if r < n
               else paulialg.single_site(n, r - n, "Z"))
        target = c.x_images[r] if r < n else c.z_images[r - n]
        got = u0.conj().T @ pauli_to_dense(gen) @ u0
        ref = pauli_to_dense(target.representative())
        idx = np.unravel_index(np.argmax(np.abs(ref)), ref.shape)
        ratio = got[idx] / ref[idx]
        sign_got = int(round(ratio.real))
        if abs(ratio - sign_got) > 1e-8 or sign_got not in (1, -1):
            raise RuntimeError("synthesized unitary disagrees with tableau bits")
        target_sign = 1 if target.phase == 0 else -1
        delta = 1 if sign_got != target_sign else 0
        if r < n:
            zs_fix.append(delta)
        else:
            xs_fix.append(delta)
    correction = PauliString(n, tuple(xs_fix), tuple(zs_fix), 0)
    u = pauli_to_dense(correction) @ u0
    # normalize the free global phase: first significant entry real positive
    flat = u.flatten()
    first = flat[np.flatnonzero(np.abs(flat) > 1e-9)[0]]
    return u * (abs(first) / first)


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def tableau_to_json(c: CliffordTableau) -> dict:
    return {
        "n": c.n,
        "symplectic": c.symplectic_matrix().astype(int).tolist(),
        "phases": [int(b) for b in c.phase_bits()],
    }


def tableau_from_json(data: dict) -> CliffordTableau:
    n = int(data["n"])
    mat = np.array(data["symplectic"], dtype=np.uint8)
    phases = data["phases"]

    def row(r):
        bits = mat[r]
        return PauliString(n, tuple(int(v) for v in bits[:n]),
                           tuple(int(v) for v in bits[n:]), 2 * int(phases[r]))

    c = CliffordTableau(n, tuple(row(r) for r in range(n)),
                        tuple(row(n + r) for r in range(n)))
    check_tableau(c)
    return c
