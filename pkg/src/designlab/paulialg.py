"""Exact algebra of the n-qubit Pauli group in binary symplectic form.

A Pauli operator is encoded as ``i**phase * (s_1 (x) s_2 (x) ... (x) s_n)``
where each single-qubit factor ``s_j`` is one of the Hermitian matrices
I, X, Y, Z selected by the bit pair ``(x_j, z_j)``:

    (0, 0) -> I,   (1, 0) -> X,   (0, 1) -> Z,   (1, 1) -> Y.

All products, commutators and traces are computed exactly over the integers;
no dense matrices are built here (dense conversion lives in densemat).
Everything is immutable and side-effect free, so values are safe to share
across workers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# String labels per bit pair, indexed by x + 2*z.
_LABELS = "IXZY"
_BITS_FROM_LABEL = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}

# Enumeration guard: 4^8 = 65536 strings is the largest table any test needs.
MAX_ENUM_QUBITS = 8


@dataclass(frozen=True)
class PauliString:
    """An n-qubit Pauli operator with an exact phase (power of i)."""

    n: int
    x_bits: tuple[int, ...]
    z_bits: tuple[int, ...]
    phase: int = 0

    def __post_init__(self):
        if self.n <= 0:
            raise ValueError("qubit count must be positive")
        if len(self.x_bits) != self.n or len(self.z_bits) != self.n:
            raise ValueError("bit vectors must have exactly n entries")
        if any(b not in (0, 1) for b in self.x_bits + self.z_bits):
            raise ValueError("bits must be 0 or 1")
        if self.phase not in (0, 1, 2, 3):
            raise ValueError("phase exponent must be in {0,1,2,3}")

    @property
    def is_identity_bits(self) -> bool:
        """True when all symplectic bits vanish (operator is i**phase * I)."""
        return not any(self.x_bits) and not any(self.z_bits)

    def representative(self) -> "PauliString":
        """The phase-0 representative with the same bits."""
        return PauliString(self.n, self.x_bits, self.z_bits, 0)

    def adjoint(self) -> "PauliString":
        """Hermitian conjugate; the Hermitian base makes this a phase flip."""
        return PauliString(self.n, self.x_bits, self.z_bits, (-self.phase) % 4)

    def label(self) -> str:
        """Text form, e.g. "XIZY" (leftmost letter = qubit 0). Phase dropped.

        Serialization always deals in representatives; a nonzero phase is an
        error rather than silently discarded information.
        """
        if self.phase != 0:
            raise ValueError("only phase-0 representatives are serialized")
        return "".join(_LABELS[x + 2 * z] for x, z in zip(self.x_bits, self.z_bits))


def from_label(label: str) -> PauliString:
    """Parse a text Pauli string such as "XIZY" (leftmost = qubit 0)."""
    try:
        pairs = [_BITS_FROM_LABEL[c] for c in label.upper()]
    except KeyError as exc:
        raise ValueError(f"invalid Pauli letter in {label!r}") from exc
    if not pairs:
        raise ValueError("empty Pauli label")
    return PauliString(len(pairs), tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))


def identity(n: int) -> PauliString:
    return PauliString(n, (0,) * n, (0,) * n, 0)


def single_site(n: int, site: int, letter: str) -> PauliString:
    """The Pauli acting as `letter` on `site` and as identity elsewhere."""
    x, z = _BITS_FROM_LABEL[letter.upper()]
    xs = [0] * n
    zs = [0] * n
    xs[site], zs[site] = x, z
    return PauliString(n, tuple(xs), tuple(zs))


def _check_same_n(p: PauliString, q: PauliString):
    if p.n != q.n:
        raise ValueError(f"qubit count mismatch: {p.n} != {q.n}")


def mul(p: PauliString, q: PauliString) -> PauliString:
    """Exact product pq with phase tracking; bits are XORed.

    Phases are tracked through the X^x Z^z normal form: commuting a Z past an
    X on the same site costs a factor -1, and the Hermitian base absorbs one
    factor of i per Y.
    """
    _check_same_n(p, q)
    # Phase relative to the ordered product X^x Z^z on each site.
    xz_p = sum(a & b for a, b in zip(p.x_bits, p.z_bits))
    xz_q = sum(a & b for a, b in zip(q.x_bits, q.z_bits))
    cross = sum(a & b for a, b in zip(p.z_bits, q.x_bits))
    x_r = tuple(a ^ b for a, b in zip(p.x_bits, q.x_bits))
    z_r = tuple(a ^ b for a, b in zip(p.z_bits, q.z_bits))
    xz_r = sum(a & b for a, b in zip(x_r, z_r))
    phase = (p.phase + q.phase + xz_p + xz_q + 2 * cross - xz_r) % 4
    return PauliString(p.n, x_r, z_r, phase)


def commutes(p: PauliString, q: PauliString) -> bool:
    """True iff the symplectic inner product x_p.z_q + z_p.x_q is even."""
    _check_same_n(p, q)
    s = sum(a & b for a, b in zip(p.x_bits, q.z_bits))
    s += sum(a & b for a, b in zip(p.z_bits, q.x_bits))
    return s % 2 == 0


def k_phase(p: PauliString, q: PauliString) -> int:
    """The sign K with q^dag p q = K p:  +1 if [p,q]=0, -1 if {p,q}=0."""
    return 1 if commutes(p, q) else -1


def mul_all(factors) -> PauliString:
    """Ordered product of a nonempty sequence of PauliStrings."""
    factors = list(factors)
    if not factors:
        raise ValueError("need at least one factor")
    out = factors[0]
    for f in factors[1:]:
        out = mul(out, f)
    return out


def trace_product_int(factors, n: int | None = None) -> tuple[int, int]:
    """Trace of the ordered product as an exact Gaussian integer (re, im)."""
    factors = list(factors)
    if not factors:
        if n is None:
            raise ValueError("empty product needs an explicit qubit count")
        return (2**n, 0)
    prod = mul_all(factors)
    if not prod.is_identity_bits:
        return (0, 0)
    d = 2**prod.n
    return [(d, 0), (0, d), (-d, 0), (0, -d)][prod.phase]


def trace_product(factors, n: int | None = None) -> complex:
    """Trace of the ordered product: d * i**phase if it is proportional to
    the identity, else 0. Exact (integer components).

    An empty list returns d = 2**n (trace of the identity, by convention),
    which requires passing `n`.
    """
    re, im = trace_product_int(factors, n)
    return complex(re, im)


def enumerate_paulis(n: int):
    """All 4^n phase-0 representatives in a fixed deterministic order.

    Identity first, then per-qubit letter order I < X < Z < Y with qubit 0 as
    the most significant digit (so n=1 gives [I, X, Z, Y]).
    """
    if n > MAX_ENUM_QUBITS:
        raise ValueError(f"enumeration guard exceeded: n={n} > {MAX_ENUM_QUBITS}")
    out = []
    for code in range(4**n):
        xs, zs = [], []
        c = code
        for _ in range(n):
            digit = c % 4
            c //= 4
            x, z = _BITS_FROM_LABEL[_LABELS[digit]]
            xs.append(x)
            zs.append(z)
        # base-4 digits were produced least significant first; qubit 0 is the
        # most significant digit, so reverse.
        out.append(PauliString(n, tuple(reversed(xs)), tuple(reversed(zs))))
    return out


def pauli_index(p: PauliString) -> int:
    """Position of p's representative in the enumerate_paulis(n) order."""
    code = 0
    for x, z in zip(p.x_bits, p.z_bits):
        code = 4 * code + _LABELS.index(_LABELS[x + 2 * z])
    return code


def random_pauli(n: int, rng: np.random.Generator, exclude_identity: bool = False) -> PauliString:
    """Uniform draw over the 4^n representatives (4^n - 1 when excluding I)."""
    lo = 1 if exclude_identity else 0
    code = int(rng.integers(lo, 4**n))
    xs, zs = [], []
    c = code
    for _ in range(n):
        digit = c % 4
        c //= 4
        x, z = _BITS_FROM_LABEL[_LABELS[digit]]
        xs.append(x)
        zs.append(z)
    return PauliString(n, tuple(reversed(xs)), tuple(reversed(zs)))
