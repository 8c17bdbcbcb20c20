"""Frame potentials in all four variants, plus the complexity bounds.

Plain frame potentials (exact double sums, Monte Carlo over sampled pairs,
and the independent OTO-sum route), numerical double time averages for
fixed-Hamiltonian evolution, the state-weighted generalizations F and G,
the thermal variant W for Hamiltonian ensembles, and the counting bounds
(cardinality, complexity, gate count, entropy, depth, epsilon-tolerance,
early-time growth) that frame potentials imply.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import paulialg, wg
from .cliffordgrp import CliffordTableau, compose, inverse, trace_sq
from .densemat import Ensemble, element_to_matrix
from .estimate import Estimate
from .otolab import OtoSpec, oto_correlator, oto_correlator_exact
from .paulialg import PauliString

VIA_OTO_GUARD = 65536  # number of Pauli tuples enumerated


# ---------------------------------------------------------------------------
# plain frame potentials
# ---------------------------------------------------------------------------

def _pair_abs_trace_sq(a, b) -> float:
    """|tr(a^dag b)|^2 for ensemble elements; exact for Pauli/Clifford."""
    if isinstance(a, PauliString) and isinstance(b, PauliString):
        re, im = paulialg.trace_product_int([a.adjoint(), b])
        return float(re * re + im * im)
    if isinstance(a, CliffordTableau) and isinstance(b, CliffordTableau):
        return float(trace_sq(compose(inverse(a), b)))
    ma, mb = element_to_matrix(a), element_to_matrix(b)
    return abs(np.trace(ma.conj().T @ mb)) ** 2


def frame_potential_exact(ens: Ensemble, k: int) -> Estimate:
    """Exact weighted double sum sum_ij p_i p_j |tr(U_i^dag U_j)|^(2k).

    Discrete ensembles only; Pauli- and Clifford-backed elements use exact
    integer traces.
    """
    if ens.kind != "discrete":
        raise ValueError("exact frame potential needs a discrete ensemble; "
                         "use frame_potential_mc for samplers")
    total = 0.0
    els = ens.elements
    for i, a in enumerate(els):
        for j, b in enumerate(els):
            total += ens.weights[i] * ens.weights[j] * _pair_abs_trace_sq(a, b) ** k
    return Estimate(total, 0.0, len(els) ** 2, method="exact")


def frame_potential_mc(ens: Ensemble, k: int, n_pairs: int,
                       seed: int | None = None) -> Estimate:
    """Monte-Carlo frame potential: mean of |tr(U^dag V)|^(2k) over
    independent pairs, with the plug-in standard error."""
    if n_pairs < 2:
        raise ValueError("need at least 2 pairs")
    seed = ens.resolve_seed(seed)
    draws = ens.sample_block(seed, 2 * n_pairs)
    vals = np.empty(n_pairs)
    for i in range(n_pairs):
        vals[i] = _pair_abs_trace_sq(draws[2 * i], draws[2 * i + 1]) ** k
    return Estimate(float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(n_pairs)),
                    n_pairs, seed=seed, method="monte-carlo")


def frame_potential_via_oto(ens: Ensemble, k: int) -> Estimate:
    """Frame potential from the Pauli-summed squared OTO correlators:

        F = d^(2(k+1)) * (1/d^(4k)) * sum over all Pauli tuples of
            |<A_1 B~_1 ... A_k B~_k>_ens|^2

    An independent oracle for frame_potential_exact; enumeration budget
    limits it to small (n, k).
    """
    import itertools

    if ens.kind != "discrete":
        raise ValueError("the OTO route enumerates exact ensemble averages; "
                         "discrete ensembles only")
    n = int(math.log2(ens.dim))
    if 4 ** (2 * n * k) > VIA_OTO_GUARD:
        raise ValueError("Pauli tuple budget exceeded")
    d = ens.dim
    paulis = paulialg.enumerate_paulis(n)
    total = 0.0
    exactable = all(isinstance(el, (PauliString, CliffordTableau)) for el in ens.elements)
    mats = None if exactable else [element_to_matrix(el) for el in ens.elements]
    for a_ops in itertools.product(paulis, repeat=k):
        for b_ops in itertools.product(paulis, repeat=k):
            spec = OtoSpec(tuple(a_ops), tuple(b_ops))
            avg = 0j
            for idx, w in enumerate(ens.weights):
                if exactable:
                    avg += w * oto_correlator_exact(ens.elements[idx], spec)
                else:
                    avg += w * oto_correlator(mats[idx], spec)
            total += abs(avg) ** 2
    value = total * d ** (2 * (k + 1)) / d ** (4 * k)
    return Estimate(value, 0.0, len(ens.elements) ** 2, method="exact")


# ---------------------------------------------------------------------------
# time averages
# ---------------------------------------------------------------------------

def analytic_time_average(k: int, d: int) -> int:
    """Infinite-time average of the frame potential for a fixed Hamiltonian
    with fully incommensurate levels: k! d^k."""
    return math.factorial(k) * d**k


def _trapezoid_double_average(spectrum, k, t_max, n_grid) -> float:
    """2D trapezoidal average of |tr exp(-iH(t1-t2))|^(2k) over [0,t_max]^2.

    The integrand depends only on tau = t1 - t2, so the n x n trapezoid sum
    collapses onto anti-diagonals with exactly-known weights; this is an
    algebraic rewrite of the full 2D rule, not an extra approximation.
    """
    energies = np.asarray(spectrum, dtype=float)
    h = t_max / (n_grid - 1)
    taus = h * np.arange(n_grid)
    phases = np.exp(-1j * np.outer(taus, energies))
    f = np.abs(phases.sum(axis=1)) ** (2 * k)
    c = np.empty(n_grid)
    c[0] = 0.25 + (n_grid - 2) + 0.25
    for m in range(1, n_grid - 1):
        c[m] = (n_grid - m - 2) + 1.0
    c[n_grid - 1] = 0.25
    total = c[0] * f[0] + 2.0 * np.dot(c[1:], f[1:])
    return float(total * h * h / t_max**2)


def time_averaged_frame_potential(spectrum, k: int, t_max: float,
                                  n_grid: int = 4096) -> Estimate:
    """Numerical double time average of |tr e^(-iH(t1-t2))|^(2k) over
    [0, t_max]^2 for a given spectrum.

    The reported std_error field holds the convergence diagnostic
    |F(t_max) - F(t_max/2)|; the infinite-time limit for generic
    (incommensurate) spectra is analytic_time_average(k, d).
    """
    if n_grid < 16:
        raise ValueError("n_grid must be at least 16")
    value = _trapezoid_double_average(spectrum, k, t_max, n_grid)
    half = _trapezoid_double_average(spectrum, k, t_max / 2, max(n_grid // 2, 16))
    diag = abs(value - half)
    if diag == 0.0:
        diag = 5e-324  # fully converged (e.g. degenerate spectrum); keep > 0
    return Estimate(value, diag, n_grid, method="time-average")


# ---------------------------------------------------------------------------
# generalized and thermal frame potentials
# ---------------------------------------------------------------------------

def _state_root(rho: np.ndarray, k: int) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if np.max(np.abs(rho - rho.conj().T)) > 1e-10 or abs(np.trace(rho) - 1) > 1e-10:
        raise ValueError("rho must be Hermitian with unit trace")
    evals, vecs = np.linalg.eigh(rho)
    if evals.min() < -1e-12:
        raise ValueError("rho is not positive semidefinite")
    return (vecs * np.clip(evals, 0.0, None) ** (1.0 / k)) @ vecs.conj().T


def _generalized_integrand(root, u, v, k, variant) -> complex:
    z1 = np.trace(root @ u @ v.conj().T)
    if variant == "F":
        z2 = np.trace(root @ v @ u.conj().T)
    else:
        z2 = np.trace(root @ u.conj().T @ v)
    return (z1 * z2) ** k


def _generalized(ens, rho, k, variant, mc_samples, seed) -> Estimate:
    root = _state_root(rho, k)
    if ens.kind == "discrete":
        mats = [element_to_matrix(el) for el in ens.elements]
        total = 0j
        for i, u in enumerate(mats):
            for j, v in enumerate(mats):
                total += ens.weights[i] * ens.weights[j] * _generalized_integrand(root, u, v, k, variant)
        value = total.real if variant == "F" else total
        return Estimate(value, 0.0, len(mats) ** 2, method="exact")
    if mc_samples is None or mc_samples < 2:
        raise ValueError("sampler ensembles need mc_samples >= 2")
    seed = ens.resolve_seed(seed)
    draws = ens.sample_block(seed, 2 * mc_samples)
    vals = np.empty(mc_samples, dtype=complex)
    for i in range(mc_samples):
        u = element_to_matrix(draws[2 * i])
        v = element_to_matrix(draws[2 * i + 1])
        vals[i] = _generalized_integrand(root, u, v, k, variant)
    se = math.sqrt(vals.real.var(ddof=1) / mc_samples + vals.imag.var(ddof=1) / mc_samples)
    value = float(vals.real.mean()) if variant == "F" else complex(vals.mean())
    return Estimate(value, se, mc_samples, seed=seed, method="monte-carlo")


def generalized_F(ens: Ensemble, rho: np.ndarray, k: int,
                  mc_samples: int | None = None, seed: int | None = None) -> Estimate:
    """State-weighted frame potential
    avg_{U,V} [tr(rho^(1/k) U V+) tr(rho^(1/k) V U+)]^k."""
    return _generalized(ens, rho, k, "F", mc_samples, seed)


def generalized_G(ens: Ensemble, rho: np.ndarray, k: int,
                  mc_samples: int | None = None, seed: int | None = None) -> Estimate:
    """The sibling generalization with the second trace ordered U+ V;
    its Haar value is state-independent."""
    return _generalized(ens, rho, k, "G", mc_samples, seed)


def generalized_F_haar_reference(rho_kind: str, k: int, d: int,
                                 rho: np.ndarray | None = None) -> Fraction | float:
    """Haar value of the generalized frame potential.

    rho_kind: "pure" -> 1/binom(k+d-1, k); "maximally_mixed" -> F_Haar/d^2;
    "explicit" (with rho) -> tr(rho^2)/d at k=1 or the two-term k=2 formula.
    Explicit states with k >= 3 have no closed form here: use Monte Carlo
    via generalized_F.
    """
    if rho_kind == "pure":
        return Fraction(1, math.comb(k + d - 1, k))
    if rho_kind == "maximally_mixed":
        return wg.haar_frame_potential_exact(k, d) / (d * d)
    if rho_kind == "explicit":
        if rho is None:
            raise ValueError("explicit kind needs rho")
        purity = float(np.trace(rho @ rho).real)
        if k == 1:
            return purity / d
        if k == 2:
            tr = float(np.trace(rho).real)
            return 2 * tr * tr / (d * d - 1) - 2 * purity / (d * (d * d - 1))
        raise ValueError("no closed form for explicit rho with k >= 3; "
                         "use Monte Carlo (generalized_F)")
    raise ValueError(f"unknown rho_kind {rho_kind!r}")


def thermal_W(h_sampler, beta: float, t: float, k: int, mc_samples: int,
              seed: int, d: int | None = None) -> Estimate:
    """Thermal frame potential for an ensemble of Hamiltonians:

        avg over (G, H) of |tr{e^(-(beta/2k - it)G) e^(-(beta/2k + it)H)}|^(2k)
                           / (tr e^(-beta G) tr e^(-beta H))

    h_sampler(rng) draws a Hermitian matrix; always Monte Carlo.
    """
    if beta < 0:
        raise ValueError("beta must be nonnegative")
    rng = np.random.default_rng([seed, 0])
    vals = np.empty(mc_samples)
    for i in range(mc_samples):
        g = h_sampler(rng)
        h = h_sampler(rng)
        eg, vg = np.linalg.eigh(g)
        eh, vh = np.linalg.eigh(h)
        mg = (vg * np.exp(-(beta / (2 * k) - 1j * t) * eg)) @ vg.conj().T
        mh = (vh * np.exp(-(beta / (2 * k) + 1j * t) * eh)) @ vh.conj().T
        num = abs(np.trace(mg @ mh)) ** (2 * k)
        den = np.exp(-beta * eg).sum() * np.exp(-beta * eh).sum()
        vals[i] = num / den
    return Estimate(float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(mc_samples)),
                    mc_samples, seed=seed, method="monte-carlo")


# ---------------------------------------------------------------------------
# bounds suite
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EarlyTimeBound:
    value: float
    validity_ratio: float  # t^2 tr{H^2}/d, must be << 1 for the bound to hold
    valid: bool


def _check_positive_f(f: float):
    if f <= 0:
        raise ValueError("frame potential must be positive")


def cardinality_bound(f: float, k: int, d: int) -> float:
    """Lower bound on the ensemble size: d^(2k) / F."""
    _check_positive_f(f)
    return d ** (2 * k) / f


def complexity_bound(f: float, k: int, n: int, choices: float) -> float:
    """Lower bound on circuit complexity:
    (2kn log 2 - log F) / log(choices), natural logs."""
    _check_positive_f(f)
    return (2 * k * n * math.log(2) - math.log(f)) / math.log(choices)


def gate_count_bound(cardinality: float, g: int, n: int) -> float:
    """Lower bound on gate count from ensemble size: log|E| / log(g n^2)."""
    if cardinality <= 0:
        raise ValueError("cardinality must be positive")
    return math.log(cardinality) / math.log(g * n * n)


def entropy_bound(f: float, k: int, n: int) -> float:
    """Lower bound on the ensemble von Neumann entropy in bits:
    2kn - log2 F."""
    _check_positive_f(f)
    return 2 * k * n - math.log2(f)


def depth_bound(f: float, k: int, n: int, g: int, q: int) -> float:
    """Lower bound on circuit depth when q-local gates act in parallel:
    (2kn log 2 - log F) / (log g + log(n!/(q!)^(n/q)))."""
    _check_positive_f(f)
    if n % q != 0:
        raise ValueError("q must divide n for the parallel-pairing count")
    pairings = math.log(math.factorial(n)) - (n // q) * math.log(math.factorial(q))
    return (2 * k * n * math.log(2) - math.log(f)) / (math.log(g) + pairings)


def epsilon_bound(f: float, k: int, d: int, epsilon: float, choices: float) -> float:
    """Complexity lower bound at operator tolerance epsilon:
    (2k log d - k eps^2 - log F) / log(choices). Needs epsilon < sqrt(2)."""
    _check_positive_f(f)
    if not 0 < epsilon < math.sqrt(2):
        raise ValueError("epsilon must be in (0, sqrt(2)) for the bound to hold")
    return (2 * k * math.log(d) - k * epsilon**2 - math.log(f)) / math.log(choices)


def early_time_bound(tr_h2_avg: float, k: int, d: int, t: float) -> EarlyTimeBound:
    """Early-time complexity growth for evolution under an ensemble of
    Hamiltonians: C(t) > 2k t^2 tr{avg H^2}/d, valid while
    t^2 tr{avg H^2}/d << 1."""
    if tr_h2_avg <= 0:
        raise ValueError("the averaged tr H^2 must be positive")
    ratio = t * t * tr_h2_avg / d
    return EarlyTimeBound(2 * k * ratio, ratio, ratio < 0.1)


def bounds_report(f: float, k: int, n: int, *, choices: float | None = None,
                  g: int | None = None, q: int | None = None,
                  epsilon: float | None = None) -> dict:
    """All bounds applicable to the supplied inputs, as a flat dict."""
    d = 2**n
    out = {
        "cardinality": cardinality_bound(f, k, d),
        "entropy_bits": entropy_bound(f, k, n),
    }
    if choices is not None:
        out["complexity"] = complexity_bound(f, k, n, choices)
        if epsilon is not None:
            out["complexity_epsilon"] = epsilon_bound(f, k, d, epsilon, choices)
    if g is not None:
        out["gate_count"] = gate_count_bound(out["cardinality"], g, n)
        if q is not None and n % q == 0:
            out["depth"] = depth_bound(f, k, n, g, q)
    return out
