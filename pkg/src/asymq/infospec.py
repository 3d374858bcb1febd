"""Single-shot information-spectrum toolkit for small density matrices.

Information-spectrum and hypothesis-testing divergences, the eps-threshold
entropy, and the one-shot bounds on the log number of states distinguishable
within a pure covariant orbit.  All spectra are finite, so every threshold
quantity is evaluated exactly over its candidate set; suprema that are not
attained are reported at the candidate value with ``open_endpoint=True``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np
import scipy.linalg

from .errors import DomainError, SizeCapError
from .numeric import E

MAX_DIM = 64

_HERMITIAN_TOL = 1e-12
_TRACE_TOL = 1e-12
_EIG_FLOOR = -1e-12


class SpectralThreshold(NamedTuple):
    """A threshold value plus whether it is an unattained supremum."""

    value: float
    open_endpoint: bool


def threshold_scan(levels: Iterable[tuple[float, float]], slack: float) -> SpectralThreshold:
    """Largest threshold whose accumulated mass stays <= slack.

    ``levels`` holds (value, mass) pairs.  Ties are merged, values scanned in
    increasing order, and the first value where the running mass exceeds
    ``slack`` is returned with an open-endpoint flag (the admissible set is
    the open interval below it).  If the total mass never exceeds ``slack``
    the result is (+inf, False).
    """
    merged: dict[float, float] = {}
    for value, mass in levels:
        merged[value] = merged.get(value, 0.0) + mass
    running = 0.0
    for value in sorted(merged):
        running += merged[value]
        if running > slack:
            return SpectralThreshold(value, True)
    return SpectralThreshold(math.inf, False)


class DensityMatrix:
    """A validated density matrix of dimension at most 64.

    Hermiticity, positivity and unit trace are enforced to tight tolerances
    at construction; the eigendecomposition is cached.
    """

    def __init__(self, matrix):
        a = np.asarray(matrix, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DomainError(f"density matrix must be square, got shape {a.shape}")
        d = a.shape[0]
        if d > MAX_DIM:
            raise SizeCapError(f"dimension {d} exceeds cap {MAX_DIM}")
        if not np.allclose(a, a.conj().T, atol=_HERMITIAN_TOL, rtol=0.0):
            raise DomainError("matrix is not Hermitian within 1e-12")
        tr = a.trace().real
        if abs(tr - 1.0) > _TRACE_TOL * max(1.0, d):
            raise DomainError(f"trace is {tr}, expected 1 within tolerance")
        eigs = np.linalg.eigvalsh(a)
        if eigs.min() < _EIG_FLOOR * max(1.0, d):
            raise DomainError(f"matrix has a negative eigenvalue {eigs.min()}")
        self.matrix = a
        self.dim = d
        self._eigs = eigs

    @classmethod
    def diagonal(cls, probs: Sequence[float]) -> "DensityMatrix":
        return cls(np.diag(np.asarray(probs, dtype=float)))

    @classmethod
    def pure(cls, vec) -> "DensityMatrix":
        v = np.asarray(vec, dtype=complex)
        v = v / np.linalg.norm(v)
        return cls(np.outer(v, v.conj()))

    def eigenvalues(self) -> np.ndarray:
        return self._eigs.copy()

    def purity(self) -> float:
        return float((self._eigs**2).sum())


def spectral_threshold_entropy(rho: DensityMatrix, eps: float, base: float = E) -> SpectralThreshold:
    """max{lam : tr rho {rho >= e^-lam} <= eps}, scanned over -log eigenvalues."""
    if not 0.0 <= eps < 1.0:
        raise DomainError(f"eps must lie in [0, 1), got {eps}")
    levels = [(-math.log(lam), float(lam)) for lam in rho.eigenvalues() if lam > 1e-14]
    value, flag = threshold_scan(levels, eps)
    scale = 1.0 if base == E else 1.0 / math.log(base)
    return SpectralThreshold(value * scale, flag)


def _support_decomposition(sigma: DensityMatrix, tol: float = 1e-12):
    w, u = np.linalg.eigh(sigma.matrix)
    supp = w > tol
    return w, u, supp


def info_spectrum_divergence(rho: DensityMatrix, sigma: DensityMatrix, delta: float) -> SpectralThreshold:
    """max{lam : tr rho {rho <= e^lam sigma} <= delta}.

    The candidate set is the log of the pencil eigenvalues of (rho, sigma) on
    the support of sigma; the trace condition is evaluated exactly at each
    candidate, so the maximum over the discrete jump structure is exact.
    Directions of rho outside supp(sigma) never enter the projector, which can
    leave the condition satisfied for every lam; the result is then +inf.
    """
    if not 0.0 <= delta < 1.0:
        raise DomainError(f"delta must lie in [0, 1), got {delta}")
    if rho.dim != sigma.dim:
        raise DomainError("dimension mismatch")
    w, u, supp = _support_decomposition(sigma)
    basis = u[:, supp]
    root = basis * (1.0 / np.sqrt(w[supp]))
    pencil = root.conj().T @ rho.matrix @ root
    gen = np.linalg.eigvalsh(pencil)
    candidates = sorted({math.log(g) for g in gen if g > 1e-14})
    scale = max(1.0, float(np.abs(rho.matrix).max()), float(np.abs(sigma.matrix).max()))
    for lam in candidates:
        a = math.exp(lam) * sigma.matrix - rho.matrix
        vals, vecs = np.linalg.eigh(a)
        proj = vecs[:, vals >= -1e-9 * scale]
        mass = float(np.real(np.einsum("ij,ik,kj->", proj.conj(), rho.matrix, proj)))
        if mass > delta + 1e-12:
            return SpectralThreshold(lam, True)
    return SpectralThreshold(math.inf, False)


def hypothesis_testing_divergence(rho: DensityMatrix, sigma: DensityMatrix, eps: float) -> float:
    """-log min{tr Q sigma : 0 <= Q <= I, tr Q rho >= 1 - eps}.

    Quantum Neyman-Pearson: the optimal test is the strictly-positive part of
    rho - t*sigma plus a partial weight on its kernel tuned so the rho-mass
    hits 1 - eps exactly; t* is found by bisection.  Returns +inf when an
    admissible test supported outside supp(sigma) exists.
    """
    if not 0.0 <= eps < 1.0:
        raise DomainError(f"eps must lie in [0, 1), got {eps}")
    if rho.dim != sigma.dim:
        raise DomainError("dimension mismatch")
    need = 1.0 - eps
    w, u, supp = _support_decomposition(sigma)
    if not supp.all():
        kernel = u[:, ~supp]
        ker_mass = float(np.real(np.einsum("ij,ik,kj->", kernel.conj(), rho.matrix, kernel)))
        if ker_mass >= need - 1e-12:
            return math.inf

    scale = max(1.0, float(np.abs(rho.matrix).max()), float(np.abs(sigma.matrix).max()))
    bis_band = 1e-13 * scale

    def strict_mass(t: float) -> float:
        vals, vecs = np.linalg.eigh(rho.matrix - t * sigma.matrix)
        proj = vecs[:, vals > bis_band]
        return float(np.real(np.einsum("ij,ik,kj->", proj.conj(), rho.matrix, proj)))

    # bracket the threshold: commuting pairs cross below max-eig ratio, but a
    # noncommuting positive part can persist (decaying toward the kernel
    # mass), so grow the upper end geometrically until the mass drops
    lo = 0.0
    hi = float(rho.eigenvalues().max()) / float(w[supp].min()) + 1.0
    for _ in range(200):
        if strict_mass(hi) < need - 1e-12:
            break
        lo, hi = hi, 2.0 * hi
    for _ in range(300):
        mid = 0.5 * (lo + hi)
        if strict_mass(mid) >= need - 1e-12:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-13 * max(1.0, hi):
            break
    t_star, width = 0.5 * (lo + hi), hi - lo

    # the crossing eigenvalue sits within width * ||sigma|| of zero
    band = max(1e-12 * scale, 10.0 * width * float(np.abs(sigma.matrix).max()))
    vals, vecs = np.linalg.eigh(rho.matrix - t_star * sigma.matrix)
    plus = vecs[:, vals > band]
    boundary = vecs[:, np.abs(vals) <= band]
    a_mass = float(np.real(np.einsum("ij,ik,kj->", plus.conj(), rho.matrix, plus)))
    b_rho = float(np.real(np.einsum("ij,ik,kj->", boundary.conj(), rho.matrix, boundary)))
    frac = 0.0
    if need > a_mass and b_rho > 1e-15:
        frac = min(1.0, (need - a_mass) / b_rho)
    beta = float(np.real(np.einsum("ij,ik,kj->", plus.conj(), sigma.matrix, plus)))
    beta += frac * float(np.real(np.einsum("ij,ik,kj->", boundary.conj(), sigma.matrix, boundary)))
    if beta <= 0.0:
        return math.inf
    return -math.log(beta)


@dataclass(frozen=True)
class ChainReport:
    """The divergence sandwich D_s^eps <= D_H^eps <= D_s^(eps+delta) - log(delta)."""

    lower: float
    middle: float
    upper: float
    slack: float

    @property
    def holds(self) -> bool:
        return (self.lower <= self.middle + self.slack) and (self.middle <= self.upper + self.slack)


def divergence_chain_check(rho: DensityMatrix, sigma: DensityMatrix, eps: float, delta: float,
                           slack: float = 1e-9) -> ChainReport:
    """Evaluate both divergences and the chain bound linking them."""
    if not (0.0 <= eps and 0.0 < delta and eps + delta < 1.0):
        raise DomainError(f"need 0 <= eps, 0 < delta, eps + delta < 1; got eps={eps}, delta={delta}")
    lower = info_spectrum_divergence(rho, sigma, eps).value
    middle = hypothesis_testing_divergence(rho, sigma, eps)
    upper = info_spectrum_divergence(rho, sigma, eps + delta).value - math.log(delta)
    return ChainReport(lower, middle, upper, slack)


@dataclass(frozen=True)
class CqEnsemble:
    """A classical-quantum ensemble: states W_x with a prior P."""

    states: tuple[DensityMatrix, ...]
    prior: tuple[float, ...]

    def __post_init__(self):
        if len(self.states) != len(self.prior) or not self.states:
            raise DomainError("states and prior must be nonempty and of equal length")
        if abs(sum(self.prior) - 1.0) > 1e-10:
            raise DomainError("prior must sum to 1")
        if any(p < 0 for p in self.prior):
            raise DomainError("prior must be nonnegative")
        dims = {s.dim for s in self.states}
        if len(dims) != 1:
            raise DomainError("all states must share a dimension")

    @classmethod
    def uniform(cls, states: Sequence[DensityMatrix]) -> "CqEnsemble":
        w = 1.0 / len(states)
        return cls(tuple(states), tuple(w for _ in states))

    def averaged(self) -> DensityMatrix:
        acc = sum(p * s.matrix for p, s in zip(self.prior, self.states))
        return DensityMatrix(acc)


def joint_cq_state(ens: CqEnsemble) -> DensityMatrix:
    """The correlated state sum_x P(x) |x><x| (x) W_x."""
    blocks = [p * s.matrix for p, s in zip(ens.prior, ens.states)]
    return DensityMatrix(scipy.linalg.block_diag(*blocks))


def product_cq_state(ens: CqEnsemble, rho: DensityMatrix) -> DensityMatrix:
    """The uncorrelated state (sum_x P(x) |x><x|) (x) rho."""
    blocks = [p * rho.matrix for p in ens.prior]
    return DensityMatrix(scipy.linalg.block_diag(*blocks))


def _validate_slacks(eps: float, delta1: float, delta2: float) -> None:
    if not (delta1 > 0 and delta2 > 0):
        raise DomainError("delta1 and delta2 must be positive")
    if eps - delta1 - delta2 <= 0:
        raise DomainError("need eps - delta1 - delta2 > 0")
    if eps + delta1 + 2 * delta2 >= 1:
        raise DomainError("need eps + delta1 + 2*delta2 < 1")


def distinguishable_count_bounds_from_spectrum(spectrum: Iterable[tuple[float, int]], eps: float,
                                               delta1: float, delta2: float,
                                               base: float = E) -> tuple[float, float]:
    """One-shot bounds on the log count of distinguishable orbit states.

    ``spectrum`` lists (eigenvalue, multiplicity) pairs of the orbit-averaged
    state.  lower/upper are the threshold entropy at the shifted slack levels
    minus/plus the exact slack penalties.
    """
    _validate_slacks(eps, delta1, delta2)
    levels = [(-math.log(lam), lam * mult) for lam, mult in spectrum if lam > 1e-300]
    lower_h = threshold_scan(levels, eps - delta1 - delta2).value
    upper_h = threshold_scan(levels, eps + delta1 + 2 * delta2).value
    lower = lower_h - math.log(1.0 / (delta1 * delta2))
    upper = upper_h + math.log(1.0 / (delta1 * delta2**2))
    scale = 1.0 if base == E else 1.0 / math.log(base)
    return lower * scale, upper * scale


def distinguishable_count_bounds(ens: CqEnsemble, eps: float, delta1: float, delta2: float,
                                 base: float = E) -> tuple[float, float]:
    """One-shot bounds for a pure-state ensemble, via its averaged state."""
    for s in ens.states:
        if s.purity() < 1.0 - 1e-10:
            raise DomainError("distinguishable_count_bounds requires pure ensemble states")
    avg = ens.averaged()
    spectrum = [(float(lam), 1) for lam in avg.eigenvalues()]
    return distinguishable_count_bounds_from_spectrum(spectrum, eps, delta1, delta2, base)


def orthogonal_orbit_log_count(v: int, w: int, j: int, base: float = E) -> float:
    """Exact log count for orthogonal projector orbits at error 1 - 1/j.

    The state is proportional to a rank-v projector, the orbit average to a
    rank-w projector; with j codewords per state the count is j * w / v.
    """
    if not (w >= v >= 1):
        raise DomainError(f"need w >= v >= 1, got v={v}, w={w}")
    if j < 1:
        raise DomainError(f"need j >= 1, got {j}")
    val = math.log(j) + math.log(w) - math.log(v)
    return val if base == E else val / math.log(base)
