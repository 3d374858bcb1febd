"""Exact Schur-Weyl outcome distributions for Dicke states with attached bits.

The n-qubit space splits under the commuting SU(2) and permutation actions
into blocks labelled by a row index x in [0, n/2].  For the state built from
l ones, k - l zeros and an (N+M)-qubit Dicke state with M ones, this module
computes the outcome distribution over x in exact rational arithmetic, the
averaged-state spectrum and von Neumann entropy, and the eps-threshold
entropy of the averaged state.

Three independent routes to the distribution are provided:

* ``pmf``           three-block angular-momentum coupling with exact squared
                    Clebsch-Gordan coefficients (the default),
* ``pmf_closed_kl`` a closed product of binomial ratios for k = l, m <= n - m,
                    the exact route that stays cheap at large n,
* ``pmf_chain``     qubit-by-qubit coupling onto the Dicke block, a positive
                    recursion that is also safe in floating point.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .errors import ConstraintError, DomainError, InvariantError
from .infospec import SpectralThreshold, threshold_scan
from .numeric import E, binomial_exact, log_fraction

#: default ceiling for the general-(k, l) exact coupling path
DEFAULT_EXACT_MAX_N = 300


@dataclass(frozen=True)
class Params:
    """Admissible parameter tuple (n, m, k, l).

    n qubits carry m ones in total; the first k qubits are the attached bit
    string with l ones; the remaining N + M qubits hold the Dicke state with
    M ones.  Construction validates membership in the admissible set
    {m, k <= n and m + k - n <= l <= min(m, k)}.
    """

    n: int
    m: int
    k: int
    l: int

    def __post_init__(self):
        for name, value in (("n", self.n), ("m", self.m), ("k", self.k), ("l", self.l)):
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise ConstraintError(f"{name} >= 0", f"{name} must be a nonnegative integer, got {value!r}")
        if self.m > self.n:
            raise ConstraintError("m <= n", f"m <= n fails: m={self.m}, n={self.n}")
        if self.k > self.n:
            raise ConstraintError("k <= n", f"k <= n fails: k={self.k}, n={self.n}")
        if self.l < self.m + self.k - self.n:
            raise ConstraintError(
                "l >= m + k - n", f"l >= m + k - n fails: l={self.l}, m + k - n = {self.m + self.k - self.n}")
        if self.l > min(self.m, self.k):
            raise ConstraintError(
                "l <= min(m, k)", f"l <= min(m, k) fails: l={self.l}, min(m, k) = {min(self.m, self.k)}")

    @property
    def M(self) -> int:
        """Ones in the Dicke block, m - l."""
        return self.m - self.l

    @property
    def N(self) -> int:
        """Zeros in the Dicke block, n - m - k + l."""
        return self.n - self.m - self.k + self.l

    @property
    def K(self) -> int:
        """Zeros in the attached string, k - l."""
        return self.k - self.l

    @property
    def L(self) -> int:
        """Ones in the attached string, l."""
        return self.l


def validate_params(n: int, m: int, k: int, l: int) -> Params:
    """Build a Params tuple, raising ConstraintError naming any failed inequality."""
    return Params(n, m, k, l)


def flipped_params(params: Params) -> Params:
    """Image of the tuple under the global 0 <-> 1 relabeling."""
    return Params(params.n, params.n - params.m, params.k, params.k - params.l)


def dim_irrep(n: int, x: int) -> int:
    """Dimension of the two-row permutation irrep indexed by x, C(n,x) - C(n,x-1)."""
    if x < 0 or 2 * x > n:
        raise DomainError(f"dim_irrep requires 0 <= x <= n/2, got n={n}, x={x}")
    return binomial_exact(n, x) - binomial_exact(n, x - 1)


# ---------------------------------------------------------------------------
# squared Clebsch-Gordan coefficients
# ---------------------------------------------------------------------------

_factorial = lru_cache(maxsize=None)(math.factorial)


def _doubled(value) -> int:
    twice = Fraction(value) * 2
    if twice.denominator != 1:
        raise DomainError(f"{value!r} is not a half-integer")
    return int(twice)


@lru_cache(maxsize=None)
def _cg2(tj1: int, tm1: int, tj2: int, tm2: int, tj: int, tm: int) -> Fraction:
    # doubled angular momenta throughout; returns |<j1 m1; j2 m2 | j m>|^2
    if tm1 + tm2 != tm:
        return Fraction(0)
    for tjj, tmm in ((tj1, tm1), (tj2, tm2), (tj, tm)):
        if tjj < 0 or abs(tmm) > tjj or (tjj - tmm) % 2:
            return Fraction(0)
    if not abs(tj1 - tj2) <= tj <= tj1 + tj2:
        return Fraction(0)
    if (tj1 + tj2 + tj) % 2:
        return Fraction(0)

    a = (tj1 + tj2 - tj) // 2
    b = (tj1 - tm1) // 2
    c = (tj2 + tm2) // 2
    d = (tj - tj2 + tm1) // 2
    e = (tj - tj1 - tm2) // 2
    t_lo = max(0, -d, -e)
    t_hi = min(a, b, c)
    if t_lo > t_hi:
        return Fraction(0)

    total = Fraction(0)
    for t in range(t_lo, t_hi + 1):
        den = (_factorial(t) * _factorial(a - t) * _factorial(b - t) * _factorial(c - t)
               * _factorial(d + t) * _factorial(e + t))
        total += Fraction(-1 if t % 2 else 1, den)
    if not total:
        return Fraction(0)

    num = (tj + 1) \
        * _factorial(a) * _factorial((tj1 - tj2 + tj) // 2) * _factorial((-tj1 + tj2 + tj) // 2) \
        * _factorial((tj + tm) // 2) * _factorial((tj - tm) // 2) \
        * _factorial((tj1 + tm1) // 2) * _factorial(b) \
        * _factorial(c) * _factorial((tj2 - tm2) // 2)
    den = _factorial((tj1 + tj2 + tj) // 2 + 1)
    return Fraction(num, den) * total * total


def cg_squared(j1, m1, j2, m2, j, m) -> Fraction:
    """Exact squared Clebsch-Gordan coefficient |<j1 m1; j2 m2 | j m>|^2.

    Arguments may be ints, Fractions, or exactly-representable half-integer
    floats.  Violated selection rules yield Fraction(0) rather than an error.
    """
    return _cg2(_doubled(j1), _doubled(m1), _doubled(j2), _doubled(m2), _doubled(j), _doubled(m))


# ---------------------------------------------------------------------------
# outcome distributions
# ---------------------------------------------------------------------------


class ExactPMF:
    """Distribution over the row index x, optionally with exact rational masses.

    ``masses`` maps x to a Fraction (None for float-only distributions);
    ``floats`` always carries the float view.  Instances are immutable by
    convention.  Exact masses must sum to exactly 1.
    """

    def __init__(self, params: Params | None = None,
                 masses: Mapping[int, Fraction] | None = None,
                 floats: Mapping[int, float] | None = None,
                 validate: bool = True):
        if masses is None and floats is None:
            raise DomainError("ExactPMF needs masses or floats")
        self.params = params
        self.masses = {x: masses[x] for x in sorted(masses)} if masses is not None else None
        if floats is None:
            floats = {x: float(p) for x, p in self.masses.items()}
        self.floats = {x: float(floats[x]) for x in sorted(floats)}
        if not self.floats:
            raise DomainError("empty distribution")
        xs = list(self.floats)
        self.x_min, self.x_max = xs[0], xs[-1]
        if validate:
            self._validate()

    def _validate(self):
        if self.params is not None and (self.x_min < 0 or 2 * self.x_max > self.params.n):
            raise InvariantError(f"support [{self.x_min}, {self.x_max}] leaves [0, n/2]")
        if self.masses is not None:
            if any(p < 0 for p in self.masses.values()):
                raise InvariantError("negative exact mass")
            total = sum(self.masses.values())
            if total != 1:
                raise InvariantError(f"exact masses sum to {total}, expected exactly 1")
        else:
            if any(p < -1e-15 for p in self.floats.values()):
                raise InvariantError("negative float mass")
            total = sum(self.floats.values())
            if abs(total - 1.0) > 1e-9:
                raise InvariantError(f"float masses sum to {total}")

    def __repr__(self):
        kind = "exact" if self.exact else "float"
        return (f"ExactPMF({kind}, params={self.params}, "
                f"support=[{self.x_min}, {self.x_max}])")

    @property
    def exact(self) -> bool:
        return self.masses is not None

    @property
    def support(self) -> tuple[int, int]:
        return self.x_min, self.x_max

    def prob(self, x: int) -> float:
        return self.floats.get(x, 0.0)

    def frac(self, x: int) -> Fraction:
        if self.masses is None:
            raise DomainError("float-only distribution has no exact masses")
        return self.masses.get(x, Fraction(0))

    def items(self):
        return self.floats.items()

    def mean(self):
        if self.exact:
            return sum(x * p for x, p in self.masses.items())
        return sum(x * p for x, p in self.floats.items())

    def variance(self):
        mu = self.mean()
        if self.exact:
            return sum(p * (x - mu) ** 2 for x, p in self.masses.items())
        return sum(p * (x - mu) ** 2 for x, p in self.floats.items())

    def cdf(self, x: int):
        if self.exact:
            return sum(p for y, p in self.masses.items() if y <= x)
        return sum(p for y, p in self.floats.items() if y <= x)

    def equals_exactly(self, other: "ExactPMF") -> bool:
        if self.masses is None or other.masses is None:
            raise DomainError("exact comparison needs exact masses on both sides")
        return self.masses == other.masses

    def csv_rows(self) -> tuple[list[str], list[list[str]]]:
        if self.exact:
            header = ["x", "p_num", "p_den", "p_float"]
            rows = [[str(x), str(p.numerator), str(p.denominator), format(float(p), ".12g")]
                    for x, p in self.masses.items()]
        else:
            header = ["x", "p_float"]
            rows = [[str(x), format(p, ".12g")] for x, p in self.floats.items()]
        return header, rows


def pmf_to_csv(dist: ExactPMF, stream: io.TextIOBase) -> None:
    """Serialize a distribution as CSV (x, p_num, p_den, p_float or x, p_float)."""
    header, rows = dist.csv_rows()
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def pmf(params: Params) -> ExactPMF:
    """Exact outcome distribution by three-block coupling.

    The l ones form a stretched block (j1 = l/2, m1 = -l/2), the k - l zeros
    another (j2 = (k-l)/2, m2 = +(k-l)/2), and the Dicke state is the
    highest-spin state of its block (j3 = (N+M)/2, m3 = (N-M)/2).  Coupling
    j1 with j2 into j12 and then with j3 into the total spin (n - 2x)/2 gives

        p(x) = sum_{j12} cg^2(j1, m1; j2, m2 -> j12) *
                         cg^2(j12, m1+m2; j3, m3 -> (n-2x)/2),

    exactly; distinct j12 branches land in orthogonal multiplicity vectors.
    """
    tj1, tm1 = params.l, -params.l
    tj2, tm2 = params.K, params.K
    tj3, tm3 = params.N + params.M, params.N - params.M
    tm12 = tm1 + tm2
    tm_total = tm12 + tm3

    masses: dict[int, Fraction] = {}
    for x in range(params.n // 2 + 1):
        tj = params.n - 2 * x
        if tj < abs(tm_total):
            continue
        acc = Fraction(0)
        for tj12 in range(abs(tj1 - tj2), tj1 + tj2 + 1, 2):
            c1 = _cg2(tj1, tm1, tj2, tm2, tj12, tm12)
            if c1:
                c2 = _cg2(tj12, tm12, tj3, tm3, tj, tm_total)
                if c2:
                    acc += c1 * c2
        if acc:
            masses[x] = acc
    return ExactPMF(params=params, masses=masses)


def pmf_closed_kl(params: Params, exact: bool = True) -> ExactPMF:
    """Closed-form distribution for k = l under m <= n - m.

    p(x) = [C(n,x)/C(n,m)] [C(l,x)/C(m,x)] [(n-2x+1)/(n-x+1)] C(n-l-x, m-l)
    for x <= min(l, m), evaluated by exact ratio updates.  A product of
    positive binomial ratios, hence also stable in float mode.
    """
    n, m, k, l = params.n, params.m, params.k, params.l
    if k != l:
        raise ConstraintError("k == l", f"closed form requires k = l, got k={k}, l={l}")
    if 2 * m > n:
        raise ConstraintError("m <= n - m", f"closed form requires m <= n - m, got m={m}, n={n}")
    p = Fraction(binomial_exact(n - l, m - l), binomial_exact(n, m))
    masses = {}
    if p:
        masses[0] = p
    for x in range(min(l, m)):
        num = (l - x) * (n - 2 * x - 1) * (n - x + 1) * (n - m - x)
        den = (x + 1) * (m - x) * (n - 2 * x + 1) * (n - l - x)
        if num == 0:
            break
        p = p * Fraction(num, den)
        masses[x + 1] = p
    if exact:
        return ExactPMF(params=params, masses=masses)
    return ExactPMF(params=params, floats={x: float(v) for x, v in masses.items()})


def pmf_chain(params: Params, exact: bool = False) -> ExactPMF:
    """Outcome distribution by coupling the attached bits one at a time.

    Starting from the Dicke block (a definite-spin state), each appended
    qubit splits j into j +- 1/2 with the standard branch weights; the total
    spin marginal is independent of the coupling order, so the final
    distribution over x agrees exactly with ``pmf``.  All weights are
    positive, so the float mode carries no cancellation.
    """
    start = params.n - params.k
    dist: dict[int, object]
    if exact:
        dist = {start: Fraction(1)}
    else:
        dist = {start: 1.0}
    tm = params.N - params.M
    for spin_down, count in ((False, params.K), (True, params.l)):
        for _ in range(count):
            nxt: dict[int, object] = {}
            for tj, w in dist.items():
                den = 2 * (tj + 1)
                up = (tj - tm + 2) if spin_down else (tj + tm + 2)
                down = (tj + tm) if spin_down else (tj - tm)
                if up:
                    weight = w * Fraction(up, den) if exact else w * (up / den)
                    nxt[tj + 1] = nxt.get(tj + 1, 0) + weight
                if down and tj:
                    weight = w * Fraction(down, den) if exact else w * (down / den)
                    nxt[tj - 1] = nxt.get(tj - 1, 0) + weight
            dist = nxt
            tm += -1 if spin_down else 1

    if exact:
        masses = {(params.n - tj) // 2: w for tj, w in dist.items() if w}
        return ExactPMF(params=params, masses=masses)
    floats = {(params.n - tj) // 2: w for tj, w in dist.items() if w}
    return ExactPMF(params=params, floats=floats)


def pmf_symmetry_pair(params: Params) -> tuple[ExactPMF, ExactPMF]:
    """The distribution together with the one for the 0 <-> 1 flipped tuple."""
    return pmf(params), pmf(flipped_params(params))


# ---------------------------------------------------------------------------
# averaged state
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralBlock:
    x: int
    eigenvalue: object  # Fraction or float
    multiplicity: int


@dataclass(frozen=True)
class AvgSpectrum:
    """Spectrum of the permutation-averaged state: one flat block per x."""

    blocks: tuple[SpectralBlock, ...]

    def total(self):
        return sum(b.eigenvalue * b.multiplicity for b in self.blocks)

    def eigenvalues_with_multiplicity(self) -> list[tuple[float, int]]:
        return [(float(b.eigenvalue), b.multiplicity) for b in self.blocks]


def avg_spectrum(params: Params, dist: ExactPMF | None = None) -> AvgSpectrum:
    """Blocks (x, p(x)/dim, dim) of the averaged state, for p(x) > 0."""
    dist = default_pmf(params) if dist is None else dist
    blocks = []
    for x in sorted(dist.floats):
        dim = dim_irrep(params.n, x)
        eig = dist.frac(x) / dim if dist.exact else dist.prob(x) / dim
        blocks.append(SpectralBlock(x, eig, dim))
    spec = AvgSpectrum(tuple(blocks))
    if dist.exact and spec.total() != 1:
        raise InvariantError("averaged spectrum does not sum to 1")
    return spec


def default_pmf(params: Params) -> ExactPMF:
    """Route to a distribution: closed form for admissible k = l, exact
    coupling at desk scale, float chain beyond."""
    if params.k == params.l and 2 * params.m <= params.n:
        return pmf_closed_kl(params)
    if params.n <= DEFAULT_EXACT_MAX_N:
        return pmf(params)
    return pmf_chain(params, exact=False)


def avg_entropy(params: Params, base: float = E, dist: ExactPMF | None = None) -> float:
    """Von Neumann entropy of the averaged state.

    S = sum_x p(x) (log dim(x) - log p(x)), computed from the exact masses
    when available.
    """
    dist = default_pmf(params) if dist is None else dist
    acc = 0.0
    for x in dist.floats:
        p_f = dist.prob(x)
        if p_f <= 0.0:
            continue
        log_dim = math.log(dim_irrep(params.n, x)) if x else 0.0
        log_p = log_fraction(dist.frac(x)) if dist.exact else math.log(p_f)
        acc += p_f * (log_dim - log_p)
    return acc if base == E else acc / math.log(base)


def avg_entropy_threshold(params: Params, eps: float, base: float = E,
                          dist: ExactPMF | None = None) -> SpectralThreshold:
    """eps-threshold entropy of the averaged state over its finite level set.

    max{lam : P[{x : log dim(x) - log p(x) <= lam}] <= eps}; on a discrete
    spectrum the supremum is reported at the first level where the cdf
    exceeds eps, flagged as an open endpoint.
    """
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps}")
    dist = default_pmf(params) if dist is None else dist
    levels = []
    for x in dist.floats:
        p_f = dist.prob(x)
        if p_f <= 0.0:
            continue
        log_dim = math.log(dim_irrep(params.n, x)) if x else 0.0
        log_p = log_fraction(dist.frac(x)) if dist.exact else math.log(p_f)
        levels.append((log_dim - log_p, p_f))
    value, flag = threshold_scan(levels, eps)
    scale = 1.0 if base == E else 1.0 / math.log(base)
    return SpectralThreshold(value * scale, flag)


def pmf_quantile(dist: ExactPMF, eps: float) -> int:
    """Smallest x in the support with cdf(x) >= eps."""
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps}")
    if dist.exact:
        target = Fraction(eps)
        running = Fraction(0)
        for x, p in dist.masses.items():
            running += p
            if running >= target:
                return x
    else:
        running = 0.0
        for x, p in dist.floats.items():
            running += p
            if running >= eps:
                return x
    return dist.x_max
