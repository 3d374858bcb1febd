"""Exact and floating-point numeric kernel.

Big-integer binomials with a log-gamma fallback, the binary entropy family,
standard Gaussian cdf/quantile, and a signed log-scale value type.  Everything
here is a pure function of its arguments; log bases are explicit, natural log
by default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from scipy.special import ndtri

from .errors import DomainError

E = math.e

#: crossover from big-integer log binomials to the log-gamma path
EXACT_LOG_BINOMIAL_MAX_N = 300

def binomial_exact(n: int, r: int) -> int:
    """C(n, r) as an exact integer, 0 whenever r is outside [0, n]."""
    if n < 0:
        raise DomainError(f"binomial_exact requires n >= 0, got n={n}")
    if r < 0 or r > n:
        return 0
    return math.comb(n, r)


def log_binomial(n: int, r: int, base: float = E, exact: bool | None = None) -> float:
    """log C(n, r) in the given base.

    The exact path takes the log of the big-integer binomial; the float path
    uses log-gamma.  ``exact=None`` selects the exact path for
    n <= EXACT_LOG_BINOMIAL_MAX_N; both paths stay available for cross-checks.
    """
    if n < 0 or r < 0 or r > n:
        raise DomainError(f"log_binomial requires 0 <= r <= n, got n={n}, r={r}")
    if exact is None:
        exact = n <= EXACT_LOG_BINOMIAL_MAX_N
    if exact:
        val = math.log(math.comb(n, r))
    else:
        val = math.lgamma(n + 1) - math.lgamma(r + 1) - math.lgamma(n - r + 1)
    return val if base == E else val / math.log(base)


def binary_entropy_family(t: float, order: int = 0, base: float = E) -> float:
    """h(t), h'(t) or h''(t) in the given base.

    h(0) = h(1) = 0 by the 0*log(0) = 0 convention.  The derivatives have
    poles at t in {0, 1} and raise a DomainError there.
    """
    if order not in (0, 1, 2):
        raise DomainError(f"order must be 0, 1 or 2, got {order}")
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"binary entropy requires t in [0, 1], got {t}")
    scale = 1.0 if base == E else 1.0 / math.log(base)
    if order == 0:
        if t == 0.0 or t == 1.0:
            return 0.0
        return (-t * math.log(t) - (1.0 - t) * math.log1p(-t)) * scale
    if t == 0.0 or t == 1.0:
        raise DomainError(f"h^({order}) has a pole at t={t}")
    if order == 1:
        return (math.log1p(-t) - math.log(t)) * scale
    return -1.0 / (t * (1.0 - t)) * scale


def binary_entropy(t: float, base: float = E) -> float:
    """The binary entropy h(t)."""
    return binary_entropy_family(t, 0, base)


def gaussian_cdf(t: float) -> float:
    """Standard Gaussian cdf."""
    return 0.5 * math.erfc(-t / math.sqrt(2.0))


def gaussian_quantile(p: float) -> float:
    """Inverse of the standard Gaussian cdf on (0, 1)."""
    if not 0.0 < p < 1.0:
        raise DomainError(f"gaussian_quantile requires 0 < p < 1, got {p}")
    return float(ndtri(p))


def log_fraction(q: Fraction, base: float = E) -> float:
    """log of a positive rational; exact-integer logs, safe for huge terms."""
    if q <= 0:
        raise DomainError(f"log_fraction requires a positive rational, got {q}")
    val = math.log(q.numerator) - math.log(q.denominator)
    return val if base == E else val / math.log(base)


@dataclass(frozen=True)
class LogValue:
    """A real number stored as (log|x|, sign).

    Stable carrier for products of huge binomial ratios.  ``value`` is on the
    natural-log scale and is ignored when ``sign == 0``.  Round-tripping
    through to_float is limited by the double-precision log, i.e. exact to
    about |log x| * eps/2 in relative terms.
    """

    value: float
    sign: int

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise DomainError(f"sign must be -1, 0 or +1, got {self.sign}")

    @classmethod
    def from_float(cls, x: float) -> "LogValue":
        if x == 0.0:
            return cls(0.0, 0)
        return cls(math.log(abs(x)), 1 if x > 0 else -1)

    @classmethod
    def from_log(cls, value: float, sign: int = 1) -> "LogValue":
        return cls(value, sign)

    def to_float(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.value)

    def __mul__(self, other: "LogValue") -> "LogValue":
        if self.sign == 0 or other.sign == 0:
            return LogValue(0.0, 0)
        return LogValue(self.value + other.value, self.sign * other.sign)

    def __truediv__(self, other: "LogValue") -> "LogValue":
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero LogValue")
        if self.sign == 0:
            return LogValue(0.0, 0)
        return LogValue(self.value - other.value, self.sign * other.sign)
