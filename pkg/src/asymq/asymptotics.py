"""Type I and Type II limits of the outcome distribution and its entropies.

Type I fixes the attached string (k, l) and the ones ratio xi = m/n; the
distribution converges to a convolution of two binomials and the averaged
entropy grows like u log n.  Type II scales k, l, m linearly with n; a
central-limit regime governed by mu = (1 - sqrt(D))/2 with
D = 4 beta delta + (2 xi - 1)^2.  This module carries the limit laws, the
entropy expansions with their refined constants, the decohered baselines, and
the empirical CLT check used to validate them at finite n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import ConstraintError, DomainError
from .numeric import (E, binary_entropy_family, gaussian_cdf, gaussian_quantile,
                      log_binomial, log_fraction)
from .schur_weyl import Params, avg_entropy, dim_irrep, pmf, pmf_closed_kl

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


def _h(t: float, order: int = 0) -> float:
    return binary_entropy_family(t, order)


# ---------------------------------------------------------------------------
# Type I
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TypeIRatios:
    """Fixed data of the Type I limit: xi = m/n with k, l held constant."""

    xi: float
    k: int
    l: int

    def __post_init__(self):
        if not 0.0 <= self.xi <= 1.0:
            raise ConstraintError("0 <= xi <= 1", f"xi must lie in [0, 1], got {self.xi}")
        if not 0 <= self.l <= self.k:
            raise ConstraintError("0 <= l <= k", f"need 0 <= l <= k, got k={self.k}, l={self.l}")


def _binomial_pmf(p: float, trials: int) -> np.ndarray:
    q = 1.0 - p
    return np.array([math.comb(trials, x) * p**x * q**(trials - x) for x in range(trials + 1)])


def type1_q_pmf(ratios: TypeIRatios) -> np.ndarray:
    """Limit distribution over x in [0, k]: Binomial(xi, k-l) * Binomial(1-xi, l)."""
    return np.convolve(_binomial_pmf(ratios.xi, ratios.k - ratios.l),
                       _binomial_pmf(1.0 - ratios.xi, ratios.l))


def type1_expectation(ratios: TypeIRatios) -> float:
    """Limit of E[X]: (k - l) xi + l (1 - xi)."""
    return (ratios.k - ratios.l) * ratios.xi + ratios.l * (1.0 - ratios.xi)


def type1_entropy_approx(n: int, ratios: TypeIRatios, base: float = E) -> float:
    """Finite-n surrogate for the averaged entropy in the Type I regime.

    u log n + u - log sqrt(2 pi) + sum_x q(x) (-(x + 1/2) log x - log q(x)),
    from the fixed-x Stirling expansion of the block dimensions; the x = 0
    term takes (x + 1/2) log x as 0.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    q = type1_q_pmf(ratios)
    u = type1_expectation(ratios)
    acc = u * math.log(n) + u - _LOG_SQRT_2PI
    for x, qx in enumerate(q):
        if qx <= 0.0:
            continue
        tail = 0.0 if x == 0 else -(x + 0.5) * math.log(x)
        acc += qx * (tail - math.log(qx))
    return acc if base == E else acc / math.log(base)


def type1_log_count(n: int, ratios: TypeIRatios, eps: float, base: float = E) -> float:
    """Leading term of the log distinguishable count: quantile(q, eps) * log n."""
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps}")
    q = type1_q_pmf(ratios)
    running = 0.0
    quantile = len(q) - 1
    for x, qx in enumerate(q):
        running += qx
        if running >= eps:
            quantile = x
            break
    val = quantile * math.log(n)
    return val if base == E else val / math.log(base)


def avg_entropy_type1_substitute(n: int, ratios: TypeIRatios, base: float = E) -> float:
    """Averaged entropy with the limit pmf substituted for the exact one.

    sum_x q(x) (log dim(x) - log q(x)) with exact block dimensions; the
    route of choice beyond the exact-coupling cap, accurate to O(1/n).
    """
    q = type1_q_pmf(ratios)
    acc = 0.0
    for x, qx in enumerate(q):
        if qx <= 0.0:
            continue
        acc += qx * (math.log(dim_irrep(n, x)) if x else 0.0) - qx * math.log(qx)
    return acc if base == E else acc / math.log(base)


# ---------------------------------------------------------------------------
# Type II
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TypeIIParams:
    """Fixed ratios and limit quantities of the Type II regime.

    alpha = l/n, beta = (m-l)/n, gamma = (k-l)/n, delta = (n-m-k+l)/n sum to
    one; xi = alpha + beta and kappa = alpha + gamma.  d is the discriminant
    4 beta delta + (2 xi - 1)^2, mu/nu the limit points (1 -+ sqrt(d))/2.
    sigma2 and phi are None on the degenerate branches where they are
    undefined (d = 0, mu = 1/2).
    """

    alpha: float
    beta: float
    gamma: float
    delta: float
    xi: float
    kappa: float
    d: float
    mu: float
    nu: float
    sigma2: float | None
    phi: float | None

    @property
    def clt_assumption(self) -> bool:
        """True off the degenerate branches: alpha + gamma > 0, beta > 0, delta > 0."""
        return self.alpha + self.gamma > 0.0 and self.beta > 0.0 and self.delta > 0.0


def type2_params(beta: float, delta: float, xi: float) -> TypeIIParams:
    """Fill all Type II ratios and limit quantities from (beta, delta, xi)."""
    if beta < 0 or delta < 0:
        raise ConstraintError("beta, delta >= 0", f"got beta={beta}, delta={delta}")
    if xi < beta:
        raise ConstraintError("xi >= beta", f"alpha = xi - beta must be >= 0, got xi={xi}, beta={beta}")
    if 1.0 - xi < delta:
        raise ConstraintError("1 - xi >= delta", f"gamma = 1 - xi - delta must be >= 0, got xi={xi}, delta={delta}")
    alpha = xi - beta
    gamma = 1.0 - xi - delta
    d = 4.0 * beta * delta + (2.0 * xi - 1.0) ** 2
    root = math.sqrt(d)
    mu = (1.0 - root) / 2.0
    nu = (1.0 + root) / 2.0
    sigma2 = (1.0 - beta - delta) * beta * delta / d if d > 0.0 else None
    phi = None
    if sigma2 is not None and abs(1.0 - 2.0 * mu) > 1e-15:
        phi = (sigma2 - mu) / (1.0 - 2.0 * mu)
    return TypeIIParams(alpha=alpha, beta=beta, gamma=gamma, delta=delta, xi=xi,
                        kappa=alpha + gamma, d=d, mu=mu, nu=nu, sigma2=sigma2, phi=phi)


def product_slice(xi: float, kappa: float) -> TypeIIParams:
    """The two-parameter slice with factorizing ratios.

    alpha = xi kappa, beta = xi (1 - kappa), gamma = (1 - xi) kappa,
    delta = (1 - xi)(1 - kappa); there the decohered rate collapses to
    kappa h(xi).
    """
    if not (0.0 <= xi <= 1.0 and 0.0 <= kappa <= 1.0):
        raise DomainError(f"xi and kappa must lie in [0, 1], got xi={xi}, kappa={kappa}")
    return type2_params(beta=xi * (1.0 - kappa), delta=(1.0 - xi) * (1.0 - kappa), xi=xi)


def type2_entropy_leading(p: TypeIIParams, n: int, base: float = E) -> float:
    """Leading entropy n h(mu); meaningful under p.clt_assumption.

    On the degenerate branches (beta delta = 0 or alpha + gamma = 0) the
    averaged entropy is log C(n, m) or 0 instead; check p.clt_assumption.
    """
    return n * binary_entropy_family(p.mu, 0, base)


@dataclass(frozen=True)
class RefinedConstants:
    """Expansion constants of the averaged entropy on the gamma = 0 slice.

    S = n c1 + c2 + c3 phi + c4 sigma2 + o(1) with c1 = h(mu); c5 and c6 are
    the subleading level-function coefficients (z/n and z^2/n^2 terms).
    c0 collects c2 + c3 phi + c4 sigma2.
    """

    c1: float
    c2: float
    c3: float
    c4: float
    c5: float
    c6: float
    c0: float


def type2_refined_constants(p: TypeIIParams, base: float = E) -> RefinedConstants:
    """Refined expansion constants; requires gamma = 0, 0 < xi <= 1/2, alpha beta delta > 0.

    Derived by expanding the exact level function (see type2_level_function)
    around z = 0; the constant and subleading coefficients use
    (alpha - mu)(1 - alpha - mu) = alpha (xi - alpha) and
    (xi - mu)(1 - xi - mu) = (1 - xi)(xi - alpha), consequences of
    mu (1 - mu) = alpha (1 - xi).
    """
    if abs(p.gamma) > 1e-12:
        raise ConstraintError("gamma == 0", f"refined constants need gamma = 0, got {p.gamma}")
    if not 0.0 < p.xi <= 0.5:
        raise ConstraintError("0 < xi <= 1/2", f"got xi={p.xi}")
    if not (p.alpha > 0 and p.beta > 0 and p.delta > 0):
        raise ConstraintError("alpha * beta * delta > 0",
                              f"got alpha={p.alpha}, beta={p.beta}, delta={p.delta}")
    alpha, beta, xi, mu = p.alpha, p.beta, p.xi, p.mu
    r1 = mu / xi
    r2 = mu / alpha
    rest = 1.0 - alpha - mu
    r3 = beta / rest
    c1 = _h(xi) + xi * _h(r1) - alpha * _h(r2) - rest * _h(r3)
    c2 = 1.5 * math.log(beta) - math.log(xi - mu) - math.log(rest)
    c3 = _h(r1, 1) - _h(r2, 1) + _h(r3) - r3 * _h(r3, 1)
    c4 = (_h(r1, 2) / (2.0 * xi) - _h(r2, 2) / (2.0 * alpha)
          - beta**2 * _h(r3, 2) / (2.0 * rest**3))
    c5 = (0.5 * (1.0 / (xi - mu) - 1.0 / (alpha - mu))
          - 0.5 * beta / (rest * (rest - beta)))
    c6 = 0.25 * (1.0 / (xi - mu) ** 2 - 1.0 / (alpha - mu) ** 2
                 + 1.0 / rest**2 - 1.0 / (rest - beta) ** 2)
    c0 = c2 + c3 * p.phi + c4 * p.sigma2
    scale = 1.0 if base == E else 1.0 / math.log(base)
    return RefinedConstants(*(c * scale for c in (c1, c2, c3, c4, c5, c6, c0)))


def type2_refined_entropy(p: TypeIIParams, n: int, base: float = E) -> float:
    """Refined entropy prediction n h(mu) + c2 + c3 phi + c4 sigma2."""
    const = type2_refined_constants(p, base)
    return n * binary_entropy_family(p.mu, 0, base) + const.c0


def type2_level_function(p: TypeIIParams, n: int, z: float) -> float:
    """log dim(x) - log p(x) on the gamma = 0 slice as a smooth function of z = x - n mu.

    The k = l closed form collapses the level to
    log [C(n,m) C(m,x) / (C(l,x) C(n-l-x, m-l))]; expanding each binomial as
    a h(b/a) - (1/2) log a - (1/2) log(2 pi (b/a)(1 - b/a)) + o(1) gives this
    smooth surrogate.  Its Taylor coefficients at z = 0 are the refined
    constants.  Natural log scale.
    """
    alpha, beta, xi, mu = p.alpha, p.beta, p.xi, p.mu
    t1 = mu / xi + z / (n * xi)        # x / m
    t2 = mu / alpha + z / (n * alpha)  # x / l
    rest = 1.0 - alpha - mu - z / n    # (n - l - x) / n
    t3 = beta / rest
    return (n * _h(xi)
            + n * xi * _h(t1)
            - n * alpha * _h(t2)
            - n * rest * _h(t3)
            + 0.5 * math.log(alpha * rest / xi)
            - 0.5 * math.log(xi * (1.0 - xi))
            - 0.5 * math.log(t1 * (1.0 - t1))
            + 0.5 * math.log(t2 * (1.0 - t2))
            + 0.5 * math.log(t3 * (1.0 - t3)))


def type2_log_count(p: TypeIIParams, n: int, eps: float, base: float = E) -> float:
    """Log distinguishable count n h(mu) + sqrt(n) sigma h'(mu) Phi^-1(eps).

    The eps-quantile of the outcome sits at n mu + sqrt(n) sigma Phi^-1(eps)
    by the CLT, and the threshold entropy is the level function there.
    """
    if not p.clt_assumption:
        raise ConstraintError("alpha + gamma > 0, beta > 0, delta > 0",
                              "type2_log_count needs the nondegenerate branch")
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps must lie in (0, 1), got {eps}")
    sigma = math.sqrt(p.sigma2)
    val = n * _h(p.mu) + math.sqrt(n) * sigma * _h(p.mu, 1) * gaussian_quantile(eps)
    return val if base == E else val / math.log(base)


# ---------------------------------------------------------------------------
# decohered baselines
# ---------------------------------------------------------------------------


def decohered_asymmetry(params: Params, base: float = E) -> float:
    """Asymmetry of the decohered state: log C(n, m) - log C(n-k, m-l)."""
    return (log_binomial(params.n, params.m, base)
            - log_binomial(params.n - params.k, params.m - params.l, base))


def decohered_type1_limit(ratios: TypeIRatios, base: float = E) -> float:
    """Type I limit of the decohered asymmetry: k h(xi) - h'(xi)(xi k - l)."""
    val = ratios.k * _h(ratios.xi) - _h(ratios.xi, 1) * (ratios.xi * ratios.k - ratios.l)
    return val if base == E else val / math.log(base)


def decohered_type2_approx(p: TypeIIParams, n: int, base: float = E) -> float:
    """Type II decohered asymmetry including its constant terms.

    n (h(xi) - (beta+delta) h(beta/(beta+delta))) + (1/2) log(beta+delta)
    - (1/2) log(2 pi xi (1-xi)) + (1/2) log(2 pi r (1-r)), r = beta/(beta+delta).
    """
    s = p.beta + p.delta
    if s <= 0:
        raise ConstraintError("beta + delta > 0", "decohered approximation needs beta + delta > 0")
    r = p.beta / s
    if not (0.0 < p.xi < 1.0 and 0.0 < r < 1.0):
        raise DomainError("constant terms need 0 < xi < 1 and 0 < beta/(beta+delta) < 1")
    val = (n * (_h(p.xi) - s * _h(r))
           + 0.5 * math.log(s)
           - 0.5 * math.log(2.0 * math.pi * p.xi * (1.0 - p.xi))
           + 0.5 * math.log(2.0 * math.pi * r * (1.0 - r)))
    return val if base == E else val / math.log(base)


def entropy_rate_gap(p: TypeIIParams, base: float = E) -> float:
    """Rate advantage of the coherent state: h(mu) - [h(xi) - (beta+delta) h(beta/(beta+delta))].

    Nonnegative on the whole admissible region.
    """
    s = p.beta + p.delta
    if s <= 0:
        raise ConstraintError("beta + delta > 0", "rate gap needs beta + delta > 0")
    val = _h(p.mu) - (_h(p.xi) - s * _h(p.beta / s))
    return val if base == E else val / math.log(base)


# ---------------------------------------------------------------------------
# empirical CLT check
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CltRow:
    n: int
    sup_cdf_dist: float
    mean_err: float
    var_err: float
    tail_mass: float
    tail_log_slope: float | None


@dataclass(frozen=True)
class CltReport:
    limit: TypeIIParams
    tail_eps: float
    rows: tuple[CltRow, ...]


def clt_check(params_list: Sequence[Params], limit: TypeIIParams,
              tail_eps: float = 0.05) -> CltReport:
    """Empirical CLT report on the k = l slice.

    For each tuple: the sup distance between the exact standardized cdf and
    the Gaussian cdf, |mean - (n mu + phi)|, |var/n - sigma2|, and the tail
    mass P[|X/n - mu| >= tail_eps] with its per-step log slope across the
    sequence.
    """
    if not limit.clt_assumption:
        raise ConstraintError("alpha + gamma > 0, beta > 0, delta > 0",
                              "clt_check needs the nondegenerate branch")
    mu, sigma2, phi = limit.mu, limit.sigma2, limit.phi
    sigma = math.sqrt(sigma2)
    rows = []
    prev: tuple[int, float] | None = None
    for params in params_list:
        if params.k != params.l:
            raise ConstraintError("k == l", "clt_check runs on the k = l slice")
        n = params.n
        for ratio, target in ((params.l / n, limit.alpha), (params.m / n, limit.xi)):
            if abs(ratio - target) > 1e-9:
                raise ConstraintError("ratios match limit",
                                      f"tuple {params} is off the ratio point ({limit.alpha}, {limit.xi})")
        dist = pmf_closed_kl(params)
        running = Fraction(0)
        sup = 0.0
        mean = Fraction(0)
        second = Fraction(0)
        tail = Fraction(0)
        for x, p in dist.masses.items():
            running += p
            z = (x - n * mu) / (math.sqrt(n) * sigma)
            sup = max(sup, abs(float(running) - gaussian_cdf(z)))
            mean += x * p
            second += x * x * p
            if abs(x - n * mu) >= tail_eps * n:
                tail += p
        var = second - mean * mean
        mean_err = abs(float(mean) - (n * mu + phi))
        var_err = abs(float(var) / n - sigma2)
        log_tail = log_fraction(tail) if tail > 0 else -math.inf
        slope = None
        if prev is not None:
            slope = (log_tail - prev[1]) / (n - prev[0])
        rows.append(CltRow(n, sup, mean_err, var_err, float(tail), slope))
        prev = (n, log_tail)
    return CltReport(limit, tail_eps, tuple(rows))


# ---------------------------------------------------------------------------
# figure data
# ---------------------------------------------------------------------------


def slice_params(n: int, xi: float, k: int, l: int) -> Params:
    """The tuple (n, xi n, k, l); xi n must be an integer."""
    m = xi * n
    if abs(m - round(m)) > 1e-9:
        raise ConstraintError("xi * n integral", f"xi * n = {m} is not an integer")
    return Params(n, int(round(m)), k, l)


def fig1_rows(n_list: Sequence[int], ratios: TypeIRatios,
              exact_max_n: int = 300) -> list[tuple[int, float, float, float]]:
    """Rows (n, S/log n, a/log n, u) for the Type I entropy convergence plot.

    The entropy column uses the exact distribution up to ``exact_max_n`` and
    the limit-pmf substitution beyond.  Base-free: both columns are ratios.
    """
    if ratios.k == 0 and ratios.l == 0:
        raise ConstraintError("k + l > 0", "the k = l = 0 figure is degenerate")
    u = type1_expectation(ratios)
    rows = []
    for n in n_list:
        params = slice_params(n, ratios.xi, ratios.k, ratios.l)
        if n <= exact_max_n:
            s = avg_entropy(params, dist=pmf(params))
        else:
            s = avg_entropy_type1_substitute(n, ratios)
        a = type1_entropy_approx(n, ratios)
        rows.append((n, s / math.log(n), a / math.log(n), u))
    return rows


def fig2_rows(xi: float, points: int = 201) -> list[tuple[float, float, float]]:
    """Rows (kappa, h(mu), kappa h(xi)) over a kappa grid, base-2 logs."""
    if not 0.0 < xi < 1.0:
        raise DomainError(f"xi must lie in (0, 1), got {xi}")
    if points < 2:
        raise DomainError("need at least two grid points")
    rows = []
    for i in range(points):
        kappa = i / (points - 1)
        p = product_slice(xi, kappa)
        green = binary_entropy_family(p.mu, 0, 2.0)
        blue = kappa * binary_entropy_family(xi, 0, 2.0)
        rows.append((kappa, green, blue))
    return rows
