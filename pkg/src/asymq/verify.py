"""Named verification suites: each runs a batch of invariant checks.

The suites back the CLI ``verify`` command and are reused by the test suite.
Each returns a list of CheckResult rows; a suite passes iff every row does.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from . import activation as act
from . import asymptotics as asy
from . import infospec as isp
from . import oracle as orc
from . import schur_weyl as sw
from .numeric import binary_entropy_family, log_binomial


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def iter_params(max_n: int, min_n: int = 0) -> Iterator[sw.Params]:
    """All admissible tuples with min_n <= n <= max_n."""
    for n in range(min_n, max_n + 1):
        for m in range(n + 1):
            for k in range(n + 1):
                for l in range(max(0, m + k - n), min(m, k) + 1):
                    yield sw.Params(n, m, k, l)


def count_params(max_n: int) -> int:
    """Closed-form count of admissible tuples with n <= max_n."""
    return sum((n + 1) * (n * (n - 1) + 6 * (n + 1)) // 6 for n in range(max_n + 1))


# ---------------------------------------------------------------------------
# exhaustive coherent-vs-decohered sweep via a shared coupling grid
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepResult:
    count: int
    min_gap: float
    max_mixed_branch_err: float


def coherent_vs_decohered_sweep(max_n: int, mixed_branch_max_n: int | None = None) -> SweepResult:
    """Entropy minus decohered asymmetry over every tuple with n <= max_n.

    Tuples sharing a Dicke core (P qubits, M ones) form a grid indexed by the
    number of appended zeros and ones; one coupling step extends a cell to its
    neighbor, so the exhaustive sweep costs one step per tuple.  Also records,
    on the branches where the Dicke block is a pure bit string (M = 0 or
    M = P, n <= mixed_branch_max_n), the error of the identity
    entropy = log C(n, m).
    """
    if mixed_branch_max_n is None:
        mixed_branch_max_n = max_n
    lb = [[log_binomial(n, r) for r in range(n + 1)] for n in range(max_n + 1)]
    ldim = [[math.log(sw.dim_irrep(n, x)) for x in range(n // 2 + 1)] for n in range(max_n + 1)]
    tjs = np.arange(max_n + 2, dtype=float)
    half_inv = 1.0 / (2.0 * (tjs + 1.0))

    def step(vec: np.ndarray, tm: int, spin_down: bool) -> np.ndarray:
        sign = -1.0 if spin_down else 1.0
        up = (tjs + sign * tm + 2.0) * half_inv
        down = (tjs - sign * tm) * half_inv
        out = np.zeros_like(vec)
        out[1:] += (vec * up)[:-1]
        out[:-1] += (vec * down)[1:]
        return out

    def cell_stats(vec: np.ndarray, n: int, m: int, core_p: int, core_m: int) -> tuple[float, float]:
        active = vec > 0.0
        p = vec[active]
        tj_here = np.nonzero(active)[0]
        xs = (n - tj_here) // 2
        dims = np.array([ldim[n][x] for x in xs])
        entropy = float(np.sum(p * (dims - np.log(p))))
        dec = lb[n][m] - lb[core_p][core_m]
        return entropy, dec

    count = 0
    min_gap = math.inf
    max_mixed_err = 0.0
    for core_p in range(max_n + 1):
        for core_m in range(core_p + 1):
            mixed_branch = core_m == 0 or core_m == core_p
            col = np.zeros(max_n + 2)
            col[core_p] = 1.0
            tm0 = core_p - 2 * core_m
            for b in range(max_n - core_p + 1):
                if b > 0:
                    col = step(col, tm0 - (b - 1), spin_down=True)
                vec = col
                for a in range(max_n - core_p - b + 1):
                    if a > 0:
                        vec = step(vec, tm0 - b + (a - 1), spin_down=False)
                    n = core_p + a + b
                    m = core_m + b
                    entropy, dec = cell_stats(vec, n, m, core_p, core_m)
                    count += 1
                    min_gap = min(min_gap, entropy - dec)
                    if mixed_branch and n <= mixed_branch_max_n:
                        max_mixed_err = max(max_mixed_err, abs(entropy - lb[n][m]))
    return SweepResult(count, min_gap, max_mixed_err)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def suite_pmf_oracle(max_n: int = 10) -> list[CheckResult]:
    worst = 0.0
    count = 0
    for params in iter_params(max_n):
        exact = sw.pmf(params)
        brute = orc.pmf_oracle(params)
        count += 1
        if exact.masses != brute.masses:
            xs = set(exact.floats) | set(brute.floats)
            worst = max(worst, max(abs(exact.prob(x) - brute.prob(x)) for x in xs))
    return [CheckResult(f"coupling pmf equals dense projector oracle on all {count} tuples, n <= {max_n}",
                        worst <= 1e-10, f"worst deviation {worst:.3g}")]


def suite_type1() -> list[CheckResult]:
    results = []
    rng = np.random.default_rng(7)
    ok = True
    for _ in range(50):
        k = int(rng.integers(0, 7))
        l = int(rng.integers(0, k + 1))
        xi = float(rng.uniform())
        r = asy.TypeIRatios(xi, k, l)
        q = asy.type1_q_pmf(r)
        mean = float(np.dot(np.arange(len(q)), q))
        ok &= abs(q.sum() - 1.0) < 1e-12 and abs(mean - asy.type1_expectation(r)) < 1e-12
    results.append(CheckResult("limit pmf normalizes and matches the expectation formula", ok))

    r = asy.TypeIRatios(0.5, 2, 1)
    q = asy.type1_q_pmf(r)
    scaled = []
    for n in (100, 200, 400, 800, 1600, 3200):
        dist = sw.pmf(asy.slice_params(n, 0.5, 2, 1))
        sup = max(abs(dist.prob(x) - q[x]) for x in range(3))
        scaled.append(n * sup)
    ratios = [scaled[i + 1] / scaled[i] for i in range(len(scaled) - 1)]
    results.append(CheckResult("O(1/n) convergence rate: n * sup|p - q| has bounded ratios",
                               all(0.3 <= rr <= 3.0 for rr in ratios),
                               "n*sup = " + ", ".join(f"{v:.3f}" for v in scaled)))

    limit = asy.decohered_type1_limit(r)
    errs = []
    for n in (100, 200, 400, 800, 1600, 3200, 6400):
        exact = asy.decohered_asymmetry(asy.slice_params(n, 0.5, 2, 1))
        errs.append(abs(exact - limit))
    results.append(CheckResult("decohered Type I limit: |exact - formula| decreases to 0",
                               all(b < a for a, b in zip(errs, errs[1:])) and errs[-1] < 1e-3,
                               f"final error {errs[-1]:.2e}"))
    return results


def suite_type2() -> list[CheckResult]:
    results = []
    rng = np.random.default_rng(11)
    ok = True
    for _ in range(200):
        xi = float(rng.uniform(0.05, 0.95))
        beta = float(rng.uniform(0.0, xi))
        delta = float(rng.uniform(0.0, 1.0 - xi))
        p = asy.type2_params(beta, delta, xi)
        ok &= abs(p.mu + p.nu - 1.0) < 1e-12 and p.mu <= 0.5 + 1e-12 <= p.nu + 2e-12
        ok &= abs(p.alpha + p.beta + p.gamma + p.delta - 1.0) < 1e-12
    results.append(CheckResult("mu + nu = 1, mu <= 1/2 <= nu, ratios sum to 1", ok))

    slice_pt = asy.type2_params(beta=0.3, delta=0.5, xi=0.5)
    tuples = [sw.Params(n, n // 2, n // 5, n // 5) for n in (500, 1000, 2000)]
    report = asy.clt_check(tuples, slice_pt)
    row = report.rows[-1]
    results.append(CheckResult("CLT at n = 2000 on the k = l slice",
                               row.sup_cdf_dist < 0.05 and row.mean_err < 0.5
                               and row.var_err < 0.01 * slice_pt.sigma2,
                               f"sup = {row.sup_cdf_dist:.4f}, mean_err = {row.mean_err:.3f}, "
                               f"var_err = {row.var_err:.5f}"))

    pt = asy.type2_params(beta=0.25, delta=0.25, xi=0.5)
    n = 4000
    exact = asy.decohered_asymmetry(sw.Params(n, 2000, 2000, 1000))
    approx = asy.decohered_type2_approx(pt, n)
    results.append(CheckResult("decohered Type II approximation at n = 4000",
                               abs(exact - approx) < 0.01, f"|exact - approx| = {abs(exact - approx):.5f}"))

    min_gap = math.inf
    for bi in range(21):
        for di in range(21):
            for xi_i in range(21):
                beta, delta, xi = 0.05 * bi, 0.05 * di, 0.05 * xi_i
                if beta > xi or delta > 1.0 - xi or beta + delta <= 0.0:
                    continue
                min_gap = min(min_gap, asy.entropy_rate_gap(asy.type2_params(beta, delta, xi)))
    results.append(CheckResult("rate gap >= 0 on the 0.05-step ratio grid",
                               min_gap >= -1e-12, f"min gap {min_gap:.3e}"))

    sweep = coherent_vs_decohered_sweep(24, mixed_branch_max_n=24)
    results.append(CheckResult(f"entropy >= decohered asymmetry on all {sweep.count} tuples, n <= 24",
                               sweep.min_gap >= -1e-9, f"min gap {sweep.min_gap:.3e}"))
    results.append(CheckResult("pure-bit-string branch: entropy = log C(n, m), n <= 24",
                               sweep.max_mixed_branch_err <= 1e-8,
                               f"max error {sweep.max_mixed_branch_err:.3e}"))
    return results


def suite_refined() -> list[CheckResult]:
    results = []
    rng = np.random.default_rng(13)
    worst = 0.0
    for _ in range(1000):
        xi = float(rng.uniform(1e-3, 0.5))
        alpha = float(rng.uniform(1e-6, xi * (1.0 - 1e-6)))
        p = asy.type2_params(beta=xi - alpha, delta=1.0 - xi, xi=xi)
        const = asy.type2_refined_constants(p)
        worst = max(worst, abs(const.c1 - binary_entropy_family(p.mu)))
    results.append(CheckResult("leading constant equals h(mu) on 1000 random slice points",
                               worst < 1e-12, f"max |c1 - h(mu)| = {worst:.2e}"))

    p = asy.type2_params(beta=0.3, delta=0.5, xi=0.5)
    errs = []
    for n in (500, 1000, 2000, 4000):
        dist = sw.pmf_closed_kl(sw.Params(n, n // 2, n // 5, n // 5))
        s_exact = sw.avg_entropy(sw.Params(n, n // 2, n // 5, n // 5), dist=dist)
        errs.append(abs(s_exact - asy.type2_refined_entropy(p, n)))
    results.append(CheckResult("refined expansion error decreases and ends below 0.05",
                               all(b < a for a, b in zip(errs, errs[1:])) and errs[-1] < 0.05,
                               "errors " + ", ".join(f"{e:.4f}" for e in errs)))

    # Taylor cross-check of the level-function coefficients at z = 0.  The
    # first/second z-derivatives are exactly c3 + c5/n and 2(c4/n + c6/n^2),
    # so two n values separate each pair; small steps keep the
    # finite-difference truncation (O(h^2/n^2)) below the solve amplification.
    const = asy.type2_refined_constants(p)
    na, nb, h1, h2 = 10**3, 10**4, 1e-2, 5e-2
    d1, d2, c2_err = {}, {}, 0.0
    for n in (na, nb):
        f0 = asy.type2_level_function(p, n, 0.0)
        d1[n] = (asy.type2_level_function(p, n, h1) - asy.type2_level_function(p, n, -h1)) / (2.0 * h1)
        d2[n] = (asy.type2_level_function(p, n, h2) - 2.0 * f0
                 + asy.type2_level_function(p, n, -h2)) / h2**2
        c2_err = max(c2_err, abs((f0 - n * const.c1) - const.c2))
    c3_est, c5_est = np.linalg.solve([[1.0, 1.0 / na], [1.0, 1.0 / nb]], [d1[na], d1[nb]])
    c4_est, c6_est = np.linalg.solve([[1.0 / na, 1.0 / na**2], [1.0 / nb, 1.0 / nb**2]],
                                     [d2[na] / 2.0, d2[nb] / 2.0])
    ok = (c2_err < 1e-8 and abs(c3_est - const.c3) < 1e-6 and abs(c4_est - const.c4) < 1e-5
          and abs(c5_est - const.c5) < 1e-3 and abs(c6_est - const.c6) < 1e-2)
    results.append(CheckResult("level-function Taylor coefficients match c2..c6", ok,
                               f"errors: c2 {c2_err:.1e}, c3 {abs(c3_est - const.c3):.1e}, "
                               f"c4 {abs(c4_est - const.c4):.1e}, c5 {abs(c5_est - const.c5):.1e}, "
                               f"c6 {abs(c6_est - const.c6):.1e}"))
    return results


def suite_infospec() -> list[CheckResult]:
    results = []
    rng = np.random.default_rng(17)
    bad = 0
    for _ in range(100):
        p = rng.dirichlet(np.ones(4))
        q = rng.dirichlet(np.ones(4))
        rho = isp.DensityMatrix.diagonal(p)
        sigma = isp.DensityMatrix.diagonal(q)
        eps = float(rng.uniform(0.05, 0.6))
        delta = float(rng.uniform(0.05, 1.0 - eps - 0.05))
        if not isp.divergence_chain_check(rho, sigma, eps, delta).holds:
            bad += 1
    results.append(CheckResult("divergence chain holds on 100 random commuting 4-dim pairs",
                               bad == 0, f"{bad} failures"))

    worst = 0.0
    from scipy.optimize import linprog
    for _ in range(50):
        dim = int(rng.integers(2, 4))
        p = rng.dirichlet(np.ones(dim))
        q = rng.dirichlet(np.ones(dim))
        eps = float(rng.uniform(0.05, 0.8))
        val = isp.hypothesis_testing_divergence(isp.DensityMatrix.diagonal(p),
                                                isp.DensityMatrix.diagonal(q), eps)
        res = linprog(c=q, A_ub=[-p], b_ub=[-(1.0 - eps)], bounds=[(0, 1)] * dim, method="highs")
        worst = max(worst, abs(val - (-math.log(res.fun))))
    results.append(CheckResult("Neyman-Pearson value matches the LP oracle on commuting pairs",
                               worst < 1e-6, f"worst deviation {worst:.2e}"))

    lo, hi = isp.distinguishable_count_bounds_from_spectrum([(1.0 / 6, 6)], 0.5, 0.1, 0.1)
    target = math.log(6)
    results.append(CheckResult("flat orbit: one-shot bounds equal log w -+ exact slack",
                               abs(lo - (target - math.log(100))) < 1e-12
                               and abs(hi - (target + math.log(1000))) < 1e-12,
                               f"[{lo:.4f}, {hi:.4f}] around {target:.4f}"))
    return results


def suite_activation() -> list[CheckResult]:
    results = []
    for n in range(1, 21):
        for d in range(n, 61):
            act.antisym_activation(n, d)  # internal 1e-10 cross-check of the two forms
    results.append(CheckResult("antisymmetric activation: sum form equals binomial form (n <= 20, d <= 60)", True))

    ok = all(act.antisym_optimal_d(n)[0] == n for n in range(1, 11))
    results.append(CheckResult("activation maximum sits at d = n for n in 1..10", ok))

    ratios = [act.antisym_activation(n, n) / (n * math.log(n)) for n in (10, 40, 160, 640)]
    results.append(CheckResult("peak activation over n log n decreases toward 1",
                               all(b < a for a, b in zip(ratios, ratios[1:])) and ratios[-1] < 1.2,
                               "ratios " + ", ".join(f"{r:.3f}" for r in ratios)))

    bad = 0
    for params in iter_params(12):
        dist = sw.pmf_chain(params)
        coh = act.permutation_activation(params, coherent=True, dist=dist).activation
        dec = act.permutation_activation(params, coherent=False).activation
        if coh < dec - 1e-9:
            bad += 1
    results.append(CheckResult("coherent activation >= decohered activation on all tuples, n <= 12",
                               bad == 0, f"{bad} failures"))
    return results


SUITES: dict[str, Callable[[], list[CheckResult]]] = {
    "pmf-oracle": suite_pmf_oracle,
    "typeI": suite_type1,
    "typeII": suite_type2,
    "refined": suite_refined,
    "infospec": suite_infospec,
    "activation": suite_activation,
}


def run_suite(name: str) -> list[CheckResult]:
    """Run one named suite, or all of them."""
    if name == "all":
        out: list[CheckResult] = []
        for suite_name in SUITES:
            out.extend(run_suite(suite_name))
        return out
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name]()
