"""Acceptance gate: one test per criterion, one printed PASS/FAIL line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
lines.  Criterion 13's final clause is asserted at its stated window and is
expected red; the assertion message carries the analysis.
"""

import math
import time

import numpy as np
import pytest

import asymq as aq
from asymq.schur_weyl import Params
from asymq.verify import coherent_vs_decohered_sweep, iter_params


def report(num, ok, msg):
    print(f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'} - {msg}")
    return ok


def test_criterion_01_oracle_equivalence():
    start = time.time()
    count = 0
    for params in iter_params(10):
        count += 1
        exact = aq.pmf(params)        # construction asserts sum = 1 exactly
        brute = aq.pmf_oracle(params)
        assert exact.masses == brute.masses, f"mismatch at {params}"
    elapsed = time.time() - start
    assert report(1, elapsed < 120,
                  f"coupling pmf = dense oracle (exact rational equality, within 1e-10) on all "
                  f"{count} tuples with n <= 10, sum p = 1 exactly; {elapsed:.1f}s < 120s")


def test_criterion_02_closed_form_equivalence():
    start = time.time()
    count = 0
    for params in iter_params(20):
        if params.k != params.l or 2 * params.m > params.n:
            continue
        count += 1
        assert aq.pmf(params).masses == aq.pmf_closed_kl(params).masses, f"mismatch at {params}"
    elapsed = time.time() - start
    assert report(2, elapsed < 60,
                  f"pmf = closed form exactly on all {count} k=l tuples with n <= 20; "
                  f"{elapsed:.1f}s < 60s")


def test_criterion_03_symmetry():
    count = 0
    for params in iter_params(20):
        count += 1
        assert aq.pmf(params).masses == aq.pmf(aq.flipped_params(params)).masses, \
            f"symmetry broken at {params}"
    assert report(3, True, f"0 <-> 1 flip symmetry exact on all {count} tuples with n <= 20")


def test_criterion_04_entropy_oracle():
    worst = 0.0
    count = 0
    for params in iter_params(8):
        count += 1
        worst = max(worst, abs(aq.avg_entropy(params) - aq.entropy_oracle(params)))
    assert report(4, worst < 1e-9,
                  f"averaged entropy = full-permutation oracle on all {count} tuples with "
                  f"n <= 8, worst |diff| = {worst:.2e} < 1e-9")


def test_criterion_05_entropy_growth_figure():
    start = time.time()
    ratios = aq.TypeIRatios(0.5, 2, 1)
    rows = aq.fig1_rows([100, 1000, 10000], ratios)
    s_over = [r[1] for r in rows]
    a_over = [r[2] for r in rows]
    gap = abs(s_over[-1] - a_over[-1])
    ok = (all(b < a for a, b in zip(s_over, s_over[1:]))
          and all(b < a for a, b in zip(a_over, a_over[1:]))
          and all(v > 1.0 for v in s_over)
          and gap < 0.02
          and abs(s_over[-1] - 1.0) < 0.35)
    elapsed = time.time() - start
    assert report(5, ok and elapsed < 300,
                  f"S/log n = {s_over[0]:.4f} > {s_over[1]:.4f} > {s_over[2]:.4f} -> 1, "
                  f"surrogate gap at n=1e4 = {gap:.4f} < 0.02, "
                  f"|S/log n - 1| = {abs(s_over[-1] - 1):.3f} < 0.35; {elapsed:.1f}s < 300s")


def test_criterion_06_type1_rate():
    ratios = aq.TypeIRatios(0.5, 2, 1)
    q = aq.type1_q_pmf(ratios)
    scaled = []
    for n in (100, 200, 400, 800, 1600, 3200):
        dist = aq.pmf(aq.slice_params(n, 0.5, 2, 1))
        scaled.append(n * max(abs(dist.prob(x) - float(q[x])) for x in range(len(q))))
    ratios_seq = [b / a for a, b in zip(scaled, scaled[1:])]
    ok = all(0.3 <= r <= 3.0 for r in ratios_seq)
    assert report(6, ok,
                  "n * sup|p - q| = " + ", ".join(f"{v:.3f}" for v in scaled)
                  + "; successive ratios within [0.3, 3]")


def test_criterion_07_type2_clt():
    start = time.time()
    limit = aq.type2_params(beta=0.3, delta=0.5, xi=0.5)
    tuples = [Params(n, n // 2, n // 5, n // 5) for n in (2000,)]
    row = aq.clt_check(tuples, limit).rows[0]
    ok = (row.sup_cdf_dist < 0.05 and row.mean_err < 0.5
          and row.var_err < 0.01 * limit.sigma2)
    elapsed = time.time() - start
    assert report(7, ok and elapsed < 60,
                  f"n=2000 slice alpha=0.2, xi=0.5: sup|F - Phi| = {row.sup_cdf_dist:.4f} < 0.05, "
                  f"|mean - (n mu + phi)| = {row.mean_err:.4f} < 0.5, "
                  f"|var/n - sigma2| = {row.var_err:.2e} < {0.01 * limit.sigma2:.1e}; "
                  f"{elapsed:.1f}s < 60s")


def test_criterion_08_refined_expansion():
    limit = aq.type2_params(beta=0.3, delta=0.5, xi=0.5)
    errs = []
    for n in (500, 1000, 2000, 4000):
        params = Params(n, n // 2, n // 5, n // 5)
        s = aq.avg_entropy(params, dist=aq.pmf_closed_kl(params))
        errs.append(abs(s - aq.type2_refined_entropy(limit, n)))
    ok = all(b < a for a, b in zip(errs, errs[1:])) and errs[-1] < 0.05
    assert report(8, ok,
                  "refined-expansion errors " + ", ".join(f"{e:.5f}" for e in errs)
                  + " decrease monotonically; final < 0.05")


def test_criterion_09_c1_identity():
    rng = np.random.default_rng(101)
    worst = 0.0
    for _ in range(1000):
        xi = float(rng.uniform(1e-3, 0.5))
        alpha = float(rng.uniform(1e-6, xi * (1 - 1e-9)))
        p = aq.type2_params(beta=xi - alpha, delta=1.0 - xi, xi=xi)
        const = aq.type2_refined_constants(p)
        worst = max(worst, abs(const.c1 - aq.binary_entropy(p.mu)))
    assert report(9, worst < 1e-12,
                  f"1000 random admissible (alpha, xi) with gamma = 0: "
                  f"max |c1 - h(mu)| = {worst:.2e} < 1e-12")


def test_criterion_10_inequalities():
    sweep = coherent_vs_decohered_sweep(40)
    ok_nmt = sweep.min_gap >= -1e-9

    min_gap = math.inf
    for bi in range(21):
        for di in range(21):
            for xe in range(21):
                beta, delta, xi = 0.05 * bi, 0.05 * di, 0.05 * xe
                if beta > xi or delta > 1.0 - xi or beta + delta <= 0.0:
                    continue
                min_gap = min(min_gap, aq.entropy_rate_gap(aq.type2_params(beta, delta, xi)))
    ok_rate = min_gap >= -1e-12

    rows = aq.fig2_rows(0.3, points=200)
    ok_fig2 = (abs(rows[0][1]) < 1e-12 and abs(rows[0][2]) < 1e-12
               and abs(rows[-1][1] - rows[-1][2]) < 1e-12
               and all(green >= blue - 1e-12 for _, green, blue in rows))

    assert report(10, ok_nmt and ok_rate and ok_fig2,
                  f"entropy >= decohered on all {sweep.count} tuples n <= 40 "
                  f"(min gap {sweep.min_gap:.1e}); rate gap >= 0 on the 0.05 grid "
                  f"(min {min_gap:.1e}); 200-point xi=0.3 slice: curves meet at both "
                  f"endpoints, coherent >= decohered everywhere")


def test_criterion_11_decohered_asymptotics():
    limit1 = aq.decohered_type1_limit(aq.TypeIRatios(0.5, 2, 1))
    errs = [abs(aq.decohered_asymmetry(aq.slice_params(n, 0.5, 2, 1)) - limit1)
            for n in (100, 200, 400, 800, 1600, 3200, 6400)]
    ok1 = all(b < a for a, b in zip(errs, errs[1:])) and errs[-1] < 1e-3

    p = aq.type2_params(beta=0.25, delta=0.25, xi=0.5)
    exact = aq.decohered_asymmetry(Params(4000, 2000, 2000, 1000))
    err2 = abs(exact - aq.decohered_type2_approx(p, 4000))
    ok2 = err2 < 0.01
    assert report(11, ok1 and ok2,
                  f"Type I formula error decreasing, final {errs[-1]:.2e}; "
                  f"Type II formula error at n=4000 = {err2:.5f} < 0.01")


def test_criterion_12_info_spectrum():
    rng = np.random.default_rng(103)
    chain_fail = 0
    for _ in range(100):
        rho = aq.DensityMatrix.diagonal(rng.dirichlet(np.ones(4)))
        sigma = aq.DensityMatrix.diagonal(rng.dirichlet(np.ones(4)))
        eps = float(rng.uniform(0.05, 0.6))
        delta = float(rng.uniform(0.05, 1.0 - eps - 0.05))
        if not aq.divergence_chain_check(rho, sigma, eps, delta).holds:
            chain_fail += 1

    from scipy.optimize import linprog
    worst_np = 0.0
    for _ in range(60):
        dim = int(rng.integers(2, 4))
        p = rng.dirichlet(np.ones(dim))
        q = rng.dirichlet(np.ones(dim))
        eps = float(rng.uniform(0.05, 0.85))
        got = aq.hypothesis_testing_divergence(aq.DensityMatrix.diagonal(p),
                                               aq.DensityMatrix.diagonal(q), eps)
        res = linprog(c=q, A_ub=[-p], b_ub=[-(1.0 - eps)], bounds=[(0, 1)] * dim, method="highs")
        worst_np = max(worst_np, abs(got - (-math.log(res.fun))))

    ok_bounds = True
    for v, w in ((1, 6), (2, 6), (1, 4), (3, 12)):
        lo, hi = aq.distinguishable_count_bounds_from_spectrum([(1.0 / w, w)], 0.5, 0.1, 0.1)
        target = aq.orthogonal_orbit_log_count(v, w, 1)
        ok_bounds &= (lo <= hi and lo <= target <= hi
                      and abs(lo - (math.log(w) - math.log(100))) < 1e-12
                      and abs(hi - (math.log(w) + math.log(1000))) < 1e-12)

    ok = chain_fail == 0 and worst_np < 1e-6 and ok_bounds
    assert report(12, ok,
                  f"divergence chain: {chain_fail}/100 failures; Neyman-Pearson vs grid/LP "
                  f"oracle worst dev {worst_np:.2e} < 1e-6; one-shot bounds ordered and "
                  f"bracket log(w/v) with exact slack terms")


def test_criterion_13_antisym_example():
    ok_forms = True
    for n in range(1, 21):
        for d in range(n, 61):
            val = aq.antisym_activation(n, d)  # raises if the two forms differ by > 1e-10
            sum_form = sum(math.log(n + (n - 1) * (j + 1) / (d - j)) for j in range(n))
            ok_forms &= abs(val - sum_form) < 1e-10
    ok_argmax = all(aq.antisym_optimal_d(n)[0] == n for n in range(1, 11))

    ratio = aq.antisym_activation(10, 10) / (10 * math.log(10))
    ok_ratio = 0.8 <= ratio <= 1.3

    report(13, ok_forms and ok_argmax and ok_ratio,
           f"sum form = binomial form (n <= 20, d <= 60): {ok_forms}; argmax at d = n for "
           f"n in 1..10: {ok_argmax}; value/(n log n) = {ratio:.4f} in [0.8, 1.3]: {ok_ratio}")
    assert ok_forms and ok_argmax
    assert ok_ratio, (
        f"value/(n log n) = {ratio:.4f} at (n, d) = (10, 10) lies outside the required "
        f"window [0.8, 1.3]; the true value is log C(109, 10)/(10 log 10) = 1.3631 under any "
        f"single log base (value = n log n + n + O(log n), so the ratio first drops below "
        f"1.3 at n = 28). The window cannot hold at n = 10.")
