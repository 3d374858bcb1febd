"""Command-line front end.

Subcommands: pmf, entropy, decohered, type1-scan, type2-scan, clt-check,
fig1, fig2, logm-bounds, activation-antisym, verify.  All output is CSV with
a one-line header; floats carry 12 significant digits, exact rationals print
as separate numerator/denominator columns.  Exit codes: 0 success, 1
verification failure, 2 usage or parameter error, 3 resource cap.

The environment variable ASYMQ_MAX_N overrides the exact-path size cap.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager

from . import asymptotics as asy
from . import infospec as isp
from . import schur_weyl as sw
from .activation import antisym_activation
from .errors import AsymqError, ConstraintError, DomainError, SizeCapError
from .numeric import E
from .verify import SUITES, run_suite

_BASES = {"e": E, "2": 2.0}


def _fmt(x: float) -> str:
    return format(x, ".12g")


@contextmanager
def _open_out(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _write_csv(path: str, header: list[str], rows: list[list[str]]) -> None:
    with _open_out(path) as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _exact_max_n() -> int:
    raw = os.environ.get("ASYMQ_MAX_N")
    if raw is None:
        return sw.DEFAULT_EXACT_MAX_N
    try:
        return int(raw)
    except ValueError as exc:
        raise DomainError(f"ASYMQ_MAX_N must be an integer, got {raw!r}") from exc


def _params(args) -> sw.Params:
    return sw.validate_params(args.n, args.m, args.k, args.l)


def _pmap(fn, items, jobs: int):
    """Map fn over independent grid points, ordered; forks when jobs > 1."""
    if jobs <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_pmf(args) -> int:
    params = _params(args)
    cap = _exact_max_n()
    exact = not args.float
    general = params.k != params.l or 2 * params.m > params.n
    if exact and general and params.n > cap:
        raise SizeCapError(
            f"exact general-(k, l) path is capped at n = {cap} (ASYMQ_MAX_N overrides); "
            "rerun with --float")
    if exact:
        dist = sw.pmf(params) if general else sw.pmf_closed_kl(params)
    else:
        dist = sw.pmf_closed_kl(params, exact=False) if not general else sw.pmf_chain(params)
    header, rows = dist.csv_rows()
    _write_csv(args.out, header, rows)
    return 0


def _cmd_entropy(args) -> int:
    params = _params(args)
    base = _BASES[args.base]
    cap = _exact_max_n()
    general = params.k != params.l or 2 * params.m > params.n
    if general and params.n > cap:
        dist = sw.pmf_chain(params)
    else:
        dist = None
    value = sw.avg_entropy(params, base, dist)
    _write_csv(args.out, ["n", "m", "k", "l", "entropy"],
               [[str(params.n), str(params.m), str(params.k), str(params.l), _fmt(value)]])
    return 0


def _cmd_decohered(args) -> int:
    params = _params(args)
    value = asy.decohered_asymmetry(params, _BASES[args.base])
    _write_csv(args.out, ["n", "m", "k", "l", "decohered"],
               [[str(params.n), str(params.m), str(params.k), str(params.l), _fmt(value)]])
    return 0


def _type1_scan_point(job) -> tuple[int, float]:
    n, xi, k, l = job
    ratios = asy.TypeIRatios(xi, k, l)
    q = asy.type1_q_pmf(ratios)
    dist = sw.pmf(asy.slice_params(n, xi, k, l))
    sup = max(abs(dist.prob(x) - float(q[x])) for x in range(len(q)))
    return n, sup


def _cmd_type1_scan(args) -> int:
    jobs = [(n, args.xi, args.k, args.l) for n in args.n_list]
    rows = []
    for n, sup in _pmap(_type1_scan_point, jobs, args.jobs):
        rows.append([str(n), _fmt(sup), _fmt(n * sup)])
    _write_csv(args.out, ["n", "max_abs_diff", "n_max_abs_diff"], rows)
    return 0


def _cmd_type2_scan(args) -> int:
    p = asy.type2_params(args.beta, args.delta, args.xi)
    base = _BASES[args.base]
    rows = []
    for n in args.n_list:
        leading = asy.type2_entropy_leading(p, n, base)
        dec = asy.decohered_type2_approx(p, n, base)
        gap = asy.entropy_rate_gap(p, base)
        rows.append([str(n), _fmt(p.mu), _fmt(p.sigma2 if p.sigma2 is not None else math.nan),
                     _fmt(leading), _fmt(dec), _fmt(gap)])
    _write_csv(args.out, ["n", "mu", "sigma2", "entropy_leading", "decohered_approx", "rate_gap"], rows)
    return 0


def _cmd_clt_check(args) -> int:
    tuples = []
    for n in args.n_list:
        l = args.alpha * n
        m = args.xi * n
        if abs(l - round(l)) > 1e-9 or abs(m - round(m)) > 1e-9:
            raise ConstraintError("alpha * n and xi * n integral",
                                  f"n = {n} is incompatible with alpha = {args.alpha}, xi = {args.xi}")
        tuples.append(sw.Params(n, int(round(m)), int(round(l)), int(round(l))))
    limit = asy.type2_params(beta=args.xi - args.alpha, delta=1.0 - args.xi, xi=args.xi)
    report = asy.clt_check(tuples, limit, tail_eps=args.tail_eps)
    rows = []
    for row in report.rows:
        slope = "" if row.tail_log_slope is None else _fmt(row.tail_log_slope)
        rows.append([str(row.n), _fmt(row.sup_cdf_dist), _fmt(row.mean_err), _fmt(row.var_err), slope])
    _write_csv(args.out, ["n", "sup_cdf_dist", "mean_err", "var_err", "tail_log_slope"], rows)
    return 0


def _cmd_fig1(args) -> int:
    if args.k > 6 or args.l > 6:
        raise ConstraintError("k, l <= 6", "fig1 is meant for small attached strings (k, l <= 6)")
    ratios = asy.TypeIRatios(args.xi, args.k, args.l)
    n_list = sorted(args.n_list)
    rows = [[str(n), _fmt(s), _fmt(a), _fmt(u)]
            for n, s, a, u in asy.fig1_rows(n_list, ratios, exact_max_n=_exact_max_n())]
    _write_csv(args.out, ["n", "S_exact_over_logn", "a_over_logn", "u"], rows)
    return 0


def _fig2_point(job) -> tuple[float, float, float]:
    xi, kappa = job
    p = asy.product_slice(xi, kappa)
    from .numeric import binary_entropy_family

    return kappa, binary_entropy_family(p.mu, 0, 2.0), kappa * binary_entropy_family(xi, 0, 2.0)


def _cmd_fig2(args) -> int:
    if not 0.0 < args.xi < 1.0:
        raise DomainError(f"xi must lie in (0, 1), got {args.xi}")
    if args.steps < 2:
        raise DomainError("need at least two grid points")
    jobs = [(args.xi, i / (args.steps - 1)) for i in range(args.steps)]
    rows = [[_fmt(kappa), _fmt(green), _fmt(blue)]
            for kappa, green, blue in _pmap(_fig2_point, jobs, args.jobs)]
    _write_csv(args.out, ["kappa", "h_mu", "kappa_h_xi"], rows)
    return 0


def _cmd_logm_bounds(args) -> int:
    params = _params(args)
    base = _BASES[args.base]
    spectrum = sw.avg_spectrum(params).eigenvalues_with_multiplicity()
    lower, upper = isp.distinguishable_count_bounds_from_spectrum(
        spectrum, args.eps, args.delta1, args.delta2, base)
    _write_csv(args.out, ["eps", "delta1", "delta2", "lower", "upper"],
               [[_fmt(args.eps), _fmt(args.delta1), _fmt(args.delta2), _fmt(lower), _fmt(upper)]])
    return 0


def _cmd_activation_antisym(args) -> int:
    rows = []
    if args.scan:
        d_values = range(args.n, max(4 * args.n, 50) + 1)
    else:
        d_values = [args.d if args.d is not None else args.n]
    for d in d_values:
        nats = antisym_activation(args.n, d)
        rows.append([str(d), _fmt(nats / math.log(2)), _fmt(nats)])
    _write_csv(args.out, ["d", "value_bits", "value_nats"], rows)
    return 0


def _cmd_verify(args) -> int:
    results = run_suite(args.suite)
    failed = [r for r in results if not r.ok]
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        detail = f" ({r.detail})" if r.detail else ""
        print(f"{status} {r.name}{detail}")
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if failed:
        print("failed checks:", "; ".join(r.name for r in failed))
        return 1
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_params_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--base", choices=sorted(_BASES), default="e", help="log base (default e)")
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers across grid points")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="asymq",
        description="Permutation-asymmetry calculator: exact Schur-Weyl outcome "
                    "distributions, entropies, asymptotics, and one-shot bounds.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("pmf", help="exact or float outcome distribution")
    _add_params_flags(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True)
    mode.add_argument("--float", action="store_true", default=False)
    _add_common(p)
    p.set_defaults(func=_cmd_pmf)

    p = subs.add_parser("entropy", help="averaged-state von Neumann entropy")
    _add_params_flags(p)
    _add_common(p)
    p.set_defaults(func=_cmd_entropy)

    p = subs.add_parser("decohered", help="decohered asymmetry log C(n,m) - log C(n-k,m-l)")
    _add_params_flags(p)
    _add_common(p)
    p.set_defaults(func=_cmd_decohered)

    p = subs.add_parser("type1-scan", help="convergence of the pmf to its Type I limit")
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--n-list", type=int, nargs="+", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_type1_scan)

    p = subs.add_parser("type2-scan", help="Type II limit quantities along an n list")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--n-list", type=int, nargs="+", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_type2_scan)

    p = subs.add_parser("clt-check", help="empirical CLT report on the k = l slice")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--n-list", type=int, nargs="+", required=True)
    p.add_argument("--tail-eps", type=float, default=0.05)
    _add_common(p)
    p.set_defaults(func=_cmd_clt_check)

    p = subs.add_parser("fig1", help="entropy growth vs its Type I surrogate")
    p.add_argument("--n-list", type=int, nargs="+", required=True)
    p.add_argument("--xi", type=float, default=0.5)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--l", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=_cmd_fig1)

    p = subs.add_parser("fig2", help="coherent vs decohered rate on the product slice (base 2)")
    p.add_argument("--xi", type=float, default=0.3)
    p.add_argument("--steps", type=int, default=201, help="number of kappa grid points")
    _add_common(p)
    p.set_defaults(func=_cmd_fig2)

    p = subs.add_parser("logm-bounds", help="one-shot bounds on the log distinguishable count")
    _add_params_flags(p)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--delta1", type=float, required=True)
    p.add_argument("--delta2", type=float, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_logm_bounds)

    p = subs.add_parser("activation-antisym", help="antisymmetric-subspace activation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--scan", action="store_true", help="scan d over [n, max(4n, 50)]")
    _add_common(p)
    p.set_defaults(func=_cmd_activation_antisym)

    p = subs.add_parser("verify", help="run a named invariant suite")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SizeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ConstraintError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AsymqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
