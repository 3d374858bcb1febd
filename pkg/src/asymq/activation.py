"""Asymmetry activation amounts.

Attaching an asymmetric bit string to an invariant state raises the total
asymmetry beyond that of the string alone; the activation is the difference.
Two concrete families: the permutation setting (coherent Dicke vs decohered
carrier) and the antisymmetric-subspace example, where a d-dimensional
n-party antisymmetric state activates log C(nd+n-1, n) - log C(d, n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .asymptotics import decohered_asymmetry
from .errors import DomainError, InvariantError
from .numeric import E, log_binomial
from .schur_weyl import ExactPMF, Params, avg_entropy


@dataclass(frozen=True)
class ActivationReport:
    """Whole-state asymmetry, added-state asymmetry, and their difference."""

    asym_whole: float
    asym_added: float
    activation: float
    base: float


def permutation_activation(params: Params, coherent: bool, base: float = E,
                           dist: ExactPMF | None = None) -> ActivationReport:
    """Activation from attaching the bit string to the (Dicke or decohered) carrier.

    The added string alone carries log C(k, l); the whole state carries the
    averaged-state entropy (coherent) or the decohered asymmetry.
    """
    added = log_binomial(params.k, params.l, base)
    if coherent:
        whole = avg_entropy(params, base, dist)
    else:
        whole = decohered_asymmetry(params, base)
    return ActivationReport(asym_whole=whole, asym_added=added,
                            activation=whole - added, base=base)


def antisym_activation(n: int, d: int, base: float = E) -> float:
    """Activation for the antisymmetric-subspace example.

    log C(nd+n-1, n) - log C(d, n), cross-checked against the equivalent sum
    sum_{j<n} log(n + (n-1)(j+1)/(d-j)) to 1e-10.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if d < n:
        raise DomainError(f"need d >= n, got n={n}, d={d}")
    binom_form = math.log(math.comb(n * d + n - 1, n)) - math.log(math.comb(d, n))
    sum_form = sum(math.log(n + (n - 1) * (j + 1) / (d - j)) for j in range(n))
    if not math.isclose(binom_form, sum_form, rel_tol=0.0, abs_tol=1e-10):
        raise InvariantError(f"activation forms disagree: {binom_form} vs {sum_form}")
    return binom_form if base == E else binom_form / math.log(base)


def antisym_optimal_d(n: int, base: float = E) -> tuple[int, float]:
    """Argmax over d >= n of the antisymmetric activation.

    Scans the finite window [n, max(4n, 50)]; the summand form is termwise
    decreasing in d, so the maximum sits at d = n with value
    log C(n^2+n-1, n).  The scan result is verified against that claim.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    best_d, best_val = n, antisym_activation(n, n, base)
    for d in range(n + 1, max(4 * n, 50) + 1):
        val = antisym_activation(n, d, base)
        if val > best_val:
            best_d, best_val = d, val
    if best_d != n:
        raise InvariantError(f"scan found the maximum at d={best_d}, expected d={n}")
    return best_d, best_val
