"""One-stop asymmetry summary for a single parameter tuple.

Bundles the exact averaged-state entropy, the decohered baseline, the
activation amounts, a threshold-entropy profile, and the two asymptotic
predictions evaluated at the tuple's own ratios, with their deviations from
the exact entropy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .asymptotics import (TypeIRatios, decohered_asymmetry, type1_entropy_approx,
                          type2_entropy_leading, type2_params)
from .errors import AsymqError
from .infospec import SpectralThreshold
from .numeric import E, log_binomial
from .schur_weyl import ExactPMF, Params, avg_entropy, avg_entropy_threshold, default_pmf


@dataclass(frozen=True)
class AsymmetryReport:
    """Entropy, baselines, activation, threshold profile, and predictions."""

    params: Params
    base: float
    entropy: float
    decohered: float
    added: float
    activation_coherent: float
    activation_decohered: float
    threshold_profile: tuple[tuple[float, SpectralThreshold], ...]
    type1_prediction: float
    type1_delta: float
    type2_prediction: float | None
    type2_delta: float | None
    clt_assumption: bool


def asymmetry_report(params: Params, eps_list: Sequence[float] = (0.25, 0.5, 0.75),
                     base: float = E, dist: ExactPMF | None = None) -> AsymmetryReport:
    """Assemble the full asymmetry picture for one tuple.

    The Type I prediction is the finite-n entropy surrogate at xi = m/n with
    the tuple's own (k, l); the Type II prediction is the leading n h(mu)
    from the tuple's ratios, or None on the degenerate branches where the
    entropy is log C(n, m) instead.
    """
    n = params.n
    if n == 0:
        raise AsymqError("the empty tuple has no asymmetry to report")
    if dist is None:
        dist = default_pmf(params)
    entropy = avg_entropy(params, base, dist)
    decohered = decohered_asymmetry(params, base)
    added = log_binomial(params.k, params.l, base)
    profile = tuple((eps, avg_entropy_threshold(params, eps, base, dist)) for eps in eps_list)

    ratios = TypeIRatios(params.m / n, params.k, params.l)
    type1_prediction = type1_entropy_approx(n, ratios, base)
    limit = type2_params(beta=params.M / n, delta=params.N / n, xi=params.m / n)
    if limit.clt_assumption:
        type2_prediction = type2_entropy_leading(limit, n, base)
        type2_delta = entropy - type2_prediction
    else:
        type2_prediction = None
        type2_delta = None
    return AsymmetryReport(
        params=params, base=base, entropy=entropy, decohered=decohered, added=added,
        activation_coherent=entropy - added, activation_decohered=decohered - added,
        threshold_profile=profile,
        type1_prediction=type1_prediction, type1_delta=entropy - type1_prediction,
        type2_prediction=type2_prediction, type2_delta=type2_delta,
        clt_assumption=limit.clt_assumption)
