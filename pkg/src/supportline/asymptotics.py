"""Closed-form limiting predictions for the support-line procedure.

Large-sample behavior is governed by Chernoff's distribution: the law of the
maximizer Z of a standard two-sided Brownian motion minus a parabola.  The
threshold and attained-lfdr fluctuations shrink at the cube-root rate m^(-1/3)
with Z-distributed limits, and the regret against the oracle shrinks at
m^(-2/3) with limiting constant proportional to Var(Z).

Only two facts about Z are used, both fixed constants here: Var(Z) ~= 0.26,
and the commonly cited tail value P{Z >= 1} ~= 0.05.  For a full density/cdf
we use the N(0, 0.52^2) approximation.  The two disagree at the tail --
the normal approximation puts P{Z >= 1} at 0.0272 -- so both numbers are
surfaced and the tail constant 1.0 is what the 95th-percentile predictions
use.  Exact numerics for Z are deliberately out of scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import special
from .models import TwoGroupsSpec, mixture_f_prime, oracle_threshold, population_threshold_tq

__all__ = [
    "CHERNOFF_SIGMA",
    "CHERNOFF_VARIANCE",
    "CHERNOFF_TAIL_AT_ONE",
    "CHERNOFF_Z95",
    "chernoff_cdf",
    "chernoff_quantile",
    "chernoff_sf",
    "LimitLaw",
    "threshold_limit",
    "lfdr_limit",
    "lfdr_upper_percentile",
    "regret_limit",
    "regret_prediction",
    "GlobalNullLimit",
    "global_null_limit",
    "pi0_estimator_limit",
]

# scale of the N(0, sigma^2) approximation to Chernoff's distribution
CHERNOFF_SIGMA = 0.52
# variance of Z entering the regret / dispersion constants
CHERNOFF_VARIANCE = 0.26
# commonly cited tail value P{Z >= 1}; the normal approximation gives
# chernoff_sf(1.0) = 0.0272 instead -- both are exposed on purpose
CHERNOFF_TAIL_AT_ONE = 0.05
# 95th percentile of Z implied by the cited tail value above
CHERNOFF_Z95 = 1.0


def chernoff_cdf(z):
    """Cdf of Z under the normal approximation N(0, 0.52^2)."""
    return special.norm_cdf(np.asarray(z, dtype=float) / CHERNOFF_SIGMA)


def chernoff_sf(z):
    """Survival function of Z under the normal approximation."""
    return special.norm_sf(np.asarray(z, dtype=float) / CHERNOFF_SIGMA)


def chernoff_quantile(p):
    """Quantile of Z under the normal approximation; symmetric about 0."""
    pp = np.asarray(p, dtype=float)
    if np.any(pp <= 0.0) or np.any(pp >= 1.0):
        raise ValueError("quantile level must lie in (0, 1)")
    out = CHERNOFF_SIGMA * special.norm_quantile(pp)
    return float(out) if np.isscalar(p) or pp.ndim == 0 else out


class LimitLaw(NamedTuple):
    """A limit of the form center + scale * Z."""

    center: float
    scale: float


def _fprime_at_threshold(spec: TwoGroupsSpec, q: float) -> tuple[float, float]:
    t_q = population_threshold_tq(spec, q)
    if not (0.0 < t_q < 1.0):
        raise ValueError("population threshold degenerate; limit law undefined")
    fp = mixture_f_prime(spec, t_q)
    if fp >= 0.0:
        raise ValueError("assumption (ii) violated: f'(t_q) must be negative")
    return t_q, fp


def threshold_limit(spec: TwoGroupsSpec, q: float, m: int) -> LimitLaw:
    """Limit law of the SL threshold: t_q + m^(-1/3) (q f'(t_q)^2 / 4)^(-1/3) Z."""
    t_q, fp = _fprime_at_threshold(spec, q)
    scale = m ** (-1.0 / 3.0) * (q * fp * fp / 4.0) ** (-1.0 / 3.0)
    return LimitLaw(center=t_q, scale=scale)


def lfdr_limit(spec: TwoGroupsSpec, q: float, m: int) -> LimitLaw:
    """Limit law of the attained lfdr, relative form.

    lfdr(tau_q) is asymptotically pi0*q * (1 + rel_scale * Z) with
    rel_scale = m^(-1/3) (4 q^2 |f'(t_q)|)^(1/3); the returned ``scale`` is
    the relative one.
    """
    _, fp = _fprime_at_threshold(spec, q)
    rel = m ** (-1.0 / 3.0) * (4.0 * q * q * abs(fp)) ** (1.0 / 3.0)
    return LimitLaw(center=spec.pi0 * q, scale=rel)


def lfdr_upper_percentile(center: float, relative_scale: float, z: float = CHERNOFF_Z95) -> float:
    """Upper percentile of the attained lfdr implied by a tail point z of Z.

    With the default z = 1 (the cited P{Z >= 1} ~= 0.05 tail), this is the
    ~95th percentile center * (1 + relative_scale).
    """
    return center * (1.0 + relative_scale * z)


def regret_limit(spec: TwoGroupsSpec, alpha: float) -> float:
    """Limiting constant C with m^(2/3) * regret -> C for the corrected procedure.

    C = (alpha^2 |f'(tau*)| / (2 pi0^2))^(-1/3) * Var(Z), where tau* is the
    oracle threshold at target level alpha.
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must lie in (0, 1)")
    if not (0.0 < spec.pi0 < 1.0):
        raise ValueError("regret limit requires pi0 in (0, 1)")
    tau_star = oracle_threshold(spec, alpha)
    if not (0.0 < tau_star < 1.0):
        raise ValueError("oracle threshold degenerate; regret limit undefined")
    fp = mixture_f_prime(spec, tau_star)
    if fp >= 0.0:
        raise ValueError("f'(tau*) must be negative")
    return (alpha * alpha * abs(fp) / (2.0 * spec.pi0 * spec.pi0)) ** (-1.0 / 3.0) * CHERNOFF_VARIANCE


def regret_prediction(spec: TwoGroupsSpec, alpha: float, m: int) -> float:
    """Finite-m regret prediction C * m^(-2/3)."""
    return regret_limit(spec, alpha) * m ** (-2.0 / 3.0)


class GlobalNullLimit(NamedTuple):
    value: float
    tail_bound: float
    terms: int


def global_null_limit(q: float, lam: float, truncation_k: int = 50) -> GlobalNullLimit:
    """Global-null limit of m * regret: lambda * sum_k P{Gamma(k, k) <= q}.

    Under the global null the regret is lambda E[V] / m, and m * regret
    converges to the series above (shape-k, rate-k gamma probabilities).
    Terms decay geometrically with ratio r = q e^(1-q) < 1 for q in [0, 1),
    so the reported ``tail_bound`` lambda * r^(K+1) / (1 - r) bounds the
    truncation error.
    """
    if not (0.0 <= q < 1.0):
        raise ValueError("q must lie in [0, 1)")
    if truncation_k < 1:
        raise ValueError("truncation_k must be >= 1")
    if lam <= 0.0:
        raise ValueError("lambda must be positive")
    if q == 0.0:
        return GlobalNullLimit(value=0.0, tail_bound=0.0, terms=truncation_k)
    ks = np.arange(1, truncation_k + 1)
    total = float(np.sum(special.gamma_cdf(q, shape=ks, rate=ks)))
    r = q * math.exp(1.0 - q)
    tail = lam * r ** (truncation_k + 1) / (1.0 - r)
    return GlobalNullLimit(value=lam * total, tail_bound=tail, terms=truncation_k)


@dataclass(frozen=True)
class Pi0LimitLaw:
    """Standardized limit of m^(2/5) (pi0_hat - pi0) at zeta = 1 - m^(-1/5).

    The limit is N(bias_term, variance_term) with bias_term =
    (1 - pi0) f1''(1) / 6 and variance_term = pi0.  The unstandardized
    finite-m approximation has mean pi0 + bias_term * m^(-2/5) and variance
    pi0 * m^(-4/5).
    """

    bias_term: float
    variance_term: float
    zeta: float

    def __iter__(self):
        return iter((self.bias_term, self.variance_term))


def _tail_curvature_fd(spec: TwoGroupsSpec, h: float = 1e-3) -> float:
    f1 = spec.alternative.f1
    return (0.0 - 2.0 * float(f1(1.0 - h)) + float(f1(1.0 - 2.0 * h))) / (h * h)


def _check_smooth_tail(spec: TwoGroupsSpec) -> None:
    # require f1(1) = 0 and f1'(1) = 0 numerically: f1(1-h) ~ O(h^2)
    f1 = spec.alternative.f1
    hs = (1e-2, 1e-3, 1e-4)
    vals = [float(f1(1.0 - h)) for h in hs]
    if vals[-1] > 1e-2:
        raise ValueError(
            "pi0 estimator limit assumptions fail: f1 does not vanish at t = 1"
        )
    slopes = [v / h for v, h in zip(vals, hs)]
    if not (slopes[1] <= 2.0 * slopes[0] and slopes[2] <= 2.0 * slopes[1]):
        raise ValueError(
            "pi0 estimator limit assumptions fail: the one-sided slope of f1 at"
            " t = 1 does not vanish (pass an explicit curvature to override)"
        )


def pi0_estimator_limit(
    spec: TwoGroupsSpec, m: int, curvature: float | None = None
) -> Pi0LimitLaw:
    """Standardized limit law of the Storey estimator on the zeta schedule.

    Requires f1 to be twice differentiable at 1 with f1(1) = f1'(1) = 0;
    the curvature f1''(1) is then the only model input.  None of the built-in
    alternative families satisfy the hypotheses at machine precision (the
    Lehmann and Cauchy tails do not vanish, and the normal-location tail has
    a divergent one-sided slope), so the check is strict and ``curvature``
    lets callers supply f1''(1) for a family known to qualify.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    if spec.pi0 == 1.0:
        curv = 0.0
    elif curvature is not None:
        curv = float(curvature)
    else:
        _check_smooth_tail(spec)
        curv = _tail_curvature_fd(spec)
    return Pi0LimitLaw(
        bias_term=(1.0 - spec.pi0) * curv / 6.0,
        variance_term=spec.pi0,
        zeta=1.0 - m ** (-0.2),
    )
