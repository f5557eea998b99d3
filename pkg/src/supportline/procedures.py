"""Rejection procedures: support-line, Benjamini-Hochberg, adaptive variants.

The support-line (SL) procedure rejects p-values up to the last minimizer of
p_(k) - q k / m over k = 0..m.  Geometrically this is the touch point of the
slope-q/m support line of the sorted p-values, or equivalently the largest t
at which the Grenander density estimate stays above 1/q.  BH instead takes
the largest k with p_(k) <= q k / m, so it always rejects at least as much.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sample_core import PValueSample, lcm_fit

__all__ = [
    "RejectionResult",
    "sl_reject",
    "bh_reject",
    "storey_pi0",
    "adaptive_sl_reject",
    "sl_reject_at_estimated_level",
    "fixed_threshold_reject",
    "sl_threshold_via_grenander",
    "storey_zeta_schedule",
]


class LevelError(ValueError):
    """Raised when a procedure level q lies outside (0, 1]."""


@dataclass(frozen=True)
class RejectionResult:
    """Outcome of a rejection procedure.

    ``rejection_count`` is the defining index R of the procedure (the argmin /
    argmax over order statistics); ``rejected_indices`` is the 1-based set
    {i : p_i <= threshold} in original input order.  The two agree except
    under exact p-value ties at the threshold, where the index set may be
    larger -- a measure-zero event under the sampling model, but reproducible
    in tests.  R = 0 always comes with threshold 0 and an empty set.
    """

    rejection_count: int
    threshold: float
    rejected_indices: frozenset[int]
    effective_level: float
    pi0_estimate: float | None = None


def _check_level(q: float) -> None:
    if not (0.0 < q <= 1.0) or math.isnan(q):
        raise LevelError(f"level q={q!r} outside (0, 1]; exact control requires q <= 1")


def _rejected_set(sample: PValueSample, threshold: float) -> frozenset[int]:
    return frozenset(int(i) + 1 for i in np.nonzero(sample.values <= threshold)[0])


def _last_argmin(objective: np.ndarray) -> int:
    # last index attaining the minimum: ties occur with probability zero
    # under the model but deterministically in tests
    return int(objective.size - 1 - np.argmin(objective[::-1]))


def sl_reject(sample: PValueSample, q: float) -> RejectionResult:
    """Support-line procedure: reject up to the last minimizer of p_(k) - qk/m."""
    _check_level(q)
    aug = sample.augmented_sorted()
    objective = aug - q * np.arange(sample.m + 1) / sample.m
    r = _last_argmin(objective)
    tau = float(aug[r])
    return RejectionResult(
        rejection_count=r,
        threshold=tau if r > 0 else 0.0,
        rejected_indices=_rejected_set(sample, tau) if r > 0 else frozenset(),
        effective_level=q,
    )


def bh_reject(sample: PValueSample, q: float) -> RejectionResult:
    """Benjamini-Hochberg: reject up to the largest k with p_(k) <= qk/m."""
    _check_level(q)
    sorted_p = sample.sorted_values
    below = sorted_p <= q * np.arange(1, sample.m + 1) / sample.m
    if below.any():
        r = int(sample.m - np.argmax(below[::-1]))
    else:
        r = 0
    tau = q * r / sample.m
    return RejectionResult(
        rejection_count=r,
        threshold=tau,
        rejected_indices=_rejected_set(sample, tau) if r > 0 else frozenset(),
        effective_level=q,
    )


def storey_pi0(sample: PValueSample, zeta: float) -> float:
    """Null-proportion estimate (1 + #{p_i > zeta}) / ((1 - zeta) m).

    Deliberately not clipped at 1: the adaptive procedure consumes it as-is,
    and values above 1 simply make the procedure more conservative.
    """
    if not (0.0 < zeta < 1.0) or math.isnan(zeta):
        raise ValueError(f"zeta={zeta!r} outside (0, 1)")
    exceed = int(np.count_nonzero(sample.values > zeta))
    return (1.0 + exceed) / ((1.0 - zeta) * sample.m)


def storey_zeta_schedule(m: int) -> float:
    """The tuning schedule zeta = 1 - m^(-1/5) used for asymptotic experiments."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return 1.0 - m ** (-0.2)


def adaptive_sl_reject(sample: PValueSample, q: float, zeta: float) -> RejectionResult:
    """Adaptive SL: minimize pi0_hat * p_(k) - qk/m over k with p_(k) <= zeta.

    Only order statistics below ``zeta`` are examined (k = 0 is always
    admissible via p_(0) = 0).  The recorded effective level is q / pi0_hat.
    """
    _check_level(q)
    pi0_hat = storey_pi0(sample, zeta)
    aug = sample.augmented_sorted()
    k_max = int(np.searchsorted(sample.sorted_values, zeta, side="right"))
    ks = np.arange(k_max + 1)
    objective = pi0_hat * aug[: k_max + 1] - q * ks / sample.m
    r = _last_argmin(objective)
    tau = float(aug[r])
    return RejectionResult(
        rejection_count=r,
        threshold=tau if r > 0 else 0.0,
        rejected_indices=_rejected_set(sample, tau) if r > 0 else frozenset(),
        effective_level=q / pi0_hat,
        pi0_estimate=pi0_hat,
    )


def sl_reject_at_estimated_level(sample: PValueSample, q: float, zeta: float) -> RejectionResult:
    """Unrestricted variant: plain SL run at the corrected level q / pi0_hat.

    Coincides with :func:`adaptive_sl_reject` whenever the resulting threshold
    does not exceed ``zeta`` (in practice always, since thresholds live far
    below 0.5).  Raises :class:`LevelError` if q / pi0_hat exceeds 1, since
    exact control is only guaranteed at levels <= 1.
    """
    pi0_hat = storey_pi0(sample, zeta)
    result = sl_reject(sample, q / pi0_hat)
    return RejectionResult(
        rejection_count=result.rejection_count,
        threshold=result.threshold,
        rejected_indices=result.rejected_indices,
        effective_level=q / pi0_hat,
        pi0_estimate=pi0_hat,
    )


def fixed_threshold_reject(sample: PValueSample, t: float) -> RejectionResult:
    """Reject every p_i <= t for a fixed threshold t in [0, 1].

    When nothing falls below t the result reports threshold 0 (matching the
    R = 0 invariant of :class:`RejectionResult`).  The effective level is not
    defined for a fixed-threshold rule and is reported as NaN.
    """
    if not (0.0 <= t <= 1.0) or math.isnan(t):
        raise ValueError(f"threshold t={t!r} outside [0, 1]")
    rejected = _rejected_set(sample, t)
    r = len(rejected)
    return RejectionResult(
        rejection_count=r,
        threshold=t if r > 0 else 0.0,
        rejected_indices=rejected,
        effective_level=math.nan,
    )


def sl_threshold_via_grenander(sample: PValueSample, q: float) -> float:
    """SL threshold through the switching relation: sup{t : f_hat(t) >= 1/q}.

    The supremum of the empty set is 0.  Because the Grenander slopes are the
    hull segments of the very same order statistics the support line touches,
    this equals ``sl_reject(sample, q).threshold`` exactly, floating point
    included; the equivalence is enforced by tests.
    """
    _check_level(q)
    fit = lcm_fit(sample)
    qualifying = np.nonzero(fit.slopes >= 1.0 / q)[0]
    if qualifying.size == 0:
        return 0.0
    # slopes are non-increasing, so qualifying segments form a prefix
    return float(fit.knots[qualifying[-1] + 1])
