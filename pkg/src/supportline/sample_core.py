"""P-value samples, order statistics, the ecdf, and its least concave majorant.

The least concave majorant (LCM) of the empirical cdf carries the
shape-constrained density MLE: its left-derivative step function is the
nonparametric maximum likelihood estimate of a non-increasing density on
[0, 1].  The LCM is computed with an upper convex-hull scan over the m+2
ecdf vertices, which is O(m) after sorting; a pool-adjacent-violators
oracle is kept in the test suite and must agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "PValueSample",
    "GrenanderFit",
    "order_statistics",
    "ecdf",
    "lcm_fit",
    "grenander_density",
    "lfdr_hat",
]


class EmptySampleError(ValueError):
    """Raised when a p-value sample has no observations."""


def _validate_values(values: np.ndarray) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError("p-values must form a one-dimensional sequence")
    if arr.size == 0:
        raise EmptySampleError("empty sample")
    if np.any(np.isnan(arr)):
        raise ValueError("p-values must not be NaN")
    if np.any((arr < 0.0) | (arr > 1.0)):
        bad = arr[(arr < 0.0) | (arr > 1.0)][0]
        raise ValueError(f"p-value {bad!r} outside [0, 1]")
    return arr


@dataclass(frozen=True)
class PValueSample:
    """An immutable batch of m p-values with cached ascending order statistics.

    ``values`` keeps the original input order (needed to report rejected
    indices); ``sorted_values`` is ascending.  Values are validated to lie in
    [0, 1] at construction -- out-of-range inputs are rejected, not clamped,
    because silent clamping would corrupt the control guarantees downstream.
    """

    values: np.ndarray
    sorted_values: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        arr = _validate_values(self.values)
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)
        srt = np.sort(arr, kind="stable")
        srt.flags.writeable = False
        object.__setattr__(self, "sorted_values", srt)

    @property
    def m(self) -> int:
        return int(self.values.size)

    def augmented_sorted(self) -> np.ndarray:
        """Order statistics with the convention p_(0) = 0 prepended."""
        return np.concatenate(([0.0], self.sorted_values))


def order_statistics(sample: PValueSample) -> np.ndarray:
    """Ascending order statistics p_(0), p_(1), ..., p_(m) with p_(0) = 0."""
    return sample.augmented_sorted()


def ecdf(sample: PValueSample, t):
    """Empirical cdf (1/m) #{i : p_i <= t}, right-continuous with stacked jumps at ties.

    ``t`` may be a scalar or an array; every entry must lie in [0, 1].
    """
    tt = np.asarray(t, dtype=float)
    if np.any((tt < 0.0) | (tt > 1.0)) or np.any(np.isnan(tt)):
        raise ValueError("ecdf evaluation point outside [0, 1]")
    counts = np.searchsorted(sample.sorted_values, tt, side="right")
    out = counts / sample.m
    return float(out) if np.isscalar(t) or tt.ndim == 0 else out


@dataclass(frozen=True)
class GrenanderFit:
    """Least concave majorant of the ecdf and its left-derivative step function.

    ``knots`` are ascending abscissae starting at 0 and ending at 1;
    ``majorant_values`` are the (concave, piecewise-linear) majorant values at
    the knots; ``slopes[j]`` is the left derivative on the half-open segment
    (knots[j], knots[j+1]].  Slopes are non-increasing and integrate to
    majorant(1) - majorant(0).
    """

    knots: np.ndarray
    majorant_values: np.ndarray
    slopes: np.ndarray

    def __post_init__(self):
        for name in ("knots", "majorant_values", "slopes"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    def majorant(self, t):
        """Evaluate the least concave majorant at t (scalar or array)."""
        tt = np.asarray(t, dtype=float)
        if np.any((tt < 0.0) | (tt > 1.0)):
            raise ValueError("majorant evaluation point outside [0, 1]")
        out = np.interp(tt, self.knots, self.majorant_values)
        return float(out) if np.isscalar(t) or tt.ndim == 0 else out


def _hull_slope(x: np.ndarray, y: np.ndarray, i: int, j: int) -> float:
    # Single shared slope expression; the PAVA test oracle reuses it so that
    # both routes perform identical floating-point arithmetic.
    return (y[j] - y[i]) / (x[j] - x[i])


def lcm_fit(sample: PValueSample) -> GrenanderFit:
    """Least concave majorant of {(0,0)} u {(p_(k), k/m)} u {(1,1)}.

    Duplicate abscissae (tied p-values) produce stacked ecdf jumps; the scan
    keeps only the topmost point at each abscissa, so zero-width segments
    never reach the hull.  Collinear interior points are dropped, making each
    reported slope strictly smaller than the previous one.
    """
    m = sample.m
    x = np.concatenate(([0.0], sample.sorted_values, [1.0]))
    y = np.concatenate(([0.0], np.arange(1, m + 1) / m, [1.0]))
    # keep the last (= highest) point at every distinct abscissa
    keep = np.nonzero(np.diff(x, append=np.inf) > 0.0)[0]
    x = x[keep]
    y = y[keep]

    stack = [0]
    for j in range(1, x.size):
        while len(stack) >= 2 and _hull_slope(x, y, stack[-2], stack[-1]) <= _hull_slope(
            x, y, stack[-1], j
        ):
            stack.pop()
        stack.append(j)

    idx = np.array(stack)
    knots = x[idx]
    values = y[idx]
    slopes = np.array(
        [_hull_slope(x, y, idx[i], idx[i + 1]) for i in range(len(idx) - 1)]
    )
    return GrenanderFit(knots=knots, majorant_values=values, slopes=slopes)


def grenander_density(fit: GrenanderFit, t):
    """Left-derivative of the majorant at t: the monotone density MLE.

    Defined on (0, 1] only; the left derivative does not exist at t = 0 and
    the estimator is never needed there.  At a knot the value is the slope of
    the segment ending at that knot.
    """
    tt = np.asarray(t, dtype=float)
    if np.any(tt <= 0.0) or np.any(tt > 1.0) or np.any(np.isnan(tt)):
        raise ValueError("density defined on (0, 1] only")
    seg = np.searchsorted(fit.knots, tt, side="left") - 1
    out = fit.slopes[np.clip(seg, 0, fit.slopes.size - 1)]
    return float(out) if np.isscalar(t) or tt.ndim == 0 else out


def lfdr_hat(fit: GrenanderFit, t, pi0_bound: float = 1.0):
    """Conservative lfdr estimate pi0_bound / f_hat(t).

    Returns +inf where the density estimate is zero (no mass beyond the last
    support point); callers can test with numpy.isinf.  ``pi0_bound`` must lie
    in (0, 1]: it is an upper bound on the null proportion, not an estimate.
    """
    if not (0.0 < pi0_bound <= 1.0):
        raise ValueError("pi0_bound must lie in (0, 1]")
    dens = grenander_density(fit, t)
    with np.errstate(divide="ignore"):
        out = np.where(np.asarray(dens) > 0.0, pi0_bound / np.asarray(dens), np.inf)
    return float(out) if np.isscalar(t) or np.asarray(t).ndim == 0 else out
