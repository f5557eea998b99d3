"""Analytic two-groups model layer.

A two-groups model mixes a uniform null density (weight pi0) with an
alternative density f1 on [0, 1].  This module provides the alternative
families used throughout the package, the mixture density/cdf, the true
local false discovery rate pi0 / f(t), population rejection thresholds,
the BH-level equivalence, and the fixed-threshold regret function rho.

Families
--------
Lehmann(theta)          f1(t) = theta * t^(theta-1), a Beta(theta, 1) density;
                        non-increasing for theta in (0, 1), closed forms for
                        every population quantity.
NormalLocation(shifts)  one-tailed z-tests against N(mu_j, 1) alternatives;
                        f1 non-increasing when all shifts are positive.
CauchyLocation(shifts)  the same construction with Cauchy noise; f1 is NOT
                        monotone, which is exactly the misspecification the
                        robustness experiments exercise.
"""

from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass

import numpy as np

from . import special

__all__ = [
    "Lehmann",
    "NormalLocation",
    "CauchyLocation",
    "TwoGroupsSpec",
    "f1",
    "mixture_f",
    "mixture_F",
    "true_lfdr",
    "mixture_f_prime",
    "population_threshold_tq",
    "population_threshold_bh",
    "bh_equivalent_level",
    "oracle_threshold",
    "rho_regret",
    "model_preset",
    "BH64_SHIFTS",
]

# one-tailed z-test battery: shifts 5j/4 with equal conditional weights
BH64_SHIFTS = tuple((5.0 * j / 4.0, 0.25) for j in range(1, 5))


@dataclass(frozen=True)
class Lehmann:
    """Beta(theta, 1) alternative f1(t) = theta t^(theta-1), theta in (0, 1)."""

    theta: float

    def __post_init__(self):
        if not (0.0 < self.theta < 1.0):
            raise ValueError("Lehmann theta must lie in (0, 1)")

    monotone = True

    def f1(self, t):
        return self.theta * np.power(t, self.theta - 1.0)

    def F1(self, t):
        return np.power(t, self.theta)

    def f1_prime(self, t):
        return self.theta * (self.theta - 1.0) * np.power(t, self.theta - 2.0)

    def inverse_F1(self, u):
        return np.power(u, 1.0 / self.theta)


def _check_shifts(shifts) -> tuple[tuple[float, float], ...]:
    shifts = tuple((float(mu), float(w)) for mu, w in shifts)
    if not shifts:
        raise ValueError("at least one shift component required")
    total = math.fsum(w for _, w in shifts)
    if abs(total - 1.0) > 1e-12:
        raise ValueError(f"shift probabilities sum to {total!r}, expected 1")
    if any(w < 0.0 for _, w in shifts):
        raise ValueError("shift probabilities must be non-negative")
    return shifts


@dataclass(frozen=True)
class NormalLocation:
    """Mixture of one-tailed normal location alternatives.

    A non-null observation draws its mean mu_j with probability w_j, observes
    Y ~ N(mu_j, 1), and reports the one-tailed p-value p = Phi_bar(Y).  The
    implied p-value density is f1(t) = sum_j w_j exp(mu_j y - mu_j^2 / 2)
    with y = Phi_bar^{-1}(t), evaluated in that form for stability at tiny t.
    """

    shifts: tuple[tuple[float, float], ...]

    def __post_init__(self):
        object.__setattr__(self, "shifts", _check_shifts(self.shifts))

    @property
    def monotone(self) -> bool:
        return all(mu >= 0.0 for mu, _ in self.shifts)

    def _mus_ws(self):
        mus = np.array([mu for mu, _ in self.shifts])
        ws = np.array([w for _, w in self.shifts])
        return mus, ws

    def f1(self, t):
        mus, ws = self._mus_ws()
        y = special.norm_isf(np.asarray(t, dtype=float))
        expo = np.multiply.outer(y, mus) - mus**2 / 2.0
        out = np.exp(expo) @ ws
        return float(out) if np.isscalar(t) else out

    def F1(self, t):
        mus, ws = self._mus_ws()
        y = special.norm_isf(np.asarray(t, dtype=float))
        out = special.norm_sf(np.subtract.outer(y, mus)) @ ws
        return float(out) if np.isscalar(t) else out

    def sample_shifts(self, rng, size):
        mus, ws = self._mus_ws()
        return rng.choice(mus, size=size, p=ws)


@dataclass(frozen=True)
class CauchyLocation:
    """Mixture of one-tailed Cauchy location alternatives (non-monotone f1)."""

    shifts: tuple[tuple[float, float], ...]

    def __post_init__(self):
        object.__setattr__(self, "shifts", _check_shifts(self.shifts))

    monotone = False

    def _mus_ws(self):
        mus = np.array([mu for mu, _ in self.shifts])
        ws = np.array([w for _, w in self.shifts])
        return mus, ws

    def f1(self, t):
        mus, ws = self._mus_ws()
        y = special.cauchy_isf(np.asarray(t, dtype=float))
        ratio = (1.0 + np.square(y))[..., None] / (
            1.0 + np.square(np.subtract.outer(y, mus))
        )
        out = ratio @ ws
        return float(out) if np.isscalar(t) else out

    def F1(self, t):
        mus, ws = self._mus_ws()
        y = special.cauchy_isf(np.asarray(t, dtype=float))
        out = special.cauchy_sf(np.subtract.outer(y, mus)) @ ws
        return float(out) if np.isscalar(t) else out

    def sample_shifts(self, rng, size):
        mus, ws = self._mus_ws()
        return rng.choice(mus, size=size, p=ws)


@dataclass(frozen=True)
class TwoGroupsSpec:
    """Null proportion plus an alternative family."""

    pi0: float
    alternative: Lehmann | NormalLocation | CauchyLocation

    def __post_init__(self):
        if not (0.0 <= self.pi0 <= 1.0):
            raise ValueError("pi0 must lie in [0, 1]")

    @property
    def monotone(self) -> bool:
        return self.alternative.monotone


def _check_open_unit(t, what="t"):
    tt = np.asarray(t, dtype=float)
    if np.any(tt <= 0.0) or np.any(tt >= 1.0) or np.any(np.isnan(tt)):
        raise ValueError(f"{what} must lie in the open interval (0, 1)")
    return tt


def f1(spec: TwoGroupsSpec, t):
    """Alternative density at t in (0, 1)."""
    _check_open_unit(t)
    return spec.alternative.f1(t)


def mixture_f(spec: TwoGroupsSpec, t):
    """Mixture density pi0 + (1 - pi0) f1(t) on (0, 1)."""
    _check_open_unit(t)
    return spec.pi0 + (1.0 - spec.pi0) * spec.alternative.f1(t)


def mixture_F(spec: TwoGroupsSpec, t):
    """Mixture cdf pi0 t + (1 - pi0) F1(t) on [0, 1]; exact 0 and 1 at the ends."""
    tt = np.asarray(t, dtype=float)
    if np.any(tt < 0.0) or np.any(tt > 1.0) or np.any(np.isnan(tt)):
        raise ValueError("t must lie in [0, 1]")
    interior = (tt > 0.0) & (tt < 1.0)
    out = np.where(tt <= 0.0, 0.0, 1.0)
    if np.any(interior):
        ti = np.where(interior, tt, 0.5)
        vals = spec.pi0 * ti + (1.0 - spec.pi0) * spec.alternative.F1(ti)
        out = np.where(interior, vals, out)
    return float(out) if np.isscalar(t) or tt.ndim == 0 else out


def true_lfdr(spec: TwoGroupsSpec, t):
    """Posterior null probability pi0 / f(t); always <= 1 since f >= pi0."""
    return spec.pi0 / mixture_f(spec, t)


def mixture_f_prime(spec: TwoGroupsSpec, t: float, h: float | None = None) -> float:
    """Derivative of the mixture density.

    Analytic for the Lehmann family; central differences otherwise with
    step max(1e-6, t * 1e-6), shrunk if needed to stay inside (0, 1).
    """
    t = float(_check_open_unit(t))
    if isinstance(spec.alternative, Lehmann):
        return (1.0 - spec.pi0) * float(spec.alternative.f1_prime(t))
    if h is None:
        h = max(1e-6, t * 1e-6)
    h = min(h, t / 2.0, (1.0 - t) / 2.0)
    return float(mixture_f(spec, t + h) - mixture_f(spec, t - h)) / (2.0 * h)


class NonMonotoneError(ValueError):
    """Raised when a population quantity needs a monotone alternative."""


def _require_monotone(spec: TwoGroupsSpec) -> None:
    if not spec.monotone:
        raise NonMonotoneError("population threshold undefined for non-monotone f1")


def _bisect(fun, lo=1e-12, hi=1.0 - 1e-12, tol=1e-12):
    flo = fun(lo)
    fhi = fun(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fmid = fun(mid)
        if (fmid > 0.0) == (flo > 0.0):
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol:
            break
    return 0.5 * (lo + hi)


def population_threshold_tq(spec: TwoGroupsSpec, q: float) -> float:
    """Population SL threshold: the crossing point of f with the level 1/q.

    For a monotone (non-increasing) mixture density this is the unique root
    of f(t) = 1/q, with the conventions 0 when f stays below 1/q everywhere
    and 1 when it stays above.  Valid for q in (0, 1/pi0).
    """
    _require_monotone(spec)
    if spec.pi0 > 0 and not (0.0 < q < 1.0 / spec.pi0):
        raise ValueError("q must lie in (0, 1/pi0)")
    if q <= 0.0:
        raise ValueError("q must be positive")
    target = 1.0 / q
    if spec.pi0 == 1.0:
        # mixture density is identically 1
        return 1.0 if target <= 1.0 else 0.0
    f_hi = mixture_f(spec, 1.0 - 1e-12)
    if f_hi >= target:
        return 1.0
    if isinstance(spec.alternative, Lehmann):
        theta = spec.alternative.theta
        base = (target - spec.pi0) / ((1.0 - spec.pi0) * theta)
        return min(1.0, base ** (-1.0 / (1.0 - theta)))
    f_lo = mixture_f(spec, 1e-12)
    if f_lo < target:
        return 0.0
    return _bisect(lambda t: mixture_f(spec, t) - target)


def population_threshold_bh(spec: TwoGroupsSpec, q: float) -> float:
    """Population BH threshold: the largest root of F(t) = t / q.

    Equivalently the crossing of the secant slope F(t)/t with 1/q, which is
    decreasing because F is concave for monotone alternatives.  Returns 0
    when no positive root exists.
    """
    _require_monotone(spec)
    if not (0.0 < q <= 1.0):
        raise ValueError("q must lie in (0, 1]")
    if q == 1.0:
        return 1.0
    target = 1.0 / q
    if spec.pi0 == 1.0:
        # F(t) = t: the secant slope is identically 1 < 1/q
        return 0.0
    if isinstance(spec.alternative, Lehmann):
        theta = spec.alternative.theta
        base = (target - spec.pi0) / (1.0 - spec.pi0)
        return min(1.0, base ** (-1.0 / (1.0 - theta)))
    # no positive root when the secant slope never reaches 1/q
    lo = 1e-12
    if mixture_F(spec, lo) / lo < target:
        return 0.0
    return _bisect(lambda t: mixture_F(spec, t) - t * target, lo=lo)


def bh_equivalent_level(spec: TwoGroupsSpec, q: float) -> float:
    """The lower level q' = t_q / F(t_q) at which BH reproduces the SL threshold."""
    t_q = population_threshold_tq(spec, q)
    if t_q <= 0.0:
        raise ValueError("BH-equivalent level undefined: population threshold is 0")
    return t_q / mixture_F(spec, t_q)


def oracle_threshold(spec: TwoGroupsSpec, alpha: float) -> float:
    """Largest t with lfdr(t) <= alpha; 0 when the lfdr never dips that low.

    For monotone alternatives this is the population SL threshold at level
    alpha / pi0.  Rejecting exactly {p_i <= tau*} minimizes the weighted
    classification risk at cost ratio lambda = 1/alpha - 1.
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must lie in (0, 1)")
    if spec.pi0 == 0.0:
        return 1.0
    if spec.monotone:
        return population_threshold_tq(spec, alpha / spec.pi0)
    # non-monotone: locate the last downcrossing of the lfdr on a fine grid
    grid = np.linspace(1e-9, 1.0 - 1e-9, 20001)
    ok = true_lfdr(spec, grid) <= alpha
    if not ok.any():
        return 0.0
    last = int(np.nonzero(ok)[0][-1])
    if last == grid.size - 1:
        return 1.0
    lo, hi = grid[last], grid[last + 1]
    return _bisect(lambda t: alpha - true_lfdr(spec, t), lo=lo, hi=hi)


def rho_regret(spec: TwoGroupsSpec, alpha: float, t: float) -> float:
    """Fixed-threshold regret rho(t) = F(tau*) - F(t) - (pi0/alpha)(tau* - t).

    Free of the sample size; non-negative with rho(tau*) = 0 for monotone
    alternatives (it is the first-order Taylor error of the concave F around
    tau*).  For non-monotone alternatives the value is still computed but may
    be negative; a warning flags that the guarantee does not apply.
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must lie in (0, 1)")
    if not (0.0 <= t <= 1.0):
        raise ValueError("t must lie in [0, 1]")
    if not spec.monotone:
        warnings.warn(
            "rho computed for a non-monotone alternative: non-negativity is not guaranteed",
            stacklevel=2,
        )
    tau_star = oracle_threshold(spec, alpha)
    return float(
        mixture_F(spec, tau_star)
        - mixture_F(spec, t)
        - (spec.pi0 / alpha) * (tau_star - t)
    )


_LEHMANN_RE = re.compile(r"^lehmann\(\s*([^,)]+)\s*,\s*([^,)]+)\s*\)$")


def model_preset(name: str) -> TwoGroupsSpec:
    """Resolve a model preset name.

    Supported names: ``lehmann(pi0,theta)`` (e.g. ``lehmann(0.8,0.5)``),
    ``bh64`` (pi0 = 3/4 with the one-tailed z-test shift battery), and
    ``bh64-cauchy`` (same shifts with Cauchy noise).
    """
    key = name.strip().lower()
    if key == "bh64":
        return TwoGroupsSpec(pi0=0.75, alternative=NormalLocation(BH64_SHIFTS))
    if key == "bh64-cauchy":
        return TwoGroupsSpec(pi0=0.75, alternative=CauchyLocation(BH64_SHIFTS))
    match = _LEHMANN_RE.match(key)
    if match:
        pi0 = float(match.group(1))
        theta = float(match.group(2))
        return TwoGroupsSpec(pi0=pi0, alternative=Lehmann(theta))
    raise ValueError(
        f"unknown model preset {name!r}; expected bh64, bh64-cauchy, or lehmann(pi0,theta)"
    )
