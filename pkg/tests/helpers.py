"""Shared test oracles.

These deliberately re-derive quantities through routes independent of the
library code paths they check (block-merging PAVA vs. hull scan, direct
objective evaluation for the winning-measure argument, brute-force argmin
scans for procedures).
"""

from __future__ import annotations

import numpy as np


def pava_grenander(sample) -> tuple[np.ndarray, np.ndarray]:
    """Monotone-density slopes via pool-adjacent-violators block merging.

    Operates on the same vertex arrays as the hull scan and computes every
    block value with the identical expression (y[hi]-y[lo])/(x[hi]-x[lo]),
    so agreement with lcm_fit is required to be floating-point exact.
    Returns (knots, slopes).
    """
    m = sample.m
    x = np.concatenate(([0.0], sample.sorted_values, [1.0]))
    y = np.concatenate(([0.0], np.arange(1, m + 1) / m, [1.0]))
    keep = np.nonzero(np.diff(x, append=np.inf) > 0.0)[0]
    x, y = x[keep], y[keep]

    def slope(lo, hi):
        return (y[hi] - y[lo]) / (x[hi] - x[lo])

    blocks: list[tuple[int, int]] = []
    for j in range(1, x.size):
        lo = j - 1
        # merge while the antitonic constraint is violated (or slopes tie)
        while blocks and slope(*blocks[-1]) <= slope(lo, j):
            lo = blocks.pop()[0]
        blocks.append((lo, j))
    knots = np.array([x[0]] + [x[hi] for _, hi in blocks])
    slopes = np.array([slope(lo, hi) for lo, hi in blocks])
    return knots, slopes


def sl_brute_force(pvalues, q) -> tuple[int, float]:
    """Exhaustive argmin over k of p_(k) - qk/m, keeping the last minimizer."""
    p = np.sort(np.asarray(pvalues, dtype=float))
    m = p.size
    aug = np.concatenate(([0.0], p))
    objective = [aug[k] - q * k / m for k in range(m + 1)]
    best = min(objective)
    r = max(k for k, v in enumerate(objective) if v == best)
    return r, aug[r]


def bh_brute_force(pvalues, q) -> tuple[int, float]:
    """Direct scan for the largest k with p_(k) <= qk/m."""
    p = np.sort(np.asarray(pvalues, dtype=float))
    m = p.size
    r = 0
    for k in range(1, m + 1):
        if p[k - 1] <= q * k / m:
            r = k
    return r, q * r / m


def winning_measure(fixed_pvalues, q) -> float:
    """Lebesgue measure of {p_m : the procedure's threshold equals p_m}.

    phi(u) = min_k (p_(k) - qk/m) on the sample (fixed..., u) is continuous,
    non-decreasing, and piecewise linear in u with slopes in {0, 1}; the
    measure of the unit-slope set equals the total rise.  Evaluating phi at
    0, every fixed p-value, and 1 and summing the rises telescopes to that
    total.
    """
    fixed = np.asarray(fixed_pvalues, dtype=float)
    m = fixed.size + 1

    def phi(u):
        aug = np.concatenate(([0.0], np.sort(np.append(fixed, u))))
        return float(np.min(aug - q * np.arange(m + 1) / m))

    points = np.concatenate(([0.0], np.sort(fixed), [1.0]))
    values = [phi(u) for u in points]
    return sum(b - a for a, b in zip(values, values[1:]))
