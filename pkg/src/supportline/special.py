"""Scalar special functions used by the model layer and asymptotics.

Thin wrappers around scipy.special so the rest of the package has a single,
documented source for the normal / Cauchy / gamma primitives.  Accuracy of
the scipy routines is far below the 1e-12 budget assumed elsewhere (ndtr and
ndtri are correctly rounded to ~1 ulp; gammainc uses the standard
series/continued-fraction split).  Tests pin these against independent
identities.
"""

from __future__ import annotations

import numpy as np
from scipy import special as _sp

SQRT_2PI = np.sqrt(2.0 * np.pi)


def norm_pdf(x):
    """Standard normal density."""
    return np.exp(-0.5 * np.square(x)) / SQRT_2PI


def norm_cdf(x):
    """Standard normal cdf Phi(x)."""
    return _sp.ndtr(x)


def norm_sf(x):
    """Standard normal survival function, computed as Phi(-x) for accuracy."""
    return _sp.ndtr(-np.asarray(x, dtype=float))


def norm_quantile(p):
    """Standard normal quantile Phi^{-1}(p)."""
    return _sp.ndtri(p)


def norm_isf(p):
    """Inverse survival function: the x with P{N(0,1) >= x} = p."""
    return -_sp.ndtri(p)


def cauchy_pdf(x):
    """Standard Cauchy density."""
    return 1.0 / (np.pi * (1.0 + np.square(x)))


def cauchy_sf(x):
    """Standard Cauchy survival function."""
    return 0.5 - np.arctan(x) / np.pi


def cauchy_isf(p):
    """Inverse survival function of the standard Cauchy."""
    return np.tan(np.pi * (0.5 - np.asarray(p, dtype=float)))


def gamma_cdf(x, shape, rate=1.0):
    """Cdf of Gamma(shape, rate) via the regularized incomplete gamma."""
    return _sp.gammainc(shape, rate * np.asarray(x, dtype=float))
