"""Scalar special functions behind the analytic channel formulas.

Provides:
    - erf / erfc wrappers used by every closed form
    - erf_series: truncated Maclaurin expansion of erf, valid for |z| < 1
    - kummer_1f1_half: the confluent hypergeometric function 1F1(-1/2, 1; x),
      i.e. the Laguerre function L_{1/2}(x), which sets the Rician amplitude
      mean
    - folded_normal_pdf / folded_normal_cdf: distribution of the squared
      co-phased channel sum under the CLT

All functions are pure; array inputs are accepted where vectorized use is
natural (the CDF feeds empirical-distribution comparisons over 1e5 points).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as sp

from .errors import ConvergenceError, RegionError

__all__ = [
    "SeriesControl",
    "erf",
    "erf_series",
    "kummer_1f1_half",
    "folded_normal_pdf",
    "folded_normal_cdf",
]


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy for the hand-rolled series."""

    max_terms: int = 200
    tol: float = 1e-12

    def __post_init__(self) -> None:
        if self.max_terms < 1:
            raise ValueError(f"max_terms must be >= 1, got {self.max_terms}")
        if not 0.0 < self.tol < 1.0:
            raise ValueError(f"tol must be in (0, 1), got {self.tol}")


#: default budget for the 1F1 series; converges for K up to ~116
DEFAULT_1F1_CONTROL = SeriesControl(max_terms=200, tol=1e-12)
#: default budget for the erf Maclaurin series on |z| < 1
DEFAULT_ERF_CONTROL = SeriesControl(max_terms=60, tol=1e-12)


def erf(z):
    """Gauss error function; odd, bounded in (-1, 1). Accepts scalars or arrays."""
    out = sp.erf(z)
    return float(out) if np.isscalar(z) else out


def erf_series(z: float, ctrl: SeriesControl = DEFAULT_ERF_CONTROL) -> float:
    """Truncated Maclaurin series of erf: (2/sqrt(pi)) sum (-1)^n z^(2n+1)/(n!(2n+1)).

    Only the region |z| < 1 is accepted: outside it the expansion underlying
    the asymptotic outage analysis is not guaranteed to represent erf, so the
    call signals a region violation instead of returning a number.
    """
    z = float(z)
    if not abs(z) < 1.0:
        raise RegionError(f"erf_series requires |z| < 1, got z={z}")
    total = 0.0
    term = z  # z^(2n+1) / n! running factor, n = 0
    for n in range(ctrl.max_terms):
        contrib = term / (2 * n + 1)
        total += contrib
        if abs(contrib) <= ctrl.tol * abs(total):
            break
        term *= -(z * z) / (n + 1)
    return (2.0 / math.sqrt(math.pi)) * total


def kummer_1f1_half(x: float, ctrl: SeriesControl = DEFAULT_1F1_CONTROL) -> float:
    """Confluent hypergeometric function 1F1(-1/2, 1; x) = L_{1/2}(x).

    For x <= 0 the direct Maclaurin series cancels catastrophically once
    |x| is large, so the Kummer transform 1F1(a, b; x) = e^x 1F1(b-a, b; -x)
    is used there: its terms are all positive and the sum is stable for the
    whole Rician-K range of interest.
    """
    x = float(x)
    if x == 0.0:
        return 1.0
    if x < 0.0:
        # e^x * 1F1(3/2, 1; -x), all-positive terms
        y = -x
        term = 1.0
        total = 1.0
        for n in range(ctrl.max_terms):
            term *= (1.5 + n) * y / ((n + 1) ** 2)
            total += term
            if not math.isfinite(total):
                break  # overflow: the budget cannot resolve this argument
            if term <= ctrl.tol * total:
                return math.exp(x) * total
        raise ConvergenceError(
            f"1F1(-1/2,1;{x}) did not reach tol={ctrl.tol} in {ctrl.max_terms} terms"
        )
    # x > 0: direct series; after n=0 every term has the same sign
    term = 1.0
    total = 1.0
    for n in range(ctrl.max_terms):
        term *= (n - 0.5) * x / ((n + 1) ** 2)
        total += term
        if not math.isfinite(total):
            break
        if abs(term) <= ctrl.tol * abs(total):
            return total
    raise ConvergenceError(
        f"1F1(-1/2,1;{x}) did not reach tol={ctrl.tol} in {ctrl.max_terms} terms"
    )


def _check_gain_domain(x, v3: float) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0):
        raise ValueError("power gain x must be >= 0")
    if v3 <= 0.0:
        raise ValueError(f"variance v3 must be > 0, got {v3}")
    return arr


def folded_normal_pdf(x, m3: float, v3: float):
    """Density of the squared channel sum: x = s^2 with s ~ N(m3, v3) folded at 0.

    f(x) = (1 / (2 sqrt(2 pi v3 x))) [exp(-(sqrt(x)+m3)^2/(2 v3))
                                      + exp(-(sqrt(x)-m3)^2/(2 v3))]

    At x = 0 the density has an integrable x^(-1/2) singularity; +inf is
    returned there so quadrature callers can apply endpoint handling.
    """
    arr = _check_gain_domain(x, v3)
    scalar = np.isscalar(x)
    arr = np.atleast_1d(arr)
    out = np.full(arr.shape, np.inf)
    pos = arr > 0.0
    r = np.sqrt(arr[pos])
    norm = 1.0 / (2.0 * np.sqrt(2.0 * np.pi * v3 * arr[pos]))
    out[pos] = norm * (
        np.exp(-((r + m3) ** 2) / (2.0 * v3)) + np.exp(-((r - m3) ** 2) / (2.0 * v3))
    )
    return float(out[0]) if scalar else out


def folded_normal_cdf(x, m3: float, v3: float):
    """CDF of the squared channel sum.

    F(x) = 1/2 [erf((sqrt(x)+m3)/sqrt(2 v3)) - erf((m3-sqrt(x))/sqrt(2 v3))],
    evaluated through erfc so the deep-outage tail (F ~ 1e-12 and below)
    keeps full relative precision instead of cancelling.
    """
    arr = _check_gain_domain(x, v3)
    r = np.sqrt(arr)
    s = math.sqrt(2.0 * v3)
    out = 0.5 * (sp.erfc((m3 - r) / s) - sp.erfc((m3 + r) / s))
    # guard tiny negative round-off at x = 0
    out = np.maximum(out, 0.0)
    return float(out) if np.isscalar(x) else out
