"""Scalar building blocks: Stirling's series, log-binomials, and the
termwise-integrated series for the central Gaussian probability.

All mass computations elsewhere in the package are carried out in log
space using these routines and exponentiated at the last step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError

#: Stirling's constant B; the normalising factor of the Gaussian curve.
SQRT_2PI = math.sqrt(2.0 * math.pi)
STIRLING_B = SQRT_2PI
#: Circumference of the unit circle, written ``c`` in the 1733 pamphlet.
CIRCUMFERENCE = 2.0 * math.pi
INV_SQRT_2PI = 1.0 / SQRT_2PI

# Arguments below this are summed exactly instead of using the series.
EXACT_CUTOFF = 20

# Coefficients of 1/n, 1/n^3, 1/n^5 in the Stirling series.
_STIRLING_CORRECTIONS = (1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0)

_EXACT_TABLE = np.array(
    [math.fsum(math.log(k) for k in range(2, n + 1)) for n in range(EXACT_CUTOFF)]
)


@dataclass(frozen=True)
class StirlingConfig:
    """How many correction terms of Stirling's series to keep (0 to 3)."""

    correction_terms: int = 3

    def __post_init__(self):
        if not 0 <= self.correction_terms <= len(_STIRLING_CORRECTIONS):
            raise DomainError(
                f"correction_terms must lie in [0, 3], got {self.correction_terms}"
            )


DEFAULT_STIRLING = StirlingConfig()


def stirling_series(n, cfg: StirlingConfig = DEFAULT_STIRLING):
    """Stirling's asymptotic series for ``ln(n!)``, valid for ``n >= 1``.

    ``n ln n - n + ln(2 pi n)/2`` plus ``cfg.correction_terms`` terms of
    ``1/(12n) - 1/(360n^3) + 1/(1260n^5)``.
    """
    n = np.asarray(n, dtype=float)
    log_n = np.log(n)
    out = n * (log_n - 1.0) + 0.5 * (math.log(CIRCUMFERENCE) + log_n)
    inv = 1.0 / n
    inv2 = inv * inv
    power = inv
    for coeff in _STIRLING_CORRECTIONS[: cfg.correction_terms]:
        out = out + coeff * power
        power = power * inv2
    return out[()] if out.ndim == 0 else out


def log_factorial(n, cfg: StirlingConfig = DEFAULT_STIRLING, *, force_series=False):
    """Natural log of ``n!`` for a non-negative integer or integer array.

    Below ``EXACT_CUTOFF`` the value is an exactly rounded sum of
    ``ln k``; at and above it Stirling's series is used.  Passing
    ``force_series=True`` uses the series for every ``n >= 1``.
    """
    arr = np.asarray(n)
    if arr.dtype.kind not in "iu":
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise DomainError("log_factorial requires integer arguments")
        arr = arr.astype(np.int64)
    if np.any(arr < 0):
        raise DomainError("log_factorial requires n >= 0")

    if arr.ndim == 0:
        k = int(arr)
        if k < EXACT_CUTOFF and not (force_series and k >= 1):
            return float(_EXACT_TABLE[k])
        return float(stirling_series(k, cfg))

    out = np.empty(arr.shape, dtype=float)
    small = arr < EXACT_CUTOFF
    if force_series:
        small = arr == 0
    out[small] = _EXACT_TABLE[arr[small]]
    big = ~small
    if np.any(big):
        out[big] = stirling_series(arr[big], cfg)
    return out


def log_binomial(n, k):
    """``ln C(n, k)`` for ``0 <= k <= n``; ``k`` may be an integer array.

    The two lower factorials are added before subtracting so that
    ``log_binomial(n, k) == log_binomial(n, n - k)`` holds bit for bit.
    """
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    k_arr = np.asarray(k)
    if np.any(k_arr < 0) or np.any(k_arr > n):
        raise DomainError(f"k must lie in [0, {n}]")
    return log_factorial(n) - (log_factorial(k_arr) + log_factorial(n - k_arr))


def gaussian_integral_series(s: float, terms: int = 40) -> float:
    """Partial sum of the series for ``(2 pi)^(-1/2) * int_0^s exp(-x^2/2) dx``.

    Integrating the exponential series term by term gives::

        (2 pi)^(-1/2) * sum_j (-1)^j s^(2j+1) / (2^j j! (2j+1))

    and ``terms`` of these are kept.  The alternating terms shrink
    monotonically for moderate ``s``; beyond ``s ~ 6`` cancellation eats
    the precision and callers should integrate numerically or use the
    complement instead.
    """
    if s < 0:
        raise DomainError("gaussian_integral_series needs s >= 0; use symmetry")
    if terms < 1:
        raise DomainError("terms must be >= 1")
    if s == 0:
        return 0.0
    ratio = -0.5 * s * s
    a = 1.0
    parts = []
    for j in range(terms):
        parts.append(s * a / (2 * j + 1))
        a *= ratio / (j + 1)
    return INV_SQRT_2PI * math.fsum(parts)


def stirling_remainder(m):
    """``ln(m!) - (m ln m - m + ln(2 pi m)/2)`` for integers ``m >= 1``.

    Exact (via the summation table) below ``EXACT_CUTOFF``; the three-term
    correction series above it.
    """
    m = np.asarray(m, dtype=np.int64)
    out = np.empty(m.shape, dtype=float)
    small = m < EXACT_CUTOFF
    ms = m[small].astype(float)
    out[small] = _EXACT_TABLE[m[small]] - (
        ms * (np.log(ms) - 1.0) + 0.5 * (math.log(CIRCUMFERENCE) + np.log(ms))
    )
    mb = m[~small].astype(float)
    inv = 1.0 / mb
    inv2 = inv * inv
    out[~small] = inv * (
        _STIRLING_CORRECTIONS[0]
        + inv2 * (_STIRLING_CORRECTIONS[1] + inv2 * _STIRLING_CORRECTIONS[2])
    )
    return out


def deviance_term(x, mu):
    """``x ln(x/mu) + mu - x`` without the cancellation of the naive form.

    Near ``x == mu`` the odd series in ``v = (x - mu)/(x + mu)`` is summed
    directly.
    """
    x = np.asarray(x, dtype=float)
    mu = np.broadcast_to(np.asarray(mu, dtype=float), x.shape)
    out = np.empty(x.shape, dtype=float)
    diff = x - mu
    near = np.abs(diff) < 0.1 * (x + mu)
    v = diff[near] / (x[near] + mu[near])
    v2 = v * v
    # sum_{j>=1} v^(2j+1)/(2j+1); |v| < 1/19 so 12 terms reach 1e-32.
    term = v * v2
    acc = term / 3.0
    for j in range(2, 13):
        term = term * v2
        acc = acc + term / (2 * j + 1)
    out[near] = diff[near] * v + 2.0 * x[near] * acc
    far = ~near
    xf = x[far]
    muf = mu[far]
    with np.errstate(divide="ignore", invalid="ignore"):
        out[far] = np.where(xf > 0, xf * np.log(xf / muf), 0.0) + muf - xf
    return out


def log_binomial_pmf(n: int, k, p: float):
    """``ln[C(n,k) p^k (1-p)^(n-k)]`` with relative error near 1e-12 or better.

    Equal in exact arithmetic to
    ``log_binomial(n, k) + k ln p + (n - k) ln(1 - p)`` but evaluated in
    saddle-point form, so no intermediate quantity near the mode is much
    larger than the result itself::

        ln w_k = ln(n / (2 pi k (n-k))) / 2
                 + r(n) - r(k) - r(n-k)
                 - D(k, np) - D(n-k, nq)

    where ``r`` is the Stirling remainder and ``D`` the deviance term.
    """
    if not 0.0 < p < 1.0:
        raise DomainError(f"p must lie strictly between 0 and 1, got {p!r}")
    k = np.asarray(k, dtype=np.int64)
    if np.any(k < 0) or np.any(k > n):
        raise DomainError(f"k must lie in [0, {n}]")
    q = 1.0 - p
    scalar = k.ndim == 0
    k = np.atleast_1d(k)
    out = np.empty(k.shape, dtype=float)
    out[k == 0] = n * math.log1p(-p)
    out[k == n] = n * math.log(p)
    inner = (k > 0) & (k < n)
    ki = k[inner]
    kf = ki.astype(float)
    jf = n - kf
    out[inner] = (
        0.5 * np.log(n / (CIRCUMFERENCE * kf * jf))
        + (stirling_remainder(np.int64(n)) - (stirling_remainder(ki) + stirling_remainder(n - ki)))
        - (deviance_term(kf, n * p) + deviance_term(jf, n * q))
    )
    return float(out[0]) if scalar else out
