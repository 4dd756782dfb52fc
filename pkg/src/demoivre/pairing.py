"""Pairings of the standardized binomial and of the standard normal
against probes, and the error analysis comparing them.

``pair_binomial`` computes the finite sum

    <T_n, phi> = sum_k C(n,k) p^k q^(n-k) phi((k - np)/sqrt(npq))

and ``pair_gaussian`` the integral of ``phi`` against the standard normal
density.  ``error_decomposition`` splits their difference into a local
(term-by-term) part, a Riemann-sum part and a certified tail.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    DomainError,
    InsufficientDataError,
    UnsupportedMethodError,
    UnsupportedProbeError,
)
from .laws import BinomialLaw, gaussian_density, iter_atom_blocks
from .numerics import gaussian_integral_series, log_binomial, log_binomial_pmf
from .probes import Indicator, Probe, decay_bound, has_decay_bound
from .quadrature import integrate_to_tolerance

DEFAULT_CUTOFF = 10.0
GAUSSIAN_RADIUS = 12.0
# 2 P(Z > 12); mass ignored by truncating Gaussian pairings to [-12, 12]
GAUSSIAN_TRUNCATION_MASS = math.erfc(GAUSSIAN_RADIUS / math.sqrt(2.0))
SERIES_LIMIT = 6.0
# Errors at or below this are treated as exact zeros in convergence fits.
ZERO_ERROR = 1e-13


def _csum(values) -> complex:
    """Correctly rounded sum of a complex array (order-independent)."""
    return complex(math.fsum(values.real), math.fsum(values.imag))


@dataclass(frozen=True)
class PairingResult:
    """Value of ``<T_n, phi>`` split at ``|x_k| = cutoff_M``.

    ``tail_certificate`` is ``None`` when the probe has no decay bound.
    """

    value: complex
    bulk_value: complex
    tail_value: complex
    tail_certificate: float | None
    cutoff_M: float

    @property
    def real(self) -> float:
        return self.value.real


# Decay orders tried when no single order is requested.
DECAY_ORDERS = range(0, 25, 2)


def sup_beyond(probe: Probe, cutoff_M: float, order_N: int | None = None) -> float:
    """Certified bound on ``|phi(x)|`` for ``|x| > cutoff_M``.

    Every order ``N`` gives a valid bound ``C_N (1 + M)^(-N)``; unless
    ``order_N`` is fixed, the smallest over ``DECAY_ORDERS`` is returned.
    """
    orders = DECAY_ORDERS if order_N is None else (order_N,)
    return min(decay_bound(probe, n).sup_beyond(cutoff_M) for n in orders)


def tail_certificate(probe: Probe, cutoff_M: float, order_N: int | None = None) -> float | None:
    """Chebyshev bound on the atoms beyond ``cutoff_M``.

    Tail mass is at most ``1/M^2`` and ``|phi|`` there is at most
    ``C_N (1 + M)^(-N)``.  ``None`` for probes without a decay bound.
    """
    if not has_decay_bound(probe):
        return None
    return sup_beyond(probe, cutoff_M, order_N) / cutoff_M**2


def pair_binomial(
    law: BinomialLaw,
    probe: Probe,
    cutoff_M: float = DEFAULT_CUTOFF,
    *,
    standardized: bool = True,
    parallel: bool = False,
    workers: int | None = None,
    block_size: int | None = None,
) -> PairingResult:
    """Exact pairing of the binomial law with ``probe``.

    Atoms are visited in increasing ``k`` and each partition is summed with
    ``math.fsum``, so the result is bit-reproducible.  With
    ``standardized=False`` the probe is evaluated at the raw count ``k``
    instead of ``x_k`` (the partition still uses ``x_k``).

    ``parallel=True`` splits the atoms into blocks summed on a thread pool;
    the partial sums are combined with ``fsum`` as well, so the result
    agrees with the sequential one to within a few ulp.
    """
    if not cutoff_M > 0:
        raise DomainError("cutoff_M must be positive")

    def partial(block):
        points = block.x if standardized else block.k.astype(float)
        terms = block.weights * probe(points)
        inside = np.abs(block.x) <= cutoff_M
        return _csum(terms[inside]), _csum(terms[~inside])

    if parallel:
        size = block_size or max(1024, (law.n + 1) // (4 * (workers or 4)) + 1)
        blocks = list(iter_atom_blocks(law, size))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(partial, blocks))
    else:
        parts = [partial(b) for b in iter_atom_blocks(law, block_size)]

    bulk = _csum(np.array([b for b, _ in parts], dtype=complex))
    tail = _csum(np.array([t for _, t in parts], dtype=complex))
    return PairingResult(
        value=bulk + tail,
        bulk_value=bulk,
        tail_value=tail,
        tail_certificate=tail_certificate(probe, cutoff_M),
        cutoff_M=float(cutoff_M),
    )


def gaussian_interval_probability(a: float, b: float, method: str = "series") -> float:
    """``P(a <= Z <= b)`` for standard normal ``Z``.

    The series method uses the termwise-integrated series on ``[0, |s|]``
    with odd symmetry; beyond ``|s| = 6`` it switches to ``1/2`` minus a
    quadrature of the upper tail to avoid cancellation.
    """
    if a > b:
        raise DomainError("need a <= b")
    if method == "series":
        return _half_mass(b) - _half_mass(a)
    if method == "quadrature":
        lo, hi = max(a, -GAUSSIAN_RADIUS), min(b, GAUSSIAN_RADIUS)
        if lo >= hi:
            return 0.0
        value, _ = integrate_to_tolerance(gaussian_density, lo, hi, tol=1e-15)
        return value
    raise UnsupportedMethodError(f"unknown method {method!r}")


def _half_mass(s: float) -> float:
    """Signed ``P(0 <= Z <= s)``."""
    if math.isinf(s):
        return math.copysign(0.5, s)
    mag = abs(s)
    if mag <= SERIES_LIMIT:
        half = gaussian_integral_series(mag, 40 if mag <= 3 else 120)
    else:
        upper, _ = integrate_to_tolerance(gaussian_density, mag, mag + GAUSSIAN_RADIUS, tol=1e-15)
        half = 0.5 - upper
    return math.copysign(half, s)


def pair_gaussian(probe: Probe, method: str = "quadrature") -> complex:
    """``(2 pi)^(-1/2) * integral of phi(x) exp(-x^2/2) dx``.

    ``series`` applies to indicators only.  ``quadrature`` integrates over
    ``[-12, 12]`` with composite Boole, doubling panels until two estimates
    agree to 1e-13; the neglected mass is ``GAUSSIAN_TRUNCATION_MASS``.
    """
    if method == "series":
        if not isinstance(probe, Indicator):
            raise UnsupportedMethodError(
                f"series method only applies to indicators, not {probe.describe()}"
            )
        return complex(gaussian_interval_probability(probe.a, probe.b, "series"))
    if method != "quadrature":
        raise UnsupportedMethodError(f"unknown method {method!r}")
    if isinstance(probe, Indicator):
        return complex(gaussian_interval_probability(probe.a, probe.b, "quadrature"))
    value, _ = integrate_to_tolerance(
        lambda x: probe(x) * gaussian_density(x), -GAUSSIAN_RADIUS, GAUSSIAN_RADIUS, tol=1e-13
    )
    return complex(value)


def gaussian_truncation_bound(probe: Probe) -> float:
    """Bound on what ``pair_gaussian`` drops outside ``[-12, 12]``.

    Available only for probes with a decay bound (``sup|phi|`` times the
    neglected Gaussian mass).
    """
    bound = decay_bound(probe, 0)
    return bound.constant_C * GAUSSIAN_TRUNCATION_MASS


def continuity_corrected_limit(law: BinomialLaw, probe: Indicator) -> float:
    """Gaussian mass of the indicator widened by half a grid step on each side."""
    if not isinstance(probe, Indicator):
        raise UnsupportedProbeError("continuity correction applies to indicators only")
    half = 0.5 * law.dx
    return gaussian_interval_probability(probe.a - half, probe.b + half, "series")


@dataclass(frozen=True)
class ErrorDecomposition:
    """Pieces of ``|<T_n, phi> - <T_N, phi>|``.

    ``local_error + riemann_error + tail_bound`` over-covers
    ``total_error`` by the triangle inequality.
    """

    local_error: float
    tail_bound: float
    riemann_error: float
    total_error: float
    cutoff_M: float

    @property
    def covered(self) -> float:
        return self.local_error + self.riemann_error + self.tail_bound

    @property
    def is_sound(self) -> bool:
        return self.covered >= self.total_error


def error_decomposition(
    law: BinomialLaw, probe: Probe, cutoff_M: float = DEFAULT_CUTOFF, order_N: int | None = None
) -> ErrorDecomposition:
    """Split the pairing error into the three pieces of the classical proof.

    * local: ``|sum_bulk (w_k - g(x_k) dx) phi(x_k)|``
    * riemann: ``|sum_bulk g(x_k) phi(x_k) dx - int_{-M}^{M} g phi|``
    * tail: Chebyshev certificate for the atoms plus ``sup|phi| P(|Z| > M)``
      for the Gaussian side.
    """
    if not has_decay_bound(probe):
        raise UnsupportedProbeError(f"{probe.describe()} carries no decay bound")
    if cutoff_M < 1:
        raise DomainError("cutoff_M must be at least 1")

    local_parts, riemann_parts = [], []
    for block in iter_atom_blocks(law):
        inside = np.abs(block.x) <= cutoff_M
        x = block.x[inside]
        phi = probe(x)
        gauss_cell = gaussian_density(x) * law.dx
        local_parts.append(_csum((block.weights[inside] - gauss_cell) * phi))
        riemann_parts.append(_csum(gauss_cell * phi))
    local = abs(_csum(np.array(local_parts, dtype=complex)))
    riemann_sum = _csum(np.array(riemann_parts, dtype=complex))
    bulk_integral, _ = integrate_to_tolerance(
        lambda x: probe(x) * gaussian_density(x), -cutoff_M, cutoff_M, tol=1e-15
    )
    riemann = abs(riemann_sum - bulk_integral)

    sup_tail = sup_beyond(probe, cutoff_M, order_N)
    gaussian_tail = sup_tail * math.erfc(cutoff_M / math.sqrt(2.0))
    tail = sup_tail / cutoff_M**2 + gaussian_tail

    total = abs(pair_binomial(law, probe, cutoff_M).value - pair_gaussian(probe))
    return ErrorDecomposition(local, tail, riemann, total, float(cutoff_M))


@dataclass(frozen=True)
class ConvergenceReport:
    """Errors ``|<T_n,phi> - <T_N,phi>|`` along ``n_values`` and their log-log slope.

    Errors at or below ``ZERO_ERROR`` are listed in ``zero_error_n`` and
    left out of the fit.  When every error vanishes (odd probe against a
    symmetric law) ``fitted_slope`` is NaN and ``note`` says so.
    """

    n_values: tuple
    errors: tuple
    fitted_slope: float
    probe_description: str
    pairings: tuple = ()
    limit: complex = 0j
    zero_error_n: tuple = ()
    note: str = ""

    @property
    def strictly_decreasing(self) -> bool:
        return all(b < a for a, b in zip(self.errors, self.errors[1:]))


def fit_loglog_slope(n_values, errors) -> float:
    """Ordinary least-squares slope of ``log(error)`` against ``log(n)``."""
    slope, _ = np.polyfit(np.log(np.asarray(n_values, float)), np.log(np.asarray(errors, float)), 1)
    return float(slope)


def convergence_study(
    p: float,
    probe: Probe,
    n_values,
    cutoff_M: float = DEFAULT_CUTOFF,
    *,
    parallel: bool = False,
) -> ConvergenceReport:
    n_values = tuple(int(n) for n in n_values)
    if any(n < 4 for n in n_values):
        raise DomainError("every n must be at least 4")
    limit = pair_gaussian(probe, "quadrature")
    pairings, errors = [], []
    for n in n_values:
        value = pair_binomial(BinomialLaw(n, p), probe, cutoff_M, parallel=parallel).value
        pairings.append(value)
        errors.append(abs(value - limit))

    usable = [(n, e) for n, e in zip(n_values, errors) if e > ZERO_ERROR]
    zeros = tuple(n for n, e in zip(n_values, errors) if e <= ZERO_ERROR)
    note = ""
    if not usable:
        slope = math.nan
        note = "all errors vanish: exact symmetry of probe and law"
    elif len(usable) < 3:
        raise InsufficientDataError(
            f"only {len(usable)} non-zero errors; need at least 3 to fit a slope"
        )
    else:
        slope = fit_loglog_slope(*zip(*usable))
        if zeros:
            note = f"exact-zero errors excluded at n={list(zeros)}"
    return ConvergenceReport(
        n_values=n_values,
        errors=tuple(errors),
        fitted_slope=slope,
        probe_description=probe.describe(),
        pairings=tuple(pairings),
        limit=limit,
        zero_error_n=zeros,
        note=note,
    )


@dataclass(frozen=True)
class LocalRatio:
    n: int
    l: int
    exact_log_ratio: float
    demoivre_log_ratio: float

    @property
    def difference(self) -> float:
        return self.exact_log_ratio - self.demoivre_log_ratio


def local_ratio(n: int, l: int, p: float | None = None) -> LocalRatio:
    """Log of the ratio of the term ``l`` steps from the middle to the middle term.

    Without ``p`` this is the symmetric case: ``ln[C(n, n/2+l)/C(n, n/2)]``
    against ``-2 l^2 / n``.  With ``p`` (``np`` must be an integer) the
    binomial terms at ``np + l`` and ``np`` are compared against
    ``-l^2 / (2npq)``.
    """
    if p is None:
        if n % 2:
            raise DomainError("the symmetric form needs even n")
        if abs(l) > n // 2:
            raise DomainError(f"|l| must not exceed n/2 = {n // 2}")
        mid = n // 2
        exact = log_binomial(n, mid + l) - log_binomial(n, mid)
        return LocalRatio(n, l, float(exact), -2.0 * l * l / n)

    mid = round(n * p)
    if abs(mid - n * p) > 1e-9 * n:
        raise DomainError("np must be an integer for the general form")
    if not -mid <= l <= n - mid:
        raise DomainError(f"l must lie in [{-mid}, {n - mid}]")
    exact = log_binomial_pmf(n, mid + l, p) - log_binomial_pmf(n, mid, p)
    return LocalRatio(n, l, float(exact), -l * l / (2.0 * n * p * (1.0 - p)))


def local_limit_ratios(law: BinomialLaw, radius: float = 2.0):
    """``x_k`` and ``w_k / (g(x_k) dx)`` for the atoms with ``|x_k| <= radius``."""
    ratios_x, ratios = [], []
    for block in iter_atom_blocks(law):
        inside = np.abs(block.x) <= radius
        x = block.x[inside]
        ratios_x.append(x)
        ratios.append(block.weights[inside] / (gaussian_density(x) * law.dx))
    return np.concatenate(ratios_x), np.concatenate(ratios)
