"""Generating function, moments, characteristic function and their
windowed ("weak") counterparts.

Each quantity here is a pairing with a particular probe: ``z^k`` for the
generating function, ``x^r`` for moments, ``exp(itx)`` for the
characteristic function, and ``x^r phi(x)`` or ``exp(itx) phi(x)`` with
a rapidly decreasing window ``phi`` for the weak versions.  The weak
versions stay finite for laws without moments, such as the Cauchy law.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, OutOfRangeError, UnsupportedProbeError
from .laws import BinomialLaw, atom_grid
from .pairing import pair_binomial
from .probes import ComplexExponential, Monomial, Probe, decay_bound, has_decay_bound
from .quadrature import integrate_to_tolerance

MAX_MOMENT_ORDER = 20
WEAK_TAIL_TOL = 1e-14
WEAK_DECAY_ORDERS = range(3, 61)


@dataclass(frozen=True)
class MomentSequence:
    """Moments ``m_0 .. m_rmax`` of a law, raw or standardized."""

    values: tuple
    standardized: bool

    def __getitem__(self, r):
        return self.values[r]

    def __len__(self):
        return len(self.values)


def _complex_power(base: complex, n: int) -> complex:
    result = 1 + 0j
    while n:
        if n & 1:
            result *= base
        base *= base
        n >>= 1
    return result


def pgf(law: BinomialLaw, z: complex) -> complex:
    """Probability generating function ``(p z + q)^n`` by repeated squaring."""
    return _complex_power(law.p * complex(z) + law.q, law.n)


def characteristic_function(law: BinomialLaw, t: float, method: str = "closed") -> complex:
    """``E exp(i t S_n) = (p e^{it} + q)^n`` for the raw count ``S_n``.

    ``method="pairing"`` sums ``w_k exp(itk)`` over the atoms instead.
    """
    if method == "closed":
        # polar form: |p e^{it} + q|^2 = 1 - 4pq sin^2(t/2) keeps the modulus <= 1
        half = math.sin(0.5 * t)
        shrink = 4.0 * law.p * law.q * half * half
        if shrink >= 1.0:
            return 0j
        log_mod = 0.5 * law.n * math.log1p(-shrink)
        arg = law.n * math.atan2(law.p * math.sin(t), law.q + law.p * math.cos(t))
        return cmath.rect(math.exp(log_mod), arg)
    if method == "pairing":
        return pair_binomial(law, ComplexExponential(t), standardized=False).value
    raise DomainError(f"unknown method {method!r}")


def coefficients_from_pgf(law: BinomialLaw, size: int | None = None) -> np.ndarray:
    """Recover ``w_0 .. w_n`` from the generating function on roots of unity.

    The generating function is sampled at the ``size``-th roots of unity
    (default: the smallest power of two above ``n``) and inverted with a
    discrete Fourier transform.
    """
    if size is None:
        size = 1 << law.n.bit_length()
    if size <= law.n:
        raise DomainError(f"need more than n = {law.n} roots of unity, got {size}")
    roots = np.exp(2j * np.pi * np.arange(size) / size)
    samples = np.array([pgf(law, z) for z in roots])
    coeffs = np.fft.fft(samples) / size
    return coeffs[: law.n + 1].real


def classical_moment(law: BinomialLaw, r: int, standardized: bool = True) -> float:
    """``sum_k w_k x_k^r`` (standardized) or ``sum_k w_k k^r`` (raw)."""
    if r < 0 or int(r) != r:
        raise DomainError(f"moment order must be a non-negative integer, got {r}")
    if r > MAX_MOMENT_ORDER:
        raise OutOfRangeError(
            f"moments beyond order {MAX_MOMENT_ORDER} lose accuracy to cancellation"
        )
    return pair_binomial(law, Monomial(int(r)), standardized=standardized).value.real


def moment_sequence(law: BinomialLaw, r_max: int, standardized: bool = True) -> MomentSequence:
    return MomentSequence(
        tuple(classical_moment(law, r, standardized) for r in range(r_max + 1)), standardized
    )


def _density_parts(density):
    """Accept a law object (``.density``, ``.max_density``) or a bare callable."""
    if hasattr(density, "density"):
        return density.density, float(density.max_density)
    x = np.linspace(-50.0, 50.0, 100_001)
    return density, float(np.max(np.abs(density(x))))


def truncation_radius(window: Probe, r: int, sup_density: float, tol: float = WEAK_TAIL_TOL) -> float:
    """Smallest ``R`` with ``C_N (1+R)^(-N) max(1, R^r) sup_density <= tol``.

    Every decay order ``N >= r + 3`` in ``WEAK_DECAY_ORDERS`` is tried and
    the smallest radius kept.
    """
    best = math.inf
    for order in WEAK_DECAY_ORDERS:
        if order < r + 3:
            continue
        bound = decay_bound(window, order)

        def excess(radius):
            return (
                math.log(bound.constant_C * sup_density)
                - order * math.log1p(radius)
                + r * math.log(max(1.0, radius))
                - math.log(tol)
            )

        lo, hi = 0.0, 1.0
        while excess(hi) > 0:
            hi *= 2.0
            if hi > 1e12:
                break
        else:
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                lo, hi = (mid, hi) if excess(mid) > 0 else (lo, mid)
            best = min(best, hi)
    if not math.isfinite(best):
        raise DomainError("no decay order gives a finite truncation radius")
    return best


def _weak_integral(density, weight, window: Probe, r: int):
    if not has_decay_bound(window):
        raise UnsupportedProbeError(f"window {window.describe()} carries no decay bound")
    func, sup = _density_parts(density)
    radius = truncation_radius(window, r, sup)
    value, _ = integrate_to_tolerance(
        lambda x: weight(x) * window(x).real * func(x), -radius, radius, tol=1e-14, start_panels=256
    )
    if not window.is_real:
        imag, _ = integrate_to_tolerance(
            lambda x: weight(x) * window(x).imag * func(x), -radius, radius, tol=1e-14,
            start_panels=256,
        )
        return complex(value, imag)
    return value


def weak_moment(density, r: int, window: Probe):
    """``<T, x^r phi>``: the ``r``-th moment seen through the window ``phi``.

    ``density`` is a law with ``.density`` and ``.max_density`` (see
    :class:`~demoivre.laws.CauchyLaw`) or a bare vectorized callable.
    """
    if r < 0 or int(r) != r:
        raise DomainError(f"moment order must be a non-negative integer, got {r}")
    return _weak_integral(density, lambda x: x ** int(r), window, int(r))


def weak_characteristic_function(density, t: float, window: Probe, normalized: bool = False):
    """``<T, exp(itx) phi>``, optionally divided by ``<T, phi>``."""
    re = _weak_integral(density, lambda x: np.cos(t * x), window, 0)
    im = _weak_integral(density, lambda x: np.sin(t * x), window, 0)
    value = complex(re) + 1j * complex(im)
    if normalized:
        value /= weak_moment(density, 0, window)
    return value
