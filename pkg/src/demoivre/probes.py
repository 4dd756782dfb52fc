"""Test functions ("probes") against which laws are paired.

Every probe is an immutable, vectorized callable returning complex
values.  Smooth rapidly decreasing probes (Gaussian-windowed
polynomials, Hermite functions and products involving them) carry a
:class:`DecayBound`; indicators, bare monomials and bare exponentials do
not.

Probe specs understood by :func:`parse_probe`::

    spec   := kind (":" arg)*
    kind   := "indicator" | "monomial" | "expi" | "hermite" | "gwp"
    e.g.      indicator:-1:1   monomial:2   expi:0.5   hermite:3   gwp:1,0,-1
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .exceptions import DomainError, UnsupportedProbeError

DECAY_GRID_HALF_WIDTH = 60.0
DECAY_GRID_POINTS = 240_001
DECAY_INFLATION = 1.1


@dataclass(frozen=True)
class DecayBound:
    """``|phi(x)| <= constant_C * (1 + |x|)**(-order_N)`` for all real ``x``."""

    order_N: int
    constant_C: float

    def envelope(self, x):
        return self.constant_C * (1.0 + np.abs(np.asarray(x, dtype=float))) ** (-self.order_N)

    def sup_beyond(self, radius: float) -> float:
        """Upper bound on ``|phi|`` outside ``[-radius, radius]``."""
        return self.constant_C * (1.0 + radius) ** (-self.order_N)

    def holds_at(self, probe: "Probe", x) -> bool:
        return bool(np.all(np.abs(probe(x)) <= self.envelope(x)))


class Probe:
    """Base class.  Subclasses implement :meth:`_eval` on float arrays."""

    schwartz = False

    def __call__(self, x):
        arr = np.asarray(x, dtype=float)
        out = np.asarray(self._eval(arr), dtype=complex)
        if out.shape != arr.shape:
            out = np.broadcast_to(out, arr.shape).copy()
        return out[()] if out.ndim == 0 else out

    def _eval(self, x):
        raise NotImplementedError

    @property
    def is_real(self) -> bool:
        return True

    def __mul__(self, other: "Probe") -> "Product":
        if not isinstance(other, Probe):
            return NotImplemented
        return Product(self, other)

    def describe(self) -> str:
        return repr(self)


@dataclass(frozen=True)
class Indicator(Probe):
    """Indicator of the closed interval ``[a, b]``."""

    a: float
    b: float

    def __post_init__(self):
        if self.a > self.b:
            raise DomainError(f"indicator needs a <= b, got [{self.a}, {self.b}]")

    def _eval(self, x):
        return ((x >= self.a) & (x <= self.b)).astype(float)

    def describe(self):
        return f"indicator:{self.a:g}:{self.b:g}"


@dataclass(frozen=True)
class Monomial(Probe):
    r: int

    def __post_init__(self):
        if self.r < 0 or int(self.r) != self.r:
            raise DomainError(f"monomial order must be a non-negative integer, got {self.r}")

    def _eval(self, x):
        return x ** self.r

    def describe(self):
        return f"monomial:{self.r}"


@dataclass(frozen=True)
class ComplexExponential(Probe):
    """``exp(i t x)``."""

    t: float

    @property
    def is_real(self):
        return self.t == 0

    def _eval(self, x):
        tx = self.t * x
        return np.cos(tx) + 1j * np.sin(tx)

    def describe(self):
        return f"expi:{self.t:g}"


@dataclass(frozen=True)
class GaussianWindowedPolynomial(Probe):
    """``(c_0 + c_1 x + ... + c_d x^d) * exp(-x^2/2)``."""

    coefficients: tuple

    schwartz = True

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(float(c) for c in self.coefficients))
        if not self.coefficients:
            raise DomainError("need at least one coefficient")

    def _eval(self, x):
        poly = np.polynomial.polynomial.polyval(x, self.coefficients)
        return poly * np.exp(-0.5 * x * x)

    def __add__(self, other):
        if not isinstance(other, GaussianWindowedPolynomial):
            return NotImplemented
        a, b = self.coefficients, other.coefficients
        size = max(len(a), len(b))
        a = a + (0.0,) * (size - len(a))
        b = b + (0.0,) * (size - len(b))
        return GaussianWindowedPolynomial(tuple(x + y for x, y in zip(a, b)))

    def scaled(self, alpha: float) -> "GaussianWindowedPolynomial":
        return GaussianWindowedPolynomial(tuple(alpha * c for c in self.coefficients))

    def describe(self):
        return "gwp:" + ",".join(f"{c:g}" for c in self.coefficients)


def gaussian_window() -> GaussianWindowedPolynomial:
    return GaussianWindowedPolynomial((1.0,))


def hermite_functions(m_max: int, x):
    """Rows ``h_0(x) .. h_{m_max}(x)`` of the orthonormal Hermite functions.

    Uses ``h_{m+1} = x sqrt(2/(m+1)) h_m - sqrt(m/(m+1)) h_{m-1}``, which
    stays bounded where expanding the Hermite polynomial would overflow.
    """
    x = np.asarray(x, dtype=float)
    out = np.empty((m_max + 1,) + x.shape)
    out[0] = math.pi ** -0.25 * np.exp(-0.5 * x * x)
    if m_max >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for m in range(1, m_max):
        out[m + 1] = x * math.sqrt(2.0 / (m + 1)) * out[m] - math.sqrt(m / (m + 1)) * out[m - 1]
    return out


@dataclass(frozen=True)
class HermiteFunction(Probe):
    """Orthonormal Hermite function ``h_m``; ``h_0 = pi^(-1/4) exp(-x^2/2)``."""

    index: int

    schwartz = True

    def __post_init__(self):
        if self.index < 0 or int(self.index) != self.index:
            raise DomainError(f"Hermite index must be a non-negative integer, got {self.index}")

    def _eval(self, x):
        return hermite_functions(self.index, x)[self.index]

    def describe(self):
        return f"hermite:{self.index}"


@dataclass(frozen=True)
class Product(Probe):
    """Pointwise product ``inner(x) * factor(x)``."""

    inner: Probe
    factor: Probe

    def __post_init__(self):
        parts = (self.inner, self.factor)
        smooth = not any(_contains_indicator(p) for p in parts)
        object.__setattr__(self, "schwartz", smooth and any(p.schwartz for p in parts))

    @property
    def is_real(self):
        return self.inner.is_real and self.factor.is_real

    def _eval(self, x):
        return self.inner(x) * self.factor(x)

    def describe(self):
        return f"({self.inner.describe()})*({self.factor.describe()})"


@dataclass(frozen=True, eq=False)
class CustomProbe(Probe):
    """Wrap an arbitrary vectorized callable.  Never carries a decay bound."""

    func: Callable
    label: str = "custom"
    real: bool = True

    @property
    def is_real(self):
        return self.real

    def _eval(self, x):
        return self.func(x)

    def describe(self):
        return self.label


def _contains_indicator(probe: Probe) -> bool:
    if isinstance(probe, Indicator):
        return True
    if isinstance(probe, Product):
        return _contains_indicator(probe.inner) or _contains_indicator(probe.factor)
    return False


def evaluate(probe: Probe, x):
    """Evaluate ``probe`` at ``x`` (scalar or array); always complex."""
    return probe(x)


def has_decay_bound(probe: Probe) -> bool:
    return probe.schwartz and not isinstance(probe, CustomProbe)


def decay_bound(probe: Probe, requested_N: int = 2) -> DecayBound:
    """Constant ``C`` with ``|probe(x)| <= C (1+|x|)^-N``.

    ``C`` is the maximum of ``|probe(x)| (1+|x|)^N`` over a dense grid on
    ``[-60, 60]``, inflated by 10%.  Past 60 the Gaussian factor of every
    supported kind makes the product negligible.
    """
    if not has_decay_bound(probe):
        raise UnsupportedProbeError(
            f"{probe.describe()} is not a rapidly decreasing probe; no decay bound"
        )
    if requested_N < 0:
        raise DomainError("decay order must be non-negative")
    return _decay_bound_cached(probe, int(requested_N))


@lru_cache(maxsize=256)
def _decay_bound_cached(probe: Probe, order: int) -> DecayBound:
    x = np.linspace(-DECAY_GRID_HALF_WIDTH, DECAY_GRID_HALF_WIDTH, DECAY_GRID_POINTS)
    # work in logs: (1+|x|)^N overflows for large N before the window kills it
    with np.errstate(divide="ignore"):
        log_mag = np.log(np.abs(probe(x))) + order * np.log1p(np.abs(x))
    peak = math.exp(float(np.max(log_mag)))
    return DecayBound(order, DECAY_INFLATION * peak)


_KINDS = {
    "indicator": (2, lambda a, b: Indicator(float(a), float(b))),
    "monomial": (1, lambda r: Monomial(int(r))),
    "expi": (1, lambda t: ComplexExponential(float(t))),
    "hermite": (1, lambda m: HermiteFunction(int(m))),
    "gwp": (1, lambda cs: GaussianWindowedPolynomial(tuple(float(c) for c in cs.split(",")))),
}

PROBE_GRAMMAR = (
    "probe := indicator:<a>:<b> | monomial:<r> | expi:<t> | hermite:<m> | gwp:<c0>,<c1>,..."
)


def parse_probe(spec: str) -> Probe:
    """Build a probe from the colon-delimited mini-grammar in the module docstring."""
    kind, _, rest = spec.strip().partition(":")
    kind = kind.lower()
    if kind not in _KINDS:
        raise ValueError(f"unknown probe kind {kind!r}; expected {PROBE_GRAMMAR}")
    arity, build = _KINDS[kind]
    # split from the left so negative numbers such as indicator:-1:1 survive
    args = rest.split(":") if rest else []
    if len(args) != arity or any(a == "" for a in args):
        raise ValueError(f"probe {spec!r} needs {arity} argument(s); {PROBE_GRAMMAR}")
    try:
        return build(*args)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"cannot parse probe {spec!r}: {exc}") from exc
