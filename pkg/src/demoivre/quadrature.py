"""Closed Newton-Cotes rules and their composite application.

Only the four classical rules with positive weights are provided:
trapezoid, Simpson, Simpson's 3/8 and Boole.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exceptions import DomainError, NonFiniteResultError
from .laws import gaussian_density


@dataclass(frozen=True)
class NewtonCotesRule:
    """One panel of a closed rule: ``degree + 1`` equispaced nodes on ``[0, 1]``.

    ``weights`` are normalized to unit panel width, so they sum to one.
    """

    name: str
    degree: int
    weights: tuple

    @property
    def exactness(self) -> int:
        """Highest monomial degree integrated exactly."""
        return self.degree + 1 if self.degree % 2 == 0 else self.degree

    @property
    def order(self) -> int:
        """Convergence order of the composite rule in the panel width."""
        return self.exactness + 1


def _rule(name, degree, *weights):
    total = sum(weights, Fraction(0))
    return NewtonCotesRule(name, degree, tuple(float(Fraction(w) / total) for w in weights))


TRAPEZOID = _rule("trapezoid", 1, 1, 1)
SIMPSON = _rule("simpson", 2, 1, 4, 1)
SIMPSON_38 = _rule("simpson38", 3, 1, 3, 3, 1)
BOOLE = _rule("boole", 4, 7, 32, 12, 32, 7)

RULES = {r.degree: r for r in (TRAPEZOID, SIMPSON, SIMPSON_38, BOOLE)}
RULES_BY_NAME = {r.name: r for r in RULES.values()}


def get_rule(key) -> NewtonCotesRule:
    """Look a rule up by degree (1-4) or name."""
    if isinstance(key, NewtonCotesRule):
        return key
    table = RULES_BY_NAME if isinstance(key, str) else RULES
    try:
        return table[key]
    except KeyError:
        raise DomainError(f"no closed Newton-Cotes rule {key!r}; choose degree 1-4") from None


def composite_nodes(a: float, b: float, rule: NewtonCotesRule, panels: int):
    """Nodes and weights of the composite rule, shared endpoints merged."""
    d = rule.degree
    m = d * panels
    x = np.linspace(a, b, m + 1)
    w = np.zeros(m + 1)
    base = np.asarray(rule.weights)
    for i in range(panels):
        w[i * d : (i + 1) * d + 1] += base
    w *= (b - a) / panels
    return x, w


def integrate(f, a: float, b: float, rule: NewtonCotesRule = BOOLE, panels: int = 64):
    """Composite Newton-Cotes integral of ``f`` over ``[a, b]``.

    ``f`` is called once with the array of all nodes.  Any non-finite
    value raises :class:`NonFiniteResultError` naming the first bad node.
    """
    rule = get_rule(rule)
    if a > b:
        raise DomainError(f"need a <= b, got a={a}, b={b}")
    if panels < 1 or int(panels) != panels:
        raise DomainError(f"panels must be a positive integer, got {panels}")
    if a == b:
        return 0.0
    x, w = composite_nodes(a, b, rule, int(panels))
    y = np.asarray(f(x))
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape)
    bad = ~np.isfinite(y)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise NonFiniteResultError(float(x[i]), y[i].item())
    return math.fsum(w * y) if not np.iscomplexobj(y) else complex(
        math.fsum(w * y.real), math.fsum(w * y.imag)
    )


def integrate_to_tolerance(f, a, b, tol=1e-13, rule=BOOLE, start_panels=64, max_panels=1 << 16):
    """Double the panel count until two successive estimates agree to ``tol``.

    Returns ``(value, panels)``.  The last estimate is returned even if
    ``max_panels`` is reached first.
    """
    panels = start_panels
    prev = integrate(f, a, b, rule, panels)
    while panels < max_panels:
        panels *= 2
        cur = integrate(f, a, b, rule, panels)
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur, panels
        prev = cur
    return prev, panels


# The n-th derivative of the standard normal density is He_n(x) g(x) up to sign.
_ERROR_MODEL = {
    # degree: (derivative order, constant c) with |E| <= c (b-a) h^order max|f^(order)|
    1: (2, 1.0 / 12.0),
    2: (4, 1.0 / 180.0),
    3: (4, 1.0 / 80.0),
    4: (6, 2.0 / 945.0),
}


def gaussian_derivative_bound(order: int) -> float:
    """Measured ``max |d^order/dx^order gaussian_density|`` on a fine grid.

    For ``order = 4`` this is ``3/sqrt(2 pi)``, attained at zero.
    """
    x = np.linspace(-12.0, 12.0, 48_001)
    coeffs = np.zeros(order + 1)
    coeffs[order] = 1.0
    he = np.polynomial.hermite_e.hermeval(x, coeffs)
    return float(np.max(np.abs(he * gaussian_density(x))))


def panels_for_tolerance(a: float, b: float, tol: float, rule: NewtonCotesRule = SIMPSON) -> int:
    """Smallest panel count whose standard error bound for the Gaussian density is below ``tol``."""
    rule = get_rule(rule)
    if tol <= 0:
        raise DomainError("tol must be positive")
    order, c = _ERROR_MODEL[rule.degree]
    bound = gaussian_derivative_bound(order)
    width = b - a
    if width == 0:
        return 1
    # panel width H; node spacing h = H/degree
    h = (tol / (c * width * bound)) ** (1.0 / order)
    return max(1, math.ceil(width / (h * rule.degree)))


def gaussian_cdf_central(s: float, rule: NewtonCotesRule = BOOLE, panels: int = 64) -> float:
    """``P(|Z| <= s)`` for standard normal ``Z`` by composite quadrature on ``[0, s]``."""
    if s < 0:
        raise DomainError("s must be non-negative")
    return 2.0 * integrate(gaussian_density, 0.0, s, rule, panels)


# Coarse settings used to bracket the published 1733 digits.  They are
# representative of hand computation, not a reconstruction of it.
HISTORICAL_SETTINGS = (
    (SIMPSON, 1),
    (SIMPSON_38, 1),
    (BOOLE, 1),
    (SIMPSON, 2),
)


@dataclass(frozen=True)
class HistoricalBracket:
    s: float
    values: tuple  # ((rule name, panels, value), ...)

    @property
    def low(self) -> float:
        return min(v for _, _, v in self.values)

    @property
    def high(self) -> float:
        return max(v for _, _, v in self.values)

    def contains(self, value: float) -> bool:
        return self.low <= value <= self.high

    def settings(self) -> str:
        return "; ".join(f"{name} x{panels}" for name, panels, _ in self.values)


def historical_bracket(s: float, settings=HISTORICAL_SETTINGS) -> HistoricalBracket:
    """Evaluate ``gaussian_cdf_central`` under deliberately coarse settings."""
    values = tuple(
        (rule.name, panels, gaussian_cdf_central(s, rule, panels)) for rule, panels in settings
    )
    return HistoricalBracket(s, values)
