"""Probability laws known through their pairings with test functions.

The standardized binomial law is paired with indicators, monomials,
exponentials and rapidly decreasing probes, and compared with the
standard normal limit.
"""

from .exceptions import (
    DeMoivreError,
    DomainError,
    InsufficientDataError,
    NonFiniteResultError,
    OutOfRangeError,
    UnsupportedMethodError,
    UnsupportedProbeError,
)
from .laws import (
    AtomGrid,
    BinomialLaw,
    CauchyLaw,
    GaussianReference,
    StandardizedAtom,
    atom_grid,
    cauchy_density,
    gaussian_density,
)
from .numerics import (
    SQRT_2PI,
    STIRLING_B,
    StirlingConfig,
    gaussian_integral_series,
    log_binomial,
    log_binomial_pmf,
    log_factorial,
)
from .pairing import (
    ConvergenceReport,
    ErrorDecomposition,
    PairingResult,
    convergence_study,
    error_decomposition,
    local_ratio,
    pair_binomial,
    pair_gaussian,
)
from .probes import (
    ComplexExponential,
    DecayBound,
    GaussianWindowedPolynomial,
    HermiteFunction,
    Indicator,
    Monomial,
    Probe,
    Product,
    decay_bound,
    evaluate,
    gaussian_window,
    parse_probe,
)
from .quadrature import BOOLE, SIMPSON, SIMPSON_38, TRAPEZOID, NewtonCotesRule, gaussian_cdf_central, integrate
from .transforms import (
    MomentSequence,
    characteristic_function,
    classical_moment,
    coefficients_from_pgf,
    pgf,
    weak_characteristic_function,
    weak_moment,
)

__version__ = "0.1.0"
