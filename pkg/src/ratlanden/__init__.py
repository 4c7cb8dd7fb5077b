"""Definite integrals of even rational functions by rational Landen transformations.

A Landen step pushes the 1-form ``R(z) dz`` forward under the degree-2 map
``(z^2 - 1)/(2z)``.  The integral over the real line is unchanged, and
repeating the step drives the coefficients quadratically toward a binomial
limit from which the integral can be read off.
"""

from .agm import AgmTrace, agm, agm_integral
from .errors import AccuracyError, ConvergenceError, DomainError, LandenError
from .exactpoly import GaussianRational, Polynomial, RationalFunction, exact, poly_gcd, symmetric_fiber_sum
from .landen import (
    IterationTrace,
    LandenState,
    evaluate,
    iterate,
    landen_intermediates,
    normalize,
    step,
    step_geometric,
    step_theorem,
)
from .pushforward import (
    LaurentForm,
    RationalOneForm,
    conjugacy_pi_star,
    decimate,
    involution_pullback,
    pi_star,
    pi_star_pair,
    pullback_pi,
    superconvergence_bound,
)
from .quadrature import (
    RootCertificate,
    elliptic_G,
    integrate_halfline,
    integrate_real_line,
    no_real_root_certificate,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
