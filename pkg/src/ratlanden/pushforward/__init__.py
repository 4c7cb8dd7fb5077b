"""Direct images of 1-forms: rational forms under ``pi`` and ``z**2``, and the Laurent model."""

from .forms import (
    IOTA,
    MOBIUS,
    MOBIUS_INVERSE,
    PI,
    SQUARE,
    TAU,
    RationalOneForm,
    conjugacy_pi_star,
    involution_pullback,
    pi_star,
    pi_star_pair,
    pullback,
    pullback_pi,
    square_pushforward,
)
from .laurent import LaurentForm, decimate, laurent_norms, superconvergence_bound, superconvergence_probe
