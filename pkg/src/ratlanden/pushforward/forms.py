"""Rational 1-forms ``R(z) dz`` and their direct images under degree-2 maps.

The branched cover is ``pi(z) = (z**2 - 1) / (2 z)``, whose fibre over ``w``
is ``z**2 - 2 w z - 1 = 0``.  Its deck involution is ``iota(z) = -1/z``;
``tau(z) = -z`` commutes with it.  Conjugating by ``M(z) = (z + i)/(z - i)``
turns ``pi`` into ``F(u) = u**2``, which gives an independent second route
to the same direct image.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..exactpoly import I, Polynomial, RationalFunction, fiber_reduce, poly_gcd, symmetric_fiber_sum
from ..quadrature import RootCertificate, no_real_root_certificate, real_root_count

__all__ = [
    "RationalOneForm",
    "PI",
    "IOTA",
    "TAU",
    "MOBIUS",
    "MOBIUS_INVERSE",
    "pullback",
    "pi_star",
    "pi_star_pair",
    "pullback_pi",
    "involution_pullback",
    "square_pushforward",
    "conjugacy_pi_star",
]

_Z = Polynomial([0, 1])

PI = RationalFunction(Polynomial([-1, 0, 1]), Polynomial([0, 2]))
TAU = RationalFunction(Polynomial([0, -1]))
IOTA = RationalFunction(Polynomial([-1]), _Z)
MOBIUS = RationalFunction(Polynomial([I, 1]), Polynomial([-I, 1]))
MOBIUS_INVERSE = RationalFunction(Polynomial([I, I]), Polynomial([-1, 1]))
SQUARE = RationalFunction(Polynomial([0, 0, 1]))

# pi'(z) = (z^2 + 1) / (2 z^2); a section's derivative is 1/pi' at the fibre point
_INV_PI_PRIME = RationalFunction(Polynomial([0, 0, 2]), Polynomial([1, 0, 1]))
_FIBER_E1 = Polynomial([0, 2])  # z1 + z2 = 2w
_FIBER_E2 = Polynomial([-1])  # z1 z2 = -1


@dataclass(frozen=True)
class RationalOneForm:
    """The 1-form ``R(var) d(var)``."""

    R: RationalFunction
    var: str = "z"

    def __post_init__(self):
        if not isinstance(self.R, RationalFunction):
            object.__setattr__(self, "R", RationalFunction(self.R))

    @classmethod
    def from_coefficients(cls, num, den, var: str = "z") -> "RationalOneForm":
        """Build from coefficient lists, lowest power first."""
        return cls(RationalFunction(Polynomial(num), Polynomial(den)), var)

    # parity: dz is odd, so the form is even exactly when R is odd
    def is_even(self) -> bool:
        return self.R.is_odd()

    def is_odd(self) -> bool:
        return self.R.is_even()

    @property
    def degree(self) -> int:
        return self.R.degree

    def is_zero(self) -> bool:
        return not self.R

    def integrable_over_reals(self) -> bool:
        """No real poles and at least quadratic decay at infinity."""
        num, den = self.R.num, self.R.den
        if num and den.degree < num.degree + 2:
            return False
        if den.is_real():
            cert = no_real_root_certificate(den)
            return cert is RootCertificate.POSITIVE
        # a real root of a complex polynomial is a common root of its real and imaginary parts
        common = poly_gcd(den.real_part(), den.imag_part())
        return common.degree <= 0 or real_root_count(common) == 0

    def __add__(self, other: "RationalOneForm") -> "RationalOneForm":
        _check_var(self, other)
        return RationalOneForm(self.R + other.R, self.var)

    def __sub__(self, other: "RationalOneForm") -> "RationalOneForm":
        _check_var(self, other)
        return RationalOneForm(self.R - other.R, self.var)

    def __neg__(self) -> "RationalOneForm":
        return RationalOneForm(-self.R, self.var)

    def __mul__(self, c) -> "RationalOneForm":
        return RationalOneForm(self.R * c, self.var)

    __rmul__ = __mul__

    def format(self) -> str:
        body = self.R.format(self.var)
        if " " in body and "/" not in body:
            body = f"({body})"
        return f"{body} d{self.var}"

    def __str__(self):
        return self.format()


def _check_var(a: RationalOneForm, b: RationalOneForm) -> None:
    if a.var != b.var:
        raise ValueError(f"forms live in different variables ({a.var} vs {b.var})")


def _as_form(phi) -> RationalOneForm:
    return phi if isinstance(phi, RationalOneForm) else RationalOneForm(phi)


def pullback(phi, g: RationalFunction, var: str = "z") -> RationalOneForm:
    """``g^*(R(w) dw) = R(g(z)) g'(z) dz`` for a rational map ``g``."""
    phi = _as_form(phi)
    return RationalOneForm(phi.R.compose(g) * g.derivative(), var)


def pi_star(phi) -> RationalOneForm:
    """Direct image under ``pi``: the sum of ``R(z)/pi'(z)`` over the fibre of ``w``."""
    phi = _as_form(phi)
    summand = phi.R * _INV_PI_PRIME
    return RationalOneForm(symmetric_fiber_sum(summand, _FIBER_E1, _FIBER_E2), "w")


def pi_star_pair(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Unreduced direct image of ``num/den dz`` over the denominator ``den(z1) den(z2)``.

    With ``z2 = -1/z1`` the section derivatives collapse to
    ``2 z1/(z1 - z2)`` and ``2 z2/(z2 - z1)``, so the numerator is
    ``2 (z1 P(z1) Q(z2) - z2 P(z2) Q(z1)) / (z1 - z2)``.  Writing
    ``z P(z) = A1 z + A0`` and ``Q(z) = B1 z + B0`` on the fibre reduces it to
    ``2 (A1 B0 - A0 B1)``.  No common factors are cancelled, which keeps the
    degree fixed along a Landen iteration.
    """
    a1, a0 = fiber_reduce(num * _Z, _FIBER_E1, _FIBER_E2)
    b1, b0 = fiber_reduce(den, _FIBER_E1, _FIBER_E2)
    new_num = (a1 * b0 - a0 * b1) * 2
    new_den = b1 * b1 * _FIBER_E2 + b1 * b0 * _FIBER_E1 + b0 * b0
    return new_num, new_den


def pullback_pi(psi) -> RationalOneForm:
    """``pi^* psi`` with ``w = (z^2 - 1)/(2z)``."""
    return pullback(psi, PI, "z")


def involution_pullback(phi, which: str) -> RationalOneForm:
    """Pull back by ``tau(z) = -z`` or the deck involution ``iota(z) = -1/z``."""
    phi = _as_form(phi)
    if which == "tau":
        return RationalOneForm(-phi.R.reflect(), phi.var)
    if which == "iota":
        return pullback(phi, IOTA, phi.var)
    raise ValueError(f"unknown involution {which!r}; expected 'tau' or 'iota'")


def square_pushforward(phi, var: str = "v") -> RationalOneForm:
    """Direct image under ``F(u) = u**2`` by the even/odd split.

    With sections ``+-sqrt(v)`` of derivative ``+-1/(2 sqrt(v))``,
    ``F_*(R du) = (R(s) - R(-s)) / (2 s) dv`` at ``s**2 = v``.  The numerator
    ``N(u) D(-u) - N(-u) D(u)`` is odd and ``D(u) D(-u)`` is even, so both
    become polynomials in ``v`` after dividing out ``u``.
    """
    phi = _as_form(phi)
    n, d = phi.R.num, phi.R.den
    odd = n * d.reflect() - n.reflect() * d
    even = d * d.reflect()
    top = Polynomial(odd.coeffs[1::2])  # odd(u) / u as a polynomial in v = u^2
    bottom = Polynomial(even.coeffs[0::2]) * 2
    return RationalOneForm(RationalFunction(top, bottom), var)


def conjugacy_pi_star(phi) -> RationalOneForm:
    """``pi_*`` computed as ``(M^-1)_* F_* M_*`` with ``M(z) = (z+i)/(z-i)``.

    For the Moebius map the direct image is the pullback by its inverse, so
    this is ``M^* F_* (M^-1)^* phi``.
    """
    phi = _as_form(phi)
    u_form = pullback(phi, MOBIUS_INVERSE, "u")
    v_form = square_pushforward(u_form, "v")
    return pullback(v_form, MOBIUS, "w")
