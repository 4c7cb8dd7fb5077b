"""Exact polynomial and rational-function arithmetic over Q(i).

Coefficients are :class:`GaussianRational` values, i.e. pairs of
:class:`fractions.Fraction`.  Polynomials are dense, stored lowest power
first with trailing zeros stripped, so ``Polynomial([1, 0, 1])`` is
``1 + z**2``.  All values are immutable.

The one non-textbook operation is :func:`symmetric_fiber_sum`, which sums a
rational function over the two roots of a quadratic ``z**2 - e1(w) z + e2``
and returns the result as a rational function of ``w`` without ever
introducing a square root.
"""

from __future__ import annotations

import math
import numbers
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath
from mpmath import libmp

__all__ = [
    "GaussianRational",
    "Polynomial",
    "RationalFunction",
    "exact",
    "poly_gcd",
    "fiber_reduce",
    "symmetric_fiber_sum",
    "I",
    "ZERO_DEGREE",
]

ZERO_DEGREE = -math.inf

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, mpmath.mpf):
        if not mpmath.isfinite(x):
            raise ValueError(f"cannot represent {x} exactly")
        p, q = libmp.to_rational(x._mpf_)
        return Fraction(int(p), int(q))
    if isinstance(x, (float, Decimal, numbers.Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class GaussianRational:
    """Exact element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("GaussianRational real part must be rational")
            self.re, self.im = re.re, re.im
            return
        self.re = _fraction(re)
        self.im = _fraction(im)

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.im and not other.im:
            return GaussianRational._make(self.re * other.re, _ZERO)
        return GaussianRational._make(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other:
            raise ZeroDivisionError("division by zero in Q(i)")
        if not other.im:
            return GaussianRational._make(self.re / other.re, self.im / other.re)
        n = other.re * other.re + other.im * other.im
        return GaussianRational._make(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (_ONE_Q / self) ** (-n)
        result, base = _ONE_Q, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._make(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # comparisons ----------------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    @property
    def is_real(self) -> bool:
        return not self.im

    # conversions ----------------------------------------------------------
    def to_fraction(self) -> Fraction:
        if self.im:
            raise ValueError(f"{self} is not real")
        return self.re

    def to_mpmath(self):
        """Nearest mpmath number at the current working precision."""
        re = mpmath.mpf(self.re.numerator) / self.re.denominator
        if not self.im:
            return re
        return mpmath.mpc(re, mpmath.mpf(self.im.numerator) / self.im.denominator)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __float__(self):
        return float(self.to_fraction())

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{_fmt_imag(self.im)}"
        sign = "-" if self.im < 0 else "+"
        return f"({self.re} {sign} {_fmt_imag(abs(self.im))})"


def _fmt_imag(q: Fraction) -> str:
    if q == 1:
        return "i"
    if q == -1:
        return "-i"
    return f"{q}*i"


_ONE_Q = GaussianRational._make(_ONE, _ZERO)
_ZERO_Q = GaussianRational._make(_ZERO, _ZERO)
I = GaussianRational._make(_ZERO, _ONE)


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational._make(Fraction(x), _ZERO)
    if isinstance(x, complex):
        return GaussianRational._make(Fraction(x.real), Fraction(x.imag))
    if isinstance(x, mpmath.mpc):
        return GaussianRational._make(_fraction(x.real), _fraction(x.imag))
    if isinstance(x, (float, Decimal, mpmath.mpf)):
        return GaussianRational._make(_fraction(x), _ZERO)
    return NotImplemented


def exact(x) -> GaussianRational:
    """Convert ``x`` to an exact scalar without rounding.

    Floats and mpmath numbers convert to the binary rational they store.
    Strings accept ``"3/7"``, ``"-0.25"``, ``"1e-30"`` and Gaussian forms such
    as ``"1/2 - 3i"``.
    """
    if isinstance(x, str):
        return _parse_scalar(x)
    value = _coerce(x)
    if value is NotImplemented:
        raise TypeError(f"cannot convert {x!r} to an exact scalar")
    return value


def _parse_scalar(text: str) -> GaussianRational:
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    if s[-1] not in "ij":
        return GaussianRational._make(_fraction(s), _ZERO)
    body = s[:-1].rstrip("*")
    # split real and imaginary parts at the last sign that is not part of an exponent
    split = None
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "eE":
            split = k
            break
    re_part, im_part = ("0", body) if split is None else (body[:split], body[split:])
    if im_part in ("", "+"):
        im_part = "1"
    elif im_part == "-":
        im_part = "-1"
    return GaussianRational._make(_fraction(re_part), _fraction(im_part))


# -----------------------------------------------------------------------------
# polynomials
# -----------------------------------------------------------------------------


class Polynomial:
    """Dense univariate polynomial over Q(i); ``coeffs[k]`` multiplies ``z**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        if isinstance(coeffs, Polynomial):
            self.coeffs = coeffs.coeffs
            return
        self.coeffs = _trim(tuple(exact(c) for c in coeffs))

    @classmethod
    def _make(cls, coeffs: tuple) -> "Polynomial":
        obj = object.__new__(cls)
        obj.coeffs = _trim(coeffs)
        return obj

    @classmethod
    def monomial(cls, n: int, c=1) -> "Polynomial":
        return cls._make((_ZERO_Q,) * n + (exact(c),))

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls._make((exact(c),))

    @classmethod
    def from_descending(cls, coeffs: Sequence) -> "Polynomial":
        return cls(list(coeffs)[::-1])

    # structure ------------------------------------------------------------
    @property
    def degree(self):
        """Degree, with ``ZERO_DEGREE`` (-inf) for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    @property
    def leading(self) -> GaussianRational:
        return self.coeffs[-1] if self.coeffs else _ZERO_Q

    def __getitem__(self, k: int) -> GaussianRational:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return _ZERO_Q

    def __len__(self):
        return len(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            try:
                other = Polynomial.constant(other)
            except TypeError:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_real(self) -> bool:
        return all(c.is_real for c in self.coeffs)

    def real_part(self) -> "Polynomial":
        return Polynomial._make(tuple(GaussianRational._make(c.re, _ZERO) for c in self.coeffs))

    def imag_part(self) -> "Polynomial":
        return Polynomial._make(tuple(GaussianRational._make(c.im, _ZERO) for c in self.coeffs))

    def conjugate(self) -> "Polynomial":
        return Polynomial._make(tuple(c.conjugate() for c in self.coeffs))

    def to_fractions(self) -> list[Fraction]:
        return [c.to_fraction() for c in self.coeffs]

    def is_even(self) -> bool:
        return all(not c for c in self.coeffs[1::2])

    def is_odd(self) -> bool:
        return all(not c for c in self.coeffs[0::2])

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial._make(tuple(x + y for x, y in zip(a, b)) + a[len(b):])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._make(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return _ZERO_POLY
            out = [_ZERO_Q] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if not x:
                    continue
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = out[i + j] + x * y
            return Polynomial._make(tuple(out))
        c = _coerce(other)
        if c is NotImplemented:
            return c
        return Polynomial._make(tuple(x * c for x in self.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = _ONE_POLY, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv_lead = _ONE_Q / other.leading
        if len(rem) <= db:
            return _ZERO_POLY, self
        quot = [_ZERO_Q] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            q = rem[k] * inv_lead
            if not q:
                continue
            quot[k - db] = q
            for j, c in enumerate(other.coeffs):
                rem[k - db + j] = rem[k - db + j] - q * c
        return Polynomial._make(tuple(quot)), Polynomial._make(tuple(rem[:db]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        return self * (_ONE_Q / self.leading)

    # calculus and composition --------------------------------------------
    def derivative(self) -> "Polynomial":
        return Polynomial._make(tuple(c * k for k, c in enumerate(self.coeffs) if k))

    def compose(self, inner: "Polynomial") -> "Polynomial":
        """``self(inner(z))`` by Horner's rule."""
        inner = _as_poly(inner)
        result = _ZERO_POLY
        for c in reversed(self.coeffs):
            result = result * inner + Polynomial._make((c,))
        return result

    def scale_variable(self, lam) -> "Polynomial":
        """``self(lam * z)``."""
        lam = exact(lam)
        out, power = [], _ONE_Q
        for c in self.coeffs:
            out.append(c * power)
            power = power * lam
        return Polynomial._make(tuple(out))

    def reflect(self) -> "Polynomial":
        """``self(-z)``."""
        return Polynomial._make(tuple(-c if k & 1 else c for k, c in enumerate(self.coeffs)))

    def reverse(self, n: int | None = None) -> "Polynomial":
        """``z**n * self(1/z)`` with ``n`` defaulting to the degree."""
        if not self.coeffs:
            return self
        n = len(self.coeffs) - 1 if n is None else n
        if n < len(self.coeffs) - 1:
            raise ValueError("reversal length below degree")
        padded = self.coeffs + (_ZERO_Q,) * (n + 1 - len(self.coeffs))
        return Polynomial._make(padded[::-1])

    def __call__(self, x):
        if isinstance(x, Polynomial):
            return self.compose(x)
        if isinstance(x, (GaussianRational, int, Fraction)):
            x = exact(x)
            acc = _ZERO_Q
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        return self.evaluate_numeric(x)

    def evaluate_numeric(self, x):
        """Horner evaluation with coefficients rounded to the type of ``x``."""
        if isinstance(x, (mpmath.mpf, mpmath.mpc)):
            coeffs = [c.to_mpmath() for c in self.coeffs]
            acc = mpmath.mpf(0)
        else:
            coeffs = [complex(c) if c.im else float(c.re) for c in self.coeffs]
            acc = 0.0
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    # display --------------------------------------------------------------
    def format(self, var: str = "z") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if c.is_real:
                neg = c.re < 0
                mag = abs(c.re)
                cs = "" if (mag == 1 and mono) else str(mag)
            else:
                neg = False
                cs = str(c) if not c.re else f"({c})"
                if not c.re and c.im < 0:
                    neg, cs = True, str(-c)
                if cs in ("i",) and mono:
                    cs = "i"
            body = cs + ("*" if cs and mono else "") + mono
            terms.append(("-" if neg else "+", body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Polynomial({self.format()})"


def _trim(coeffs: tuple) -> tuple:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return coeffs[:n] if n != len(coeffs) else coeffs


def _as_poly(x):
    if isinstance(x, Polynomial):
        return x
    c = _coerce(x)
    if c is NotImplemented:
        return c
    return Polynomial._make((c,))


_ZERO_POLY = Polynomial._make(())
_ONE_POLY = Polynomial._make((_ONE_Q,))
Z = Polynomial._make((_ZERO_Q, _ONE_Q))


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor (zero only if both inputs are zero)."""
    a, b = _as_poly(a), _as_poly(b)
    while b:
        a, b = b, (a % b).monic()
    return a.monic()


# -----------------------------------------------------------------------------
# rational functions
# -----------------------------------------------------------------------------


class RationalFunction:
    """Reduced quotient ``num/den`` with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num, den = _as_poly(num), _as_poly(den)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RationalFunction needs polynomial numerator and denominator")
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = _ZERO_POLY, _ONE_POLY
            return
        g = poly_gcd(num, den)
        if len(g.coeffs) > 1:
            num, den = num.exact_div(g), den.exact_div(g)
        lead = den.leading
        if lead != _ONE_Q:
            inv = _ONE_Q / lead
            num, den = num * inv, den * inv
        self.num, self.den = num, den

    @classmethod
    def _make(cls, num: Polynomial, den: Polynomial) -> "RationalFunction":
        obj = object.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def from_polynomial(cls, p) -> "RationalFunction":
        return cls._make(_as_poly(p), _ONE_POLY)

    @property
    def degree(self) -> int:
        """``max(deg num, deg den)`` of the reduced form; zero has degree 0."""
        return max(len(self.num.coeffs), len(self.den.coeffs)) - 1

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            other = _as_rational(other)
            if other is NotImplemented:
                return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_real(self) -> bool:
        return self.num.is_real() and self.den.is_real()

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._make(-self.num, self.den)

    def __sub__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return other
        if not other:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return RationalFunction(self.den ** (-n), self.num ** (-n))
        return RationalFunction._make(self.num**n, self.den**n)

    # calculus and composition --------------------------------------------
    def derivative(self) -> "RationalFunction":
        n, d = self.num, self.den
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def compose(self, inner) -> "RationalFunction":
        """``self(inner(z))`` for a rational or polynomial ``inner``."""
        inner = _as_rational(inner)
        g_num, g_den = inner.num, inner.den
        m = self.degree
        num_top = _homogenize(self.num, g_num, g_den, m)
        den_top = _homogenize(self.den, g_num, g_den, m)
        return RationalFunction(num_top, den_top)

    def reflect(self) -> "RationalFunction":
        """``self(-z)``."""
        num, den = self.num.reflect(), self.den.reflect()
        if len(den.coeffs) % 2 == 0:  # odd degree: leading coefficient flipped sign
            num, den = -num, -den
        return RationalFunction._make(num, den)

    def is_even(self) -> bool:
        return self.reflect() == self

    def is_odd(self) -> bool:
        return self.reflect() == -self

    def __call__(self, x):
        if isinstance(x, (Polynomial, RationalFunction)):
            return self.compose(x)
        return self.num(x) / self.den(x)

    # display --------------------------------------------------------------
    def format(self, var: str = "z") -> str:
        num = self.num.format(var)
        if self.den == _ONE_POLY:
            return num
        if len(self.num.coeffs) > 1 and sum(1 for c in self.num.coeffs if c) > 1:
            num = f"({num})"
        den = self.den.format(var)
        if sum(1 for c in self.den.coeffs if c) > 1 or (len(self.den.coeffs) > 1 and self.den.leading != 1):
            den = f"({den})"
        return f"{num}/{den}"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RationalFunction({self.format()})"


def _as_rational(x):
    if isinstance(x, RationalFunction):
        return x
    p = _as_poly(x)
    if p is NotImplemented:
        return p
    return RationalFunction._make(p, _ONE_POLY)


def _homogenize(p: Polynomial, top: Polynomial, bottom: Polynomial, m: int) -> Polynomial:
    """``sum_k p_k top**k bottom**(m-k)``, i.e. ``bottom**m * p(top/bottom)``."""
    n = len(p.coeffs)
    top_pows = [_ONE_POLY]
    for _ in range(1, n):
        top_pows.append(top_pows[-1] * top)
    bot_pows = [_ONE_POLY]
    for _ in range(m):
        bot_pows.append(bot_pows[-1] * bottom)
    acc = _ZERO_POLY
    for k, c in enumerate(p.coeffs):
        if c:
            acc = acc + top_pows[k] * bot_pows[m - k] * c
    return acc


# -----------------------------------------------------------------------------
# elimination over the fiber of a quadratic
# -----------------------------------------------------------------------------


def fiber_reduce(p: Polynomial, e1: Polynomial, e2: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Reduce ``p(z)`` modulo ``z**2 - e1*z + e2`` with coefficients in Q(i)[w].

    Returns ``(p1, p0)`` such that ``p(z) = p1(w) z + p0(w)`` for either root
    ``z`` of the quadratic.  ``p`` has constant coefficients.
    """
    e1, e2 = _as_poly(e1), _as_poly(e2)
    p1, p0 = _ZERO_POLY, _ZERO_POLY
    r1, r0 = _ZERO_POLY, _ONE_POLY  # z**k = r1 z + r0
    for c in p.coeffs:
        if c:
            p1 = p1 + r1 * c
            p0 = p0 + r0 * c
        # z * (r1 z + r0) = r1 (e1 z - e2) + r0 z
        r1, r0 = r1 * e1 + r0, -(r1 * e2)
    return p1, p0


def symmetric_fiber_sum(s: RationalFunction, e1, e2) -> RationalFunction:
    """``s(z1) + s(z2)`` for the roots of ``z**2 - e1(w) z + e2``, as a function of ``w``.

    Both numerator and denominator of ``s`` are reduced to linear form in
    ``z`` over Q(i)[w]; the two terms are then put over the common
    denominator ``B(z1) B(z2)``, whose expansion involves only
    ``z1 + z2 = e1`` and ``z1 z2 = e2``.
    """
    e1, e2 = _as_poly(e1), _as_poly(e2)
    s = _as_rational(s)
    a1, a0 = fiber_reduce(s.num, e1, e2)
    b1, b0 = fiber_reduce(s.den, e1, e2)
    num = a1 * b1 * e2 * 2 + (a1 * b0 + a0 * b1) * e1 + a0 * b0 * 2
    den = b1 * b1 * e2 + b1 * b0 * e1 + b0 * b0
    if not den:
        raise ZeroDivisionError("denominator vanishes identically on the fiber")
    return RationalFunction(num, den)
