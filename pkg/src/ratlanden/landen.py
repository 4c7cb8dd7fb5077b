"""Rational Landen iteration for even integrands on ``[0, inf)``.

A :class:`LandenState` of half-degree ``p`` stands for the integrand

    (b_0 z^(2p-2) + b_1 z^(2p-4) + ... + b_(p-1)) / (z^(2p) + a_1 z^(2p-2) + ... + a_(p-1) z^2 + 1)

One Landen step replaces it with another state of the same shape and the
same integral.  Two interchangeable algorithms are provided:

* :func:`step_geometric` pushes the form forward under
  ``pi(z) = (z^2 - 1)/(2z)`` in exact arithmetic and renormalises;
* :func:`step_theorem` evaluates the closed-form coefficient map.

Iterating drives ``a_i -> C(p, i)`` and ``b_i -> C(p-1, i) L``, and the
integral equals ``L * pi / 2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Sequence

import mpmath
from mpmath import mp, mpf

from .errors import DomainError
from .exactpoly import Polynomial, exact
from .pushforward import pi_star_pair
from .quadrature import (
    DEFAULT_PREC,
    DEFAULT_TOL,
    QuadratureResult,
    RootCertificate,
    integrate_halfline,
    no_real_root_certificate,
)

ALGORITHMS = ("geometric", "theorem")


def _mpf(x) -> mpf:
    if isinstance(x, mpf):
        return x
    return exact(x).to_mpmath()


@dataclass(frozen=True)
class LandenState:
    p: int
    a: tuple  # a_1 .. a_(p-1)
    b: tuple  # b_0 .. b_(p-1)

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("half-degree p must be at least 1")
        if len(self.a) != self.p - 1 or len(self.b) != self.p:
            raise ValueError(f"p={self.p} needs {self.p - 1} a-coefficients and {self.p} b-coefficients")
        object.__setattr__(self, "a", tuple(_mpf(x) for x in self.a))
        object.__setattr__(self, "b", tuple(_mpf(x) for x in self.b))

    @classmethod
    def fixed_point(cls, p: int, L=1) -> "LandenState":
        """The limit state ``L (z^2 + 1)^(p-1) / (z^2 + 1)^p``."""
        L = _mpf(L)
        return cls(p, tuple(mpf(comb(p, i)) for i in range(1, p)), tuple(comb(p - 1, i) * L for i in range(p)))

    # polynomials, lowest power first --------------------------------------
    def denominator_coeffs(self) -> list:
        full = [mpf(1), *self.a, mpf(1)]  # coefficient of z^(2(p-j)) is full[j]
        out = [mpf(0)] * (2 * self.p + 1)
        for j, c in enumerate(full):
            out[2 * (self.p - j)] = c
        return out

    def numerator_coeffs(self) -> list:
        out = [mpf(0)] * (2 * self.p - 1)
        for j, c in enumerate(self.b):
            out[2 * (self.p - 1 - j)] = c
        return out

    def exact_polynomials(self) -> tuple[Polynomial, Polynomial]:
        """Numerator and denominator with the stored binary values converted exactly."""
        return Polynomial(self.numerator_coeffs()), Polynomial(self.denominator_coeffs())

    @cached_property
    def certificate(self) -> RootCertificate:
        return no_real_root_certificate(self.exact_polynomials()[1])

    # convergence diagnostics ----------------------------------------------
    def residual(self) -> mpf:
        """Max-norm distance of ``a`` from ``(C(p,1), ..., C(p,p-1))``."""
        return max((abs(x - comb(self.p, i + 1)) for i, x in enumerate(self.a)), default=mpf(0))

    def limit_ratios(self) -> list:
        return [x / comb(self.p - 1, i) for i, x in enumerate(self.b)]

    def integral(self, tol=DEFAULT_TOL, *, prec: int = DEFAULT_PREC) -> QuadratureResult:
        num, den = self.exact_polynomials()
        return integrate_halfline(num, den, tol, prec=prec)

    def scaled(self, k) -> "LandenState":
        return LandenState(self.p, self.a, tuple(k * x for x in self.b))

    def as_dict(self, digits: int = 40) -> dict:
        return {
            "p": self.p,
            "a": [mpmath.nstr(x, digits) for x in self.a],
            "b": [mpmath.nstr(x, digits) for x in self.b],
        }


@dataclass(frozen=True)
class NormalizationResult:
    state: LandenState
    lam: mpf
    factor: mpf


@dataclass(frozen=True)
class LandenStepIntermediates:
    d: tuple  # d_1 .. d_(p+1)
    c: tuple  # c_0 .. c_(2p-1)
    alpha: tuple  # alpha(0) .. alpha(p)
    Q1: mpf


@dataclass
class IterationTrace:
    states: list
    residuals: list
    algorithm: str
    converged: bool = False
    L: mpf | None = None
    factor_product: mpf = field(default_factory=lambda: mpf(1))

    @property
    def steps(self) -> int:
        return len(self.states) - 1

    @property
    def U(self) -> mpf | None:
        return None if self.L is None else self.L * mp.pi / 2

    def decay_slope(self, last: int = 4) -> float:
        """Least-squares slope of ``log r_(n+1)`` against ``log r_n`` over the last transitions.

        Zero residuals (exact limit) are dropped.  A slope near 2 means the
        number of correct digits doubles per step.
        """
        r = [float(mpmath.log10(x)) for x in self.residuals if x > 0]
        pairs = list(zip(r, r[1:]))[-last:]
        if len(pairs) < 2:
            raise ValueError("not enough nonzero residuals to fit a slope")
        xs, ys = zip(*pairs)
        mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
        sxx = sum((x - mx) ** 2 for x in xs)
        return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx


# -----------------------------------------------------------------------------
# normalisation
# -----------------------------------------------------------------------------


def _mp_coeffs(poly) -> list:
    if isinstance(poly, Polynomial):
        return [c.to_mpmath() for c in poly.coeffs] if poly.is_real() else _reject_complex()
    return [_mpf(c) for c in poly]


def _reject_complex():
    raise DomainError("Landen integrands must have real coefficients")


def normalize(num, den, *, prec: int = DEFAULT_PREC) -> NormalizationResult:
    """Rescale ``z = lam x`` so the denominator is monic with constant term 1.

    ``num`` and ``den`` are even polynomials (or coefficient lists, lowest
    power first) with ``deg den = 2p`` and ``deg num <= 2p - 2``.  The result
    satisfies ``int_0^inf num/den = factor * U(state)``, where the state keeps
    the numerator values ``num(lam x)`` and ``factor = lam / den(0)``.
    """
    with mp.workprec(prec):
        n = _mp_coeffs(num)
        d = _mp_coeffs(den)
        while n and n[-1] == 0:
            n.pop()
        while d and d[-1] == 0:
            d.pop()
        if len(d) < 3 or (len(d) - 1) % 2:
            raise DomainError("denominator must be even of degree 2p >= 2")
        if any(c != 0 for c in d[1::2]) or any(c != 0 for c in n[1::2]):
            raise DomainError("numerator and denominator must be even polynomials")
        p = (len(d) - 1) // 2
        if len(n) > 2 * p - 1:
            raise DomainError("numerator degree must not exceed 2p - 2")
        c0, lead = d[0], d[-1]
        if c0 <= 0 or lead <= 0:
            raise DomainError("denominator needs positive leading and constant coefficients")
        lam = mpmath.root(c0 / lead, 2 * p)
        n = n + [mpf(0)] * (2 * p - 1 - len(n))
        a = tuple(d[2 * (p - j)] * lam ** (2 * (p - j)) / c0 for j in range(1, p))
        b = tuple(n[2 * (p - 1 - j)] * lam ** (2 * (p - 1 - j)) for j in range(p))
        return NormalizationResult(LandenState(p, a, b), lam, lam / c0)


# -----------------------------------------------------------------------------
# the two step algorithms
# -----------------------------------------------------------------------------


def _require_certified(s: LandenState) -> None:
    if s.certificate is not RootCertificate.POSITIVE:
        raise DomainError(
            f"denominator of the p={s.p} state is not certified free of real roots "
            f"({s.certificate.value}); the integral or the iteration diverges"
        )


def step_geometric(s: LandenState, *, prec: int = DEFAULT_PREC, check: bool = True) -> tuple[LandenState, mpf]:
    """Exact direct image of the stored binary coefficients, then renormalise.

    The only rounding happens in the final rescaling.  The returned factor
    is 1: the scale is folded into the new ``b``.
    """
    if check:
        _require_certified(s)
    num, den = s.exact_polynomials()
    new_num, new_den = pi_star_pair(num, den)
    with mp.workprec(prec):
        res = normalize(new_num, new_den, prec=prec)
        return res.state.scaled(res.factor), mpf(1)


def landen_intermediates(s: LandenState, *, prec: int = DEFAULT_PREC) -> LandenStepIntermediates:
    """The auxiliary sequences ``d``, ``c``, ``alpha`` and ``Q(1)`` of the closed form."""
    p = s.p
    with mp.workprec(prec):
        a = [mpf(1), *s.a, mpf(1)]  # a_0 .. a_p
        b = list(s.b)

        def a_at(j):
            return a[j] if 0 <= j <= p else mpf(0)

        def b_at(j):
            return b[j] if 0 <= j <= p - 1 else mpf(0)

        d = [mpf(0)] * (p + 2)  # index 1..p+1
        d[1] = mpmath.fsum(a_at(p - k) ** 2 for k in range(p + 1)) / 2
        for j in range(p):
            d[p + 1 - j] = mpmath.fsum(a_at(p - k) * a_at(j - k) for k in range(j + 1))
        # c_j pairs a_k with b_(p-1-j+k); only c_k + c_(2p-1-k) enters below
        c = [mpmath.fsum(a_at(k) * b_at(p - 1 - j + k) for k in range(p + 1)) for j in range(2 * p)]
        alpha = [1 + mpmath.fsum(d[1 : p + 1])]
        for i in range(1, p + 1):
            total = mpmath.fsum(
                mpf(k + i - 1) / i * comb(k + 2 * i - 2, k - 1) * d[k + i] for k in range(1, p + 2 - i)
            )
            alpha.append(mpf(2) ** (2 * i - 1) * total)
        Q1 = mpmath.fsum(a)
        return LandenStepIntermediates(tuple(d[1:]), tuple(c), tuple(alpha), Q1)


def step_theorem(s: LandenState, *, prec: int = DEFAULT_PREC, check: bool = True) -> tuple[LandenState, mpf]:
    """Closed-form coefficient map, assembled in the same orientation as :func:`step_geometric`.

    ``alpha(i)`` and ``b_i^+`` are the coefficients of ``x^(2i)`` of the
    pushed-forward, renormalised form, so they fill the new state from the
    constant term upwards.
    """
    if check:
        _require_certified(s)
    p = s.p
    with mp.workprec(prec):
        im = landen_intermediates(s, prec=prec)
        Q1 = im.Q1
        if Q1 <= 0:
            raise DomainError("Q(1) <= 0: fractional powers of Q(1) are not real")
        c = im.c
        a_plus = [
            im.alpha[i] / (mpf(2) ** (2 * i - 1) * Q1 ** (2 * (1 - mpf(i) / p))) for i in range(1, p)
        ]
        b_plus = []
        for i in range(p):
            bracket = mpmath.fsum(
                (c[k] + c[2 * p - 1 - k]) * comb(p - 1 - k + i, 2 * i) for k in range(p - i)
            )
            b_plus.append(Q1 ** (mpf(2 * i + 1) / p - 2) * bracket)
        new_a = tuple(a_plus[p - j - 1] for j in range(1, p))
        new_b = tuple(b_plus[p - 1 - j] for j in range(p))
        return LandenState(p, new_a, new_b), mpf(1)


_STEPS = {"geometric": step_geometric, "theorem": step_theorem}


def step(s: LandenState, algorithm: str = "geometric", *, prec: int = DEFAULT_PREC, check: bool = True):
    try:
        fn = _STEPS[algorithm]
    except KeyError:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {ALGORITHMS}") from None
    return fn(s, prec=prec, check=check)


# -----------------------------------------------------------------------------
# iteration
# -----------------------------------------------------------------------------


def _is_converged(s: LandenState, tol) -> bool:
    if s.residual() >= tol:
        return False
    ratios = s.limit_ratios()
    mean = mpmath.fsum(ratios) / len(ratios)
    return max(ratios) - min(ratios) <= tol * max(1, abs(mean))


def iterate(
    s0: LandenState,
    tol=DEFAULT_TOL,
    max_iter: int = 50,
    algorithm: str = "geometric",
    *,
    prec: int = DEFAULT_PREC,
    factor=1,
) -> IterationTrace:
    """Step until the state sits at the binomial limit within ``tol``.

    ``factor`` is a multiplier carried in from normalisation; the reported
    ``L`` includes it.  Hitting ``max_iter`` returns a trace with
    ``converged = False`` rather than raising.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if algorithm not in _STEPS:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {ALGORITHMS}")
    _require_certified(s0)
    with mp.workprec(prec):
        tol = _mpf(tol)
        trace = IterationTrace([s0], [s0.residual()], algorithm, factor_product=_mpf(factor))
        current = s0
        for _ in range(max_iter + 1):
            if _is_converged(current, tol):
                ratios = current.limit_ratios()
                trace.L = trace.factor_product * mpmath.fsum(ratios) / len(ratios)
                trace.converged = True
                return trace
            if trace.steps == max_iter:
                break
            current, f = step(current, algorithm, prec=prec, check=False)
            trace.factor_product *= f
            trace.states.append(current)
            trace.residuals.append(current.residual())
        return trace


def evaluate(
    num,
    den,
    tol=DEFAULT_TOL,
    max_iter: int = 50,
    algorithm: str = "geometric",
    *,
    prec: int = DEFAULT_PREC,
) -> IterationTrace:
    """Normalise ``int_0^inf num/den dz`` and iterate it to the limit."""
    res = normalize(num, den, prec=prec)
    return iterate(res.state, tol, max_iter, algorithm, prec=prec, factor=res.factor)


def binomial_limit(p: int) -> tuple[list[int], list[int]]:
    """``([C(p,1)..C(p,p-1)], [C(p-1,0)..C(p-1,p-1)])``."""
    return [comb(p, i) for i in range(1, p)], [comb(p - 1, i) for i in range(p)]

