"""Numerical oracle: adaptive Gauss-Legendre quadrature and real-root certificates.

Half-line integrals of rational functions are mapped to ``[0, pi/2)`` by
``z = tan(theta)``.  The integrand is evaluated in homogeneous form
``N_h(sin, cos) * cos**(deg D - deg N - 2) / D_h(sin, cos)`` so nothing
blows up at ``theta = pi/2`` as long as ``deg D >= deg N + 2``.
"""

from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import mpmath
from mpmath import mp, mpf

from .errors import AccuracyError, DomainError
from .exactpoly import Polynomial

DEFAULT_PREC = 128
DEFAULT_TOL = mpf("1e-12")


@dataclass(frozen=True)
class QuadratureResult:
    value: mpf
    est_error: mpf
    evaluations: int

    def __float__(self):
        return float(self.value)


class RootCertificate(str, enum.Enum):
    POSITIVE = "certified-positive"
    ROOT = "certified-root"
    INCONCLUSIVE = "inconclusive"


# -----------------------------------------------------------------------------
# Gauss-Legendre panels
# -----------------------------------------------------------------------------


@lru_cache(maxsize=32)
def gauss_legendre(n: int, prec: int) -> tuple[tuple[mpf, ...], tuple[mpf, ...]]:
    """Nodes and weights of the ``n``-point rule on ``[-1, 1]`` at ``prec`` bits."""
    with mp.workprec(prec + 20):
        nodes, weights = [], []
        eps = mpf(2) ** (-(prec + 10))
        for i in range(1, n + 1):
            x = mpmath.cos(mp.pi * (i - mpf(1) / 4) / (n + mpf(1) / 2))
            for _ in range(100):
                p0, p1 = mpf(1), x
                for k in range(2, n + 1):
                    p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                dp = n * (x * p1 - p0) / (x * x - 1)
                dx = p1 / dp
                x -= dx
                if abs(dx) < eps:
                    break
            nodes.append(x)
            weights.append(2 / ((1 - x * x) * dp * dp))
    with mp.workprec(prec):
        return tuple(+x for x in nodes), tuple(+w for w in weights)


def _panel(f: Callable, a: mpf, b: mpf, rule) -> mpf:
    nodes, weights = rule
    half = (b - a) / 2
    mid = (a + b) / 2
    return half * mpmath.fsum(w * f(mid + half * x) for x, w in zip(nodes, weights))


def integrate_interval(
    f: Callable,
    a,
    b,
    tol=DEFAULT_TOL,
    *,
    order: int = 20,
    initial_panels: int = 4,
    max_panels: int = 4000,
    prec: int = DEFAULT_PREC,
) -> QuadratureResult:
    """Globally adaptive composite Gauss-Legendre quadrature of ``f`` on ``[a, b]``.

    Each panel's error is estimated as the difference between the one-panel
    rule and the sum over its two halves.  The panel with the largest
    estimate is bisected until the total falls below
    ``tol * max(1, |value|)``.
    """
    with mp.workprec(prec):
        a, b = mpf(a), mpf(b)
        tol = mpf(tol)
        floor = mpf(2) ** (8 - prec)  # a few ulps: panel differences below this are rounding noise
        if tol < floor:
            best = integrate_interval(
                f, a, b, floor, order=order, initial_panels=initial_panels, max_panels=max_panels, prec=prec
            )
            raise AccuracyError(
                f"tolerance {mpmath.nstr(tol, 3)} is below what {prec}-bit arithmetic can resolve "
                f"({mpmath.nstr(floor, 3)})",
                best=best,
            )
        rule = gauss_legendre(order, prec)
        evals = 0

        def assess(lo, hi):
            nonlocal evals
            mid = (lo + hi) / 2
            whole = _panel(f, lo, hi, rule)
            left = _panel(f, lo, mid, rule)
            right = _panel(f, mid, hi, rule)
            evals += 3 * order
            return left + right, abs(whole - left - right), (lo, mid, hi), (left, right)

        heap = []
        edges = [a + (b - a) * k / initial_panels for k in range(initial_panels + 1)]
        for lo, hi in zip(edges, edges[1:]):
            est, err, span, _ = assess(lo, hi)
            heapq.heappush(heap, (-err, id(span), est, span))
        while True:
            total = mpmath.fsum(item[2] for item in heap)
            err = mpmath.fsum(-item[0] for item in heap)
            if err <= tol * max(1, abs(total)):
                return QuadratureResult(total, err, evals)
            if len(heap) >= max_panels:
                raise AccuracyError(
                    f"quadrature tolerance {mpmath.nstr(tol, 3)} not reached "
                    f"(estimated error {mpmath.nstr(err, 3)})",
                    best=QuadratureResult(total, err, evals),
                )
            _, _, _, (lo, mid, hi) = heapq.heappop(heap)
            for sub in ((lo, mid), (mid, hi)):
                est, e, span, _ = assess(*sub)
                heapq.heappush(heap, (-e, id(span), est, span))


# -----------------------------------------------------------------------------
# real-root certificate
# -----------------------------------------------------------------------------


def _real_exact(poly) -> Polynomial:
    p = poly if isinstance(poly, Polynomial) else Polynomial(poly)
    if not p.is_real():
        raise DomainError("real-root certificate needs real coefficients")
    return p


def cauchy_bound(p: Polynomial) -> Fraction:
    """``1 + max|c_i| / |lead|``: every complex root lies strictly inside."""
    coeffs = p.to_fractions()
    lead = abs(coeffs[-1])
    return 1 + max((abs(c) for c in coeffs[:-1]), default=Fraction(0)) / lead


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _sturm_sequence(p: Polynomial) -> list[list[Fraction]]:
    seq = [p, p.derivative()]
    while seq[-1].degree > 0:
        r = -(seq[-2] % seq[-1])
        if not r:
            break
        # positive rescaling keeps signs and tames coefficient growth
        lead = abs(r.leading.re)
        seq.append(r * (1 / lead))
    return [q.to_fractions() for q in seq]


def real_root_count(poly, lo=None, hi=None) -> int:
    """Number of distinct real roots in ``(lo, hi]`` (default: all of R), by Sturm."""
    p = _real_exact(poly)
    if p.degree <= 0:
        return 0
    m = cauchy_bound(p)
    lo = -m if lo is None else Fraction(lo)
    hi = m if hi is None else Fraction(hi)
    seq = _sturm_sequence(p)

    def variations(x):
        signs = [s for s in (_sign(_eval(q, x)) for q in seq) if s]
        return sum(1 for u, v in zip(signs, signs[1:]) if u != v)

    return variations(lo) - variations(hi)


def locate_sign_change(poly, *, grid: int = 200, bisections: int = 60):
    """Scan a graded grid on ``[-M, M]`` for a sign change or exact zero.

    Returns a bracketing interval ``(lo, hi)`` narrowed by bisection, or
    ``None`` if the scan saw no sign change.  Absence of a sign change is
    not a proof of positivity; see :func:`no_real_root_certificate`.
    """
    p = _real_exact(poly)
    if p.degree <= 0:
        return None
    coeffs = p.to_fractions()
    m = cauchy_bound(p)
    half = [m * Fraction(k * k, grid * grid) for k in range(grid + 1)]
    points = [-x for x in reversed(half[1:])] + half
    prev_x, prev_v = points[0], _eval(coeffs, points[0])
    for x in points[1:]:
        v = _eval(coeffs, x)
        if v == 0:
            return (x, x)
        if _sign(v) != _sign(prev_v):
            lo, hi, vlo = prev_x, x, prev_v
            for _ in range(bisections):
                mid = (lo + hi) / 2
                vm = _eval(coeffs, mid)
                if vm == 0:
                    return (mid, mid)
                if _sign(vm) == _sign(vlo):
                    lo, vlo = mid, vm
                else:
                    hi = mid
            return (lo, hi)
        prev_x, prev_v = x, v
    return None


def no_real_root_certificate(den) -> RootCertificate:
    """Certify that ``den`` is strictly positive on the whole real line.

    A sign change found by the graded scan (refined by exact bisection)
    certifies a root.  Otherwise an exact Sturm count over the Cauchy window
    decides: zero roots and a positive value certify positivity, any root
    (e.g. a double root the scan cannot see) certifies a root.  Anything that
    cannot be decided this way, including negative-definite polynomials, is
    inconclusive.
    """
    try:
        p = _real_exact(den)
    except (DomainError, TypeError, ValueError):
        return RootCertificate.INCONCLUSIVE
    if not p:
        return RootCertificate.INCONCLUSIVE
    if p.degree == 0:
        return RootCertificate.POSITIVE if p.leading.re > 0 else RootCertificate.INCONCLUSIVE
    if locate_sign_change(p) is not None:
        return RootCertificate.ROOT
    if real_root_count(p) > 0:
        return RootCertificate.ROOT
    if p(0).re > 0:
        return RootCertificate.POSITIVE
    return RootCertificate.INCONCLUSIVE


# -----------------------------------------------------------------------------
# rational integrals
# -----------------------------------------------------------------------------


def _prepare(num, den):
    n = num if isinstance(num, Polynomial) else Polynomial(num)
    d = den if isinstance(den, Polynomial) else Polynomial(den)
    if not d:
        raise DomainError("zero denominator")
    if n and d.degree < n.degree + 2:
        raise DomainError("integral diverges at infinity: need deg den >= deg num + 2")
    if no_real_root_certificate(d) is not RootCertificate.POSITIVE and (
        no_real_root_certificate(-d) is not RootCertificate.POSITIVE
    ):
        raise DomainError(f"denominator {d} is not certified free of real roots")
    return n, d


def _homogeneous(coeffs: list, s: mpf, cpows: list) -> mpf:
    # sum coeffs[k] s^k c^(deg-k), Horner in s
    deg = len(coeffs) - 1
    acc = mpf(0)
    for k in range(deg, -1, -1):
        acc = acc * s + coeffs[k] * cpows[deg - k]
    return acc


def _tan_integrand(n: Polynomial, d: Polynomial):
    ncoef = [c.to_mpmath() for c in n.coeffs]
    dcoef = [c.to_mpmath() for c in d.coeffs]
    extra = len(dcoef) - len(ncoef) - 2
    top = len(dcoef)

    def integrand(theta):
        if not ncoef:
            return mpf(0)
        s, c = mpmath.sin(theta), mpmath.cos(theta)
        cpows = [mpf(1)]
        for _ in range(top):
            cpows.append(cpows[-1] * c)
        return _homogeneous(ncoef, s, cpows) * cpows[extra] / _homogeneous(dcoef, s, cpows)

    return integrand


def integrate_halfline(num, den, tol=DEFAULT_TOL, *, prec: int = DEFAULT_PREC) -> QuadratureResult:
    """Integral of ``num/den`` over ``[0, inf)``; coefficients lowest power first.

    ``den`` must be certified free of real roots and ``deg den >= deg num + 2``.
    """
    n, d = _prepare(num, den)
    with mp.workprec(prec):
        return integrate_interval(_tan_integrand(n, d), 0, mp.pi / 2, tol, prec=prec)


def integrate_real_line(num, den, tol=DEFAULT_TOL, *, prec: int = DEFAULT_PREC) -> QuadratureResult:
    """Integral of ``num/den`` over the whole real line (complex coefficients allowed in ``num``)."""
    n, d = _prepare(num, den)
    with mp.workprec(prec):
        f = _tan_integrand(n, d)
        if n.is_real():
            return integrate_interval(f, -mp.pi / 2, mp.pi / 2, tol, prec=prec)
        re = integrate_interval(_tan_integrand(n.real_part(), d), -mp.pi / 2, mp.pi / 2, tol, prec=prec)
        im = integrate_interval(_tan_integrand(n.imag_part(), d), -mp.pi / 2, mp.pi / 2, tol, prec=prec)
        return QuadratureResult(mpmath.mpc(re.value, im.value), re.est_error + im.est_error, re.evaluations + im.evaluations)


def elliptic_G(a, b, tol=DEFAULT_TOL, *, prec: int = DEFAULT_PREC) -> QuadratureResult:
    """``int_0^{pi/2} dtheta / sqrt(a^2 cos^2 + b^2 sin^2)`` for ``a, b > 0``."""
    with mp.workprec(prec):
        a, b = mpf(a), mpf(b)
        if a <= 0 or b <= 0:
            raise DomainError("elliptic_G needs a > 0 and b > 0")
        a2, b2 = a * a, b * b

        def f(theta):
            return 1 / mpmath.sqrt(a2 * mpmath.cos(theta) ** 2 + b2 * mpmath.sin(theta) ** 2)

        return integrate_interval(f, 0, mp.pi / 2, tol, prec=prec)
