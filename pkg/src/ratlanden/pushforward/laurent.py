"""Truncated Laurent model of 1-forms on the annulus ``1/R < |z| < R``.

A form is stored as ``(sum_k a_k z**k) dz/z`` for ``-K <= k <= K``.  The
direct image under ``z -> z**m`` keeps every m-th coefficient, so
iterating ``m = 2`` kills everything except ``a_0`` at a rate governed by
the weighted norm ``|a_0| + sum_{k>=1} (|a_k| + |a_-k|) R**k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import mpmath
from mpmath import mp, mpf

from ..quadrature import DEFAULT_PREC
from .forms import RationalOneForm


@dataclass(frozen=True)
class LaurentForm:
    coeffs: tuple  # a_{-K} .. a_K
    radius: mpf
    K: int

    def __post_init__(self):
        if len(self.coeffs) != 2 * self.K + 1:
            raise ValueError(f"expected {2 * self.K + 1} coefficients for K={self.K}")
        if self.radius <= 1:
            raise ValueError("annulus radius must exceed 1")

    @classmethod
    def from_function(cls, a, K: int, radius) -> "LaurentForm":
        """Coefficients ``a(k)`` for ``-K <= k <= K``."""
        return cls(tuple(mpmath.mpmathify(a(k)) for k in range(-K, K + 1)), mpf(radius), K)

    @classmethod
    def from_dict(cls, table: dict, K: int, radius) -> "LaurentForm":
        return cls.from_function(lambda k: table.get(k, 0), K, radius)

    @classmethod
    def from_rational(cls, phi: RationalOneForm, K: int, radius, *, nodes: int | None = None, prec: int = DEFAULT_PREC):
        """Laurent coefficients on the unit circle by the trapezoidal rule.

        ``phi = f(z) dz`` gives ``a_k = mean over the circle of f(z) z**(1-k)``;
        the rule is spectrally accurate when ``phi`` is analytic on the annulus.
        """
        n = nodes or 8 * (K + 1)
        with mp.workprec(prec):
            pts = [mpmath.expjpi(mpf(2 * j) / n) for j in range(n)]
            vals = [phi.R(z) * z for z in pts]
            table = {}
            for k in range(-K, K + 1):
                s = mpmath.fsum(v * p ** (-k) for v, p in zip(vals, pts)) / n
                table[k] = mpmath.chop(s, tol=mpf(2) ** (-prec + 8))
        return cls.from_dict(table, K, radius)

    def coeff(self, k: int):
        if -self.K <= k <= self.K:
            return self.coeffs[k + self.K]
        return mpf(0)

    @property
    def a0(self):
        return self.coeff(0)

    def norm(self) -> mpf:
        total = abs(self.a0)
        rk = mpf(1)
        for k in range(1, self.K + 1):
            rk *= self.radius
            total += (abs(self.coeff(k)) + abs(self.coeff(-k))) * rk
        return total

    def without_constant(self) -> "LaurentForm":
        c = list(self.coeffs)
        c[self.K] = mpf(0)
        return LaurentForm(tuple(c), self.radius, self.K)

    def __add__(self, other: "LaurentForm") -> "LaurentForm":
        K = max(self.K, other.K)
        return LaurentForm.from_function(lambda k: self.coeff(k) + other.coeff(k), K, self.radius)

    def __sub__(self, other: "LaurentForm") -> "LaurentForm":
        K = max(self.K, other.K)
        return LaurentForm.from_function(lambda k: self.coeff(k) - other.coeff(k), K, self.radius)

    def __mul__(self, c) -> "LaurentForm":
        return LaurentForm(tuple(c * x for x in self.coeffs), self.radius, self.K)

    __rmul__ = __mul__


def decimate(phi: LaurentForm, m: int = 2) -> LaurentForm:
    """Direct image under ``z -> z**m``: ``a_k -> a_{m k}``, truncated at ``K // m``."""
    if m < 2:
        raise ValueError("decimation factor must be at least 2")
    K = phi.K // m
    return LaurentForm.from_function(lambda k: phi.coeff(m * k), K, phi.radius)


def superconvergence_bound(phi: LaurentForm, n: int) -> mpf:
    """``R**(1 - 2**n) * ||phi||``, the ceiling for ``||F_*^n phi - a_0 dz/z||``."""
    return phi.radius ** (1 - 2**n) * phi.norm()


def superconvergence_probe(phi: LaurentForm, n: int, *, prec: int = DEFAULT_PREC) -> list[mpf]:
    """Norms ``||decimate^j(phi) - a_0 dz/z||`` for ``j = 1..n``."""
    norms = []
    with mp.workprec(prec):
        current = phi
        for _ in range(n):
            current = decimate(current, 2)
            norms.append(current.without_constant().norm())
    return norms


def laurent_norms(phi: LaurentForm, ns: Sequence[int]) -> list[tuple[mpf, mpf]]:
    """``(norm, bound)`` pairs for the requested iteration counts."""
    norms = superconvergence_probe(phi, max(ns))
    return [(norms[j - 1], superconvergence_bound(phi, j)) for j in ns]
