"""Arithmetic-geometric mean, the classical template for the rational iteration."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf

from .errors import ConvergenceError, DomainError
from .quadrature import DEFAULT_PREC, DEFAULT_TOL


@dataclass(frozen=True)
class AgmTrace:
    pairs: tuple  # (a_n, b_n), starting with the input
    limit: mpf

    @property
    def steps(self) -> int:
        return len(self.pairs) - 1

    def gaps(self) -> list:
        return [abs(a - b) for a, b in self.pairs]


def agm(a, b, tol=DEFAULT_TOL, *, prec: int = DEFAULT_PREC, max_iter: int = 100) -> AgmTrace:
    """Iterate ``(a, b) -> ((a+b)/2, sqrt(ab))`` until ``|a - b| < tol``; the limit is the final mean."""
    with mp.workprec(prec):
        a, b = mpf(a), mpf(b)
        if a <= 0 or b <= 0:
            raise DomainError("agm needs a > 0 and b > 0")
        pairs = [(a, b)]
        while abs(a - b) >= tol:
            if len(pairs) > max_iter:
                raise ConvergenceError(f"agm did not reach tolerance in {max_iter} steps")
            a, b = (a + b) / 2, mpmath.sqrt(a * b)
            pairs.append((a, b))
        return AgmTrace(tuple(pairs), (a + b) / 2)


def agm_integral(a, b, tol=DEFAULT_TOL, *, prec: int = DEFAULT_PREC) -> mpf:
    """``pi / (2 AGM(a, b))``, which equals the complete elliptic integral ``G(a, b)``."""
    with mp.workprec(prec):
        return mp.pi / (2 * agm(a, b, tol, prec=prec).limit)
