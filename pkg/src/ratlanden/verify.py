"""Quick self-checks behind ``ratlanden verify``.

Each check returns ``(name, passed, detail)``.  They are cheap versions of
the acceptance suite, meant to confirm an installation works.
"""

from __future__ import annotations

import random
from fractions import Fraction

import mpmath
from mpmath import mp, mpf

from .agm import agm
from .exactpoly import Polynomial, RationalFunction
from .landen import LandenState, evaluate, step_geometric, step_theorem
from .pushforward import LaurentForm, RationalOneForm, conjugacy_pi_star, pi_star, superconvergence_probe
from .quadrature import DEFAULT_PREC, elliptic_G


def _rand_q(rng: random.Random, lo=1, hi=9) -> Fraction:
    return Fraction(rng.randint(lo, hi * 7), 7)


def check_examples(rng: random.Random):
    worst = 0
    for _ in range(5):
        a0, a1, a2, b0, b1 = (_rand_q(rng) for _ in range(5))
        got = pi_star(RationalOneForm.from_coefficients([b0], [a1, 0, a0])).R
        want = RationalFunction(Polynomial([2 * b0 * (a0 + a1)]), Polynomial([(a0 + a1) ** 2, 0, 4 * a0 * a1]))
        worst += got != want
        got = pi_star(RationalOneForm.from_coefficients([b1, 0, b0], [a2, 0, a1, 0, a0])).R
        s = a0 + a1 + a2
        want = RationalFunction(
            Polynomial([2 * s * (b0 + b1), 0, 8 * (a2 * b0 + a0 * b1)]),
            Polynomial([s * s, 0, 4 * (a0 * a1 + 4 * a0 * a2 + a1 * a2), 0, 16 * a0 * a2]),
        )
        worst += got != want
    return "pushforward closed forms (degree 2 and 4)", worst == 0, f"{worst} mismatches"


def check_conjugacy(rng: random.Random):
    bad = 0
    for _ in range(8):
        num = Polynomial([rng.randint(-4, 4) for _ in range(rng.randint(1, 5))])
        den = Polynomial([rng.randint(-4, 4) for _ in range(rng.randint(1, 6))] + [1])
        phi = RationalOneForm(RationalFunction(num, den))
        bad += pi_star(phi).R != conjugacy_pi_star(phi).R
    return "conjugacy route equals fibre-sum route", bad == 0, f"{bad} mismatches"


def check_fixed_points(rng: random.Random):
    worst = mpf(0)
    for p in range(2, 7):
        s = LandenState.fixed_point(p, mpf(7) / 2)
        for fn in (step_geometric, step_theorem):
            t, _ = fn(s)
            worst = max(worst, *(abs(x - y) / abs(y) for x, y in zip(t.a + t.b, s.a + s.b)))
    return "binomial fixed points", worst < mpf("1e-13"), f"max rel dev {mpmath.nstr(worst, 3)}"


def check_algorithms(rng: random.Random):
    worst = mpf(0)
    for p in range(2, 6):
        s = LandenState(p, [_rand_q(rng) for _ in range(p - 1)], [_rand_q(rng) for _ in range(p)])
        g, _ = step_geometric(s)
        t, _ = step_theorem(s)
        worst = max(worst, *(abs(x - y) / abs(x) for x, y in zip(g.a + g.b, t.a + t.b)))
    return "closed form equals geometric step", worst < mpf("1e-13"), f"max rel dev {mpmath.nstr(worst, 3)}"


def check_degree_six(rng: random.Random):
    trace = evaluate([0, 0, 0, 0, 1], [1, 0, 0, 0, 0, 0, 1])
    err = abs(trace.U - mp.pi / 3)
    return "int z^4/(z^6+1) = pi/3", trace.converged and err < mpf("1e-12"), f"{trace.steps} steps, err {mpmath.nstr(err, 3)}"


def check_quartic(rng: random.Random):
    a1, b0, b1 = _rand_q(rng), _rand_q(rng), _rand_q(rng)
    trace = evaluate([b1, 0, b0], [1, 0, a1, 0, 1])
    a1m, b0m, b1m = (mpf(x.numerator) / x.denominator for x in (a1, b0, b1))
    closed = (b0m + b1m) * mp.pi / (2 * mpmath.sqrt(2) * mpmath.sqrt(1 + a1m / 2))
    err = abs(trace.U - closed)
    return "quartic closed form", err < mpf("1e-12") and trace.steps == 1, f"err {mpmath.nstr(err, 3)}"


def check_agm(rng: random.Random):
    a, b = rng.uniform(0.1, 10), rng.uniform(0.1, 10)
    err = abs(mp.pi / (2 * agm(a, b).limit) - elliptic_G(a, b).value)
    return "pi/(2 AGM) = G", err < mpf("1e-10"), f"err {mpmath.nstr(err, 3)}"


def check_laurent(rng: random.Random):
    phi = LaurentForm.from_function(lambda k: mpf(rng.uniform(-1, 1)) * mpf(2) ** (-abs(k)), 64, mpf(3) / 2)
    norms = superconvergence_probe(phi, 4)
    ok = all(n <= phi.radius ** (1 - 2 ** (j + 1)) * phi.norm() for j, n in enumerate(norms))
    return "Laurent superconvergence bound", ok, ", ".join(mpmath.nstr(n, 3) for n in norms)


def check_invariance(rng: random.Random):
    s = LandenState(3, [_rand_q(rng), _rand_q(rng)], [_rand_q(rng) for _ in range(3)])
    t, f = step_geometric(s)
    err = abs(s.integral().value - f * t.integral().value)
    return "integral invariant under one step", err < mpf("1e-10"), f"err {mpmath.nstr(err, 3)}"


CHECKS = (
    check_examples,
    check_conjugacy,
    check_fixed_points,
    check_algorithms,
    check_quartic,
    check_degree_six,
    check_invariance,
    check_agm,
    check_laurent,
)


def run_checks(seed: int = 0, *, prec: int = DEFAULT_PREC):
    rng = random.Random(seed)
    with mp.workprec(prec):
        return [check(rng) for check in CHECKS]


__all__ = ["CHECKS", "run_checks"]
