import random
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from mpmath import mp, mpf

from conftest import random_fraction, random_positive
from ratlanden.errors import AccuracyError, DomainError
from ratlanden.exactpoly import I, Polynomial
from ratlanden.quadrature import (
    RootCertificate,
    cauchy_bound,
    elliptic_G,
    gauss_legendre,
    integrate_halfline,
    integrate_interval,
    integrate_real_line,
    locate_sign_change,
    no_real_root_certificate,
    real_root_count,
)
from ratlanden.quadrature import _prepare, _tan_integrand

TOL = mpf("1e-12")


@pytest.fixture(autouse=True)
def precision():
    with mp.workprec(128):
        yield


# -- oracle values --------------------------------------------------------------


@pytest.mark.parametrize(
    "num, den, expected",
    [
        ([1], [1, 0, 1], mp.pi / 2),
        ([1], [1, 0, 2, 0, 1], mp.pi / 4),
        ([1, 0, 2, 0, 1], [1, 0, 3, 0, 3, 0, 1], mp.pi / 2),
        ([0, 0, 0, 0, 1], [1, 0, 0, 0, 0, 0, 1], mp.pi / 3),
    ],
)
def test_halfline_examples(num, den, expected):
    res = integrate_halfline(num, den, TOL)
    assert abs(res.value - expected) < TOL
    assert res.est_error <= TOL * max(1, abs(res.value))


def test_quartic_closed_form():
    for a in (mpf(1) / 3, mpf(1), mpf(7)):
        den = [1, 0, 2 * a, 0, 1]
        closed = mp.pi / (2 ** mpf(1.5) * mpmath.sqrt(a + 1))
        assert abs(integrate_halfline([1], den, TOL).value - closed) < TOL


def test_real_line_is_twice_halfline_for_even_integrands():
    full = integrate_real_line([1], [1, 0, 1], TOL).value
    assert abs(full - mp.pi) < TOL


def test_real_line_complex_numerator():
    res = integrate_real_line(Polynomial([1 + I]), Polynomial([1, 0, 1]), TOL)
    assert abs(res.value - mpmath.mpc(mp.pi, mp.pi)) < TOL


def test_domain_errors():
    with pytest.raises(DomainError):
        integrate_halfline([1], [-1, 0, 1])
    with pytest.raises(DomainError):
        integrate_halfline([0, 1], [1, 0, 1])  # decays only like 1/z
    with pytest.raises(DomainError):
        integrate_halfline([1], [])


def test_accuracy_error_carries_best_estimate():
    with pytest.raises(AccuracyError) as info:
        integrate_interval(lambda t: mpmath.sqrt(t), 0, 1, mpf("1e-30"), max_panels=8)
    assert info.value.best is not None
    assert abs(info.value.best.value - mpf(2) / 3) < 1e-3


def test_gauss_legendre_exact_for_polynomials():
    nodes, weights = gauss_legendre(10, 128)
    assert abs(mpmath.fsum(weights) - 2) < mpf("1e-35")
    # degree 19 is integrated exactly by the 10-point rule
    assert abs(mpmath.fsum(w * x**18 for x, w in zip(nodes, weights)) - mpf(2) / 19) < mpf("1e-35")


# -- properties ----------------------------------------------------------------------


def _random_positive_even(rng, p):
    # product of (z^2 + r) factors, r > 0, is positive on R
    den = Polynomial([1])
    for _ in range(p):
        den = den * Polynomial([random_positive(rng, 4), 0, 1])
    num = Polynomial([random_positive(rng) if k % 2 == 0 else 0 for k in range(2 * p - 1)])
    return num, den


def test_substitution_consistency():
    rng = random.Random(2)
    for _ in range(20):
        num, den = _random_positive_even(rng, rng.randint(1, 3))
        lam = random_positive(rng, 3)
        num_s, den_s = num.scale_variable(lam), den.scale_variable(lam)
        direct = integrate_halfline(num, den, TOL)
        scaled = integrate_halfline(num_s, den_s, TOL)
        lam_m = mpf(lam.numerator) / lam.denominator
        assert abs(direct.value - lam_m * scaled.value) <= 2 * TOL * max(1, abs(direct.value))


def test_panel_doubling_within_error_estimate():
    rng = random.Random(4)
    for _ in range(10):
        num, den = _random_positive_even(rng, 2)
        coarse = integrate_halfline(num, den, mpf("1e-8"))
        f = _tan_integrand(*_prepare(num, den))
        fine = integrate_interval(f, 0, mp.pi / 2, mpf("1e-8"), initial_panels=8)
        assert abs(coarse.value - fine.value) <= coarse.est_error


def test_elliptic_G():
    assert abs(elliptic_G(1, 1).value - mp.pi / 2) < TOL
    for a, b in ((1, 2), (mpf("0.3"), 7)):
        g = elliptic_G(a, b).value
        assert abs(g - elliptic_G((a + b) / 2, mpmath.sqrt(a * b)).value) < TOL
    with pytest.raises(DomainError):
        elliptic_G(0, 1)


# -- real-root certificate ----------------------------------------------------------------


def test_certificate_examples():
    assert no_real_root_certificate([1, 0, 2, 0, 1]) is RootCertificate.POSITIVE
    assert no_real_root_certificate([4, 0, -5, 0, 1]) is RootCertificate.ROOT
    assert no_real_root_certificate([Fraction(1, 10**30), 0, 1]) is RootCertificate.POSITIVE
    assert no_real_root_certificate([0, 0, 1]) is RootCertificate.ROOT  # double root the scan cannot see
    assert no_real_root_certificate([-1, 0, -1]) is RootCertificate.INCONCLUSIVE
    assert no_real_root_certificate([3]) is RootCertificate.POSITIVE


def test_locate_sign_change_brackets_root():
    lo, hi = locate_sign_change([4, 0, -5, 0, 1])
    assert any(lo <= r <= hi for r in (-2, -1, 1, 2))
    assert hi - lo < Fraction(1, 10**10)


def test_root_count_and_bound():
    p = Polynomial([4, 0, -5, 0, 1])
    assert real_root_count(p) == 4
    assert real_root_count(p, 0, 3) == 2
    assert cauchy_bound(p) == 6


def test_certificate_soundness_dense_rescan():
    rng = random.Random(9)
    xs_unit = np.linspace(-1.0, 1.0, 10**6)
    checked = 0
    for _ in range(60):
        coeffs = [random_positive(rng, 3)] + [random_fraction(rng, -2, 2) for _ in range(rng.choice([1, 3, 5]))] + [1]
        cert = no_real_root_certificate(coeffs)
        if cert is not RootCertificate.POSITIVE:
            continue
        checked += 1
        m = float(cauchy_bound(Polynomial(coeffs)))
        values = np.polyval([float(c) for c in reversed(coeffs)], xs_unit * m)
        assert np.all(values > 0)
    assert checked >= 10
