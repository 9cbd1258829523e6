import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacobiuniv.errors import DomainError, NumericError, UnsupportedRegimeError
from jacobiuniv.specfun import (bessel_g, bessel_j, bessel_j_zeros, bessel_jp, cardinal_series,
                                gamma_fn, kernel_J, kernel_J_origin, kernel_L, kernel_L_origin)

mp.mp.dps = 40
ALPHAS = (-0.5, 0.0, 0.3, 1.0, 2.5)


def mp_L(alpha, a, b):
    """Entire bulk kernel from mpmath Bessel functions (a, b > 0, a != b)."""
    a, b = mp.mpf(a), mp.mpf(b)
    nu_p, nu_m = (alpha + 1) / mp.mpf(2), (alpha - 1) / mp.mpf(2)
    raw = mp.sqrt(a * b) / (2 * (a - b)) * (mp.besselj(nu_p, a) * mp.besselj(nu_m, b)
                                           - mp.besselj(nu_p, b) * mp.besselj(nu_m, a))
    return raw / (a ** (alpha / 2) * b ** (alpha / 2))


def mp_J(alpha, a, b):
    a, b = mp.mpf(a), mp.mpf(b)
    sa, sb = mp.sqrt(a), mp.sqrt(b)
    raw = (mp.besselj(alpha, sa) * sb * mp.besselj(alpha, sb, 1)
           - mp.besselj(alpha, sb) * sa * mp.besselj(alpha, sa, 1)) / (2 * (a - b))
    return raw / (a ** (alpha / 2) * b ** (alpha / 2))


# -- gamma ---------------------------------------------------------------------


def test_gamma_examples():
    assert gamma_fn(1.0) == pytest.approx(1.0, rel=1e-15)
    assert gamma_fn(0.5) == pytest.approx(1.7724538509055160, rel=1e-14)
    assert gamma_fn(5.0) == pytest.approx(24.0, rel=1e-14)


def test_gamma_against_mpmath():
    xs = np.concatenate([np.geomspace(1e-3, 1, 40), np.linspace(1, 50, 97)])
    worst = max(abs(gamma_fn(x) / float(mp.gamma(x)) - 1) for x in xs)
    assert worst <= 1e-13


@pytest.mark.parametrize("bad", [0.0, -1.5, math.inf, math.nan])
def test_gamma_domain(bad):
    with pytest.raises(DomainError):
        gamma_fn(bad)


# -- Bessel --------------------------------------------------------------------


def test_bessel_examples():
    assert bessel_j(0.0, 0.0) == 1.0
    ref = math.sqrt(2 / (math.pi * 1.3)) * math.sin(1.3)
    assert bessel_j(0.5, 1.3) == pytest.approx(ref, abs=1e-15)
    assert abs(bessel_j(0.0, 2.404825557695773)) <= 1e-12


@pytest.mark.parametrize("nu", [-0.75, -0.5, 0.0, 0.3, 0.5, 1.0, 1.25, 2.5, 6.0])
def test_bessel_real_against_mpmath(nu):
    xs = np.concatenate([np.linspace(0.01, 12, 60), np.linspace(12.001, 40, 40),
                         [100.0, 777.7, 1e4]])
    got = np.asarray(bessel_j(nu, xs))
    ref = np.array([float(mp.besselj(nu, x)) for x in xs])
    assert np.max(np.abs(got - ref)) <= 1e-11


def test_bessel_complex_against_mpmath():
    zs = [3 + 4j, -2.5 + 0.5j, 11j, 8 - 8j]
    for nu in (0.0, 0.7, 2.0):
        for z in zs:
            ref = complex(mp.besselj(nu, z))
            assert abs(bessel_j(nu, z) - ref) <= 1e-11 * max(1.0, abs(ref))


def test_bessel_g_is_scaled_entire_part():
    for nu in (-0.5, 0.3, 2.5):
        assert bessel_g(nu, 0.0) == pytest.approx(1 / (2**nu * math.gamma(nu + 1)), rel=1e-14)
        x = 3.7
        assert bessel_g(nu, x) * x**nu == pytest.approx(bessel_j(nu, x), rel=1e-13)
        assert bessel_g(nu, -x) == pytest.approx(bessel_g(nu, x), rel=1e-14)


def test_bessel_derivative():
    for nu in (0.0, 0.5, 1.5):
        for x in (0.4, 5.0, 30.0):
            assert bessel_jp(nu, x) == pytest.approx(float(mp.besselj(nu, x, 1)), abs=1e-11)


def test_bessel_errors():
    with pytest.raises(UnsupportedRegimeError):
        bessel_j(0.5, 13 + 1j)
    with pytest.raises(DomainError):
        bessel_j(-1.0, 1.0)


# -- zeros ---------------------------------------------------------------------


def test_zeros_examples():
    np.testing.assert_allclose(bessel_j_zeros(0.5, 3), [math.pi, 2 * math.pi, 3 * math.pi],
                               rtol=0, atol=1e-12)
    assert bessel_j_zeros(0.0, 1)[0] == pytest.approx(2.404825557695773, abs=1e-13)


@pytest.mark.parametrize("nu", [-0.5, 0.0, 0.3, 1.0, 2.5])
def test_zeros_against_mpmath_and_interlacing(nu):
    z = bessel_j_zeros(nu, 40)
    for k in (1, 2, 10, 40):
        if nu >= 0:
            ref = mp.besseljzero(nu, k)
        else:  # besseljzero needs nu >= 0; polish in high precision instead
            ref = mp.findroot(lambda t: mp.besselj(nu, t), (k - 0.5 + nu / 2) * mp.pi)
        assert z[k - 1] == pytest.approx(float(ref), abs=1e-11)
    z1 = bessel_j_zeros(nu + 1, 40)
    assert np.all(z[:-1] < z1[:-1]) and np.all(z1[:-1] < z[1:])
    gaps = np.diff(bessel_j_zeros(nu, 400))
    assert np.all(gaps > 0)
    assert abs(gaps[-1] - math.pi) < abs(gaps[0] - math.pi) + 1e-12
    assert abs(gaps[-1] - math.pi) < 1e-4


def test_zeros_large_count():
    z = bessel_j_zeros(0.0, 10_000)
    assert len(z) == 10_000 and np.all(np.diff(z) > 0)


def test_zeros_bad_count():
    with pytest.raises(DomainError):
        bessel_j_zeros(0.0, 0)


def test_zero_error_type_is_numeric():
    assert issubclass(NumericError, ArithmeticError)


# -- kernels -------------------------------------------------------------------


@pytest.mark.parametrize("alpha", ALPHAS)
def test_kernel_origins(alpha):
    j_ref = 1 / (2 ** (2 * alpha + 2) * math.gamma(alpha + 1) * math.gamma(alpha + 2))
    l_ref = 2 ** (-(alpha + 1)) / (math.gamma((alpha + 3) / 2) * math.gamma((alpha + 1) / 2))
    assert kernel_J(alpha, 0.0, 0.0) == pytest.approx(j_ref, abs=1e-14)
    assert kernel_J(alpha, 0.0) == pytest.approx(j_ref, abs=1e-14)
    assert kernel_L(alpha, 0.0) == pytest.approx(l_ref, abs=1e-14)
    assert kernel_J_origin(alpha) == pytest.approx(j_ref, rel=1e-13)
    assert kernel_L_origin(alpha) == pytest.approx(l_ref, rel=1e-13)


def test_kernel_origin_special_values():
    assert kernel_J(0.0, 0.0, 0.0) == pytest.approx(0.25, abs=1e-15)
    assert kernel_L(0.0, 0.0, 0.0) == pytest.approx(1 / math.pi, abs=1e-15)


def test_sinc_reduction():
    g = np.arange(-10, 10.01, 0.25)
    a, b = np.meshgrid(g, g)
    m = a != b
    got = np.asarray(kernel_L(0.0, a[m], b[m]))
    d = a[m] - b[m]
    assert np.max(np.abs(got - np.sin(d) / (np.pi * d))) <= 1e-10


@pytest.mark.parametrize("alpha", ALPHAS)
def test_L_symmetries(alpha):
    g = np.linspace(-10, 10, 23)
    a, b = np.meshgrid(g, g)
    k = np.asarray(kernel_L(alpha, a, b))
    assert np.max(np.abs(k - np.asarray(kernel_L(alpha, b, a)))) <= 1e-10
    assert np.max(np.abs(k - np.asarray(kernel_L(alpha, -a, -b)))) <= 1e-10


@pytest.mark.parametrize("alpha", ALPHAS)
def test_L_against_mpmath(alpha):
    for a, b in [(0.3, 1.7), (2.0, 9.5), (5.5, 11.0), (13.0, 30.0), (0.05, 0.2)]:
        assert kernel_L(alpha, a, b) == pytest.approx(float(mp_L(alpha, a, b)), abs=1e-11)


@pytest.mark.parametrize("alpha", [0.3, 1.0, 2.5])
def test_L_raw_entire_consistency(alpha):
    g = np.linspace(0.1, 15, 17)
    a, b = np.meshgrid(g, g)
    raw = np.asarray(kernel_L(alpha, a, b, variant="raw"))
    ent = np.asarray(kernel_L(alpha, a, b)) * a ** (alpha / 2) * b ** (alpha / 2)
    assert np.max(np.abs(raw - ent)) <= 1e-12


def test_L_raw_cross_case_and_reflection():
    alpha = 0.6
    a, b = 1.4, -2.2
    ent = kernel_L(alpha, a, b) * abs(a) ** (alpha / 2) * abs(b) ** (alpha / 2)
    assert kernel_L(alpha, a, b, variant="raw") == pytest.approx(ent, abs=1e-12)
    assert kernel_L(alpha, -a, -b, variant="raw") == pytest.approx(
        kernel_L(alpha, a, b, variant="raw"), abs=1e-14)


def test_L_complex_entire():
    z, w = 2 + 1j, -1 + 0.5j
    assert kernel_L(1.0, z, w) == pytest.approx(kernel_L(1.0, w, z), abs=1e-12)
    assert abs(kernel_L(1.0, z, w) - kernel_L(1.0, -z, -w)) <= 1e-12
    with pytest.raises(DomainError):
        kernel_L(1.0, z, w, variant="raw")


@pytest.mark.parametrize("alpha", [0.0, 0.3, 1.0, 2.5])
def test_L_diagonal_matches_limit(alpha):
    for a in (0.7, 4.0, 11.0, 25.0):
        h = 1e-5
        fd = 0.5 * (kernel_L(alpha, a + h, a - h) + kernel_L(alpha, a - h, a + h))
        assert kernel_L(alpha, a) == pytest.approx(fd, rel=1e-6)
        assert kernel_L(alpha, a, a + 1e-7) == pytest.approx(kernel_L(alpha, a), rel=1e-6)


@pytest.mark.parametrize("alpha", [-0.5, 0.3, 1.0, 2.5])
def test_L_large_argument_law(alpha):
    a = np.array([50.0, 100.0, 200.0, 500.0])
    dev = np.abs(np.pi * a**alpha * np.asarray(kernel_L(alpha, a)) - 1)
    assert np.all(dev <= 0.05)
    assert dev[-1] <= dev[0]


def test_J_examples():
    g = [0.3, 1.0, 4.0, 9.0]
    for a in g:
        for b in g:
            assert kernel_J(0.5, a, b, variant="raw") == pytest.approx(
                kernel_J(0.5, b, a, variant="raw"), abs=1e-15)
    h = 1e-5
    fd = 0.5 * (kernel_J(1.0, 2 + h, 2, variant="raw") + kernel_J(1.0, 2 - h, 2, variant="raw")) / 2.0
    assert kernel_J(1.0, 2.0, 2.0) == pytest.approx(fd, rel=1e-6)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_J_against_mpmath(alpha):
    for a, b in [(0.5, 2.0), (3.0, 40.0), (100.0, 150.0), (0.01, 0.02)]:
        assert kernel_J(alpha, a, b) == pytest.approx(float(mp_J(alpha, a, b)), abs=1e-11)


def test_J_errors():
    with pytest.raises(DomainError):
        kernel_J(-1.0, 1.0, 2.0)
    with pytest.raises(DomainError):
        kernel_J(0.5, 0.0, 1.0, variant="raw")
    with pytest.raises(DomainError):
        kernel_L(-2.0, 1.0, 2.0)


@settings(max_examples=60, deadline=None)
@given(st.floats(-0.9, 3.0), st.floats(-12, 12), st.floats(-12, 12))
def test_L_symmetric_property(alpha, a, b):
    assert kernel_L(alpha, a, b) == pytest.approx(kernel_L(alpha, b, a), abs=1e-10)


@settings(max_examples=60, deadline=None)
@given(st.floats(-0.9, 3.0), st.floats(0, 100), st.floats(0, 100))
def test_J_symmetric_property(alpha, a, b):
    assert kernel_J(alpha, a, b) == pytest.approx(kernel_J(alpha, b, a), abs=1e-10)


# -- cardinal series -----------------------------------------------------------


def test_cardinal_series_examples():
    direct = kernel_L(1.0, 0.4, 0.4)
    assert abs(cardinal_series(1.0, 0.4, 0.4, 200) - direct) <= 1e-3
    nodes = bessel_j_zeros(0.0, 5)
    for jk in nodes:
        assert cardinal_series(1.0, 0.9, jk, 50) == pytest.approx(kernel_L(1.0, 0.9, jk), abs=1e-12)
    e100 = abs(cardinal_series(1.0, 0.4, 0.4, 100) - direct)
    e400 = abs(cardinal_series(1.0, 0.4, 0.4, 400) - direct)
    assert e400 <= e100


def test_cardinal_series_bad_truncation():
    with pytest.raises(DomainError):
        cardinal_series(1.0, 0.0, 0.0, 0)
