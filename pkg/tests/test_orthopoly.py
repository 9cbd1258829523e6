import math

import mpmath as mp
import numpy as np
import pytest
from scipy.special import eval_jacobi

from jacobiuniv.errors import DomainError, PreconditionError
from jacobiuniv.measure import GJMeasure, make_model_bulk, make_model_edge
from jacobiuniv.orthopoly import (RecurrenceTable, composite_quadrature, eval_orthonormal,
                                  gauss_rule, jacobi_recurrence, lanczos_recurrence,
                                  poly_zeros, recurrence_for, symmetric_singular_recurrence)


def test_legendre_coefficients():
    t = jacobi_recurrence(0.0, 0.0, 6)
    assert t.mass == pytest.approx(2.0)
    np.testing.assert_allclose(t.diag.astype(float), 0.0, atol=1e-18)
    k = np.arange(1, 6)
    np.testing.assert_allclose(t.offdiag[1:].astype(float), k / np.sqrt(4 * k * k - 1), rtol=1e-15)


@pytest.mark.parametrize("a, b", [(0.5, -0.25), (1.0, 0.0), (-0.5, 2.5)])
def test_jacobi_against_scipy_polynomials(a, b):
    t = jacobi_recurrence(a, b, 12)
    x = np.linspace(-0.95, 0.95, 9)
    for n in (1, 5, 11):
        p, _ = eval_orthonormal(t, n, x)
        h = float(2 ** (a + b + 1) / (2 * n + a + b + 1) * mp.gamma(n + a + 1) * mp.gamma(n + b + 1)
                  / (mp.gamma(n + a + b + 1) * mp.factorial(n)))
        ref = eval_jacobi(n, a, b, x) / math.sqrt(h)
        np.testing.assert_allclose(p, ref, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("alpha", [-0.5, 0.3, 1.0, 2.5])
def test_symmetric_singular_matches_lanczos(alpha):
    closed = symmetric_singular_recurrence(alpha, 40)
    lan = lanczos_recurrence(make_model_bulk(alpha), 40)
    assert closed.mass == pytest.approx(lan.mass, rel=1e-13)
    np.testing.assert_allclose(closed.offdiag.astype(float), lan.offdiag.astype(float),
                               rtol=1e-11, atol=1e-12)
    np.testing.assert_allclose(lan.diag.astype(float), 0.0, atol=1e-12)


def test_lanczos_matches_jacobi_at_edge():
    lan = lanczos_recurrence(make_model_edge(1.0), 50)
    ref = jacobi_recurrence(1.0, 0.0, 50)
    np.testing.assert_allclose(lan.diag.astype(float), ref.diag.astype(float), atol=1e-12)
    np.testing.assert_allclose(lan.offdiag.astype(float), ref.offdiag.astype(float), atol=1e-12)


def test_orthonormality_under_quadrature(backend):
    mu = GJMeasure(((-1, -0.4), (0.2, 1)), ((0.6, 1.0),), ("poly", (1.5, 0.25)))
    t = lanczos_recurrence(mu, 20)
    rule = composite_quadrature(mu, 40)
    vals = np.array([eval_orthonormal(t, k, rule.nodes)[0] for k in range(20)])
    gram = (vals * rule.weights) @ vals.T
    np.testing.assert_allclose(gram, np.eye(20), atol=1e-11)


def test_recurrence_for_dispatch():
    assert np.all(recurrence_for(make_model_bulk(1.0), 10).diag == 0)
    t = recurrence_for(GJMeasure(((-1, 1),), (), ("const", 3.0)), 4)
    assert t.mass == pytest.approx(6.0)


def test_lanczos_precondition():
    mu = make_model_bulk(0.0)
    with pytest.raises(PreconditionError):
        lanczos_recurrence(mu, 30, rule=composite_quadrature(mu, 20))


def test_zeros_and_gauss_rule():
    t = jacobi_recurrence(0.0, 0.0, 10)
    z = poly_zeros(t, 5)
    ref, w_ref = np.polynomial.legendre.leggauss(5)
    np.testing.assert_allclose(z, ref, atol=1e-14)
    rule = gauss_rule(t, 5)
    np.testing.assert_allclose(rule.weights, w_ref, atol=1e-14)
    assert rule.integrate(lambda x: x**8) == pytest.approx(2 / 9, rel=1e-13)
    assert poly_zeros(t, 1)[0] == pytest.approx(0.0, abs=1e-18)


def test_eval_degree_bounds():
    t = jacobi_recurrence(0.0, 0.0, 4)
    with pytest.raises(PreconditionError):
        eval_orthonormal(t, 4, 0.0)
    p0, pm = eval_orthonormal(t, 0, 0.3)
    assert p0 == pytest.approx(1 / math.sqrt(2)) and pm == 0.0


def test_large_degree_does_not_overflow(backend):
    t = jacobi_recurrence(0.0, 0.0, 2001)
    p, q = eval_orthonormal(t, 2000, np.array([1.0, -0.3]))
    assert p[0] == pytest.approx(math.sqrt(2000.5), rel=1e-12)
    assert q[0] == pytest.approx(math.sqrt(1999.5), rel=1e-12)
    assert abs(p[1]) < 2 and abs(q[1]) < 2


def test_csv_roundtrip():
    t = jacobi_recurrence(0.5, 0.25, 6)
    text = t.to_csv()
    assert text.startswith("k,b_k,a_k\n") and "\r" not in text
    back = RecurrenceTable.from_csv(text, t.mass)
    np.testing.assert_allclose(back.diag.astype(float), t.diag.astype(float), rtol=1e-16)


@pytest.mark.parametrize("n", [0, 100_001])
def test_size_limits(n):
    with pytest.raises(DomainError):
        jacobi_recurrence(0.0, 0.0, n)
