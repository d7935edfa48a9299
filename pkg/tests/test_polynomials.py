import numpy as np
import pytest

from jacobi_heat.polynomials import (
    Polynomial1D,
    SimplexPolynomial,
    dirichlet_weight_poly,
    jacobi_coeffs,
    jacobi_shifted_coeffs,
)
from jacobi_heat.special import jacobi_p


def test_polynomial1d_arithmetic():
    p = Polynomial1D([1.0, 2.0])  # 1 + 2u
    q = Polynomial1D([0.0, 0.0, 3.0])  # 3u^2
    assert (p + q).coeffs.tolist() == [1.0, 2.0, 3.0]
    assert (p * q).coeffs.tolist() == [0.0, 0.0, 3.0, 6.0]
    assert (1.0 - p).coeffs.tolist() == [0.0, -2.0]
    assert p(0.5) == 2.0
    assert p.deriv().coeffs.tolist() == [2.0]
    assert q.integ()(1.0) == pytest.approx(1.0)
    assert Polynomial1D([0.0]).degree == 0


def test_simplex_polynomial_arithmetic():
    u = SimplexPolynomial.variable(0, 2)
    v = SimplexPolynomial.variable(1, 2)
    p = (1.0 - u - v) ** 2
    assert p.total_degree() == 2
    assert p((0.25, 0.25)) == pytest.approx(0.25)
    assert p.partial(0).max_abs_diff(p.partial(1)) == 0.0
    q = u * v - 2.0 * u
    pts = np.array([[0.1, 0.2], [0.3, 0.4]])
    np.testing.assert_allclose(q(pts), pts[:, 0] * pts[:, 1] - 2.0 * pts[:, 0])


def test_simplex_polynomial_substitute():
    u = SimplexPolynomial.variable(0, 2)
    v = SimplexPolynomial.variable(1, 2)
    p = u**2 + v
    # u -> 1 - v turns it into (1-v)^2 + v
    got = p.substitute(0, 1.0 - v)
    want = (1.0 - v) * (1.0 - v) + v
    assert got.max_abs_diff(want) == 0.0


def test_simplex_polynomial_validation():
    with pytest.raises(ValueError):
        SimplexPolynomial({(1, 2, 3): 1.0}, 2)
    with pytest.raises(ValueError):
        SimplexPolynomial.variable(0, 2) ** -1
    with pytest.raises(ValueError):
        SimplexPolynomial.variable(0, 2) + SimplexPolynomial.variable(0, 3)


@pytest.mark.parametrize("n,a,b", [(0, 1.0, 0.0), (3, 2.0, 0.0), (6, 0.0, 3.0), (9, 4.0, 0.0)])
def test_jacobi_coefficient_expansions(n, a, b):
    xs = np.linspace(-1.0, 1.0, 7)
    direct = jacobi_p(n, (a, b), xs)
    cx = jacobi_coeffs(n, a, b)
    via_coeffs = np.polynomial.polynomial.polyval(xs, cx)
    # monomial-basis evaluation cancels; accuracy is relative to the coefficient scale
    np.testing.assert_allclose(via_coeffs, direct, atol=1e-13 * np.max(np.abs(cx)))
    us = 0.5 * (xs + 1.0)
    cu = jacobi_shifted_coeffs(n, a, b)
    via_shifted = np.polynomial.polynomial.polyval(us, cu)
    np.testing.assert_allclose(via_shifted, direct, atol=1e-13 * np.max(np.abs(cu)))


def test_dirichlet_weight_poly():
    s2 = dirichlet_weight_poly(2, 5)
    assert s2((0.2, 0.3)) == pytest.approx(0.5**2)
    # N = k+1 gives exponent zero: the weight degenerates to the constant 1
    s3 = dirichlet_weight_poly(3, 4)
    assert s3.total_degree() == 0
    assert s3((0.1, 0.2, 0.3)) == 1.0
    with pytest.raises(ValueError):
        dirichlet_weight_poly(3, 3)
