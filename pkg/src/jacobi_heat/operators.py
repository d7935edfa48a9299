"""Exact application of the simplex diffusion generators to polynomials.

Covers the one-dimensional operator u(1-u) d^2 + (1-Nu) d, its
integration-by-parts companion L = u(1-u) d^2 + (1+(N-4)u) d + (N-2) that
annihilates the Dirichlet weight, and their k-variable generalizations.
All operators act on exact coefficient representations, so the identities
they satisfy can be asserted coefficient-wise.
"""

import numpy as np

from .heat_kernel import kernel_series_1d
from .polynomials import Polynomial1D, SimplexPolynomial
from .special import eigenvalue

__all__ = [
    "jacobi_op_1d",
    "script_l_1d",
    "generalized_jacobi_op",
    "script_l_k",
    "heat_residual_1d",
    "face_derivative_identity",
    "operator_matrix",
]


def _as_poly1d(g):
    return g if isinstance(g, Polynomial1D) else Polynomial1D(g)


def jacobi_op_1d(g, N):
    """Apply u(1-u) g'' + (1-Nu) g'; the degree-n eigenvalue is -n(n+N-1)."""
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    g = _as_poly1d(g)
    d1 = g.deriv()
    d2 = d1.deriv()
    u = Polynomial1D([0.0, 1.0])
    return u * (1.0 - u) * d2 + (1.0 - float(N) * u) * d1


def script_l_1d(f, N):
    """Apply u(1-u) f'' + (1+(N-4)u) f' + (N-2) f.

    This operator annihilates the weight (1-u)^{N-2} and conjugates to
    jacobi_op_1d through it.
    """
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    f = _as_poly1d(f)
    d1 = f.deriv()
    d2 = d1.deriv()
    u = Polynomial1D([0.0, 1.0])
    return u * (1.0 - u) * d2 + (1.0 + (N - 4.0) * u) * d1 + (N - 2.0) * f


def generalized_jacobi_op(g, N):
    """Apply sum_i (1-Nu_i) d_i + sum_i (u_i-u_i^2) d_ii - sum_{i!=j} u_iu_j d_ij."""
    k = g.k
    if k > N - 1:
        raise ValueError(f"need k <= N-1, got k={k}, N={N}")
    out = SimplexPolynomial({}, k)
    firsts = [g.partial(i) for i in range(k)]
    for i in range(k):
        ui = SimplexPolynomial.variable(i, k)
        out = out + (1.0 - float(N) * ui) * firsts[i]
        out = out + (ui - ui * ui) * firsts[i].partial(i)
        for j in range(k):
            if j != i:
                uj = SimplexPolynomial.variable(j, k)
                out = out - ui * uj * firsts[i].partial(j)
    return out


def script_l_k(f, N):
    """Apply the k-variable integration-by-parts operator.

    k(N-k-1) + sum_i [1 + (N-4-2(k-1)) u_i] d_i + sum_i (u_i-u_i^2) d_ii
    - sum_{i!=j} u_iu_j d_ij.  It annihilates (1 - sum u)^{N-k-1} and, for
    k = N-1, coincides with the generalized Jacobi operator.
    """
    k = f.k
    if k > N - 1:
        raise ValueError(f"need k <= N-1, got k={k}, N={N}")
    drift_slope = N - 4.0 - 2.0 * (k - 1)
    out = float(k * (N - k - 1)) * f
    firsts = [f.partial(i) for i in range(k)]
    for i in range(k):
        ui = SimplexPolynomial.variable(i, k)
        out = out + (1.0 + drift_slope * ui) * firsts[i]
        out = out + (ui - ui * ui) * firsts[i].partial(i)
        for j in range(k):
            if j != i:
                uj = SimplexPolynomial.variable(j, k)
                out = out - ui * uj * firsts[i].partial(j)
    return out


def heat_residual_1d(t, c, N, tr, u_grid, dt=1e-4):
    """Max residual of the time-differenced series against its exact derivative.

    The weight-free part g_t of the density is differentiated in t by the
    symmetric five-point stencil (fourth order; this is why t > 2*dt is
    required) and compared against the termwise derivative, where each series
    term is an eigenfunction and contributes -n(n+N-1) times itself.
    """
    if t <= 2.0 * dt:
        raise ValueError(f"need t > 2*dt, got t={t}, dt={dt}")
    u = np.asarray(u_grid, dtype=float)
    n_max = tr.n_max
    g_pp, _ = kernel_series_1d(t + 2.0 * dt, c, u, N, n_max)
    g_p, _ = kernel_series_1d(t + dt, c, u, N, n_max)
    g_m, _ = kernel_series_1d(t - dt, c, u, N, n_max)
    g_mm, _ = kernel_series_1d(t - 2.0 * dt, c, u, N, n_max)
    fd = (-g_pp + 8.0 * g_p - 8.0 * g_m + g_mm) / (12.0 * dt)
    rates = np.array([-float(eigenvalue(n, N)) for n in range(n_max + 1)])
    exact, _ = kernel_series_1d(t, c, u, N, n_max, mode_factors=rates)
    return float(np.max(np.abs(fd - exact)))


def face_derivative_identity(f, k, N, tol=1e-12):
    """Whether d_i f - d_j f vanishes on the face {u_1 + ... + u_k = 1}.

    True iff every pairwise difference of first derivatives is divisible by
    (1 - sum u); checked by substituting u_1 = 1 - u_2 - ... - u_k and
    requiring the remainder's coefficients to vanish.  Holds for f = g * s_k
    whenever the weight exponent N-k-1 is at least 1.
    """
    if f.k != k:
        raise ValueError(f"polynomial has {f.k} variables, expected {k}")
    if k == 1:
        return True
    ones = SimplexPolynomial.constant(1.0, k)
    sub = ones
    for i in range(1, k):
        sub = sub - SimplexPolynomial.variable(i, k)
    scale = max(1.0, f.max_abs_coeff())
    for i in range(k):
        for j in range(i + 1, k):
            diff = f.partial(i) - f.partial(j)
            rem = diff.substitute(0, sub)
            if rem.max_abs_coeff() > tol * scale:
                return False
    return True


def operator_matrix(op, k, N, max_degree):
    """Matrix of a polynomial operator in the graded monomial basis.

    Returns (matrix, exponents) where exponents lists the multi-indices of
    total degree <= max_degree in graded order.  Used to read off the
    spectrum of the generator on low-degree polynomials.
    """
    exponents = []
    for d in range(max_degree + 1):
        exponents.extend(_exponents_of_degree(d, k))
    index = {e: i for i, e in enumerate(exponents)}
    mat = np.zeros((len(exponents), len(exponents)))
    for col, e in enumerate(exponents):
        image = op(SimplexPolynomial({e: 1.0}, k), N)
        for ee, coeff in image.terms.items():
            if ee not in index:
                raise AssertionError(f"operator left the degree-{max_degree} space")
            mat[index[ee], col] = coeff
    return mat, exponents


def _exponents_of_degree(d, k):
    if k == 1:
        return [(d,)]
    out = []
    for lead in range(d, -1, -1):
        out.extend((lead,) + rest for rest in _exponents_of_degree(d - lead, k - 1))
    return out

