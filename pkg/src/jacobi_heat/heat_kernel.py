"""Transition densities on [0, 1] and on the 2-simplex with certified truncation.

The one-dimensional density is

    f_t(c, u) = [sum_n e^{-n(n+N-1)t} (2n+N-1) P_n^{N-2,0}(2c-1) P_n^{N-2,0}(2u-1)]
                * (1-u)^{N-2},

and the two-dimensional one is the analogous expansion over the simplex
polynomials Q_{n-j,j}.  Densities are always reported with their Dirichlet
weight factor included, i.e. with respect to Lebesgue measure on the simplex.
Truncations carry a rigorous tail bound built from the endpoint values of the
normalized polynomials (|P_n/P_n(1)| <= 1 on [-1, 1]).
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .special import eigenvalue, jacobi_table

__all__ = [
    "Truncation",
    "TruncationWarning",
    "DensityQuery1",
    "DensityQuery2",
    "auto_truncation",
    "auto_truncation_2d",
    "kernel_series_1d",
    "kernel_series_2d",
    "density_1d",
    "density_1d_values",
    "density_2d",
    "density_2d_values",
    "eigen_transform_check",
    "chapman_kolmogorov_check",
]

MAX_MODES = 10**5


class TruncationWarning(UserWarning):
    """Raised (as a warning) when a series was cut off inconsistently."""


@dataclass(frozen=True)
class Truncation:
    """Series cutoff with a certified absolute tail bound."""

    n_max: int
    tol: float
    achieved_bound: float

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")
        if self.tol <= 0.0:
            raise ValueError(f"tol must be positive, got {self.tol}")


@dataclass(frozen=True)
class DensityQuery1:
    """Evaluation request for the 1-D density; t = 0 (a Dirac mass) is refused."""

    t: float
    c: float
    u: float
    N: int

    def __post_init__(self):
        if self.t <= 0.0:
            raise ValueError("t must be positive (t = 0 is a Dirac mass)")
        if not (0.0 <= self.c <= 1.0 and 0.0 <= self.u <= 1.0):
            raise ValueError("c and u must lie in [0, 1]")
        if self.N < 2:
            raise ValueError(f"N must be >= 2, got {self.N}")


@dataclass(frozen=True)
class DensityQuery2:
    """Evaluation request for the 2-D density on the closed 2-simplex."""

    t: float
    c: tuple
    u: tuple
    N: int

    def __post_init__(self):
        if self.t <= 0.0:
            raise ValueError("t must be positive (t = 0 is a Dirac mass)")
        if self.N < 3:
            raise ValueError(f"N must be >= 3, got {self.N}")
        for name, (a, b) in (("c", self.c), ("u", self.u)):
            if a < -1e-12 or b < -1e-12 or a + b > 1.0 + 1e-12:
                raise ValueError(f"{name} = ({a}, {b}) outside the closed 2-simplex")


def _term_bound_1d(n, t, N):
    """Bound (2n+N-1) P_n^{N-2,0}(1)^2 e^{-n(n+N-1)t} on the n-th kernel term."""
    b = 1.0
    for i in range(1, N - 1):
        b *= (n + i) / i
    return (2 * n + N - 1) * b * b * math.exp(-eigenvalue(n, N) * t)


def _endpoint_sq(m, a):
    """[P_m^{a,0}(1)]^2 = [(a+1)_m / m!]^2 computed as a product of ratios."""
    b = 1.0
    for i in range(1, m + 1):
        b *= (a + i) / i
    return b * b


def _term_bound_2d(n, t, N):
    """Tail bound on the n-th shell of the 2-simplex expansion."""
    s = 0.0
    for j in range(n + 1):
        s += (
            (2 * n + N - 1)
            * (2 * j + N - 2)
            * _endpoint_sq(n - j, N - 2 + 2 * j)
            * _endpoint_sq(j, N - 3)
        )
    return s * math.exp(-eigenvalue(n, N) * t)


def _auto_truncation(t, N, tol, term_bound):
    if t <= 0.0:
        raise ValueError("t must be positive")
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    bounds = [term_bound(0, t, N)]
    n = 0
    while True:
        n += 1
        if n > MAX_MODES:
            raise ValueError(
                f"t = {t} too small: truncation would exceed {MAX_MODES} modes"
            )
        bounds.append(term_bound(n, t, N))
        if n >= 2 and bounds[n] < bounds[n - 1] and bounds[n] < tol * 1e-6:
            break
    # geometric remainder for everything past the scan
    r = bounds[-1] / bounds[-2] if bounds[-2] > 0.0 else 0.0
    remainder = bounds[-1] * r / (1.0 - r) if r < 1.0 else math.inf
    tail = remainder
    suffix = [0.0] * len(bounds)
    for i in range(len(bounds) - 1, -1, -1):
        suffix[i] = tail
        tail += bounds[i]
    for n_max in range(1, len(bounds)):
        if suffix[n_max] <= tol:
            return Truncation(n_max=n_max, tol=tol, achieved_bound=suffix[n_max])
    raise ValueError(f"could not certify tolerance {tol} at t = {t}")  # pragma: no cover


def auto_truncation(t, N, tol):
    """Smallest cutoff whose certified 1-D series tail is below tol."""
    return _auto_truncation(t, N, tol, _term_bound_1d)


def auto_truncation_2d(t, N, tol):
    """Smallest cutoff whose certified 2-simplex series tail is below tol."""
    if N < 3:
        raise ValueError(f"N must be >= 3, got {N}")
    return _auto_truncation(t, N, tol, _term_bound_2d)


def kernel_series_1d(t, c, u, N, n_max, mode_factors=None):
    """Kernel part of the 1-D density (the series without the (1-u)^{N-2} weight).

    u may be a scalar or an array.  mode_factors, if given, multiplies the
    n-th term by mode_factors[n]; this lets callers apply the diagonal action
    of the generator (each term is an eigenfunction).  Returns (values,
    last_term_max) where the second entry is the largest magnitude the final
    term attains on the evaluation set.
    """
    u_arr = np.atleast_1d(np.asarray(u, dtype=float))
    pu = jacobi_table(n_max, N - 2.0, 0.0, 2.0 * u_arr - 1.0)
    pc = jacobi_table(n_max, N - 2.0, 0.0, np.asarray(2.0 * c - 1.0))
    ns = np.arange(n_max + 1)
    w = np.exp(-ns * (ns + N - 1.0) * t) * (2.0 * ns + N - 1.0) * pc
    if mode_factors is not None:
        w = w * np.asarray(mode_factors, dtype=float)
    # Neumaier accumulation over the mode index
    total = np.zeros_like(u_arr)
    comp = np.zeros_like(u_arr)
    last = np.zeros_like(u_arr)
    for n in range(n_max + 1):
        term = w[n] * pu[n]
        if n == n_max:
            last = term
        fresh = total + term
        comp += np.where(np.abs(total) >= np.abs(term), (total - fresh) + term, (term - fresh) + total)
        total = fresh
    vals = total + comp
    out = vals if np.ndim(u) else float(vals[0])
    return out, float(np.max(np.abs(last)))


def _check_last_term(last_term_max, tr, t, N):
    # estimate the first omitted term from the exponential decay of the rates;
    # it must stay inside what the certificate claims for the whole tail
    est_next = last_term_max * math.exp(-(eigenvalue(tr.n_max + 1, N) - eigenvalue(tr.n_max, N)) * t)
    if est_next > max(tr.tol, 10.0 * tr.achieved_bound):
        warnings.warn(
            f"estimated first omitted term ({est_next:.3e}) exceeds the certified "
            f"tail bound ({tr.achieved_bound:.3e}); truncation may be insufficient",
            TruncationWarning,
            stacklevel=3,
        )


def density_1d_values(t, c, u, N, tr):
    """Vectorized 1-D density f_t(c, u) including the (1-u)^{N-2} weight."""
    series, last = kernel_series_1d(t, c, u, N, tr.n_max)
    _check_last_term(last, tr, t, N)
    return series * (1.0 - np.asarray(u, dtype=float)) ** (N - 2)


def density_1d(q, tr):
    """Density of the first squared coordinate at time t, started from c."""
    return float(density_1d_values(q.t, q.c, q.u, q.N, tr))


def kernel_series_2d(t, c, pts, N, n_max):
    """Kernel part of the 2-simplex density at points pts (shape (M, 2)).

    Sums e^{-n(n+N-1)t} Q_{n-j,j}(c) Q_{n-j,j}(u) / ||Q_{n-j,j}||^2 over all
    n <= n_max, 0 <= j <= n.  Returns (values, last_shell_max).
    """
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    c1, c2 = float(c[0]), float(c[1])
    u1 = pts[:, 0]
    u2 = pts[:, 1]
    x = 2.0 * u1 - 1.0
    rem = 1.0 - u1
    safe = rem > 1e-300
    z = np.where(safe, np.clip(2.0 * u2 / np.where(safe, rem, 1.0) - 1.0, -1.0, 1.0), 1.0)

    cx = 2.0 * c1 - 1.0
    crem = 1.0 - c1
    cz = min(1.0, max(-1.0, 2.0 * c2 / crem - 1.0)) if crem > 1e-300 else 1.0

    ns = np.arange(n_max + 1)
    decay = np.exp(-ns * (ns + N - 1.0) * t)

    inner_u_all = jacobi_table(n_max, N - 3.0, 0.0, z)
    inner_c_all = jacobi_table(n_max, N - 3.0, 0.0, np.asarray(cz))

    total = np.zeros(len(pts))
    comp = np.zeros(len(pts))
    shell = np.zeros(len(pts))
    for j in range(n_max + 1):
        a = N - 2.0 + 2.0 * j
        if j == 0:
            inner_u = np.ones(len(pts))
            inner_c = 1.0
        else:
            inner_u = np.where(safe, rem**j, 0.0) * inner_u_all[j]
            inner_c = (crem**j * float(inner_c_all[j])) if crem > 1e-300 else 0.0
        outer_u = jacobi_table(n_max - j, a, 0.0, x)
        outer_c = jacobi_table(n_max - j, a, 0.0, np.asarray(cx))
        m = np.arange(n_max - j + 1)
        n = m + j
        w = decay[n] * (2.0 * n + N - 1.0) * (2.0 * j + N - 2.0) * outer_c * inner_c
        contrib = (w[:, None] * outer_u).sum(axis=0) * inner_u
        shell += w[-1] * outer_u[-1] * inner_u
        fresh = total + contrib
        comp += np.where(
            np.abs(total) >= np.abs(contrib),
            (total - fresh) + contrib,
            (contrib - fresh) + total,
        )
        total = fresh
    return total + comp, float(np.max(np.abs(shell)))


def density_2d_values(t, c, pts, N, tr):
    """Vectorized 2-D density including the (1-u1-u2)^{N-3} weight."""
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    series, last = kernel_series_2d(t, c, pts, N, tr.n_max)
    _check_last_term(last, tr, t, N)
    s2 = np.clip(1.0 - pts[:, 0] - pts[:, 1], 0.0, None) ** (N - 3)
    return series * s2


def density_2d(q, tr):
    """Joint density of the first two squared coordinates at time t."""
    return float(density_2d_values(q.t, q.c, np.array([q.u]), q.N, tr)[0])


def eigen_transform_check(n, t, c, N):
    """Project the density on the n-th Jacobi mode by quadrature.

    Returns the integral of P_n^{N-2,0}(2u-1) f_t(c, u) du, which the
    spectral form predicts to be e^{-n(n+N-1)t} P_n^{N-2,0}(2c-1).
    """
    from .quadrature import gauss_jacobi_rule

    rule = gauss_jacobi_rule(64, N - 2.0, 0.0)
    tr = auto_truncation(t, N, 1e-13)
    series, _ = kernel_series_1d(t, c, rule.nodes, N, tr.n_max)
    pn = jacobi_table(n, N - 2.0, 0.0, 2.0 * rule.nodes - 1.0)[n]
    return float(np.dot(rule.weights, series * pn))


def chapman_kolmogorov_check(t, s, c, u, N):
    """Semigroup composition: compare int f_t(c, v) f_s(v, u) dv with f_{t+s}(c, u).

    The v-integral is taken with Lebesgue measure; each density already
    carries its own weight factor, so the Gauss-Jacobi rule absorbs the
    (1-v)^{N-2} of the first factor and the second factor contributes its
    weight at the fixed endpoint u.  Returns (lhs, rhs).
    """
    from .quadrature import gauss_jacobi_rule

    if t <= 0.0 or s <= 0.0:
        raise ValueError("both time arguments must be positive")
    rule = gauss_jacobi_rule(64, N - 2.0, 0.0)
    tr_t = auto_truncation(t, N, 1e-12)
    tr_s = auto_truncation(s, N, 1e-12)
    first, _ = kernel_series_1d(t, c, rule.nodes, N, tr_t.n_max)
    second, _ = kernel_series_1d(s, u, rule.nodes, N, tr_s.n_max)
    s1_u = (1.0 - u) ** (N - 2)
    lhs = float(np.dot(rule.weights, first * second)) * s1_u
    tr_ts = auto_truncation(t + s, N, 1e-12)
    rhs = float(density_1d_values(t + s, c, u, N, tr_ts))
    return lhs, rhs
