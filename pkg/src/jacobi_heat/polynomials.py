"""Exact coefficient-level polynomial arithmetic in one and several variables.

One-dimensional polynomials are plain numpy coefficient arrays in the
monomial basis (ascending degree).  SimplexPolynomial stores a k-variate
polynomial as a map from exponent tuples to coefficients, which keeps the
differential-operator algebra exact up to double-precision rounding.
"""

import numpy as np

__all__ = [
    "Polynomial1D",
    "SimplexPolynomial",
    "jacobi_coeffs",
    "jacobi_shifted_coeffs",
    "dirichlet_weight_poly",
]


class Polynomial1D:
    """Univariate polynomial; coeffs[i] multiplies u^i."""

    def __init__(self, coeffs):
        c = np.atleast_1d(np.asarray(coeffs, dtype=float))
        # normalize: strip trailing zeros so degree is well defined
        nz = np.nonzero(c)[0]
        self.coeffs = c[: nz[-1] + 1] if nz.size else np.zeros(1)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, u):
        return np.polynomial.polynomial.polyval(u, self.coeffs)

    def deriv(self):
        return Polynomial1D(np.polynomial.polynomial.polyder(self.coeffs))

    def integ(self):
        return Polynomial1D(np.polynomial.polynomial.polyint(self.coeffs))

    def _coerce(self, other):
        return other if isinstance(other, Polynomial1D) else Polynomial1D([other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        c = np.zeros(n)
        c[: len(self.coeffs)] += self.coeffs
        c[: len(other.coeffs)] += other.coeffs
        return Polynomial1D(c)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (self._coerce(other) * -1.0)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Polynomial1D):
            return Polynomial1D(np.convolve(self.coeffs, other.coeffs))
        return Polynomial1D(self.coeffs * float(other))

    __rmul__ = __mul__

    def max_abs_coeff(self):
        return float(np.max(np.abs(self.coeffs)))

    def __repr__(self):
        return f"Polynomial1D({self.coeffs.tolist()})"


class SimplexPolynomial:
    """Polynomial in k variables stored as {exponent tuple: coefficient}."""

    def __init__(self, terms, k):
        self.k = int(k)
        self.terms = {}
        for expo, coeff in terms.items():
            if len(expo) != self.k:
                raise ValueError(f"exponent {expo} has wrong length for k={self.k}")
            if coeff != 0.0:
                self.terms[tuple(int(e) for e in expo)] = float(coeff)

    @classmethod
    def constant(cls, value, k):
        return cls({(0,) * k: value}, k)

    @classmethod
    def variable(cls, i, k):
        expo = [0] * k
        expo[i] = 1
        return cls({tuple(expo): 1.0}, k)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0.0) + c
        return SimplexPolynomial(out, self.k)

    __radd__ = __add__

    def __neg__(self):
        return SimplexPolynomial({e: -c for e, c in self.terms.items()}, self.k)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, SimplexPolynomial):
            out = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out.get(e, 0.0) + c1 * c2
            return SimplexPolynomial(out, self.k)
        s = float(other)
        return SimplexPolynomial({e: c * s for e, c in self.terms.items()}, self.k)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0 or exponent != int(exponent):
            raise ValueError("only nonnegative integer powers are defined")
        out = SimplexPolynomial.constant(1.0, self.k)
        for _ in range(int(exponent)):
            out = out * self
        return out

    def partial(self, i):
        """Derivative with respect to variable i."""
        out = {}
        for e, c in self.terms.items():
            if e[i] > 0:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = out.get(tuple(ne), 0.0) + c * e[i]
        return SimplexPolynomial(out, self.k)

    def substitute(self, i, poly):
        """Replace variable i by another SimplexPolynomial."""
        out = SimplexPolynomial({}, self.k)
        powers = {0: SimplexPolynomial.constant(1.0, self.k)}
        for e, c in self.terms.items():
            p = e[i]
            if p not in powers:
                powers[p] = poly**p
            rest = list(e)
            rest[i] = 0
            out = out + powers[p] * SimplexPolynomial({tuple(rest): c}, self.k)
        return out

    def __call__(self, points):
        """Evaluate at points of shape (k,) or (M, k)."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        vals = np.zeros(pts.shape[0])
        for e, c in self.terms.items():
            mono = np.full(pts.shape[0], c)
            for i, p in enumerate(e):
                if p:
                    mono = mono * pts[:, i] ** p
            vals += mono
        return float(vals[0]) if np.ndim(points) == 1 else vals

    def max_abs_coeff(self):
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def max_abs_diff(self, other):
        keys = set(self.terms) | set(other.terms)
        return max(
            (abs(self.terms.get(e, 0.0) - other.terms.get(e, 0.0)) for e in keys),
            default=0.0,
        )

    def _coerce(self, other):
        if isinstance(other, SimplexPolynomial):
            if other.k != self.k:
                raise ValueError("mixed variable counts")
            return other
        return SimplexPolynomial.constant(float(other), self.k)

    def __repr__(self):
        return f"SimplexPolynomial(k={self.k}, terms={self.terms})"


def jacobi_coeffs(n, alpha, beta):
    """Monomial coefficients (ascending, in x) of P_n^{alpha,beta} on [-1, 1]."""
    return _jacobi_coeff_recurrence(n, alpha, beta, np.array([-0.0, 1.0]))


def jacobi_shifted_coeffs(n, alpha, beta):
    """Monomial coefficients (ascending, in u) of P_n^{alpha,beta}(2u - 1)."""
    return _jacobi_coeff_recurrence(n, alpha, beta, np.array([-1.0, 2.0]))


def _jacobi_coeff_recurrence(n, alpha, beta, xc):
    """Run the three-term recurrence on coefficient arrays; xc is the argument."""
    P = np.polynomial.polynomial
    prev = np.array([1.0])
    if n == 0:
        return prev
    cur = P.polyadd([alpha + 1.0 - (alpha + beta + 2.0) / 2.0], (alpha + beta + 2.0) / 2.0 * xc)
    for m in range(2, n + 1):
        s = 2.0 * m + alpha + beta
        c0 = 2.0 * m * (m + alpha + beta) * (s - 2.0)
        lin = P.polyadd(s * (s - 2.0) * xc, [alpha * alpha - beta * beta])
        nxt = P.polysub(
            (s - 1.0) / c0 * P.polymul(lin, cur),
            2.0 * (m + alpha - 1.0) * (m + beta - 1.0) * s / c0 * prev,
        )
        prev, cur = cur, nxt
    return cur


def dirichlet_weight_poly(k, N):
    """The weight (1 - u1 - ... - uk)^{N-k-1} as a SimplexPolynomial.

    Requires integer N >= k+1 so the exponent is a nonnegative integer.
    """
    if N < k + 1:
        raise ValueError(f"need N >= k+1 for a polynomial weight, got N={N}, k={k}")
    base = SimplexPolynomial.constant(1.0, k)
    for i in range(k):
        base = base - SimplexPolynomial.variable(i, k)
    return base ** (N - k - 1)
