"""Numeric laboratory for the q -> 1 asymptotics.

Exact ingredients (Bernoulli polynomials, Gaussian derivative polynomials,
character-twisted Bernoulli combinations, coefficient tables) stay in
rational arithmetic; everything evaluated at a real point runs through
mpmath with an explicit working precision, because quantities like
exp(5 pi^2 / (24 t)) overflow double-precision ratio chains long before
the interesting regime.

The Euler-Maclaurin expansions implement, term by term,

  sum_{m>=0} g((m+a)z) = (1/z) I(g) - sum_{n<N} B_{n+1}(a) g^(n)(0) z^n/(n+1)!
                          + O(z^N)

and its two-dimensional analogue with two boundary sums and a Bernoulli
double sum; companion direct summations provide the numeric oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from qlab import catalog


class ConvergenceTooSlow(RuntimeError):
    """The defining sum/product needs more terms than the cap allows at
    this evaluation point."""


_MAX_FACTORS = 2_000_000


# ----------------------------------------------------------------------
# Bernoulli polynomials, exact
# ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def bernoulli_number(n):
    """B_n with B_1 = -1/2, by the standard recurrence."""
    if n == 0:
        return Fraction(1)
    acc = Fraction(0)
    for k in range(n):
        acc += Fraction(math.comb(n + 1, k)) * bernoulli_number(k)
    return -acc / (n + 1)


@lru_cache(maxsize=None)
def bernoulli_polynomial(n):
    """Coefficients of B_n(x), ascending, exact."""
    return tuple(Fraction(math.comb(n, k)) * bernoulli_number(n - k)
                 for k in range(n + 1))


def bernoulli_poly_eval(n, x):
    """B_n(x) for exact rational x."""
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(bernoulli_polynomial(n)):
        acc = acc * x + c
    return acc


def character_bernoulli_combo(n):
    """sum over j in {1,3,5,7} of (2|j) * B_n(j/8), exact.

    The weights are the values 1, -1, -1, 1 of the quadratic character
    mod 8; the combination vanishes for the first two odd n, which is what
    kills the half-integral powers in the one-dimensional boundary sum.
    """
    weights = {1: 1, 3: -1, 5: -1, 7: 1}
    return sum(w * bernoulli_poly_eval(n, Fraction(j, 8))
               for j, w in weights.items())


def signed_bernoulli_combo(n):
    """sum over delta, r in {0,1} of (-1)^(delta+r) B_(n+1)(delta/2 + (1+2r)/8).

    Exact; the values at n = 1 and n = 3 (1/4 and -11/128) are the two
    constants entering the z-linear term of the lattice-sum expansion.
    """
    acc = Fraction(0)
    for delta in (0, 1):
        for r in (0, 1):
            a = Fraction(delta, 2) + Fraction(1 + 2 * r, 8)
            acc += (-1) ** (delta + r) * bernoulli_poly_eval(n + 1, a)
    return acc


# ----------------------------------------------------------------------
# the two fixed Gaussian test functions, with exact derivative polynomials
# ----------------------------------------------------------------------


class GaussianDecay1D:
    """g(x) = exp(-a x^2); derivatives are (exact polynomial) * g."""

    def __init__(self, a=8):
        self.a = Fraction(a)

    @lru_cache(maxsize=None)
    def derivative_poly(self, n):
        """Polynomial p_n with g^(n) = p_n * g, coefficients ascending."""
        if n == 0:
            return (Fraction(1),)
        p = self.derivative_poly(n - 1)
        # p' - 2 a x p
        out = [Fraction(0)] * (len(p) + 1)
        for k, c in enumerate(p):
            if k >= 1:
                out[k - 1] += k * c
            out[k + 1] -= 2 * self.a * c
        while out and not out[-1]:
            out.pop()
        return tuple(out)

    def derivative_at_zero(self, n):
        p = self.derivative_poly(n)
        return p[0] if p else Fraction(0)

    def value(self, x):
        return mp.exp(-self.a * mp.mpf(x) ** 2)

    def derivative_value(self, n, x):
        x = mp.mpf(x)
        acc = mp.mpf(0)
        for c in reversed(self.derivative_poly(n)):
            acc = acc * x + mp.mpf(c.numerator) / c.denominator
        return acc * mp.exp(-self.a * x ** 2)

    def integral(self):
        """Integral of g over [0, inf) = sqrt(pi/a)/2."""
        return mp.sqrt(mp.pi / mp.mpf(float(self.a))) / 2


def _gamma_half_moment(k, c):
    """Integral of y^k exp(-c y^2) over [0, inf) = Gamma((k+1)/2)/(2 c^((k+1)/2))."""
    c = mp.mpf(float(c))
    return mp.gamma(mp.mpf(k + 1) / 2) / (2 * c ** (mp.mpf(k + 1) / 2))


class GaussianDecay2D:
    """f(x, y) = exp(-(axx x^2 + axy x y + ayy y^2)) on the first quadrant.

    The default (8, 8, 1) is the quadratic form of the shifted lattice sum;
    it is positive on x, y >= 0 even though it is indefinite globally, which
    is all the quadrant integrals need.
    """

    def __init__(self, axx=8, axy=8, ayy=1):
        self.axx = Fraction(axx)
        self.axy = Fraction(axy)
        self.ayy = Fraction(ayy)

    @lru_cache(maxsize=None)
    def partial_poly(self, nx, ny):
        """Bivariate polynomial p with f^(nx,ny) = p * f, as {(i,j): coeff}."""
        if nx == 0 and ny == 0:
            return ((0, 0, Fraction(1)),)
        if nx > 0:
            prev = self.partial_poly(nx - 1, ny)
            var = 0
        else:
            prev = self.partial_poly(nx, ny - 1)
            var = 1
        out = {}

        def add(i, j, c):
            if c:
                out[(i, j)] = out.get((i, j), Fraction(0)) + c

        # d(p f)/dvar = (dp/dvar + p * dQ/dvar) f
        for i, j, c in prev:
            if var == 0:
                if i >= 1:
                    add(i - 1, j, i * c)
                add(i + 1, j, -2 * self.axx * c)
                add(i, j + 1, -self.axy * c)
            else:
                if j >= 1:
                    add(i, j - 1, j * c)
                add(i, j + 1, -2 * self.ayy * c)
                add(i + 1, j, -self.axy * c)
        return tuple(sorted((i, j, c) for (i, j), c in out.items() if c))

    def partial_at_origin(self, nx, ny):
        for i, j, c in self.partial_poly(nx, ny):
            if i == 0 and j == 0:
                return c
        return Fraction(0)

    def value(self, x, y):
        x, y = mp.mpf(x), mp.mpf(y)
        return mp.exp(-(self.axx * x * x + self.axy * x * y + self.ayy * y * y))

    def x_boundary_integral(self, n):
        """Integral over y in [0, inf) of f^(n,0)(0, y)."""
        acc = mp.mpf(0)
        for i, j, c in self.partial_poly(n, 0):
            if i == 0:
                acc += (mp.mpf(c.numerator) / c.denominator
                        * _gamma_half_moment(j, self.ayy))
        return acc

    def y_boundary_integral(self, m):
        """Integral over x in [0, inf) of f^(0,m)(x, 0)."""
        acc = mp.mpf(0)
        for i, j, c in self.partial_poly(0, m):
            if j == 0:
                acc += (mp.mpf(c.numerator) / c.denominator
                        * _gamma_half_moment(i, self.axx))
        return acc

    def double_integral(self):
        """Integral of f over the first quadrant (numeric)."""
        return mp.quad(lambda x, y: self.value(x, y), [0, mp.inf], [0, mp.inf])


# ----------------------------------------------------------------------
# Euler-Maclaurin expansions and their direct-sum oracles
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class EMExpansion:
    value: object           # mpf
    integral_term: object   # mpf
    boundary_term: object   # mpf (total of the Bernoulli corrections)


def em_sum_1d(g, a, z, N):
    """Right-hand side of the one-dimensional expansion, truncated at O(z^N)."""
    z = mp.mpf(z)
    integral = g.integral() / z
    boundary = mp.mpf(0)
    for n in range(N):
        b = bernoulli_poly_eval(n + 1, Fraction(a))
        d = g.derivative_at_zero(n)
        if b and d:
            coeff = Fraction(b * d, math.factorial(n + 1))
            boundary += (mp.mpf(coeff.numerator) / coeff.denominator) * z ** n
    return EMExpansion(integral - boundary, integral, -boundary)


def direct_sum_1d(g, a, z, tol=None, max_terms=2_000_000):
    """Direct evaluation of sum_{m>=0} g((m+a)z)."""
    z = mp.mpf(z)
    if tol is None:
        tol = mp.mpf(10) ** (-(mp.mp.dps - 5))
    acc = mp.mpf(0)
    m = 0
    while True:
        t = g.value((m + mp.mpf(float(Fraction(a)))) * z)
        acc += t
        if m > 4 and abs(t) < tol * max(abs(acc), mp.mpf(1)):
            return acc
        m += 1
        if m > max_terms:
            raise ConvergenceTooSlow("1d lattice sum needs > %d terms" % max_terms)


@dataclass(frozen=True)
class EMExpansion2D:
    value: object
    integral_term: object
    x_boundary_term: object
    y_boundary_term: object
    corner_term: object


def em_sum_2d(f, a1, a2, z, N, double_integral=None):
    """Right-hand side of the two-dimensional expansion, truncated at O(z^N).

    ``double_integral`` may be supplied to avoid recomputing the quadrature
    when assembling several shifted copies of the same function.
    """
    z = mp.mpf(z)
    a1 = Fraction(a1)
    a2 = Fraction(a2)
    ii = f.double_integral() if double_integral is None else double_integral
    integral = ii / (z * z)
    bx = mp.mpf(0)
    for n1 in range(N + 1):
        b = bernoulli_poly_eval(n1 + 1, a1)
        if b:
            w = Fraction(b, math.factorial(n1 + 1))
            bx += (mp.mpf(w.numerator) / w.denominator) * z ** n1 \
                * f.x_boundary_integral(n1)
    bx = -bx / z
    by = mp.mpf(0)
    for n2 in range(N + 1):
        b = bernoulli_poly_eval(n2 + 1, a2)
        if b:
            w = Fraction(b, math.factorial(n2 + 1))
            by += (mp.mpf(w.numerator) / w.denominator) * z ** n2 \
                * f.y_boundary_integral(n2)
    by = -by / z
    corner = mp.mpf(0)
    for n1 in range(N):
        for n2 in range(N - n1):
            b1 = bernoulli_poly_eval(n1 + 1, a1)
            b2 = bernoulli_poly_eval(n2 + 1, a2)
            d = f.partial_at_origin(n1, n2)
            if b1 and b2 and d:
                w = Fraction(b1 * b2 * d,
                             math.factorial(n1 + 1) * math.factorial(n2 + 1))
                corner += (mp.mpf(w.numerator) / w.denominator) * z ** (n1 + n2)
    value = integral + bx + by + corner
    return EMExpansion2D(value, integral, bx, by, corner)


def direct_sum_2d(f, a1, a2, z, tol=None, max_side=20_000):
    """Direct evaluation of sum_{m1,m2>=0} f((m1+a1)z, (m2+a2)z)."""
    z = mp.mpf(z)
    if tol is None:
        tol = mp.mpf(10) ** (-(mp.mp.dps - 5))
    a1 = mp.mpf(float(Fraction(a1)))
    a2 = mp.mpf(float(Fraction(a2)))
    acc = mp.mpf(0)
    m1 = 0
    while True:
        row = mp.mpf(0)
        m2 = 0
        while True:
            t = f.value((m1 + a1) * z, (m2 + a2) * z)
            row += t
            if m2 > 4 and abs(t) < tol * max(abs(acc) + abs(row), mp.mpf(1)):
                break
            m2 += 1
            if m2 > max_side:
                raise ConvergenceTooSlow("2d lattice sum row needs > %d terms" % max_side)
        acc += row
        if m1 > 4 and abs(row) < tol * max(abs(acc), mp.mpf(1)):
            return acc
        m1 += 1
        if m1 > max_side:
            raise ConvergenceTooSlow("2d lattice sum needs > %d rows" % max_side)


def w1_lattice_tail(z, N=4):
    """The assembled expansion of the shifted-lattice part of W1.

    Sums the four (delta, r)-shifted copies of the fixed 2d Gaussian with
    the sign (-1)^(delta+r), weights 2 e^(z/8), and evaluation at sqrt(z);
    the result is 1 - z/2 + O(z^2).
    """
    f = GaussianDecay2D()
    ii = f.double_integral()
    sz = mp.sqrt(mp.mpf(z))
    acc = mp.mpf(0)
    for delta in (0, 1):
        for r in (0, 1):
            a1 = Fraction(delta, 2) + Fraction(1 + 2 * r, 8)
            em = em_sum_2d(f, a1, 1, sz, N, double_integral=ii)
            acc += (-1) ** (delta + r) * em.value
    return 2 * mp.exp(mp.mpf(z) / 8) * acc


def w1_lattice_tail_direct(z):
    """Direct-sum oracle for :func:`w1_lattice_tail`."""
    f = GaussianDecay2D()
    sz = mp.sqrt(mp.mpf(z))
    acc = mp.mpf(0)
    for delta in (0, 1):
        for r in (0, 1):
            a1 = Fraction(delta, 2) + Fraction(1 + 2 * r, 8)
            acc += (-1) ** (delta + r) * direct_sum_2d(f, a1, 1, sz)
    return 2 * mp.exp(mp.mpf(z) / 8) * acc


# ----------------------------------------------------------------------
# numeric evaluation of the named series at q = exp(-t)
# ----------------------------------------------------------------------


def _qexp(t):
    return mp.exp(-mp.mpf(t))


def _suffix_products(q, max_exp, step, sign, eps):
    """table[m] = prod_{j>=0} (1 + sign * q^(m + step*j)) for m = 1..max_exp.

    Computed from the top down; the tail above max_exp is within eps of 1.
    """
    table = [mp.mpf(1)] * (max_exp + step + 1)
    for m in range(max_exp, 0, -1):
        table[m] = (1 + sign * q ** m) * table[min(m + step, max_exp + step)]
    return table


def _series_cutoff(t, dps):
    # q^M below the working precision: M * t > dps * ln(10)
    return int(mp.ceil(dps * mp.log(10) / t)) + 4


def eval_numeric(name, t, precision=30):
    """Value of a named series at q = exp(-t), t in (0, 0.5].

    Computed from the defining sum/product with working precision
    ``precision`` digits; raises :class:`ConvergenceTooSlow` when the
    cutoff implied by t exceeds the internal caps.
    """
    t = float(t)
    if not 0 < t <= 0.5:
        raise ValueError("t must lie in (0, 0.5]")
    with mp.workdps(precision + 15):
        q = _qexp(t)
        eps = mp.mpf(10) ** (-(precision + 10))
        value = _EVALUATORS[name](q, t, eps)
    with mp.workdps(precision):
        return +value


def _eval_euler_product(q, t, eps):
    acc = mp.mpf(1)
    j = 1
    while True:
        f = q ** j
        if f < eps:
            return acc
        acc *= (1 - f)
        j += 1
        if j > _MAX_FACTORS:
            raise ConvergenceTooSlow("(q;q)_inf needs > %d factors" % _MAX_FACTORS)


def _eval_theta(q, t, eps):
    acc = mp.mpf(1)
    n = 1
    while True:
        f = q ** (n * n)
        if f < eps:
            return acc
        acc += 2 * (-1) ** n * f
        n += 1


def _eval_w1(q, t, eps):
    acc = mp.mpf(0)
    ratio = mp.mpf(1)  # (q;q)_n / (-q;q)_n
    n = 0
    while True:
        term = (-1) ** n * ratio * q ** (n * (n + 1) // 2)
        acc += term
        if n > 2 and abs(term) < eps:
            return acc
        n += 1
        qn = q ** n
        ratio *= (1 - qn) / (1 + qn)
        if n > _MAX_FACTORS:
            raise ConvergenceTooSlow("W1 sum needs > %d terms" % _MAX_FACTORS)


def _eval_phi(q, t, eps):
    acc = mp.mpf(0)
    den = mp.mpf(1)
    n = 0
    while True:
        term = q ** (n * n) / den
        acc += term
        if n > 2 and abs(term) < eps:
            return acc
        n += 1
        den *= (1 + q ** (2 * n))


def _eval_pod(q, t, eps):
    # q(1+q) sum_n (-q^(2n+3);q^2)_inf q^(2n) / (q^(2n+2);q)_inf,
    # the single-sum regrouping of the two defining sums
    dps = mp.mp.dps
    cutoff = _series_cutoff(t, dps)
    if cutoff > 400_000:
        raise ConvergenceTooSlow("cutoff %d too large at t=%s" % (cutoff, t))
    geom = _suffix_products(q, cutoff, 1, -1, eps)   # (q^m;q)_inf
    odd = _suffix_products(q, cutoff, 2, 1, eps)     # (-q^m;q^2)_inf
    acc = mp.mpf(0)
    n = 0
    while True:
        e = 2 * n
        if e + 3 > cutoff:
            break
        term = odd[e + 3] / geom[e + 2] * q ** e
        acc += term
        if n > 2 and term < eps * max(acc, mp.mpf(1)):
            break
        n += 1
    return q * (1 + q) * acc


def _eval_pev(q, t, eps):
    # sum_n (-q^(2n+2);q)_inf q^(2n+1)/(q^(2n+2);q^2)_inf
    #  + sum_{n>=1} (-q^(2n);q)_inf q^(2n)/(q^(2n);q^2)_inf
    dps = mp.mp.dps
    cutoff = _series_cutoff(t, dps)
    if cutoff > 400_000:
        raise ConvergenceTooSlow("cutoff %d too large at t=%s" % (cutoff, t))
    neg = _suffix_products(q, cutoff, 1, 1, eps)     # (-q^m;q)_inf
    even = _suffix_products(q, cutoff, 2, -1, eps)   # (q^m;q^2)_inf
    acc = mp.mpf(0)
    n = 0
    while True:
        e = 2 * n
        if e + 2 > cutoff:
            break
        term = neg[e + 2] / even[e + 2] * q ** (e + 1)
        if n >= 1:
            term += neg[e] / even[e] * q ** e
        acc += term
        if n > 2 and term < eps * max(acc, mp.mpf(1)):
            break
        n += 1
    return acc


_EVALUATORS = {
    "euler_product": _eval_euler_product,
    "theta": _eval_theta,
    "w1": _eval_w1,
    "phi": _eval_phi,
    "pod": _eval_pod,
    "pev": _eval_pev,
}


def eval_names():
    return sorted(_EVALUATORS)


def euler_product_reference(t, precision=30):
    """sqrt(2 pi / t) exp(-pi^2/(6t)), the q -> 1 shape of (q;q)_inf."""
    with mp.workdps(precision):
        t = mp.mpf(t)
        return mp.sqrt(2 * mp.pi / t) * mp.exp(-mp.pi ** 2 / (6 * t))


def pod_profile_ratio(t, precision=40):
    """pod(e^-t) * sqrt(2 pi) * t^(-3/2) * exp(-5 pi^2/(24 t)) -> 1."""
    with mp.workdps(precision + 20):
        val = eval_numeric("pod", t, precision + 15)
        t = mp.mpf(t)
        ref = t ** mp.mpf("1.5") * mp.exp(5 * mp.pi ** 2 / (24 * t)) / mp.sqrt(2 * mp.pi)
        out = val / ref
    with mp.workdps(precision):
        return +out


def w1_slope_ratio(t, precision=40):
    """2 (1 - W1(e^-t)) / t -> 1."""
    with mp.workdps(precision + 15):
        w1 = eval_numeric("w1", t, precision + 10)
        out = 2 * (1 - w1) / mp.mpf(t)
    with mp.workdps(precision):
        return +out


# ----------------------------------------------------------------------
# coefficient / main-term ratio tables
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class RatioRow:
    n: int
    coefficient: int     # exact, from the integer fast lane
    main_term: object    # mpf
    ratio: object        # mpf


def main_term(family, n, precision=30):
    """Leading-order growth of the family's counting function."""
    if n < 1:
        raise ValueError("main term undefined at n = %d" % n)
    with mp.workdps(precision):
        n_ = mp.mpf(n)
        if family == "pod":
            return (5 * mp.pi / (48 * mp.sqrt(2) * n_ ** mp.mpf("1.5"))
                    * mp.exp(mp.pi * mp.sqrt(5 * n_ / 6)))
        if family in ("pev", "g", "p"):
            return mp.exp(mp.pi * mp.sqrt(2 * n_ / 3)) / (4 * mp.sqrt(3) * n_)
        raise KeyError("no main term for family %r" % family)


def ratio_table(family, n_values, precision=30):
    """Exact coefficients against the asymptotic main term.

    The coefficients come from the integer fast lane (never floating
    point); only the main term and the ratio are numeric.
    """
    if family not in ("pod", "pev", "g", "p"):
        raise KeyError("no ratio table for family %r" % family)
    n_values = sorted(int(n) for n in n_values)
    if n_values and n_values[0] < 1:
        raise ValueError("main term undefined at n = %d" % n_values[0])
    table = catalog.coefficient_table(family, max(n_values) if n_values else 0)
    rows = []
    with mp.workdps(precision):
        for n in n_values:
            b = table[n]
            m = main_term(family, n, precision)
            rows.append(RatioRow(n, b, m, mp.mpf(b) / m))
    return rows
