"""Exact truncated Laurent series arithmetic in q.

Coefficients are exact throughout: Python ints, ``fractions.Fraction``, or
``ZetaPolynomial`` (a finite Laurent polynomial in an auxiliary refinement
variable zeta, the coefficient domain of the two-variable series).

A :class:`LaurentSeries` carries a truncation ``order``: coefficients at
exponents above ``order`` are *unknown*, never implicitly zero.  Every
operation recomputes the order it can certify, so a reported coefficient is
always exact.  ``order`` may be ``math.inf`` for exactly known Laurent
polynomials (monomials, finite products).

Infinite sums are described declaratively by :class:`TermGenerator`: each
term is a :class:`QTerm` (monomial prefactor times a quotient of
q-Pochhammer products) with a certified lower bound on term valuations that
lets :func:`sum_terms` truncate soundly.  Substituting zeta by a signed
q-power happens term-wise on generators, never on a q-truncated
two-variable object, so negative powers of q introduced by the substitution
stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Union

INF = math.inf

Scalar = Union[int, Fraction]

_MAX_TERMS = 1_000_000  # runaway guard for malformed generators


class SeriesError(ArithmeticError):
    """Base class for series arithmetic failures."""


class ZeroLeadingCoefficient(SeriesError):
    """Inversion of a series that is zero (or not a unit) up to its order."""


class DivergentProduct(SeriesError):
    """Infinite Pochhammer product whose factors do not stabilize."""


class ValuationViolation(SeriesError):
    """A term fell below its declared valuation bound, or a substitution
    produced a vanishing denominator; the formal sum is not certifiable."""


def _inverse_scalar(c):
    """Exact multiplicative inverse of a coefficient."""
    if isinstance(c, ZetaPolynomial):
        return c.inverse()
    if isinstance(c, int):
        if c in (1, -1):
            return c
        if c == 0:
            raise ZeroLeadingCoefficient("cannot invert 0")
        return Fraction(1, c)
    if not c:
        raise ZeroLeadingCoefficient("cannot invert 0")
    return 1 / c


class ZetaPolynomial:
    """Finite Laurent polynomial in zeta with exact rational coefficients.

    Stored as a sparse map from zeta-exponent (possibly negative) to a
    nonzero int/Fraction.  Supports ring arithmetic with other
    ZetaPolynomials and with plain scalars.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                if v:
                    c[k] = v
        self._c = c

    @classmethod
    def scalar(cls, value):
        return cls({0: value})

    @classmethod
    def monomial(cls, coeff, exponent):
        return cls({exponent: coeff})

    def coefficient(self, exponent):
        return self._c.get(exponent, 0)

    def items(self):
        return self._c.items()

    def support(self):
        return sorted(self._c)

    def collapse(self):
        """Sum of all coefficients, i.e. the value at zeta = 1."""
        return sum(self._c.values())

    def is_monomial(self):
        return len(self._c) == 1

    def inverse(self):
        """Inverse, defined only for monomials c*zeta^k."""
        if len(self._c) != 1:
            raise ZeroLeadingCoefficient(
                "zeta-polynomial inverse requires a monomial, got %r" % (self,))
        (k, v), = self._c.items()
        return ZetaPolynomial({-k: _inverse_scalar(v)})

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, ZetaPolynomial):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self._c
            return set(self._c) == {0} and self._c[0] == other
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ZetaPolynomial.scalar(other)
        elif not isinstance(other, ZetaPolynomial):
            return NotImplemented
        c = dict(self._c)
        for k, v in other._c.items():
            w = c.get(k, 0) + v
            if w:
                c[k] = w
            else:
                c.pop(k, None)
        out = ZetaPolynomial.__new__(ZetaPolynomial)
        out._c = c
        return out

    __radd__ = __add__

    def __neg__(self):
        out = ZetaPolynomial.__new__(ZetaPolynomial)
        out._c = {k: -v for k, v in self._c.items()}
        return out

    def __sub__(self, other):
        return self + (-ZetaPolynomial.scalar(other) if isinstance(other, (int, Fraction))
                       else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZetaPolynomial()
            out = ZetaPolynomial.__new__(ZetaPolynomial)
            out._c = {k: v * other for k, v in self._c.items()}
            return out
        if not isinstance(other, ZetaPolynomial):
            return NotImplemented
        c = {}
        for k1, v1 in self._c.items():
            for k2, v2 in other._c.items():
                k = k1 + k2
                w = c.get(k, 0) + v1 * v2
                if w:
                    c[k] = w
                else:
                    c.pop(k, None)
        out = ZetaPolynomial.__new__(ZetaPolynomial)
        out._c = c
        return out

    __rmul__ = __mul__

    def __repr__(self):
        if not self._c:
            return "0"
        bits = []
        for k in self.support():
            v = self._c[k]
            if k == 0:
                bits.append(str(v))
            elif k == 1:
                bits.append("%s*z" % v)
            else:
                bits.append("%s*z^%d" % (v, k))
        return " + ".join(bits).replace("+ -", "- ")


def _as_coeff(value):
    if isinstance(value, (int, Fraction, ZetaPolynomial)):
        return value
    raise TypeError("unsupported coefficient type %r" % type(value))


class LaurentSeries:
    """Truncated formal Laurent series in q with exact coefficients.

    ``coeffs[i]`` is the coefficient of ``q**(valuation + i)``; coefficients
    are certified for exponents up to ``order`` inclusive and unknown above.
    Series are stored trimmed (no leading/trailing zero coefficients), so
    structural equality agrees with coefficient equality.  Instances are
    immutable and safe to share between threads.

    ``==`` compares coefficient ranges up to the smaller of the two orders
    (the only comparison the truncation semantics can certify); it is
    therefore not transitive across different orders.
    """

    __slots__ = ("valuation", "coeffs", "order")

    def __init__(self, valuation, coeffs, order=INF):
        coeffs = [_as_coeff(c) for c in coeffs]
        lo = 0
        hi = len(coeffs)
        while lo < hi and not coeffs[lo]:
            lo += 1
        while hi > lo and not coeffs[hi - 1]:
            hi -= 1
        valuation += lo
        coeffs = coeffs[lo:hi]
        if order != INF:
            order = int(order)
            if coeffs and valuation + len(coeffs) - 1 > order:
                keep = order - valuation + 1
                coeffs = coeffs[:max(keep, 0)]
                while coeffs and not coeffs[-1]:
                    coeffs.pop()
        if not coeffs:
            valuation = 0
        object.__setattr__(self, "valuation", valuation)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @staticmethod
    def zero(order=INF):
        return LaurentSeries(0, (), order)

    @staticmethod
    def one(order=INF):
        return LaurentSeries(0, (1,), order)

    @staticmethod
    def monomial(coeff=1, exponent=0, order=INF):
        return LaurentSeries(exponent, (coeff,), order)

    @staticmethod
    def from_dict(d, order=INF):
        if not d:
            return LaurentSeries.zero(order)
        lo = min(d)
        hi = max(d)
        return LaurentSeries(lo, [d.get(i, 0) for i in range(lo, hi + 1)], order)

    # ------------------------------------------------------------------
    # inspection
    # ------------------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def effective_valuation(self):
        """Valuation for order bookkeeping; order + 1 for a zero series."""
        if self.coeffs:
            return self.valuation
        return self.order + 1 if self.order != INF else INF

    def degree(self):
        """Highest stored nonzero exponent, or None for the zero series."""
        if not self.coeffs:
            return None
        return self.valuation + len(self.coeffs) - 1

    def coefficient(self, exponent):
        """Exact coefficient of q**exponent; raises above the order."""
        if self.order != INF and exponent > self.order:
            raise SeriesError(
                "coefficient of q^%d not certified (order %s)" % (exponent, self.order))
        i = exponent - self.valuation
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def coefficients(self):
        """Iterate (exponent, coefficient) over stored nonzero terms."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.valuation + i, c

    def is_bivariate(self):
        return any(isinstance(c, ZetaPolynomial) for c in self.coeffs)

    # ------------------------------------------------------------------
    # ring operations
    # ------------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, ZetaPolynomial)):
            other = LaurentSeries.monomial(other, 0)
        elif not isinstance(other, LaurentSeries):
            return NotImplemented
        order = min(self.order, other.order)
        if self.is_zero():
            return other.truncate(order)
        if other.is_zero():
            return self.truncate(order)
        lo = min(self.valuation, other.valuation)
        hi = max(self.valuation + len(self.coeffs),
                 other.valuation + len(other.coeffs))
        if order != INF:
            hi = min(hi, int(order) + 1)
        out = [0] * max(hi - lo, 0)
        for i, c in enumerate(self.coeffs):
            j = self.valuation + i - lo
            if 0 <= j < len(out):
                out[j] = out[j] + c
        for i, c in enumerate(other.coeffs):
            j = other.valuation + i - lo
            if 0 <= j < len(out):
                out[j] = out[j] + c
        return LaurentSeries(lo, out, order)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.valuation, [-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, ZetaPolynomial)):
            other = LaurentSeries.monomial(other, 0)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor):
        """Multiply every coefficient by an exact scalar or zeta-polynomial."""
        if not factor:
            return LaurentSeries.zero(self.order)
        return LaurentSeries(self.valuation, [c * factor for c in self.coeffs],
                             self.order)

    def shift(self, k):
        """Multiply by q**k."""
        order = self.order if self.order == INF else self.order + k
        return LaurentSeries(self.valuation + k, self.coeffs, order)

    def mul(self, other, order=None):
        """Cauchy product, optionally capped at ``order``.

        The certified order is min(a.order + val(b), b.order + val(a)): the
        first exponent that could receive a contribution from an unknown
        coefficient is excluded.
        """
        if isinstance(other, (int, Fraction, ZetaPolynomial)):
            out = self.scale(other)
            return out if order is None else out.truncate(order)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        cap = min(self.order + other.effective_valuation(),
                  other.order + self.effective_valuation())
        if order is not None:
            cap = min(cap, order)
        if self.is_zero() or other.is_zero():
            return LaurentSeries.zero(cap)
        lo = self.valuation + other.valuation
        hi = lo + len(self.coeffs) + len(other.coeffs) - 1
        if cap != INF:
            hi = min(hi, int(cap) + 1)
        if hi <= lo:
            return LaurentSeries.zero(cap)
        out = [0] * (hi - lo)
        a, b = self.coeffs, other.coeffs
        if len(a) > len(b):
            a, b = b, a
        for i, ca in enumerate(a):
            if not ca:
                continue
            jmax = min(len(b), len(out) - i)
            for j in range(jmax):
                cb = b[j]
                if cb:
                    out[i + j] = out[i + j] + ca * cb
        return LaurentSeries(lo, out, cap)

    def __mul__(self, other):
        return self.mul(other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ZetaPolynomial)):
            return self.scale(other)
        return NotImplemented

    def pow(self, k, order=None):
        if k < 0:
            raise ValueError("negative power; use invert()")
        out = LaurentSeries.one()
        for _ in range(k):
            out = out.mul(self, order)
        return out

    def truncate(self, order):
        """Forget coefficients above ``order`` (never extends knowledge)."""
        order = min(self.order, order)
        return LaurentSeries(self.valuation, self.coeffs, order)

    def invert(self, order=None):
        """Multiplicative inverse.

        A series certified to finite order N with valuation v has inverse
        certified to N - 2v.  Exact inputs (order = inf) have genuinely
        infinite inverses, so an explicit ``order`` is required for them.
        """
        if self.is_zero():
            raise ZeroLeadingCoefficient("series is zero up to its order")
        v = self.valuation
        if self.order == INF:
            if order is None:
                raise ValueError("order required to invert an exact series")
            target = int(order)
        else:
            target = int(self.order) - 2 * v
            if order is not None:
                target = min(target, int(order))
        m = target + v  # relative order of the inverse of the unit part
        if m < 0:
            return LaurentSeries.zero(target)
        lead_inv = _inverse_scalar(self.coeffs[0])
        a = self.coeffs
        out = [0] * (m + 1)
        out[0] = lead_inv
        for n in range(1, m + 1):
            acc = 0
            for j in range(1, min(n, len(a) - 1) + 1):
                aj = a[j]
                if aj:
                    acc = acc + aj * out[n - j]
            if acc:
                out[n] = -(acc * lead_inv)
        return LaurentSeries(-v, out, target)

    def div(self, other, order=None):
        if isinstance(other, (int, Fraction)):
            out = self.scale(_inverse_scalar(other))
            return out if order is None else out.truncate(order)
        if not isinstance(other, LaurentSeries):
            raise TypeError("cannot divide by %r" % type(other))
        if other.order == INF:
            if order is not None:
                target = int(order)
            elif self.order != INF:
                target = int(self.order) - other.effective_valuation()
            else:
                raise ValueError("order required to divide by an exact series")
            sv = self.effective_valuation()
            binv = other.invert(target - (sv if sv != INF else 0))
        else:
            binv = other.invert(order)
        return self.mul(binv, order)

    def __truediv__(self, other):
        return self.div(other)

    def substitute_q_power(self, m):
        """The map q -> q**m (m a positive integer); order becomes m*order.

        Exponents that are not multiples of m are structurally zero, hence
        certified, so the m*order contract is sound.
        """
        if m < 1 or m != int(m):
            raise ValueError("exponent must be a positive integer")
        m = int(m)
        if m == 1:
            return self
        order = self.order if self.order == INF else m * int(self.order)
        return LaurentSeries.from_dict({m * e: c for e, c in self.coefficients()}, order)

    # ------------------------------------------------------------------
    # zeta helpers (two-variable series)
    # ------------------------------------------------------------------

    def zeta_collapse(self):
        """Replace every zeta-polynomial coefficient by its value at zeta = 1."""
        out = [c.collapse() if isinstance(c, ZetaPolynomial) else c for c in self.coeffs]
        return LaurentSeries(self.valuation, out, self.order)

    def zeta_coefficient(self, m):
        """The q-series of coefficients of zeta**m."""
        out = []
        for c in self.coeffs:
            if isinstance(c, ZetaPolynomial):
                out.append(c.coefficient(m))
            else:
                out.append(c if m == 0 else 0)
        return LaurentSeries(self.valuation, out, self.order)

    def zeta_degrees(self):
        """(min, max) zeta-exponent over all stored coefficients, or None."""
        lo = hi = None
        for c in self.coeffs:
            if isinstance(c, ZetaPolynomial) and c:
                s = c.support()
                lo = s[0] if lo is None else min(lo, s[0])
                hi = s[-1] if hi is None else max(hi, s[-1])
        if lo is None:
            return None
        return lo, hi

    # ------------------------------------------------------------------
    # comparison / output
    # ------------------------------------------------------------------

    def first_mismatch(self, other, order=None):
        """First differing (q-exponent, zeta-exponent, lhs, rhs), or None.

        Coefficients are compared up to min(self.order, other.order, order);
        the zeta-exponent entry is None for rational coefficients.
        """
        cap = min(self.order, other.order)
        if order is not None:
            cap = min(cap, order)
        lows = [v for v in (self.effective_valuation(), other.effective_valuation())
                if v != INF]
        if not lows:
            return None
        lo = min(lows)
        if cap == INF:
            highs = [s.degree() for s in (self, other) if s.degree() is not None]
            if not highs:
                return None
            cap = max(highs)
        for e in range(int(lo), int(cap) + 1):
            a = self.coefficient(e)
            b = other.coefficient(e)
            if a != b:
                if isinstance(a, ZetaPolynomial) or isinstance(b, ZetaPolynomial):
                    za = a if isinstance(a, ZetaPolynomial) else ZetaPolynomial.scalar(a)
                    zb = b if isinstance(b, ZetaPolynomial) else ZetaPolynomial.scalar(b)
                    for k in sorted(set(za.support()) | set(zb.support())):
                        if za.coefficient(k) != zb.coefficient(k):
                            return (e, k, za.coefficient(k), zb.coefficient(k))
                return (e, None, a, b)
        return None

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentSeries.monomial(other, 0)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.first_mismatch(other) is None

    __hash__ = None

    def to_json_dict(self):
        """JSON form: {"valuation": v, "order": N, "coeffs": ["p/q", ...]}."""
        if self.is_bivariate():
            raise SeriesError("JSON serialization is defined for rational series only")
        return {
            "valuation": self.valuation,
            "order": None if self.order == INF else int(self.order),
            "coeffs": [str(Fraction(c)) for c in self.coeffs],
        }

    def __repr__(self):
        terms = []
        for e, c in self.coefficients():
            cs = "(%r)" % c if isinstance(c, ZetaPolynomial) else str(c)
            if e == 0:
                terms.append(cs)
            elif e == 1:
                terms.append("%s*q" % cs)
            else:
                terms.append("%s*q^%d" % (cs, e))
            if len(terms) >= 8:
                terms.append("...")
                break
        body = " + ".join(terms) if terms else "0"
        tail = "" if self.order == INF else " + O(q^%d)" % (int(self.order) + 1)
        return body.replace("+ -", "- ") + tail


# ----------------------------------------------------------------------
# monomials in (zeta, q) and Pochhammer products
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Mono:
    """Exact signed monomial coeff * zeta**zeta_exp * q**q_exp."""

    coeff: Scalar = 1
    zeta_exp: int = 0
    q_exp: int = 0

    def times(self, other):
        return Mono(self.coeff * other.coeff, self.zeta_exp + other.zeta_exp,
                    self.q_exp + other.q_exp)

    def power(self, k):
        if k == 0:
            return Mono(1, 0, 0)
        c = self.coeff ** abs(k)
        if k < 0:
            c = _inverse_scalar(c)
        return Mono(c, self.zeta_exp * k, self.q_exp * k)

    def negated(self):
        return Mono(-self.coeff, self.zeta_exp, self.q_exp)

    def inverse(self):
        return Mono(_inverse_scalar(self.coeff), -self.zeta_exp, -self.q_exp)

    def substitute_zeta(self, sign, power):
        """Substitute zeta := sign * q**power (sign in {1, -1})."""
        if self.zeta_exp == 0:
            return self
        c = self.coeff if sign == 1 or self.zeta_exp % 2 == 0 else -self.coeff
        return Mono(c, 0, self.q_exp + self.zeta_exp * power)

    def as_series(self, order=INF):
        return LaurentSeries.monomial(self.as_coefficient(), self.q_exp, order)

    def as_coefficient(self):
        if self.zeta_exp == 0:
            return self.coeff
        return ZetaPolynomial.monomial(self.coeff, self.zeta_exp)


def parse_zeta(text):
    """Parse a zeta specialization: '1', '-1', 'q', '-q', 'q^j', '-q^j'.

    Returns (sign, power) meaning zeta = sign * q**power.  Only signed
    q-powers are accepted; everything else stays exact arithmetic.
    """
    s = str(text).strip().replace(" ", "")
    sign = 1
    if s.startswith("-"):
        sign = -1
        s = s[1:]
    if s == "1":
        return (sign, 0)
    if s == "q":
        return (sign, 1)
    if s.startswith("q^"):
        try:
            return (sign, int(s[2:]))
        except ValueError:
            pass
    raise ValueError("zeta must be one of 1, -1, q^j, -q^j; got %r" % text)


@dataclass(frozen=True)
class PochSpec:
    """q-Pochhammer product prod_j (1 - base * q**(step*j)), j < length.

    ``length`` is the number of factors, or None for the infinite product.
    """

    base: Mono
    step: int
    length: Optional[int] = None

    def substitute_zeta(self, sign, power):
        return PochSpec(self.base.substitute_zeta(sign, power), self.step, self.length)


def _poch_valuation(spec):
    """(valuation, vanishes) of the product, before any cancellation.

    A factor (1 - base*q^o) has valuation min(0, o); the product vanishes
    exactly when some factor is 1 - q^0 with coefficient 1 and no zeta part.
    """
    if spec.base.coeff == 0:
        return 0, False
    val = 0
    o = spec.base.q_exp
    i = 0
    while (spec.length is None or i < spec.length) and o <= 0:
        if o < 0:
            val += o
        elif spec.base.zeta_exp == 0 and spec.base.coeff == 1:
            return 0, True
        o += spec.step
        i += 1
    return val, False


def pochhammer(base, step, length=None, order=None):
    """Exact truncated q-Pochhammer product prod_j (1 - base * q**(step*j)).

    ``base`` is a :class:`Mono`.  ``length=None`` is the infinite product,
    which requires base.q_exp >= 1 (so the factors stabilize below any
    truncation order) and a finite ``order``.
    """
    if step < 1:
        raise ValueError("step must be a positive integer")
    if length is None:
        if base.coeff != 0 and base.q_exp <= 0:
            raise DivergentProduct(
                "infinite product needs q-offset >= 1, got %d" % base.q_exp)
        if order is None:
            raise ValueError("order required for an infinite product")
    cap = INF if order is None else int(order)
    out = LaurentSeries.one(cap)
    if base.coeff == 0 or length == 0:
        return out
    i = 0
    while length is None or i < length:
        o = base.q_exp + step * i
        if cap != INF and o + out.effective_valuation() > cap:
            break
        if o == 0:
            factor = LaurentSeries.monomial(1 - base.as_coefficient(), 0)
        else:
            factor = LaurentSeries.from_dict({0: 1, o: -base.as_coefficient()})
        out = out.mul(factor, None if cap == INF else cap)
        if out.is_zero():
            return LaurentSeries.zero(cap)
        i += 1
    return out


# ----------------------------------------------------------------------
# declarative terms and guarded summation
# ----------------------------------------------------------------------


def _expand_poch_unit(spec, rel):
    """Expand a Pochhammer product to relative order ``rel``.

    Returns (unit, mono): ``unit`` has valuation 0 and constant term with
    scalar part 1; ``mono`` collects the extracted monomial normalization
    (coefficient and zeta-power; the q-power is accounted for separately by
    the term's mechanical valuation).
    """
    unit = LaurentSeries.one(rel)
    mono = Mono(1, 0, 0)
    if spec.base.coeff == 0:
        return unit, mono
    i = 0
    while spec.length is None or i < spec.length:
        o = spec.base.q_exp + spec.step * i
        if o > rel:
            break
        u = Mono(spec.base.coeff, spec.base.zeta_exp, 0)
        if o < 0:
            # (1 - u q^o) = (-u) q^o * (1 - u^{-1} q^{-o})
            mono = mono.times(u.negated())
            unit = unit.mul(
                LaurentSeries.from_dict({0: 1, -o: -u.inverse().as_coefficient()}), rel)
        elif o == 0:
            c = u.as_coefficient()
            if isinstance(c, ZetaPolynomial):
                unit = unit.mul(LaurentSeries.monomial(1 - c, 0), rel)
            else:
                mono = Mono(mono.coeff * (1 - c), mono.zeta_exp, 0)
        else:
            unit = unit.mul(LaurentSeries.from_dict({0: 1, o: -u.as_coefficient()}), rel)
        i += 1
    return unit, mono


@dataclass(frozen=True)
class QTerm:
    """One summand: prefactor * prod(numerator) / prod(denominator)."""

    prefactor: Mono
    numerator: tuple = ()
    denominator: tuple = ()

    def substitute_zeta(self, sign, power):
        return QTerm(
            self.prefactor.substitute_zeta(sign, power),
            tuple(p.substitute_zeta(sign, power) for p in self.numerator),
            tuple(p.substitute_zeta(sign, power) for p in self.denominator),
        )

    def valuation(self):
        """Mechanical q-valuation (before cancellation); INF for a zero term.

        Raises :class:`ValuationViolation` when a denominator factor vanishes
        or sits at q^0 with a zeta part (its inverse would not be a
        zeta-polynomial); these are exactly the unsound substitutions.
        """
        if self.prefactor.coeff == 0:
            return INF
        v = self.prefactor.q_exp
        for spec in self.numerator:
            pv, vanishes = _poch_valuation(spec)
            if vanishes:
                return INF
            v += pv
        for spec in self.denominator:
            pv, vanishes = _poch_valuation(spec)
            if vanishes:
                raise ValuationViolation(
                    "denominator Pochhammer vanishes under this substitution")
            if spec.base.coeff != 0 and spec.base.zeta_exp != 0:
                o = spec.base.q_exp
                i = 0
                while (spec.length is None or i < spec.length) and o <= 0:
                    if o == 0:
                        raise ValuationViolation(
                            "denominator factor 1 - c*zeta^a at q^0 is not "
                            "invertible in the zeta-polynomial ring")
                    o += spec.step
                    i += 1
            v -= pv
        return v

    def expand(self, order):
        """Exact expansion to the given order."""
        v = self.valuation()
        if v == INF or v > order:
            return LaurentSeries.zero(order)
        rel = int(order) - v
        mono = Mono(self.prefactor.coeff, self.prefactor.zeta_exp, 0)
        num = LaurentSeries.one(rel)
        for spec in self.numerator:
            u, m = _expand_poch_unit(spec, rel)
            num = num.mul(u, rel)
            mono = mono.times(m)
        den = LaurentSeries.one(rel)
        for spec in self.denominator:
            u, m = _expand_poch_unit(spec, rel)
            den = den.mul(u, rel)
            if m.coeff != 1 or m.zeta_exp != 0:
                mono = mono.times(m.inverse())
        unit = num.mul(den.invert(rel), rel)
        if mono.coeff != 1 or mono.zeta_exp != 0:
            unit = unit.scale(mono.as_coefficient())
        return unit.shift(v)


@dataclass(frozen=True)
class TermGenerator:
    """Declarative infinite sum with a certified valuation lower bound.

    ``term(n)`` returns a :class:`QTerm` (zeta-substitutable) or a plain
    :class:`LaurentSeries`.  ``lower_bound(n, zeta)`` must bound the
    valuation of term n under the given substitution from below for every n
    and be nondecreasing in n for n >= monotone_from(zeta); summation stops
    once the bound exceeds the requested order.
    """

    term: Callable
    lower_bound: Callable
    start: int = 0
    monotone_from: Callable = field(default=lambda zeta: 0)
    name: str = ""

    def terms(self, order, zeta=None):
        """Yield (n, term, mechanical valuation) for terms at or below order."""
        n = self.start
        settled = max(self.monotone_from(zeta), self.start)
        while True:
            if n - self.start > _MAX_TERMS:
                raise ValuationViolation(
                    "generator %s produced %d terms below order %s; bound "
                    "does not grow" % (self.name or "?", _MAX_TERMS, order))
            bound = self.lower_bound(n, zeta)
            if n >= settled and bound > order:
                return
            t = self.term(n)
            if isinstance(t, QTerm):
                if zeta is not None:
                    t = t.substitute_zeta(*zeta)
                v = t.valuation()
            else:
                if zeta is not None and zeta != (1, 0):
                    raise ValuationViolation(
                        "generator %r does not support zeta substitution" % (self.name,))
                v = t.effective_valuation()
            if v < bound:
                raise ValuationViolation(
                    "term %d of %s has valuation %s below declared bound %s"
                    % (n, self.name or "generator", v, bound))
            if v <= order:
                yield n, t, v
            n += 1


def sum_terms(gen, order, zeta=None):
    """Sum a :class:`TermGenerator` exactly up to ``order``.

    Terms whose declared bound exceeds ``order`` are skipped; the result is
    certified to exactly ``order``.  ``zeta`` is an optional (sign, power)
    pair substituted term-wise before expansion.
    """
    order = int(order)
    acc = LaurentSeries.zero(order)
    for _, t, _ in gen.terms(order, zeta):
        if isinstance(t, QTerm):
            acc = acc + t.expand(order)
        else:
            acc = acc + t.truncate(order)
    return acc.truncate(order)


def specialize_zeta(gen, zeta, order):
    """One-variable series from a zeta-dependent generator at zeta = ±q^j.

    Substitution happens in each term before summation, so negative q-powers
    introduced by the substitution stay exact; unsound specializations
    surface as :class:`ValuationViolation`.
    """
    if zeta is None:
        raise ValueError("zeta value required; use sum_terms for the two-variable series")
    return sum_terms(gen, order, zeta=zeta)


def negsum(offset, step):
    """Sum of the negative members of offset, offset+step, ...; 0 if none.

    Generators use this to bound Pochhammer valuation corrections from below.
    """
    s = 0
    o = offset
    while o < 0:
        s += o
        o += step
    return s
