"""Catalog of named q-series builders.

Every entry expands the *defining* sum or product of its series — never a
closed form proved elsewhere, so the identity registry stays non-circular.
Two-variable entries return series with :class:`ZetaPolynomial`
coefficients and expose their term generators for exact specialization at
zeta = ±q^j.

A separate integer fast lane (:func:`coefficient_table`) produces long
coefficient tables for the asymptotic checks from closed forms that the
identity registry certifies at low order first (layered trust); it is the
only place a closed form is used for coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from qlab.series import (
    INF,
    LaurentSeries,
    Mono,
    PochSpec,
    QTerm,
    TermGenerator,
    negsum,
    pochhammer,
    specialize_zeta,
    sum_terms,
)


def _jz(zeta):
    """q-power of a zeta substitution, 0 for the symbolic two-variable case."""
    return zeta[1] if zeta is not None else 0


def _P(coeff, zexp, qexp, step, length=None):
    return PochSpec(Mono(coeff, zexp, qexp), step, length)


# ----------------------------------------------------------------------
# term generators, one per defining sum
# ----------------------------------------------------------------------

# partitions with rank zeta^m: sum_n q^(n^2) / ((zeta*q, q/zeta; q)_n),
# generalized to base q^s and an optional sign flip zeta -> sign*zeta
def rank_generator(sign=1, qstep=1):
    s = qstep

    def term(n):
        return QTerm(Mono(1, 0, s * n * n),
                     denominator=(_P(sign, 1, s, s, n), _P(sign, -1, s, s, n)))

    def bound(n, zeta):
        j = _jz(zeta)
        return s * n * n + negsum(s + j, s) + negsum(s - j, s)

    return TermGenerator(term, bound, name="rank(sign=%d,step=%d)" % (sign, s))


# M2-rank for partitions without repeated odd parts:
# sum_n (-q;q^2)_n q^(n^2) / ((zeta*q^2, q^2/zeta; q^2)_n)
def m2rank_generator(sign=1):
    def term(n):
        return QTerm(Mono(1, 0, n * n),
                     numerator=(_P(-1, 0, 1, 2, n),),
                     denominator=(_P(sign, 1, 2, 2, n), _P(sign, -1, 2, 2, n)))

    def bound(n, zeta):
        j = _jz(zeta)
        return n * n + negsum(2 + j, 2) + negsum(2 - j, 2)

    return TermGenerator(term, bound, name="m2rank(sign=%d)" % sign)


# refined restricted overpartitions, odd smallest part (first defining sum)
# and even smallest part (second): zeta marks even parts, with the smallest
# even part itself unmarked
def pod_generators():
    def term1(n):
        return QTerm(Mono(1, 0, 2 * n + 1),
                     numerator=(_P(-1, 0, 2 * n + 3, 2),),
                     denominator=(_P(1, 1, 2 * n + 2, 2), _P(1, 0, 2 * n + 3, 2)))

    def term2(n):
        return QTerm(Mono(1, 0, 2 * n),
                     numerator=(_P(-1, 0, 2 * n + 1, 2),),
                     denominator=(_P(1, 1, 2 * n, 2), _P(1, 0, 2 * n + 1, 2)))

    def bound1(n, zeta):
        return 2 * n + 1 + negsum(2 + _jz(zeta), 2)

    def bound2(n, zeta):
        return 2 * n + negsum(2 + _jz(zeta), 2)

    return (TermGenerator(term1, bound1, name="pod2[odd-smallest]"),
            TermGenerator(term2, bound2, start=1, name="pod2[even-smallest]"))


# refined restricted overpartitions without repeated odd parts: zeta marks
# odd parts and non-overlined even parts
def pev_generators():
    def term1(n):
        return QTerm(Mono(1, 1, 2 * n + 1),
                     numerator=(_P(-1, 0, 2 * n + 2, 2), _P(-1, 1, 2 * n + 3, 2)),
                     denominator=(_P(1, 1, 2 * n + 2, 2),))

    def term2(n):
        return QTerm(Mono(1, 1, 2 * n),
                     numerator=(_P(-1, 0, 2 * n, 2), _P(-1, 1, 2 * n + 1, 2)),
                     denominator=(_P(1, 1, 2 * n, 2),))

    def bound1(n, zeta):
        j = _jz(zeta)
        return 2 * n + 1 + j + negsum(3 + j, 2) + negsum(2 + j, 2)

    def bound2(n, zeta):
        j = _jz(zeta)
        return 2 * n + j + negsum(3 + j, 2) + negsum(2 + j, 2)

    return (TermGenerator(term1, bound1, name="pev2[odd-smallest]"),
            TermGenerator(term2, bound2, start=1, name="pev2[even-smallest]"))


# overpartitions with even smallest part and odd parts at distance >= 3
def pod1_generator():
    def term(n):
        return QTerm(Mono(1, 0, 2 * n),
                     numerator=(_P(-1, 0, 2 * n + 3, 2),),
                     denominator=(_P(1, 0, 2 * n, 2), _P(1, 0, 2 * n + 3, 2)))

    return TermGenerator(term, lambda n, z: 2 * n, start=1, name="pod1")


# concave compositions with even central part and odd side parts; zeta
# tracks (right non-overlined) - (left non-overlined)
def vod_generator():
    def term(n):
        return QTerm(Mono(1, 0, 2 * n),
                     numerator=(_P(-1, 0, 2 * n + 1, 2),),
                     denominator=(_P(1, 1, 2 * n + 1, 2), _P(1, -1, 2 * n + 1, 2)))

    def bound(n, zeta):
        j = _jz(zeta)
        return 2 * n + negsum(1 + j, 2) + negsum(1 - j, 2)

    return TermGenerator(term, bound, name="vod2")


# third-order mock theta extension f(z1, z2; q^s):
# sum_n z1^n z2^(2n) q^(s(n^2-3n)) / ((-z2; q^s)_n (-z1 z2 q^{-s}; q^s)_n)
def choi_f_generator(z1: Mono, z2: Mono, qstep=1):
    s = qstep
    d1 = z2.negated()
    d2 = Mono(-(z1.coeff * z2.coeff), z1.zeta_exp + z2.zeta_exp,
              z1.q_exp + z2.q_exp - s)

    def term(n):
        pref = z1.power(n).times(z2.power(2 * n)).times(Mono(1, 0, s * (n * n - 3 * n)))
        return QTerm(pref, denominator=(PochSpec(d1, s, n), PochSpec(d2, s, n)))

    def bound(n, zeta):
        j = _jz(zeta)
        e = (n * (z1.q_exp + j * z1.zeta_exp) + 2 * n * (z2.q_exp + j * z2.zeta_exp)
             + s * (n * n - 3 * n))
        return (e + negsum(d1.q_exp + j * d1.zeta_exp, s)
                + negsum(d2.q_exp + j * d2.zeta_exp, s))

    def settle(zeta):
        # exponent is s*n^2 + lin*n + const; nondecreasing past the vertex
        j = _jz(zeta)
        lin = z1.q_exp + j * z1.zeta_exp + 2 * (z2.q_exp + j * z2.zeta_exp) - 3 * s
        return max(0, (-lin + s - 1) // (2 * s) + 1)

    return TermGenerator(term, bound, monotone_from=settle, name="choi_f")


# generalized third-order nu, parameterized by the squares zeta1^2, zeta2^2
# (the defining sum depends only on them):
# sum_n (z2sq)^n q^(s*n(n-1)) / (-z1sq*z2sq*q^{-3s}; q^{2s})_{n+1}
def choi_nu_generator(z1_sq: Mono, z2_sq: Mono, qstep=1):
    s = qstep
    d = Mono(-(z1_sq.coeff * z2_sq.coeff), z1_sq.zeta_exp + z2_sq.zeta_exp,
             z1_sq.q_exp + z2_sq.q_exp - 3 * s)

    def term(n):
        pref = z2_sq.power(n).times(Mono(1, 0, s * n * (n - 1)))
        return QTerm(pref, denominator=(PochSpec(d, 2 * s, n + 1),))

    def bound(n, zeta):
        j = _jz(zeta)
        e = n * (z2_sq.q_exp + j * z2_sq.zeta_exp) + s * n * (n - 1)
        return e + negsum(d.q_exp + j * d.zeta_exp, 2 * s)

    def settle(zeta):
        j = _jz(zeta)
        lin = z2_sq.q_exp + j * z2_sq.zeta_exp - s
        return max(0, (-lin + s - 1) // (2 * s) + 1)

    return TermGenerator(term, bound, monotone_from=settle, name="choi_nu")


# tail of the nu-piece of the refined even-restricted decomposition:
# sum_{n>=1} (-1)^n zeta^n q^(n^2) / (-zeta q^2; q^2)_n
def nu_tail_generator():
    def term(n):
        return QTerm(Mono((-1) ** n, n, n * n), denominator=(_P(-1, 1, 2, 2, n),))

    def bound(n, zeta):
        j = _jz(zeta)
        return n * n + j * n + negsum(2 + j, 2)

    return TermGenerator(term, bound, start=1,
                         monotone_from=lambda z: max(1, (abs(_jz(z)) + 1) // 2 + 1),
                         name="nu_tail")


def _w1_generator():
    def term(n):
        return QTerm(Mono((-1) ** n, 0, n * (n + 1) // 2),
                     numerator=(_P(1, 0, 1, 1, n),),
                     denominator=(_P(-1, 0, 1, 1, n),))

    return TermGenerator(term, lambda n, z: n * (n + 1) // 2, name="w1")


def _w1_hecke_generator():
    # (-1)^n q^(2n^2+n) (1 - q^(2n+1)) + 2 sum_{1<=j<=n} (-1)^(n+j)
    # q^(2n^2+n-j^2) (1 - q^(2n+1)); valuation >= n^2 + n
    def term(n):
        d = {}
        sgn = (-1) ** n
        for e, c in ((2 * n * n + n, sgn), (2 * n * n + 3 * n + 1, -sgn)):
            d[e] = d.get(e, 0) + c
        for j in range(1, n + 1):
            sj = (-1) ** (n + j) * 2
            base = 2 * n * n + n - j * j
            d[base] = d.get(base, 0) + sj
            d[base + 2 * n + 1] = d.get(base + 2 * n + 1, 0) - sj
        return LaurentSeries.from_dict(d)

    return TermGenerator(term, lambda n, z: n * n + n, name="w1_hecke")


def _theta_generator():
    # sum over all integers of (-1)^n q^(n^2), folded to n >= 0
    def term(n):
        if n == 0:
            return LaurentSeries.one()
        return LaurentSeries.monomial(2 * (-1) ** n, n * n)

    return TermGenerator(term, lambda n, z: n * n, name="theta")


def _fpent_generator():
    # sum over nonzero integers of sgn(n) q^(n(3n-1)/2), folded to n >= 1
    def term(n):
        return LaurentSeries.from_dict({n * (3 * n - 1) // 2: 1,
                                        n * (3 * n + 1) // 2: -1})

    return TermGenerator(term, lambda n, z: n * (3 * n - 1) // 2, start=1,
                         name="false_pentagonal")


def _simple_quadratic(name, pref, num=(), den=(), start=0):
    """Generator for sums whose term data depend polynomially on n."""
    def term(n):
        return QTerm(pref(n), numerator=tuple(p(n) for p in num),
                     denominator=tuple(p(n) for p in den))

    return TermGenerator(term, lambda n, z: pref(n).q_exp, start=start, name=name)


def f1_generator():
    # sum_{n>=1} (-1/q; q^2)_n zeta^n q^(n(n+1)) / ((-zeta q, -q^2; q^2)_n)
    def term(n):
        return QTerm(Mono(1, n, n * (n + 1)),
                     numerator=(_P(-1, 0, -1, 2, n),),
                     denominator=(_P(-1, 1, 1, 2, n), _P(-1, 0, 2, 2, n)))

    def bound(n, zeta):
        j = _jz(zeta)
        return n * (n + 1) + j * n - 1 + negsum(1 + j, 2)

    return TermGenerator(term, bound, start=1,
                         monotone_from=lambda z: max(1, (abs(_jz(z)) + 1) // 2 + 1),
                         name="f1")


def f2_generator():
    # sum_{n>=0} (-1/zeta; q^2)_n (-1)^n q^n / (-q^2; q^2)_n
    def term(n):
        return QTerm(Mono((-1) ** n, 0, n),
                     numerator=(_P(-1, -1, 0, 2, n),),
                     denominator=(_P(-1, 0, 2, 2, n),))

    def bound(n, zeta):
        j = _jz(zeta)
        return n + negsum(-j, 2) if zeta is not None else n

    return TermGenerator(term, bound, name="f2")


# ----------------------------------------------------------------------
# catalog
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    arity: str            # "one-variable" | "two-variable"
    definition: str       # defining expression, ASCII
    build: Callable       # order -> LaurentSeries
    generators: tuple = ()  # term generators, when the entry is a plain sum


def _gen_build(*gens):
    def build(order):
        acc = LaurentSeries.zero(order)
        for g in gens:
            acc = acc + sum_terms(g, order)
        return acc

    return build


def _specialized_build(gens, zeta):
    def build(order):
        acc = LaurentSeries.zero(order)
        for g in gens:
            acc = acc + specialize_zeta(g, zeta, order)
        return acc

    return build


def _build_p(order):
    return pochhammer(Mono(1, 0, 1), 1, None, order).invert()


def _build_pbar(order):
    # reciprocal of the theta series 1 + 2*sum (-1)^n q^(n^2)
    return sum_terms(_theta_generator(), order).invert()


_POD_GENS = pod_generators()
_PEV_GENS = pev_generators()


def _entries():
    e = []

    def add(name, arity, definition, build, generators=()):
        e.append(CatalogEntry(name, arity, definition, build, tuple(generators)))

    add("p", "one-variable", "1/(q;q)_inf", _build_p)
    add("pbar", "one-variable", "1/theta(-q), theta(-q) = sum_{n in Z} (-1)^n q^(n^2)",
        _build_pbar)
    add("theta", "one-variable", "sum_{n in Z} (-1)^n q^(n^2)",
        _gen_build(_theta_generator()), (_theta_generator(),))
    add("u", "one-variable", "sum_n q^n/((q;q)_n)^2",
        _gen_build(_simple_quadratic(
            "u", lambda n: Mono(1, 0, n),
            den=[lambda n: _P(1, 0, 1, 1, n), lambda n: _P(1, 0, 1, 1, n)])),
        (_simple_quadratic("u", lambda n: Mono(1, 0, n),
                           den=[lambda n: _P(1, 0, 1, 1, n),
                                lambda n: _P(1, 0, 1, 1, n)]),))
    add("v", "one-variable", "sum_n q^n/((q^(n+1);q)_inf)^2",
        _gen_build(_simple_quadratic(
            "v", lambda n: Mono(1, 0, n),
            den=[lambda n: _P(1, 0, n + 1, 1), lambda n: _P(1, 0, n + 1, 1)])))
    add("sigma", "one-variable", "sum_n q^(n(n+1)/2)/(-q;q)_n",
        _gen_build(_simple_quadratic(
            "sigma", lambda n: Mono(1, 0, n * (n + 1) // 2),
            den=[lambda n: _P(-1, 0, 1, 1, n)])))
    add("g", "one-variable", "sum_n q^(2n+1)/((q^(2n+1);q)_inf (q^(2n+2);q^2)_n)",
        _gen_build(_simple_quadratic(
            "g", lambda n: Mono(1, 0, 2 * n + 1),
            den=[lambda n: _P(1, 0, 2 * n + 1, 1), lambda n: _P(1, 0, 2 * n + 2, 2, n)])))
    add("w1", "one-variable", "sum_n (-1)^n (q;q)_n q^(n(n+1)/2)/(-q;q)_n",
        _gen_build(_w1_generator()))
    add("w1_hecke", "one-variable",
        "sum_n (-1)^n q^(2n^2+n)(1-q^(2n+1)) + 2 sum_{1<=j<=n} (-1)^(n+j) "
        "q^(2n^2+n-j^2)(1-q^(2n+1))",
        _gen_build(_w1_hecke_generator()))
    add("phi", "one-variable", "sum_n q^(n^2)/(-q^2;q^2)_n",
        _gen_build(_simple_quadratic(
            "phi", lambda n: Mono(1, 0, n * n),
            den=[lambda n: _P(-1, 0, 2, 2, n)])))
    add("f3", "one-variable", "sum_n q^(n^2)/((-q;q)_n)^2",
        _gen_build(_simple_quadratic(
            "f3", lambda n: Mono(1, 0, n * n),
            den=[lambda n: _P(-1, 0, 1, 1, n), lambda n: _P(-1, 0, 1, 1, n)])))
    add("mu", "one-variable", "sum_n (-1)^n (q;q^2)_n q^(n^2)/((-q^2;q^2)_n)^2",
        _gen_build(_simple_quadratic(
            "mu", lambda n: Mono((-1) ** n, 0, n * n),
            num=[lambda n: _P(1, 0, 1, 2, n)],
            den=[lambda n: _P(-1, 0, 2, 2, n), lambda n: _P(-1, 0, 2, 2, n)])))
    add("nu3", "one-variable", "sum_n q^(n(n+1))/(-q;q^2)_(n+1)",
        _gen_build(_simple_quadratic(
            "nu3", lambda n: Mono(1, 0, n * (n + 1)),
            den=[lambda n: _P(-1, 0, 1, 2, n + 1)])))
    add("f1", "two-variable",
        "sum_{n>=1} (-1/q;q^2)_n zeta^n q^(n(n+1))/((-zeta q, -q^2;q^2)_n)",
        _gen_build(f1_generator()), (f1_generator(),))
    add("f2", "two-variable",
        "sum_n (-1/zeta;q^2)_n (-1)^n q^n/(-q^2;q^2)_n",
        _gen_build(f2_generator()), (f2_generator(),))
    add("r", "two-variable", "sum_n q^(n^2)/((zeta q, q/zeta;q)_n)",
        _gen_build(rank_generator()), (rank_generator(),))
    add("r2", "two-variable", "sum_n (-q;q^2)_n q^(n^2)/((zeta q^2, q^2/zeta;q^2)_n)",
        _gen_build(m2rank_generator()), (m2rank_generator(),))
    add("pod", "one-variable",
        "sum_n (-q^(2n+3);q^2)_inf q^(2n+1)/((q^(2n+2),q^(2n+3);q^2)_inf) "
        "+ sum_{n>=1} (-q^(2n+1);q^2)_inf q^(2n)/((q^(2n),q^(2n+1);q^2)_inf)",
        _specialized_build(_POD_GENS, (1, 0)))
    add("pod2", "two-variable",
        "as pod with zeta marking even parts (smallest even part unmarked)",
        _gen_build(*_POD_GENS), _POD_GENS)
    add("pev", "one-variable",
        "sum_n (-q^(2n+2),-q^(2n+3);q^2)_inf q^(2n+1)/(q^(2n+2);q^2)_inf "
        "+ sum_{n>=1} (-q^(2n),-q^(2n+1);q^2)_inf q^(2n)/(q^(2n);q^2)_inf",
        _specialized_build(_PEV_GENS, (1, 0)))
    add("pev2", "two-variable",
        "as pev with zeta marking odd parts plus non-overlined even parts",
        _gen_build(*_PEV_GENS), _PEV_GENS)
    add("pod1", "one-variable",
        "sum_{n>=1} (-q^(2n+3);q^2)_inf q^(2n)/((q^(2n),q^(2n+3);q^2)_inf)",
        _gen_build(pod1_generator()))
    add("vod", "one-variable",
        "sum_n (-q^(2n+1);q^2)_inf q^(2n)/((q^(2n+1);q^2)_inf)^2",
        _specialized_build((vod_generator(),), (1, 0)))
    add("vod2", "two-variable",
        "sum_n (-q^(2n+1);q^2)_inf q^(2n)/((zeta q^(2n+1), q^(2n+1)/zeta;q^2)_inf)",
        _gen_build(vod_generator()), (vod_generator(),))
    add("fpent", "one-variable", "sum_{n in Z} sgn(n) q^(n(3n-1)/2)",
        _gen_build(_fpent_generator()), (_fpent_generator(),))
    return {entry.name: entry for entry in e}


_CATALOG = _entries()

_ALIASES = {
    "theta_neg_q": "theta",
    "false_pentagonal": "fpent",
    "g_series": "g",
}


def catalog():
    """All entries, sorted by name."""
    return [_CATALOG[k] for k in sorted(_CATALOG)]


def catalog_json():
    return [{"name": c.name, "arity": c.arity, "definition": c.definition}
            for c in catalog()]


def entry(name):
    key = _ALIASES.get(name, name)
    if key not in _CATALOG:
        raise KeyError("unknown series %r; see the catalog listing" % name)
    return _CATALOG[key]


@lru_cache(maxsize=4096)
def series(name, order, zeta=None):
    """Expansion of a cataloged series to ``order``.

    ``zeta`` is an optional (sign, power) pair; it requires a two-variable
    entry and performs the substitution term-wise on the generators.
    """
    c = entry(name)
    if zeta is None or (zeta == (1, 0) and c.arity == "one-variable"):
        return c.build(order)
    if not c.generators:
        raise ValueError("series %r does not support zeta specialization" % name)
    acc = LaurentSeries.zero(order)
    for g in c.generators:
        acc = acc + specialize_zeta(g, zeta, order)
    return acc


def generators(name):
    c = entry(name)
    if not c.generators:
        raise ValueError("series %r has no term-generator form" % name)
    return c.generators


def choi_f(zeta1: Mono, zeta2: Mono, order, qstep=1):
    """Third-order mock theta extension f(zeta1, zeta2; q^qstep).

    The arguments are exact monomials, possibly carrying zeta; the result is
    Laurent in q (three-term exponents n^2 - 3n dip below zero).
    """
    return sum_terms(choi_f_generator(zeta1, zeta2, qstep), order)


def choi_nu_squares(zeta1_sq: Mono, zeta2_sq: Mono, order, qstep=1):
    """Generalized third-order nu(zeta1, zeta2; q^qstep), parameterized by
    the squares zeta1^2 and zeta2^2 (the sum depends only on them, which is
    what makes the imaginary-argument specialization real)."""
    return sum_terms(choi_nu_generator(zeta1_sq, zeta2_sq, qstep), order)


@lru_cache(maxsize=64)
def qpoch(coeff, qexp, step, order, length=None):
    """Cached scalar Pochhammer: prod (1 - coeff * q^(qexp + step*j))."""
    return pochhammer(Mono(coeff, 0, qexp), step, length, order)


# ----------------------------------------------------------------------
# integer fast lane for long coefficient tables
# ----------------------------------------------------------------------


def _euler_factor_indices(max_n):
    """Pentagonal exponents of (q;q)_inf as (exponent, sign) pairs."""
    out = []
    k = 1
    while True:
        e1 = k * (3 * k - 1) // 2
        e2 = k * (3 * k + 1) // 2
        if e1 > max_n and e2 > max_n:
            break
        s = 1 if k % 2 == 0 else -1
        if e1 <= max_n:
            out.append((e1, s))
        if e2 <= max_n:
            out.append((e2, s))
        k += 1
    return out


def _partition_table(max_n):
    """p(0..max_n) by the pentagonal recurrence."""
    pent = _euler_factor_indices(max_n)
    p = [0] * (max_n + 1)
    p[0] = 1
    for n in range(1, max_n + 1):
        acc = 0
        for e, s in pent:
            if e > n:
                break
            acc -= s * p[n - e]
        p[n] = acc
    return p


def _mul_sparse(dense, sparse, max_n):
    out = [0] * (max_n + 1)
    for e, c in sparse:
        if c:
            for i in range(max_n - e + 1):
                if dense[i]:
                    out[i + e] += c * dense[i]
    return out


def _div_binomial(dense, c, e, max_n):
    """Divide a dense table by (1 + c*q^e) in place."""
    for n in range(e, max_n + 1):
        dense[n] -= c * dense[n - e]
    return dense


def _theta_sparse(max_n):
    out = [(0, 1)]
    n = 1
    while n * n <= max_n:
        out.append((n * n, 2 * (-1) ** n))
        n += 1
    return out


def _phi_neg_q_table(max_n):
    """phi(-q) = sum (-1)^n q^(n^2)/(-q^2;q^2)_n as an integer table."""
    out = [0] * (max_n + 1)
    term = [0] * (max_n + 1)
    term[0] = 1
    n = 0
    while n * n <= max_n:
        if n > 0:
            # term_n = term_{n-1} * (-q^(2n-1)) / (1 + q^(2n))
            e = 2 * n - 1
            term = [0] * e + term[:max_n + 1 - e]
            term = [-c for c in term]
            _div_binomial(term, 1, 2 * n, max_n)
        for i, c in enumerate(term):
            if c:
                out[i] += c
        n += 1
    return out


def _w1_table(max_n):
    """W1 by its Hecke-type double sum (sparse, certified by the registry)."""
    out = [0] * (max_n + 1)
    n = 0
    while n * n + n <= max_n:
        sgn = (-1) ** n
        for e, c in ((2 * n * n + n, sgn), (2 * n * n + 3 * n + 1, -sgn)):
            if e <= max_n:
                out[e] += c
        for j in range(1, n + 1):
            base = 2 * n * n + n - j * j
            sj = 2 * (-1) ** (n + j)
            if base <= max_n:
                out[base] += sj
            if base + 2 * n + 1 <= max_n:
                out[base + 2 * n + 1] -= sj
        n += 1
    return out


def _pod_table(max_n):
    """Restricted-overpartition counts from the certified closed form:
    A(q)(1 - W1(q)) - ((1+q)/q) * false-pentagonal, with
    A = (1+q)(-q;q^2)_inf / (q (q;q)_inf)."""
    m = max_n + 1  # everything is shifted down by one power of q
    p = _partition_table(m)
    # (-q;q^2)_inf * 1/(q;q)_inf, both dense
    a = list(p)
    j = 1
    while j <= m:
        a = _mul_sparse(a, [(0, 1), (j, 1)], m)
        j += 2
    one_minus_w1 = [-c for c in _w1_table(m)]
    one_minus_w1[0] += 1
    main = _mul_sparse(one_minus_w1, [(i, c) for i, c in enumerate(a) if c], m)
    # multiply by (1+q), divide by q, subtract (1+q)/q * fpent
    fp = [0] * (m + 1)
    k = 1
    while k * (3 * k - 1) // 2 <= m:
        fp[k * (3 * k - 1) // 2] += 1
        if k * (3 * k + 1) // 2 <= m:
            fp[k * (3 * k + 1) // 2] -= 1
        k += 1
    total = [main[i] - fp[i] for i in range(m + 1)]
    total = _mul_sparse(total, [(0, 1), (1, 1)], m)
    # divide by q: coefficient of q^n in pod is total[n+1]
    assert total[0] == 0
    return total[1:max_n + 2]


def _pev_table(max_n):
    """Counts from the certified closed form
    (1+q)/(2 (q;q)_inf) (1 - theta(-q)^2) + (1+q)(phi(-q) - 1).

    theta(-q)^2/(q;q)_inf is computed with sparse theta convolutions; the
    overall 1/2 cancels exactly, so the table stays integral.
    """
    p = _partition_table(max_n)
    th = _theta_sparse(max_n)
    tp = _mul_sparse(p, th, max_n)
    ttp = _mul_sparse(tp, th, max_n)
    half_diff = [(p[i] - ttp[i]) for i in range(max_n + 1)]
    assert all(c % 2 == 0 for c in half_diff)
    half_diff = [c // 2 for c in half_diff]
    phi1 = _phi_neg_q_table(max_n)
    phi1[0] -= 1
    body = [half_diff[i] + phi1[i] for i in range(max_n + 1)]
    return _mul_sparse(body, [(0, 1), (1, 1)], max_n)


@lru_cache(maxsize=16)
def coefficient_table(name, max_n):
    """Exact integer coefficients c(0..max_n) for long-range checks.

    p uses the pentagonal recurrence; pod and pev use the closed forms the
    identity registry certifies against the defining sums at low order; g
    uses g(n) = 2 p(n-1) - pev(n-1) (n >= 2) with g(0) = 0, g(1) = 1.
    All arithmetic is integer-exact.
    """
    if name == "p":
        return tuple(_partition_table(max_n))
    if name == "pod":
        return tuple(_pod_table(max_n))
    if name == "pev":
        return tuple(_pev_table(max_n))
    if name == "g":
        p = _partition_table(max_n)
        pev = _pev_table(max_n)
        out = [0] * (max_n + 1)
        if max_n >= 1:
            out[1] = 1
        for n in range(2, max_n + 1):
            out[n] = 2 * p[n - 1] - pev[n - 1]
        return tuple(out)
    raise KeyError("no coefficient table for %r" % name)
