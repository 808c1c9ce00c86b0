"""Registry of q-series identities, verified coefficientwise.

Each case pairs two *different* representations of the same series: the
left side is always built from defining sums (via the catalog or a local
term generator), the right side from the closed form or transformed sum
under test.  Comparison is exact up to the smaller certified order of the
two sides; a failure pinpoints the first mismatching (q, zeta) exponent.

Parametrized transformation lemmas are checked at finitely many monomial
specializations (always including the ones the theorem proofs consume);
a passing case validates this implementation at those points, not the
lemma's full generality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from qlab import catalog
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

_PAD = 6  # internal slack so shifts by small negative powers stay certified

DEFAULT_ORDER = 100
DEFAULT_BIVARIATE_ORDER = 60


class UnknownIdentity(KeyError):
    """No identity registered under the requested id."""


@dataclass(frozen=True)
class IdentityCase:
    id: str
    lhs: Callable            # order -> LaurentSeries
    rhs: Callable            # order -> LaurentSeries
    bivariate: bool = False
    default_order: int = DEFAULT_ORDER
    note: str = ""


@dataclass(frozen=True)
class Mismatch:
    q_exponent: int
    zeta_exponent: Optional[int]
    lhs: str
    rhs: str


@dataclass(frozen=True)
class VerificationReport:
    identity: str
    order: int
    passed: bool
    mismatch: Optional[Mismatch] = None

    def to_dict(self):
        out = {"identity": self.identity, "order": self.order,
               "status": "pass" if self.passed else "fail"}
        if self.mismatch is not None:
            out["mismatch"] = {
                "q_exponent": self.mismatch.q_exponent,
                "zeta_exponent": self.mismatch.zeta_exponent,
                "lhs": self.mismatch.lhs,
                "rhs": self.mismatch.rhs,
            }
        return out


# ----------------------------------------------------------------------
# building blocks
# ----------------------------------------------------------------------


def _P(coeff, zexp, qexp, step, length=None):
    return PochSpec(Mono(coeff, zexp, qexp), step, length)


def _poch(coeff, qexp, step, order):
    """Cached scalar infinite product prod (1 - coeff q^(qexp + step j))."""
    return catalog.qpoch(coeff, qexp, step, order)


def _poch_z(coeff, zexp, qexp, step, order):
    return pochhammer(Mono(coeff, zexp, qexp), step, None, order)


def _poch_any(coeff, qexp, step, order):
    """Infinite product allowing q-offsets <= 0: the finitely many
    non-positive-offset factors are split off as an exact polynomial."""
    poly = LaurentSeries.one()
    o = qexp
    while o <= 0:
        if o == 0:
            poly = poly.scale(1 - coeff)
        else:
            poly = poly.mul(LaurentSeries.from_dict({0: 1, o: -coeff}))
        if poly.is_zero():
            return LaurentSeries.zero(order)
        o += step
    tail = _poch(coeff, o, step, order - poly.valuation)
    return poly.mul(tail, order)


def _poly(d):
    return LaurentSeries.from_dict(d)


def _zmono(coeff, zexp, qexp):
    return Mono(coeff, zexp, qexp).as_series()


def _gen(term, bound, start=0, monotone_from=None, name=""):
    return TermGenerator(term, bound, start=start,
                         monotone_from=monotone_from or (lambda z: start),
                         name=name)


def _jz(zeta):
    return zeta[1] if zeta is not None else 0


# frequently used generators ------------------------------------------------


def _phi_negq_gen():
    # sum (-1)^n q^(n^2) / (-q^2;q^2)_n
    return _gen(lambda n: QTerm(Mono((-1) ** n, 0, n * n),
                                denominator=(_P(-1, 0, 2, 2, n),)),
                lambda n, z: n * n, name="phi(-q)")


def _mu_negq_gen():
    # sum (-q;q^2)_n q^(n^2) / ((-q^2;q^2)_n)^2
    return _gen(lambda n: QTerm(Mono(1, 0, n * n),
                                numerator=(_P(-1, 0, 1, 2, n),),
                                denominator=(_P(-1, 0, 2, 2, n), _P(-1, 0, 2, 2, n))),
                lambda n, z: n * n, name="mu(-q)")


def _nu3_negq_gen():
    # sum q^(n(n+1)) / (q;q^2)_(n+1)
    return _gen(lambda n: QTerm(Mono(1, 0, n * (n + 1)),
                                denominator=(_P(1, 0, 1, 2, n + 1),)),
                lambda n, z: n * (n + 1), name="nu3(-q)")


def _hecke_ratio_gen():
    # sum_{n>=1} q^(2n^2-n) / (-q;q)_{2n}
    return _gen(lambda n: QTerm(Mono(1, 0, 2 * n * n - n),
                                denominator=(_P(-1, 0, 1, 1, 2 * n),)),
                lambda n, z: 2 * n * n - n, start=1, name="hecke_ratio")


def _above36_gen():
    # sum_{n>=1} q^(n(n+1)) / ((1+q^(2n-1)) (-q^2;q^2)_n)
    return _gen(lambda n: QTerm(Mono(1, 0, n * (n + 1)),
                                denominator=(_P(-1, 0, 2 * n - 1, 1, 1),
                                             _P(-1, 0, 2, 2, n))),
                lambda n, z: n * (n + 1), start=1, name="above3.6")


def _agarwal_lhs_gen():
    # sum (-q;q^2)_n (-1)^n zeta^n q^(2n) / (-zeta q^3;q^2)_n
    def bound(n, zeta):
        j = _jz(zeta)
        return 2 * n + j * n + negsum(3 + j, 2)

    return _gen(lambda n: QTerm(Mono((-1) ** n, n, 2 * n),
                                numerator=(_P(-1, 0, 1, 2, n),),
                                denominator=(_P(-1, 1, 3, 2, n),)),
                bound, name="agarwal_lhs")


def _f2_sum(zeta, order):
    return specialize_zeta(catalog.generators("f2")[0], zeta, order)


def _theta_sq_over(order, squared_into):
    th = catalog.series("theta", order)
    return th.mul(th, order).mul(squared_into, order)


# ----------------------------------------------------------------------
# the registry
# ----------------------------------------------------------------------

_REGISTRY: dict = {}


def _case(id, lhs, rhs, bivariate=False, default_order=None, note=""):
    if default_order is None:
        default_order = DEFAULT_BIVARIATE_ORDER if bivariate else DEFAULT_ORDER
    _REGISTRY[id] = IdentityCase(id, lhs, rhs, bivariate, default_order, note)


def _scaled_sum(gen, order, scale_mono=None, zeta=None):
    s = sum_terms(gen, order, zeta=zeta)
    return s if scale_mono is None else s.mul(scale_mono.as_series())


# --- main decompositions ---------------------------------------------------


def _thm11_rhs(order):
    n = order + _PAD
    a = _poly({0: 1, 1: 1}).mul(_poch(-1, 1, 2, n), n).mul(
        _poch(1, 1, 1, n).invert(), n)
    one_minus_w1 = LaurentSeries.one() - catalog.series("w1", n)
    fp = catalog.series("fpent", n)
    out = a.mul(one_minus_w1, n) - _poly({0: 1, 1: 1}).mul(fp, n)
    return out.shift(-1).truncate(order)


_case(
    "thm1.1",
    lambda order: catalog.series("pod", order),
    _thm11_rhs,
    note="pod = A(q)(1 - W1(q)) - ((1+q)/q) sum sgn(n) q^(n(3n-1)/2), "
         "A = (1+q)(-q;q^2)_inf/(q (q;q)_inf)")


def _thm13_rhs(order):
    n = order + _PAD
    p_inv = _poch(1, 1, 1, n).invert()
    e = _poch(1, 1, 1, n)
    me = _poch(-1, 1, 1, n)
    ratio = e.mul(e, n).mul(me.invert(), n).mul(me.invert(), n)
    half = _poly({0: 1, 1: 1}).scale(Fraction(1, 2))
    first = half.mul(p_inv, n).mul(LaurentSeries.one() - ratio, n)
    phi_negq = sum_terms(_phi_negq_gen(), n)
    second = _poly({0: 1, 1: 1}).mul(phi_negq - 1, n)
    return (first + second).truncate(order)


_case(
    "thm1.3",
    lambda order: catalog.series("pev", order),
    _thm13_rhs,
    note="pev = ((1+q)/(2(q)_inf))(1 - (q)_inf^2/(-q)_inf^2) + (1+q)(phi(-q)-1)")


def _thm16_rhs(order):
    n = order + _PAD
    pref = (_poly({0: 1, 1: 1}).mul(_poch(-1, 3, 2, n), n)
            .mul(_poch_z(1, 1, 2, 2, n).invert(), n)
            .mul(_poch(1, 3, 2, n).invert(), n)
            .mul(_zmono(1, -1, -1)))
    f1 = sum_terms(catalog.generators("f1")[0], n)
    choi = catalog.choi_f(Mono(1, 1, 1), Mono(1, 0, 2), n, qstep=2)
    rest = _poly({0: 1, 1: 1}).mul(_zmono(1, -1, -1)).mul(choi - 1, n)
    return (pref.mul(f1, n) - rest).truncate(order)


_case(
    "thm1.6",
    lambda order: catalog.series("pod2", order),
    _thm16_rhs,
    bivariate=True,
    note="pod2(zeta;q) via F1 and the extended third-order mock theta "
         "f(zeta q, q^2; q^2)")


def _cor17_rhs(order):
    n = order + _PAD
    qodd = _poch(1, 1, 2, n)
    pref = (_poly({0: 1, 1: 1}).mul(_poch(-1, 1, 2, n), n)
            .mul(qodd.invert(), n).mul(qodd.invert(), n).shift(-2))
    mu_negq = sum_terms(_mu_negq_gen(), n)
    first = pref.mul(_poly({0: -1, 1: -1}) + mu_negq, n)
    f3_q2 = catalog.series("f3", n // 2 + 1).substitute_q_power(2)
    second = _poly({0: 1, 1: 1}).shift(-2).mul(f3_q2 - 1, n)
    return (first - second).truncate(order)


_case(
    "cor1.7",
    lambda order: catalog.series("pod2", order, (1, 1)),
    _cor17_rhs,
    note="pod2 at zeta=q is mixed mock modular: prefactor times mu(-q) "
         "correction minus (f3(q^2)-1) term")


def _thm18_rhs(order):
    n = order + _PAD
    pinv = _poch(1, 1, 1, n).invert()
    oddprod = _poch(-1, 3, 2, n)
    w1 = catalog.series("w1", n)
    one_over_1q = _poly({0: 1, 1: 1}).invert(n)
    piece1 = _poly({1: 1}).mul(oddprod, n).mul(pinv, n).mul(w1, n)
    piece2 = _poly({0: 1, 1: -2, 2: -1}).mul(oddprod, n).mul(pinv, n).mul(one_over_1q, n)
    piece3 = _poly({1: 1}).mul(one_over_1q, n).mul(catalog.series("fpent", n), n)
    return (piece1 + piece2 + piece3 - one_over_1q).truncate(order)


_case(
    "thm1.8",
    lambda order: catalog.series("pod1", order),
    _thm18_rhs,
    note="pod1 = q(-q^3;q^2)_inf/(q)_inf W1 + (1-2q-q^2)(-q^3;q^2)_inf/"
         "((1+q)(q)_inf) + q/(1+q) false-pentagonal - 1/(1+q)")


def _thm19_rhs(order):
    n = order + _PAD
    piece1 = (_zmono(1, 1, 1)
              .mul(_poch(1, 2, 2, n), n)
              .mul(_poch_z(1, 1, 3, 2, n), n)
              .mul(_poly({-1: -1}).mul(_zmono(1, -1, 0)) + 1, n)
              .mul(_poch_z(1, -1, 1, 2, n), n)
              .mul(_poch(-1, 3, 2, n).invert(), n)
              .mul(_poch_z(-1, 1, 2, 2, n).invert(), n))
    f2 = sum_terms(catalog.generators("f2")[0], n)
    piece2 = (_poly({0: 1, 1: 1})
              .mul(_poch(-1, 2, 2, n), n)
              .mul(_poch_z(-1, 1, 1, 2, n), n)
              .mul(_poch_z(1, 1, 2, 2, n).invert(), n)
              .mul(f2, n))
    piece3 = _poly({0: 1, 1: 1}).mul(sum_terms(catalog.nu_tail_generator(), n), n)
    return (piece1 + piece2 + piece3).truncate(order)


_case(
    "thm1.9",
    lambda order: catalog.series("pev2", order),
    _thm19_rhs,
    bivariate=True,
    note="pev2(zeta;q) = zeta q (q^2, zeta q^3, 1/(zeta q); q^2)_inf / "
         "(-q^3, -zeta q^2; q^2)_inf + (1+q)(-q^2,-zeta q;q^2)_inf/"
         "(zeta q^2;q^2)_inf F2 + (1+q) sum_(n>=1) (-1)^n zeta^n q^(n^2)/"
         "(-zeta q^2;q^2)_n")


def _cor110_rhs(order):
    n = order + _PAD
    piece1 = _poly({0: -1, 1: -1})
    piece2 = (_poch(-1, 2, 4, n).mul(_poch(1, 8, 8, n), n)
              .mul(_poch(1, 6, 4, n).invert(), n).scale(-2))
    piece3 = _poch(1, 4, 4, n).mul(_poch(-1, 3, 2, n).invert(), n).scale(2)
    piece4 = _poly({0: 1, 2: -1}).mul(sum_terms(_nu3_negq_gen(), n), n)
    return (piece1 + piece2 + piece3 + piece4).truncate(order)


_case(
    "cor1.10",
    lambda order: catalog.series("pev2", order, (-1, 1)),
    _cor110_rhs,
    note="pev2 at zeta=-q: -1-q-2(-q^2;q^4)_inf(q^8;q^8)_inf/(q^6;q^4)_inf"
         " + 2(q^4;q^4)_inf/(-q^3;q^2)_inf + (1-q^2) nu3(-q)")

_case(
    "cor1.11",
    lambda order: catalog.series("pev2", order, (-1, 0)),
    lambda order: (_poly({0: 1, 1: 1})
                   .mul(_poch(1, 1, 2, order + 2) - 1, order)).truncate(order),
    note="pev2 at zeta=-1 equals (1+q)((q;q^2)_inf - 1)")


def _cor112_lhs(order):
    n = order + _PAD
    return (sum_terms(_phi_negq_gen(), n).scale(2)
            - catalog.series("f3", n)).truncate(order)


def _cor112_rhs(order):
    n = order + _PAD
    return _theta_sq_over(n, _poch(1, 1, 1, n).invert()).truncate(order)


_case("cor1.12", _cor112_lhs, _cor112_rhs,
      note="2 phi(-q) - f(q) = theta(-q)^2/(q;q)_inf")


def _thm113_lhs(order):
    return catalog.series("vod2", order - 1).shift(1).truncate(order)


def _thm113_rhs(order):
    n = order + _PAD
    r2m = sum_terms(catalog.m2rank_generator(sign=-1), n)
    rm = sum_terms(catalog.rank_generator(sign=-1, qstep=2), n)
    denom = _poch_z(1, 1, 1, 2, n).mul(_poch_z(1, -1, 1, 2, n), n)
    first = _poch(-1, 1, 2, n).mul(r2m - 1, n).mul(denom.invert(), n)
    return (first - rm + 1).truncate(order)


_case(
    "thm1.13", _thm113_lhs, _thm113_rhs,
    bivariate=True,
    note="q vod2(zeta;q) = (-q;q^2)_inf (R2(-zeta;q)-1)/(zeta q, q/zeta;q^2)_inf"
         " - R(-zeta;q^2) + 1")


def _reln_lhs(order):
    n = order + _PAD
    g = catalog.series("g", n)
    pev = catalog.series("pev", n)
    return (g + (pev + 1).shift(1)).truncate(order)


_case(
    "reln",
    _reln_lhs,
    lambda order: catalog.series("p", order + 1).shift(1).scale(2).truncate(order),
    note="g(n) + pev(n-1) = 2 p(n-1) for n >= 1, with pev(0) = 1 for the "
         "empty object (the generating function itself starts at q)")

_case(
    "neweqn2",
    lambda order: sum_terms(_hecke_ratio_gen(), order),
    lambda order: catalog.series("fpent", order),
    note="sum_(n>=1) q^(2n^2-n)/(-q)_(2n) equals the false pentagonal sum")


def _above36_rhs(order):
    n = order + _PAD
    w1 = catalog.series("w1", n)
    return (_poly({1: -1}).mul(_poly({0: 1, 1: -1}).invert(n), n)
            .mul(w1 - 1, n)).truncate(order)


_case(
    "above3.6",
    lambda order: sum_terms(_above36_gen(), order),
    _above36_rhs,
    note="sum q^(n(n+1))/((1+q^(2n-1))(-q^2;q^2)_n) = -(q/(1-q))(W1(q)-1)")

_case(
    "boundW2",
    lambda order: catalog.series("w1", order),
    lambda order: catalog.series("w1_hecke", order),
    note="W1 equals its Hecke-type double-sum form")


def _lemma51_lhs(order):
    gen = _gen(lambda n: QTerm(Mono((-1) ** n, 0, n * n),
                               numerator=(_P(1, 0, 2, 2, n - 1),),
                               denominator=(_P(-1, 0, 1, 1, 2 * n),)),
               lambda n, z: n * n, start=1, name="lemma5.1_lhs")
    return sum_terms(gen, order)


def _lemma51_rhs(order):
    n = order + _PAD
    e = _poch(1, 1, 1, n)
    me_inv = _poch(-1, 1, 1, n).invert()
    ratio = e.mul(e, n).mul(me_inv, n).mul(me_inv, n)
    return (ratio - 1).scale(Fraction(1, 4)).truncate(order)


_case("lemma5.1", _lemma51_lhs, _lemma51_rhs,
      note="sum (-1)^n (q^2;q^2)_(n-1) q^(n^2)/(-q)_(2n) = "
           "((q)_inf^2/(-q)_inf^2 - 1)/4")


def _claim_lhs(order):
    gen = _gen(lambda n: QTerm(Mono(1, 0, (2 * n - 1) * (n - 1)),
                               denominator=(_P(-1, 0, 2 * n, 1, 1),
                                            _P(-1, 0, 1, 1, 2 * n - 2))),
               lambda n, z: (2 * n - 1) * (n - 1), start=1, name="claim_lhs")
    return sum_terms(gen, order)


_case(
    "claim",
    _claim_lhs,
    lambda order: (1 - sum_terms(_hecke_ratio_gen(), order + 1).shift(1)).truncate(order),
    note="sum q^((2n-1)(n-1))/((1+q^(2n))(-q)_(2n-2)) = "
         "1 - q sum q^(2n^2-n)/(-q)_(2n)")

_case(
    "kang",
    lambda order: sum_terms(
        _gen(lambda n: QTerm(Mono(1, 0, n * (n + 1) // 2),
                             denominator=(_P(-1, 0, 1, 1, n + 1),)),
             lambda n, z: n * (n + 1) // 2, name="kang"), order),
    lambda order: LaurentSeries.one(order),
    note="sum q^(n(n+1)/2)/(-q)_(n+1) = 1")

_case(
    "donato",
    lambda order: sum_terms(
        _gen(lambda n: QTerm(Mono(n, 0, n * (n - 1) // 2),
                             denominator=(_P(-1, 0, 1, 1, n),)),
             lambda n, z: n * (n - 1) // 2, name="donato"), order),
    lambda order: catalog.series("sigma", order),
    note="sum n q^(n(n-1)/2)/(-q)_n equals the distinct-parts rank-parity series")


# --- Andrews Example 10 at zeta in {-1, q} ---------------------------------


def _ex10_lhs(zeta):
    genA = _gen(lambda n: QTerm(Mono((-1) ** n, 3 * n - 1, n * (3 * n - 1) // 2)),
                lambda n, z: n * (3 * n - 1) // 2 + (3 * n - 1) * _jz(z),
                start=1, monotone_from=lambda z: max(1, abs(_jz(z))), name="ex10A")
    genB = _gen(lambda n: QTerm(Mono((-1) ** n, 3 * n, n * (3 * n + 1) // 2)),
                lambda n, z: n * (3 * n + 1) // 2 + 3 * n * _jz(z),
                start=1, monotone_from=lambda z: max(1, abs(_jz(z))), name="ex10B")

    def lhs(order):
        return (1 + specialize_zeta(genA, zeta, order)
                + specialize_zeta(genB, zeta, order)).truncate(order)

    return lhs


def _ex10_rhs(zeta):
    gen = _gen(lambda n: QTerm(Mono((-1) ** n, 2 * n, n * (n + 1) // 2),
                               denominator=(_P(1, 1, 1, 1, n),)),
               lambda n, z: n * (n + 1) // 2 + 2 * n * _jz(z) + negsum(1 + _jz(z), 1),
               monotone_from=lambda z: 2 * abs(_jz(z)) + 1, name="ex10_rhs")
    return lambda order: specialize_zeta(gen, zeta, order)


_case("andrews_ex10_zeta_m1", _ex10_lhs((-1, 0)), _ex10_rhs((-1, 0)),
      note="1 + sum (-1)^n (zeta^(3n-1) q^(n(3n-1)/2) + zeta^(3n) q^(n(3n+1)/2))"
           " = sum (-1)^n zeta^(2n) q^(n(n+1)/2)/(zeta q)_n at zeta=-1")
_case("andrews_ex10_zeta_q", _ex10_lhs((1, 1)), _ex10_rhs((1, 1)),
      note="same partial-theta identity at zeta=q")


def _agl_lhs(order):
    gen = _gen(lambda n: QTerm(Mono(4 * (-1) ** (n + 1), 0, 2 * n + 1),
                               denominator=(_P(-1, 0, 2 * n + 1, 1, 1),)),
               lambda n, z: 2 * n + 1, name="agl")
    return (1 + sum_terms(gen, order)).truncate(order)


_case("agl", _agl_lhs,
      lambda order: _lemma51_rhs(order).scale(4) + 1,
      note="1 + 4 sum (-1)^(n+1) q^(2n+1)/(1+q^(2n+1)) = (q)_inf^2/(-q)_inf^2")


# --- Lost Notebook entry at the used parameter points ----------------------


def _lost_case(tag, a, b, qstep, note):
    # sum (ab)^n Q^(n^2) / ((aQ, bQ; Q)_n) = 1 + a sum_{n>=1} (bQ)^n/(aQ;Q)_n,
    # with Q = q^qstep and a, b exact q-monomials
    s = qstep
    ab = a.times(b)

    def lhs(order):
        gen = _gen(lambda n: QTerm(ab.power(n).times(Mono(1, 0, s * n * n)),
                                   denominator=(
                                       PochSpec(a.times(Mono(1, 0, s)), s, n),
                                       PochSpec(b.times(Mono(1, 0, s)), s, n))),
                   lambda n, z: n * ab.q_exp + s * n * n
                   + negsum(a.q_exp + s, s) + negsum(b.q_exp + s, s),
                   monotone_from=lambda z: max(0, -ab.q_exp), name=tag)
        return sum_terms(gen, order)

    def rhs(order):
        bq = b.times(Mono(1, 0, s))
        gen = _gen(lambda n: QTerm(bq.power(n),
                                   denominator=(PochSpec(a.times(Mono(1, 0, s)), s, n),)),
                   lambda n, z: n * bq.q_exp + negsum(a.q_exp + s, s),
                   start=1, name=tag + "_rhs")
        return (1 + sum_terms(gen, order).mul(a.as_series(), order)).truncate(order)

    _case(tag, lhs, rhs, note=note)


_lost_case("lost_q_q", Mono(1, 0, 1), Mono(1, 0, 1), 1,
           "rank-style double product sum at (a,b)=(q,q)")
_lost_case("lost_mq_q2", Mono(-1, 0, 1), Mono(1, 0, 2), 1,
           "rank-style double product sum at (a,b)=(-q,q^2)")
_lost_case("lost_claim", Mono(-1, 0, 2), Mono(-1, 0, -1), 2,
           "the instance (q->q^2, a=-q^2, b=-1/q) used for the tail lemma")


# --- Heine at (q, q^2, q^4) and the limiting instances ----------------------


def _heine_lhs(order):
    gen = _gen(lambda n: QTerm(Mono(1, 0, n),
                               numerator=(_P(1, 0, 1, 1, n), _P(1, 0, 2, 1, n)),
                               denominator=(_P(1, 0, 1, 1, n), _P(1, 0, 4, 1, n))),
               lambda n, z: n, name="heine_lhs")
    return sum_terms(gen, order)


def _heine_rhs(order):
    n = order + _PAD
    return (_poch(1, 3, 1, n).mul(_poch(1, 2, 1, n), n)
            .mul(_poch(1, 4, 1, n).invert(), n)
            .mul(_poch(1, 1, 1, n).invert(), n)).truncate(order)


_case("heine_q_q2_q4", _heine_lhs, _heine_rhs,
      note="basic hypergeometric product transformation at (a,b,c)=(q,q^2,q^4)")


def _heine_limit(k):
    def lhs(order):
        gen = _gen(lambda n: QTerm(Mono(1, 0, n * n + (2 * k + 1) * n),
                                   denominator=(_P(-1, 0, 2 * k + 4, 2, n),)),
                   lambda n, z: n * n + (2 * k + 1) * n, name="heine_limit")
        return sum_terms(gen, order)

    def rhs(order):
        return _poly({0: 1, 2 * k + 2: 1}).truncate(order)

    _case("heine_limit_k%d" % k, lhs, rhs,
          note="limiting product transformation: sum q^(n^2+(2k+1)n)/"
               "(-q^(2k+4);q^2)_n = 1 + q^(2k+2), k=%d" % k)


for _k in (0, 1, 2):
    _heine_limit(_k)


# --- first four-parameter transformation (generic + refined instances) -----


def _bem1_generic_lhs(order):
    # (a,b,c,d) = (q, q^4, q^3, q): sum_{n>=1} (q^3,q^2;q)_n q^(2n)/((q^4,q^4;q)_n)
    gen = _gen(lambda n: QTerm(Mono(1, 0, 2 * n),
                               numerator=(_P(1, 0, 3, 1, n), _P(1, 0, 2, 1, n)),
                               denominator=(_P(1, 0, 4, 1, n), _P(1, 0, 4, 1, n))),
               lambda n, z: 2 * n, start=1, name="bem1_lhs")
    return sum_terms(gen, order)


def _bem1_generic_rhs(order):
    n = order + _PAD

    def piece(shift_exp):
        # sum_n (q,q^2;q)_n q^(3n) * q^(n+shift)/(1-q^(n+shift)) / ((q^4,q^2;q)_n)
        gen = _gen(lambda m: QTerm(Mono(1, 0, 3 * m + m + shift_exp),
                                   numerator=(_P(1, 0, 1, 1, m), _P(1, 0, 2, 1, m)),
                                   denominator=(_P(1, 0, 4, 1, m), _P(1, 0, 2, 1, m),
                                                _P(1, 0, m + shift_exp, 1, 1))),
                   lambda m, z: 4 * m + shift_exp, name="bem1_rhs")
        return sum_terms(gen, n)

    total = piece(2) - piece(4)
    pref = (_poly({1: 1, 4: -1}).mul(_poly({1: 1, 3: -1}), n)
            .div(_poly({2: 1, 4: -1}), n))
    return pref.mul(total, n).truncate(order)


_case("bem1_generic", _bem1_generic_lhs, _bem1_generic_rhs,
      note="four-parameter sum transformation at (a,b,c,d)=(q,q^4,q^3,q)")


def _bem1_thm4_lhs(order):
    gen = _gen(lambda n: QTerm(Mono((-1) ** n, n, n * n),
                               numerator=(_P(1, 1, 2, 2, n - 1),),
                               denominator=(_P(-1, 1, 1, 2, n), _P(-1, 1, 2, 2, n))),
               lambda n, z: n * n + n * _jz(z) + negsum(1 + _jz(z), 2)
               + 2 * negsum(2 + _jz(z), 2),
               start=1, monotone_from=lambda z: max(1, abs(_jz(z))),
               name="bem1_thm4_lhs")
    return sum_terms(gen, order)


def _bem1_thm4_rhs(order):
    n = order + _PAD
    s = sum_terms(_agarwal_lhs_gen(), n)
    one_plus_zq = LaurentSeries.from_dict({0: 1}) + _zmono(1, 1, 1)
    return (_zmono(-1, 1, 1).mul(one_plus_zq.invert(n), n).mul(s, n)).truncate(order)


_case("bem1_thm4", _bem1_thm4_lhs, _bem1_thm4_rhs,
      bivariate=True,
      note="the a->0 limit instance: sum (zeta q^2;q^2)_(n-1) (-1)^n zeta^n "
           "q^(n^2)/((-zeta q,-zeta q^2;q^2)_n) = -(zeta q/(1+zeta q)) "
           "sum (-q;q^2)_n (-zeta)^n q^(2n)/(-zeta q^3;q^2)_n")


# --- second transformation, the two instances from the mixed-mock proof ----


def _bem2_case(tag, numer_base_qexp, note):
    # LHS: sum_{n>=1} (base q^(-1) or -q; q^2)_n ... ; see the two uses below.
    if numer_base_qexp == -1:
        # sum (-1/q;q^2)_n q^(n^2+2n) / ((-q^2;q^2)_n)^2
        def lhs(order):
            gen = _gen(lambda n: QTerm(Mono(1, 0, n * n + 2 * n),
                                       numerator=(_P(-1, 0, -1, 2, n),),
                                       denominator=(_P(-1, 0, 2, 2, n),
                                                    _P(-1, 0, 2, 2, n))),
                       lambda n, z: n * n + 2 * n - 1, start=1, name=tag)
            return sum_terms(gen, order)

        def rhs(order):
            n = order + _PAD
            gen = _gen(lambda m: QTerm(Mono((-1) ** m, 0, 2 * m),
                                       numerator=(_P(1, 0, 3, 2, m - 1),),
                                       denominator=(_P(-1, 0, 2, 2, m),)),
                       lambda m, z: 2 * m, start=1, name=tag + "_rhs")
            return (_poly({0: -1, 1: -1}).mul(sum_terms(gen, n), n)).truncate(order)
    else:
        # sum (-q;q^2)_n q^(n^2) / ((-q^2;q^2)_n)^2
        def lhs(order):
            gen = _gen(lambda n: QTerm(Mono(1, 0, n * n),
                                       numerator=(_P(-1, 0, 1, 2, n),),
                                       denominator=(_P(-1, 0, 2, 2, n),
                                                    _P(-1, 0, 2, 2, n))),
                       lambda n, z: n * n, start=1, name=tag)
            return sum_terms(gen, order)

        def rhs(order):
            n = order + _PAD
            gen = _gen(lambda m: QTerm(Mono((-1) ** m, 0, 2 * m),
                                       numerator=(_P(1, 0, 1, 2, m - 1),),
                                       denominator=(_P(-1, 0, 2, 2, m),)),
                       lambda m, z: 2 * m, start=1, name=tag + "_rhs")
            pref = _poly({-1: -1, 0: -1})
            return (pref.mul(sum_terms(gen, n), n)).truncate(order)

    _case(tag, lhs, rhs, note=note)


_bem2_case("bem2_cor1.7a", -1,
           "telescoped instance (q->q^2, zeta=c=-1, d=q) used for the "
           "mu(-q) rewrite")
_bem2_case("bem2_cor1.7b", 1,
           "telescoped instance (q->q^2, zeta=c=-1, d=1/q)")


# --- the sum-to-product-plus-F2 split at zeta in {q, -q} -------------------


def _agarwal_case(tag, zeta, note):
    def lhs(order):
        return specialize_zeta(_agarwal_lhs_gen(), zeta, order)

    def rhs(order):
        n = order + _PAD
        sign, j = zeta
        prod1 = (_poch(1, 1, 1, n)
                 .mul(_poch_any(sign, j + 2, 1, n), n)
                 .mul(_poch_any(sign, -j - 1, 2, n), n)
                 .mul(_poch_any(-sign, j + 2, 1, n).invert(), n)
                 .scale(Fraction(1, 2)))
        f2 = _f2_sum(zeta, n)
        half_pref = LaurentSeries.from_dict({0: 1, -j - 1: sign}).scale(Fraction(1, 2))
        return (prod1 + half_pref.mul(f2, n)).truncate(order)

    _case(tag, lhs, rhs, note=note)


_agarwal_case("agarwal_zeta_q", (1, 1),
              "alternating double-Pochhammer sum at zeta=q (the product "
              "piece vanishes: (1/q^2;q^2)_inf has a zero factor)")
_agarwal_case("agarwal_zeta_mq", (-1, 1),
              "alternating double-Pochhammer sum at zeta=-q")


# --- first Ramanujan transformation at the three used substitutions --------


def _ram1_thm11_lhs(order):
    gen = _gen(lambda n: QTerm(Mono(1, 0, 2 * n),
                               numerator=(_P(1, 0, 2, 2, n), _P(1, 0, 3, 2, n)),
                               denominator=(_P(-1, 0, 3, 2, n),)),
               lambda n, z: 2 * n, name="ram1_thm1.1_lhs")
    return sum_terms(gen, order)


def _ram1_thm11_rhs(order):
    n = order + _PAD
    gen1 = _gen(lambda m: QTerm(Mono(1, 0, m * (m + 1)),
                                numerator=(_P(-1, 0, -1, 2, m),),
                                denominator=(_P(-1, 0, 1, 2, m), _P(-1, 0, 2, 2, m))),
                lambda m, z: m * (m + 1) - 1, start=1, name="ram1_rhs1")
    first = sum_terms(gen1, n).shift(-2)
    pref = (_poch(1, 2, 2, n).mul(_poch(1, 3, 2, n), n)
            .mul(_poch(-1, 3, 2, n).invert(), n).shift(-2))
    second = pref.mul(sum_terms(_hecke_ratio_gen(), n), n)
    return (first - second).truncate(order)


_case("ram1_thm1.1", _ram1_thm11_lhs, _ram1_thm11_rhs,
      note="first Ramanujan transformation at (q->q^2, a=-1, b=-q, c=q)")


def _ram1_thm16_lhs(order):
    gen = _gen(lambda n: QTerm(Mono(1, 0, 2 * n),
                               numerator=(_P(1, 1, 2, 2, n), _P(1, 0, 3, 2, n)),
                               denominator=(_P(-1, 0, 3, 2, n),)),
               lambda n, z: 2 * n + negsum(2 + _jz(z), 2), name="ram1_thm1.6_lhs")
    return sum_terms(gen, order)


def _ram1_thm16_rhs(order):
    n = order + _PAD
    first = sum_terms(catalog.generators("f1")[0], n).mul(_zmono(1, -1, -2))
    gen2 = _gen(lambda m: QTerm(Mono(1, m, 2 * m * m - m),
                                denominator=(_P(-1, 1, 1, 2, m), _P(-1, 0, 2, 2, m))),
                lambda m, z: 2 * m * m - m + m * _jz(z) + negsum(1 + _jz(z), 2),
                start=1, monotone_from=lambda z: max(1, (abs(_jz(z)) + 3) // 4 + 1),
                name="ram1_thm1.6_rhs2")
    pref = (_poch_z(1, 1, 2, 2, n).mul(_poch(1, 3, 2, n), n)
            .mul(_poch(-1, 3, 2, n).invert(), n).mul(_zmono(1, -1, -2)))
    second = pref.mul(sum_terms(gen2, n), n)
    return (first - second).truncate(order)


_case("ram1_thm1.6", _ram1_thm16_lhs, _ram1_thm16_rhs,
      bivariate=True,
      note="first Ramanujan transformation at (q->q^2, a=-zeta, b=-q, c=q)")


def _ram1_thm113_lhs(order):
    gen = _gen(lambda n: QTerm(Mono(1, 0, 2 * n + 2),
                               numerator=(_P(1, 1, 1, 2, n), _P(1, -1, 1, 2, n)),
                               denominator=(_P(-1, 0, 1, 2, n),)),
               lambda n, z: 2 * n + 2 + negsum(1 + _jz(z), 2) + negsum(1 - _jz(z), 2),
               name="ram1_thm1.13_lhs")
    return sum_terms(gen, order)


def _ram1_thm113_rhs(order):
    n = order + _PAD

    def dens(m):
        return (_P(-1, 1, 2, 2, m), _P(-1, -1, 2, 2, m))

    gen1 = _gen(lambda m: QTerm(Mono(1, 0, m * m + 1),
                                numerator=(_P(-1, 0, 1, 2, m),),
                                denominator=dens(m)),
                lambda m, z: m * m + 1 + negsum(2 + _jz(z), 2) + negsum(2 - _jz(z), 2),
                start=1, monotone_from=lambda z: abs(_jz(z)) + 1,
                name="ram1_thm1.13_rhs1")
    gen2 = _gen(lambda m: QTerm(Mono(1, 0, 2 * m * m + 1),
                                denominator=dens(m)),
                lambda m, z: 2 * m * m + 1 + negsum(2 + _jz(z), 2) + negsum(2 - _jz(z), 2),
                start=1, monotone_from=lambda z: abs(_jz(z)) + 1,
                name="ram1_thm1.13_rhs2")
    pref = (_poch_z(1, 1, 1, 2, n).mul(_poch_z(1, -1, 1, 2, n), n)
            .mul(_poch(-1, 1, 2, n).invert(), n))
    return (sum_terms(gen1, n) - pref.mul(sum_terms(gen2, n), n)).truncate(order)


_case("ram1_thm1.13", _ram1_thm113_lhs, _ram1_thm113_rhs,
      bivariate=True,
      note="first Ramanujan transformation at (q->q^2, a=-zeta/q, "
           "b=-1/(zeta q), c=1/q)")


# --- second Ramanujan transformation at the two used substitutions ---------


def _ram2_thm13_lhs(order):
    gen = _gen(lambda n: QTerm(Mono(1, 0, 2 * n),
                               numerator=(_P(1, 0, 2, 2, n),),
                               denominator=(_P(-1, 0, 2, 2, n), _P(-1, 0, 3, 2, n))),
               lambda n, z: 2 * n, name="ram2_thm1.3_lhs")
    return sum_terms(gen, order)


def _ram2_thm13_rhs(order):
    n = order + _PAD
    gen1 = _gen(lambda m: QTerm(Mono((-1) ** m, 0, m * m + 2 * m),
                                numerator=(_P(1, 0, 2, 2, m),),
                                denominator=(_P(-1, 0, 2, 2, m + 1), _P(-1, 0, 3, 2, m))),
                lambda m, z: m * m + 2 * m, name="ram2_rhs1")
    gen2 = _gen(lambda m: QTerm(Mono((-1) ** m, 0, m * m + 2 * m),
                                denominator=(_P(-1, 0, 2, 2, m + 1),)),
                lambda m, z: m * m + 2 * m, name="ram2_rhs2")
    pref = (_poch(1, 2, 2, n).mul(_poch(-1, 2, 2, n).invert(), n)
            .mul(_poch(-1, 3, 2, n).invert(), n))
    return (sum_terms(gen1, n).scale(2)
            - pref.mul(sum_terms(gen2, n), n)).truncate(order)


_case("ram2_thm1.3", _ram2_thm13_lhs, _ram2_thm13_rhs,
      note="second Ramanujan transformation at (q->q^2, a=c=1, b=q)")


def _ram2_thm19_lhs(order):
    gen = _gen(lambda n: QTerm(Mono(1, 0, 2 * n),
                               numerator=(_P(1, 1, 2, 2, n),),
                               denominator=(_P(-1, 0, 2, 2, n), _P(-1, 1, 3, 2, n))),
               lambda n, z: 2 * n + negsum(2 + _jz(z), 2) + negsum(3 + _jz(z), 2),
               name="ram2_thm1.9_lhs")
    return sum_terms(gen, order)


def _ram2_thm19_rhs(order):
    n = order + _PAD
    gen1 = _gen(lambda m: QTerm(Mono((-1) ** m, m, m * m + 2 * m),
                                numerator=(_P(1, 1, 2, 2, m),),
                                denominator=(_P(-1, 1, 2, 2, m + 1), _P(-1, 1, 3, 2, m))),
                lambda m, z: m * m + 2 * m + m * _jz(z) + 2 * negsum(2 + _jz(z), 2)
                + negsum(3 + _jz(z), 2),
                monotone_from=lambda z: abs(_jz(z)) + 1, name="ram2_thm1.9_rhs1")
    gen2 = _gen(lambda m: QTerm(Mono((-1) ** m, m, m * m + 2 * m),
                                denominator=(_P(-1, 1, 2, 2, m + 1),)),
                lambda m, z: m * m + 2 * m + m * _jz(z) + negsum(2 + _jz(z), 2),
                monotone_from=lambda z: abs(_jz(z)) + 1, name="ram2_thm1.9_rhs2")
    pref = (_poch_z(1, 1, 2, 2, n)
            .mul(_poch(-1, 2, 2, n).invert(), n)
            .mul(_poch_z(-1, 1, 3, 2, n).invert(), n))
    return (sum_terms(gen1, n).scale(2)
            - pref.mul(sum_terms(gen2, n), n)).truncate(order)


_case("ram2_thm1.9", _ram2_thm19_lhs, _ram2_thm19_rhs,
      bivariate=True,
      note="second Ramanujan transformation at (q->q^2, a=1, b=zeta q, c=zeta)")


# --- Euler's two expansions at t in {q, -q, q^2} ----------------------------


def _euler_cases():
    for tag, (sign, j) in (("t_q", (1, 1)), ("t_mq", (-1, 1)), ("t_q2", (1, 2))):
        t = Mono(sign, 0, j)

        def make_lhs(t, weight):
            def lhs(order):
                gen = _gen(lambda n: QTerm(t.power(n).times(Mono(1, 0, weight(n))),
                                           denominator=(_P(1, 0, 1, 1, n),)),
                           lambda n, z: n * t.q_exp + weight(n), name="euler")
                return sum_terms(gen, order)

            return lhs

        _case("euler1_%s" % tag,
              make_lhs(t, lambda n: 0),
              lambda order, t=t: _poch(t.coeff, t.q_exp, 1, order).invert(),
              note="sum t^n/(q)_n = 1/(t;q)_inf at t=%s" % ("q" if tag == "t_q" else
                                                            "-q" if tag == "t_mq" else "q^2"))
        _case("euler2_%s" % tag,
              make_lhs(t, lambda n: n * (n - 1) // 2),
              lambda order, t=t: _poch(-t.coeff, t.q_exp, 1, order),
              note="sum t^n q^(n(n-1)/2)/(q)_n = (-t;q)_inf")


_euler_cases()


# --- the single-sum rank transformation at zeta = -1/q ----------------------


def _garvan_lhs(order):
    gen = _gen(lambda n: QTerm(Mono((-1) ** (n + 1), n, n * n),
                               denominator=(_P(1, 1, 2 * n, 1, 1), _P(1, 1, 1, 2, n))),
               lambda n, z: n * n + n * _jz(z) + negsum(1 + _jz(z), 2)
               + min(0, 2 + _jz(z)),
               start=1, monotone_from=lambda z: max(1, abs(_jz(z))), name="garvan_lhs")
    return specialize_zeta(gen, (-1, -1), order)


def _garvan_rhs(order):
    gen = _gen(lambda n: QTerm(Mono(1, n, n * (n + 1) // 2),
                               numerator=(_P(1, 0, 1, 1, n - 1),),
                               denominator=(_P(1, 1, 1, 1, n),)),
               lambda n, z: n * (n + 1) // 2 + n * _jz(z) + negsum(1 + _jz(z), 1),
               start=1, monotone_from=lambda z: max(1, abs(_jz(z)) + 1),
               name="garvan_rhs")
    return specialize_zeta(gen, (-1, -1), order)


_case("garvan", _garvan_lhs, _garvan_rhs,
      note="single-sum rank transformation at zeta=-1/q, the instance behind "
           "the W1 rewrite")


# --- Rogers-Fine at the two used substitutions ------------------------------


def _rf_claim_lhs(order):
    gen = _gen(lambda n: QTerm(Mono((-1) ** n, 0, n),
                               denominator=(_P(-1, 0, 4, 2, n),)),
               lambda n, z: n, name="rf_claim_lhs")
    return sum_terms(gen, order)


def _rf_claim_rhs(order):
    gen = _gen(lambda n: QTerm(Mono(1, 0, 2 * n * n + 3 * n),
                               denominator=(_P(-1, 0, 4, 2, n), _P(-1, 0, 1, 2, n + 1))),
               lambda n, z: 2 * n * n + 3 * n, name="rf_claim_rhs")
    return sum_terms(gen, order)


_case("rf_claim", _rf_claim_lhs, _rf_claim_rhs,
      note="Rogers-Fine at (q->q^2, alpha=0, beta=-q^4, t=-q)")


def _rf_cor110_lhs(order):
    gen = _gen(lambda n: QTerm(Mono((-1) ** n, 0, n),
                               numerator=(_P(1, 0, -1, 2, n),),
                               denominator=(_P(-1, 0, 2, 2, n),)),
               lambda n, z: n - 1, name="rf_cor1.10_lhs")
    return sum_terms(gen, order)


def _rf_cor110_rhs(order):
    # alpha*t*q^2/beta = 1, so the (1;q^2)_n factor kills every n >= 1 term
    gen = _gen(lambda n: QTerm(Mono(1, 0, 2 * n * n + n),
                               numerator=(_P(1, 0, -1, 2, n), _P(1, 0, 0, 2, n),
                                          _P(-1, 0, 4 * n, 1, 1)),
                               denominator=(_P(-1, 0, 2, 2, n), _P(-1, 0, 1, 2, n + 1))),
               lambda n, z: 2 * n * n + n - 1, name="rf_cor1.10_rhs")
    return sum_terms(gen, order)


_case("rf_cor1.10", _rf_cor110_lhs, _rf_cor110_rhs,
      note="Rogers-Fine at (q->q^2, alpha=1/q, beta=-q^2, t=-q)")

_case("rf_cor1.10_eval", _rf_cor110_lhs,
      lambda order: _poly({0: 1, 1: 1}).invert(order).scale(2),
      note="the same sum evaluates to 2/(1+q)")


# --- displayed product identities used as builder cross-checks --------------


def _ramtheta_rhs(order):
    n = order + _PAD
    e = _poch(1, 1, 1, n)
    return (e.mul(e, n).mul(_poch(1, 2, 2, n).invert(), n)).truncate(order)


_case("ramtheta",
      lambda order: catalog.series("theta", order),
      _ramtheta_rhs,
      note="sum (-1)^n q^(n^2) = (q)_inf^2/(q^2;q^2)_inf")


def _u_false_theta_rhs(order):
    n = order + _PAD
    p = catalog.series("p", n)
    gen = _gen(lambda m: LaurentSeries.monomial((-1) ** m, m * (m + 1) // 2),
               lambda m, z: m * (m + 1) // 2, name="triangular")
    return (p.mul(p, n).mul(sum_terms(gen, n), n)).truncate(order)


_case("u_false_theta",
      lambda order: catalog.series("u", order),
      _u_false_theta_rhs,
      note="marked-summit unimodal series equals P(q)^2 sum (-1)^n q^(n(n+1)/2)")


# ----------------------------------------------------------------------
# verification API
# ----------------------------------------------------------------------


def identity_ids():
    return sorted(_REGISTRY)


def identity_case(id):
    if id not in _REGISTRY:
        raise UnknownIdentity(id)
    return _REGISTRY[id]


def verify(id, order=None):
    """Compare both sides of a registered identity coefficientwise.

    Returns a :class:`VerificationReport`; the comparison runs to
    min(requested order, certified order of either side) so no uncertified
    coefficient is ever judged.
    """
    case = identity_case(id)
    if order is None:
        order = case.default_order
    lhs = case.lhs(order)
    rhs = case.rhs(order)
    effective = min(order, lhs.order, rhs.order)
    diff = lhs.first_mismatch(rhs, order=order)
    if diff is None:
        return VerificationReport(id, int(effective), True)
    e, k, a, b = diff
    return VerificationReport(id, int(effective), False,
                              Mismatch(e, k, str(a), str(b)))


def verify_all(order=None, bivariate_order=None):
    """Run the whole registry; reports are sorted by identity id."""
    reports = []
    for id in identity_ids():
        case = _REGISTRY[id]
        o = bivariate_order if case.bivariate else order
        reports.append(verify(id, o))
    return reports
