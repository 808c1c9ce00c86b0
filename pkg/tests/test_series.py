"""Series-core unit tests: oracles first, then randomized ring properties."""

import random
from fractions import Fraction

import pytest

from qlab.series import (
    INF,
    DivergentProduct,
    LaurentSeries,
    Mono,
    PochSpec,
    QTerm,
    SeriesError,
    TermGenerator,
    ValuationViolation,
    ZeroLeadingCoefficient,
    ZetaPolynomial,
    parse_zeta,
    pochhammer,
    specialize_zeta,
    sum_terms,
)


def _brute_partitions(n, min_part=1):
    """Independent oracle: number of partitions of n."""
    if n == 0:
        return 1
    return sum(_brute_partitions(n - k, k) for k in range(min_part, n + 1))


def series_from(d, order=INF):
    return LaurentSeries.from_dict(d, order)


# ----------------------------------------------------------------------
# add / mul / invert basics
# ----------------------------------------------------------------------


def test_add_examples():
    a = series_from({0: 1, 1: 1})
    b = series_from({0: -1, 2: 1})
    assert a + b == series_from({1: 1, 2: 1})
    zero = LaurentSeries.zero()
    assert a + zero == a
    c = series_from({-1: 1, 0: 1})
    d = series_from({-1: -1})
    assert c + d == LaurentSeries.one()


def test_mul_examples():
    one_minus_q = series_from({0: 1, 1: -1})
    geo = one_minus_q.invert(30)
    assert one_minus_q.mul(geo) == LaurentSeries.one(30)
    assert LaurentSeries.monomial(1, -1) * LaurentSeries.monomial(1, 1) == 1
    one_plus_q = series_from({0: 1, 1: 1})
    assert one_plus_q * one_plus_q == series_from({0: 1, 1: 2, 2: 1})


def test_mul_order_certification():
    # orders shrink under valuation shifts so no coefficient is uncertified
    a = LaurentSeries(2, (1, 1), 6)       # q^2 + q^3, known to q^6
    b = LaurentSeries(-1, (1,), INF)      # q^-1, exact
    prod = a * b
    assert prod.order == 5
    with pytest.raises(SeriesError):
        prod.coefficient(6)


def test_invert_examples():
    geo = series_from({0: 1, 1: -1}).invert(12)
    assert all(geo.coefficient(k) == 1 for k in range(13))

    euler = pochhammer(Mono(1, 0, 1), 1, None, order=12)
    p = euler.invert()
    # oracle: exhaustive partition count
    assert p.coefficient(4) == _brute_partitions(4) == 5
    assert all(p.coefficient(n) == _brute_partitions(n) for n in range(10))

    x = LaurentSeries.from_dict({1: 1, 2: 1})  # q(1+q), exact
    inv = x.invert(8)
    assert inv.valuation == -1
    assert inv.coefficient(-1) == 1 and inv.coefficient(0) == -1
    assert x.mul(inv) == LaurentSeries.one(7)

    with pytest.raises(ZeroLeadingCoefficient):
        LaurentSeries.zero(10).invert()


def test_invert_requires_order_for_exact_units():
    with pytest.raises(ValueError):
        series_from({0: 1, 1: 1}).invert()


def test_pochhammer_examples():
    euler = pochhammer(Mono(1, 0, 1), 1, None, order=12)
    assert euler == series_from(
        {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1}, 12)
    assert pochhammer(Mono(1, 0, 1), 1, 0) == 1
    assert pochhammer(Mono(-1, 0, 1), 2, 2) == series_from({0: 1, 1: 1, 3: 1, 4: 1})
    with pytest.raises(DivergentProduct):
        pochhammer(Mono(1, 0, 0), 1, None, order=10)
    with pytest.raises(DivergentProduct):
        pochhammer(Mono(1, 0, -1), 2, None, order=10)


def test_substitute_q_power():
    a = series_from({0: 1, 1: 1})
    assert a.substitute_q_power(2) == series_from({0: 1, 2: 1})
    euler = pochhammer(Mono(1, 0, 1), 1, None, order=10)
    sub = euler.substitute_q_power(2)
    direct = pochhammer(Mono(1, 0, 2), 2, None, order=20)
    assert sub.first_mismatch(direct) is None
    assert a.substitute_q_power(1) is a


def test_sum_terms_examples():
    kang = TermGenerator(
        term=lambda n: QTerm(Mono(1, 0, n * (n + 1) // 2),
                             denominator=(PochSpec(Mono(-1, 0, 1), 1, n + 1),)),
        lower_bound=lambda n, z: n * (n + 1) // 2)
    assert sum_terms(kang, 30) == LaurentSeries.one(30)

    empty = TermGenerator(term=lambda n: LaurentSeries.one(),
                          lower_bound=lambda n, z: 0, start=5)
    # start beyond the stop bound: force an empty range via monotone stop
    empty = TermGenerator(term=lambda n: LaurentSeries.monomial(1, n + 100),
                          lower_bound=lambda n, z: n + 100, start=0)
    assert sum_terms(empty, 10).is_zero()

    sgn = TermGenerator(
        term=lambda n: LaurentSeries.from_dict(
            {n * (3 * n - 1) // 2: 1, n * (3 * n + 1) // 2: -1}),
        lower_bound=lambda n, z: n * (3 * n - 1) // 2, start=1)
    assert sum_terms(sgn, 10) == series_from({1: 1, 2: -1, 5: 1, 7: -1}, 10)


def test_valuation_guard():
    lying = TermGenerator(
        term=lambda n: LaurentSeries.monomial(1, 0),
        lower_bound=lambda n, z: n)          # claims growth it does not have
    with pytest.raises(ValuationViolation):
        sum_terms(lying, 5)


def test_specialize_rejects_vanishing_denominator():
    # 1/(zeta q^2; q^2)_inf at zeta = q^-2 hits the factor 1 - q^0
    gen = TermGenerator(
        term=lambda n: QTerm(Mono(1, 0, 2 * n + 1),
                             denominator=(PochSpec(Mono(1, 1, 2 * n + 2), 2, None),)),
        lower_bound=lambda n, z: 0)
    with pytest.raises(ValuationViolation):
        specialize_zeta(gen, (1, -2), 10)


def test_zeta_polynomial_ring():
    a = ZetaPolynomial({1: 1, -1: 1})
    b = ZetaPolynomial({0: 2, 1: -1})
    assert a + b == ZetaPolynomial({1: 0, -1: 1, 0: 2}) + ZetaPolynomial({1: 0})
    assert (a * b).coefficient(2) == -1
    assert a * ZetaPolynomial() == ZetaPolynomial()
    assert ZetaPolynomial.scalar(7) == 7
    assert a.collapse() == 2
    assert ZetaPolynomial.monomial(Fraction(1, 2), 3).inverse() == \
        ZetaPolynomial.monomial(2, -3)
    with pytest.raises(ZeroLeadingCoefficient):
        a.inverse()


def test_parse_zeta():
    assert parse_zeta("1") == (1, 0)
    assert parse_zeta("-1") == (-1, 0)
    assert parse_zeta("q") == (1, 1)
    assert parse_zeta("-q^-2") == (-1, -2)
    with pytest.raises(ValueError):
        parse_zeta("2q")


def test_json_roundtrip():
    s = LaurentSeries.from_dict({0: 1, 2: Fraction(1, 4)}, 5)
    assert s.to_json_dict() == {"valuation": 0, "order": 5, "coeffs": ["1", "0", "1/4"]}


def test_equality_up_to_min_order():
    a = series_from({0: 1, 1: 1}, 5)
    b = series_from({0: 1, 1: 1, 7: 9}, 10)
    assert a == b  # only exponents <= 5 are comparable
    c = series_from({0: 1, 1: 2}, 5)
    assert a != c
    assert a.first_mismatch(c) == (1, None, 1, 2)


# ----------------------------------------------------------------------
# randomized ring properties (seeded)
# ----------------------------------------------------------------------


def _random_series(rng, order, allow_laurent=True, unit=False):
    v = rng.randint(-3, 3) if allow_laurent else 0
    if unit:
        v = 0
    length = rng.randint(0, order + 2)
    coeffs = [rng.randint(-6, 6) for _ in range(length)]
    if unit:
        coeffs = [rng.choice([1, -1, 2])] + coeffs
    return LaurentSeries(v, coeffs, order)


def test_ring_axioms_randomized():
    rng = random.Random(20250809)
    for _ in range(150):
        order = rng.randint(5, 25)
        a = _random_series(rng, order)
        b = _random_series(rng, order)
        c = _random_series(rng, order)
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a.mul(b) == b.mul(a)
        assert a.mul(b + c) == a.mul(b) + a.mul(c)
        assert (a.mul(b)).mul(c) == a.mul(b.mul(c))


def test_inverse_roundtrip_randomized():
    rng = random.Random(8675309)
    for _ in range(60):
        a = _random_series(rng, 100, unit=True)
        inv = a.invert()
        assert a.mul(inv) == LaurentSeries.one(100)


def test_substitution_homomorphism_randomized():
    rng = random.Random(424242)
    for _ in range(100):
        order = rng.randint(5, 20)
        m = rng.randint(1, 4)
        a = _random_series(rng, order)
        b = _random_series(rng, order)
        lhs = a.mul(b).substitute_q_power(m)
        rhs = a.substitute_q_power(m).mul(b.substitute_q_power(m))
        assert lhs.first_mismatch(rhs) is None


def test_truncation_stability_of_generators():
    from qlab import catalog
    for name in ("theta", "sigma", "u", "w1", "fpent", "pod", "pev", "vod",
                 "r", "r2", "pod2", "pev2", "vod2", "f1", "f2", "g"):
        n = 18
        low = catalog.series(name, n)
        high = catalog.series(name, 2 * n)
        assert low.first_mismatch(high, order=n) is None, name
