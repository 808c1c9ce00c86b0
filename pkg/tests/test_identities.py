"""Identity-registry tests: coverage, determinism, and selected deep runs."""

import pytest

from qlab import identities
from qlab.series import LaurentSeries


REQUIRED_IDS = [
    "thm1.1", "thm1.3", "thm1.6", "thm1.8", "thm1.9", "thm1.13",
    "cor1.7", "cor1.10", "cor1.11", "cor1.12",
    "reln", "neweqn2", "above3.6", "boundW2", "lemma5.1", "claim",
    "kang", "donato",
    "andrews_ex10_zeta_m1", "andrews_ex10_zeta_q",
    "agl",
    "lost_q_q", "lost_mq_q2", "lost_claim",
    "heine_q_q2_q4", "heine_limit_k0", "heine_limit_k1", "heine_limit_k2",
    "bem1_generic", "bem1_thm4",
    "bem2_cor1.7a", "bem2_cor1.7b",
    "agarwal_zeta_q", "agarwal_zeta_mq",
    "ram1_thm1.1", "ram1_thm1.6", "ram1_thm1.13",
    "ram2_thm1.3", "ram2_thm1.9",
    "euler1_t_q", "euler1_t_mq", "euler1_t_q2",
    "euler2_t_q", "euler2_t_mq", "euler2_t_q2",
    "garvan",
    "rf_claim", "rf_cor1.10",
    "ramtheta", "u_false_theta",
]


def test_registry_contains_required_cases():
    ids = identities.identity_ids()
    for required in REQUIRED_IDS:
        assert required in ids, required


def test_registry_all_pass_low_order():
    reports = identities.verify_all(order=36, bivariate_order=24)
    assert all(r.passed for r in reports), \
        [r.identity for r in reports if not r.passed]
    # deterministic id ordering
    assert [r.identity for r in reports] == identities.identity_ids()


def test_verify_at_order_zero_is_vacuous():
    reports = identities.verify_all(order=0, bivariate_order=0)
    assert all(r.passed for r in reports), \
        [r.identity for r in reports if not r.passed]


def test_selected_deep_runs():
    assert identities.verify("cor1.12", 150).passed
    assert identities.verify("thm1.1", 120).passed
    assert identities.verify("thm1.3", 120).passed


def test_unknown_identity():
    with pytest.raises(identities.UnknownIdentity):
        identities.verify("nope")


def test_mismatch_report_is_deterministic_and_precise():
    bad = identities.IdentityCase(
        "bad", lambda order: LaurentSeries.from_dict({0: 1, 3: 2}, order),
        lambda order: LaurentSeries.from_dict({0: 1, 3: 5}, order))
    identities._REGISTRY["zz_bad"] = bad
    try:
        r1 = identities.verify("zz_bad", 10)
        r2 = identities.verify("zz_bad", 10)
        assert not r1.passed
        assert r1 == r2
        assert r1.mismatch.q_exponent == 3
        assert r1.mismatch.lhs == "2" and r1.mismatch.rhs == "5"
        assert r1.to_dict()["status"] == "fail"
    finally:
        del identities._REGISTRY["zz_bad"]


def test_bivariate_mismatch_localization():
    from qlab.series import ZetaPolynomial
    bad = identities.IdentityCase(
        "badz",
        lambda order: LaurentSeries.from_dict(
            {2: ZetaPolynomial({0: 1, 1: 4})}, order),
        lambda order: LaurentSeries.from_dict(
            {2: ZetaPolynomial({0: 1, 1: 7})}, order),
        bivariate=True)
    identities._REGISTRY["zz_badz"] = bad
    try:
        r = identities.verify("zz_badz", 6)
        assert not r.passed
        assert (r.mismatch.q_exponent, r.mismatch.zeta_exponent) == (2, 1)
    finally:
        del identities._REGISTRY["zz_badz"]


def test_report_serialization():
    r = identities.verify("kang", 20)
    d = r.to_dict()
    assert d == {"identity": "kang", "order": 20, "status": "pass"}
