import math
from dataclasses import replace

import pytest
from hypothesis import given, strategies as st

from rdbound import engine
from rdbound.engine import (
    InsufficientQuartics,
    InvalidCertificate,
    asymptotic_bound,
    available_counts,
    brute_force_best,
    free_algebra_dim,
    group_bound,
    make_table,
    select_degrees,
    verify_certificate,
)
from rdbound.rd_core import mu, rd_upper
from rdbound.verify import prime_powers


@pytest.mark.parametrize("gens,d,n", [((4,), 8, 1), ((4, 4), 8, 3), ((2, 4), 6, 2), ((), 5, 0),
                                      ((), 0, 1), ((3,), 7, 0), ((2, 2), 4, 3)])
def test_free_algebra_dim(gens, d, n):
    assert free_algebra_dim(gens, d) == n


def test_available_counts():
    assert available_counts({8: 2}, (4,), 8) == 1
    assert available_counts({6: 5}, (), 6) == 5
    assert available_counts({4: 3}, (4, 4), 4) == 1
    assert available_counts({4: 1}, (4,), 4) == 0


def test_psl2_13_selection():
    cert = select_degrees({4: 1, 8: 2}, 6, 14, K=8)
    assert cert.degrees == (4,) and cert.bound == 4
    assert cert.blocked_extension == (4, 8)
    assert set(cert.blockers) == {"Irreducibility", "LadderCondition"}
    assert rd_upper(32) == 26


def test_psu3_8_selection():
    cert = select_degrees({4: 3}, 56, 513, K=4)
    assert cert.degrees == (4, 4) and cert.bound == 53
    assert cert.blockers == ("LadderCondition",)
    assert rd_upper(64) > 56 - 1 - 3


def test_psl2_19_selection():
    cert = group_bound("psu2", 19)
    assert cert.degrees == (3,) and cert.bound == 7
    assert cert.blocked_extension == (3, 4) and cert.blockers == ("LadderCondition",)
    assert rd_upper(12) == 7


def test_no_invariants_gives_trivial_bound():
    cert = group_bound("psu3", 2)
    assert cert.degrees == () and cert.bound == 1


def test_klein_certificate():
    cert = group_bound("psu2", 7)
    assert cert.degrees == (4,) and cert.rd_product == 1 and cert.bound == 1 == 3 - 1 - 1


def test_tie_break_prefers_smaller_product():
    cert = select_degrees({4: 1, 6: 7}, 42, 344, K=6)
    assert cert.degrees == (4, 6)


@pytest.mark.parametrize("field,value", [("product", 17), ("bound", 1), ("degrees", (4, 4, 4)),
                                         ("mu", 3)])
def test_tampered_certificates_rejected(field, value):
    cert = select_degrees({4: 2}, 20, 50, K=4)
    with pytest.raises(InvalidCertificate):
        verify_certificate(replace(cert, **{field: value}))


@given(st.dictionaries(st.integers(2, 8), st.integers(0, 4), max_size=7),
       st.integers(2, 80), st.integers(3, 400))
def test_search_is_optimal(m, dim_v, mu_value):
    cert = select_degrees(m, dim_v, mu_value, K=8)
    assert cert.r == brute_force_best(m, dim_v, mu_value, K=8)
    verify_certificate(cert)


@pytest.mark.parametrize("q,r,bound", [(23, 4, 501), (37, 5, 1326), (67, 6, 4415)])
def test_asymptotic_examples(q, r, bound):
    res = asymptotic_bound(q)
    assert (res.r, res.bound) == (r, bound)


def test_asymptotic_range():
    for q in prime_powers(23, 197):
        res = asymptotic_bound(q)
        n = q * q - q
        assert 4**res.r + res.r <= n + 6 < 4 ** (res.r + 1) + res.r + 1
        assert res.bound <= res.formula
        assert res.r >= 4
        assert 4**res.r < mu("PSU3", q)


def test_quartic_only_search_matches_asymptotics():
    for q in prime_powers(23, 197):
        res = asymptotic_bound(q)
        cert = select_degrees({4: res.m4}, q * q - q, mu("PSU3", q), K=4)
        assert cert.degrees == (4,) * res.r and cert.bound == res.bound


def test_insufficient_quartics(monkeypatch):
    monkeypatch.setattr(engine, "closed_form_m4", lambda q: 0)
    with pytest.raises(InsufficientQuartics):
        asymptotic_bound(23)


def test_asymptotic_domain():
    with pytest.raises(ValueError):
        asymptotic_bound(19)


def test_table_rows_fail_independently():
    rows = make_table("psu2", [3, 5])
    assert isinstance(rows[0], Exception)
    assert rows[1].bound == 1


def test_parallel_table_matches_serial():
    qs = [5, 7, 11]
    serial = [r.csv_fields() for r in make_table("psu2", qs)]
    parallel = [r.csv_fields() for r in make_table("psu2", qs, jobs=2)]
    assert serial == parallel
