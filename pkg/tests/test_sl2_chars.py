from fractions import Fraction

import pytest

from rdbound.exact import CycNumber, cyc
from rdbound.sl2_chars import (
    UnsupportedQ,
    sl2_character_table,
    sl2_class_data,
    smallest_projective_candidates,
    smallest_projective_character,
    sqrt_eps_q,
)
from rdbound.verify import prime_powers, sl2_oracle_checks

SMALL = prime_powers(2, 32)


def inner(table, f, g):
    cls = table.classes.classes
    total = cyc(0)
    for c, x, y in zip(cls, f, g):
        total = total + x * y.conj() / c.centralizer
    return total.to_rational()


def test_degrees_q5():
    assert sorted(sl2_character_table(5).degrees) == [1, 2, 2, 3, 3, 4, 4, 5, 6]


@pytest.mark.parametrize("q", SMALL)
def test_class_count_and_order(q):
    data = sl2_class_data(q)
    assert len(data) == (q + 4 if q % 2 else q + 1)
    assert sum(c.size for c in data.classes) == data.order


@pytest.mark.parametrize("q", SMALL)
def test_sum_of_squares(q):
    t = sl2_character_table(q)
    assert len(t) == len(t.classes)
    assert sum(d * d for d in t.degrees) == t.classes.order


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13])
def test_sqrt_eps_q(q):
    eps = 1 if q % 4 == 1 else -1
    s = sqrt_eps_q(q)
    assert s * s == cyc(eps * q)


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9, 11, 13, 16])
def test_frobenius_schur_indicators(q):
    t = sl2_character_table(q)
    data = t.classes
    sq = [data.power_map(c, 2) for c in range(len(data))]
    for row in t.values:
        nu = inner(t, [row[sq[c]] for c in range(len(data))], [cyc(1)] * len(data))
        real = all(v == v.conj() for v in row)
        assert nu in (-1, 0, 1)
        assert (nu == 0) == (not real)


@pytest.mark.parametrize("q", [5, 7, 8, 9, 11])
def test_adams_operations_are_virtual_characters(q):
    # psi^k chi(g) = chi(g^k) must have integral multiplicities
    t = sl2_character_table(q)
    data = t.classes
    for k in (2, 3, 5):
        pk = [data.power_map(c, k) for c in range(len(data))]
        for row in t.values:
            adams = [row[pk[c]] for c in range(len(data))]
            for other in t.values:
                assert inner(t, adams, other).denominator == 1


def test_q8_prefers_rational_orbit():
    cands = smallest_projective_candidates(8)
    assert {c.name for c in cands} == {"theta1", "theta3"}
    degree, values, _ = smallest_projective_character(8)
    assert degree == 7
    assert all(v.is_rational() for v in values)


@pytest.mark.parametrize("q,deg", [(4, 3), (5, 2), (7, 3), (8, 7), (9, 4), (11, 5), (13, 6), (16, 15)])
def test_smallest_degrees(q, deg):
    assert smallest_projective_character(q)[0] == deg


def test_unsupported():
    with pytest.raises(UnsupportedQ):
        sl2_class_data(127)
    with pytest.raises(UnsupportedQ):
        smallest_projective_candidates(3)


@pytest.mark.parametrize("q", [4, 5, 7, 8, 9])
def test_oracle_agreement(q):
    failures = [c.line() for c in sl2_oracle_checks(q, 10**6) if not c.ok]
    assert not failures
