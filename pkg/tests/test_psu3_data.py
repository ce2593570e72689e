from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rdbound import psu3_data
from rdbound.psu3_data import (
    POWER_CASES,
    ColumnSumMismatch,
    QPoly,
    chi_on_power_types,
    class_spectrum,
    power_case,
    psu3_order,
    schur_d,
    symbolic_power_table,
)
from rdbound.verify import prime_powers

QS = prime_powers(2, 197)

# Entries that differ from the tables as printed, keyed by (k, congruence case).
PINNED_CORRECTIONS = {
    (2, "q = 4 mod 6"): {("C7", "C7"): "q^2/2 - q/2 - 1"},
    (3, "q = 0 mod 3"): {("C7", "C7"): "q^2/2 - q/2 - 1"},
    (2, "q = 5 mod 6"): {("C6", "C6"): "q^2/18 - 2q/9 - 5/18", ("C6p", "C6"): "1"},
    (3, "q = 8 mod 9"): {("C6", "C6"): "q^2/18 - 7q/18 - 4/9", ("C6p", "C6"): "3"},
    (4, "q = 5 mod 12"): {("C6", "C6"): "q^2/18 - 2q/9 - 5/18", ("C6p", "C6"): "1"},
    (4, "q = 11 mod 12"): {("C6", "C6"): "q^2/18 - 5q/9 - 11/18", ("C6p", "C6"): "5"},
}


def test_qpoly_parse_and_eval():
    p = QPoly.parse("q^2/6 - 2q/3 + 1/2")
    assert p(5) == Fraction(25, 6) - Fraction(10, 3) + Fraction(1, 2)
    assert QPoly.parse("q^3 + 1")(4) == 65
    assert str(QPoly.parse("q^2/2 - q/2 - 1")) == "q^2/2 - q/2 - 1"


@given(st.lists(st.fractions(max_denominator=9), min_size=1, max_size=4), st.integers(2, 50))
def test_qpoly_arithmetic(coeffs, q):
    a = QPoly(tuple(coeffs))
    b = QPoly.parse("q^2 - 3")
    assert (a + b)(q) == a(q) + b(q)
    assert (a - b)(q) == a(q) - b(q)


def test_order_and_schur_multiplier():
    assert psu3_order(3) == 6048
    assert psu3_order(5) == 126000
    assert [schur_d(q) for q in (2, 3, 4, 5, 8, 11)] == [3, 1, 1, 3, 3, 3]


def test_fourteen_power_tables():
    assert len(POWER_CASES) == 14
    assert sorted(Counter(k for k, _ in POWER_CASES).items()) == [(2, 4), (3, 4), (4, 6)]


@pytest.mark.parametrize("q", QS)
def test_class_equation(q):
    spec = class_spectrum(q)
    assert spec.class_equation_total() == spec.order


@pytest.mark.parametrize("q", QS)
def test_chi_norm_one_and_zero_mean(q):
    spec = class_spectrum(q)
    norm = sum(Fraction(t.count * t.chi * t.chi, t.centralizer) for t in spec.types)
    mean = sum(Fraction(t.count * t.chi, t.centralizer) for t in spec.types)
    assert norm == 1 and mean == 0
    assert spec["C1"].chi == q * q - q


def test_c6_prime_only_when_q_is_2_mod_3():
    for q in QS:
        assert ("C6p" in class_spectrum(q)) == (q % 3 == 2)


def test_c6_count_integral_when_d_is_1():
    # (q^2 - q)/6 must be an integer for every prime power q with q != 2 mod 3
    for q in QS:
        if schur_d(q) == 1:
            assert (q * q - q) % 6 == 0
            assert class_spectrum(q)["C6"].count == (q * q - q) // 6


@pytest.mark.parametrize("q", QS)
def test_corrected_columns_sum_to_class_counts(q):
    spec = class_spectrum(q)
    for k in (2, 3, 4):
        table = symbolic_power_table(q, k)
        for src in spec.labels:
            assert sum(table[src].values()) == spec[src].count


def test_corrections_are_pinned():
    got = {case: {key: str(v) for key, v in fix.items()} for case, fix in psu3_data.CORRECTIONS.items()}
    assert got == PINNED_CORRECTIONS


def test_printed_typos_break_column_sums():
    # the two printed C7 -> C7 entries cannot be right: their columns do not sum correctly
    with pytest.raises(ColumnSumMismatch):
        symbolic_power_table(4, 2, corrected=False)
    with pytest.raises(ColumnSumMismatch):
        symbolic_power_table(9, 3, corrected=False)


def test_power_case_selection():
    assert power_case(7, 2) == (2, "q = 1,3 mod 6")
    assert power_case(8, 2) == (2, "q = 2 mod 6")
    assert power_case(17, 3) == (3, "q = 8 mod 9")
    assert power_case(11, 4) == (4, "q = 11 mod 12")


def test_chi_on_power_types_identity_column():
    spec = class_spectrum(5)
    # every power of the identity is the identity
    assert chi_on_power_types(spec, "C1", 3) == spec["C1"].chi
