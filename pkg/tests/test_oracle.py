from collections import Counter

import numpy as np
import pytest

from rdbound.oracle import (
    DEFAULT_MAX_ORDER,
    centralizer_order_direct,
    conjugacy_classes,
    enumerate_group,
    group_order,
    power_distribution_oracle,
    power_map_is_class_function,
    quotient_by_center,
)


@pytest.fixture(scope="module")
def sl2_5():
    return enumerate_group("SL2", 5)


@pytest.fixture(scope="module")
def su3_2():
    return enumerate_group("SU3", 2)


def test_group_orders():
    assert group_order("SL2", 5) == 120
    assert group_order("SU3", 2) == 216
    assert group_order("SU3", 3) == 6048


def test_enumeration_sizes(sl2_5, su3_2):
    assert len(sl2_5) == 120
    assert len(su3_2) == 216


def test_elements_are_members_and_closed(su3_2):
    rng = np.random.default_rng(1)
    for i, j in rng.integers(0, len(su3_2), size=(30, 2)):
        g, h = su3_2.element(int(i)), su3_2.element(int(j))
        assert g.is_member() and (g * h).is_member()
        assert (g * h).det() == 1


def test_sl2_5_classes(sl2_5):
    P = conjugacy_classes(sl2_5)
    assert len(P) == 9
    assert int(P.sizes.sum()) == 120
    assert sorted(Counter(P.sizes.tolist()).items()) == [(1, 2), (12, 4), (20, 2), (30, 1)]


def test_su3_2_has_16_classes(su3_2):
    assert len(conjugacy_classes(su3_2)) == 16


def test_psu3_2_has_6_classes(su3_2):
    Q = quotient_by_center(su3_2)
    assert Q.order == 72
    assert len(conjugacy_classes(Q)) == 6


def test_centralizers_match_direct_count(sl2_5):
    P = conjugacy_classes(sl2_5)
    for c in range(len(P)):
        assert centralizer_order_direct(sl2_5, int(P.reps[c])) == int(P.centralizer_orders[c])


@pytest.mark.parametrize("k", [2, 3, 5])
def test_power_maps_are_class_functions(sl2_5, k):
    P = conjugacy_classes(sl2_5)
    assert power_map_is_class_function(P, k)
    target, M = power_distribution_oracle(P, k)
    assert (M.sum(axis=0) == 1).all()


def test_order_budget_enforced():
    with pytest.raises(Exception):
        enumerate_group("SU3", 7, max_order=DEFAULT_MAX_ORDER // 4)
