from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rdbound.exact import CycNumber, NotRational, cyc, cyclotomic_poly, euler_phi, zeta

CONDUCTORS = [1, 3, 4, 5, 7, 8, 9, 12, 15]


@st.composite
def cyc_numbers(draw, n=None):
    n = n or draw(st.sampled_from(CONDUCTORS))
    coord = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))
    coords = draw(st.lists(coord, min_size=euler_phi(n), max_size=euler_phi(n)))
    return CycNumber.from_coords(n, coords)


def test_euler_phi_small():
    assert [euler_phi(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]


def test_cyclotomic_poly_known():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)


def test_roots_of_unity_sum_to_zero():
    for n in (3, 5, 7, 8, 9, 12):
        assert sum((zeta(n, k) for k in range(n)), cyc(0, n)).is_zero()


def test_zeta_power_wraps():
    assert zeta(7) ** 7 == cyc(1)
    assert zeta(12, 3) == zeta(4)
    assert zeta(9, 3) == zeta(3)


def test_to_rational_and_error():
    assert (zeta(5) + zeta(5, 4) + zeta(5, 2) + zeta(5, 3)).to_rational() == -1
    with pytest.raises(NotRational):
        zeta(5).to_rational()


def test_sqrt_minus_three():
    w = zeta(3)
    s = w - w.conj()
    assert s * s == cyc(-3)


def test_minimize_drops_to_smallest_field():
    x = zeta(12, 4) + zeta(12, 8)
    assert x.minimize().conductor == 1
    assert x.to_rational() == -1


def test_str_forms():
    assert str(cyc(Fraction(-3, 2))) == "-3/2"
    assert str(zeta(7) + zeta(7, 2) + zeta(7, 4)) == "z7 + z7^2 + z7^4"


@given(cyc_numbers(), cyc_numbers(), cyc_numbers())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == cyc(0)


@given(cyc_numbers())
def test_inverse(a):
    if not a.is_zero():
        assert a * a.inverse() == cyc(1)


@given(cyc_numbers(), cyc_numbers())
def test_conjugation_is_a_ring_map(a, b):
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()
    assert a.conj().conj() == a


@given(cyc_numbers())
def test_norm_is_real_and_complex_value_matches(a):
    nrm = a * a.conj()
    assert abs(complex(nrm).imag) < 1e-9
    assert abs(complex(nrm) - abs(complex(a)) ** 2) < 1e-6 * (1 + abs(complex(nrm)))


@given(cyc_numbers(n=12), st.sampled_from([1, 5, 7, 11]))
def test_galois_automorphism(a, k):
    b = a.galois(k)
    assert (a * a).galois(k) == b * b
    assert a.galois(k).galois(pow(k, -1, 12)) == a


@given(cyc_numbers(n=4))
def test_embedding_preserves_value(a):
    e = a.embed(12)
    assert e == a
    assert abs(complex(e) - complex(a)) < 1e-9
