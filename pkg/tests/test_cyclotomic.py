import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdouble.cyclotomic import Cyclotomic, dumps, embed, euler_phi, loads

CONDUCTORS = [1, 3, 4, 5, 7, 8, 12, 14, 15]

small_fraction = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def elements(draw, n=None):
    n = draw(st.sampled_from(CONDUCTORS)) if n is None else n
    coeffs = draw(st.lists(small_fraction, min_size=0, max_size=n))
    return Cyclotomic(n, coeffs)


def close(a: complex, b: complex, tol: float = 1e-9) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


@pytest.mark.parametrize("n", [2, 3, 5, 7, 12, 14, 21, 168])
def test_root_of_unity_has_exact_order(n):
    z = Cyclotomic.zeta(n)
    assert z**n == 1
    assert all(z**k != 1 for k in range(1, n))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 7, 8, 9, 12, 14, 15, 30])
def test_primitive_root_sum_is_mobius(n):
    # independent value: the sum of primitive n-th roots equals mu(n)
    mobius = {1: 1, 2: -1, 3: -1, 4: 0, 6: 1, 7: -1, 8: 0, 9: 0, 12: 0, 14: 1, 15: 1, 30: -1}
    total = Cyclotomic.rational(0, n)
    for k in range(1, n + 1):
        if math.gcd(k, n) == 1:
            total = total + Cyclotomic.zeta(n, k)
    assert total == mobius[n]


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_gauss_sum_squares_to_signed_prime(p):
    g = Cyclotomic.gauss_sqrt(p)
    assert g * g == (p if p % 4 == 1 else -p)


def test_canonical_form_has_phi_coordinates():
    assert len(Cyclotomic(12, [1]).coefficients) == euler_phi(12) == 4
    # 1 + z + z^2 = 0 in Q(zeta_3)
    assert Cyclotomic(3, [1, 1, 1]).is_zero()


@given(elements(), elements(), elements())
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(elements())
@settings(max_examples=60, deadline=None)
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            a.inverse()
    else:
        assert a * a.inverse() == 1


@given(elements(), elements())
@settings(max_examples=60, deadline=None)
def test_embedding_is_a_ring_homomorphism(a, b):
    assert close(embed(a * b), embed(a) * embed(b))
    assert close(embed(a + b), embed(a) + embed(b))
    assert close(embed(a.conjugate()), embed(a).conjugate())


@given(elements(n=7), st.sampled_from([14, 21, 28, 168]))
@settings(max_examples=40, deadline=None)
def test_lift_preserves_value_and_equality(a, m):
    lifted = a.lift(m)
    assert lifted == a
    assert hash(lifted) == hash(a)
    assert close(embed(lifted), embed(a))


@given(elements())
@settings(max_examples=60, deadline=None)
def test_serialization_round_trip(a):
    assert loads(dumps(a)) == a


def test_mixed_conductors_meet_in_common_field():
    w = Cyclotomic.zeta(3)
    i = Cyclotomic.zeta(4)
    assert close(embed(w * i), cmath.exp(2j * math.pi * (1 / 3 + 1 / 4)))


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        Cyclotomic(0, [1])
    with pytest.raises(ValueError):
        Cyclotomic(3, [1]).lift(4)
    with pytest.raises(ValueError):
        loads("1 + z")
    assert Fraction(1, 2) * Cyclotomic.zeta(4) == Cyclotomic(4, [0, Fraction(1, 2)])
