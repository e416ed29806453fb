from fractions import Fraction

import pytest

from epcheck.cyclotomic import Cyclotomic, cyclotomic_polynomial


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(8) == (1, 0, 0, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("e", [2, 3, 4, 5, 7, 8, 12, 15, 24, 60])
def test_roots_of_unity(e):
    z = Cyclotomic.zeta_power(e, 1)
    p = Cyclotomic.from_rational(1)
    for _ in range(e):
        p = p * z
    assert p == 1
    s = Cyclotomic.from_rational(0)
    for k in range(e):
        s = s + Cyclotomic.zeta_power(e, k)
    assert s.is_zero()


def test_rational_collapse_and_equality():
    z4 = Cyclotomic.zeta_power(4, 1)
    sq = z4 * z4
    assert sq.is_rational() and sq.rational_value() == -1
    assert sq == -1
    assert Cyclotomic.from_rational(Fraction(3, 7)) == Fraction(3, 7)
    assert (z4 * 0).is_zero()


def test_mixed_conductors():
    z3 = Cyclotomic.zeta_power(3, 1)
    z4 = Cyclotomic.zeta_power(4, 1)
    w = z3 * z4
    assert w.e == 12
    assert w * w.conjugate() == 1
    assert (z3 + 1 + z3.conjugate()).is_zero()
    # lift/collapse round trip
    assert z3.lift(12) == z3


def test_conjugation_and_galois():
    z7 = Cyclotomic.zeta_power(7, 1)
    tr = Cyclotomic.from_rational(0)
    for k in range(1, 7):
        tr = tr + z7.galois(k)
    assert tr == -1
    assert z7.conjugate() == z7.galois(6)


def test_division_and_scaling():
    z = Cyclotomic.zeta_power(8, 3)
    assert (z / 5) * 5 == z
    assert z * Fraction(2, 3) == z + z * Fraction(-1, 3)
    with pytest.raises(TypeError):
        z / z


def test_serialization():
    z = Cyclotomic.zeta_power(8, 1) * Fraction(1, 2)
    j = z.to_json()
    assert j["conductor"] == 8
    assert j["coeffs"][1] == "1/2"
    k = z.sort_key()
    assert k[0] == 8
