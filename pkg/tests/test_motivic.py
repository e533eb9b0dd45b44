import random

import pytest

from chisig.motivic import (
    ChiYPolynomial,
    LEFSCHETZ as L,
    MotivicClass,
    ONE,
    RealMotivicDatum,
    ZERO,
    check_chi_sigma,
)


def random_class(rng, max_deg=8, max_coeff=9):
    deg = rng.randint(0, max_deg)
    return MotivicClass(tuple(rng.randint(-max_coeff, max_coeff) for _ in range(deg + 1)))


def test_canonical_form_strips_trailing_zeros():
    assert MotivicClass((1, 2, 0, 0)).coeffs == (1, 2)
    assert MotivicClass((0, 0)).coeffs == ()
    assert not MotivicClass(())
    assert ZERO == MotivicClass((0,))


def test_cp1_minus_point_is_affine_line():
    assert (ONE + L) - ONE == L


def test_torus_square():
    assert (L - ONE) * (L - ONE) == MotivicClass((1, -2, 1))


def test_zero_absorbs():
    rng = random.Random(1)
    for _ in range(20):
        assert ZERO * random_class(rng) == ZERO


def test_ring_laws_random():
    rng = random.Random(2)
    for _ in range(200):
        a, b, c = (random_class(rng) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + ZERO == a
        assert a * ONE == a


def test_chi_y_values():
    assert L.chi_y() == ChiYPolynomial((0, -1))
    assert (ONE + L).chi_y() == ChiYPolynomial((1, -1))
    assert (L - ONE).chi_y() == ChiYPolynomial((-1, -1))


def test_signature_values():
    assert L.signature() == -1
    for n in range(7):
        assert ((L - ONE) ** n).signature() == (-2) ** n
    assert (ONE + L + L * L).signature() == 1  # projective plane


def test_euler_complex_values():
    assert L.euler_complex() == 1
    assert (L - ONE).euler_complex() == 0
    assert (ONE + L).euler_complex() == 2


def test_morphisms_are_ring_maps():
    rng = random.Random(3)
    for _ in range(200):
        a, b = random_class(rng), random_class(rng)
        assert (a + b).chi_y() == a.chi_y() + b.chi_y()
        assert (a * b).chi_y() == a.chi_y() * b.chi_y()
        assert (a + b).signature() == a.signature() + b.signature()
        assert (a * b).signature() == a.signature() * b.signature()
        assert (a + b).euler_complex() == a.euler_complex() + b.euler_complex()
        assert (a * b).euler_complex() == a.euler_complex() * b.euler_complex()


def test_lefschetz_twist_flips_signature():
    rng = random.Random(4)
    for _ in range(50):
        c = random_class(rng)
        n = rng.randint(0, 5)
        assert (L ** n * c).signature() == (-1) ** n * c.signature()


def test_negative_power_rejected():
    with pytest.raises(ValueError):
        L ** -1


def test_non_integer_coefficients_rejected():
    with pytest.raises(ValueError):
        MotivicClass((1, 2.5))  # type: ignore[arg-type]


def test_datum_product_and_union_laws():
    rng = random.Random(5)
    for _ in range(100):
        d1 = RealMotivicDatum(random_class(rng).chi_y(), rng.randint(-9, 9))
        d2 = RealMotivicDatum(random_class(rng).chi_y(), rng.randint(-9, 9))
        prod = d1 * d2
        assert prod.real_euler == d1.real_euler * d2.real_euler
        assert prod.complex_chi_y == d1.complex_chi_y * d2.complex_chi_y
        un = d1.disjoint_union(d2)
        assert un.real_euler == d1.real_euler + d2.real_euler
        assert un.complex_chi_y == d1.complex_chi_y + d2.complex_chi_y


def test_affine_spaces_satisfy_chi_sigma():
    for n in range(9):
        datum = RealMotivicDatum.from_class(L ** n, (-1) ** n)
        res = check_chi_sigma(datum)
        assert res.equal and res.sigma == (-1) ** n


def test_tori_satisfy_chi_sigma():
    for n in range(7):
        datum = RealMotivicDatum.from_class((L - ONE) ** n, (-2) ** n)
        assert check_chi_sigma(datum).equal


def test_standard_real_torus_dimension_one():
    datum = RealMotivicDatum.from_class(L - ONE, -2)
    res = check_chi_sigma(datum)
    assert res.equal and res.sigma == -2


def test_twisted_torus_fails_chi_sigma():
    # real structure fixing the unit circle: real part S^1, chi = 0
    datum = RealMotivicDatum.from_class(L - ONE, 0)
    res = check_chi_sigma(datum)
    assert not res.equal
    assert res.sigma == -2 and res.real_euler == 0


def test_quadric_ellipsoid_fails_chi_sigma():
    # complex quadric surface = P1 x P1, real part a sphere
    datum = RealMotivicDatum.from_class((ONE + L) ** 2, 2)
    res = check_chi_sigma(datum)
    assert not res.equal
    assert res.sigma == 0 and res.real_euler == 2
