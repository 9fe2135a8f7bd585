from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from g2replab.linalg import Matrix, charpoly, det, inverse, nullspace, rank
from g2replab.poly import Poly, int_poly, poly_divides_cyclotomic_power
from g2replab.scalar import (GF, QQ, ExtensionField, FieldError, legendre, minpoly_roots_mod_p,
                             parse_fraction, sqrt_in_field)
from g2replab.series import Series, TruncationError, geometric_product, laurent_residue_extract

small_primes = st.sampled_from([5, 7, 11, 13, 17, 19, 23, 29])


@pytest.mark.parametrize("a,p,want", [(2, 7, 1), (0, 5, 0), (2, 5, -1)])
def test_legendre_examples(a, p, want):
    assert legendre(a, p) == want


@given(small_primes, st.integers(-100, 100))
def test_legendre_matches_brute_force(p, a):
    squares = {x * x % p for x in range(1, p)}
    want = 0 if a % p == 0 else (1 if a % p in squares else -1)
    assert legendre(a, p) == want


def test_sqrt_examples():
    assert sqrt_in_field(GF(13)(4)) == 2
    assert sqrt_in_field(GF(5)(2)) is None
    assert sqrt_in_field(GF(23)(3)) == 7
    assert sqrt_in_field(QQ(2)) is None
    assert sqrt_in_field(QQ(Fraction(9, 4))) == Fraction(3, 2)


@given(small_primes, st.integers(0, 1000))
def test_sqrt_smaller_root(p, a):
    F = GF(p)
    r = sqrt_in_field(F(a))
    roots = [x for x in range(p) if x * x % p == a % p]
    if not roots:
        assert r is None
    else:
        assert int(r) == min(roots)


def test_minpoly_roots_examples():
    assert sorted(int(r) for r in minpoly_roots_mod_p((-13, 0, 1), 17)) == [8, 9]
    assert list(minpoly_roots_mod_p((1, -3, 0, 1), 5)) == []
    assert [int(r) for r in minpoly_roots_mod_p((-13, 0, 1), 13)] == [0]


def test_gf_rejects_composite():
    with pytest.raises(FieldError):
        GF(15)


def test_parse_fraction():
    assert parse_fraction("3/5") == Fraction(3, 5)
    assert parse_fraction("-7") == -7
    with pytest.raises(ValueError):
        parse_fraction("3//5")
    with pytest.raises(ValueError):
        parse_fraction("0.5")


def test_fp_no_silent_mixing():
    with pytest.raises(FieldError):
        GF(5)(1) + GF(7)(1)


@given(small_primes, st.integers(1, 10**6))
def test_fp_inverse(p, a):
    if a % p:
        x = GF(p)(a)
        assert x * (1 / x) == 1


def test_extension_field_arithmetic():
    K = ExtensionField(QQ, (1, -3, 0, 1), name="alpha")
    al = K.from_coeffs((0, 1, 0))
    assert al ** 3 - 3 * al + 1 == 0
    assert (al * (1 / al)) == 1


def test_linalg_over_fields(field, rng):
    F = field
    for _ in range(5):
        M = Matrix(F, [[F.random_element(rng) for _ in range(4)] for _ in range(4)])
        d = det(M)
        if d:
            assert (M @ inverse(M)).is_identity()
            assert rank(M) == 4
        else:
            assert nullspace(M)
        cp = charpoly(M)
        assert cp[-1] == 1 and cp[0] == d  # det(X - M) at X = 0 is det(-M) = det M for even size


def test_poly_divides_cyclotomic_power_examples():
    f = int_poly([1, 1, -3, -3, 3, 3, -1, -1])
    assert poly_divides_cyclotomic_power(f, 2, 7)
    assert not poly_divides_cyclotomic_power(f, 1, 7)
    assert poly_divides_cyclotomic_power(int_poly([1, 0, 0, 0, 0, 0, 0, -1]), 7, 1)


def test_poly_division_identity(rng):
    F = GF(11)
    for _ in range(20):
        a = Poly(F, [F.random_element(rng) for _ in range(rng.randint(1, 9))])
        b = Poly(F, [F.random_element(rng) for _ in range(rng.randint(1, 5))] + [1])
        q, r = a.divmod(b)
        assert q * b + r == a and r.degree < b.degree


def test_residue_examples():
    H = geometric_product(("q",), 5, [(w,) for w in (3, 3, 1, 1, 1, 1, -1, -1, -1, -1, -3, -3)])
    assert [int(x) for x in laurent_residue_extract(H).t_coefficients()][0:5:2] == [1, 2, 29]
    one = Series.one(("q",), 5)
    assert all(not c for c in laurent_residue_extract(one).t_coefficients()[1:])
    with pytest.raises(TruncationError):
        laurent_residue_extract(H, needed=9)
