import random
from fractions import Fraction as Fr

import pytest

from g2replab import moduli
from g2replab.linalg import det, rank
from g2replab.octonion import Quaternion
from g2replab.scalar import GF, QQ
from g2replab.series import TruncationError

SLICE = (1, 0, 0, 2, 2, Fr(4, 3))


def slice_point():
    return moduli.slice_embed(*SLICE)


def test_zero_point():
    z = moduli.ChartPoint.zero()
    assert moduli.in_A_prime(z)
    assert not any(moduli.closed_minors(z, all_minors=True))
    assert moduli.gram_Q(z) == moduli.Matrix.diag(QQ, [3, 1, 3])
    assert det(moduli.gram_Q(z)) == 9
    assert moduli.q0_invariants(z) == (0, 0, 0)
    assert moduli.degree2_invariants(z) == (0, 0)
    assert not any(moduli.determinantal_invariants(z))
    # constant terms of the product columns: i.j = ij, i.ij = -3j, j.ij = i
    M = moduli.augmented_matrix(z)
    assert [[M[r, c] for r in range(7)] for c in (3, 4, 5)] == [
        [0, 0, 1, 0, 0, 0, 0], [0, -3, 0, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0, 0]]
    assert M == moduli.augmented_matrix_from_products(z)


def test_slice_point_examples():
    ch = slice_point()
    assert ch == moduli.ChartPoint.from_coords(QQ, (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, Fr(4, 3)))
    assert rank(moduli.augmented_matrix(ch)) == 3
    assert not any(moduli.closed_minors(ch, all_minors=True))
    assert det(moduli.gram_Q(ch)) == 625
    assert moduli.q0_invariants(ch)[0] == Fr(-88, 3)
    assert moduli.degree2_invariants(ch) == (Fr(-88, 3), -28)
    assert moduli.is_open(ch)
    rep = moduli.relation_report(ch)
    # the corrected forms hold; see test_acceptance for the printed ones
    corrected = {k: v for k, v in rep.residuals.items() if k not in ("s = t-2u", "r = 6s-(1/4)(t-s)^2", "D2 = 0")}
    assert not any(corrected.values())


def test_closure_violations():
    ch = moduli.ChartPoint.from_coords(QQ, (0, 0, 0, 0), (1, 0, 0, 0), (0, 0, 0, 0))
    assert any(moduli.closed_minors(ch))
    assert not moduli.in_A_prime(ch)
    with pytest.raises(moduli.NotOnClosedLocus):
        moduli.relation_report(ch)
    rng = random.Random(9)
    for _ in range(5):
        rows = [[QQ.random_element(rng) for _ in range(3)] for _ in range(4)]
        ch = moduli.ChartPoint.from_matrix(QQ, rows)
        # off the closed locus the rank exceeds 3; generic points have full rank 6
        assert rank(moduli.augmented_matrix(ch)) == 6
        assert not moduli.in_A_prime(ch)


def test_augmented_matrix_two_ways(rng):
    for _ in range(5):
        ch = moduli.slice_embed(*moduli.sample_slice(QQ, rng))
        assert moduli.augmented_matrix(ch) == moduli.augmented_matrix_from_products(ch)
        assert rank(moduli.augmented_matrix(ch)) == 3


def test_u_minus_three_not_open():
    # a = 0 forces c = -b and u = 3b^2; over F_13, b = 5 gives u = -3
    F = GF(13)
    ch = moduli.slice_embed(1, 0, 0, 0, 5, -5, F=F)
    assert moduli.degree2_invariants(ch)[1] == -3
    assert moduli.in_A_prime(ch) and not moduli.is_open(ch)


def test_relation_report_negative_control():
    ch = moduli.ChartPoint.from_coords(QQ, (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, Fr(4, 3)))
    rep = moduli.relation_report(ch.perturbed(1, 0, 1), require_closed=False)
    assert rep.failures


def test_slice_embed_two_to_one(rng):
    for _ in range(5):
        w, x, y, a, b, c = moduli.sample_slice(QQ, rng)
        assert moduli.slice_embed(w, x, y, a, b, c) == moduli.slice_embed(-w, -x, -y, -a, -b, -c)


def test_invariants_under_gl2_short(rng):
    F = GF(13)
    units = moduli.unit_quaternions(F)
    for _ in range(5):
        ch = moduli.slice_embed(*moduli.sample_slice(F, rng), F=F)
        h = rng.choice(units)
        e, f = rng.choice([(e, f) for e in F.elements() for f in F.elements() if e * e + 3 * f * f == 1])
        g = moduli.act_gl2_short(h, (e, f), ch)
        assert moduli.degree2_invariants(g) == moduli.degree2_invariants(ch)


def test_delta_examples(rng):
    assert moduli.delta_invariants(1, 0, 0, 2, 2, Fr(4, 3)) == (0, 0, 0)
    for _ in range(10):
        w, x, y, a, b, c = moduli.sample_slice(QQ, rng)
        d = moduli.delta_invariants(w, x, y, a, b, c)
        assert d == moduli.delta_formulas(w, x, y, a, b, c)
        assert moduli.delta_linear_relation(d, a, b, c) == 0


def test_degeneracy_cubic_singular_point():
    assert moduli.cubic_gradient(-27, -27) == (0, 0, 0)


def test_hilbert():
    assert moduli.hilbert_coefficients(4)[1] == [1, 2, 11]
    semi, inv = moduli.hilbert_coefficients(14)
    assert inv == [1, 2, 11, 31, 94, 222, 516, 1047]
    assert semi == [1, 2, 29, 95, 390, 1056, 2882, 6525]
    with pytest.raises(TruncationError):
        moduli.hilbert_coefficients(6, truncation=5)
    with pytest.raises(ValueError):
        moduli.hilbert_coefficients(5)


def test_slice_constraints():
    with pytest.raises(moduli.ConstraintViolation):
        moduli.slice_embed(1, 0, 0, 1, 1, 1)
    with pytest.raises(moduli.ConstraintViolation):
        moduli.slice_embed(1, 1, 0, 2, 2, Fr(4, 3))


def test_json_roundtrip():
    ch = slice_point()
    assert moduli.ChartPoint.from_json(ch.to_json(), QQ) == ch


def test_unit_quaternions():
    F = GF(5)
    units = moduli.unit_quaternions(F)
    # the norm form x^2 + 3y^2 + z^2 + 3w^2 has p^3 - p solutions of norm 1
    assert len(units) == 5 ** 3 - 5
    assert len(moduli.quaternion_closure(units[:2])) <= len(units)


def test_slice_symmetry_groups():
    r = moduli.slice_symmetry_check()
    assert (r.order_H_prime, r.order_H_double_prime, r.stabilizer) == (48, 8, 4)


def test_fiber_census():
    c = moduli.fiber_census(13)
    assert set(c.nondegenerate_histogram) == {12}
    assert c.degenerate_ok
    # independent brute force over all 13^3 triples
    p, fib = 13, {}
    for a in range(p):
        for b in range(p):
            for cc in range(p):
                if (a * b * cc - a - b - cc) % p:
                    continue
                u = -3 * (a * b + a * cc + b * cc) % p
                if u != p - 3:
                    fib.setdefault((-3 * (a * a + b * b + cc * cc) % p, u), 0)
                    fib[(-3 * (a * a + b * b + cc * cc) % p, u)] += 1
    assert sum(fib.values()) == c.points
    hist = {}
    for n in fib.values():
        hist[n] = hist.get(n, 0) + 1
    assert hist == c.histogram
