import itertools
import json
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from g2replab import moduli, repfamily as rf
from g2replab.g2core import alpha2, char_poly_g2
from g2replab.scalar import GF, QQ

A = (Fr(3, 5), Fr(4, 5))
B = (Fr(3, 5), Fr(-4, 5))


def zero_point(F=QQ):
    return rf.make_param((1, 0), (1, 0), (1, 0), repar=(0, 0, 1), F=F)


def test_make_param_examples():
    pt = rf.make_param(A, B, rf.third_pair(A, B), repar=(0, 0, 1))
    assert pt.c == (1, 0)
    zero_point()
    with pytest.raises(rf.ConstraintViolation):
        rf.make_param(A, B, rf.third_pair(A, B), repar=(1, 0, 0))
    with pytest.raises(rf.ConstraintViolation):
        rf.make_param(A, A, A, repar=(0, 0, 1))
    with pytest.raises(ValueError):
        rf.make_param(A, B, (1, 0), repar=(0, 0, 1), full=(1, 0, 0, 0))


def _brute(p, fn):
    return sum(1 for v in __import__("itertools").product(range(p), repeat=fn.__code__.co_argcount) if fn(*v) % p == 0)


def test_point_counts():
    assert len(rf.circle_points(GF(5))) == 4 == _brute(5, lambda x, y: x * x + y * y - 1)
    assert len(rf.circle_points(GF(7))) == 8 == _brute(7, lambda x, y: x * x + y * y - 1)
    # the paraboloid w1^2+3x1^2+y1^2 = y1 over F_5 has 20 points
    assert len(rf.paraboloid_points(GF(5))) == 20 == _brute(5, lambda w, x, y: w * w + 3 * x * x + y * y - y)
    for p in (5, 7):
        assert rf.count_params(p) == len(rf.circle_points(GF(p))) ** 2 * len(rf.paraboloid_points(GF(p)))
        assert sum(1 for _ in rf.enumerate_params(p)) == rf.count_params(p)


def test_enumeration_partitions():
    full = [p.coords_strings() for p in rf.enumerate_params(5, limit=60)]
    parts = [p.coords_strings() for k in range(3) for p in rf.enumerate_params(5, limit=60, start=k, step=3)]
    assert sorted(full) == sorted(parts)


def test_phi_at_zero_point():
    S, R = rf.phi(zero_point())
    assert S.matrix == alpha2().matrix
    assert (R ** 3).matrix.is_identity()
    assert rf.evaluate_word(zero_point(), "S S").is_identity()
    assert rf.evaluate_word(zero_point(), "R R R").is_identity()
    assert rf.evaluate_word(zero_point(), "S R").trace() == 5
    assert rf.char_poly_T(zero_point()).g1 == -5


def test_phi_R_example():
    from g2replab.g2core import alpha3
    R = rf.phi(zero_point())[1]
    assert R.matrix == (alpha3() @ alpha3()).matrix


def test_all_quarter_turns_inadmissible():
    # a1 = b1 = c1 = 0 cannot satisfy the rotation constraint
    for signs in ((1, 1, 1), (1, -1, 1), (1, 1, -1), (-1, -1, -1)):
        with pytest.raises(rf.ConstraintViolation):
            rf.make_param((0, signs[0]), (0, signs[1]), (0, signs[2]), repar=(0, 0, 1))


def test_parse_word():
    assert rf.parse_word("S R^-1 R") == ["S", "R^-1", "R"]
    with pytest.raises(ValueError):
        rf.parse_word("S X")


def test_u1_independent_of_angle(rng):
    F = GF(13)
    for _ in range(5):
        pt = rf.sample_params(F, rng)
        cps = {int(rf.char_poly_T(pt.with_angle("repar", ang)).g1) for ang in rf.paraboloid_points(F)[:12]}
        assert len(cps) == 1


def test_rep_invariants(rng):
    assert rf.rep_invariants(zero_point()) == (0, 0)
    for _ in range(5):
        pt = rf.sample_params(QQ, rng)
        if not (pt.a[0] * pt.b[0] * pt.c[0]):
            continue
        a, b, c = rf.slice_coordinates(pt)
        assert rf.rep_invariants(pt) == moduli.degree2_invariants(moduli.slice_embed(1, 0, 0, a, b, c))
        neg = pt.with_pairs(tuple(-v for v in pt.a), tuple(-v for v in pt.b), pt.c)
        assert rf.rep_invariants(neg) == rf.rep_invariants(pt)
    with pytest.raises(rf.OutsideChart):
        rf.rep_invariants(rf.make_param((0, 1), (0, -1), (1, 0), repar=(0, 0, 1)))


def test_equivalence_signs():
    F = GF(13)
    pt = next(p for p in rf.enumerate_params(13) if p.angle[0] * p.angle[1] and p.a[0] * p.b[0] * p.c[0])
    w1, x1, y1 = pt.angle
    assert rf.equivalent(pt, pt)
    assert rf.equivalent(pt, pt.with_angle("repar", (-w1, -x1, y1)))
    assert not rf.equivalent(pt, pt.with_angle("repar", (w1, -x1, y1)))
    assert F is pt.F


def test_cover_symmetries(rng):
    syms = rf.cover_symmetries()
    assert len(syms) == 48 and any(s.is_identity() for s in syms)
    assert len(rf.symmetry_closure(syms)) == 48
    pt = rf.sample_params(GF(13), rng)
    while not (pt.a[0] * pt.b[0] * pt.c[0]):
        pt = rf.sample_params(GF(13), rng)
    for s in syms:
        assert rf.rep_invariants(s(pt)) == rf.rep_invariants(pt)


def test_apply_outer(rng):
    new = rf.apply_outer(zero_point())
    assert new.angle == (0, 0, 0)
    for _ in range(5):
        pt = rf.sample_params(GF(11), rng)
        assert rf.apply_outer(rf.apply_outer(pt)) == pt


def test_full_to_repar(rng):
    for _ in range(5):
        pt = rf.sample_params(GF(13), rng, form="full")
        rp = pt.to_repar()
        w1, x1, y1 = rp.angle
        assert w1 * w1 + 3 * x1 * x1 + y1 * y1 == y1
        # the representation only depends on the reparameterized angle
        assert rf.phi_R_matrix(pt) == rf.phi_R_matrix(rp)


def test_commutant_examples(rng):
    # over F_13 every circle coordinate is one of +-2, +-6, so condition (2)
    # always fails there; generic points are taken over F_29
    F = GF(29)
    n = 0
    while n < 3:
        pt = rf.sample_params(F, rng)
        if rf.indecomposable_by_conditions(pt):
            assert rf.commutant_dimension(pt) == 1
            n += 1
    pt = rf.make_param((1, 0), A, rf.third_pair((1, 0), A), repar=(0, 0, 1))
    assert not rf.indecomposability_conditions(pt)[1]
    assert rf.commutant_dimension(pt) >= 2


def test_condition2_always_fails_over_f13():
    assert not any(rf.indecomposability_conditions(pt)[2] for pt in itertools.islice(rf.enumerate_params(13, step=7), 500))


def test_indecomposability_conditions():
    F = GF(29)
    circ = rf.circle_points(F)
    a = next(c for c in circ if c[0] * c[1] and c[0] * c[0] != F(1) / 2)
    pt = rf.make_param(a, a, rf.third_pair(a, a), repar=(0, 0, 1), F=F)
    assert not rf.indecomposability_conditions(pt)[2]
    # 2 a1^2 = 1 needs a square root of 1/2: over F_7, (2, 2) is on the circle
    F = GF(7)
    half = (F(2), F(2))
    assert 2 * half[0] ** 2 == 1
    b = next(c for c in rf.circle_points(F) if c[0] * c[1] == 0 and c[0])
    pt = rf.make_param(half, b, rf.third_pair(half, b), repar=(0, 0, 1), F=F)
    assert not rf.indecomposability_conditions(pt)[3]
    assert not rf.indecomposable_by_conditions(pt)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([5, 7, 11, 13]))
def test_phi_relations_property(seed, p):
    import random
    pt = rf.sample_params(GF(p), random.Random(seed))
    S, R = rf.phi(pt)
    assert (S @ S).matrix.is_identity() and (R ** 3).matrix.is_identity()
    cp = char_poly_g2(rf.phi_T(pt))
    assert cp.relation_residual() == 0 and cp.g1 == rf.g1_formula(pt)


def test_json_roundtrip_and_errors():
    pt = rf.make_param(A, B, rf.third_pair(A, B), repar=(0, 0, 1))
    assert rf.param_from_json(json.loads(json.dumps(pt.to_json()))) == pt
    bad = pt.to_json()
    bad["a"][0] = "3//5"
    with pytest.raises(rf.SchemaError) as exc:
        rf.param_from_json(bad)
    assert exc.value.pointer == "/a/0"
    bad = pt.to_json()
    bad["angle"] = {"repar": ["0", "0"]}
    with pytest.raises(rf.SchemaError) as exc:
        rf.param_from_json(bad)
    assert exc.value.pointer == "/angle/repar"
    bad = pt.to_json()
    bad["a"] = [0.6, 0.8]
    with pytest.raises(rf.SchemaError):
        rf.param_from_json(bad)
