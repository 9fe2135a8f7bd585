import itertools
import json
import random

import pytest

from g2replab import obstructions as ob, repfamily as rf
from g2replab.g2core import CharPolyG2
from g2replab.linalg import Matrix
from g2replab.scalar import GF, QQ

F13, F29 = GF(13), GF(29)


def point(F, a, b, **angle):
    a, b = tuple(F(v) for v in a), tuple(F(v) for v in b)
    return rf.make_param(a, b, rf.third_pair(a, b), F=F, **angle)


def surjective_points(F, n, seed=0, form="repar"):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        pt = rf.sample_params(F, rng, form=form)
        rep = ob.theorem_main2_verdict(pt)
        if rep.verdict == "Surjective" and not rep.diagnostics["pair_coincidences"]:
            out.append(pt)
    return out


def sphere_points(F, pred):
    return [(w, x, y, z) for w in F.elements() for x in F.elements() for y in F.elements() for z in F.elements()
            if w * w + 3 * x * x + y * y + 3 * z * z == 1 and pred(w, x, y, z)]


def test_su_condition():
    pt = point(F13, (1, 0), (2, 6), repar=(0, 0, 1))
    assert ob.su_condition(pt) == ob.BLOCKED
    v, lam = ob.common_fixed_vector(pt)
    S, R = (g.matrix for g in rf.phi(pt))
    assert lam == 1 and R.apply(v) == tuple(v) and S.apply(v) == tuple(v)
    assert ob.su_condition(surjective_points(F29, 1)[0]) == ob.CLEAR


def test_su_a1_zero_has_minus_one_eigenvalue():
    pt = point(F13, (0, 1), (2, 6), repar=(0, 0, 1))
    assert ob.su_condition(pt) == ob.BLOCKED
    v, lam = ob.common_fixed_vector(pt)
    assert lam == -1


def test_soh_components():
    w, x, y, z = sphere_points(F29, lambda w, x, y, z: x == z and w == -y and 2 * y * y + 6 * z * z == 1)[0]
    q = surjective_points(F29, 1, form="full")[0]
    assert 1 in ob.soh_components(q.with_angle("full", (w, x, y, z)))
    on5 = q.with_angle("full", (0, 0, 1, 0))
    assert 5 in ob.soh_components(on5) and ob.soh_condition(on5) == ob.BLOCKED
    assert ob.soh_condition(q) == ob.CLEAR


def test_soh_component5_has_invariant_three_space():
    q = surjective_points(F29, 1, form="full")[0].with_angle("full", (0, 0, 1, 0))
    S, R = (g.matrix for g in rf.phi(q))
    r = ob.invariant_subspace_search([S, R], seed=1)
    assert r.status == "Found" and r.dim == 3
    assert ob.is_invariant(F29, [S, R], r.subspace)
    assert not ob.is_invariant(F29, [S, R], [tuple(F29(int(i == 1)) for i in range(7))])


def test_parabolic_items():
    F = F29
    circ = rf.circle_points(F)
    a = next(c for c in circ if c[0] * c[1])
    b = next(c for c in circ if c[0] * c[1] and c not in (a, (-a[0], -a[1])))
    fulls = sphere_points(F, lambda w, x, y, z: 2 * w * y - 6 * x * z + 1 == 0)
    pt = rf.make_param(a, a, rf.third_pair(a, a), full=fulls[0], F=F)
    assert 1 in ob.parabolic_items(pt)
    c = rf.third_pair(a, a)
    pt7 = rf.make_param(a, a, c, full=fulls[0], F=F)
    assert (c == a) == (7 in ob.parabolic_items(pt7))
    # a = b = c needs a rotation of order 3
    cube = [v for v in circ if rf.third_pair(v, v) == v]
    assert cube
    v = cube[0]
    pt = rf.make_param(v, v, v, repar=(0, 0, 1), F=F)
    assert 7 in ob.parabolic_items(pt)
    del b


def test_generic_parabolic_clear_and_no_isotropic_subspace():
    for pt in surjective_points(F29, 2, seed=3, form="full"):
        assert ob.parabolic_condition(pt) == ob.CLEAR
        S, R = (g.matrix for g in rf.phi(pt))
        r = ob.invariant_subspace_search([S, R], seed=2)
        assert r.status == "NoneFound" and r.exhaustive


def test_pgl2_examples():
    assert ob.pgl2_quintic(0, 0) == 0
    assert ob.pgl2_quintic(1, 1) == 0
    assert ob.pgl2_quintic(1, 2) == 10
    cp = ob.pgl2_spectrum_charpoly(2)
    assert ob.pgl2_condition(cp) and not any(ob.pgl2_system(cp.g1, cp.g2, cp.g3))
    assert not ob.pgl2_condition(CharPolyG2(QQ(1), QQ(2), QQ(1 + 2 - 1)))


def test_pgl2_off_at_generic_points():
    for pt in surjective_points(F29, 3, seed=4):
        assert not ob.pgl2_condition(rf.char_poly_T(pt))


def test_finite_subgroup_condition():
    F = GF(11)
    assert ob.finite_subgroup_hits(CharPolyG2(F(6), F(3), F(6 + 3 - 36)), 11) == [7]
    assert ob.finite_subgroup_condition(CharPolyG2(F(-7), F(1), F(-7 + 1 - 49)), 11) == ob.BLOCKED
    assert ob.finite_subgroup_condition(CharPolyG2(F(5), F(5), F(5 + 5 - 25)), 11) == ob.CLEAR
    # X^3 - 3X + 1 has no root mod 13, so only the rational list applies there
    assert len(ob.condition6_values(F13)) == len(ob.THEOREM_G1_VALUES) + 1  # sqrt 13 = 0 gives g1 = -1/2
    assert len(ob.THEOREM_P11_PAIRS) == 14


def test_verdict_indices():
    rep = ob.theorem_main2_verdict(point(F13, (1, 0), (2, 6), repar=(0, 0, 1)))
    assert rep.verdict == "Blocked" and 1 in rep.failed and rep.classes["SU_M"].status == ob.BLOCKED
    # a1^2 = a2^2 with all six coordinates nonzero, over F_17
    rep = ob.theorem_main2_verdict(point(GF(17), (3, 3), (4, 6), repar=(0, 0, 0)))
    assert 2 in rep.failed and 1 not in rep.failed
    pt = surjective_points(F29, 1)[0]
    rep = ob.theorem_main2_verdict(pt)
    assert rep.verdict == "Surjective" and rep.failed == []
    js = json.loads(json.dumps(rep.to_json()))
    assert js["classes"]["subfield"]["status"] == ob.NA
    assert js["classes"]["J1"]["status"] == ob.NA
    with pytest.raises(ValueError):
        ob.theorem_main2_verdict(pt, p=3)


def test_full_form_conditions_literal():
    pt = surjective_points(F29, 1, form="full")[0]
    rep = ob.theorem_main2_verdict(pt)
    assert not rep.conditions[3] and not rep.notes
    # literal wxyz = 0 at z = 0, while the reparameterized reading only looks at w1 x1 y1
    full = sphere_points(F29, lambda w, x, y, z: z == 0 and w * x * y != 0)[0]
    assert ob.theorem_main2_verdict(pt.with_angle("full", full)).conditions[3]
    rp = pt.with_angle("full", full).to_repar()
    rep = ob.theorem_main2_verdict(rp)
    assert not rep.conditions[3] and rep.notes


def test_search_requirements():
    with pytest.raises(ValueError):
        ob.invariant_subspace_search([Matrix.identity(QQ, 7)])


def test_degree_parts_and_factors():
    from g2replab.poly import Poly
    F = GF(7)
    X = Poly.x(F)
    f = (X - 1) * (X - 2) * (X * X + 1) * (X ** 3 + X + 1)  # X^2+1 and X^3+X+1 irreducible mod 7
    parts = ob.degree_parts(f, 7, 3)
    assert {d: p.degree for d, p in parts.items() if p.degree} == {1: 2, 2: 2, 3: 3}
    facs = ob.irreducible_factors(f, 7, 3, random.Random(0))
    assert sorted(p.degree for p in facs) == [1, 1, 2, 3]


def test_witness():
    pt = point(F13, (1, 0), (2, 6), repar=(0, 0, 1))
    assert ob.witness_surjectivity(pt, budget=0).status == "Inconclusive"
    cert = ob.witness_surjectivity(pt, seed=1)
    assert cert.status == "NotSurjective" and cert.searches["1"]["status"] == "Found"
    for i, q in enumerate(surjective_points(F29, 2, seed=6)):
        cert = ob.witness_surjectivity(q, seed=i)
        assert cert.status == "Certified"
        assert cert.pgl2_escape and cert.bounded_escape
        again = ob.witness_surjectivity(q, seed=i)
        assert again.to_json() == cert.to_json()


def test_no_surjective_representation_over_f5():
    # every F_5 circle point lies on an axis, so a1a2 = 0 and an invariant line exists
    for pt in itertools.islice(rf.enumerate_params(5, step=7), 40):
        assert ob.su_condition(pt) == ob.BLOCKED
        assert ob.witness_surjectivity(pt, seed=0).status == "NotSurjective"


def test_pair_coincidence_gap():
    F = F13
    pt = rf.make_param((6, 11), (7, 2), (7, 2), repar=(7, 1, 1), F=F)
    rep = ob.theorem_main2_verdict(pt)
    assert rep.verdict == "Surjective"
    assert "bc" in rep.diagnostics["pair_coincidences"]
    S, R = (g.matrix for g in rf.phi(pt))
    assert ob.invariant_subspace_search([S, R], seed=0).status == "Found"
    r = ob.invariant_subspace_search([S, R], dims=(1, 2), seed=0)
    assert r.status == "Found" and r.dim == 2 and ob.isotropic(r.subspace, F)
