import random

import pytest

from g2replab import g2core
from g2replab.g2core import (alpha2, alpha3, alpha3_prime, certify, char_poly_g2, element_order, group_closure,
                             is_g2_element, so_h_embed, torus_embed)
from g2replab.linalg import Matrix
from g2replab.octonion import Quaternion
from g2replab.scalar import GF, QQ


def q(*c):
    return Quaternion(QQ, c)


def test_is_g2_element_examples():
    assert is_g2_element(Matrix.identity(QQ, 7))
    assert is_g2_element(Matrix.diag(QQ, [1, 1, 1, -1, -1, -1, -1]))
    assert not is_g2_element(Matrix.diag(QQ, [2, 1, 1, 1, 1, 1, 1]))
    with pytest.raises(g2core.NotG2Error):
        certify(Matrix.diag(QQ, [2, 1, 1, 1, 1, 1, 1]))


def test_so_h_embed_examples():
    one, minus = q(1, 0, 0, 0), q(-1, 0, 0, 0)
    assert so_h_embed(one, one).matrix.is_identity()
    assert so_h_embed(minus, one).matrix == alpha2().matrix
    assert so_h_embed(one, minus).matrix == alpha2().matrix


def test_torus_examples():
    h = QQ(1) / 2
    assert torus_embed(1, 0, 1, 0).matrix.is_identity()
    assert torus_embed(1, 0, -h, h).matrix == alpha3().matrix
    assert torus_embed(-h, h, 1, 0).matrix == alpha3_prime().matrix
    assert element_order(torus_embed(-h, h, -h, h), 20) == 3


def test_standard_elements():
    got = {k: (element_order(v, 12), v.matrix.trace()) for k, v in g2core.standard_elements().items()}
    assert got == {"alpha2": (2, -1), "alpha3": (3, 1), "alpha3'": (3, -2)}


def test_char_polys():
    cp = char_poly_g2(alpha2())
    assert (cp.g1, cp.g2, cp.g3) == (1, -3, -3)
    assert cp.coefficients_high() == [1, 1, -3, -3, 3, 3, -1, -1]
    assert char_poly_g2(alpha3()).coefficients_high() == [1, -1, 0, -2, 2, 0, 1, -1]
    cp = char_poly_g2(Matrix.identity(QQ, 7))
    assert (cp.g1, cp.g2, cp.g3) == (-7, 21, -35)


def test_weyl_group():
    reps = g2core.weyl_representatives()
    assert len(reps) == 6
    assert element_order(reps[2], 10) == 2      # i -> i, j -> k, k -> j
    assert element_order(reps[5], 10) == 2      # the outer map i -> -i
    assert group_closure(reps[:5], 200) == 24
    assert group_closure([alpha2()], 10) == 2
    assert group_closure([alpha3()], 10) == 3


def test_order_overflow():
    r = element_order(alpha3(), 2)
    assert not r and r is not None and r != 3


def test_fast_path_agrees_with_generic():
    rng = random.Random(3)
    F = GF(13)
    for g in list(g2core.standard_elements(F).values()) + g2core.weyl_representatives(F):
        m = g.matrix
        assert g2core._g2_violations_mod_p(m, None) == g2core._g2_violations_generic(m, None) == []
        for _ in range(3):
            rows = [list(r) for r in m.rows]
            rows[rng.randrange(7)][rng.randrange(7)] += F(rng.randint(1, 12))
            bad = Matrix(F, rows)
            fast = g2core._g2_violations_mod_p(bad, None)
            assert fast and fast == g2core._g2_violations_generic(bad, None)


def test_relation_on_products():
    rng = random.Random(4)
    gens = list(g2core.standard_elements(GF(11)).values()) + g2core.weyl_representatives(GF(11))
    for _ in range(30):
        m = rng.choice(gens)
        for _ in range(rng.randint(1, 6)):
            m = m @ rng.choice(gens)
        assert char_poly_g2(m).relation_residual() == 0
