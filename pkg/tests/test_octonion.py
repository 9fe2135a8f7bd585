from hypothesis import given, settings, strategies as st

from g2replab import octonion
from g2replab.octonion import Octonion, Quaternion, cd_join, cd_split, conj, mul, norm, trace
from g2replab.scalar import GF, QQ

ONE, I, J, IJ, K, IK, JK, IJK = range(8)


def e(idx, F=QQ, c=1):
    return Octonion.basis(F, idx).scale(F(c))


def test_basis_products():
    assert mul(e(I), e(I)) == e(ONE, c=-3)
    assert mul(e(J), e(J)) == e(ONE, c=-1)
    assert mul(e(K), e(K)) == e(ONE, c=-1)
    assert mul(e(I), e(J)) == e(IJ)
    assert mul(e(IJ), e(K)) == e(IJK)
    assert mul(e(I), e(JK)) == e(IJK, c=-1)


def test_norm_trace_examples():
    assert norm(e(ONE) + e(J)) == 2
    assert norm(e(I)) == 3
    assert trace(e(K)) == 0
    assert [octonion.basis_norm(a) for a in range(8)] == [1, 3, 1, 3, 1, 3, 1, 3]


def test_cayley_dickson_examples():
    zero, one = Quaternion(QQ, (0, 0, 0, 0)), Quaternion(QQ, (1, 0, 0, 0))
    assert cd_split(e(K)) == (zero, one)
    assert cd_join(one, zero) == e(ONE)
    assert cd_split(e(IJK)) == (zero, Quaternion(QQ, (0, 0, 0, 1)))


def test_alternative_decompositions():
    assert all(octonion.alternative_decompositions_check().values())


def test_structure_table():
    assert octonion.table_mismatches() == []
    assert octonion.structure_constant_violations(octonion.derive_structure_constants()) == []


def test_corrupted_table_names_pair():
    bad = octonion.table_mismatches(octonion.corrupted_table(1, 2))
    assert bad and len(bad) == 1


coords = st.lists(st.integers(-20, 20), min_size=8, max_size=8)


@settings(max_examples=60)
@given(coords, coords, st.sampled_from([0, 5, 7, 11, 13]))
def test_composition_and_alternativity(xs, ys, p):
    F = QQ if p == 0 else GF(p)
    x, y = Octonion(F, xs), Octonion(F, ys)
    assert norm(mul(x, y)) == norm(x) * norm(y)
    assert conj(mul(x, y)) == mul(conj(y), conj(x))
    assert mul(mul(x, x), y) == mul(x, mul(x, y))
    assert mul(mul(y, x), x) == mul(y, mul(x, x))
    assert octonion.table_mul(x, y) == mul(x, y)
    assert octonion.mul_generic(x, y) == mul(x, y)


@given(coords)
def test_split_join_roundtrip(xs):
    x = Octonion(QQ, xs)
    assert cd_join(*cd_split(x)) == x
