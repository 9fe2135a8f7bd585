import pytest

from g2replab import tables
from g2replab.poly import poly_divides_cyclotomic_power


def _row(group, order, note=""):
    return next(e for e in tables.bounded_tables() if e.group == group and e.order == order and note in e.note)


def test_row_count_and_fields():
    rows = tables.bounded_tables()
    assert len(rows) == 45
    assert {e.group for e in rows} == {"2^3.L3(2)", "L2(8)", "L2(13)", "U3(3):2", "J1"}
    assert len([e for e in rows if e.group == "L2(8)" and e.order == 9]) == 3
    assert len([e for e in rows if e.group == "L2(13)" and e.order == 13]) == 2


@pytest.mark.parametrize("group,order,note", [
    ("2^3.L3(2)", 7, ""), ("L2(13)", 13, "+sqrt13"), ("L2(13)", 13, "-sqrt13"), ("L2(8)", 9, "alpha -> alpha")])
def test_rows_pass(group, order, note):
    assert tables.check_entry(_row(group, order, note)).ok


def test_j1_order19_rows_pass():
    rows = [e for e in tables.bounded_tables() if e.group == "J1" and e.order == 19]
    assert len(rows) == 3 and all(tables.check_entry(e).ok for e in rows)


def test_only_the_j1_order11_row_fails():
    rep = tables.table_verify()
    assert [(r.entry.group, r.entry.order) for r in rep.failures] == [("J1", 11)]
    r = rep.failures[0]
    assert r.shape_ok and r.relation_ok and r.divides_order and r.failing_divisor == 1
    assert poly_divides_cyclotomic_power(r.entry.poly, 1, 7)


def test_alpha_conjugates():
    assert not any(tables.is_alpha_root(v) for v in tables.printed_alpha_conjugates().values())
    K = tables.alpha_field()
    al = K.from_coeffs((0, 1, 0))
    assert tables.is_alpha_root(al * al - 2) and tables.is_alpha_root(-al * al - al + 2)


def test_maximal_proper_divisors():
    assert tables.maximal_proper_divisors(12) == [4, 6]
    assert tables.maximal_proper_divisors(7) == [1]
    assert tables.maximal_proper_divisors(1) == []


def test_reductions():
    # 13 is a square mod 17 (8^2), not mod 11; alpha has roots mod 7? X^3-3X+1 mod 7 has none
    assert len(_row("L2(13)", 13, "+sqrt13").reductions_mod_p(17)) == 2
    assert _row("L2(13)", 13, "+sqrt13").reductions_mod_p(11) == []
    polys11 = tables.reduced_table_polys(11)
    assert tuple(1 if i == 0 else 0 for i in range(7)) + (10,) in polys11
    assert not any(len(p) != 8 for p in tables.reduced_table_polys(13))
