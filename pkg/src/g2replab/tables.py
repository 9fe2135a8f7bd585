"""Characteristic polynomials of elements in the maximal subgroups of bounded order."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .poly import Poly, poly_divides_cyclotomic_power, poly_str
from .scalar import GF, QQ, ExtensionField, Field, minpoly_roots_mod_p

ALPHA_MINPOLY = (1, -3, 0, 1)       # X^3 - 3X + 1, low degree first
SQRT13_MINPOLY = (-13, 0, 1)        # X^2 - 13


@lru_cache(maxsize=None)
def alpha_field() -> ExtensionField:
    return ExtensionField(QQ, ALPHA_MINPOLY, name="alpha")


@lru_cache(maxsize=None)
def sqrt13_field() -> ExtensionField:
    return ExtensionField(QQ, SQRT13_MINPOLY, name="s13")


@dataclass(frozen=True)
class TableEntry:
    group: str
    table: int
    coeffs_high: tuple          # eight coefficients in the entry's field, X^7 first
    order: int
    field: Field
    note: str = ""

    @property
    def poly(self) -> Poly:
        return Poly.from_high(self.field, self.coeffs_high)

    @property
    def g(self) -> tuple:
        c = self.coeffs_high
        return c[1], c[2], c[3]

    def label(self) -> str:
        extra = f" [{self.note}]" if self.note else ""
        return f"Table {self.table} {self.group} order {self.order}{extra}: {poly_str(self.poly, 'x')}"

    def reductions_mod_p(self, p: int) -> list[tuple]:
        """Coefficient tuples over F_p for every embedding of the entry's field."""
        F = GF(p)
        if self.field is QQ:
            return [tuple(F(c) for c in self.coeffs_high)]
        if isinstance(self.field, ExtensionField) and self.field.base is QQ:
            out = []
            for r in minpoly_roots_mod_p(self.field.minpoly, p):
                out.append(tuple(_eval_ext(c, r, F) for c in self.coeffs_high))
            return out
        if isinstance(self.field, type(F)) and self.field.p == p:
            return [tuple(self.coeffs_high)]
        return []


def printed_alpha_conjugates() -> dict[str, object]:
    """The two expressions printed as conjugates, as elements of Q(alpha)."""
    K = alpha_field()
    al = K.from_coeffs((0, 1, 0))
    return {"alpha^2-alpha-2": al * al - al - 2, "-alpha^2+2": -al * al + 2}


def is_alpha_root(x) -> bool:
    return not (x * x * x - 3 * x + 1)


def _eval_ext(x, root, F):
    acc = F.zero
    for c in reversed(x.c):
        acc = acc * root + F(c)
    return acc


def _rows_int(group: str, table: int, rows, F: Field = QQ) -> list[TableEntry]:
    return [TableEntry(group, table, tuple(F(c) for c in cs), n, F) for cs, n in rows]


# x^7 + g1 x^6 + ... rows, coefficients high first
_COMMON = {
    2: (1, 1, -3, -3, 3, 3, -1, -1),
    3: (1, -1, 0, -2, 2, 0, 1, -1),
    "4a": (1, -3, 5, -7, 7, -5, 3, -1),
    "4b": (1, 1, 1, 1, -1, -1, -1, -1),
    6: (1, 1, 0, 0, 0, 0, -1, -1),
    7: (1, 0, 0, 0, 0, 0, 0, -1),
    "8a": (1, -1, 1, -1, 1, -1, 1, -1),
    "8b": (1, 1, -1, -1, 1, 1, -1, -1),
}

_J1_ROWS = [
    ((1, 1, 8, 8, 3, 3, 10, 10), 2),
    ((1, 10, 0, 9, 2, 0, 1, 10), 3),
    ((1, 8, 1, 0, 0, 10, 3, 10), 5),
    ((1, 4, 1, 0, 0, 10, 7, 10), 5),
    ((1, 1, 0, 0, 0, 0, 10, 10), 6),
    ((1, 0, 0, 0, 0, 0, 0, 10), 7),
    ((1, 6, 9, 1, 10, 2, 5, 10), 10),
    ((1, 2, 6, 4, 7, 5, 9, 10), 10),
    ((1, 4, 10, 9, 2, 1, 7, 10), 11),
    ((1, 6, 3, 6, 5, 8, 5, 10), 15),
    ((1, 3, 2, 7, 4, 9, 8, 10), 15),
    ((1, 9, 0, 5, 6, 0, 2, 10), 19),
    ((1, 7, 10, 1, 10, 1, 4, 10), 19),
    ((1, 4, 7, 6, 5, 4, 7, 10), 19),
]


@lru_cache(maxsize=None)
def bounded_tables() -> tuple[TableEntry, ...]:
    C = _COMMON
    out = []
    out += _rows_int("2^3.L3(2)", 1, [(C[2], 2), (C[3], 3), (C["4a"], 4), (C["4b"], 4), (C[6], 6), (C[7], 7),
                                     (C["8a"], 8), (C["8b"], 8)])
    out += _rows_int("L2(8)", 2, [(C[2], 2), (C[3], 3), (C[7], 7)])
    K = alpha_field()
    al = K.from_coeffs((0, 1, 0))
    # the Galois conjugates of alpha; the expressions alpha^2-alpha-2 and
    # -alpha^2+2 quoted alongside the table are not roots of the minimal polynomial
    for name, w in (("alpha", al), ("alpha^2-2", al * al - 2), ("-alpha^2-alpha+2", -al * al - al + 2)):
        cs = (K(1), w, w * w - 1, w - 1, 1 - w, 1 - w * w, -w, K(-1))
        out.append(TableEntry("L2(8)", 2, cs, 9, K, note=f"alpha -> {name}"))
    out += _rows_int("L2(13)", 3, [(C[2], 2), (C[3], 3), (C[6], 6), (C[7], 7)])
    L = sqrt13_field()
    s = L.from_coeffs((0, 1))
    half = QQ(1) / 2
    for sign, tag in ((1, "+sqrt13"), (-1, "-sqrt13")):
        r = sign * s
        top = [L(1), half * (r - 1), half * (3 - r), half * (r - 5)]
        cs = tuple(top + [-top[3], -top[2], -top[1], L(-1)])
        out.append(TableEntry("L2(13)", 3, cs, 13, L, note=tag))
    out += _rows_int("U3(3):2", 4, [
        (C[2], 2), ((1, 2, 3, 1, -1, -3, -2, -1), 3), (C[3], 3), (C["4a"], 4), (C["4b"], 4), (C[6], 6),
        ((1, -2, 3, -3, 3, -3, 2, -1), 6), (C[7], 7), (C["8a"], 8), (C["8b"], 8),
        ((1, 0, -1, -1, 1, 1, 0, -1), 12)])
    out += _rows_int("J1", 5, _J1_ROWS, GF(11))
    return tuple(out)


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def maximal_proper_divisors(n: int) -> list[int]:
    return sorted({n // q for q in _prime_factors(n)})


@dataclass
class RowCheck:
    entry: TableEntry
    shape_ok: bool
    relation_ok: bool
    divides_order: bool
    minimal: bool
    failing_divisor: int | None = None

    @property
    def ok(self) -> bool:
        return self.shape_ok and self.relation_ok and self.divides_order and self.minimal

    def describe(self) -> str:
        parts = []
        if not self.shape_ok:
            parts.append("not of G2 shape")
        if not self.relation_ok:
            parts.append("g3 != g1+g2-g1^2")
        if not self.divides_order:
            parts.append(f"does not divide (X^{self.entry.order}-1)^7")
        if not self.minimal:
            parts.append(f"already divides (X^{self.failing_divisor}-1)^7")
        return "; ".join(parts) or "ok"


@dataclass
class TableReport:
    rows: list = field(default_factory=list)

    @property
    def failures(self) -> list[RowCheck]:
        return [r for r in self.rows if not r.ok]

    @property
    def ok(self) -> bool:
        return not self.failures


def check_entry(e: TableEntry) -> RowCheck:
    c = e.coeffs_high
    shape = len(c) == 8 and c[0] == 1 and c[7] == -1 and c[4] == -c[3] and c[5] == -c[2] and c[6] == -c[1]
    g1, g2, g3 = e.g
    rel = g3 == g1 + g2 - g1 * g1
    f = e.poly
    div = poly_divides_cyclotomic_power(f, e.order, 7)
    bad = None
    for m in maximal_proper_divisors(e.order):
        if poly_divides_cyclotomic_power(f, m, 7):
            bad = m
            break
    return RowCheck(e, shape, rel, div, bad is None, bad)


def table_verify() -> TableReport:
    return TableReport([check_entry(e) for e in bounded_tables()])


def table_g1_values() -> dict[str, set]:
    """Group label -> set of rational g1 values in its rows (extension rows omitted)."""
    out: dict[str, set] = {}
    for e in bounded_tables():
        if e.field is QQ:
            out.setdefault(e.group, set()).add(e.g[0])
    return out


def reduced_table_polys(p: int) -> set[tuple]:
    """Every table row reduced mod p (all embeddings), J1 rows only at p = 11."""
    out = set()
    for e in bounded_tables():
        if e.group == "J1" and p != 11:
            continue
        for r in e.reductions_mod_p(p):
            out.add(tuple(int(x) for x in r))
    return out
