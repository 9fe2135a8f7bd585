"""The octonion algebra with i^2 = -3, j^2 = k^2 = -1.

Coordinates are taken in the ordered basis (1, i, j, ij, k, ik, jk, (ij)k).
Basis element number ``a`` corresponds to the bit mask ``a`` over the
generators (bit 0 = i, bit 1 = j, bit 2 = k), so ``e_a e_b`` is a multiple
of ``e_{a xor b}``.

Multiplication is implemented twice: through the Cayley-Dickson doubling of
the quaternions, and through a structure-constant table derived from the
basis relations alone.  :func:`table_mismatches` compares the two.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Sequence

from .scalar import QQ, Field, PrimeField, field_of

BASIS_NAMES = ("1", "i", "j", "ij", "k", "ik", "jk", "(ij)k")
IMAG_NAMES = BASIS_NAMES[1:]

# quaternion algebra (alpha, beta) = (-3, -1): i^2 = alpha, j^2 = beta
ALPHA = -3
BETA = -1
# norms of the generators i, j, k
GEN_NORMS = (3, 1, 1)


# ---------------------------------------------------------------------------
# Quaternions
# ---------------------------------------------------------------------------


def _qmul(x: Sequence, y: Sequence) -> tuple:
    x0, x1, x2, x3 = x
    y0, y1, y2, y3 = y
    return (
        x0 * y0 + ALPHA * x1 * y1 + BETA * x2 * y2 - ALPHA * BETA * x3 * y3,
        x0 * y1 + x1 * y0 - BETA * x2 * y3 + BETA * x3 * y2,
        x0 * y2 + x2 * y0 + ALPHA * x1 * y3 - ALPHA * x3 * y1,
        x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
    )


def _qconj(x: Sequence) -> tuple:
    return (x[0], -x[1], -x[2], -x[3])


class Quaternion:
    """Element a + b i + c j + d ij of the quaternion algebra."""

    __slots__ = ("F", "c")

    def __init__(self, F: Field, coords: Sequence):
        if len(coords) != 4:
            raise ValueError("a quaternion has 4 coordinates")
        self.F = F
        self.c = tuple(F(x) for x in coords)

    @classmethod
    def scalar(cls, F: Field, a) -> "Quaternion":
        return cls(F, (a, 0, 0, 0))

    def __mul__(self, o):
        if isinstance(o, Quaternion):
            _same_field(self.F, o.F)
            return Quaternion(self.F, _qmul(self.c, o.c))
        return Quaternion(self.F, tuple(x * o for x in self.c))

    def __rmul__(self, o):
        return Quaternion(self.F, tuple(o * x for x in self.c))

    def __add__(self, o: "Quaternion") -> "Quaternion":
        return Quaternion(self.F, tuple(a + b for a, b in zip(self.c, o.c)))

    def __sub__(self, o: "Quaternion") -> "Quaternion":
        return Quaternion(self.F, tuple(a - b for a, b in zip(self.c, o.c)))

    def __neg__(self) -> "Quaternion":
        return Quaternion(self.F, tuple(-a for a in self.c))

    def conj(self) -> "Quaternion":
        return Quaternion(self.F, _qconj(self.c))

    def norm(self):
        a, b, c, d = self.c
        return a * a + 3 * b * b + c * c + 3 * d * d

    def inverse(self) -> "Quaternion":
        n = self.norm()
        return Quaternion(self.F, tuple(x / n for x in _qconj(self.c)))

    def __eq__(self, o) -> bool:
        return isinstance(o, Quaternion) and self.c == o.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        return "Quaternion(" + ", ".join(self.F.format(x) for x in self.c) + ")"


# ---------------------------------------------------------------------------
# Octonions
# ---------------------------------------------------------------------------


def _same_field(F: Field, G: Field):
    if F != G:
        raise ValueError(f"field mismatch: {F!r} vs {G!r}")


def _cd_mul(x: Sequence, y: Sequence) -> tuple:
    u1, v1 = x[:4], x[4:]
    u2, v2 = y[:4], y[4:]
    a = _qmul(u1, u2)
    b = _qmul(_qconj(v2), v1)
    c = _qmul(v2, u1)
    d = _qmul(v1, _qconj(u2))
    return tuple(p - q for p, q in zip(a, b)) + tuple(p + q for p, q in zip(c, d))


class Octonion:
    __slots__ = ("F", "c")

    def __init__(self, F: Field, coords: Sequence):
        if len(coords) != 8:
            raise ValueError("an octonion has 8 coordinates")
        self.F = F
        self.c = tuple(F(x) for x in coords)

    @classmethod
    def _raw(cls, F: Field, coords: tuple) -> "Octonion":
        o = object.__new__(cls)
        o.F = F
        o.c = coords
        return o

    @classmethod
    def basis(cls, F: Field, index: int) -> "Octonion":
        return cls(F, [1 if i == index else 0 for i in range(8)])

    @classmethod
    def scalar(cls, F: Field, a) -> "Octonion":
        return cls(F, [a] + [0] * 7)

    @classmethod
    def from_imag(cls, F: Field, coords: Sequence, real=0) -> "Octonion":
        """Octonion with real part ``real`` and 𝕆₀ coordinates ``coords``."""
        return cls(F, [real] + list(coords))

    @property
    def real(self):
        return self.c[0]

    @property
    def imag(self) -> tuple:
        return self.c[1:]

    def __add__(self, o: "Octonion") -> "Octonion":
        return Octonion._raw(self.F, tuple(a + b for a, b in zip(self.c, o.c)))

    def __sub__(self, o: "Octonion") -> "Octonion":
        return Octonion._raw(self.F, tuple(a - b for a, b in zip(self.c, o.c)))

    def __neg__(self) -> "Octonion":
        return Octonion._raw(self.F, tuple(-a for a in self.c))

    def scale(self, s) -> "Octonion":
        s = self.F(s)
        return Octonion._raw(self.F, tuple(s * a for a in self.c))

    def __mul__(self, o):
        if isinstance(o, Octonion):
            return mul(self, o)
        return self.scale(o)

    def __rmul__(self, s):
        return self.scale(s)

    def conj(self) -> "Octonion":
        return conj(self)

    def trace(self):
        return trace(self)

    def norm(self):
        return norm(self)

    def is_zero(self) -> bool:
        return not any(self.c)

    def __eq__(self, o) -> bool:
        return isinstance(o, Octonion) and self.c == o.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        terms = [f"{self.F.format(x)}*{n}" for x, n in zip(self.c, BASIS_NAMES) if x]
        return "Octonion(" + (" + ".join(terms) if terms else "0") + ")"


def mul(x: Octonion, y: Octonion) -> Octonion:
    """Cayley-Dickson product (u1,v1)(u2,v2) = (u1u2 - conj(v2)v1, v2u1 + v1conj(u2))."""
    _same_field(x.F, y.F)
    F = x.F
    if F is QQ:
        # clear denominators and multiply integer coordinates
        X, dx = _integral(x.c)
        Y, dy = _integral(y.c)
        d = dx * dy
        return Octonion._raw(F, tuple(Fraction(v, d) for v in _cd_mul(X, Y)))
    if isinstance(F, PrimeField):
        cls = F.element_class
        return Octonion._raw(F, tuple(cls(v) for v in _cd_mul([a.v for a in x.c], [b.v for b in y.c])))
    return Octonion._raw(F, _cd_mul(x.c, y.c))


def _integral(c: Sequence[Fraction]) -> tuple[list[int], int]:
    d = math.lcm(*(a.denominator for a in c))
    return [a.numerator * (d // a.denominator) for a in c], d


def mul_generic(x: Octonion, y: Octonion) -> Octonion:
    """The Cayley-Dickson product on field elements, without the integer fast paths."""
    _same_field(x.F, y.F)
    return Octonion._raw(x.F, _cd_mul(x.c, y.c))


def conj(x: Octonion) -> Octonion:
    return Octonion._raw(x.F, (x.c[0],) + tuple(-a for a in x.c[1:]))


def trace(x: Octonion):
    return (x + conj(x)).c[0]


def norm(x: Octonion):
    return mul(x, conj(x)).c[0]


def norm_form(x: Octonion):
    """The diagonal quadratic form (a1^2+a3^2+a5^2+a7^2) + 3(a2^2+a4^2+a6^2+a8^2)."""
    a = x.c
    return (a[0] ** 2 + a[2] ** 2 + a[4] ** 2 + a[6] ** 2) + 3 * (a[1] ** 2 + a[3] ** 2 + a[5] ** 2 + a[7] ** 2)


def basis_norm(a: int) -> int:
    n = 1
    for bit, g in enumerate(GEN_NORMS):
        if a >> bit & 1:
            n *= g
    return n


def polar(x: Octonion, y: Octonion):
    """Bilinear form with <x, x> = N(x): the real part of x conj(y)."""
    return (mul(x, conj(y)) + mul(y, conj(x))).c[0] / 2


def commutator(x: Octonion, y: Octonion) -> Octonion:
    return mul(x, y) - mul(y, x)


def cd_split(x: Octonion) -> tuple[Quaternion, Quaternion]:
    return Quaternion(x.F, x.c[:4]), Quaternion(x.F, x.c[4:])


def cd_join(u: Quaternion, v: Quaternion) -> Octonion:
    _same_field(u.F, v.F)
    return Octonion(u.F, u.c + v.c)


def random_octonion(F: Field, rng: random.Random) -> Octonion:
    return Octonion(F, [F.random_element(rng) for _ in range(8)])


# ---------------------------------------------------------------------------
# Structure constants derived from the basis relations
# ---------------------------------------------------------------------------


def _independent(a: int, b: int, c: int) -> bool:
    """Linear independence of three masks over F2."""
    return a != 0 and b != 0 and c != 0 and a != b and a != c and b != c and (a ^ b) != c


def derive_structure_constants() -> dict[tuple[int, int], Fraction]:
    """Solve for c(a, b) with e_a e_b = c(a, b) e_{a^b} from the basis rules.

    Inputs: the generator squares, the definitions of the composite basis
    elements (ij = i*j, ik = i*k, jk = j*k, (ij)k = (ij)*k), anticommutation of
    distinct imaginary basis elements, and (xy)z = -x(yz) for triples outside a
    quaternion subalgebra (associativity for the others).
    """
    c: dict[tuple[int, int], Fraction] = {}
    for a in range(8):
        c[(0, a)] = c[(a, 0)] = Fraction(1)
    c[(1, 1)] = Fraction(ALPHA)
    c[(2, 2)] = Fraction(BETA)
    c[(4, 4)] = Fraction(-1)
    for a, b in ((1, 2), (1, 4), (2, 4), (3, 4)):
        c[(a, b)] = Fraction(1)

    def eps(a, b, d):
        return -1 if _independent(a, b, d) else 1

    changed = True
    while changed and len(c) < 64:
        changed = False
        for a in range(1, 8):
            for b in range(1, 8):
                if a != b and (a, b) in c and (b, a) not in c:
                    c[(b, a)] = -c[(a, b)]
                    changed = True
        # c(a,b) c(a^b,d) = eps c(b,d) c(a,b^d); solve for whichever one is missing
        for a in range(1, 8):
            for b in range(1, 8):
                for d in range(1, 8):
                    keys = [(a, b), (a ^ b, d), (b, d), (a, b ^ d)]
                    missing = [k for k in keys if k not in c]
                    if len(missing) != 1:
                        continue
                    e = eps(a, b, d)
                    k = missing[0]
                    if k == keys[0]:
                        c[k] = e * c[keys[2]] * c[keys[3]] / c[keys[1]]
                    elif k == keys[1]:
                        c[k] = e * c[keys[2]] * c[keys[3]] / c[keys[0]]
                    elif k == keys[2]:
                        c[k] = c[keys[0]] * c[keys[1]] / (e * c[keys[3]])
                    else:
                        c[k] = c[keys[0]] * c[keys[1]] / (e * c[keys[2]])
                    changed = True
    if len(c) != 64:
        raise RuntimeError("basis relations do not determine the structure constants")
    bad = structure_constant_violations(c)
    if bad:
        raise RuntimeError(f"basis relations are inconsistent at {bad[:3]}")
    return c


def structure_constant_violations(c: dict) -> list:
    """Every basis relation that ``c`` fails, as a list of descriptions."""
    bad = []
    for a in range(1, 8):
        if c[(a, a)] != -basis_norm(a):
            bad.append(("square", a))
        for b in range(1, 8):
            if a != b and c[(a, b)] != -c[(b, a)]:
                bad.append(("anticommute", a, b))
            for d in range(1, 8):
                e = -1 if _independent(a, b, d) else 1
                if c[(a, b)] * c[(a ^ b, d)] != e * c[(b, d)] * c[(a, b ^ d)]:
                    bad.append(("associator", a, b, d))
    return bad


STRUCTURE_CONSTANTS = derive_structure_constants()


def table_mul(x: Octonion, y: Octonion, table: dict | None = None) -> Octonion:
    """Product through the structure-constant table."""
    _same_field(x.F, y.F)
    t = STRUCTURE_CONSTANTS if table is None else table
    F = x.F
    out = [F.zero] * 8
    for a, xa in enumerate(x.c):
        if not xa:
            continue
        for b, yb in enumerate(y.c):
            if yb:
                out[a ^ b] = out[a ^ b] + F(t[(a, b)]) * xa * yb
    return Octonion._raw(F, tuple(out))


def table_mismatches(table: dict | None = None, F: Field = QQ) -> list[tuple[str, str]]:
    """Basis pairs on which the table product and the Cayley-Dickson product differ."""
    bad = []
    for a in range(8):
        for b in range(8):
            x, y = Octonion.basis(F, a), Octonion.basis(F, b)
            if table_mul(x, y, table) != mul(x, y):
                bad.append((BASIS_NAMES[a], BASIS_NAMES[b]))
    return bad


def corrupted_table(a: int = 1, b: int = 2) -> dict:
    """A copy of the structure table with the sign of e_a e_b flipped (fault injection)."""
    t = dict(STRUCTURE_CONSTANTS)
    t[(a, b)] = -t[(a, b)]
    return t


# ---------------------------------------------------------------------------
# Alternative quaternion decompositions
# ---------------------------------------------------------------------------


def _solve_coords(F: Field, images: list[Octonion], target: Octonion) -> list | None:
    from .linalg import Matrix, inverse

    M = Matrix(F, [list(col) for col in zip(*[im.c for im in images])])
    try:
        inv = inverse(M)
    except ZeroDivisionError:
        return None
    return list(inv.apply(target.c))


def decomposition_check(jp: Octonion, ell: Octonion, F: Field = QQ) -> bool:
    """Check O = H' + H' ell is a Cayley-Dickson double, H' = Span(1, i, j', i j').

    Requires H' to be closed under multiplication and every product of basis
    pairs (u1 + v1 ell)(u2 + v2 ell) to equal
    (u1 u2 - conj(v2) v1) + (v2 u1 + v1 conj(u2)) ell.
    """
    one = Octonion.scalar(F, 1)
    i = Octonion.basis(F, 1)
    hbasis = [one, i, jp, mul(i, jp)]
    full = hbasis + [mul(h, ell) for h in hbasis]
    # closure of H'
    for x in hbasis:
        for y in hbasis:
            coords = _solve_coords(F, full, mul(x, y))
            if coords is None or any(coords[4:]):
                return False
    if mul(ell, ell) != Octonion.scalar(F, -1):
        return False
    if any(polar(ell, h) for h in hbasis):
        return False
    zero = Octonion(F, [0] * 8)

    def embed(u: Octonion, v: Octonion) -> Octonion:
        return u + mul(v, ell)

    pairs = [(h, zero) for h in hbasis] + [(zero, h) for h in hbasis]
    for u1, v1 in pairs:
        for u2, v2 in pairs:
            lhs = mul(embed(u1, v1), embed(u2, v2))
            rhs = embed(mul(u1, u2) - mul(conj(v2), v1), mul(v2, u1) + mul(v1, conj(u2)))
            if lhs != rhs:
                return False
    return True


def alternative_decompositions_check(F: Field = QQ) -> dict[str, bool]:
    """The standard decomposition and the two alternatives built on i."""
    j = Octonion.basis(F, 2)
    k = Octonion.basis(F, 4)
    jk = Octonion.basis(F, 6)
    return {
        "Span(1,i,j,ij)": decomposition_check(j, k, F),
        "Span(1,i,k,ik)": decomposition_check(k, j, F),
        "Span(1,i,jk,i(jk))": decomposition_check(jk, k, F),
    }
