"""G2 as 7x7 matrices on the trace-zero octonions.

Matrices act on coordinate columns in the ordered basis
(i, j, ij, k, ik, jk, (ij)k).  A matrix is certified as a G2 element when,
extended by 1 -> 1, it preserves the product of every ordered pair of basis
vectors (squares included) and the norm form.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import Matrix, charpoly, det
from .octonion import IMAG_NAMES, STRUCTURE_CONSTANTS, Octonion, Quaternion, basis_norm, mul
from .scalar import QQ, Field, PrimeField


class NotG2Error(ValueError):
    """Raised when a matrix expected to lie in G2 does not."""


class NotG2Shape(ValueError):
    """Raised when a characteristic polynomial lacks the G2 palindromic shape."""


class _Overflow:
    __slots__ = ()

    def __repr__(self) -> str:
        return "Overflow"

    def __bool__(self) -> bool:
        return False


#: returned by :func:`group_closure` and :func:`element_order` past the cap
Overflow = _Overflow()


# ---------------------------------------------------------------------------
# Membership
# ---------------------------------------------------------------------------


def _apply_ext(m: Matrix, x: Octonion) -> Octonion:
    """Extend the 𝕆₀ map ``m`` to 𝕆 by fixing 1."""
    return Octonion._raw(m.F, (x.c[0],) + m.apply(x.c[1:]))


def g2_violations(m: Matrix, limit: int | None = None) -> list[tuple[str, str]]:
    """Ordered basis pairs (e_a, e_b) with m(e_a e_b) != m(e_a) m(e_b)."""
    if m.shape != (7, 7):
        raise ValueError("G2 matrices are 7x7")
    if isinstance(m.F, PrimeField):
        return _g2_violations_mod_p(m, limit)
    return _g2_violations_generic(m, limit)


def _g2_violations_generic(m: Matrix, limit: int | None) -> list[tuple[str, str]]:
    F = m.F
    images = [Octonion._raw(F, (F.zero,) + m.column(a)) for a in range(7)]
    bad = []
    for a in range(7):
        ea = Octonion.basis(F, a + 1)
        for b in range(7):
            eb = Octonion.basis(F, b + 1)
            if _apply_ext(m, mul(ea, eb)) != mul(images[a], images[b]):
                bad.append((IMAG_NAMES[a], IMAG_NAMES[b]))
                if limit is not None and len(bad) >= limit:
                    return bad
    return bad


@lru_cache(maxsize=None)
def _int_structure_constants(p: int) -> tuple:
    t = STRUCTURE_CONSTANTS
    return tuple(tuple(t[(a, b)].numerator * pow(t[(a, b)].denominator, -1, p) % p for b in range(8))
                 for a in range(8))


def _g2_violations_mod_p(m: Matrix, limit: int | None) -> list[tuple[str, str]]:
    # same test as the generic path, on raw residues through the structure constants
    p = m.F.p
    c = _int_structure_constants(p)
    cols = [[0] + [int(x) for x in m.column(a)] for a in range(7)]
    bad = []
    for a in range(1, 8):
        x = cols[a - 1]
        for b in range(1, 8):
            y = cols[b - 1]
            lhs = [0] * 8
            k = c[a][b]
            if a == b:
                lhs[0] = k
            else:
                lhs[1:] = [k * v for v in cols[(a ^ b) - 1][1:]]
            rhs = [0] * 8
            for s_, xs in enumerate(x):
                if xs:
                    row = c[s_]
                    for t_, yt in enumerate(y):
                        if yt:
                            rhs[s_ ^ t_] += row[t_] * xs * yt
            if any((u - v) % p for u, v in zip(lhs, rhs)):
                bad.append((IMAG_NAMES[a - 1], IMAG_NAMES[b - 1]))
                if limit is not None and len(bad) >= limit:
                    return bad
    return bad


def preserves_norm(m: Matrix) -> bool:
    """m^T G m == G for the diagonal Gram matrix G of the norm on 𝕆₀."""
    F = m.F
    G = Matrix.diag(F, [basis_norm(a) for a in range(1, 8)])
    return m.transpose() @ G @ m == G


def is_g2_element(m: Matrix) -> bool:
    if m.shape != (7, 7):
        return False
    return not g2_violations(m, limit=1) and preserves_norm(m)


@dataclass(frozen=True)
class G2Element:
    """A 7x7 matrix together with the result of the membership check."""

    matrix: Matrix
    certificate: bool

    @property
    def F(self) -> Field:
        return self.matrix.F

    def __matmul__(self, other: "G2Element") -> "G2Element":
        return G2Element(self.matrix @ other.matrix, self.certificate and other.certificate)

    def __pow__(self, n: int) -> "G2Element":
        return G2Element(self.matrix ** n, self.certificate)


def certify(m: Matrix) -> G2Element:
    bad = g2_violations(m, limit=3)
    if bad:
        raise NotG2Error(f"product not preserved on basis pairs {bad}")
    if not preserves_norm(m):
        raise NotG2Error("norm form not preserved")
    return G2Element(m, True)


# ---------------------------------------------------------------------------
# The SO_H subgroup and its pieces
# ---------------------------------------------------------------------------


def phi_h(h: Quaternion) -> Matrix:
    """Action u -> h u conj(h) on the imaginary quaternions, basis (i, j, ij)."""
    a, b, c, d = h.c
    return Matrix(h.F, [
        [a * a + 3 * b * b - c * c - 3 * d * d, -2 * a * d + 2 * b * c, 2 * a * c + 6 * b * d],
        [6 * a * d + 6 * b * c, a * a - 3 * b * b + c * c - 3 * d * d, -6 * a * b + 6 * c * d],
        [-2 * a * c + 6 * b * d, 2 * a * b + 2 * c * d, a * a - 3 * b * b - c * c + 3 * d * d],
    ])


def right_conj_matrix(h: Quaternion) -> Matrix:
    """Action v -> v conj(h) on the quaternions, basis (k, ik, jk, (ij)k)."""
    a, b, c, d = h.c
    return Matrix(h.F, [
        [a, 3 * b, c, 3 * d],
        [-b, a, -d, c],
        [-c, 3 * d, a, -3 * b],
        [-d, -c, b, a],
    ])


def left_mult_matrix(h: Quaternion) -> Matrix:
    """Action v -> h v on the quaternions, basis (k, ik, jk, (ij)k)."""
    e, f, g, hh = h.c
    return Matrix(h.F, [
        [e, -3 * f, -g, -3 * hh],
        [f, e, -hh, g],
        [g, 3 * hh, e, -3 * f],
        [hh, -g, f, e],
    ])


def so_h_blocks(h1: Quaternion, h2: Quaternion) -> tuple[Matrix, Matrix]:
    """The (i, j, ij) block and the (k, ..., (ij)k) block of (h1, h2)."""
    return phi_h(h1), left_mult_matrix(h2) @ right_conj_matrix(h1)


def block_diag(A: Matrix, B: Matrix) -> Matrix:
    F = A.F
    n, m = A.nrows, B.nrows
    rows = [list(r) + [F.zero] * m for r in A.rows] + [[F.zero] * n + list(r) for r in B.rows]
    return Matrix(F, rows)


def _require_unit(h: Quaternion, name: str):
    if h.norm() != h.F.one:
        raise ValueError(f"{name} must have norm 1, got {h.F.format(h.norm())}")


def so_h_embed(h1: Quaternion, h2: Quaternion) -> G2Element:
    """The element (u, v) -> (h1 u conj(h1), h2 v conj(h1)) of SO_H."""
    _require_unit(h1, "h1")
    _require_unit(h2, "h2")
    A, B = so_h_blocks(h1, h2)
    return certify(block_diag(A, B))


def torus_matrix(F: Field, a, b, c, d) -> Matrix:
    """The displayed maximal torus element for (a + b i, c + d i)."""
    a, b, c, d = F(a), F(b), F(c), F(d)
    z = F.zero
    return Matrix(F, [
        [1, z, z, z, z, z, z],
        [z, a * a - 3 * b * b, -6 * a * b, z, z, z, z],
        [z, 2 * a * b, a * a - 3 * b * b, z, z, z, z],
        [z, z, z, a * c + 3 * b * d, 3 * b * c - 3 * a * d, z, z],
        [z, z, z, a * d - b * c, a * c + 3 * b * d, z, z],
        [z, z, z, z, z, a * c - 3 * b * d, -3 * a * d - 3 * b * c],
        [z, z, z, z, z, a * d + b * c, a * c - 3 * b * d],
    ])


def torus_embed(a, b, c, d, F: Field = QQ) -> G2Element:
    a, b, c, d = F(a), F(b), F(c), F(d)
    if a * a + 3 * b * b != F.one or c * c + 3 * d * d != F.one:
        raise ValueError("torus parameters need a^2+3b^2 = c^2+3d^2 = 1")
    return certify(torus_matrix(F, a, b, c, d))


def gl2_short(h1: Quaternion, u: Sequence) -> G2Element:
    """Image of (h1, u) in H1 x U1, u = (e, f) meaning e + f i."""
    return so_h_embed(h1, Quaternion(h1.F, (u[0], u[1], 0, 0)))


def gl2_long(u: Sequence, h2: Quaternion) -> G2Element:
    """Image of (u, h2) in U1 x H1."""
    return so_h_embed(Quaternion(h2.F, (u[0], u[1], 0, 0)), h2)


def fixes_i(m: Matrix) -> bool:
    """Membership test for the A2 subgroup SU_M: the automorphisms fixing i."""
    F = m.F
    return m.column(0) == (F.one,) + (F.zero,) * 6


# ---------------------------------------------------------------------------
# Distinguished elements
# ---------------------------------------------------------------------------


def alpha2(F: Field = QQ) -> G2Element:
    return certify(Matrix.diag(F, [1, 1, 1, -1, -1, -1, -1]))


def alpha3(F: Field = QQ) -> G2Element:
    half = F(Fraction(1, 2))
    return torus_embed(1, 0, -half, half, F)


def alpha3_prime(F: Field = QQ) -> G2Element:
    half = F(Fraction(1, 2))
    return torus_embed(-half, half, 1, 0, F)


def standard_elements(F: Field = QQ) -> dict[str, G2Element]:
    return {"alpha2": alpha2(F), "alpha3": alpha3(F), "alpha3'": alpha3_prime(F)}


# ---------------------------------------------------------------------------
# Weyl group representatives
# ---------------------------------------------------------------------------

# images of i, j, k and the expected image of jk, as (sign, basis name)
WEYL_MAPS = (
    {"i": (1, "i"), "j": (1, "j"), "k": (1, "jk"), "jk": (-1, "k")},
    {"i": (1, "i"), "j": (1, "jk"), "k": (1, "k"), "jk": (-1, "j")},
    {"i": (1, "i"), "j": (1, "k"), "k": (1, "j"), "jk": (-1, "jk")},
    {"i": (1, "i"), "j": (1, "k"), "k": (1, "jk"), "jk": (1, "j")},
    {"i": (1, "i"), "j": (1, "jk"), "k": (1, "j"), "jk": (1, "k")},
)
OUTER_MAP = {"i": (-1, "i"), "j": (1, "j"), "k": (1, "k"), "jk": (1, "jk")}


def _signed_basis(F: Field, sb: tuple[int, str]) -> Octonion:
    s, name = sb
    return Octonion.basis(F, IMAG_NAMES.index(name) + 1).scale(s)


def matrix_from_generators(F: Field, gi: Octonion, gj: Octonion, gk: Octonion) -> Matrix:
    """The linear map on 𝕆₀ sending i, j, k to the given octonions multiplicatively."""
    gij = mul(gi, gj)
    cols = [gi, gj, gij, gk, mul(gi, gk), mul(gj, gk), mul(gij, gk)]
    return Matrix.from_columns(F, [c.c[1:] for c in cols])


def weyl_map(spec: dict, F: Field = QQ) -> G2Element:
    gi, gj, gk = (_signed_basis(F, spec[x]) for x in ("i", "j", "k"))
    m = matrix_from_generators(F, gi, gj, gk)
    expected = _signed_basis(F, spec["jk"]).c[1:]
    if m.column(5) != expected:
        raise NotG2Error(f"jk is sent to {m.column(5)}, expected {spec['jk']}")
    return certify(m)


def weyl_representatives(F: Field = QQ) -> list[G2Element]:
    """The five S3 representatives followed by the outer map i -> -i."""
    return [weyl_map(s, F) for s in WEYL_MAPS] + [weyl_map(OUTER_MAP, F)]


# ---------------------------------------------------------------------------
# Orders, closures, characteristic polynomials
# ---------------------------------------------------------------------------


def _as_matrix(g) -> Matrix:
    return g.matrix if isinstance(g, G2Element) else g


def group_closure(gens: Iterable, cap: int):
    """Order of the group generated by ``gens`` if at most ``cap``, else Overflow."""
    gens = [_as_matrix(g) for g in gens]
    if not gens:
        return 1
    n = gens[0].nrows
    ident = Matrix.identity(gens[0].F, n)
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x @ g
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    return Overflow
                queue.append(y)
    return len(seen)


def element_order(g, cap: int):
    """Least n <= cap with g^n = 1, else Overflow."""
    m = _as_matrix(g)
    x = m
    for n in range(1, cap + 1):
        if x.is_identity():
            return n
        x = x @ m
    return Overflow


@dataclass(frozen=True)
class CharPolyG2:
    """X^7 + g1 X^6 + g2 X^5 + g3 X^4 - g3 X^3 - g2 X^2 - g1 X - 1."""

    g1: object
    g2: object
    g3: object

    @property
    def u1(self):
        return self.g1

    @property
    def u2(self):
        return self.g2

    def coefficients_high(self) -> list:
        """All eight coefficients, highest degree first."""
        one = self.g1 - self.g1 + 1
        return [one, self.g1, self.g2, self.g3, -self.g3, -self.g2, -self.g1, -one]

    def relation_residual(self):
        return self.g3 - (self.g1 + self.g2 - self.g1 * self.g1)


def char_poly_g2(g) -> CharPolyG2:
    m = _as_matrix(g)
    c = charpoly(m)  # low degree first
    g1, g2, g3 = c[6], c[5], c[4]
    F = m.F
    if not (c[7] == F.one and c[3] == -g3 and c[2] == -g2 and c[1] == -g1 and c[0] == -F.one):
        raise NotG2Shape(f"characteristic polynomial {[F.format(x) for x in reversed(c)]} lacks the G2 shape")
    cp = CharPolyG2(g1, g2, g3)
    if cp.relation_residual():
        raise NotG2Shape("g3 != g1 + g2 - g1^2")
    return cp


def trace(g):
    return _as_matrix(g).trace()


def determinant(g):
    return det(_as_matrix(g))
