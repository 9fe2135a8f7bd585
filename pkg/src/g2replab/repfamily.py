"""The explicit family of representations of the modular group into G2.

A point is given by three unit pairs (a1, a2), (b1, b2), (c1, c2) whose plane
rotations multiply to the identity, and an angle part: either the
reparameterized (w1, x1, y1) on the paraboloid w1^2 + 3 x1^2 + y1^2 = y1, or
the full (w, x, y, z) on w^2 + 3x^2 + y^2 + 3z^2 = 1.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from .g2core import CharPolyG2, G2Element, certify, char_poly_g2
from .linalg import Matrix, kron_commutant_system, rank
from .moduli import ConstraintViolation
from .scalar import GF, QQ, Field, FieldError, field_spec, make_field, parse_fraction


class OutsideChart(ZeroDivisionError):
    """a1 b1 c1 = 0: the point has no (t, u) coordinates."""


class SchemaError(ValueError):
    def __init__(self, pointer: str, msg: str):
        super().__init__(f"{pointer}: {msg}")
        self.pointer = pointer


# ---------------------------------------------------------------------------
# Parameter points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParamPoint:
    F: Field
    a: tuple
    b: tuple
    c: tuple
    form: str          # "repar" or "full"
    angle: tuple       # (w1, x1, y1) or (w, x, y, z)

    @property
    def pairs(self) -> tuple:
        return (self.a, self.b, self.c)

    @property
    def repar(self) -> tuple:
        """(w1, x1, y1); for full points via w1 = wy-3xz, x1 = xy+wz, y1 = y^2+3z^2."""
        if self.form == "repar":
            return self.angle
        w, x, y, z = self.angle
        return (w * y - 3 * x * z, x * y + w * z, y * y + 3 * z * z)

    @property
    def full(self) -> tuple | None:
        """(w, x, y, z) if available; repar points lift with z = 0 when y1 is a nonzero square."""
        if self.form == "full":
            return self.angle
        w1, x1, y1 = self.angle
        if not y1:
            return None
        y = self.F.sqrt(y1)
        if y is None:
            return None
        return (w1 / y, x1 / y, y, self.F.zero)

    def with_angle(self, form: str, angle: Sequence) -> "ParamPoint":
        return make_param(self.a, self.b, self.c, F=self.F, **{form: angle})

    def with_pairs(self, a, b, c) -> "ParamPoint":
        return make_param(a, b, c, F=self.F, **{self.form: self.angle})

    def to_repar(self) -> "ParamPoint":
        return self if self.form == "repar" else self.with_angle("repar", self.repar)

    def to_json(self) -> dict:
        fmt = self.F.format
        return {
            "a": [fmt(v) for v in self.a],
            "b": [fmt(v) for v in self.b],
            "c": [fmt(v) for v in self.c],
            "angle": {self.form: [fmt(v) for v in self.angle]},
            "field": field_spec(self.F),
        }

    def coords_strings(self) -> list[str]:
        fmt = self.F.format
        return [fmt(v) for v in (*self.a, *self.b, *self.c, *self.angle)]


def _rot_product(p, q):
    # (p1 + i p2)(q1 + i q2) as plane rotations
    return (p[0] * q[0] - p[1] * q[1], p[0] * q[1] + p[1] * q[0])


def check_constraints(F: Field, a, b, c, form: str, angle) -> None:
    for name, pr in (("a", a), ("b", b), ("c", c)):
        if pr[0] * pr[0] + pr[1] * pr[1] != F.one:
            raise ConstraintViolation(f"unit circle: {name}1^2+{name}2^2 != 1")
    if _rot_product(_rot_product(a, b), c) != (F.one, F.zero):
        raise ConstraintViolation("rotation product R(a)R(b)R(c) != I")
    if form == "repar":
        w1, x1, y1 = angle
        if w1 * w1 + 3 * x1 * x1 + y1 * y1 != y1:
            raise ConstraintViolation("paraboloid: w1^2+3x1^2+y1^2 != y1")
    elif form == "full":
        w, x, y, z = angle
        if w * w + 3 * x * x + y * y + 3 * z * z != F.one:
            raise ConstraintViolation("sphere: w^2+3x^2+y^2+3z^2 != 1")
    else:
        raise ValueError(f"unknown angle form {form!r}")


def make_param(a: Sequence, b: Sequence, c: Sequence, repar: Sequence | None = None,
               full: Sequence | None = None, F: Field = QQ) -> ParamPoint:
    if (repar is None) == (full is None):
        raise ValueError("give exactly one of repar=(w1,x1,y1) or full=(w,x,y,z)")
    form, angle = ("repar", repar) if repar is not None else ("full", full)
    if len(angle) != (3 if form == "repar" else 4):
        raise ValueError(f"{form} angle has the wrong length")
    a, b, c = (tuple(F(v) for v in pr) for pr in (a, b, c))
    if any(len(pr) != 2 for pr in (a, b, c)):
        raise ValueError("each of a, b, c is a pair")
    angle = tuple(F(v) for v in angle)
    check_constraints(F, a, b, c, form, angle)
    return ParamPoint(F, a, b, c, form, angle)


def third_pair(a, b):
    """The pair c forced by the rotation constraint: the inverse rotation of a*b."""
    r = _rot_product(a, b)
    return (r[0], -r[1])


def circle_points(F: Field) -> list[tuple]:
    p = F.p
    return [(F(u), F(v)) for u in range(p) for v in range(p) if (u * u + v * v - 1) % p == 0]


def paraboloid_points(F: Field) -> list[tuple]:
    p = F.p
    return [(F(w), F(x), F(y)) for w in range(p) for x in range(p) for y in range(p)
            if (w * w + 3 * x * x + y * y - y) % p == 0]


def count_params(p: int) -> int:
    F = GF(p)
    return len(circle_points(F)) ** 2 * len(paraboloid_points(F))


def enumerate_params(p: int, limit: int | None = None, start: int = 0, step: int = 1) -> Iterator[ParamPoint]:
    """Deterministic stream over F_p: circle x circle x paraboloid, lexicographic.

    ``start``/``step`` select a residue class of the stream index, which is how
    parallel scans partition the work.
    """
    if p < 5:
        raise FieldError("need p >= 5")
    F = GF(p)
    circ = circle_points(F)
    par = paraboloid_points(F)
    n = 0
    for idx, (a, b, ang) in enumerate(itertools.product(circ, circ, par)):
        if limit is not None and idx >= limit:
            return
        if idx % step != start:
            continue
        c = third_pair(a, b)
        yield ParamPoint(F, a, b, c, "repar", ang)
        n += 1


def sample_params(F: Field, rng, form: str = "repar") -> ParamPoint:
    """A random valid point; over QQ via rational parameterizations."""
    if F is QQ:
        def circ():
            m = F.random_element(rng)
            return ((1 - m * m) / (1 + m * m), 2 * m / (1 + m * m))

        def sphere(k):
            # rational points of w^2+3x^2+y^2(+3z^2) = 1 through (1, 0, ...)
            ms = [F.random_element(rng) for _ in range(k - 1)]
            ws = [1, 3, 1, 3][1:k]
            tau = F(2) / (1 + sum(wt * m * m for wt, m in zip(ws, ms)))
            return (1 - tau, *(m * tau for m in ms))
        a, b = circ(), circ()
        if form == "full":
            return make_param(a, b, third_pair(a, b), full=sphere(4), F=F)
        W, X, Y = sphere(3)
        return make_param(a, b, third_pair(a, b), repar=(W / 2, X / 2, (Y + 1) / 2), F=F)
    circ = circle_points(F)
    a, b = rng.choice(circ), rng.choice(circ)
    if form == "full":
        p = F.p
        while True:
            w, x, y = (F.random_element(rng) for _ in range(3))
            r = (1 - w * w - 3 * x * x - y * y) / 3
            z = F.sqrt(r)
            if z is not None:
                return make_param(a, b, third_pair(a, b), full=(w, x, y, z), F=F)
    return make_param(a, b, third_pair(a, b), repar=rng.choice(paraboloid_points(F)), F=F)


# ---------------------------------------------------------------------------
# The representation
# ---------------------------------------------------------------------------


def phi_S_matrix(pt: ParamPoint) -> Matrix:
    F = pt.F
    (a1, a2), (b1, b2), (c1, c2) = pt.pairs
    z = F.zero
    rows = [[z] * 7 for _ in range(7)]
    for k, (p1, p2) in enumerate(((a1, a2), (b1, b2), (c1, c2))):
        d = p1 * p1 - p2 * p2
        rows[k][k] = d
        rows[4 + k][4 + k] = -d
        rows[k][4 + k] = rows[4 + k][k] = 2 * p1 * p2
    rows[3][3] = -F.one
    return Matrix(F, rows)


def _r_block(F: Field, e, xx, ww) -> list[list]:
    """Lower 4x4 block of phi(R) with e = 1-2y1, xx = x1, ww = w1."""
    h = F(1) / 2
    return [
        [-h, -3 * h * e, -3 * xx, 3 * ww],
        [h * e, -h, ww, 3 * xx],
        [3 * xx, -3 * ww, -h, -3 * h * e],
        [-ww, -3 * xx, h * e, -h],
    ]


def _r_matrix(F: Field, block) -> Matrix:
    rows = [[F.one if i == j else F.zero for j in range(7)] for i in range(3)]
    rows += [[F.zero] * 3 + list(r) for r in block]
    return Matrix(F, rows)


def phi_R_matrix(pt: ParamPoint) -> Matrix:
    F = pt.F
    if pt.form == "repar":
        w1, x1, y1 = pt.angle
        return _r_matrix(F, _r_block(F, 1 - 2 * y1, x1, w1))
    w, x, y, z = pt.angle
    e = w * w + 3 * x * x - y * y - 3 * z * z
    return _r_matrix(F, _r_block(F, e, x * y + w * z, w * y - 3 * x * z))


def phi(pt: ParamPoint) -> tuple[G2Element, G2Element]:
    """(phi(S), phi(R)), both certified as elements of G2."""
    S = certify(phi_S_matrix(pt))
    R = certify(phi_R_matrix(pt))
    return S, R


_TOKEN = re.compile(r"\s*(R\^-1|R⁻¹|R'|r|S|R|T)")


def parse_word(word) -> list[str]:
    """Tokens over S, R, R^-1 (and T = S R).  Accepts a string or a sequence."""
    if not isinstance(word, str):
        return list(word)
    toks, pos = [], 0
    word = word.strip()
    while pos < len(word):
        m = _TOKEN.match(word, pos)
        if not m:
            raise ValueError(f"bad word at {word[pos:]!r}")
        t = m.group(1)
        toks.append("R^-1" if t in ("R⁻¹", "R'", "r") else t)
        pos = m.end()
        while pos < len(word) and word[pos].isspace():
            pos += 1
    return toks


def evaluate_word(pt: ParamPoint, word, images=None) -> Matrix:
    S, R = images if images is not None else phi(pt)
    S, R = S.matrix, R.matrix
    mats = {"S": S, "R": R, "R^-1": R @ R, "T": S @ R}
    out = Matrix.identity(pt.F, 7)
    for t in parse_word(word):
        out = out @ mats[t]
    return out


def phi_T(pt: ParamPoint, images=None) -> Matrix:
    return evaluate_word(pt, "T", images)


def g1_formula(pt: ParamPoint):
    return 3 * (pt.a[1] ** 2 + pt.b[1] ** 2 + pt.c[1] ** 2) - 5


def char_poly_T(pt: ParamPoint, images=None) -> CharPolyG2:
    cp = char_poly_g2(phi_T(pt, images))
    if cp.g1 != g1_formula(pt):
        raise AssertionError(f"u1 = {cp.g1} disagrees with 3(a2^2+b2^2+c2^2)-5 = {g1_formula(pt)}")
    return cp


def rep_invariants(pt: ParamPoint) -> tuple:
    (a1, a2), (b1, b2), (c1, c2) = pt.pairs
    den = a1 * b1 * c1
    if not den:
        raise OutsideChart("outside the chart: a1 b1 c1 = 0")
    t = -3 * ((a2 * b1 * c1) ** 2 + (a1 * b2 * c1) ** 2 + (a1 * b1 * c2) ** 2) / (den * den)
    u = -3 * (a2 * b2 * c1 + a2 * b1 * c2 + a1 * b2 * c2) / den
    return t, u


def slice_coordinates(pt: ParamPoint) -> tuple:
    """(a, b, c) = (a2/a1, b2/b1, c2/c1) on the common domain with the chart."""
    (a1, a2), (b1, b2), (c1, c2) = pt.pairs
    if not (a1 * b1 * c1):
        raise OutsideChart("outside the chart: a1 b1 c1 = 0")
    return a2 / a1, b2 / b1, c2 / c1


def equivalent(p1: ParamPoint, p2: ParamPoint) -> bool:
    """Same (t, u), same y1, and (w1, x1) equal up to one global sign."""
    r1, r2 = p1.repar, p2.repar
    if rep_invariants(p1) != rep_invariants(p2) or r1[2] != r2[2]:
        return False
    (w, x), (w2, x2) = r1[:2], r2[:2]
    return (w, x) == (w2, x2) or (w, x) == (-w2, -x2)


# ---------------------------------------------------------------------------
# The 48 cover symmetries
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoverSymmetry:
    """Pair permutation, then joint pair negations, then optional negation of all second entries.

    As a signed permutation of (a1, a2, b1, b2, c1, c2) it is stored in
    ``signed``: output coordinate k is ``sign * input[src]``.
    """

    signed: tuple  # six (src, sign) entries

    @classmethod
    def build(cls, perm: Sequence[int], pair_signs: Sequence[int], conj: bool) -> "CoverSymmetry":
        out = []
        for k in range(3):
            src = perm[k]
            s = pair_signs[k]
            out.append((2 * src, s))
            out.append((2 * src + 1, -s if conj else s))
        return cls(tuple(out))

    def apply_coords(self, v: Sequence) -> tuple:
        return tuple(s * v[src] for src, s in self.signed)

    def __call__(self, pt: ParamPoint) -> ParamPoint:
        v = self.apply_coords((*pt.a, *pt.b, *pt.c))
        return pt.with_pairs(v[0:2], v[2:4], v[4:6])

    def __matmul__(self, other: "CoverSymmetry") -> "CoverSymmetry":
        # (self @ other)(v) = self(other(v))
        return CoverSymmetry(tuple((other.signed[src][0], s * other.signed[src][1]) for src, s in self.signed))

    def is_identity(self) -> bool:
        return all(src == k and s == 1 for k, (src, s) in enumerate(self.signed))


PAIR_SIGNS = ((1, 1, 1), (-1, -1, 1), (-1, 1, -1), (1, -1, -1))


def cover_symmetries() -> list[CoverSymmetry]:
    out = []
    for perm in itertools.permutations(range(3)):
        for signs in PAIR_SIGNS:
            for conj in (False, True):
                out.append(CoverSymmetry.build(perm, signs, conj))
    return out


def symmetry_closure(syms: Sequence[CoverSymmetry]) -> set:
    seen = set(syms)
    frontier = list(syms)
    while frontier:
        nxt = []
        for x in frontier:
            for g in syms:
                y = x @ g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


# ---------------------------------------------------------------------------
# Outer automorphism, commutant, indecomposability
# ---------------------------------------------------------------------------


class OuterCheckFailed(AssertionError):
    pass


def apply_outer(pt: ParamPoint, verify: bool = True) -> ParamPoint:
    """(w1, x1, y1) -> (-w1, -x1, 1-y1); checks phi_new(R) = phi_old(R)^2 and phi(S) fixed."""
    pt = pt.to_repar()
    w1, x1, y1 = pt.angle
    new = pt.with_angle("repar", (-w1, -x1, 1 - y1))
    if verify:
        R_old, R_new = phi_R_matrix(pt), phi_R_matrix(new)
        if R_new != R_old @ R_old:
            raise OuterCheckFailed("phi_new(R) != phi_old(R)^2")
        if phi_S_matrix(new) != phi_S_matrix(pt):
            raise OuterCheckFailed("phi(S) changed")
    return new


def commutant_dimension(pt: ParamPoint, images=None) -> int:
    S, R = images if images is not None else phi(pt)
    sys = kron_commutant_system(pt.F, [S.matrix, R.matrix])  # 98 x 49
    return 49 - rank(sys)


def prop_angle_quantities(pt: ParamPoint) -> tuple:
    """(wy-3xz, xy+wz, w^2+3x^2-y^2-3z^2); on repar points these are (w1, x1, 1-2 y1)."""
    if pt.form == "full":
        w, x, y, z = pt.angle
        return (w * y - 3 * x * z, x * y + w * z, w * w + 3 * x * x - y * y - 3 * z * z)
    w1, x1, y1 = pt.angle
    return (w1, x1, 1 - 2 * y1)


def indecomposability_conditions(pt: ParamPoint) -> dict[int, bool]:
    """Truth value of each of the four sufficient conditions."""
    (a1, a2), (b1, b2), (c1, c2) = pt.pairs
    F = pt.F
    half = F(1) / 2
    c1_ok = bool(a1 * a2 * b1 * b2 * c1 * c2)
    bad = False
    for aj in (a1, a2):
        for other in (b1, b2, c1, c2):
            if aj == other or aj == -other:
                bad = True
    for bj in (b1, b2):
        for other in (c1, c2):
            if bj == other or bj == -other:
                bad = True
    c3_ok = all(v * v != half for v in (a1, b1, c1))
    c4_ok = sum(1 for q in prop_angle_quantities(pt) if not q) <= 1
    return {1: c1_ok, 2: not bad, 3: c3_ok, 4: c4_ok}


def indecomposable_by_conditions(pt: ParamPoint) -> bool:
    return all(indecomposability_conditions(pt).values())


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def _parse_scalar(F: Field, text, pointer: str):
    if not isinstance(text, str):
        raise SchemaError(pointer, "numbers must be exact strings such as \"3/5\"")
    try:
        q = parse_fraction(text)
        return F(q)
    except (ValueError, ZeroDivisionError, FieldError) as exc:
        raise SchemaError(pointer, f"not an exact scalar: {text!r} ({exc})") from None


def param_from_json(obj: dict, F: Field | None = None) -> ParamPoint:
    if not isinstance(obj, dict):
        raise SchemaError("/", "expected an object")
    try:
        Fj = make_field(obj.get("field", "rational"))
    except (FieldError, ValueError, TypeError) as exc:
        raise SchemaError("/field", str(exc)) from None
    F = Fj if F is None else F
    pairs = []
    for key in ("a", "b", "c"):
        v = obj.get(key)
        if not isinstance(v, list) or len(v) != 2:
            raise SchemaError(f"/{key}", "expected a list of two exact strings")
        pairs.append(tuple(_parse_scalar(F, s, f"/{key}/{i}") for i, s in enumerate(v)))
    ang = obj.get("angle")
    if not isinstance(ang, dict) or len(ang) != 1 or next(iter(ang)) not in ("repar", "full"):
        raise SchemaError("/angle", "expected {\"repar\": [w1,x1,y1]} or {\"full\": [w,x,y,z]}")
    form, vals = next(iter(ang.items()))
    n = 3 if form == "repar" else 4
    if not isinstance(vals, list) or len(vals) != n:
        raise SchemaError(f"/angle/{form}", f"expected a list of {n} exact strings")
    angle = tuple(_parse_scalar(F, s, f"/angle/{form}/{i}") for i, s in enumerate(vals))
    extra = set(obj) - {"a", "b", "c", "angle", "field"}
    if extra:
        raise SchemaError("/" + sorted(extra)[0], "unknown key")
    return make_param(*pairs, F=F, **{form: angle})
