"""Obstructions to surjectivity onto G2(F_p) and an independent witness.

The conditions are evaluated literally.  The witness does not consult them:
it searches for small invariant subspaces by spinning kernel vectors and
looks for elements whose characteristic polynomial or order escapes the
remaining maximal subgroups.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .g2core import CharPolyG2, Overflow, char_poly_g2, element_order
from .linalg import Matrix, charpoly, nullspace, row_space_basis
from .poly import Poly, poly_gcd
from .repfamily import ParamPoint, char_poly_T, evaluate_word, phi
from .scalar import QQ, Field, PrimeField, field_of, minpoly_roots_mod_p
from .tables import ALPHA_MINPOLY, SQRT13_MINPOLY, bounded_tables, reduced_table_polys

BLOCKED, CLEAR, NA = "Blocked", "Clear", "NotApplicable"

CLASSES = (
    "SU_M", "SO_H", "parabolic_long", "parabolic_short", "PGL2",
    "2^3.L3(2)", "L2(8)", "L2(13)", "U3(3):2", "J1", "subfield",
)


# ---------------------------------------------------------------------------
# Individual conditions
# ---------------------------------------------------------------------------


def su_condition(pt: ParamPoint) -> str:
    (a1, a2), (b1, b2), (c1, c2) = pt.pairs
    return BLOCKED if not (a1 * a2 * b1 * b2 * c1 * c2) else CLEAR


def common_fixed_vector(pt: ParamPoint):
    """(vector, eigenvalue) with phi(R) v = v and phi(S) v = +-v, or None.

    When a1a2b1b2c1c2 = 0 the eigenvalue is 1 except in the a1 = 0 case,
    where the shared line has S-eigenvalue -1.
    """
    S, R = (g.matrix for g in phi(pt))
    F = pt.F
    I = Matrix.identity(F, 7)
    for lam in (F.one, -F.one):
        A = (R - I).vstack(S - I.scale(lam))
        ker = nullspace(A)
        if ker:
            return tuple(ker[0]), lam
    return None


def _sqrt3(F: Field):
    return F.sqrt(3)


def soh_components(pt: ParamPoint) -> list[int]:
    """Indices (1..9) of the listed SO_H component ideals containing the point."""
    full = pt.full
    if full is None:
        raise ValueError("the SO_H components need (w, x, y, z); this point has no full form")
    F = pt.F
    w, x, y, z = full
    (a1, a2), (b1, b2), (c1, c2) = pt.pairs
    on = lambda *gens: all(not g for g in gens)  # noqa: E731
    hits = []
    if on(x - z, w + y, 2 * y * y + 6 * z * z - 1):
        hits.append(1)
    if on(x + z, w - y, 2 * y * y + 6 * x * x - 1):
        hits.append(2)
    s3 = _sqrt3(F)
    if s3 is not None:
        if on(s3 * x + y, s3 * z + w, 2 * w * w + 2 * y * y - 1):
            hits.append(3)
        if on(s3 * x - y, s3 * z - w, 2 * w * w + 2 * y * y - 1):
            hits.append(4)
    elif on(y * y - 3 * x * x, w * w - 3 * z * z, y * z - w * x, 2 * w * w + 2 * y * y - 1):
        # squared form of items 3 and 4 together
        hits.append(3)
    if on(w, x, y * y + 3 * z * z - 1):
        hits.append(5)
    if on(y, z, w * w + 3 * x * x - 1):
        hits.append(6)
    if on(a1 - b1, a2 - b2, 3 * x * z - y * w) or on(a1 + b1, a2 + b2, 3 * x * z - y * w):
        hits.append(7)
    # item 8 is used as printed, including its repeated 2w^2 term
    q8 = (2 * w * w + 2 * w * w - 1, 2 * y * y + 6 * z * z - 1)
    if on(b1 - c1, b2 - c2, *q8) or on(b1 + c1, b2 + c2, *q8):
        hits.append(8)
    if on(a1 - c1, a2 - c2, x * y + z * w) or on(a1 + c1, a2 + c2, x * y + z * w):
        hits.append(9)
    return hits


def soh_condition(pt: ParamPoint) -> str:
    return BLOCKED if soh_components(pt) else CLEAR


def parabolic_items(pt: ParamPoint) -> list[int]:
    """Indices (1..7) of the listed parabolic ideal families containing the point."""
    full = pt.full
    if full is None:
        raise ValueError("the parabolic ideals need (w, x, y, z); this point has no full form")
    F = pt.F
    w, x, y, z = full
    (a1, a2), (b1, b2), (c1, c2) = pt.pairs
    on = lambda *gens: all(not g for g in gens)  # noqa: E731

    def ab(*extra):
        return on(a1 - b1, a2 - b2, *extra) or on(a1 + b1, a2 + b2, *extra)

    def ac(*extra):
        return on(a1 - c1, a2 - c2, *extra) or on(a1 + c1, a2 + c2, *extra)

    def bc(*extra):
        return on(b1 - c1, b2 - c2, *extra) or on(b1 + c1, b2 + c2, *extra)

    hits = []
    if ab(2 * w * y - 6 * x * z + 1):
        hits.append(1)
    if ab(2 * w * y - 6 * x * z - 1):
        hits.append(2)
    q = 6 * x * y + 6 * w * z
    s3 = _sqrt3(F)
    if s3 is not None:
        if ac(q + s3):
            hits.append(3)
        if ac(q - s3):
            hits.append(4)
    elif ac(q * q - 3):
        hits.append(3)
    if bc(y * y + 3 * z * z - 1, w * w + 3 * x * x):
        hits.append(5)
    if bc(y * y + 3 * z * z, w * w + 3 * x * x - 1):
        hits.append(6)
    for sb, sc in itertools.product((1, -1), repeat=2):
        if on(a1 - sb * b1, a1 - sc * c1, a2 - sb * b2, a2 - sc * c2):
            hits.append(7)
            break
    return hits


def parabolic_condition(pt: ParamPoint) -> str:
    return BLOCKED if parabolic_items(pt) else CLEAR


def pgl2_quintic(g1, g2):
    return g1 ** 5 - 2 * g1 ** 3 * g2 - g1 ** 3 - g1 ** 2 * g2 + 2 * g1 * g2 ** 2 + g2 ** 3


def pgl2_system(g1, g2, g3) -> tuple:
    """Residuals of the three equations satisfied by a PGL2 spectrum."""
    return (
        g1 * g1 - g1 - g2 + g3,
        g1 * g1 * g2 - g1 * g2 * g2 - g2 ** 3 + 2 * g1 * g1 * g3 - g1 * g3 * g3,
        g2 ** 4 - g1 * g2 * g2 * g3 - g2 ** 3 * g3 + g1 * g2 * g3 * g3 - g1 * g3 ** 3
        - g2 ** 3 + g2 * g2 * g3 + 2 * g2 * g3 * g3 - g3 ** 3,
    )


def pgl2_condition(cp: CharPolyG2) -> bool:
    """True when (g1, g2) lies on the PGL2 hypersurface."""
    return not pgl2_quintic(cp.g1, cp.g2)


def pgl2_spectrum_charpoly(lam, F: Field = QQ) -> CharPolyG2:
    """Char poly with roots 1, lam^{+-1}, lam^{+-2}, lam^{+-3}."""
    lam = F(lam)
    f = Poly(F, [1])
    for r in (F.one, lam, lam ** 2, lam ** 3, 1 / lam, 1 / lam ** 2, 1 / lam ** 3):
        f = f * Poly(F, [-r, 1])
    c = f.c
    return CharPolyG2(c[6], c[5], c[4])


THEOREM_G1_VALUES = (0, 1, -1, 2, -2, -3, -7)
THEOREM_P11_PAIRS = ((1, 8), (10, 9), (8, 1), (4, 1), (1, 10), (0, 0), (6, 9),
                     (2, 6), (4, 10), (6, 3), (3, 2), (7, 10), (9, 5), (4, 7))


def condition6_values(F: Field) -> list:
    """g1 values excluded by condition (6), realised in F."""
    vals = [F(v) for v in THEOREM_G1_VALUES]
    if isinstance(F, PrimeField):
        vals += list(minpoly_roots_mod_p(ALPHA_MINPOLY, F.p))
        half = F(1) / 2
        for r in minpoly_roots_mod_p(SQRT13_MINPOLY, F.p):
            vals.append(half * (r - 1))
    return vals


def finite_subgroup_hits(cp: CharPolyG2, p: int | None) -> list[int]:
    """Which of conditions (6) and (7) the char poly meets."""
    F = field_of(cp.g1)
    hits = []
    if cp.g1 in condition6_values(F):
        hits.append(6)
    if p == 11 and (int(cp.g1), int(cp.g2)) in THEOREM_P11_PAIRS:
        hits.append(7)
    return hits


def finite_subgroup_condition(cp: CharPolyG2, p: int | None) -> str:
    return BLOCKED if finite_subgroup_hits(cp, p) else CLEAR


# ---------------------------------------------------------------------------
# The verdict
# ---------------------------------------------------------------------------


@dataclass
class Verdict:
    status: str
    conditions: list = field(default_factory=list)
    note: str = ""

    def to_json(self) -> dict:
        d = {"status": self.status, "conditions": list(self.conditions)}
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class ObstructionReport:
    p: int | None
    conditions: dict            # condition index -> True if the point lies on it
    classes: dict               # class label -> Verdict
    notes: list = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)

    @property
    def failed(self) -> list[int]:
        return sorted(k for k, v in self.conditions.items() if v)

    @property
    def verdict(self) -> str:
        return "Surjective" if not self.failed else "Blocked"

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "verdict": self.verdict,
            "failed_conditions": self.failed,
            "conditions": {str(k): bool(v) for k, v in sorted(self.conditions.items())},
            "classes": {k: self.classes[k].to_json() for k in CLASSES},
            "notes": list(self.notes),
            "diagnostics": self.diagnostics,
        }


def theorem_conditions(pt: ParamPoint, p: int | None, images=None) -> tuple[dict, list, CharPolyG2]:
    """Evaluate the seven listed conditions; True means the point lies on the locus."""
    notes = []
    (a1, a2), (b1, b2), (c1, c2) = pt.pairs
    cond = {}
    cond[1] = not (a1 * a2 * b1 * b2 * c1 * c2)
    cond[2] = not ((a1 * a1 - a2 * a2) * (b1 * b1 - b2 * b2) * (c1 * c1 - c2 * c2))
    if pt.form == "full":
        w, x, y, z = pt.angle
        cond[3] = not (w * x * y * z)
        cond[4] = not ((x * x - z * z) * (w * w - y * y) * (3 * x * x - y * y) * (3 * z * z - w * w))
    else:
        # z = 0 reading: (3) becomes wxy = 0 and (4) its z = 0 substitution,
        # written in w1 = wy, x1 = xy, y1 = y^2
        w1, x1, y1 = pt.angle
        cond[3] = not (w1 * x1 * y1)
        cond[4] = not (x1 * w1 * (w1 * w1 - y1 * y1) * (3 * x1 * x1 - y1 * y1))
        notes.append("conditions (3),(4) read at z = 0 on the reparameterized form")
    cp = char_poly_T(pt, images)
    cond[5] = pgl2_condition(cp)
    hits = finite_subgroup_hits(cp, p)
    cond[6] = 6 in hits
    cond[7] = 7 in hits
    return cond, notes, cp


def _group_g1_values(group: str, F: Field) -> set:
    vals = set()
    for e in bounded_tables():
        if e.group != group:
            continue
        if isinstance(F, PrimeField):
            vals |= {r[1] for r in e.reductions_mod_p(F.p)}
        elif e.field is QQ:
            vals.add(e.g[0])
    return vals


def _bounded_class_verdicts(cp: CharPolyG2, p: int | None, cond: dict) -> dict:
    F = field_of(cp.g1)
    out = {}
    for group in ("2^3.L3(2)", "L2(8)", "L2(13)", "U3(3):2"):
        if p is not None and group == "L2(8)" and not minpoly_roots_mod_p(ALPHA_MINPOLY, p):
            out[group] = Verdict(NA, note="X^3-3X+1 has no root mod p")
            continue
        if p is not None and group == "L2(13)" and not minpoly_roots_mod_p(SQRT13_MINPOLY, p):
            out[group] = Verdict(NA, note="13 is not a square mod p")
            continue
        hit = cond[6] and cp.g1 in _group_g1_values(group, F)
        out[group] = Verdict(BLOCKED, [6]) if hit else Verdict(CLEAR)
    if p == 11:
        out["J1"] = Verdict(BLOCKED, [7]) if cond[7] else Verdict(CLEAR)
    else:
        out["J1"] = Verdict(NA, note="J1 occurs only for p = 11")
    return out


def theorem_main2_verdict(pt: ParamPoint, p: int | None = None, images=None) -> ObstructionReport:
    if p is None and isinstance(pt.F, PrimeField):
        p = pt.F.p
    if p is not None and p < 5:
        raise ValueError("need p >= 5")
    cond, notes, cp = theorem_conditions(pt, p, images)
    cls = {}
    cls["SU_M"] = Verdict(BLOCKED, [1]) if cond[1] else Verdict(CLEAR)
    so = [k for k in (2, 3, 4) if cond[k]]
    cls["SO_H"] = Verdict(BLOCKED, so) if so else Verdict(CLEAR)
    for lbl in ("parabolic_long", "parabolic_short"):
        cls[lbl] = Verdict(BLOCKED, [2]) if cond[2] else Verdict(CLEAR)
    cls["PGL2"] = Verdict(BLOCKED, [5]) if cond[5] else Verdict(CLEAR)
    cls.update(_bounded_class_verdicts(cp, p, cond))
    cls["subfield"] = Verdict(NA, note="G2(p^b) subgroups do not occur for q = p")
    return ObstructionReport(p, cond, cls, notes, refined_diagnostics(pt))


def refined_diagnostics(pt: ParamPoint) -> dict:
    """Component-ideal hits that the seven listed conditions do not cover.

    Pair coincidences such as (a1, a2) = +-(b1, b2) put a point on SO_H or
    parabolic components while it can still clear conditions (1)-(7).
    """
    (a1, a2), (b1, b2), (c1, c2) = pt.pairs
    coincide = []
    for (n1, p1), (n2, p2) in (("a", pt.a), ("b", pt.b)), (("a", pt.a), ("c", pt.c)), (("b", pt.b), ("c", pt.c)):
        if p1 == p2 or (p1[0] == -p2[0] and p1[1] == -p2[1]):
            coincide.append(n1 + n2)
    out = {"pair_coincidences": coincide}
    if pt.full is not None:
        out["soh_components"] = soh_components(pt)
        out["parabolic_items"] = parabolic_items(pt)
    return out


# ---------------------------------------------------------------------------
# Invariant-subspace search
# ---------------------------------------------------------------------------


def spin(F: Field, gens: Sequence[Matrix], vectors: Sequence, cap: int = 7) -> list[tuple]:
    """Basis (reduced echelon) of the smallest subspace containing ``vectors`` and stable under ``gens``.

    Stops early once the dimension exceeds ``cap``.
    """
    basis: list = []
    pivots: list = []

    def add(v) -> bool:
        v = list(v)
        for b, pc in zip(basis, pivots):
            if v[pc]:
                f = v[pc]
                v = [x - f * y for x, y in zip(v, b)]
        nz = next((i for i, x in enumerate(v) if x), None)
        if nz is None:
            return False
        inv = F.one / v[nz]
        v = [x * inv for x in v]
        # keep reduced
        for idx, b in enumerate(basis):
            if b[nz]:
                f = b[nz]
                basis[idx] = [x - f * y for x, y in zip(b, v)]
        basis.append(v)
        pivots.append(nz)
        return True

    queue = []
    for v in vectors:
        if add(v):
            queue.append(tuple(basis[-1]))
    while queue:
        v = queue.pop()
        for g in gens:
            w = g.apply(v)
            if add(w):
                queue.append(tuple(basis[-1]))
                if len(basis) > cap:
                    return [tuple(b) for b in basis]
    order = sorted(range(len(basis)), key=lambda i: pivots[i])
    return [tuple(basis[i]) for i in order]


def is_invariant(F: Field, gens: Sequence[Matrix], basis: Sequence) -> bool:
    if not basis:
        return True
    k = len(row_space_basis(F, basis))
    for g in gens:
        for b in basis:
            if len(row_space_basis(F, list(basis) + [g.apply(b)])) > k:
                return False
    return True


def _xpow_mod(f: Poly, e: int) -> Poly:
    F = f.F
    result = Poly(F, [1])
    base = Poly(F, [0, 1]) % f
    while e:
        if e & 1:
            result = (result * base) % f
        base = (base * base) % f
        e >>= 1
    return result


def _poly_at_matrix(f: Poly, A: Matrix) -> Matrix:
    F = A.F
    n = A.nrows
    out = Matrix.zeros(F, n)
    for c in reversed(f.c):
        out = out @ A + Matrix.identity(F, n).scale(c)
    return out


def degree_parts(chi: Poly, p: int, maxdeg: int) -> dict[int, Poly]:
    """Product of the distinct irreducible factors of exact degree d of ``chi``, d <= maxdeg."""
    F = chi.F
    x = Poly(F, [0, 1])
    out = {}
    for d in range(1, maxdeg + 1):
        g = poly_gcd(chi, _xpow_mod(chi, p ** d) - x)
        for e in range(1, d):
            if d % e == 0:
                g = g // poly_gcd(g, out[e])
        out[d] = g.monic()
    return out


def equal_degree_factors(f: Poly, d: int, p: int, rng: random.Random) -> list[Poly]:
    """Split a squarefree monic f whose irreducible factors all have degree d (p odd)."""
    if f.degree <= d:
        return [f] if f.degree > 0 else []
    F = f.F
    e = (p ** d - 1) // 2
    while True:
        a = Poly(F, [F.random_element(rng) for _ in range(f.degree)])
        if a.degree < 1:
            continue
        g = poly_gcd(f, _powmod(a, e, f) - Poly(F, [1]))
        if 0 < g.degree < f.degree:
            return equal_degree_factors(g, d, p, rng) + equal_degree_factors((f // g).monic(), d, p, rng)


def _powmod(a: Poly, e: int, f: Poly) -> Poly:
    result = Poly(a.F, [1])
    base = a % f
    while e:
        if e & 1:
            result = (result * base) % f
        base = (base * base) % f
        e >>= 1
    return result


def irreducible_factors(chi: Poly, p: int, maxdeg: int, rng: random.Random) -> list[Poly]:
    """Distinct monic irreducible factors of chi with degree <= maxdeg."""
    out = []
    for d, h in degree_parts(chi, p, maxdeg).items():
        out += equal_degree_factors(h, d, p, rng)
    return out


def _projective_vectors(F: Field, basis: Sequence):
    k = len(basis)
    elems = list(F.elements())
    for lead in range(k):
        for tail in itertools.product(elems, repeat=k - lead - 1):
            coeffs = [F.zero] * lead + [F.one] + list(tail)
            yield tuple(sum((c * b[i] for c, b in zip(coeffs, basis)), F.zero) for i in range(7))


@dataclass
class SearchResult:
    status: str                 # "Found", "NoneFound", "Inconclusive"
    max_dim: int
    subspace: list = field(default_factory=list)
    exhaustive: bool = False
    transcript: list = field(default_factory=list)
    seed: int | None = None

    @property
    def dim(self) -> int:
        return len(self.subspace)

    def to_json(self, F: Field) -> dict:
        return {
            "status": self.status, "max_dim": self.max_dim, "exhaustive": self.exhaustive,
            "subspace": [[F.format(x) for x in v] for v in self.subspace],
            "transcript": self.transcript, "seed": self.seed,
        }


def _algebra_elements(S: Matrix, R: Matrix, rng: random.Random, F: Field):
    R2 = R @ R
    yield "S*R", S @ R
    yield "S+R", S + R
    yield "S*R*R+R", S @ R2 + R
    while True:
        cs = [F.random_element(rng) for _ in range(4)]
        A = S.scale(cs[0]) + R.scale(cs[1]) + (S @ R).scale(cs[2]) + (R @ S).scale(cs[3])
        yield "random " + ",".join(F.format(c) for c in cs), A


def invariant_subspace_search(gens: Sequence, dims: Sequence[int] = (1, 2, 3), budget: int = 20000,
                              seed: int = 0, max_kernel_dim: int = 3) -> SearchResult:
    """Look for a nonzero proper invariant subspace of dimension <= max(dims).

    Every such subspace contains a minimal one U; for any algebra element A,
    U meets the kernel of f(A) for an irreducible factor f of degree <= dim U,
    and spinning any nonzero vector of that intersection gives U back.  So
    enumerating the projective points of those kernels (when small) and
    spinning each is exhaustive.  ``budget`` bounds the number of vectors spun.
    """
    mats = [g.matrix if hasattr(g, "matrix") else g for g in gens]
    F = mats[0].F
    if not isinstance(F, PrimeField) or F.p < 5:
        raise ValueError("invariant_subspace_search needs F_p with p >= 5")
    maxdim = max(dims)
    res = SearchResult("Inconclusive", maxdim, seed=seed)
    if budget <= 0:
        res.transcript.append({"reason": "budget exhausted before start"})
        return res
    rng = random.Random(seed)
    S, R = mats[0], mats[1]
    spent = 0
    for attempt, (label, A) in enumerate(_algebra_elements(S, R, rng, F)):
        if attempt >= 12:
            break
        chi = Poly(F, charpoly(A))
        factors = irreducible_factors(chi, F.p, maxdim, rng)
        kernels = [(f, nullspace(_poly_at_matrix(f, A))) for f in factors]
        entry = {"element": label, "factor_degrees": [f.degree for f in factors],
                 "kernel_dims": [len(k) for _, k in kernels], "spun": 0}
        res.transcript.append(entry)
        if any(len(k) > max(max_kernel_dim, f.degree) for f, k in kernels):
            entry["skipped"] = "kernel too large"
            continue
        for f, ker in kernels:
            # a kernel of dimension deg f is irreducible under A: one seed suffices
            seeds = [ker[0]] if len(ker) == f.degree else _projective_vectors(F, ker)
            for v in seeds:
                if spent >= budget:
                    res.transcript.append({"reason": "budget exhausted"})
                    return res
                spent += 1
                entry["spun"] += 1
                U = spin(F, mats, [v], cap=maxdim)
                if len(U) <= maxdim:
                    res.status = "Found"
                    res.subspace = U
                    return res
        res.status = "NoneFound"
        res.exhaustive = True
        return res
    return res


def isotropic(basis: Sequence, F: Field) -> bool:
    """Whether the span is totally isotropic for the norm form on the imaginary octonions."""
    from .octonion import basis_norm
    wts = [basis_norm(i) for i in range(1, 8)]
    for u in basis:
        for v in basis:
            if sum((F(wt) * a * b for wt, a, b in zip(wts, u, v)), F.zero):
                return False
    return True


# ---------------------------------------------------------------------------
# Surjectivity witness
# ---------------------------------------------------------------------------

BOUNDED_ORDERS = frozenset({1, 2, 3, 4, 6, 7, 8, 9, 12, 13})
J1_EXTRA_ORDERS = frozenset({5, 15, 19})


@dataclass
class SurjectivityCertificate:
    status: str                 # "Certified", "NotSurjective", "Inconclusive"
    p: int
    seed: int
    searches: dict = field(default_factory=dict)   # dim -> SearchResult json
    pgl2_escape: dict | None = None
    bounded_escape: dict | None = None
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "status": self.status, "p": self.p, "seed": self.seed,
            "searches": self.searches, "pgl2_escape": self.pgl2_escape,
            "bounded_escape": self.bounded_escape, "reason": self.reason,
        }


def _random_word(rng: random.Random, length: int) -> str:
    toks = []
    for _ in range(length):
        toks.append("S")
        toks.append(rng.choice(("R", "R^-1")))
    return " ".join(toks)


def witness_surjectivity(pt: ParamPoint, p: int | None = None, budget: int = 20000,
                         seed: int = 0) -> SurjectivityCertificate:
    F = pt.F
    if not isinstance(F, PrimeField):
        raise ValueError("witness_surjectivity needs a point over F_p")
    p = F.p if p is None else p
    cert = SurjectivityCertificate("Inconclusive", p, seed)
    if budget <= 0:
        cert.reason = "budget 0"
        return cert
    images = phi(pt)
    gens = [images[0].matrix, images[1].matrix]
    for d in (1, 2, 3):
        r = invariant_subspace_search(gens, dims=range(1, d + 1), budget=budget, seed=seed + d)
        cert.searches[str(d)] = r.to_json(F)
        if r.status == "Found":
            cert.status = "NotSurjective"
            cert.reason = f"invariant subspace of dimension {r.dim}"
            return cert
        if r.status != "NoneFound":
            cert.reason = f"subspace search inconclusive at dimension {d}"
            return cert
    rng = random.Random(seed)
    allowed = BOUNDED_ORDERS | (J1_EXTRA_ORDERS if p == 11 else frozenset())
    cap = p * p + p + 1
    table = reduced_table_polys(p)
    ident = tuple(int(c) for c in CharPolyG2(F(-7), F(21), F(-35)).coefficients_high())
    words = ["T"] + [_random_word(rng, 1 + i % 6) for i in range(min(budget, 200))]
    for word in words:
        g = evaluate_word(pt, word, images)
        cp = char_poly_g2(g)
        if cert.pgl2_escape is None and pgl2_quintic(cp.g1, cp.g2):
            cert.pgl2_escape = {"word": word, "g1": F.format(cp.g1), "g2": F.format(cp.g2),
                                "quintic": F.format(pgl2_quintic(cp.g1, cp.g2))}
        if cert.bounded_escape is None:
            n = element_order(g, cap)
            order_str = "overflow" if n is Overflow else str(n)
            if n is Overflow or n not in allowed:
                cert.bounded_escape = {"word": word, "order": order_str, "cap": cap, "kind": "order"}
            elif word == "T":
                coeffs = tuple(int(c) for c in cp.coefficients_high())
                if coeffs not in table and coeffs != ident:
                    cert.bounded_escape = {"word": word, "order": order_str, "kind": "char poly of T",
                                           "coefficients": list(coeffs)}
        if cert.pgl2_escape and cert.bounded_escape:
            cert.status = "Certified"
            return cert
    cert.reason = "no escaping element found within budget"
    return cert
