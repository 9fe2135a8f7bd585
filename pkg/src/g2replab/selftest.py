"""Property suites behind ``g2replab selftest``.

Every suite returns a list of Check records.  Literal statements that are
known to be misprinted are evaluated too, but they are reported under
``known`` and do not fail the suite; the acceptance tests are where they are
held to their printed form.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from . import g2core, moduli, obstructions, octonion, repfamily, tables
from .scalar import GF, QQ


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    known: bool = False     # literal misprint, reported but not counted


@dataclass
class SuiteResult:
    name: str
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks if not c.known)

    def lines(self) -> list[str]:
        out = [f"[{'PASS' if self.ok else 'FAIL'}] {self.name} ({self.seconds:.1f}s)"]
        for c in self.checks:
            tag = "ok" if c.ok else ("known misprint" if c.known else "FAILED")
            out.append(f"    {tag:>14}  {c.name}" + (f": {c.detail}" if c.detail else ""))
        return out


PRIMES = (5, 7, 11, 13)


def _nonzero(r) -> bool:
    return not r.is_zero() if isinstance(r, octonion.Octonion) else bool(r)


def suite_octonion(table=None, rng=None) -> list[Check]:
    rng = rng or random.Random(1)
    checks = []
    bad = octonion.table_mismatches(table)
    checks.append(Check("structure table matches Cayley-Dickson", not bad,
                        ", ".join(f"({a},{b})" for a, b in bad)))
    for F in (QQ,) + tuple(GF(p) for p in PRIMES):
        worst = 0
        for _ in range(60):
            x, y = octonion.random_octonion(F, rng), octonion.random_octonion(F, rng)
            xy = octonion.mul(x, y)
            residues = [
                octonion.norm(xy) - octonion.norm(x) * octonion.norm(y),
                octonion.conj(xy) - octonion.mul(octonion.conj(y), octonion.conj(x)),
                octonion.mul(octonion.mul(x, x), y) - octonion.mul(x, octonion.mul(x, y)),
                octonion.mul(octonion.mul(y, x), x) - octonion.mul(y, octonion.mul(x, x)),
            ]
            worst += sum(1 for r in residues if _nonzero(r))
        checks.append(Check(f"norm, conjugation, alternativity over {F!r}", worst == 0, f"{worst} nonzero residuals"))
    alt = octonion.alternative_decompositions_check()
    checks.append(Check("alternative quaternion decompositions", all(alt.values()), str(alt)))
    return checks


def suite_g2(rng=None) -> list[Check]:
    checks = []
    for p in PRIMES:
        bad = 0
        for pt in itertools.islice(repfamily.enumerate_params(p, step=11), 20):
            S, R = repfamily.phi(pt)
            if not ((S @ S).matrix.is_identity() and (R ** 3).matrix.is_identity()):
                bad += 1
        checks.append(Check(f"phi(S)^2 = phi(R)^3 = 1 on F_{p} points", bad == 0, f"{bad} failures"))
    rng = rng or random.Random(2)
    bad = 0
    for _ in range(5):
        pt = repfamily.sample_params(QQ, rng)
        S, R = repfamily.phi(pt)
        bad += not ((S @ S).matrix.is_identity() and (R ** 3).matrix.is_identity())
    checks.append(Check("phi(S), phi(R) certified over Q", bad == 0))
    el = g2core.standard_elements()
    got = {k: (g2core.element_order(v, 12), v.matrix.trace()) for k, v in el.items()}
    want = {"alpha2": (2, -1), "alpha3": (3, 1), "alpha3'": (3, -2)}
    checks.append(Check("orders and traces of alpha2, alpha3, alpha3'", got == want, str(got)))
    reps = g2core.weyl_representatives()
    n = g2core.group_closure(reps[:5], 200)
    checks.append(Check("the five S3 maps generate a group of order 24", n == 24, f"order {n}"))
    n = g2core.group_closure(reps, 200)
    checks.append(Check("with the outer map the closure has order 48", n == 48, f"order {n}"))
    return checks


def suite_charpoly(rng=None) -> list[Check]:
    rng = rng or random.Random(3)
    bad_rel = bad_u1 = 0
    for p in PRIMES:
        F = GF(p)
        for _ in range(10):
            pt = repfamily.sample_params(F, rng)
            images = repfamily.phi(pt)
            for _ in range(4):
                word = " ".join(rng.choice(("S", "R", "R^-1")) for _ in range(rng.randint(1, 8)))
                cp = g2core.char_poly_g2(repfamily.evaluate_word(pt, word, images))
                bad_rel += bool(cp.relation_residual())
            try:
                repfamily.char_poly_T(pt, images)
            except AssertionError:
                bad_u1 += 1
    return [Check("g3 = g1+g2-g1^2 on random words", bad_rel == 0, f"{bad_rel} failures"),
            Check("u1 = 3(a2^2+b2^2+c2^2)-5", bad_u1 == 0, f"{bad_u1} failures")]


def suite_moduli(rng=None, samples: int = 12) -> list[Check]:
    rng = rng or random.Random(4)
    fails: dict = {}
    minors_bad = delta_bad = 0
    for _ in range(samples):
        w, x, y, a, b, c = moduli.sample_slice(QQ, rng)
        ch = moduli.slice_embed(w, x, y, a, b, c)
        minors_bad += any(moduli.closed_minors(ch))
        rep = moduli.relation_report(ch)
        for k in rep.residuals:
            fails.setdefault(k, 0)
            fails[k] += bool(rep.residuals[k])
        d = moduli.delta_invariants(w, x, y, a, b, c)
        delta_bad += bool(moduli.delta_linear_relation(d, a, b, c)) or d != moduli.delta_formulas(w, x, y, a, b, c)
    checks = [Check("closed-condition minors vanish on the slice", minors_bad == 0)]
    for k, n in fails.items():
        known = k in ("s = t-2u", "r = 6s-(1/4)(t-s)^2", "D2 = 0")
        checks.append(Check(k, n == 0, f"{n}/{samples} nonzero" if n else "", known=known))
    checks.append(Check("delta closed forms and linear relation", delta_bad == 0))
    return checks


def suite_hilbert() -> list[Check]:
    semi, inv = moduli.hilbert_coefficients(14)
    return [
        Check("semi-invariant series 1,2,29,95,390,1056,2882,6525", semi == [1, 2, 29, 95, 390, 1056, 2882, 6525],
              ",".join(map(str, semi))),
        Check("invariant series 1,2,11,31,94,222,516,1047", inv == [1, 2, 11, 31, 94, 222, 516, 1047],
              ",".join(map(str, inv))),
    ]


def suite_fibers() -> list[Check]:
    c = moduli.fiber_census(13)
    sizes = set(c.nondegenerate_histogram)
    return [Check("nondegenerate fibers over F_13 have size 12", sizes == {12}, str(c.nondegenerate_histogram)),
            Check("degenerate fibers lie on the displayed locus", c.degenerate_ok)]


def suite_slice() -> list[Check]:
    r = moduli.slice_symmetry_check()
    return [Check("|H'| = 48, |H''| = 8, stabilizer 4 over F_23",
                  (r.order_H_prime, r.order_H_double_prime, r.stabilizer) == (48, 8, 4),
                  f"{r.order_H_prime}, {r.order_H_double_prime}, {r.stabilizer}")]


def suite_cover(rng=None) -> list[Check]:
    rng = rng or random.Random(5)
    syms = repfamily.cover_symmetries()
    closure = repfamily.symmetry_closure(syms)
    bad = 0
    for _ in range(6):
        pt = repfamily.sample_params(GF(13), rng)
        if not (pt.a[0] * pt.b[0] * pt.c[0]):
            continue
        tu = repfamily.rep_invariants(pt)
        for s in syms:
            q = s(pt)
            bad += repfamily.rep_invariants(q) != tu
    return [Check("48 cover symmetries, closed under composition", len(syms) == 48 and len(closure) == 48,
                  f"{len(syms)} maps, closure {len(closure)}"),
            Check("symmetries preserve (t, u)", bad == 0, f"{bad} failures")]


def suite_outer(rng=None) -> list[Check]:
    rng = rng or random.Random(6)
    bad = 0
    for F in (QQ, GF(7), GF(13)):
        for _ in range(5):
            try:
                repfamily.apply_outer(repfamily.sample_params(F, rng))
            except repfamily.OuterCheckFailed:
                bad += 1
    return [Check("outer automorphism sends phi(R) to phi(R)^2", bad == 0, f"{bad} failures")]


def suite_indecomp(rng=None) -> list[Check]:
    rng = rng or random.Random(7)
    F = GF(13)
    bad = 0
    for _ in range(15):
        pt = repfamily.sample_params(F, rng)
        conds = repfamily.indecomposability_conditions(pt)
        dim = repfamily.commutant_dimension(pt)
        if all(conds.values()) and dim != 1:
            bad += 1
        if not conds[1] and dim < 2:
            bad += 1
    return [Check("commutant dimension agrees with the indecomposability conditions", bad == 0, f"{bad} failures")]


def suite_tables() -> list[Check]:
    rep = tables.table_verify()
    checks = [Check(f"{len(rep.rows)} table rows checked", True)]
    for r in rep.failures:
        known = r.entry.group == "J1" and r.entry.order == 11
        checks.append(Check(r.entry.label(), False, r.describe(), known=known))
    printed = tables.printed_alpha_conjugates()
    checks.append(Check("printed alpha conjugates are roots of X^3-3X+1",
                        all(tables.is_alpha_root(v) for v in printed.values()), "neither is a root", known=True))
    return checks


def suite_obstructions(rng=None) -> list[Check]:
    rng = rng or random.Random(8)
    checks = []
    bad = 0
    for p in (5, 7):
        for pt in itertools.islice(repfamily.enumerate_params(p, step=37), 40):
            S, R = repfamily.phi(pt)
            found = obstructions.invariant_subspace_search([S, R], dims=(1,), seed=1).status == "Found"
            bad += found != (obstructions.su_condition(pt) == obstructions.BLOCKED)
    checks.append(Check("SU_M condition <=> invariant line (p = 5, 7)", bad == 0, f"{bad} mismatches"))
    lam_bad = 0
    for _ in range(5):
        lam = QQ(rng.randint(2, 9)) / rng.randint(1, 5)
        cp = obstructions.pgl2_spectrum_charpoly(lam)
        lam_bad += not obstructions.pgl2_condition(cp) or any(obstructions.pgl2_system(cp.g1, cp.g2, cp.g3))
    checks.append(Check("PGL2 spectra lie on the quintic and the three-equation system", lam_bad == 0))
    F = GF(29)
    certified = tried = 0
    while tried < 4:
        pt = repfamily.sample_params(F, rng)
        rep = obstructions.theorem_main2_verdict(pt)
        if rep.verdict != "Surjective" or rep.diagnostics["pair_coincidences"]:
            continue
        tried += 1
        certified += obstructions.witness_surjectivity(pt, seed=tried).status == "Certified"
    checks.append(Check("surjective verdicts over F_29 are witness-certified", certified == tried,
                        f"{certified}/{tried}"))
    return checks


SUITES = {
    "octonion": suite_octonion,
    "g2": suite_g2,
    "charpoly": suite_charpoly,
    "moduli": suite_moduli,
    "hilbert": suite_hilbert,
    "fibers": suite_fibers,
    "slice": suite_slice,
    "cover": suite_cover,
    "outer": suite_outer,
    "indecomp": suite_indecomp,
    "tables": suite_tables,
    "obstructions": suite_obstructions,
}


def run(only=None, corrupt=None) -> list[SuiteResult]:
    """Run the named suites (all by default); ``corrupt`` = (a, b) flips one table entry."""
    names = list(SUITES) if not only else list(only)
    out = []
    for name in names:
        if name not in SUITES:
            raise KeyError(name)
        t0 = time.perf_counter()
        if name == "octonion" and corrupt is not None:
            checks = suite_octonion(table=octonion.corrupted_table(*corrupt))
        else:
            checks = SUITES[name]()
        out.append(SuiteResult(name, checks, time.perf_counter() - t0))
    return out
