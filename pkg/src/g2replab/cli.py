"""Command-line interface: ``g2replab <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
JSON output carries ``schema_version`` and writes every number as an exact
string.  Randomness comes from Python's ``random.Random`` (MT19937) seeded
with explicit strings, so runs replay on any platform.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__, moduli, obstructions, repfamily, selftest, tables
from .g2core import NotG2Error
from .octonion import BASIS_NAMES
from .scalar import GF, FieldError, PrimeField, is_prime

SCHEMA_VERSION = "1"
ENUMERABLE = (5, 7, 11, 13)
CSV_COLUMNS = ("index", "a1", "a2", "b1", "b2", "c1", "c2", "form", "w1_or_w", "x1_or_x", "y1_or_y", "z",
               "g1", "g2", "verdict", "failed_conditions", "witness")
CERTIFIED_CAP = 20


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _emit(obj, path: str | None = None):
    text = _dump(obj) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _prime(p: int) -> int:
    if not is_prime(p) or p < 5:
        raise UsageError(f"p must be a prime >= 5, got {p}")
    return p


# ---------------------------------------------------------------------------
# selftest
# ---------------------------------------------------------------------------


def _basis_pair(text: str) -> tuple[int, int]:
    names = [s.strip() for s in text.split(",")]
    if len(names) != 2 or any(n not in BASIS_NAMES for n in names):
        raise UsageError(f"--corrupt-table expects two basis names such as i,j (from {', '.join(BASIS_NAMES)})")
    return BASIS_NAMES.index(names[0]), BASIS_NAMES.index(names[1])


def cmd_selftest(args) -> int:
    only = args.only.split(",") if args.only else None
    if only:
        unknown = [n for n in only if n not in selftest.SUITES]
        if unknown:
            raise UsageError(f"unknown suite(s) {unknown}; choose from {', '.join(selftest.SUITES)}")
    corrupt = _basis_pair(args.corrupt_table) if args.corrupt_table else None
    results = selftest.run(only, corrupt)
    for r in results:
        print("\n".join(r.lines()))
    ok = all(r.ok for r in results)
    print(f"selftest: {'all suites passed' if ok else 'FAILURES'} ({sum(r.ok for r in results)}/{len(results)})")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# scan
# ---------------------------------------------------------------------------


def _scan_point(pt, index: int, seed: int, witness: bool) -> dict:
    images = repfamily.phi(pt)
    rep = obstructions.theorem_main2_verdict(pt, images=images)
    cp = repfamily.char_poly_T(pt, images)
    row = {
        "index": index, "point": pt.to_json(), "g1": pt.F.format(cp.g1), "g2": pt.F.format(cp.g2),
        "verdict": rep.verdict, "failed": rep.failed, "witness": "",
    }
    if witness and rep.verdict == "Surjective":
        cert = obstructions.witness_surjectivity(pt, seed=seed + index)
        row["witness"] = cert.status
    if witness and 1 in rep.failed:
        r = obstructions.invariant_subspace_search(list(images), dims=(1,), seed=seed + index)
        row["line_found"] = r.status == "Found"
    return row


def _scan_chunk(job) -> list[dict]:
    p, mode, limit, seed, start, step, witness = job
    rows = []
    F = GF(p)
    if mode == "enumerate":
        for k, pt in enumerate(repfamily.enumerate_params(p, limit=limit, start=start, step=step)):
            rows.append(_scan_point(pt, start + k * step, seed, witness))
    else:
        import random
        for i in range(start, limit, step):
            rng = random.Random(f"g2replab-scan:{seed}:{i}")
            rows.append(_scan_point(repfamily.sample_params(F, rng), i, seed, witness))
    return rows


def run_scan(p: int, mode: str, limit: int | None, seed: int, witness: bool, workers: int) -> dict:
    if mode == "enumerate":
        total = repfamily.count_params(p)
        limit = total if limit is None else min(limit, total)
    elif limit is None:
        limit = 1000
    jobs = [(p, mode, limit, seed, k, workers, witness) for k in range(workers)]
    t0 = time.perf_counter()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_scan_chunk, jobs))
    else:
        parts = [_scan_chunk(j) for j in jobs]
    rows = sorted((r for part in parts for r in part), key=lambda r: r["index"])
    verdicts: dict = {}
    per_cond = {str(k): 0 for k in range(1, 8)}
    witness_counts: dict = {}
    certified, anomalies = [], []
    p11_pairs = set()
    for r in rows:
        verdicts[r["verdict"]] = verdicts.get(r["verdict"], 0) + 1
        for k in r["failed"]:
            per_cond[str(k)] += 1
        if r["witness"]:
            witness_counts[r["witness"]] = witness_counts.get(r["witness"], 0) + 1
            if r["witness"] == "Certified" and len(certified) < CERTIFIED_CAP:
                certified.append(r["point"])
            if r["witness"] != "Certified":
                anomalies.append({"index": r["index"], "witness": r["witness"], "point": r["point"]})
        if "line_found" in r:
            key = "condition1_line_found" if r["line_found"] else "condition1_line_missing"
            witness_counts[key] = witness_counts.get(key, 0) + 1
        if r.get("line_found") is False:
            anomalies.append({"index": r["index"], "issue": "condition (1) without an invariant line"})
        if 7 in r["failed"]:
            p11_pairs.add((r["g1"], r["g2"]))
    report = {
        "schema_version": SCHEMA_VERSION, "version": __version__,
        "p": p, "mode": mode, "seed": seed, "limit": limit, "total": len(rows),
        "verdicts": verdicts, "condition_failures": per_cond,
        "witness": witness_counts if witness else None,
        "certified_points": certified, "anomalies": anomalies,
        "condition7_pairs": sorted([list(x) for x in p11_pairs]),
    }
    report["digest"] = hashlib.sha256(_dump(report).encode()).hexdigest()
    report["wall_time_s"] = f"{time.perf_counter() - t0:.3f}"   # excluded from the digest
    report["_rows"] = rows
    return report


def _csv_text(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        pt = r["point"]
        form, vals = next(iter(pt["angle"].items()))
        vals = list(vals) + [""] * (4 - len(vals))
        w.writerow([r["index"], *pt["a"], *pt["b"], *pt["c"], form, *vals, r["g1"], r["g2"], r["verdict"],
                    ";".join(map(str, r["failed"])), r["witness"]])
    return buf.getvalue()


def cmd_scan(args) -> int:
    p = _prime(args.p)
    if args.mode == "enumerate" and p not in ENUMERABLE:
        raise UsageError(f"enumerate mode supports p in {ENUMERABLE}; use --mode sample for p = {p}")
    if args.limit is not None and args.limit < 0:
        raise UsageError("--limit must be nonnegative")
    workers = args.workers if args.workers else moduli.worker_count()
    report = run_scan(p, args.mode, args.limit, args.seed, args.witness, max(1, workers))
    rows = report.pop("_rows")
    if args.csv:
        Path(args.csv).write_text(_csv_text(rows))
    _emit(report, args.json)
    bad = [a for a in report["anomalies"] if a.get("witness") == "NotSurjective" or "issue" in a]
    return 1 if bad else 0


# ---------------------------------------------------------------------------
# check / witness
# ---------------------------------------------------------------------------


def _load_point(text: str, p: int | None):
    path = Path(text)
    raw = path.read_text() if not text.lstrip().startswith("{") and path.exists() else text
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise repfamily.SchemaError("/", f"invalid JSON ({exc.msg})") from None
    F = GF(_prime(p)) if p is not None else None
    return repfamily.param_from_json(obj, F)


def point_report(pt, witness: bool = False, seed: int = 0, budget: int = 20000) -> dict:
    F = pt.F
    fmt = F.format
    S, R = repfamily.phi(pt)
    cp = repfamily.char_poly_T(pt, (S, R))
    out = {
        "schema_version": SCHEMA_VERSION,
        "point": pt.to_json(),
        "constraints": "ok",
        "certified": {"phi(S)": S.certificate, "phi(R)": R.certificate,
                      "S^2 = 1": (S @ S).matrix.is_identity(), "R^3 = 1": (R ** 3).matrix.is_identity()},
        "charpoly_T": {"g1": fmt(cp.g1), "g2": fmt(cp.g2), "g3": fmt(cp.g3)},
        "commutant_dimension": repfamily.commutant_dimension(pt, (S, R)),
        "indecomposability_conditions": {str(k): v for k, v in repfamily.indecomposability_conditions(pt).items()},
    }
    try:
        t, u = repfamily.rep_invariants(pt)
        out["invariants"] = {"t": fmt(t), "u": fmt(u), "y1": fmt(pt.repar[2]),
                             "w1,x1 up to sign": [fmt(v) for v in pt.repar[:2]]}
    except repfamily.OutsideChart as exc:
        out["invariants"] = {"error": str(exc)}
    p = F.p if isinstance(F, PrimeField) else None
    rep = obstructions.theorem_main2_verdict(pt, p, images=(S, R))
    out["obstructions"] = rep.to_json()
    if witness:
        if p is None:
            out["certificate"] = {"error": "witness needs a point over F_p"}
        else:
            out["certificate"] = obstructions.witness_surjectivity(pt, budget=budget, seed=seed).to_json()
    return out


def cmd_check(args) -> int:
    pt = _load_point(args.point, args.p)
    _emit(point_report(pt, args.witness, args.seed, args.budget), args.json)
    return 0


def cmd_witness(args) -> int:
    pt = _load_point(args.point, args.p)
    if not isinstance(pt.F, PrimeField):
        raise UsageError("witness needs a point over F_p (give --p)")
    cert = obstructions.witness_surjectivity(pt, budget=args.budget, seed=args.seed)
    out = {"schema_version": SCHEMA_VERSION, "point": pt.to_json(), **cert.to_json()}
    _emit(out, args.json)
    return 0 if cert.status == "Certified" else 1


# ---------------------------------------------------------------------------
# tables / hilbert / fibers
# ---------------------------------------------------------------------------


def cmd_tables(args) -> int:
    rep = tables.table_verify()
    for r in rep.rows:
        print(f"{'ok  ' if r.ok else 'FAIL'} {r.entry.label()}" + ("" if r.ok else f"  -- {r.describe()}"))
    if not args.verify:
        return 0
    print(f"{len(rep.rows) - len(rep.failures)}/{len(rep.rows)} rows verified")
    return 0 if rep.ok else 1


HILBERT_EXPECTED = {
    "semi": [1, 2, 29, 95, 390, 1056, 2882, 6525],
    "invariant": [1, 2, 11, 31, 94, 222, 516, 1047],
}


def cmd_hilbert(args) -> int:
    N = args.degree
    if N < 0 or N % 2:
        raise UsageError("--degree must be even and nonnegative")
    semi, inv = moduli.hilbert_coefficients(N)
    print("semi-invariants: " + ",".join(map(str, semi)))
    print("invariants:      " + ",".join(map(str, inv)))
    n = len(semi)
    ok = semi[:8] == HILBERT_EXPECTED["semi"][:n] and inv[:8] == HILBERT_EXPECTED["invariant"][:n]
    if not ok:
        print("mismatch with the stated coefficients")
    return 0 if ok else 1


def cmd_fibers(args) -> int:
    p = _prime(args.p)
    c = moduli.fiber_census(p)
    out = {"schema_version": SCHEMA_VERSION, **c.to_json()}
    total = sum(c.nondegenerate_histogram.values())
    out["nondegenerate_share"] = {str(k): f"{100 * v / total:.1f}%" for k, v in c.nondegenerate_histogram.items()} \
        if total else {}
    _emit(out, args.json)
    return 0 if c.degenerate_ok and set(c.nondegenerate_histogram) <= {12} else 1


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="g2replab", description="Modular-group representations into G2: checks and scans.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("selftest", help="run the property suites")
    s.add_argument("--only", help="comma-separated suite names: " + ",".join(selftest.SUITES))
    s.add_argument("--corrupt-table", metavar="A,B",
                   help="test mode: flip the sign of e_A e_B in the structure table (negative control)")
    s.set_defaults(func=cmd_selftest)

    s = sub.add_parser("scan", help="evaluate the surjectivity conditions over F_p")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--limit", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--mode", choices=("enumerate", "sample"), default="enumerate")
    s.add_argument("--witness", action="store_true", help="also run the independent surjectivity witness")
    s.add_argument("--workers", type=int, help="worker processes (default: $G2REPLAB_THREADS or 1)")
    s.add_argument("--json", help="write the JSON report here instead of stdout")
    s.add_argument("--csv", help="write one CSV row per point here")
    s.set_defaults(func=cmd_scan)

    for name, fn, helptext in (("check", cmd_check, "full report for one point"),
                               ("witness", cmd_witness, "surjectivity certificate for one point")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--point", required=True, help="ParamPoint JSON text or a path to a JSON file")
        s.add_argument("--p", type=int, help="reduce the point into F_p")
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--budget", type=int, default=20000)
        s.add_argument("--json", help="write the JSON report here instead of stdout")
        if name == "check":
            s.add_argument("--witness", action="store_true")
        s.set_defaults(func=fn)

    s = sub.add_parser("tables", help="list or verify the characteristic-polynomial tables")
    s.add_argument("--verify", action="store_true")
    s.set_defaults(func=cmd_tables)

    s = sub.add_parser("hilbert", help="Hilbert series coefficients through t^N")
    s.add_argument("--degree", type=int, default=14)
    s.set_defaults(func=cmd_hilbert)

    s = sub.add_parser("fibers", help="fiber census of (a, b, c) -> (t, u) over F_p")
    s.add_argument("--p", type=int, default=13)
    s.add_argument("--json")
    s.set_defaults(func=cmd_fibers)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"g2replab: error: {exc}", file=sys.stderr)
        return 2
    except repfamily.SchemaError as exc:
        print(f"g2replab: schema error at {exc}", file=sys.stderr)
        return 2
    except NotG2Error as exc:
        print(f"g2replab: verification failed: {exc}", file=sys.stderr)
        return 1
    except (ValueError, FieldError) as exc:
        print(f"g2replab: invalid input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
