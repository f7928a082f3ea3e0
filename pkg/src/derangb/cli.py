"""
Command-line interface: golden tables, verification suites, shape reports,
bijection ledgers and complex builders.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
import time
from dataclasses import dataclass, field

from . import analysis, bijections, families, signedperm, simplicial
from .exactpoly import IntPoly, er_operator, format_poly, reverse

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# families whose real-rootedness is a theorem; a Sturm failure on them is a bug
PROVEN_REAL_ROOTED = {"A", "B", "Bplus", "Bminus"}


class UsageError(Exception):
    pass


@dataclass
class Failure:
    case: str
    expected: str
    got: str
    methods: list[str] = field(default_factory=list)


@dataclass
class SuiteResult:
    suite: str
    cases: int = 0
    failures: list[Failure] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    seconds: float | None = None

    def check(self, case: str, expected, got, methods=()) -> bool:
        self.cases += 1
        if expected != got:
            self.failures.append(Failure(case, str(expected), str(got), list(methods)))
            return False
        return True

    def fail(self, case: str, message: str, methods=()):
        self.cases += 1
        self.failures.append(Failure(case, "no error", message, list(methods)))

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "cases": self.cases,
            "ok": self.ok,
            "failures": [f.__dict__ for f in self.failures],
        }
        if self.notes:
            out["notes"] = self.notes
        if timing and self.seconds is not None:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class Context:
    jobs: int = 1
    allow_large: bool = False

    @property
    def enum_cap(self) -> int:
        return signedperm.BN_GUARD if self.allow_large else 7


def _family_value(res: SuiteResult, family: str, n: int, ctx: Context, methods=None):
    """Cross-checked family value; a disagreement is recorded as a failure."""
    try:
        r = families.compute(family, n, methods=methods, bn_max=ctx.enum_cap)
        res.cases += 1
        return r.value
    except families.MethodDisagreement as exc:
        res.failures.append(Failure(
            f"{family}[{n}]", str(exc.value_a), str(exc.value_b), [exc.method_a, exc.method_b]
        ))
        return None


def _pair(res: SuiteResult, family: str, n: int, tag_a: str, tag_b: str, label: str):
    a = families.method_value(family, n, tag_a)
    b = families.method_value(family, n, tag_b)
    res.check(f"{label} {family}[{n}]", a, b, [tag_a, tag_b])


# ---------------------------------------------------------------------------
# suites


def suite_main_formula(max_n: int, ctx: Context) -> SuiteResult:
    res = SuiteResult("main-formula")
    for n in range(max_n + 1):
        ref = "enum" if n <= ctx.enum_cap else "alternating-sum"
        _pair(res, "dB", n, ref, "main-formula", "main formula")
    return res


def suite_decomposition(max_n: int, ctx: Context) -> SuiteResult:
    res = SuiteResult("decomposition")
    for n in range(max_n + 1):
        db = families.method_value("dB", n, "alternating-sum")
        plus, minus = families.symmetric_decompose(db, n)
        res.check(f"f+ sum[{n}]", families.method_value("fplus", n, "multinomial-sum"), plus,
                  ["multinomial-sum", "symmetric-decomposition"])
        res.check(f"f- sum[{n}]", families.method_value("fminus", n, "multinomial-sum"), minus,
                  ["multinomial-sum", "symmetric-decomposition"])
        for fam in ("xiplus", "ximinus"):
            try:
                xi = _family_value(res, fam, n, ctx)
            except families.NegativeGammaError as exc:
                res.fail(f"{fam}[{n}] nonnegative", str(exc))
                continue
            if xi is not None:
                res.check(f"{fam}[{n}] nonnegative", True, all(c >= 0 for c in xi.coeffs))
        _, peaks = analysis.unimodal_peaks(db)
        res.check(f"dB[{n}] peak", True, (n + 1) // 2 in peaks)
    return res


def suite_localint(max_n: int, ctx: Context) -> SuiteResult:
    res = SuiteResult("localint")
    kn_max = min(max_n, simplicial.KN_GUARD if ctx.allow_large else 5)
    for n in range(1, kn_max + 1):
        kn = simplicial.k_n(n)
        res.check(f"local h of K_{n}", families.f_plus(n), simplicial.local_h(kn.over_simplex))
    for n in range(max_n + 1):
        _pair(res, "fplus", n, "symmetric-decomposition", "alternating-sum", "alternating sum")
        _pair(res, "fminus", n, "symmetric-decomposition", "alternating-sum", "alternating sum")
        diff = families.f_plus(n) - families.derangement_a(n)
        res.check(f"f+[{n}] - d[{n}] >= 0", True, all(c >= 0 for c in diff.coeffs))
    return res


def suite_relative_local_h(max_n: int, ctx: Context) -> SuiteResult:
    res = SuiteResult("relative-local-h")
    for n in range(1, max_n + 1):
        sd = simplicial.barycentric_subdivision(simplicial.simplex_n(n))
        for E in sorted(sd.complex.faces, key=_face_key):
            rel = simplicial.relative_local_h(sd, E)
            r0, gaps = simplicial.chain_gaps(E, n)
            expected = families.derangement_a(r0)
            for r in gaps:
                expected = expected * families.eulerian_a(r)
            label = f"sd(2^[{n}]) at {_face_label(E)}"
            res.check(f"{label} product formula", expected, rel)
            res.check(f"{label} symmetry", rel, reverse(rel, n - len(E)))
            res.check(f"{label} nonnegative", True, all(c >= 0 for c in rel.coeffs))
        if n > min(max_n, 5):
            continue
        kn = simplicial.k_n(n)
        lhs, rhs = simplicial.decomposition_sides(kn.sd, kn.over_sd)
        res.check(f"decomposition formula (sd, K_{n})", lhs, rhs)
        res.check(f"decomposition formula value K_{n}", families.f_plus(n), lhs)
        for E in sorted(kn.sd.complex.faces, key=_face_key):
            if not E:
                continue
            k = len(E)
            res.check(f"K_{n} over sd, facets at {_face_label(E)}", 2 ** (k - 1),
                      len(kn.over_sd.restriction(E).facets))
            res.check(f"K_{n} over sd, local h at {_face_label(E)}", simplicial.lemma63_expected(k),
                      simplicial.local_h_at(kn.over_sd, E))
        if n <= 3:
            for E in sorted(kn.complex.faces, key=_face_key):
                rel = simplicial.relative_local_h(kn.over_simplex, E)
                res.check(f"K_{n} relative local h symmetry", rel, reverse(rel, n - len(E)))
                res.check(f"K_{n} relative local h nonnegative", True, all(c >= 0 for c in rel.coeffs))
    return res


def suite_h_formula(max_n: int, ctx: Context) -> SuiteResult:
    res = SuiteResult("h-formula")
    for n in range(1, min(max_n, simplicial.KN_GUARD if ctx.allow_large else 5) + 1):
        kn = simplicial.k_n(n)
        h = kn.complex.h_polynomial()
        ref = "enum" if n <= ctx.enum_cap else "E2-formula"
        res.check(f"h(K_{n})", families.method_value("Bplus", n, ref), h, [ref])
        res.check(f"facets of K_{n}", simplicial.kn_facet_count(n), kn.facet_count())
        res.check(f"h formula, K_{n} over the simplex", True, simplicial.h_formula_check(kn.over_simplex))
        if n <= 4:
            res.check(f"h formula, K_{n} over sd", True, simplicial.h_formula_check(kn.over_sd))
        sd = kn.sd
        res.check(f"h(sd(2^[{n}]))", families.eulerian_a(n), sd.complex.h_polynomial())
        res.check(f"h formula, sd(2^[{n}])", True, simplicial.h_formula_check(sd))
        _, beta = simplicial.flag_vectors(simplicial.pn_poset(n), n)
        res.check(f"flag h-vector of P_{n}", h, simplicial.h_from_flag_h(beta, n))
        if n <= min(ctx.enum_cap, 6):
            counts: dict = {}
            for w in signedperm.enumerate_bn(n):
                if w.entries[-1] > 0:
                    key = signedperm.desb_set(w)
                    counts[key] = counts.get(key, 0) + 1
            for S, b in sorted(beta.items(), key=lambda kv: sorted(kv[0])):
                target = frozenset(n - s for s in S)
                res.check(f"beta_P{n}({sorted(S)})", counts.get(target, 0), b)
    return res


_EGF_CASES = [
    ("A", "enum-des", ("egf",), 1),
    ("dA", "enum", ("egf",), 0),
    ("dB", "enum", ("egf", "egf-composed"), 0),
    ("fplus", "restricted-enum", ("egf", "egf-composed"), 1),
    ("fminus", "restricted-enum", ("egf", "egf-composed"), 1),
    ("Bplus", "enum", ("egf",), 0),
    ("Bminus", "enum", ("egf",), 0),
]


def suite_egf(max_n: int, ctx: Context) -> SuiteResult:
    res = SuiteResult("egf")
    for family, ref, tags, lo in _EGF_CASES:
        for n in range(lo, max_n + 1):
            ref_tag = ref if n <= ctx.enum_cap else "symmetric-decomposition" if family.startswith("f") else None
            if ref_tag is None:
                ref_tag = next(m.tag for m in families.METHODS[family] if m.enumeration is None)
            for tag in tags:
                _pair(res, family, n, ref_tag, tag, "egf")
    for n in range(1, max(max_n, 8) + 1):
        res.check(f"series identity B+[{n}]", True, families.bplus_series_check(n, 10))
    return res


def suite_recurrences(max_n: int, ctx: Context) -> SuiteResult:
    res = SuiteResult("recurrences")
    for n in range(max_n + 1):
        for tag in ("recurrence", "series-identity"):
            _pair(res, "Bplus", n, "E2-formula", tag, "recurrence")
        _pair(res, "Bminus", n, "reversal", "B-minus-Bplus", "reversal")
        _pair(res, "B", n, "sum-of-halves", "recurrence", "recurrence")
        _pair(res, "fplus", n, "symmetric-decomposition", "recurrence", "recurrence")
        if n >= 1:
            res.check(f"Bminus[{n}] reversal of the Bplus recurrence",
                      reverse(families.method_value("Bplus", n, "recurrence"), n),
                      families.method_value("Bminus", n, "B-minus-Bplus"))
        if n <= min(ctx.enum_cap, 6):
            _pair(res, "Bplus", n, "enum", "E2-formula", "enumeration")
            _pair(res, "Bminus", n, "enum", "reversal", "enumeration")
        if n >= 2:
            for k in range(1, n + 2):
                res.check(f"coefficient recurrence (n={n}, k={k})", True, families.coeff_recurrence_check(n, k))
    return res


def _bijection_check(n: int) -> tuple[int, list[Failure], set]:
    cases, failures, image = 0, [], set()
    for w in signedperm.enumerate_bn(n):
        if not signedperm.is_derangement_b(w):
            continue
        c = bijections.phi(w)
        image.add(c)
        cases += 1
        back = bijections.phi_inverse(c)
        if back != w:
            failures.append(Failure(f"round trip {w}", str(w), str(back)))
        ledger = bijections.statistic_ledger(w)
        if ledger["iexcB"] != ledger["rhs"]:
            failures.append(Failure(f"statistic identity {w}", str(ledger["iexcB"]), str(ledger["rhs"])))
        if n == 0:
            continue
        cycles = w.cycle_form("typeB")
        last_positive = bool(cycles) and cycles[-1][-1] > 0
        inv = signedperm.invert(w).as_map()
        inv_positive = inv[min(w.ground())] > 0
        if (c.k % 2 == 0) != last_positive or last_positive != inv_positive:
            failures.append(Failure(f"parity law {w}", "k even <=> last cycle entry > 0 <=> w^-1(m_w) > 0",
                                    f"k={c.k}, last={cycles[-1][-1]}"))
    return cases, failures, image


def suite_bijection(max_n: int, ctx: Context) -> SuiteResult:
    res = SuiteResult("bijection")
    for n in range(max_n + 1):
        cases, failures, image = _bijection_check(n)
        res.cases += cases
        res.failures.extend(failures)
        target = set(bijections.enumerate_cn(n))
        res.check(f"phi injective on D^B_{n}", cases, len(image))
        res.check(f"phi onto C_{n}", len(target), len(image & target))
        res.check(f"|D^B_{n}| = d^B_{n}(1)", families.derangement_b(n)(1), cases)
    return res


def suite_gamma(max_n: int, ctx: Context) -> SuiteResult:
    res = SuiteResult("gamma")
    for n in range(max_n + 1):
        fp, fm = families.f_plus(n), families.f_minus(n)
        for name, p, m in (("f+", fp, n), ("f-", fm, n + 1)):
            gv = analysis.gamma_extract(p, m)
            res.check(f"{name}[{n}] gamma reconstruction", p, gv.reconstruct())
            res.check(f"{name}[{n}] gamma nonnegative", True, gv.is_nonnegative())
            res.check(f"{name}[{n}] unimodal", True, analysis.unimodal_peaks(p)[0])
        xi = analysis.gamma_extract(families.derangement_a(n), n)
        res.check(f"xi[{n}] nonnegative", True, xi.is_nonnegative())
        if n >= 1:
            g = analysis.gamma_extract(families.eulerian_a(n), n - 1)
            res.check(f"gamma[{n}] nonnegative", True, g.is_nonnegative())
        db = families.derangement_b(n)
        res.check(f"dB[{n}] peak", True, (n + 1) // 2 in analysis.unimodal_peaks(db)[1])
    return res


def suite_realroots(max_n: int, ctx: Context) -> SuiteResult:
    res = SuiteResult("realroots")
    for n in range(1, max_n + 1):
        bp, bm = families.b_plus(n), families.b_minus(n)
        res.check(f"B+[{n}] real-rooted", True, analysis.sturm_real_rooted(bp))
        res.check(f"B-[{n}] real-rooted", True, analysis.sturm_real_rooted(bm))
        if n >= 2:
            res.check(f"B+[{n}] peak", True, n // 2 in analysis.unimodal_peaks(bp)[1])
            res.check(f"B-[{n}] peak", True, (n + 1) // 2 in analysis.unimodal_peaks(bm)[1])
            for name, p in (("f+", families.f_plus(n)), ("f-", families.f_minus(n))):
                if analysis.sturm_real_rooted(p):
                    res.check(f"{name}[{n}] real-rooted (conjectural)", True, True)
                else:
                    res.notes.append(f"{name}[{n}] is not real-rooted")
                    res.check(f"{name}[{n}] real-rooted (conjectural)", True, False)
    corpus = []
    for n in range(1, min(max_n, 8) + 1):
        a = families.eulerian_a(n)
        corpus += [a, families.eulerian_b(n), IntPoly((1, 1)) ** n * a, families.derangement_b(n)]
    for p in corpus:
        for r in (2, 3):
            q = er_operator(p, r)
            if q.is_zero():
                continue
            if analysis.unimodal_peaks(p)[0]:
                res.check(f"E_{r} keeps unimodality of {p}", True, analysis.unimodal_peaks(q)[0])
            if analysis.is_log_concave(p) and not analysis.has_internal_zeros(p):
                res.check(f"E_{r} keeps log-concavity of {p}", True,
                          analysis.is_log_concave(q) and not analysis.has_internal_zeros(q))
            if analysis.sturm_real_rooted(p):
                res.check(f"E_{r} keeps real roots of {p}", True, analysis.sturm_real_rooted(q))
    return res


SUITES = {
    "main-formula": (suite_main_formula, 6),
    "decomposition": (suite_decomposition, 7),
    "localint": (suite_localint, 8),
    "relative-local-h": (suite_relative_local_h, 4),
    "h-formula": (suite_h_formula, 5),
    "egf": (suite_egf, 7),
    "recurrences": (suite_recurrences, 10),
    "bijection": (suite_bijection, 6),
    "gamma": (suite_gamma, 8),
    "realroots": (suite_realroots, 10),
}


def run_suite(name: str, max_n: int | None = None, ctx: Context | None = None) -> SuiteResult:
    ctx = ctx or Context()
    fn, default = SUITES[name]
    n = default if max_n is None else max_n
    _check_suite_bounds(name, n, ctx)
    start = time.perf_counter()
    res = fn(n, ctx)
    res.seconds = time.perf_counter() - start
    return res


def _check_suite_bounds(name: str, n: int, ctx: Context):
    if n < 0:
        raise UsageError("--max-n must be nonnegative")
    if ctx.allow_large:
        return
    caps = {"bijection": 7, "main-formula": 12, "relative-local-h": 5, "h-formula": 6}
    cap = caps.get(name)
    if cap is not None and n > cap:
        raise UsageError(f"suite {name} is limited to --max-n {cap} without --allow-large")


def _face_key(face):
    return len(face), sorted(_vertex_key(v) for v in face)


def _vertex_key(v):
    if isinstance(v, frozenset):
        return tuple(sorted(v))
    if isinstance(v, tuple):
        return tuple(_vertex_key(x) for x in v)
    return v


def _face_label(face) -> str:
    parts = sorted(_vertex_key(v) for v in face)
    return "{" + ", ".join(str(p) for p in parts) + "}"


# ---------------------------------------------------------------------------
# commands


def _write(args, text: str):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _context(args) -> Context:
    families.set_enumeration_jobs(args.jobs)
    return Context(jobs=args.jobs, allow_large=args.allow_large)


def _family(tag: str) -> str:
    try:
        return families.canonical_family(tag)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def _table_enum_cap(ctx: Context) -> int:
    return ctx.enum_cap if ctx.allow_large else families.BN_ENUM_MAX


def cmd_tables(args) -> int:
    ctx = _context(args)
    family = _family(args.family)
    if args.max_n is None or args.max_n < 0:
        raise UsageError("tables needs --max-n N with N >= 0")
    lo = 1 if family == "gammaA" else 0
    rows = []
    for n in range(lo, args.max_n + 1):
        try:
            rows.append(families.compute(family, n, bn_max=_table_enum_cap(ctx)))
        except families.MethodDisagreement as exc:
            sys.stderr.write(f"verification failure: {exc}\n")
            return EXIT_FAIL
    if args.format == "json":
        _write(args, _dump([r.to_dict() for r in rows]))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["family", "n", "coeffs", "methods"])
        for r in rows:
            writer.writerow([r.family, r.n, " ".join(str(c) for c in r.value.coeffs), " ".join(r.methods_agreed)])
        _write(args, buf.getvalue())
    else:
        lines = [f"{r.n}\t{format_poly(r.value.coeffs)}\t[{', '.join(r.methods_agreed)}]" for r in rows]
        _write(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    ctx = _context(args)
    if args.suite == "all":
        names = list(SUITES)
    elif args.suite in SUITES:
        names = [args.suite]
    else:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {sorted(SUITES) + ['all']}")
    results = []
    for name in names:
        max_n = args.max_n
        if args.suite == "all" and max_n is not None:
            max_n = min(max_n, SUITES[name][1])
        results.append(run_suite(name, max_n, ctx))
    ok = all(r.ok for r in results)
    if args.format == "json":
        _write(args, _dump({"ok": ok, "suites": [r.to_dict(args.timing) for r in results]}))
    else:
        lines = []
        for r in results:
            status = "PASS" if r.ok else "FAIL"
            line = f"{status} {r.suite}: {r.cases} cases, {len(r.failures)} failures"
            if args.timing:
                line += f" ({r.seconds:.2f}s)"
            lines.append(line)
            for f in r.failures[:20]:
                lines.append(f"  {f.case}: expected {f.expected}, got {f.got} {f.methods or ''}".rstrip())
            for note in r.notes:
                lines.append(f"  note: {note}")
        _write(args, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bijection(args) -> int:
    try:
        w = signedperm.SignedPermutation.parse(args.w)
    except ValueError as exc:
        raise UsageError(f"cannot parse signed permutation: {exc}") from None
    try:
        c = bijections.phi(w)
    except bijections.NotADerangementError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAIL
    ledger = bijections.statistic_ledger(w)
    out = {
        "w": w.to_json(),
        "cycles": [list(cyc) for cyc in w.cycle_form("typeB")],
        "phi": c.to_dict(),
        "ledger": ledger,
        "identity_holds": ledger["iexcB"] == ledger["rhs"],
    }
    _write(args, _dump(out))
    return EXIT_OK if out["identity_holds"] else EXIT_FAIL


def _gamma_degree(family: str, n: int) -> int | None:
    return {"fplus": n, "fminus": n + 1, "dA": n, "A": n - 1}.get(family)


def cmd_shape(args) -> int:
    ctx = _context(args)
    family = _family(args.family)
    if args.n is None or args.n < 0:
        raise UsageError("shape needs --n N with N >= 0")
    p = families.compute(family, args.n, bn_max=_table_enum_cap(ctx)).value
    gn = _gamma_degree(family, args.n)
    if gn is not None and not analysis.is_symmetric(p, gn):
        gn = None
    report = analysis.shape_report(p, gamma_n=gn)
    out = {"family": family, "n": args.n, **report.to_dict()}
    _write(args, _dump(out))
    return EXIT_OK


def cmd_rootcheck(args) -> int:
    _context(args)
    family = _family(args.family)
    if args.max_n is None or args.max_n < 0:
        raise UsageError("rootcheck needs --max-n N with N >= 0")
    rows, failed = [], False
    for n in range(args.max_n + 1):
        p = families.compute(family, n).value
        if p.is_zero():
            rows.append({"n": n, "verdict": "zero polynomial"})
            continue
        real = analysis.sturm_real_rooted(p)
        rows.append({"n": n, "degree": p.degree(), "real_roots": analysis.real_root_count(p),
                     "verdict": "real-rooted" if real else "not real-rooted"})
        if not real and family in PROVEN_REAL_ROOTED:
            failed = True
    out = {"family": family, "proven": family in PROVEN_REAL_ROOTED, "rows": rows}
    if args.format == "json":
        _write(args, _dump(out))
    else:
        lines = [f"{r['n']}\t{r['verdict']}" for r in rows]
        _write(args, "\n".join(lines) + "\n")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_complex(args) -> int:
    if args.n is None:
        raise UsageError("complex needs --n N")
    try:
        if args.build == "kn":
            sub = simplicial.k_n(args.n, allow_large=args.allow_large).over_simplex
        else:
            if not 0 <= args.n <= (8 if args.allow_large else 6):
                raise ValueError("sd-simplex is built for 0 <= n <= 6")
            sub = simplicial.barycentric_subdivision(simplicial.simplex_n(args.n))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = {"build": args.build, "n": args.n}
    if args.emit == "fvector":
        out["fvector"] = [str(c) for c in sub.complex.fvector()]
    elif args.emit == "hpoly":
        out.update(sub.complex.h_polynomial().to_dict())
    else:
        out.update(simplicial.local_h(sub).to_dict())
    _write(args, _dump(out))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="derangb", description=__doc__.strip().splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to FILE")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for enumeration")
    common.add_argument("--allow-large", action="store_true", help="lift the enumeration guards")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", parents=[common], help="cross-checked family tables")
    p.add_argument("--family", required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", required=True)
    p.add_argument("--max-n", type=int)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--timing", action="store_true", help="report wall time per suite")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bijection", parents=[common], help="apply phi to a type-B derangement")
    p.add_argument("w", help='signed permutation, e.g. "3,-1,2"')
    p.set_defaults(func=cmd_bijection)

    p = sub.add_parser("shape", parents=[common], help="shape report of a family member")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_shape)

    p = sub.add_parser("rootcheck", parents=[common], help="exact real-rootedness verdicts")
    p.add_argument("--family", required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="json")
    p.set_defaults(func=cmd_rootcheck)

    p = sub.add_parser("complex", parents=[common], help="build K_n or sd(simplex)")
    p.add_argument("--build", choices=("kn", "sd-simplex"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--emit", choices=("fvector", "hpoly", "localh"), default="hpoly")
    p.set_defaults(func=cmd_complex)
    return parser


def _protect_signed_word(argv: list[str]) -> list[str]:
    # a word like "-2,1" would otherwise be parsed as an option
    if "bijection" not in argv or "--" in argv:
        return argv
    i = argv.index("bijection")
    for j in range(i + 1, len(argv)):
        if re.fullmatch(r"-\d+(,\s*-?\d+)*", argv[j]):
            return argv[:j] + ["--"] + argv[j:]
    return argv


def main(argv=None) -> int:
    parser = build_parser()
    argv = _protect_signed_word(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "jobs", 1) < 1:
        sys.stderr.write("error: --jobs must be at least 1\n")
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, signedperm.EnumerationGuardError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
