"""Execute scenarios and render reports.

Every check gets a freshly built context and its own step budget, so the
report (including step counts) does not depend on check order or on how
many worker threads ran it.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources

from .algebra.groebner import BudgetExceeded, budget_scope, default_budget_limit
from .algebra.poly import PolyRing
from .algebra.primes import FactorizationUnsupported, UnsupportedInput
from .algebra.text import ParseError
from .complexes import ModulePresentation, projective_dimension_graded
from .grade import cech_vanishing_profile, classical_grade, format_grade, hochster_test, p_depth
from .invariants import LinearGroupAction, check_retraction, invariant_presentation, kernel_matches
from .models import BadRingLimit, SubringModel, TrivialExtension, ValuationModel, bad_colon_chain, subring_colon_identities, val_example37
from .scenario import (
    ActionContext,
    BadRingContext,
    CheckStmt,
    OpStmt,
    Pool,
    RangePool,
    RingContext,
    Scenario,
    SubringContext,
    TrivExtContext,
    UseStmt,
    ValuationContext,
    parse_scenario,
)
from .sequences import (
    NoetherianAdapter,
    cohen_macaulay_verdict,
    enumerate_pool,
    is_strong_parameter_sequence,
    unmixedness_probe,
)

SCHEMA = "cmlab.report/v1"
BUNDLE_DIR = "bundled"


class CheckError(Exception):
    pass


# ---------------------------------------------------------------- contexts

@dataclass
class Context:
    label: str
    adapter: object = None
    ring: object = None  # PresentedRing whose variables name the elements
    model: object = None
    presentation: object = None


def build_context(ast) -> Context:
    if isinstance(ast, RingContext):
        R = ast.spec.build()
        maximal = [e.to_poly(R.poly_ring) for e in ast.local] if ast.local is not None else None
        return Context(str(ast), NoetherianAdapter(R, maximal), R)
    if isinstance(ast, TrivExtContext):
        R = ast.base.spec.build()
        maximal = [e.to_poly(R.poly_ring) for e in ast.base.local]
        S = TrivialExtension(R, maximal, ast.level)
        return Context(str(ast), S, R, S)
    if isinstance(ast, ValuationContext):
        if ast.rank != 2:
            raise CheckError("only the rank-two valuation domain is modelled")
        V = ValuationModel()
        return Context(str(ast), V, None, V)
    if isinstance(ast, BadRingContext):
        if ast.N < 2:
            raise CheckError("badring needs N >= 2")
        L = BadRingLimit(ast.N)
        return Context(str(ast), L, L.ring, L)
    if isinstance(ast, SubringContext):
        return Context(str(ast), None, None, SubringModel(ast.B))
    if isinstance(ast, ActionContext):
        if ast.spec.relations:
            raise CheckError("group actions need a polynomial ring")
        P = PolyRing(ast.spec.field, ast.spec.names, "grevlex")
        mats = [[[int(str(e)) for e in row] for row in m] for m in ast.matrices]
        G = LinearGroupAction(P, mats)
        pres = invariant_presentation(G)
        return Context(str(ast), NoetherianAdapter(pres.ring), pres.ring, G, pres)
    raise CheckError(f"unsupported context {ast!r}")


def _elements(ctx: Context, exprs) -> list:
    if ctx.adapter is None:
        raise CheckError(f"{ctx.label} does not answer sequence questions")
    if ctx.ring is not None:
        P = ctx.ring.poly_ring
        return [ctx.adapter.element(ctx.ring.reduce(e.to_poly(P))) for e in exprs]
    return [ctx.adapter.element(e) for e in exprs]


def _noetherian(ctx: Context, what: str, global_only: bool = True) -> NoetherianAdapter:
    A = ctx.adapter
    if not isinstance(A, NoetherianAdapter) or (global_only and A.maximal is not None):
        where = "a global finitely presented ring" if global_only else "a finitely presented ring"
        raise CheckError(f"{what} needs {where}")
    return A


# ---------------------------------------------------------------- check execution

@dataclass
class Outcome:
    value: object
    detail: dict = field(default_factory=dict)
    license: str | None = None
    violation: bool = False


def _json_value(v):
    if isinstance(v, float):
        return format_grade(v)
    return v


def _run_check(stmt: CheckStmt, ctx: Context) -> Outcome:
    kind = stmt.kind
    A = ctx.adapter
    if kind == "cm":
        if isinstance(stmt.target, RangePool):
            pool = enumerate_pool(list(_elements(ctx, stmt.target.items)), stmt.target.upto)
        else:
            pool = [_elements(ctx, s.items) for s in stmt.target.seqs]
        if ctx.presentation is not None:
            from .invariants import BEYOND_LENGTH_TWO

            v = cohen_macaulay_verdict(A, pool, label=lambda s: BEYOND_LENGTH_TWO if len(s) > 2 else "")
        else:
            v = cohen_macaulay_verdict(A, pool)
        detail = v.to_json(include_entries=True)
        return Outcome("violation" if v.violation_found else "clean", detail, violation=v.violation_found)
    seq = _elements(ctx, stmt.target.items)
    if kind == "wpr":
        v = A.weakly_proregular(seq)
        return Outcome("undetermined" if v.holds is None else v.holds, v.to_json(), v.license)
    if kind == "param":
        v = A.parameter(seq)
        return Outcome(v.holds, v.to_json(), v.license)
    if kind == "sps":
        tr = is_strong_parameter_sequence(A, seq)
        lic = tr.prefixes[-1].license if tr.prefixes else None
        return Outcome(tr.holds, tr.to_json(), lic)
    if kind == "regular":
        v = A.regular(seq)
        return Outcome(v.regular, v.to_json(), v.license)
    if kind == "pgrade":
        g = A.p_grade(seq)
        return Outcome(format_grade(g), {"route": g.route}, g.route if g.route != "koszul" else None)
    if kind == "height":
        return Outcome(_json_value(A.height(seq)), license=getattr(A, "height_license", None))
    if kind == "grade":
        N = _noetherian(ctx, "classical grade")
        g = classical_grade(N.ring.ideal(seq))
        k = N.p_grade(seq)
        return Outcome(format_grade(g), {"route": g.route, "koszul_route": format_grade(k)})
    if kind == "unmixed":
        N = _noetherian(ctx, "the unmixedness probe", global_only=False)
        r = unmixedness_probe(N, seq)
        d = {"tried": r.tried, "ideal_height": _json_value(r.ideal_height)}
        if r.found:
            d.update(witness=str(r.witness), colon_height=_json_value(r.colon_height))
        return Outcome(not r.found, d)
    if kind == "profile":
        N = _noetherian(ctx, "vanishing profiles")
        p = cech_vanishing_profile(N.ring, seq)
        return Outcome(list(p.verdicts), {"p_grade": format_grade(p.grade)})
    if kind == "pd":
        N = _noetherian(ctx, "projective dimension")
        pd = projective_dimension_graded(ModulePresentation.quotient(N.ring, seq))
        return Outcome(pd.value if pd.known else "unknown", {"flag": pd.flagged} if pd.flagged else {})
    if kind == "hochster":
        N = _noetherian(ctx, "the R[t] test")
        h = hochster_test(N.ring, seq)
        return Outcome(h.consistent, {"annihilator_zero": h.annihilator_zero, "element_is_nzd": h.element_is_nzd,
                                      "element": str(h.element)})
    if kind == "pdepth":
        if isinstance(A, TrivialExtension):
            g = A.p_depth() if not seq else A.p_grade(seq)
            return Outcome(format_grade(g), {"dimension": A.dimension}, g.route)
        N = _noetherian(ctx, "p-depth", global_only=False)
        gens = seq if seq else list(N.maximal.gens) if N.maximal is not None else None
        if not gens:
            raise CheckError("p-depth needs the maximal ideal")
        g = p_depth(N.ring, gens, local=N.maximal is not None)
        return Outcome(format_grade(g))
    raise CheckError(f"unknown check {kind}")


def _run_op(stmt: OpStmt, ctx: Context) -> Outcome:
    args = dict(stmt.args)
    m = ctx.model
    if stmt.name == "example37":
        if not isinstance(m, ValuationModel):
            raise CheckError("example37 needs valuation(rank=2)")
        b = val_example37(args.get("n", 3))
        return Outcome(b.certificates_check and b.weakly_proregular and b.parameter is False, b.to_json(),
                       "valuation-value-calculus")
    if stmt.name == "colon_chain":
        if not isinstance(m, BadRingLimit):
            raise CheckError("colon_chain needs badring(N=...)")
        c = bad_colon_chain(m.N)
        limit = m.weakly_proregular([m.element("x")])
        d = c.to_json()
        d["limit_x"] = limit.to_json()
        return Outcome(c.strictly_increasing_below_N, d, limit.license)
    if stmt.name == "colon_identities":
        if not isinstance(m, SubringModel):
            raise CheckError("colon_identities needs subring(B=...)")
        c = subring_colon_identities(m.B)
        return Outcome(c.holds, c.to_json())
    if stmt.name in ("invariants", "retraction"):
        if ctx.presentation is None:
            raise CheckError(f"{stmt.name} needs action(...)")
        pres = ctx.presentation
        if stmt.name == "invariants":
            if "bound" in args:
                pres = invariant_presentation(pres.action, args["bound"])
            d = {
                "ring": str(pres.ring),
                "generators": {n: str(g) for n, g in zip(pres.names, pres.generators)},
                "group_order": pres.action.order,
                "degree_bound": pres.bound,
                "incomplete": pres.incomplete,
            }
            return Outcome(str(pres.ring), d)
        r = check_retraction(pres, args.get("samples", 10))
        d = r.to_json()
        d["kernel_matches"] = kernel_matches(pres)
        return Outcome(r.holds and d["kernel_matches"], d)
    raise CheckError(f"unknown operation {stmt.name}")


def _matches(value, expect) -> bool:
    if isinstance(value, list):
        return ",".join(value) == str(expect)
    if isinstance(expect, bool) or isinstance(value, bool):
        return value is expect
    return value == expect or str(value) == str(expect)


# ---------------------------------------------------------------- report

@dataclass
class CheckResult:
    index: int
    statement: str
    context: str | None
    status: str  # pass | fail | info | violation | error
    value: object = None
    expected: object = None
    license: str | None = None
    steps: int = 0
    detail: dict = field(default_factory=dict)
    seconds: float | None = None

    def to_json(self, timings: bool = False):
        d = {
            "index": self.index,
            "statement": self.statement,
            "context": self.context,
            "status": self.status,
            "value": self.value,
            "expected": self.expected,
            "license": self.license,
            "steps": self.steps,
            "detail": self.detail,
        }
        if timings and self.seconds is not None:
            d["seconds"] = round(self.seconds, 4)
        return d


@dataclass
class Report:
    scenario: str | None
    budget: int
    checks: list

    @property
    def summary(self) -> dict:
        out = {"pass": 0, "fail": 0, "info": 0, "violation": 0, "error": 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    @property
    def exit_code(self) -> int:
        s = self.summary
        if s["error"]:
            return 2
        if s["fail"] or s["violation"]:
            return 1
        return 0

    def to_json(self, timings: bool = False) -> dict:
        return {
            "schema": SCHEMA,
            "scenario": self.scenario,
            "budget": self.budget,
            "checks": [c.to_json(timings) for c in self.checks],
            "summary": self.summary,
            "exit_code": self.exit_code,
        }


def _execute(index: int, stmt, ctx_ast, budget: int) -> CheckResult:
    text = str(stmt)
    label = str(ctx_ast) if ctx_ast is not None else None
    t0 = time.perf_counter()
    with budget_scope(budget) as b:
        try:
            if ctx_ast is None:
                raise CheckError("no ring or model given; add a context line or 'in <ring>'")
            ctx = build_context(ctx_ast)
            out = _run_check(stmt, ctx) if isinstance(stmt, CheckStmt) else _run_op(stmt, ctx)
        except BudgetExceeded as exc:
            return CheckResult(index, text, label, "error", steps=b.steps,
                               detail={"error": "budget exhausted", "limit": exc.limit, "partial": "unusable"},
                               seconds=time.perf_counter() - t0)
        except (CheckError, UnsupportedInput, FactorizationUnsupported, NotImplementedError, ValueError,
                KeyError, ZeroDivisionError, ParseError) as exc:
            msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
            return CheckResult(index, text, label, "error", steps=b.steps,
                               detail={"error": type(exc).__name__, "message": msg},
                               seconds=time.perf_counter() - t0)
    expect = stmt.expect
    value = _json_value(out.value)
    if expect is not None:
        status = "pass" if _matches(value, expect) else "fail"
    else:
        status = "violation" if out.violation else "info"
    return CheckResult(index, text, label, status, value, expect, out.license, b.steps, out.detail,
                       time.perf_counter() - t0)


def run(scenario: Scenario, budget: int | None = None, jobs: int = 1) -> Report:
    limit = default_budget_limit() if budget is None else budget
    tasks = []
    current = None
    for stmt in scenario.statements:
        if isinstance(stmt, UseStmt):
            current = stmt.context
            continue
        ctx = stmt.context if isinstance(stmt, CheckStmt) and stmt.context is not None else current
        tasks.append((len(tasks), stmt, ctx))
    if jobs > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_execute, i, s, c, limit) for i, s, c in tasks]
            results = [f.result() for f in futures]
    else:
        results = [_execute(i, s, c, limit) for i, s, c in tasks]
    return Report(scenario.name, limit, results)


def run_text(text: str, budget: int | None = None, jobs: int = 1) -> Report:
    return run(parse_scenario(text), budget, jobs)


# ---------------------------------------------------------------- emitters

def emit_json(report: Report, timings: bool = False) -> str:
    return json.dumps(report.to_json(timings), indent=2, ensure_ascii=False) + "\n"


def emit_text(report: Report, timings: bool = False) -> str:
    lines = [f"scenario {report.scenario or '(unnamed)'}"]
    for c in report.checks:
        tag = c.status.upper()
        line = f"[{tag:9}] {c.statement}"
        if c.context and " in " not in c.statement:
            line += f"  @ {c.context}"
        if c.status == "error":
            line += f"  -> {c.detail.get('message') or c.detail.get('error')}"
        else:
            line += f"  -> {json.dumps(c.value, ensure_ascii=False)}"
            if c.expected is not None:
                line += f" (expected {json.dumps(c.expected, ensure_ascii=False)})"
        if c.license:
            line += f"  [{c.license}]"
        if timings and c.seconds is not None:
            line += f"  {c.seconds:.3f}s"
        lines.append(line)
    s = report.summary
    lines.append("summary: " + ", ".join(f"{k} {v}" for k, v in s.items()) + f"; exit {report.exit_code}")
    return "\n".join(lines) + "\n"


def emit(report: Report, fmt: str = "json", timings: bool = False) -> str:
    if fmt == "json":
        return emit_json(report, timings)
    if fmt == "text":
        return emit_text(report, timings)
    raise ValueError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------- bundled scenarios

def bundled_scenarios() -> dict[str, str]:
    """name -> text for every scenario shipped with the package."""
    root = resources.files("cmlab") / "scenarios" / BUNDLE_DIR
    out = {}
    for entry in sorted(root.iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".cml"):
            out[f"{BUNDLE_DIR}/{entry.name[:-4]}"] = entry.read_text(encoding="utf-8")
    return out


def load_bundled(name: str) -> str:
    table = bundled_scenarios()
    key = name if name.startswith(BUNDLE_DIR + "/") else f"{BUNDLE_DIR}/{name}"
    if key not in table:
        raise KeyError(f"no bundled scenario {name!r}")
    return table[key]
