"""Scenario language: AST, parser and normalising printer.

    scenario  := stmt ((NL | ';') stmt)*
    stmt      := 'scenario' NAME ('/' NAME)*
               | context
               | 'check' KIND target ['in' context] ['expect' value]
               | NAME '(' [NAME '=' INT (',' NAME '=' INT)*] ')' ['expect' value]
    context   := ring ['at' ideal]
               | 'trivext' '(' ring 'at' ideal ',' 'level' '=' INT ')'
               | 'valuation' '(' 'rank' '=' INT ')'
               | 'badring' '(' 'N' '=' INT ')'
               | 'subring' '(' 'B' '=' INT ')'
               | 'action' '(' ring ';' matrix (',' matrix)* ')'
    target    := ideal | '[' ideal (',' ideal)* ']' | 'from' ideal 'upto' INT
    value     := 'true' | 'false' | 'infinity' | INT | NAME | STRING

A context on its own line becomes the default for later checks.
``format_scenario(parse_scenario(t))`` is a fixed point of parse-then-print.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra.text import (
    Expr,
    Neg,
    Num,
    ParseError,
    RingSpec,
    TokenStream,
    format_expr_list,
    parse_expr,
    parse_expr_list,
    parse_ring_spec,
    tokenize,
)

CHECK_KINDS = (
    "wpr", "param", "sps", "regular", "pgrade", "grade", "height",
    "cm", "unmixed", "profile", "pd", "hochster", "pdepth",
)
MODEL_OPS = {
    "example37": ("n",),
    "colon_chain": (),
    "colon_identities": (),
    "invariants": ("bound",),
    "retraction": ("samples",),
}
MODEL_KINDS = ("trivext", "valuation", "badring", "subring", "action")


# ---------------------------------------------------------------- contexts

@dataclass(frozen=True)
class RingContext:
    spec: RingSpec
    local: tuple | None = None  # generators of the maximal ideal

    def __str__(self):
        s = str(self.spec)
        return s + (f" at {format_expr_list(self.local)}" if self.local is not None else "")


@dataclass(frozen=True)
class TrivExtContext:
    base: RingContext
    level: int

    def __str__(self):
        return f"trivext({self.base}, level={self.level})"


@dataclass(frozen=True)
class ValuationContext:
    rank: int = 2

    def __str__(self):
        return f"valuation(rank={self.rank})"


@dataclass(frozen=True)
class BadRingContext:
    N: int

    def __str__(self):
        return f"badring(N={self.N})"


@dataclass(frozen=True)
class SubringContext:
    B: int

    def __str__(self):
        return f"subring(B={self.B})"


@dataclass(frozen=True)
class ActionContext:
    spec: RingSpec
    matrices: tuple  # of tuples of tuples of Expr

    def __str__(self):
        mats = ", ".join("[" + ", ".join("[" + ", ".join(str(e) for e in row) + "]" for row in m) + "]"
                         for m in self.matrices)
        return f"action({self.spec}; {mats})"


# ---------------------------------------------------------------- statements

@dataclass(frozen=True)
class Sequence_:
    items: tuple

    def __str__(self):
        return format_expr_list(self.items)


@dataclass(frozen=True)
class Pool:
    seqs: tuple  # of Sequence_

    def __str__(self):
        return "[" + ", ".join(str(s) for s in self.seqs) + "]"


@dataclass(frozen=True)
class RangePool:
    items: tuple
    upto: int

    def __str__(self):
        return f"from {format_expr_list(self.items)} upto {self.upto}"


class Quoted(str):
    """An expect value written in double quotes."""


def _fmt_value(v) -> str:
    if isinstance(v, Quoted):
        return f'"{v}"'
    if v is True:
        return "true"
    if v is False:
        return "false"
    return str(v)


@dataclass(frozen=True)
class NameStmt:
    name: str

    def __str__(self):
        return f"scenario {self.name}"


@dataclass(frozen=True)
class UseStmt:
    context: object

    def __str__(self):
        return str(self.context)


@dataclass(frozen=True)
class CheckStmt:
    kind: str
    target: object
    context: object = None
    expect: object = None

    def __str__(self):
        s = f"check {self.kind} {self.target}"
        if self.context is not None:
            s += f" in {self.context}"
        if self.expect is not None:
            s += f" expect {_fmt_value(self.expect)}"
        return s


@dataclass(frozen=True)
class OpStmt:
    name: str
    args: tuple  # of (key, int)
    expect: object = None

    def __str__(self):
        s = f"{self.name}(" + ", ".join(f"{k}={v}" for k, v in self.args) + ")"
        if self.expect is not None:
            s += f" expect {_fmt_value(self.expect)}"
        return s


@dataclass(frozen=True)
class Scenario:
    name: str | None
    statements: tuple

    def __str__(self):
        return format_scenario(self)


# ---------------------------------------------------------------- parser

def _int(ts: TokenStream) -> int:
    neg = ts.accept("-")
    v = int(ts.expect_kind("NUM").value)
    return -v if neg else v


def _keyword_int(ts: TokenStream, key: str) -> int:
    t = ts.expect_kind("NAME")
    if t.value != key:
        raise ParseError(f"expected {key!r}, found {t.value!r}", t.line, t.col)
    ts.expect("=")
    return _int(ts)


def _ring_context(ts: TokenStream) -> RingContext:
    spec = parse_ring_spec(ts)
    local = None
    if ts.at("at", "NAME"):
        ts.next()
        local = parse_expr_list(ts)
    return RingContext(spec, local)


def _constant(e: Expr, t) -> Expr:
    if isinstance(e, Num) or (isinstance(e, Neg) and isinstance(e.operand, Num)):
        return e
    raise ParseError(f"matrix entries must be integers, found {e}", t.line, t.col)


def _matrix(ts: TokenStream) -> tuple:
    ts.expect("[")
    rows = []
    while True:
        ts.expect("[")
        row = []
        while True:
            t = ts.peek()
            row.append(_constant(parse_expr(ts), t))
            if not ts.accept(","):
                break
        ts.expect("]")
        rows.append(tuple(row))
        if not ts.accept(","):
            break
    ts.expect("]")
    if any(len(r) != len(rows) for r in rows):
        raise ts.error("matrices must be square")
    return tuple(rows)


def _at_context(ts: TokenStream) -> bool:
    t = ts.peek()
    return t.kind == "NAME" and (t.value in ("QQ", "GF") or (t.value in MODEL_KINDS and ts.peek(1).value == "("))


def _context(ts: TokenStream):
    t = ts.peek()
    if t.kind == "NAME" and t.value in ("QQ", "GF"):
        return _ring_context(ts)
    name = ts.expect_kind("NAME")
    ts.expect("(")
    if name.value == "trivext":
        base = _ring_context(ts)
        if base.local is None:
            raise ParseError("trivext needs a base localised at a maximal ideal: R at (...)", name.line, name.col)
        ts.expect(",")
        ctx = TrivExtContext(base, _keyword_int(ts, "level"))
    elif name.value == "valuation":
        ctx = ValuationContext(_keyword_int(ts, "rank"))
    elif name.value == "badring":
        ctx = BadRingContext(_keyword_int(ts, "N"))
    elif name.value == "subring":
        ctx = SubringContext(_keyword_int(ts, "B"))
    elif name.value == "action":
        spec = parse_ring_spec(ts)
        ts.expect(";")
        mats = [_matrix(ts)]
        while ts.accept(","):
            mats.append(_matrix(ts))
        ctx = ActionContext(spec, tuple(mats))
    else:
        raise ParseError(f"unknown ring or model {name.value!r}", name.line, name.col)
    ts.expect(")")
    return ctx


def _target(ts: TokenStream):
    if ts.at("from", "NAME"):
        ts.next()
        items = parse_expr_list(ts)
        t = ts.expect_kind("NAME")
        if t.value != "upto":
            raise ParseError("expected 'upto'", t.line, t.col)
        return RangePool(items, _int(ts))
    if ts.at("["):
        ts.next()
        seqs = [Sequence_(parse_expr_list(ts))]
        while ts.accept(","):
            seqs.append(Sequence_(parse_expr_list(ts)))
        ts.expect("]")
        return Pool(tuple(seqs))
    return Sequence_(parse_expr_list(ts))


def _value(ts: TokenStream):
    t = ts.peek()
    if t.kind == "NUM" or t.value == "-":
        return _int(ts)
    if t.kind == "STR":
        ts.next()
        return Quoted(t.value)
    t = ts.expect_kind("NAME")
    return {"true": True, "false": False}.get(t.value, t.value)


def _expect(ts: TokenStream):
    if ts.at("expect", "NAME"):
        ts.next()
        return _value(ts)
    return None


def _statement(ts: TokenStream):
    t = ts.peek()
    if t.kind != "NAME":
        raise ts.error(f"expected a statement, found {t.value!r}")
    if t.value == "scenario":
        ts.next()
        parts = [ts.expect_kind("NAME").value]
        while ts.accept("/"):
            parts.append(ts.expect_kind("NAME").value)
        return NameStmt("/".join(parts))
    if t.value == "check":
        ts.next()
        k = ts.expect_kind("NAME")
        if k.value not in CHECK_KINDS:
            raise ParseError(f"unknown check {k.value!r} (known: {', '.join(CHECK_KINDS)})", k.line, k.col)
        target = _target(ts)
        if k.value == "cm" and not isinstance(target, (Pool, RangePool)):
            target = Pool((target,))
        if k.value != "cm" and not isinstance(target, Sequence_):
            raise ParseError("only cm checks take a pool", k.line, k.col)
        ctx = None
        if ts.at("in", "NAME"):
            ts.next()
            ctx = _context(ts)
        return CheckStmt(k.value, target, ctx, _expect(ts))
    if _at_context(ts):
        return UseStmt(_context(ts))
    if t.value in MODEL_OPS and ts.peek(1).value == "(":
        ts.next()
        ts.expect("(")
        args = []
        if not ts.at(")"):
            while True:
                key = ts.expect_kind("NAME")
                if key.value not in MODEL_OPS[t.value]:
                    raise ParseError(f"{t.value} takes no argument {key.value!r}", key.line, key.col)
                ts.expect("=")
                args.append((key.value, _int(ts)))
                if not ts.accept(","):
                    break
        ts.expect(")")
        return OpStmt(t.value, tuple(args), _expect(ts))
    raise ts.error(f"unknown statement {t.value!r}")


def parse_scenario(text: str) -> Scenario:
    ts = TokenStream(tokenize(text))
    name = None
    stmts = []
    while True:
        while ts.peek().kind == "NL" or ts.at(";", "OP"):
            ts.next()
        if ts.peek().kind == "EOF":
            break
        s = _statement(ts)
        if isinstance(s, NameStmt):
            if name is not None:
                raise ts.error("scenario name given twice")
            name = s.name
        else:
            stmts.append(s)
        t = ts.peek()
        if t.kind not in ("NL", "EOF") and not ts.at(";", "OP"):
            raise ParseError(f"unexpected {t.value!r} after statement", t.line, t.col)
    return Scenario(name, tuple(stmts))


def format_scenario(sc: Scenario) -> str:
    lines = [f"scenario {sc.name}"] if sc.name else []
    lines.extend(str(s) for s in sc.statements)
    return "\n".join(lines) + ("\n" if lines else "")
