"""Text grammar for rings, ideals and polynomial expressions.

    ring    := field '[' name (',' name)* ']' ['/' ideal]
    field   := 'QQ' | 'GF' '(' INT ')'
    ideal   := '(' [expr (',' expr)*] ')'
    expr    := standard infix with + - * / ^ (also **), integers, names

Division is allowed only by nonzero constants.  Expressions are kept as a
small AST so they can be printed back in normalised form before a ring is
known.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import GF, QQ, Field


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # NUM, NAME, STR, OP, NL, EOF
    value: str
    line: int
    col: int


_PUNCT = set("()[]{},;+-*/^=<>:")


def tokenize(text: str) -> list[Token]:
    """Split text into tokens.  Newlines are emitted only outside brackets."""
    toks: list[Token] = []
    i = 0
    line, col = 1, 1
    depth = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "\n":
            if depth == 0:
                toks.append(Token("NL", "\n", line, col))
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(Token("NUM", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(Token("NAME", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch == '"':
            j = text.find('"', i + 1)
            if j < 0 or "\n" in text[i:j]:
                raise ParseError("unterminated string", line, col)
            toks.append(Token("STR", text[i + 1 : j], line, col))
            col += j + 1 - i
            i = j + 1
            continue
        if ch == "*" and i + 1 < n and text[i + 1] == "*":
            toks.append(Token("OP", "^", line, col))
            i += 2
            col += 2
            continue
        if ch in _PUNCT:
            if ch in "([{":
                depth += 1
            elif ch in ")]}":
                depth = max(0, depth - 1)
            toks.append(Token("OP", ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    toks.append(Token("EOF", "", line, col))
    return toks


class TokenStream:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.pos = 0

    def peek(self, offset: int = 0) -> Token:
        return self.toks[min(self.pos + offset, len(self.toks) - 1)]

    def next(self) -> Token:
        t = self.peek()
        self.pos += 1
        return t

    def at(self, value: str, kind: str | None = None) -> bool:
        t = self.peek()
        return t.value == value and (kind is None or t.kind == kind)

    def accept(self, value: str) -> bool:
        if self.at(value) and self.peek().kind != "EOF":
            self.pos += 1
            return True
        return False

    def expect(self, value: str) -> Token:
        t = self.peek()
        if t.value != value or t.kind == "EOF":
            raise ParseError(f"expected {value!r}, found {t.value or 'end of input'!r}", t.line, t.col)
        self.pos += 1
        return t

    def expect_kind(self, kind: str) -> Token:
        t = self.peek()
        if t.kind != kind:
            raise ParseError(f"expected {kind}, found {t.value or 'end of input'!r}", t.line, t.col)
        self.pos += 1
        return t

    def error(self, message: str) -> ParseError:
        t = self.peek()
        return ParseError(message, t.line, t.col)


# ---------------------------------------------------------------- expression AST

class Expr:
    prec = 100

    def to_poly(self, ring):
        raise NotImplementedError

    def names(self) -> set[str]:
        return set()

    def wrap(self, prec: int) -> str:
        s = str(self)
        return f"({s})" if self.prec < prec else s


@dataclass(frozen=True)
class Num(Expr):
    value: int
    prec = 100

    def to_poly(self, ring):
        return ring(self.value)

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Var(Expr):
    name: str
    prec = 100

    def to_poly(self, ring):
        if self.name not in ring.names:
            raise KeyError(f"unknown variable {self.name!r} (ring has {', '.join(ring.names)})")
        return ring.var(self.name)

    def names(self):
        return {self.name}

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    @property
    def prec(self):
        return {"+": 10, "-": 10, "*": 20, "/": 20}[self.op]

    def to_poly(self, ring):
        a = self.left.to_poly(ring)
        b = self.right.to_poly(ring)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        if not b.is_constant() or b.is_zero():
            raise ValueError(f"division by non-constant or zero: {self.right}")
        return a * ring.field.inv(b.constant_coeff())

    def names(self):
        return self.left.names() | self.right.names()

    def __str__(self):
        p = self.prec
        sep = f" {self.op} " if self.op in "+-" else self.op
        # left-assoc: right operand needs parens at equal precedence for - and /
        rp = p + 1 if self.op in "-/" else p
        return f"{self.left.wrap(p)}{sep}{self.right.wrap(rp)}"


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr
    prec = 15

    def to_poly(self, ring):
        return -self.operand.to_poly(ring)

    def names(self):
        return self.operand.names()

    def __str__(self):
        return f"-{self.operand.wrap(20)}"


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exp: int
    prec = 30

    def to_poly(self, ring):
        return self.base.to_poly(ring) ** self.exp

    def names(self):
        return self.base.names()

    def __str__(self):
        return f"{self.base.wrap(31)}^{self.exp}"


def parse_expr(ts: TokenStream) -> Expr:
    node = _parse_term(ts)
    while ts.peek().kind == "OP" and ts.peek().value in "+-":
        op = ts.next().value
        node = BinOp(op, node, _parse_term(ts))
    return node


def _parse_term(ts: TokenStream) -> Expr:
    node = _parse_unary(ts)
    while ts.peek().kind == "OP" and ts.peek().value in "*/":
        op = ts.next().value
        node = BinOp(op, node, _parse_unary(ts))
    return node


def _parse_unary(ts: TokenStream) -> Expr:
    if ts.peek().kind == "OP" and ts.peek().value == "-":
        ts.next()
        return Neg(_parse_unary(ts))
    if ts.peek().kind == "OP" and ts.peek().value == "+":
        ts.next()
        return _parse_unary(ts)
    return _parse_power(ts)


def _parse_power(ts: TokenStream) -> Expr:
    base = _parse_atom(ts)
    if ts.peek().kind == "OP" and ts.peek().value == "^":
        ts.next()
        t = ts.expect_kind("NUM")
        return Pow(base, int(t.value))
    return base


def _parse_atom(ts: TokenStream) -> Expr:
    t = ts.peek()
    if t.kind == "NUM":
        ts.next()
        return Num(int(t.value))
    if t.kind == "NAME":
        ts.next()
        return Var(t.value)
    if t.kind == "OP" and t.value == "(":
        ts.next()
        e = parse_expr(ts)
        ts.expect(")")
        return e
    raise ParseError(f"expected an expression, found {t.value or 'end of input'!r}", t.line, t.col)


def parse_expr_list(ts: TokenStream) -> tuple[Expr, ...]:
    """'(' [expr (',' expr)*] ')'"""
    ts.expect("(")
    items = []
    if not ts.at(")"):
        items.append(parse_expr(ts))
        while ts.accept(","):
            items.append(parse_expr(ts))
    ts.expect(")")
    return tuple(items)


def format_expr_list(items) -> str:
    return "(" + ", ".join(str(e) for e in items) + ")"


# ---------------------------------------------------------------- ring specs

@dataclass(frozen=True)
class RingSpec:
    """Parsed ``QQ[x,y]/(x*y)``; ``build()`` gives the PresentedRing."""

    characteristic: int
    names: tuple[str, ...]
    relations: tuple[Expr, ...] = ()

    @property
    def field(self) -> Field:
        return QQ if self.characteristic == 0 else GF(self.characteristic)

    def build(self, order="grevlex"):
        from .poly import PolyRing
        from .ring import PresentedRing

        P = PolyRing(self.field, self.names, order)
        return PresentedRing(P, [e.to_poly(P) for e in self.relations])

    def __str__(self):
        f = "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"
        s = f"{f}[{','.join(self.names)}]"
        if self.relations:
            s += "/" + format_expr_list(self.relations)
        return s


def parse_ring_spec(ts: TokenStream) -> RingSpec:
    t = ts.expect_kind("NAME")
    if t.value == "QQ":
        char = 0
    elif t.value == "GF":
        ts.expect("(")
        char = int(ts.expect_kind("NUM").value)
        ts.expect(")")
        try:
            GF(char)
        except ValueError as exc:
            raise ParseError(str(exc), t.line, t.col) from None
    else:
        raise ParseError(f"expected QQ or GF(p), found {t.value!r}", t.line, t.col)
    ts.expect("[")
    names = []
    if not ts.at("]"):
        names.append(ts.expect_kind("NAME").value)
        while ts.accept(","):
            names.append(ts.expect_kind("NAME").value)
    ts.expect("]")
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable names", t.line, t.col)
    rels: tuple[Expr, ...] = ()
    if ts.at("/") and ts.peek(1).value == "(":
        ts.next()
        rels = parse_expr_list(ts)
        for e in rels:
            unknown = e.names() - set(names)
            if unknown:
                raise ParseError(f"unknown variable(s) {sorted(unknown)} in relation {e}", t.line, t.col)
    return RingSpec(char, tuple(names), rels)


def _finish(ts: TokenStream):
    while ts.peek().kind == "NL":
        ts.next()
    if ts.peek().kind != "EOF":
        raise ts.error(f"unexpected trailing input {ts.peek().value!r}")


def parse_ring(text: str, order="grevlex"):
    """``parse_ring("QQ[x,y]/(x*y)")`` -> PresentedRing."""
    ts = TokenStream(tokenize(text))
    spec = parse_ring_spec(ts)
    _finish(ts)
    return spec.build(order)


def parse_poly(text: str, ring):
    """Parse an element; ``ring`` may be a PolyRing or a PresentedRing."""
    from .ring import PresentedRing

    P = ring.poly_ring if isinstance(ring, PresentedRing) else ring
    ts = TokenStream(tokenize(text))
    e = parse_expr(ts)
    _finish(ts)
    f = e.to_poly(P)
    return ring.reduce(f) if isinstance(ring, PresentedRing) else f


def parse_ideal(text: str, ring):
    """``parse_ideal("(x^2, x*y)", R)`` -> Ideal of the PresentedRing R."""
    ts = TokenStream(tokenize(text))
    items = parse_expr_list(ts)
    _finish(ts)
    return ring.ideal([e.to_poly(ring.poly_ring) for e in items])
