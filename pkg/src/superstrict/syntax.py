"""Syntax for the language of super-strict implication.

Concrete grammar (ASCII):

    atom     ::= IDENT | "bot" | "top" | "(" formula ")"
    unary    ::= ("~" | "box" | "dia") unary | atom
    conj     ::= unary ("&" conj)?
    disj     ::= conj ("|" disj)?
    formula  ::= disj (ARROW disj)*        ARROW in {"->", "=>", "|>", "||>"}

Binding strength is {~, box, dia} > & > | > arrows.  Every binary operator
associates to the right.  The four arrows share one precedence level and are
mutually non-associative: mixing two different arrows needs parentheses.

`top` and `~` are notation, not AST nodes: the parser expands `top` to
`bot -> bot` and `~a` to `a -> bot`, and the printer folds both back.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Mapping


class Formula:
    """Base class for formula nodes.  Instances are immutable and hashable."""

    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Var(Formula):
    name: str


@dataclass(frozen=True, slots=True)
class Bot(Formula):
    pass


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Imp(Formula):
    """Material implication."""

    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Ssi(Formula):
    """Super-strict implication `|>`: strictness plus a possible antecedent."""

    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Sssi(Formula):
    """Strong super-strict implication `||>`: adds a possibly-false consequent."""

    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Box(Formula):
    child: Formula


@dataclass(frozen=True, slots=True)
class Dia(Formula):
    child: Formula


@dataclass(frozen=True, slots=True)
class Strict(Formula):
    """Strict implication `=>`."""

    left: Formula
    right: Formula


def top() -> Formula:
    return Imp(Bot(), Bot())


def neg(f: Formula) -> Formula:
    return Imp(f, Bot())


def children(f: Formula) -> tuple[Formula, ...]:
    match f:
        case Var() | Bot():
            return ()
        case Box(a) | Dia(a):
            return (a,)
        case And(a, b) | Or(a, b) | Imp(a, b) | Ssi(a, b) | Sssi(a, b) | Strict(a, b):
            return (a, b)
    raise TypeError(f"not a formula: {f!r}")


def _rebuild(f: Formula, kids: tuple[Formula, ...]) -> Formula:
    if not kids:
        return f
    return type(f)(*kids)


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal, the node itself first."""
    yield f
    for kid in children(f):
        yield from subformulas(kid)


def variables(f: Formula) -> frozenset[str]:
    return frozenset(g.name for g in subformulas(f) if isinstance(g, Var))


class Language(Enum):
    """Connective vocabularies the toolkit distinguishes."""

    CORE = frozenset({Var, Bot, And, Or, Imp, Ssi})
    STRICT = frozenset({Var, Bot, And, Or, Imp, Strict})
    BOX = frozenset({Var, Bot, And, Or, Imp, Box, Dia})
    FULL = frozenset({Var, Bot, And, Or, Imp, Ssi, Sssi, Box, Dia, Strict})


def in_language(f: Formula, lang: Language) -> bool:
    allowed = lang.value
    return all(type(g) in allowed for g in subformulas(f))


def weight(f: Formula) -> int:
    """Number of binary connective nodes; box and dia contribute nothing."""
    return sum(1 for g in subformulas(f) if isinstance(g, (And, Or, Imp, Ssi, Sssi, Strict)))


def modal_depth(f: Formula) -> int:
    kid_depth = max((modal_depth(k) for k in children(f)), default=0)
    if isinstance(f, (Ssi, Sssi, Box, Dia, Strict)):
        return 1 + kid_depth
    return kid_depth


def substitute_uniform(f: Formula, name: str, replacement: Formula) -> Formula:
    """Replace every occurrence of the variable `name` by `replacement`."""
    return substitute_many(f, {name: replacement})


def substitute_many(f: Formula, mapping: Mapping[str, Formula]) -> Formula:
    """Simultaneous uniform substitution."""
    if isinstance(f, Var):
        return mapping.get(f.name, f)
    kids = children(f)
    if not kids:
        return f
    new = tuple(substitute_many(k, mapping) for k in kids)
    return f if new == kids else _rebuild(f, new)


Path = tuple[int, ...]


def subformula_at(f: Formula, path: Iterable[int]) -> Formula:
    node = f
    for i, step in enumerate(path):
        kids = children(node)
        if not 0 <= step < len(kids):
            raise ValueError(f"invalid path at position {i}: node has {len(kids)} children")
        node = kids[step]
    return node


def replace_at(f: Formula, paths: Iterable[Iterable[int]], replacement: Formula) -> Formula:
    """Replace the subformula occurrences addressed by `paths`.

    Every path must address the same formula (syntactic identity); the
    occurrence set may be empty, in which case `f` is returned unchanged.
    """
    pset = {tuple(p) for p in paths}
    if not pset:
        return f
    targets = [subformula_at(f, p) for p in sorted(pset)]
    if any(t != targets[0] for t in targets):
        raise ValueError("paths address distinct subformulas")

    def go(node: Formula, here: Path) -> Formula:
        if here in pset:
            return replacement
        kids = children(node)
        if not kids:
            return node
        new = tuple(go(kid, here + (i,)) for i, kid in enumerate(kids))
        return node if new == kids else _rebuild(node, new)

    return go(f, ())


def desugar(f: Formula) -> Formula:
    """Rewrite into the core language, innermost first.

    ||> unfolds to its defining conjunction, dia a to `a |> top`, box a to
    `~(~a |> top)`, and => to `~((a & ~b) |> top)`.  Idempotent; the result
    uses only core connectives.
    """
    match f:
        case Var() | Bot():
            return f
        case Sssi(a, b):
            da, db = desugar(a), desugar(b)
            return And(Ssi(da, db), Ssi(neg(db), top()))
        case Dia(a):
            return Ssi(desugar(a), top())
        case Box(a):
            return neg(Ssi(neg(desugar(a)), top()))
        case Strict(a, b):
            return neg(Ssi(And(desugar(a), neg(desugar(b))), top()))
        case _:
            kids = children(f)
            new = tuple(desugar(k) for k in kids)
            return f if new == kids else _rebuild(f, new)


def to_box_language(f: Formula) -> Formula:
    """Translate arrows away in favour of box and dia.

    `a |> b` becomes `dia a & box (a -> b)` and `a => b` becomes
    `box (a -> b)`; `||>` goes through its defining conjunction first.
    Truth-preserving at every point, normal or not, under the primitive
    clauses.
    """
    match f:
        case Var() | Bot():
            return f
        case Ssi(a, b):
            ta, tb = to_box_language(a), to_box_language(b)
            return And(Dia(ta), Box(Imp(ta, tb)))
        case Strict(a, b):
            return Box(Imp(to_box_language(a), to_box_language(b)))
        case Sssi(a, b):
            ta, tb = to_box_language(a), to_box_language(b)
            nb = neg(tb)
            return And(
                And(Dia(ta), Box(Imp(ta, tb))),
                And(Dia(nb), Box(Imp(nb, top()))),
            )
        case _:
            kids = children(f)
            new = tuple(to_box_language(k) for k in kids)
            return f if new == kids else _rebuild(f, new)


def to_strict_language(f: Formula) -> Formula:
    """Translate into the strict-implication language.

    box a reads as `top => a`, dia a as `~(top => ~a)`, and `a |> b` as
    possible antecedent plus strictness.  Truth-preserving at every point
    under the primitive clauses.
    """

    def dia_s(g: Formula) -> Formula:
        return neg(Strict(top(), neg(g)))

    match f:
        case Var() | Bot():
            return f
        case Ssi(a, b):
            ta, tb = to_strict_language(a), to_strict_language(b)
            return And(dia_s(ta), Strict(ta, tb))
        case Sssi(a, b):
            ta, tb = to_strict_language(a), to_strict_language(b)
            nb = neg(tb)
            return And(
                And(dia_s(ta), Strict(ta, tb)),
                And(dia_s(nb), Strict(nb, top())),
            )
        case Box(a):
            return Strict(top(), to_strict_language(a))
        case Dia(a):
            return dia_s(to_strict_language(a))
        case _:
            kids = children(f)
            new = tuple(to_strict_language(k) for k in kids)
            return f if new == kids else _rebuild(f, new)


# ---------------------------------------------------------------------------
# parsing


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


@dataclass(frozen=True, slots=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


_KEYWORDS = {"bot", "top", "box", "dia"}
_SYMBOLS = ("||>", "|>", "->", "=>", "(", ")", "&", "|", "~")


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line, col, i = 1, 1, 0
    while i < len(text):
        c = text[i]
        if c == "\n":
            line, col = line + 1, 1
            i += 1
            continue
        if c.isspace():
            col += 1
            i += 1
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            toks.append(_Tok(word if word in _KEYWORDS else "ident", word, line, col))
            col += j - i
            i = j
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                toks.append(_Tok(sym, sym, line, col))
                col += len(sym)
                i += len(sym)
                break
        else:
            raise ParseError(f"unknown token {c!r}", line, col)
    toks.append(_Tok("eof", "", line, col))
    return toks


_ARROW_KINDS: dict[str, type] = {"->": Imp, "=>": Strict, "|>": Ssi, "||>": Sssi}


class _Parser:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.pos = 0

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def take(self) -> _Tok:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def formula(self) -> Formula:
        first = self.disj()
        op = self.peek().kind
        if op not in _ARROW_KINDS:
            return first
        parts = [first]
        while self.peek().kind == op:
            self.take()
            parts.append(self.disj())
            nxt = self.peek()
            if nxt.kind in _ARROW_KINDS and nxt.kind != op:
                raise ParseError(
                    f"cannot mix {op!r} and {nxt.kind!r} without parentheses",
                    nxt.line,
                    nxt.col,
                )
        ctor = _ARROW_KINDS[op]
        result = parts[-1]
        for part in reversed(parts[:-1]):
            result = ctor(part, result)
        return result

    def disj(self) -> Formula:
        left = self.conj()
        if self.peek().kind == "|":
            self.take()
            return Or(left, self.disj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        if self.peek().kind == "&":
            self.take()
            return And(left, self.conj())
        return left

    def unary(self) -> Formula:
        t = self.peek()
        if t.kind == "~":
            self.take()
            return neg(self.unary())
        if t.kind == "box":
            self.take()
            return Box(self.unary())
        if t.kind == "dia":
            self.take()
            return Dia(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        t = self.take()
        if t.kind == "ident":
            return Var(t.text)
        if t.kind == "bot":
            return Bot()
        if t.kind == "top":
            return top()
        if t.kind == "(":
            f = self.formula()
            closing = self.take()
            if closing.kind != ")":
                raise ParseError(
                    f"expected ')', found {closing.text or 'end of input'!r}",
                    closing.line,
                    closing.col,
                )
            return f
        raise ParseError(
            f"expected a formula, found {t.text or 'end of input'!r}", t.line, t.col
        )


def parse(text: str) -> Formula:
    p = _Parser(_tokenize(text))
    f = p.formula()
    t = p.peek()
    if t.kind != "eof":
        raise ParseError(f"unexpected {t.text!r}", t.line, t.col)
    return f


# ---------------------------------------------------------------------------
# printing

_ARROW_TEXT = {Imp: "->", Strict: "=>", Ssi: "|>", Sssi: "||>"}


def pretty(f: Formula) -> str:
    """Minimal-parenthesization concrete syntax; parse(pretty(f)) == f."""
    return _pp(f, 0)


def _pp(f: Formula, need: int) -> str:
    # precedence: atoms 5, prefix 4, & 3, | 2, arrows 1
    match f:
        case Var(name):
            return name
        case Bot():
            return "bot"
        case Imp(Bot(), Bot()):
            return "top"
        case Imp(a, Bot()):
            text, prec = "~" + _pp(a, 4), 4
        case Box(a):
            text, prec = "box " + _pp(a, 4), 4
        case Dia(a):
            text, prec = "dia " + _pp(a, 4), 4
        case And(a, b):
            text, prec = _pp(a, 4) + " & " + _pp(b, 3), 3
        case Or(a, b):
            text, prec = _pp(a, 3) + " | " + _pp(b, 2), 2
        case Imp(a, b) | Strict(a, b) | Ssi(a, b) | Sssi(a, b):
            # a same-operator right operand continues the chain, anything
            # else at arrow level needs parentheses
            right_need = 1 if type(b) is type(f) else 2
            text = _pp(a, 2) + " " + _ARROW_TEXT[type(f)] + " " + _pp(b, right_need)
            prec = 1
        case _:
            raise TypeError(f"not a formula: {f!r}")
    return "(" + text + ")" if prec < need else text


# ---------------------------------------------------------------------------
# JSON form

_OP_NAME = {
    Var: "var",
    Bot: "bot",
    And: "and",
    Or: "or",
    Imp: "imp",
    Ssi: "ssi",
    Sssi: "sssi",
    Box: "box",
    Dia: "dia",
    Strict: "strict",
}
_NAME_OP = {v: k for k, v in _OP_NAME.items()}


def formula_to_json(f: Formula) -> dict:
    if isinstance(f, Var):
        return {"op": "var", "args": [f.name]}
    return {"op": _OP_NAME[type(f)], "args": [formula_to_json(k) for k in children(f)]}


def formula_from_json(data: object) -> Formula:
    if not isinstance(data, dict) or not isinstance(data.get("op"), str):
        raise ValueError("formula JSON must be an object with an 'op' string")
    op = data["op"]
    args = data.get("args", [])
    if not isinstance(args, list):
        raise ValueError("'args' must be a list")
    ctor = _NAME_OP.get(op)
    if ctor is None:
        raise ValueError(f"unknown op {op!r}")
    if ctor is Var:
        if len(args) != 1 or not isinstance(args[0], str):
            raise ValueError("'var' takes one string argument")
        return Var(args[0])
    kids = tuple(formula_from_json(a) for a in args)
    arity = {Bot: 0, Box: 1, Dia: 1}.get(ctor, 2)
    if len(kids) != arity:
        raise ValueError(f"{op!r} takes {arity} arguments, got {len(kids)}")
    return ctor(*kids) if kids else ctor()
