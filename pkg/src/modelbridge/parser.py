"""Line-oriented reader for theory and translation files.

Theory files:

    theory Z2
    const e
    const a
    fn mul/2
    axiom forall x. mul(e, x) = x
    # comments run to end of line

Formulas use ``forall x. ...``, ``exists x. ...``, ``~``, ``&``, ``|``,
``->``, ``=``, and function application ``f(t1, t2)``.  ``->`` is
right-associative and binds loosest; ``~`` binds tightest; a quantifier
body extends as far right as possible.

Translation files:

    translation MonToZ2 : Monoid -> Z2
    map e -> e
    map mul -> mul
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    And,
    App,
    Const,
    Eq,
    Exists,
    Forall,
    Formula,
    Implies,
    Not,
    Or,
    Pred,
    Signature,
    SignatureError,
    Term,
    Theory,
    TheoryTranslation,
    Var,
)


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int = 0):
        super().__init__(f"line {line}, col {col}: {msg}")
        self.line = line
        self.col = col


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<num>\d+)|(?P<arrow>->)"
    r"|(?P<sym>[(),.=~&|/]))"
)

_KEYWORDS = {"forall", "exists"}


@dataclass(frozen=True)
class _Tok:
    kind: str  # name | num | arrow | ( ) , . = ~ & | / | end
    text: str
    col: int


def _tokenize(text: str, line: int) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
        if m.group("name"):
            toks.append(_Tok("name", m.group("name"), m.start("name") + 1))
        elif m.group("num"):
            toks.append(_Tok("num", m.group("num"), m.start("num") + 1))
        elif m.group("arrow"):
            toks.append(_Tok("arrow", "->", m.start("arrow") + 1))
        else:
            toks.append(_Tok(m.group("sym"), m.group("sym"), m.start("sym") + 1))
        pos = m.end()
    toks.append(_Tok("end", "", len(text) + 1))
    return toks


class _FormulaParser:
    def __init__(self, sig: Signature, toks: list[_Tok], line: int):
        self.sig = sig
        self.toks = toks
        self.line = line
        self.i = 0
        self.bound: list[str] = []

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind: str) -> _Tok:
        t = self.take()
        if t.kind != kind:
            raise ParseError(f"expected {kind!r}, found {t.text or 'end of line'!r}", self.line, t.col)
        return t

    def fail(self, msg: str) -> ParseError:
        return ParseError(msg, self.line, self.peek().col)

    def parse(self) -> Formula:
        f = self.implies()
        if self.peek().kind != "end":
            raise self.fail(f"trailing input {self.peek().text!r}")
        return f

    def implies(self) -> Formula:
        left = self.disjunct()
        if self.peek().kind == "arrow":
            self.take()
            return Implies(left, self.implies())
        return left

    def disjunct(self) -> Formula:
        f = self.conjunct()
        while self.peek().kind == "|":
            self.take()
            f = Or(f, self.conjunct())
        return f

    def conjunct(self) -> Formula:
        f = self.unary()
        while self.peek().kind == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        t = self.peek()
        if t.kind == "~":
            self.take()
            return Not(self.unary())
        if t.kind == "name" and t.text in _KEYWORDS:
            self.take()
            var = self.expect("name")
            if var.text in _KEYWORDS:
                raise ParseError(f"{var.text!r} cannot be a variable", self.line, var.col)
            if self.sig.declares(var.text):
                raise ParseError(
                    f"bound variable {var.text} shadows a declared symbol", self.line, var.col
                )
            self.expect(".")
            self.bound.append(var.text)
            body = self.implies()
            self.bound.pop()
            return Forall(var.text, body) if t.text == "forall" else Exists(var.text, body)
        return self.atom()

    def atom(self) -> Formula:
        t = self.peek()
        if t.kind == "(":
            self.take()
            f = self.implies()
            self.expect(")")
            return f
        if t.kind != "name":
            raise self.fail(f"expected a formula, found {t.text or 'end of line'!r}")
        is_pred = any(n == t.text for n, _ in self.sig.predicates)
        if is_pred:
            name = self.take()
            args = self.arg_list()
            arity = self.sig.pred_arity(name.text)
            if len(args) != arity:
                raise ParseError(
                    f"{name.text} expects {arity} arguments, got {len(args)}", self.line, name.col
                )
            return Pred(name.text, args)
        lhs = self.term()
        self.expect("=")
        return Eq(lhs, self.term())

    def arg_list(self) -> tuple[Term, ...]:
        self.expect("(")
        args = [self.term()]
        while self.peek().kind == ",":
            self.take()
            args.append(self.term())
        self.expect(")")
        return tuple(args)

    def term(self) -> Term:
        t = self.expect("name")
        if t.text in _KEYWORDS:
            raise ParseError("quantifier not allowed inside a term", self.line, t.col)
        if any(n == t.text for n, _ in self.sig.functions):
            args = self.arg_list()
            arity = self.sig.fn_arity(t.text)
            if len(args) != arity:
                raise ParseError(
                    f"{t.text} expects {arity} arguments, got {len(args)}", self.line, t.col
                )
            return App(t.text, args)
        if t.text in self.bound:
            return Var(t.text)
        if t.text in self.sig.constants:
            return Const(t.text)
        raise ParseError(f"undeclared symbol: {t.text}", self.line, t.col)


def parse_formula(sig: Signature, text: str, line: int = 1) -> Formula:
    return _FormulaParser(sig, _tokenize(text, line), line).parse()


def _strip_comment(line: str) -> str:
    idx = line.find("#")
    return line if idx < 0 else line[:idx]


def _significant_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        stripped = _strip_comment(raw).strip()
        if stripped:
            out.append((no, stripped))
    return out


_DECL_RE = re.compile(r"(fn|pred)\s+([A-Za-z_][A-Za-z0-9_]*)\s*/\s*(\d+)\Z")


def parse_theory(text: str) -> Theory:
    lines = _significant_lines(text)
    if not lines or not lines[0][1].startswith("theory"):
        raise ParseError("file must start with a 'theory <Name>' line", lines[0][0] if lines else 1)

    name = ""
    constants: list[str] = []
    functions: list[tuple[str, int]] = []
    predicates: list[tuple[str, int]] = []
    axiom_lines: list[tuple[int, str]] = []

    for no, line in lines:
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if word == "theory":
            if name:
                raise ParseError("duplicate 'theory' line", no)
            if not rest or " " in rest:
                raise ParseError("expected 'theory <Name>'", no)
            name = rest
        elif word == "const":
            if not rest or " " in rest:
                raise ParseError("expected 'const <name>'", no)
            constants.append(rest)
        elif word in ("fn", "pred"):
            m = _DECL_RE.match(line)
            if not m:
                raise ParseError(f"expected '{word} <name>/<arity>'", no)
            entry = (m.group(2), int(m.group(3)))
            (functions if word == "fn" else predicates).append(entry)
        elif word == "axiom":
            if not rest:
                raise ParseError("empty axiom", no)
            axiom_lines.append((no, rest))
        else:
            raise ParseError(f"unknown directive {word!r}", no)

    try:
        sig = Signature(tuple(constants), tuple(functions), tuple(predicates))
    except SignatureError as e:
        raise ParseError(str(e), lines[0][0]) from e

    axioms = tuple(parse_formula(sig, src, line=no) for no, src in axiom_lines)
    return Theory(name=name, signature=sig, axioms=axioms)


_TRANS_HEADER_RE = re.compile(
    r"translation\s+([A-Za-z_][A-Za-z0-9_]*)\s*:\s*([A-Za-z_][A-Za-z0-9_]*)"
    r"\s*->\s*([A-Za-z_][A-Za-z0-9_]*)\Z"
)
_MAP_RE = re.compile(r"map\s+([A-Za-z_][A-Za-z0-9_]*)\s*->\s*([A-Za-z_][A-Za-z0-9_]*)\Z")


def parse_translation(text: str, source: Theory, target: Theory) -> TheoryTranslation:
    """Parse map lines and classify each by the source namespace it names.

    Totality and arity preservation are enforced by TheoryTranslation.
    """
    lines = _significant_lines(text)
    if not lines:
        raise ParseError("empty translation file", 1)
    m = _TRANS_HEADER_RE.match(lines[0][1])
    if not m:
        raise ParseError("expected 'translation <Name> : <Src> -> <Tgt>'", lines[0][0])
    name, src_name, tgt_name = m.groups()
    if src_name != source.name or tgt_name != target.name:
        raise ParseError(
            f"header names {src_name} -> {tgt_name}, expected {source.name} -> {target.name}",
            lines[0][0],
        )

    const_map: list[tuple[str, str]] = []
    fn_map: list[tuple[str, str]] = []
    pred_map: list[tuple[str, str]] = []
    sig = source.signature
    for no, line in lines[1:]:
        mm = _MAP_RE.match(line)
        if not mm:
            raise ParseError("expected 'map <sym> -> <sym>'", no)
        a, b = mm.groups()
        if a in sig.constants:
            const_map.append((a, b))
        elif any(n == a for n, _ in sig.functions):
            fn_map.append((a, b))
        elif any(n == a for n, _ in sig.predicates):
            pred_map.append((a, b))
        else:
            raise ParseError(f"map names undeclared source symbol: {a}", no)

    return TheoryTranslation(
        name=name,
        source=source,
        target=target,
        const_map=tuple(const_map),
        fn_map=tuple(fn_map),
        pred_map=tuple(pred_map),
    )
