"""Terms, formulas, signatures, theories, and translations between theories.

Everything here is an immutable value: terms and formulas are frozen
dataclasses, so they hash and compare structurally and can be used as
dictionary keys throughout the pipeline.  A signature fixes declaration
order, and that order is what makes term enumeration and all downstream
canonical choices deterministic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Union

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class SignatureError(ValueError):
    """Raised for malformed signatures or symbol/arity violations."""


# ---------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Var:
    name: str

    def __repr__(self) -> str:
        return f"Var({self.name!r})"


@dataclass(frozen=True)
class Const:
    name: str

    def __repr__(self) -> str:
        return f"Const({self.name!r})"


@dataclass(frozen=True)
class App:
    fn: str
    args: tuple[Term, ...]

    # terms are dict keys everywhere and the generated hash walks the
    # whole tree on every call, so compute hash and size once; children
    # are built before parents, making construction linear overall
    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash((self.fn, self.args)))
        object.__setattr__(
            self,
            "_size",
            1 + sum(a._size if isinstance(a, App) else 1 for a in self.args),
        )

    def __hash__(self) -> int:
        return self._hash  # type: ignore[attr-defined]

    def __repr__(self) -> str:
        return f"App({self.fn!r}, {self.args!r})"


Term = Union[Var, Const, App]


def term_depth(t: Term) -> int:
    if isinstance(t, App):
        return 1 + max(term_depth(a) for a in t.args)
    return 0


def term_size(t: Term) -> int:
    """Node count of a term."""
    if isinstance(t, App):
        return t._size  # type: ignore[attr-defined]
    return 1


def subterms(t: Term) -> Iterator[Term]:
    """Yield t and every subterm, parents before children."""
    yield t
    if isinstance(t, App):
        for a in t.args:
            yield from subterms(a)


def term_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, App):
        out: set[str] = set()
        for a in t.args:
            out |= term_vars(a)
        return out
    return set()


def term_is_ground(t: Term) -> bool:
    if isinstance(t, Var):
        return False
    if isinstance(t, App):
        return all(term_is_ground(a) for a in t.args)
    return True


# ---------------------------------------------------------------------------
# formulas


@dataclass(frozen=True)
class Eq:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Pred:
    name: str
    args: tuple[Term, ...]


@dataclass(frozen=True)
class Not:
    body: Formula


@dataclass(frozen=True)
class And:
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Or:
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Implies:
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Forall:
    var: str
    body: Formula


@dataclass(frozen=True)
class Exists:
    var: str
    body: Formula


Formula = Union[Eq, Pred, Not, And, Or, Implies, Forall, Exists]

_BINARY = {And: "&", Or: "|", Implies: "->"}


def formula_size(f: Formula) -> int:
    """Node count: every connective, quantifier, atom node, and term node."""
    if isinstance(f, Eq):
        return 1 + term_size(f.lhs) + term_size(f.rhs)
    if isinstance(f, Pred):
        return 1 + sum(term_size(a) for a in f.args)
    if isinstance(f, Not):
        return 1 + formula_size(f.body)
    if isinstance(f, (And, Or, Implies)):
        return 1 + formula_size(f.lhs) + formula_size(f.rhs)
    if isinstance(f, (Forall, Exists)):
        return 1 + formula_size(f.body)
    raise TypeError(f"not a formula: {f!r}")


def free_vars(f: Formula) -> set[str]:
    if isinstance(f, Eq):
        return term_vars(f.lhs) | term_vars(f.rhs)
    if isinstance(f, Pred):
        out: set[str] = set()
        for a in f.args:
            out |= term_vars(a)
        return out
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or, Implies)):
        return free_vars(f.lhs) | free_vars(f.rhs)
    if isinstance(f, (Forall, Exists)):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def is_sentence(f: Formula) -> bool:
    return not free_vars(f)


def substitute_term(t: Term, var: str, value: Term) -> Term:
    if isinstance(t, Var):
        return value if t.name == var else t
    if isinstance(t, App):
        new_args = tuple(substitute_term(a, var, value) for a in t.args)
        if all(n is o for n, o in zip(new_args, t.args)):
            return t  # untouched subtrees stay shared
        return App(t.fn, new_args)
    return t


def _fresh_name(base: str, taken: set[str]) -> str:
    i = 0
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


def substitute(f: Formula, var: str, value: Term) -> Formula:
    """Replace free occurrences of var by value, renaming binders that
    would capture a variable of value."""
    if isinstance(f, Eq):
        return Eq(substitute_term(f.lhs, var, value), substitute_term(f.rhs, var, value))
    if isinstance(f, Pred):
        return Pred(f.name, tuple(substitute_term(a, var, value) for a in f.args))
    if isinstance(f, Not):
        return Not(substitute(f.body, var, value))
    if isinstance(f, (And, Or, Implies)):
        return type(f)(substitute(f.lhs, var, value), substitute(f.rhs, var, value))
    if isinstance(f, (Forall, Exists)):
        if f.var == var:
            return f
        if f.var in term_vars(value) and var in free_vars(f.body):
            taken = free_vars(f.body) | term_vars(value) | {var}
            renamed = _fresh_name(f.var, taken)
            body = substitute(f.body, f.var, Var(renamed))
            return type(f)(renamed, substitute(body, var, value))
        return type(f)(f.var, substitute(f.body, var, value))
    raise TypeError(f"not a formula: {f!r}")


def alpha_key(f: Formula, _bound: dict[str, int] | None = None) -> object:
    """Structure key invariant under renaming of bound variables.

    Bound variables are numbered by binder nesting depth, so two formulas
    get the same key exactly when they differ only in binder names.
    """
    bound = _bound or {}
    if isinstance(f, Eq):
        return ("=", _alpha_term(f.lhs, bound), _alpha_term(f.rhs, bound))
    if isinstance(f, Pred):
        return ("P", f.name, tuple(_alpha_term(a, bound) for a in f.args))
    if isinstance(f, Not):
        return ("~", alpha_key(f.body, bound))
    if isinstance(f, (And, Or, Implies)):
        return (_BINARY[type(f)], alpha_key(f.lhs, bound), alpha_key(f.rhs, bound))
    if isinstance(f, (Forall, Exists)):
        tag = "A" if isinstance(f, Forall) else "E"
        inner = dict(bound)
        inner[f.var] = len(bound)
        return (tag, alpha_key(f.body, inner))
    raise TypeError(f"not a formula: {f!r}")


def _alpha_term(t: Term, bound: dict[str, int]) -> object:
    if isinstance(t, Var):
        return ("v", bound.get(t.name, t.name))
    if isinstance(t, Const):
        return ("c", t.name)
    return ("f", t.fn, tuple(_alpha_term(a, bound) for a in t.args))


def alpha_equal(f: Formula, g: Formula) -> bool:
    return alpha_key(f) == alpha_key(g)


# ---------------------------------------------------------------------------
# signatures


@dataclass(frozen=True)
class Signature:
    """Constants, functions, and predicates in declaration order.

    Declaration order is part of the value: it fixes the canonical term
    order and with it every enumeration in the pipeline.
    """

    constants: tuple[str, ...] = ()
    functions: tuple[tuple[str, int], ...] = ()
    predicates: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for name in self.constants:
            self._check_name(name, seen)
        for name, arity in self.functions:
            self._check_name(name, seen)
            if arity < 1:
                raise SignatureError(f"function {name} needs arity >= 1")
        for name, arity in self.predicates:
            self._check_name(name, seen)
            if arity < 1:
                raise SignatureError(f"predicate {name} needs arity >= 1")

    @staticmethod
    def _check_name(name: str, seen: set[str]) -> None:
        if not _NAME_RE.match(name):
            raise SignatureError(f"bad symbol name: {name!r}")
        if name in seen:
            raise SignatureError(f"duplicate symbol: {name}")
        seen.add(name)

    def const_index(self, name: str) -> int:
        try:
            return self.constants.index(name)
        except ValueError:
            raise SignatureError(f"undeclared constant: {name}") from None

    def fn_index(self, name: str) -> int:
        for i, (n, _) in enumerate(self.functions):
            if n == name:
                return i
        raise SignatureError(f"undeclared function: {name}")

    def fn_arity(self, name: str) -> int:
        return self.functions[self.fn_index(name)][1]

    def pred_arity(self, name: str) -> int:
        for n, a in self.predicates:
            if n == name:
                return a
        raise SignatureError(f"undeclared predicate: {name}")

    def declares(self, name: str) -> bool:
        return (
            name in self.constants
            or any(n == name for n, _ in self.functions)
            or any(n == name for n, _ in self.predicates)
        )

    def with_constants(self, extra: tuple[str, ...]) -> Signature:
        """Extend with fresh constants appended after the existing ones."""
        return Signature(self.constants + extra, self.functions, self.predicates)


def term_key(sig: Signature, t: Term) -> tuple:
    """Sort key for the canonical term order: depth first, then head
    declaration index, then children lexicographically.  Variables sort
    before constants at depth zero."""
    return (term_depth(t), _rank(sig, t))


def _rank(sig: Signature, t: Term) -> tuple:
    if isinstance(t, Var):
        return (0, t.name)
    if isinstance(t, Const):
        return (1, sig.const_index(t.name))
    return (2, sig.fn_index(t.fn)) + tuple(_rank(sig, a) for a in t.args)


def validate_term(sig: Signature, t: Term, bound: set[str]) -> None:
    if isinstance(t, Var):
        if t.name not in bound:
            raise SignatureError(f"unbound variable: {t.name}")
    elif isinstance(t, Const):
        sig.const_index(t.name)
    else:
        arity = sig.fn_arity(t.fn)
        if len(t.args) != arity:
            raise SignatureError(f"{t.fn} expects {arity} arguments, got {len(t.args)}")
        for a in t.args:
            validate_term(sig, a, bound)


def validate_formula(sig: Signature, f: Formula, bound: set[str] | None = None) -> None:
    """Check declarations, arities, and binder hygiene under sig."""
    bound = bound if bound is not None else set()
    if isinstance(f, Eq):
        validate_term(sig, f.lhs, bound)
        validate_term(sig, f.rhs, bound)
    elif isinstance(f, Pred):
        arity = sig.pred_arity(f.name)
        if len(f.args) != arity:
            raise SignatureError(f"{f.name} expects {arity} arguments, got {len(f.args)}")
        for a in f.args:
            validate_term(sig, a, bound)
    elif isinstance(f, Not):
        validate_formula(sig, f.body, bound)
    elif isinstance(f, (And, Or, Implies)):
        validate_formula(sig, f.lhs, bound)
        validate_formula(sig, f.rhs, bound)
    elif isinstance(f, (Forall, Exists)):
        if sig.declares(f.var):
            raise SignatureError(f"bound variable {f.var} shadows a declared symbol")
        validate_formula(sig, f.body, bound | {f.var})
    else:
        raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# theories


@dataclass(frozen=True)
class Theory:
    name: str
    signature: Signature
    axioms: tuple[Formula, ...] = ()

    def __post_init__(self) -> None:
        if not _NAME_RE.match(self.name):
            raise SignatureError(f"bad theory name: {self.name!r}")
        for ax in self.axioms:
            validate_formula(self.signature, ax)
            if free_vars(ax):
                raise SignatureError(f"axiom is not a sentence: {format_formula(ax)}")


# ---------------------------------------------------------------------------
# formatting (inverse of the parser grammar)


def format_term(t: Term) -> str:
    if isinstance(t, (Var, Const)):
        return t.name
    return f"{t.fn}({', '.join(format_term(a) for a in t.args)})"


# precedence: -> lowest, then |, &, ~; atoms and quantified bodies bind tightest
_PREC = {Implies: 1, Or: 2, And: 3, Not: 4}


def format_formula(f: Formula) -> str:
    return _fmt(f, 0)


def _fmt(f: Formula, parent: int) -> str:
    if isinstance(f, Eq):
        return f"{format_term(f.lhs)} = {format_term(f.rhs)}"
    if isinstance(f, Pred):
        return f"{f.name}({', '.join(format_term(a) for a in f.args)})"
    if isinstance(f, Not):
        if isinstance(f.body, Eq):
            return f"~({_fmt(f.body, 0)})"
        return f"~{_fmt(f.body, _PREC[Not])}"
    if isinstance(f, (And, Or, Implies)):
        prec = _PREC[type(f)]
        op = _BINARY[type(f)]
        # right-associative ->, left operand needs the tighter level
        left = _fmt(f.lhs, prec + (1 if isinstance(f, Implies) else 0))
        right = _fmt(f.rhs, prec if isinstance(f, Implies) else prec + 1)
        text = f"{left} {op} {right}"
        return f"({text})" if prec < parent else text
    if isinstance(f, (Forall, Exists)):
        q = "forall" if isinstance(f, Forall) else "exists"
        text = f"{q} {f.var}. {_fmt(f.body, 0)}"
        return f"({text})" if parent > 0 else text
    raise TypeError(f"not a formula: {f!r}")


def format_theory(t: Theory) -> str:
    lines = [f"theory {t.name}"]
    for c in t.signature.constants:
        lines.append(f"const {c}")
    for n, a in t.signature.functions:
        lines.append(f"fn {n}/{a}")
    for n, a in t.signature.predicates:
        lines.append(f"pred {n}/{a}")
    for ax in t.axioms:
        lines.append(f"axiom {format_formula(ax)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# translations


class TranslationError(ValueError):
    """Raised for non-total, arity-breaking, or mistargeted symbol maps."""


@dataclass(frozen=True)
class TheoryTranslation:
    """Symbol-to-symbol map between theories, arity-preserving and total
    on the source signature."""

    name: str
    source: Theory
    target: Theory
    const_map: tuple[tuple[str, str], ...] = ()
    fn_map: tuple[tuple[str, str], ...] = ()
    pred_map: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        src, tgt = self.source.signature, self.target.signature
        cmap, fmap, pmap = dict(self.const_map), dict(self.fn_map), dict(self.pred_map)
        for c in src.constants:
            if c not in cmap:
                raise TranslationError(f"unmapped constant: {c}")
            tgt.const_index(cmap[c])
        for n, a in src.functions:
            if n not in fmap:
                raise TranslationError(f"unmapped function: {n}")
            if tgt.fn_arity(fmap[n]) != a:
                raise TranslationError(f"arity mismatch mapping {n} to {fmap[n]}")
        for n, a in src.predicates:
            if n not in pmap:
                raise TranslationError(f"unmapped predicate: {n}")
            if tgt.pred_arity(pmap[n]) != a:
                raise TranslationError(f"arity mismatch mapping {n} to {pmap[n]}")
        for extra in set(cmap) - set(src.constants):
            raise TranslationError(f"map names undeclared source symbol: {extra}")

    def map_const(self, name: str) -> str:
        return dict(self.const_map)[name]

    def term(self, t: Term) -> Term:
        cmap, fmap = dict(self.const_map), dict(self.fn_map)
        return self._term(t, cmap, fmap)

    def _term(self, t: Term, cmap: dict[str, str], fmap: dict[str, str]) -> Term:
        if isinstance(t, Var):
            return t
        if isinstance(t, Const):
            return Const(cmap[t.name])
        return App(fmap[t.fn], tuple(self._term(a, cmap, fmap) for a in t.args))

    def formula(self, f: Formula) -> Formula:
        if isinstance(f, Eq):
            return Eq(self.term(f.lhs), self.term(f.rhs))
        if isinstance(f, Pred):
            return Pred(dict(self.pred_map)[f.name], tuple(self.term(a) for a in f.args))
        if isinstance(f, Not):
            return Not(self.formula(f.body))
        if isinstance(f, (And, Or, Implies)):
            return type(f)(self.formula(f.lhs), self.formula(f.rhs))
        if isinstance(f, (Forall, Exists)):
            return type(f)(f.var, self.formula(f.body))
        raise TypeError(f"not a formula: {f!r}")

    def obligations(self) -> tuple[Formula, ...]:
        """Translated source axioms; each must be provable in the target."""
        return tuple(self.formula(ax) for ax in self.source.axioms)


def identity_translation(t: Theory) -> TheoryTranslation:
    sig = t.signature
    return TheoryTranslation(
        name=f"id_{t.name}",
        source=t,
        target=t,
        const_map=tuple((c, c) for c in sig.constants),
        fn_map=tuple((n, n) for n, _ in sig.functions),
        pred_map=tuple((n, n) for n, _ in sig.predicates),
    )


def compose_translations(outer: TheoryTranslation, inner: TheoryTranslation) -> TheoryTranslation:
    """outer after inner; inner.target must be outer.source."""
    if inner.target.signature != outer.source.signature:
        raise TranslationError(
            f"cannot compose {outer.name} after {inner.name}: signature mismatch"
        )
    oc, of, op = dict(outer.const_map), dict(outer.fn_map), dict(outer.pred_map)
    return TheoryTranslation(
        name=f"{outer.name}_after_{inner.name}",
        source=inner.source,
        target=outer.target,
        const_map=tuple((a, oc[b]) for a, b in inner.const_map),
        fn_map=tuple((a, of[b]) for a, b in inner.fn_map),
        pred_map=tuple((a, op[b]) for a, b in inner.pred_map),
    )


def format_translation(tr: TheoryTranslation) -> str:
    lines = [f"translation {tr.name} : {tr.source.name} -> {tr.target.name}"]
    for a, b in tr.const_map + tr.fn_map + tr.pred_map:
        lines.append(f"map {a} -> {b}")
    return "\n".join(lines) + "\n"
