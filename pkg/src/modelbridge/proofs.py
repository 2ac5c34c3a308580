"""Budgeted refutation prover and ground instantiation.

prove(T, goal) attempts to close a tableau for the axioms plus the
negated goal; when that fails within budget it tries the axioms plus the
goal, so the verdict is three-valued: proved, refuted, or unknown with
the budget spent.  Sound, not complete: a closed tableau is a real
proof, an open one proves nothing.

Branches close through congruence closure over their equality literals,
so no paramodulation is attempted.  Universal formulas are instantiated
fairly, oldest first, over the ground terms seen on the branch; witness
constants introduced for existentials join that pool.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .closure import CongruenceEngine
from .enumeration import ground_terms_capped
from .syntax import (
    And,
    Const,
    Eq,
    Exists,
    Forall,
    Formula,
    Implies,
    Not,
    Or,
    Pred,
    Term,
    Theory,
    alpha_key,
    is_sentence,
    substitute,
    subterms,
    term_is_ground,
)


@dataclass(frozen=True)
class Verdict:
    status: str  # proved | refuted | unknown
    steps: int

    @property
    def is_proved(self) -> bool:
        return self.status == "proved"

    @property
    def is_refuted(self) -> bool:
        return self.status == "refuted"

    @property
    def is_unknown(self) -> bool:
        return self.status == "unknown"


def has_quantifier(f: Formula) -> bool:
    if isinstance(f, (Forall, Exists)):
        return True
    if isinstance(f, Not):
        return has_quantifier(f.body)
    if isinstance(f, (And, Or, Implies)):
        return has_quantifier(f.lhs) or has_quantifier(f.rhs)
    return False


def strip_forall(f: Formula) -> tuple[list[str], Formula]:
    prefix: list[str] = []
    while isinstance(f, Forall):
        prefix.append(f.var)
        f = f.body
    return prefix, f


def ground_instantiate(
    axioms: tuple[Formula, ...] | list[Formula],
    terms: list[Term],
    var_bound: int,
) -> tuple[list[Formula], list[Formula]]:
    """All instantiations of prenex-universal axioms over the given terms.

    Returns (instances, skipped): an axiom is skipped when its matrix
    still contains a quantifier or when its prefix exceeds var_bound.
    Order is deterministic: axioms outermost, argument tuples in the
    lexicographic order of the term list.
    """
    instances: list[Formula] = []
    skipped: list[Formula] = []
    for ax in axioms:
        prefix, body = strip_forall(ax)
        if has_quantifier(body) or len(prefix) > var_bound:
            skipped.append(ax)
            continue
        if not prefix:
            instances.append(body)
            continue
        # substitute outermost variables first and share the partial
        # results across the inner loops; same lexicographic order as
        # iterating product(terms, repeat=len(prefix))
        layer = [body]
        for var in prefix:
            layer = [substitute(f, var, value) for f in layer for value in terms]
        instances.extend(layer)
    return instances, skipped


def _nnf(f: Formula, negated: bool) -> Formula:
    if isinstance(f, (Eq, Pred)):
        return Not(f) if negated else f
    if isinstance(f, Not):
        return _nnf(f.body, not negated)
    if isinstance(f, And):
        pair = (_nnf(f.lhs, negated), _nnf(f.rhs, negated))
        return Or(*pair) if negated else And(*pair)
    if isinstance(f, Or):
        pair = (_nnf(f.lhs, negated), _nnf(f.rhs, negated))
        return And(*pair) if negated else Or(*pair)
    if isinstance(f, Implies):
        if negated:
            return And(_nnf(f.lhs, False), _nnf(f.rhs, True))
        return Or(_nnf(f.lhs, True), _nnf(f.rhs, False))
    if isinstance(f, Forall):
        body = _nnf(f.body, negated)
        return Exists(f.var, body) if negated else Forall(f.var, body)
    if isinstance(f, Exists):
        body = _nnf(f.body, negated)
        return Forall(f.var, body) if negated else Exists(f.var, body)
    raise TypeError(f"not a formula: {f!r}")


class _Branch:
    __slots__ = ("queue", "eqs", "diseqs", "pos", "neg", "pool", "pool_set", "seen", "engine")

    def __init__(self) -> None:
        self.queue: deque = deque()
        self.eqs: list[tuple[Term, Term]] = []
        self.diseqs: list[tuple[Term, Term]] = []
        self.pos: list[Pred] = []
        self.neg: list[Pred] = []
        self.pool: list[Term] = []
        self.pool_set: set[Term] = set()
        self.seen: set[Formula] = set()
        self.engine: CongruenceEngine | None = None

    def clone(self) -> "_Branch":
        b = _Branch()
        b.queue = deque(self.queue)
        b.eqs = list(self.eqs)
        b.diseqs = list(self.diseqs)
        b.pos = list(self.pos)
        b.neg = list(self.neg)
        b.pool = list(self.pool)
        b.pool_set = set(self.pool_set)
        b.seen = set(self.seen)
        b.engine = None  # rebuilt on demand from the literal lists
        return b

    def ensure_engine(self) -> CongruenceEngine:
        if self.engine is None:
            e = CongruenceEngine()
            for l, r in self.eqs:
                e.merge(l, r)
            for l, r in self.diseqs:
                e.add_term(l)
                e.add_term(r)
            for atom in self.pos + self.neg:
                for a in atom.args:
                    e.add_term(a)
            self.engine = e
        return self.engine

    def add_pool_terms(self, t: Term) -> None:
        for s in subterms(t):
            if term_is_ground(s) and s not in self.pool_set:
                self.pool_set.add(s)
                self.pool.append(s)

    def is_closed(self) -> bool:
        e = self.ensure_engine()
        for l, r in self.diseqs:
            if e.same(l, r):
                return True
        for p in self.pos:
            for q in self.neg:
                if p.name == q.name and all(e.same(a, b) for a, b in zip(p.args, q.args)):
                    return True
        return False


class _Tableau:
    def __init__(self, axioms: list[Formula], budget: int):
        self.budget = budget
        self.steps = 0
        self.sk_counter = 0
        root = _Branch()
        for ax in axioms:
            root.queue.append(("f", _nnf(ax, False)))
        self.branches: list[_Branch] = [root]

    def fresh_const(self, sig_names: set[str]) -> Const:
        while True:
            name = f"_sk{self.sk_counter}"
            self.sk_counter += 1
            if name not in sig_names:
                return Const(name)

    def run(self, sig_names: set[str]) -> bool:
        """True when every branch closes within budget."""
        while self.branches:
            if self.steps >= self.budget:
                return False
            b = self.branches[0]
            if not b.queue:
                return False  # saturated open branch
            if self._stalled(b):
                return False
            self.steps += 1
            kind = b.queue[0][0]
            if kind == "f":
                _, f = b.queue.popleft()
                self._dispatch(b, f, sig_names)
            else:
                _, f, cursor = b.queue.popleft()
                self._gamma(b, f, cursor, sig_names)
            if b.is_closed():
                self.branches.pop(0)
        return True

    def _stalled(self, b: _Branch) -> bool:
        """All queue entries are universals waiting on a pool that can no
        longer grow; no rule can make progress, the branch stays open."""
        if not b.pool:
            return False  # the gamma rule will seed a fresh constant
        for entry in b.queue:
            if entry[0] != "g" or entry[2] < len(b.pool):
                return False
        return bool(b.queue)

    def _dispatch(self, b: _Branch, f: Formula, sig_names: set[str]) -> None:
        if isinstance(f, And):
            b.queue.append(("f", f.lhs))
            b.queue.append(("f", f.rhs))
        elif isinstance(f, Or):
            other = b.clone()
            b.queue.append(("f", f.lhs))
            other.queue.append(("f", f.rhs))
            self.branches.insert(self.branches.index(b) + 1, other)
        elif isinstance(f, Exists):
            c = self.fresh_const(sig_names)
            b.queue.append(("f", substitute(f.body, f.var, c)))
            b.add_pool_terms(c)
        elif isinstance(f, Forall):
            b.queue.append(("g", f, 0))
        else:
            self._literal(b, f)

    def _gamma(self, b: _Branch, f: Forall, cursor: int, sig_names: set[str]) -> None:
        if cursor >= len(b.pool):
            if not b.pool:
                b.add_pool_terms(self.fresh_const(sig_names))
            b.queue.append(("g", f, cursor))
            return
        inst = substitute(f.body, f.var, b.pool[cursor])
        if inst not in b.seen:
            b.seen.add(inst)
            b.queue.append(("f", inst))
        b.queue.append(("g", f, cursor + 1))

    def _literal(self, b: _Branch, f: Formula) -> None:
        e = b.ensure_engine()
        if isinstance(f, Eq):
            b.eqs.append((f.lhs, f.rhs))
            e.merge(f.lhs, f.rhs)
            b.add_pool_terms(f.lhs)
            b.add_pool_terms(f.rhs)
        elif isinstance(f, Not) and isinstance(f.body, Eq):
            b.diseqs.append((f.body.lhs, f.body.rhs))
            e.add_term(f.body.lhs)
            e.add_term(f.body.rhs)
            b.add_pool_terms(f.body.lhs)
            b.add_pool_terms(f.body.rhs)
        elif isinstance(f, Pred):
            b.pos.append(f)
            for a in f.args:
                e.add_term(a)
                b.add_pool_terms(a)
        elif isinstance(f, Not) and isinstance(f.body, Pred):
            b.neg.append(f.body)
            for a in f.body.args:
                e.add_term(a)
                b.add_pool_terms(a)
        else:
            raise TypeError(f"not a literal after NNF: {f!r}")


def _close_tableau(axioms: list[Formula], budget: int, sig_names: set[str]) -> tuple[bool, int]:
    tab = _Tableau(axioms, budget)
    closed = tab.run(sig_names)
    return closed, tab.steps


def axioms_close(theory: Theory, budget: int) -> bool:
    """True when the tableau closes on the axioms alone, meaning the
    theory has no model at any size.  False only says the budget ran out
    or a branch saturated open; it is not a consistency certificate.

    This is the right inconsistency test: asking prove() about a
    tautology is useless here, because an inconsistent theory proves the
    tautology too.
    """
    sig_names = set(theory.signature.constants)
    closed, _ = _close_tableau(list(theory.axioms), budget, sig_names)
    return closed


def prove(theory: Theory, goal: Formula, budget: int) -> Verdict:
    """Three-valued provability of a sentence from the theory axioms.

    A goal that is one of the axioms up to bound renaming is proved in
    zero steps; everything else goes through the tableau, trying to
    close against the negated goal and then against the goal itself.
    """
    if not is_sentence(goal):
        raise ValueError("goal must be a sentence")
    if budget < 0:
        raise ValueError("budget must be >= 0")
    if alpha_key(goal) in {alpha_key(a) for a in theory.axioms}:
        return Verdict("proved", 0)
    sig_names = set(theory.signature.constants)
    axioms = list(theory.axioms)
    closed, s1 = _close_tableau(axioms + [Not(goal)], budget, sig_names)
    if closed:
        return Verdict("proved", s1)
    closed, s2 = _close_tableau(axioms + [goal], budget, sig_names)
    if closed:
        return Verdict("refuted", s1 + s2)
    return Verdict("unknown", s1 + s2)


def prove_equal(
    theory: Theory,
    lhs: Term,
    rhs: Term,
    depth: int = 2,
    budget: int = 2000,
    inst_cap: int = 16,
) -> Verdict:
    """Equational fast path, then the tableau.

    Instantiates the universally quantified equations of the theory over
    a small canonical term prefix, closes under congruence, and reads the
    answer off the classes; congruence propagates the result to deeper
    terms than the instantiation touched.  Falls back to prove() when
    closure neither equates nor separates the pair.
    """
    if not (term_is_ground(lhs) and term_is_ground(rhs)):
        raise ValueError("prove_equal needs ground terms")
    inst_terms = ground_terms_capped(theory.signature, depth, inst_cap)
    instances, _ = ground_instantiate(theory.axioms, inst_terms, var_bound=3)
    engine = CongruenceEngine()
    diseqs: list[tuple[Term, Term]] = []
    for f in instances:
        if isinstance(f, Eq):
            engine.merge(f.lhs, f.rhs)
        elif isinstance(f, Not) and isinstance(f.body, Eq):
            diseqs.append((f.body.lhs, f.body.rhs))
    engine.add_term(lhs)
    engine.add_term(rhs)
    if engine.same(lhs, rhs):
        return Verdict("proved", 0)
    for l, r in diseqs:
        engine.add_term(l)
        engine.add_term(r)
        if (engine.same(lhs, l) and engine.same(rhs, r)) or (
            engine.same(lhs, r) and engine.same(rhs, l)
        ):
            return Verdict("refuted", 0)
    return prove(theory, Eq(lhs, rhs), budget)
