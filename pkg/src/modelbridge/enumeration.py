"""Deterministic enumeration of ground terms and candidate sentences.

Ground terms come out in the canonical order: depth first, then head
symbol by declaration, then arguments lexicographically.  The order is
prefix-stable: raising the depth bound or the cap only appends.

Sentence enumeration feeds witness introduction and completion, so its
order is a contract, not a convenience.  Groups appear in this order:

1. ground equalities ``t = s`` with t canonically at most s,
2. ground predicate atoms,
3. universally quantified atomic sentences over depth-zero arguments,
4. the same matrices existentially quantified.

Within each group, smaller sentences come first, ties broken by the
canonical order of the participating terms.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator

from .syntax import (
    App,
    Const,
    Eq,
    Exists,
    Forall,
    Formula,
    Pred,
    Signature,
    Term,
    Var,
    formula_size,
    term_key,
    term_size,
)


def iter_ground_terms(sig: Signature) -> Iterator[tuple[Term, int]]:
    """Lazily yield (term, depth) pairs in canonical order.

    Runs forever when the signature has functions and at least one
    constant; consumers stop by depth or by count.
    """
    level: list[Term] = [Const(c) for c in sig.constants]
    depth_of: dict[Term, int] = {t: 0 for t in level}
    for t in level:
        yield t, 0
    pool: list[Term] = list(level)
    d = 0
    while sig.functions and level:
        d += 1
        nxt: list[Term] = []
        for fn, arity in sig.functions:
            for args in product(pool, repeat=arity):
                if max(depth_of[a] for a in args) != d - 1:
                    continue
                t = App(fn, args)
                depth_of[t] = d
                nxt.append(t)
                yield t, d
        pool = pool + nxt
        level = nxt


def enumerate_ground_terms(sig: Signature, depth: int) -> list[Term]:
    """All ground terms of depth at most depth, in canonical order."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    out: list[Term] = []
    for t, d in iter_ground_terms(sig):
        if d > depth:
            break
        out.append(t)
    return out


def ground_terms_capped(sig: Signature, depth: int, cap: int) -> list[Term]:
    """Canonical-order prefix of the depth-bounded term list, at most cap
    terms.  The prefix is subterm-closed: arguments precede applications."""
    if cap < 0:
        raise ValueError("cap must be >= 0")
    out: list[Term] = []
    for t, d in iter_ground_terms(sig):
        if d > depth or len(out) >= cap:
            break
        out.append(t)
    return out


def _terms_up_to_size(sig: Signature, max_size: int) -> list[Term]:
    """Ground terms with node count at most max_size, canonical order.

    Arguments are drawn only from terms small enough to fit, so the
    level products stay proportional to the output, not to the full
    depth level they sit in.
    """
    if max_size < 1:
        return []
    depth_of: dict[Term, int] = {}
    size_of: dict[Term, int] = {}
    level: list[Term] = [Const(c) for c in sig.constants]
    for t in level:
        depth_of[t] = 0
        size_of[t] = 1
    out: list[Term] = list(level)
    d = 0
    while sig.functions and level:
        d += 1
        pool = [t for t in out if size_of[t] <= max_size - min(a for _, a in sig.functions)]
        nxt: list[Term] = []
        for fn, arity in sig.functions:
            if 1 + arity > max_size:
                continue
            for args in product(pool, repeat=arity):
                size = 1 + sum(size_of[a] for a in args)
                if size > max_size or max(depth_of[a] for a in args) != d - 1:
                    continue
                t = App(fn, args)
                depth_of[t] = d
                size_of[t] = size
                nxt.append(t)
        out.extend(nxt)
        level = nxt
    return out


def _pick_var(sig: Signature) -> str:
    for name in ("x", "y", "z"):
        if not sig.declares(name):
            return name
    i = 0
    while sig.declares(f"x{i}"):
        i += 1
    return f"x{i}"


def enumerate_sentences(sig: Signature, budget: int) -> list[Formula]:
    """Candidate sentences with at most budget nodes, in contract order."""
    if budget < 0:
        raise ValueError("budget must be >= 0")
    out: list[Formula] = []

    # 1. ground equalities, reflexive pairs included
    terms = _terms_up_to_size(sig, budget - 2)
    keyed = [(term_key(sig, t), t) for t in terms]
    eqs: list[tuple[tuple, Formula]] = []
    for i, (kl, lhs) in enumerate(keyed):
        for kr, rhs in keyed[i:]:
            size = 1 + term_size(lhs) + term_size(rhs)
            if size <= budget:
                eqs.append(((size, kl, kr), Eq(lhs, rhs)))
    eqs.sort(key=lambda e: e[0])
    out.extend(f for _, f in eqs)

    # 2. ground predicate atoms
    atoms: list[tuple[tuple, Formula]] = []
    for pi, (pred, arity) in enumerate(sig.predicates):
        for args in product(terms, repeat=arity):
            size = 1 + sum(term_size(a) for a in args)
            if size <= budget:
                key = (size, pi) + tuple(term_key(sig, a) for a in args)
                atoms.append((key, Pred(pred, args)))
    atoms.sort(key=lambda e: e[0])
    out.extend(f for _, f in atoms)

    # 3 and 4. single-quantifier sentences over depth-zero arguments
    var = _pick_var(sig)
    pool: list[Term] = [Var(var)] + [Const(c) for c in sig.constants]
    matrices: list[Formula] = []
    keyed_pool = [(term_key(sig, t), t) for t in pool]
    for i, (kl, lhs) in enumerate(keyed_pool):
        for kr, rhs in keyed_pool[i:]:
            if Var(var) in (lhs, rhs):
                matrices.append(Eq(lhs, rhs))
    for pred, arity in sig.predicates:
        for args in product(pool, repeat=arity):
            if Var(var) in args:
                matrices.append(Pred(pred, args))
    for quant in (Forall, Exists):
        for m in matrices:
            f = quant(var, m)
            if formula_size(f) <= budget:
                out.append(f)
    return out


def enumerate_existentials(sig: Signature, budget: int) -> list[Formula]:
    return [f for f in enumerate_sentences(sig, budget) if isinstance(f, Exists)]
