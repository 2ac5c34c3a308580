"""Congruence closure over a finite term universe.

Two implementations sit behind congruence_close: a compiled kernel and a
pure-Python one with identical semantics.  The compiled kernel is chosen
at import when available; set MODELBRIDGE_PURE=1 to force the fallback.

The batch entry point answers "which universe terms are forced equal by
these equations plus the congruence rule".  The incremental engine below
serves the completion loop and the prover, which interleave merges and
queries and cannot afford a rebuild per question.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .syntax import App, Signature, Term, subterms, term_key

from . import _closure_py

if os.environ.get("MODELBRIDGE_PURE") == "1":
    _kernel = _closure_py
else:
    try:
        from . import _closure_c as _kernel  # type: ignore[no-redef]
    except ImportError:
        _kernel = _closure_py

KERNEL = _kernel.KERNEL


class ClosureError(ValueError):
    """Raised when an equation mentions a term outside the universe."""


@dataclass(frozen=True)
class Partition:
    """Universe terms grouped into equivalence classes.

    Class ids are dense, ordered by each class's first universe member.
    The representative of a class is its canonical-least member.
    """

    universe: tuple[Term, ...]
    class_ids: tuple[int, ...]
    representatives: tuple[Term, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", {t: c for t, c in zip(self.universe, self.class_ids)})

    @property
    def n_classes(self) -> int:
        return len(self.representatives)

    def class_of(self, t: Term) -> int:
        try:
            return self._index[t]  # type: ignore[attr-defined]
        except KeyError:
            raise ClosureError(f"term outside universe: {t!r}") from None

    def contains(self, t: Term) -> bool:
        return t in self._index  # type: ignore[attr-defined]

    def members(self, cid: int) -> list[Term]:
        return [t for t, c in zip(self.universe, self.class_ids) if c == cid]


def _encode(universe: list[Term]) -> tuple[list[Term], dict[Term, int], list[int], list[int], list[int]]:
    """Index the subterm closure of the universe for the kernel.

    Universe nodes come first in list order; missing subterms follow, so
    the congruence rule can still see through arguments that were not
    listed explicitly.
    """
    nodes: list[Term] = []
    index: dict[Term, int] = {}
    for t in universe:
        if t in index:
            raise ClosureError(f"duplicate universe term: {t!r}")
        index[t] = len(nodes)
        nodes.append(t)
    for t in universe:
        for s in subterms(t):
            if s not in index:
                index[s] = len(nodes)
                nodes.append(s)

    fn_intern: dict[str, int] = {}
    fn_ids: list[int] = []
    arg_offsets: list[int] = [0]
    arg_index: list[int] = []
    for t in nodes:
        if isinstance(t, App):
            fn_ids.append(fn_intern.setdefault(t.fn, len(fn_intern)))
            arg_index.extend(index[a] for a in t.args)
        else:
            fn_ids.append(-1)
        arg_offsets.append(len(arg_index))
    return nodes, index, fn_ids, arg_offsets, arg_index


def congruence_close(
    equations: list[tuple[Term, Term]],
    universe: list[Term],
    sig: Signature,
) -> Partition:
    """Close the equations under reflexivity, symmetry, transitivity, and
    congruence, restricted to the universe.  Both sides of every equation
    must be universe members."""
    n_universe = len(universe)
    if n_universe == 0:
        if equations:
            raise ClosureError("equations over an empty universe")
        return Partition((), (), ())

    nodes, index, fn_ids, arg_offsets, arg_index = _encode(list(universe))
    in_universe = set(universe)
    pairs: list[tuple[int, int]] = []
    for lhs, rhs in equations:
        if lhs not in in_universe:
            raise ClosureError(f"term outside universe: {lhs!r}")
        if rhs not in in_universe:
            raise ClosureError(f"term outside universe: {rhs!r}")
        pairs.append((index[lhs], index[rhs]))

    labels = _kernel.close_classes(len(nodes), fn_ids, arg_offsets, arg_index, pairs)
    return _partition_from_labels(list(universe), labels[:n_universe], sig)


def _partition_from_labels(universe: list[Term], labels: list[int], sig: Signature) -> Partition:
    remap: dict[int, int] = {}
    class_ids: list[int] = []
    members: list[list[Term]] = []
    for t, raw in zip(universe, labels):
        cid = remap.get(raw)
        if cid is None:
            cid = len(remap)
            remap[raw] = cid
            members.append([])
        class_ids.append(cid)
        members[cid].append(t)
    reps = tuple(min(ms, key=lambda t: term_key(sig, t)) for ms in members)
    return Partition(tuple(universe), tuple(class_ids), reps)


class CongruenceEngine:
    """Incremental congruence closure over terms added on the fly.

    Standard use-list construction: every application node registers in
    the use list of each argument class, and a lookup table keyed by
    (head, argument classes) detects newly congruent applications after
    each merge.  Merges are processed from a pending queue to fixpoint.
    """

    def __init__(self) -> None:
        self._ids: dict[Term, int] = {}
        self._terms: list[Term] = []
        self._parent: list[int] = []
        self._size: list[int] = []
        self._use: list[list[int]] = []
        self._sig_of: list[tuple | None] = []
        self._lookup: dict[tuple, int] = {}

    def __len__(self) -> int:
        return len(self._terms)

    def add_term(self, t: Term) -> int:
        node = self._ids.get(t)
        if node is not None:
            return node
        if isinstance(t, App):
            arg_nodes = tuple(self.add_term(a) for a in t.args)
            node = self._new_node(t)
            key = (t.fn,) + tuple(self._find(a) for a in arg_nodes)
            self._sig_of[node] = key
            existing = self._lookup.get(key)
            if existing is None:
                self._lookup[key] = node
            else:
                self._merge_nodes(node, existing)
            for a in arg_nodes:
                self._use[self._find(a)].append(node)
        else:
            node = self._new_node(t)
        return node

    def _new_node(self, t: Term) -> int:
        node = len(self._terms)
        self._ids[t] = node
        self._terms.append(t)
        self._parent.append(node)
        self._size.append(1)
        self._use.append([])
        self._sig_of.append(None)
        return node

    def _find(self, x: int) -> int:
        parent = self._parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def merge(self, t: Term, s: Term) -> None:
        self._merge_nodes(self.add_term(t), self.add_term(s))

    def _merge_nodes(self, a: int, b: int) -> None:
        pending = [(a, b)]
        while pending:
            x, y = pending.pop()
            rx, ry = self._find(x), self._find(y)
            if rx == ry:
                continue
            if self._size[rx] < self._size[ry]:
                rx, ry = ry, rx
            self._parent[ry] = rx
            self._size[rx] += self._size[ry]
            moved = self._use[ry]
            self._use[ry] = []
            for node in moved:
                old_key = self._sig_of[node]
                fn = old_key[0]
                key = (fn,) + tuple(
                    self._find(self._ids[arg]) for arg in self._terms[node].args  # type: ignore[union-attr]
                )
                self._sig_of[node] = key
                hit = self._lookup.get(key)
                if hit is None:
                    self._lookup[key] = node
                elif self._find(hit) != self._find(node):
                    pending.append((hit, node))
                self._use[rx].append(node)

    def contains(self, t: Term) -> bool:
        return t in self._ids

    def same(self, t: Term, s: Term) -> bool:
        """True when both terms are present and provably equal."""
        a, b = self._ids.get(t), self._ids.get(s)
        if a is None or b is None:
            return t == s
        return self._find(a) == self._find(b)

    def root(self, t: Term) -> int:
        return self._find(self._ids[t])

    def partition(self, universe: list[Term], sig: Signature) -> Partition:
        for t in universe:
            self.add_term(t)
        labels = [self._find(self._ids[t]) for t in universe]
        return _partition_from_labels(universe, labels, sig)
