"""Finite models: evaluation, checking, exhaustive canonical search,
homomorphisms, and isomorphism testing.

find_model performs a depth-first search over interpretation cells in
the same order the tables serialize, trying smaller values first, so the
first model found is the lexicographically least one at the least size.
That single choice is what makes every model in the pipeline canonical:
two runs, or two axiom orderings of the same theory, land on the same
tables byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

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
    Term,
    Theory,
    TheoryTranslation,
    Var,
    format_formula,
    format_term,
)


class ModelError(ValueError):
    """Raised for malformed tables or evaluation outside the model."""


class NotFoundWithinBound(Exception):
    """No model up to the size bound; says nothing about larger sizes."""

    def __init__(self, theory: str, max_size: int):
        super().__init__(f"no model of {theory} up to size {max_size}")
        self.theory = theory
        self.max_size = max_size


@dataclass(frozen=True)
class FiniteModel:
    """Interpretation tables over the domain {0, ..., size-1}.

    Function tables are flat and row-major: the value of f at arguments
    (a1, ..., ak) sits at index a1*size^(k-1) + ... + ak.  Predicate
    tables hold booleans in the same layout.
    """

    theory: Theory
    size: int
    const_table: tuple[tuple[str, int], ...]
    fn_tables: tuple[tuple[str, tuple[int, ...]], ...]
    pred_tables: tuple[tuple[str, tuple[bool, ...]], ...]

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ModelError("domain must be non-empty")
        sig = self.theory.signature
        consts = dict(self.const_table)
        if set(consts) != set(sig.constants):
            raise ModelError("constant table does not match the signature")
        for name, value in self.const_table:
            if not 0 <= value < self.size:
                raise ModelError(f"constant {name} outside domain")
        fns = dict(self.fn_tables)
        if set(fns) != {n for n, _ in sig.functions}:
            raise ModelError("function tables do not match the signature")
        for name, arity in sig.functions:
            table = fns[name]
            if len(table) != self.size**arity:
                raise ModelError(f"table for {name} has wrong length")
            if any(not 0 <= v < self.size for v in table):
                raise ModelError(f"table for {name} leaves the domain")
        preds = dict(self.pred_tables)
        if set(preds) != {n for n, _ in sig.predicates}:
            raise ModelError("predicate tables do not match the signature")
        for name, arity in sig.predicates:
            if len(preds[name]) != self.size**arity:
                raise ModelError(f"table for {name} has wrong length")

    def const(self, name: str) -> int:
        return dict(self.const_table)[name]

    def fn(self, name: str) -> tuple[int, ...]:
        return dict(self.fn_tables)[name]

    def pred(self, name: str) -> tuple[bool, ...]:
        return dict(self.pred_tables)[name]

    def cell(self, table: tuple, args: tuple[int, ...]) -> int | bool:
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return table[idx]

    def to_json_dict(self) -> dict:
        """Serialization used both for reports and for the canonical
        tie-break between same-size models."""
        return {
            "size": self.size,
            "constants": {n: v for n, v in self.const_table},
            "functions": {n: list(t) for n, t in self.fn_tables},
            "predicates": {n: [int(b) for b in t] for n, t in self.pred_tables},
        }


def eval_term(m: FiniteModel, t: Term, assignment: dict[str, int] | None = None) -> int:
    env = assignment or {}
    if isinstance(t, Var):
        if t.name not in env:
            raise ModelError(f"unbound variable: {t.name}")
        return env[t.name]
    if isinstance(t, Const):
        return m.const(t.name)
    args = tuple(eval_term(m, a, env) for a in t.args)
    return int(m.cell(m.fn(t.fn), args))


def eval_formula(m: FiniteModel, f: Formula, assignment: dict[str, int] | None = None) -> bool:
    env = assignment or {}
    if isinstance(f, Eq):
        return eval_term(m, f.lhs, env) == eval_term(m, f.rhs, env)
    if isinstance(f, Pred):
        args = tuple(eval_term(m, a, env) for a in f.args)
        return bool(m.cell(m.pred(f.name), args))
    if isinstance(f, Not):
        return not eval_formula(m, f.body, env)
    if isinstance(f, And):
        return eval_formula(m, f.lhs, env) and eval_formula(m, f.rhs, env)
    if isinstance(f, Or):
        return eval_formula(m, f.lhs, env) or eval_formula(m, f.rhs, env)
    if isinstance(f, Implies):
        return (not eval_formula(m, f.lhs, env)) or eval_formula(m, f.rhs, env)
    if isinstance(f, (Forall, Exists)):
        hits = (
            eval_formula(m, f.body, {**env, f.var: v}) for v in range(m.size)
        )
        return all(hits) if isinstance(f, Forall) else any(hits)
    raise TypeError(f"not a formula: {f!r}")


@dataclass(frozen=True)
class Counterexample:
    axiom: Formula
    assignment: tuple[tuple[str, int], ...]

    def describe(self) -> str:
        env = ", ".join(f"{v}={x}" for v, x in self.assignment)
        return f"{format_formula(self.axiom)} fails at [{env}]"


def check_model(m: FiniteModel, t: Theory) -> Counterexample | None:
    """First failing axiom with a falsifying assignment of its leading
    universal variables, or None when every axiom holds."""
    if m.theory.signature != t.signature:
        raise ModelError("model and theory signatures differ")
    for ax in t.axioms:
        prefix: list[str] = []
        body = ax
        while isinstance(body, Forall):
            prefix.append(body.var)
            body = body.body
        for values in product(range(m.size), repeat=len(prefix)):
            env = dict(zip(prefix, values))
            if not eval_formula(m, body, env):
                return Counterexample(ax, tuple(zip(prefix, values)))
    return None


# ---------------------------------------------------------------------------
# exhaustive canonical search


def _eval_term_partial(t: Term, env: dict[str, int], cells: "_Cells") -> int | None:
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, Const):
        return cells.consts.get(t.name)
    vals = []
    for a in t.args:
        v = _eval_term_partial(a, env, cells)
        if v is None:
            return None
        vals.append(v)
    return cells.fn_cell(t.fn, tuple(vals))


def _eval_formula_partial(f: Formula, env: dict[str, int], cells: "_Cells") -> bool | None:
    """Three-valued evaluation: None when unassigned cells block the verdict."""
    if isinstance(f, Eq):
        lhs = _eval_term_partial(f.lhs, env, cells)
        rhs = _eval_term_partial(f.rhs, env, cells)
        if lhs is None or rhs is None:
            return None
        return lhs == rhs
    if isinstance(f, Pred):
        vals = []
        for a in f.args:
            v = _eval_term_partial(a, env, cells)
            if v is None:
                return None
            vals.append(v)
        return cells.pred_cell(f.name, tuple(vals))
    if isinstance(f, Not):
        v = _eval_formula_partial(f.body, env, cells)
        return None if v is None else not v
    if isinstance(f, (And, Or)):
        stop = isinstance(f, Or)  # Or stops at True, And at False
        lhs = _eval_formula_partial(f.lhs, env, cells)
        if lhs is not None and lhs == stop:
            return stop
        rhs = _eval_formula_partial(f.rhs, env, cells)
        if rhs is not None and rhs == stop:
            return stop
        if lhs is None or rhs is None:
            return None
        return not stop
    if isinstance(f, Implies):
        return _eval_formula_partial(Or(Not(f.lhs), f.rhs), env, cells)
    if isinstance(f, (Forall, Exists)):
        stop = isinstance(f, Exists)
        pending = False
        for v in range(cells.size):
            r = _eval_formula_partial(f.body, {**env, f.var: v}, cells)
            if r is None:
                pending = True
            elif r == stop:
                return stop
        return None if pending else not stop
    raise TypeError(f"not a formula: {f!r}")


class _Cells:
    """Mutable partial interpretation used during the search."""

    def __init__(self, size: int):
        self.size = size
        self.consts: dict[str, int] = {}
        self.fns: dict[str, list[int | None]] = {}
        self.preds: dict[str, list[bool | None]] = {}

    def fn_cell(self, name: str, args: tuple[int, ...]) -> int | None:
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return self.fns[name][idx]

    def pred_cell(self, name: str, args: tuple[int, ...]) -> bool | None:
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return self.preds[name][idx]


def find_model(t: Theory, max_size: int) -> FiniteModel:
    """Least-size, lexicographically least model of t.

    Cells are decided in serialization order (constants by declaration,
    then each function table row-major, then each predicate table) with
    values tried in ascending order, so the first complete assignment
    that survives pruning is the canonical one.
    """
    if max_size < 1:
        raise ModelError("max_size must be >= 1")
    sig = t.signature
    for size in range(1, max_size + 1):
        cells = _Cells(size)
        for name, arity in sig.functions:
            cells.fns[name] = [None] * (size**arity)
        for name, arity in sig.predicates:
            cells.preds[name] = [None] * (size**arity)

        slots: list[tuple[str, str, int]] = []
        for c in sig.constants:
            slots.append(("const", c, 0))
        for name, arity in sig.functions:
            slots.extend(("fn", name, i) for i in range(size**arity))
        for name, arity in sig.predicates:
            slots.extend(("pred", name, i) for i in range(size**arity))

        def consistent() -> bool:
            return all(
                _eval_formula_partial(ax, {}, cells) is not False for ax in t.axioms
            )

        def assign(kind: str, name: str, idx: int, value: int) -> None:
            if kind == "const":
                cells.consts[name] = value
            elif kind == "fn":
                cells.fns[name][idx] = value
            else:
                cells.preds[name][idx] = bool(value)

        def clear(kind: str, name: str, idx: int) -> None:
            if kind == "const":
                cells.consts.pop(name, None)
            elif kind == "fn":
                cells.fns[name][idx] = None
            else:
                cells.preds[name][idx] = None

        def search(pos: int) -> bool:
            if pos == len(slots):
                return True
            kind, name, idx = slots[pos]
            values = range(2) if kind == "pred" else range(size)
            for v in values:
                assign(kind, name, idx, v)
                if consistent() and search(pos + 1):
                    return True
            clear(kind, name, idx)
            return False

        if not consistent():
            continue
        if search(0):
            model = FiniteModel(
                theory=t,
                size=size,
                const_table=tuple((c, cells.consts[c]) for c in sig.constants),
                fn_tables=tuple(
                    (n, tuple(v for v in cells.fns[n])) for n, _ in sig.functions  # type: ignore[misc]
                ),
                pred_tables=tuple(
                    (n, tuple(bool(v) for v in cells.preds[n])) for n, _ in sig.predicates
                ),
            )
            bad = check_model(model, t)
            if bad is not None:
                raise ModelError(f"search returned a non-model: {bad.describe()}")
            return model
    raise NotFoundWithinBound(t.name, max_size)


# ---------------------------------------------------------------------------
# homomorphisms and isomorphism


@dataclass(frozen=True)
class ModelHom:
    """Structure-preserving map between finite models of one signature."""

    source: FiniteModel
    target: FiniteModel
    mapping: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.mapping[x]


class HomError(ValueError):
    def __init__(self, msg: str, witnesses: list | None = None):
        super().__init__(msg)
        self.witnesses = witnesses or []


def check_hom(h: ModelHom) -> list[str]:
    """Violations of the homomorphism conditions, empty when h is one."""
    src, dst, f = h.source, h.target, h.mapping
    sig = src.theory.signature
    if sig != dst.theory.signature:
        return ["signature mismatch"]
    out = []
    for name, _ in src.const_table:
        if f[src.const(name)] != dst.const(name):
            out.append(f"constant {name}: {f[src.const(name)]} != {dst.const(name)}")
    for name, arity in sig.functions:
        for args in product(range(src.size), repeat=arity):
            lhs = f[src.cell(src.fn(name), args)]
            rhs = dst.cell(dst.fn(name), tuple(f[a] for a in args))
            if lhs != rhs:
                out.append(f"{name}{args}: {lhs} != {rhs}")
    for name, arity in sig.predicates:
        for args in product(range(src.size), repeat=arity):
            if src.cell(src.pred(name), args) and not dst.cell(
                dst.pred(name), tuple(f[a] for a in args)
            ):
                out.append(f"{name}{args}: truth not preserved")
    return out


def reduct(phi: TheoryTranslation, m: FiniteModel) -> FiniteModel:
    """View of m as a structure for phi's source signature: each source
    symbol is interpreted by the table of its image.  Same carrier, same
    element indices, reinterpreted tables."""
    if m.theory.signature != phi.target.signature:
        raise ModelError("model does not interpret the translation target")
    cmap, fmap, pmap = dict(phi.const_map), dict(phi.fn_map), dict(phi.pred_map)
    sig = phi.source.signature
    return FiniteModel(
        theory=phi.source,
        size=m.size,
        const_table=tuple((c, m.const(cmap[c])) for c in sig.constants),
        fn_tables=tuple((f, m.fn(fmap[f])) for f, _ in sig.functions),
        pred_tables=tuple((p, m.pred(pmap[p])) for p, _ in sig.predicates),
    )


def induced_hom(
    phi: TheoryTranslation,
    gsrc: FiniteModel,
    gdst: FiniteModel,
    src_terms: tuple[Term, ...],
) -> ModelHom:
    """Map the value of each source term to the value of its translation.

    src_terms must reach every element of gsrc (canonical representation
    is an assumption here, not a given; its failure is an error naming
    the unreached element).  Also fails when two terms with one source
    value get different target values, and when the resulting map is not
    a homomorphism into the reduct of gdst along phi.  The returned
    hom's target is that reduct, which shares gdst's carrier.
    """
    if gsrc.theory.signature != phi.source.signature:
        raise HomError("source model does not interpret the translation source")
    rdct = reduct(phi, gdst)
    assigned: dict[int, int] = {}
    chosen: dict[int, Term] = {}
    for src_term in src_terms:
        x = eval_term(gsrc, src_term)
        y = eval_term(gdst, phi.term(src_term))
        if x in assigned:
            if assigned[x] != y:
                raise HomError(
                    "map is not single-valued",
                    witnesses=[
                        f"{format_term(chosen[x])} and {format_term(src_term)} "
                        f"both denote {x} but map to {assigned[x]} and {y}",
                    ],
                )
        else:
            assigned[x] = y
            chosen[x] = src_term
    missing = [x for x in range(gsrc.size) if x not in assigned]
    if missing:
        raise HomError(
            f"representation gap: no term denotes element {missing[0]}",
            witnesses=[str(x) for x in missing],
        )
    h = ModelHom(gsrc, rdct, tuple(assigned[x] for x in range(gsrc.size)))
    violations = check_hom(h)
    if violations:
        raise HomError("induced map is not a homomorphism", witnesses=violations)
    return h


def check_isomorphic(m1: FiniteModel, m2: FiniteModel) -> tuple[int, ...] | None:
    """A two-sided structure-preserving bijection, or None.

    Backtracking over candidate images; constants pin their images, and
    every fully-mapped table entry is checked in both directions before
    the search descends.
    """
    sig = m1.theory.signature
    if sig != m2.theory.signature or m1.size != m2.size:
        return None
    n = m1.size
    forced: dict[int, int] = {}
    for name, _ in m1.const_table:
        x, y = m1.const(name), m2.const(name)
        if forced.get(x, y) != y:
            return None
        forced[x] = y

    mapping: list[int | None] = [None] * n
    used = [False] * n

    def ok_so_far() -> bool:
        for name, arity in sig.functions:
            t1, t2 = m1.fn(name), m2.fn(name)
            for args in product(range(n), repeat=arity):
                imgs = [mapping[a] for a in args]
                v = m1.cell(t1, args)
                if any(i is None for i in imgs) or mapping[v] is None:
                    continue
                if m2.cell(t2, tuple(imgs)) != mapping[v]:  # type: ignore[arg-type]
                    return False
        for name, arity in sig.predicates:
            t1, t2 = m1.pred(name), m2.pred(name)
            for args in product(range(n), repeat=arity):
                imgs = [mapping[a] for a in args]
                if any(i is None for i in imgs):
                    continue
                if m1.cell(t1, args) != m2.cell(t2, tuple(imgs)):  # type: ignore[arg-type]
                    return False
        return True

    def place(x: int) -> bool:
        if x == n:
            return True
        candidates = [forced[x]] if x in forced else list(range(n))
        for y in candidates:
            if used[y]:
                continue
            mapping[x] = y
            used[y] = True
            if ok_so_far() and place(x + 1):
                return True
            mapping[x] = None
            used[y] = False
        return False

    if place(0):
        return tuple(mapping)  # type: ignore[arg-type]
    return None
