"""Syntactic model construction: witness expansion, completion, and the
quotient term model.

The pipeline through this module is the left leg of the whole artifact:

    theory --expand--> witnessed theory --complete--> decided theory
           --quotient--> term model

henkin_expand adds a fresh constant for every existential sentence it
can see, plus the axiom instantiating the sentence at that constant, so
the term universe contains an inhabitant for everything the theory
asserts to exist.  lindenbaum_complete then walks the enumerated
sentences in order and decides each one: by congruence closure where the
answer is forced, by the prover where a refutation is cheap, and
otherwise by arbitration against a small model, preferring the positive
decision.  Decisions feed back into later ones, so the result is a
single coherent choice, not a bag of independent verdicts.

build_term_model quotients a depth-bounded, cap-bounded prefix of the
ground terms by provable equality.  Deeper terms fall outside the
universe; table cells whose value would need them are flagged rather
than guessed, and every later check reports the coverage it achieved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .closure import CongruenceEngine, Partition
from .enumeration import enumerate_sentences, ground_terms_capped
from .models import FiniteModel, NotFoundWithinBound, eval_formula, find_model
from .proofs import Verdict, axioms_close, ground_instantiate, prove, strip_forall
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
    Term,
    Theory,
    TheoryTranslation,
    Var,
    alpha_key,
    format_formula,
    format_term,
    substitute,
    term_is_ground,
)


class InconsistentTheoryError(Exception):
    """The axioms close against a tautology; no model can exist."""


class TranslationObligationError(Exception):
    """A translated source axiom is not provable in the target."""

    def __init__(self, axiom: Formula, verdict: Verdict):
        super().__init__(
            f"obligation not discharged ({verdict.status}): {format_formula(axiom)}"
        )
        self.axiom = axiom
        self.verdict = verdict


class IllDefinedMapError(Exception):
    """Two provably equal source terms with provably different images."""

    def __init__(self, msg: str, witnesses: list[str]):
        super().__init__(msg)
        self.witnesses = witnesses


@dataclass(frozen=True)
class HenkinExpansion:
    """Base theory plus witness constants and their defining axioms."""

    base: Theory
    witnesses: tuple[tuple[str, Formula], ...]  # name -> existential witnessed
    henkin_axioms: tuple[Formula, ...]
    rounds: int

    @property
    def extended_signature(self) -> Signature:
        return self.base.signature.with_constants(tuple(n for n, _ in self.witnesses))

    def extended(self) -> Theory:
        return Theory(
            name=self.base.name,
            signature=self.extended_signature,
            axioms=self.base.axioms + self.henkin_axioms,
        )

    def witness_for(self, sentence: Formula) -> str | None:
        key = alpha_key(sentence)
        for name, s in self.witnesses:
            if alpha_key(s) == key:
                return name
        return None


def henkin_expand(theory: Theory, rounds: int, formula_budget: int) -> HenkinExpansion:
    """Introduce witnesses round by round.

    Each round scans the existential axioms first, in axiom order, then
    the enumerated existential sentences over the signature as extended
    so far.  Sentences already witnessed (up to renaming of the bound
    variable) are skipped.  Witness constants are named _h0, _h1, ... in
    the order introduced.
    """
    if rounds < 0:
        raise ValueError("rounds must be >= 0")
    sig = theory.signature
    witnesses: list[tuple[str, Formula]] = []
    axioms: list[Formula] = []
    seen: set = set()
    counter = 0
    for _ in range(rounds):
        candidates = [ax for ax in theory.axioms if isinstance(ax, Exists)]
        candidates += [
            s for s in enumerate_sentences(sig, formula_budget) if isinstance(s, Exists)
        ]
        added = False
        for cand in candidates:
            key = alpha_key(cand)
            if key in seen:
                continue
            seen.add(key)
            while sig.declares(f"_h{counter}"):
                counter += 1
            name = f"_h{counter}"
            counter += 1
            sig = sig.with_constants((name,))
            witnesses.append((name, cand))
            axioms.append(substitute(cand.body, cand.var, Const(name)))
            added = True
        if not added:
            break
    return HenkinExpansion(
        base=theory,
        witnesses=tuple(witnesses),
        henkin_axioms=tuple(axioms),
        rounds=rounds,
    )


@dataclass(frozen=True)
class CompletedTheory:
    """Expansion plus a polarity for every sentence the budget reached.

    decided records (sentence, polarity, how): "closed" and "refuted"
    answers were forced, "proved" came from the tableau, and
    "arbitrated" answers were free choices made against a model, biased
    positive.  arbitrated_axioms are the free choices as sentences; they
    join the axioms whenever a later construction needs the completed
    theory rather than the bare expansion.
    """

    expansion: HenkinExpansion
    decided: tuple[tuple[Formula, bool, str], ...]
    residual_unknowns: tuple[Formula, ...]
    arbitrated_axioms: tuple[Formula, ...]

    def constraint_theory(self) -> Theory:
        ext = self.expansion.extended()
        return Theory(
            name=ext.name,
            signature=ext.signature,
            axioms=ext.axioms + self.arbitrated_axioms,
        )

    def positive_equalities(self) -> list[Eq]:
        return [s for s, pol, _ in self.decided if pol and isinstance(s, Eq)]

    def decided_atoms(self) -> list[tuple[Pred, bool]]:
        return [(s, pol) for s, pol, _ in self.decided if isinstance(s, Pred)]


def trivial_completion(expansion: HenkinExpansion) -> CompletedTheory:
    """Completion with nothing decided; quotients then use only what the
    axioms force."""
    return CompletedTheory(expansion, (), (), ())


def _instantiate_equations(
    theory: Theory,
    engine: CongruenceEngine,
    diseqs: list[tuple[Term, Term]],
    inst_depth: int,
    inst_cap: int,
    var_bound: int,
) -> None:
    """Feed ground equational consequences of the axioms to the engine."""
    inst_terms = ground_terms_capped(theory.signature, inst_depth, inst_cap)
    instances, _ = ground_instantiate(theory.axioms, inst_terms, var_bound)
    for f in instances:
        if isinstance(f, Eq):
            engine.merge(f.lhs, f.rhs)
        elif isinstance(f, Not) and isinstance(f.body, Eq):
            engine.add_term(f.body.lhs)
            engine.add_term(f.body.rhs)
            diseqs.append((f.body.lhs, f.body.rhs))


def _diseq_hit(
    engine: CongruenceEngine, diseqs: list[tuple[Term, Term]], lhs: Term, rhs: Term
) -> bool:
    for l, r in diseqs:
        if (engine.same(lhs, l) and engine.same(rhs, r)) or (
            engine.same(lhs, r) and engine.same(rhs, l)
        ):
            return True
    return False


def lindenbaum_complete(
    expansion: HenkinExpansion,
    sentence_budget: int,
    max_model_size: int,
    proof_budget: int,
    inst_depth: int = 2,
    inst_cap: int = 16,
    var_bound: int = 3,
    triage_budget: int = 200,
) -> CompletedTheory:
    """Decide every enumerated sentence, positive-first.

    Raises InconsistentTheoryError when the tableau closes on the
    axioms alone, and propagates NotFoundWithinBound when the theory is
    consistent as far as the prover can tell but admits no model within
    bound.
    """
    ext = expansion.extended()
    try:
        model = find_model(ext, max_model_size)
    except NotFoundWithinBound:
        if axioms_close(ext, proof_budget):
            raise InconsistentTheoryError(
                f"the axioms of {ext.name} close under the tableau"
            ) from None
        raise

    engine = CongruenceEngine()
    diseqs: list[tuple[Term, Term]] = []
    for ax in ext.axioms:
        if isinstance(ax, Eq):
            engine.merge(ax.lhs, ax.rhs)
        elif isinstance(ax, Not) and isinstance(ax.body, Eq):
            engine.add_term(ax.body.lhs)
            engine.add_term(ax.body.rhs)
            diseqs.append((ax.body.lhs, ax.body.rhs))
    _instantiate_equations(ext, engine, diseqs, inst_depth, inst_cap, var_bound)

    decided: list[tuple[Formula, bool, str]] = []
    residual: list[Formula] = []
    arbitrated: list[Formula] = []
    budget = min(proof_budget, triage_budget)

    def current_theory() -> Theory:
        return Theory(ext.name, ext.signature, ext.axioms + tuple(arbitrated))

    def arbitrate(sentence: Formula) -> None:
        nonlocal model
        if eval_formula(model, sentence):
            decided.append((sentence, True, "arbitrated"))
            arbitrated.append(sentence)
            _absorb(sentence, True)
            return
        try:
            candidate = find_model(
                Theory(ext.name, ext.signature, ext.axioms + tuple(arbitrated) + (sentence,)),
                max_model_size,
            )
        except NotFoundWithinBound:
            # the current model already satisfies the negation
            decided.append((sentence, False, "arbitrated"))
            arbitrated.append(Not(sentence))
            _absorb(sentence, False)
            return
        model = candidate
        decided.append((sentence, True, "arbitrated"))
        arbitrated.append(sentence)
        _absorb(sentence, True)

    def _absorb(sentence: Formula, polarity: bool) -> None:
        """Keep the closure engine in step with new ground decisions."""
        if isinstance(sentence, Eq):
            if polarity:
                engine.merge(sentence.lhs, sentence.rhs)
            else:
                engine.add_term(sentence.lhs)
                engine.add_term(sentence.rhs)
                diseqs.append((sentence.lhs, sentence.rhs))

    for sentence in enumerate_sentences(ext.signature, sentence_budget):
        if isinstance(sentence, Eq):
            engine.add_term(sentence.lhs)
            engine.add_term(sentence.rhs)
            if engine.same(sentence.lhs, sentence.rhs):
                decided.append((sentence, True, "closed"))
            elif _diseq_hit(engine, diseqs, sentence.lhs, sentence.rhs):
                decided.append((sentence, False, "refuted"))
            else:
                arbitrate(sentence)
        else:
            verdict = prove(current_theory(), sentence, budget)
            if verdict.is_proved:
                decided.append((sentence, True, "proved"))
                _absorb(sentence, True)
            elif verdict.is_refuted:
                decided.append((sentence, False, "refuted"))
                _absorb(sentence, False)
            else:
                arbitrate(sentence)

    return CompletedTheory(
        expansion=expansion,
        decided=tuple(decided),
        residual_unknowns=tuple(residual),
        arbitrated_axioms=tuple(arbitrated),
    )


@dataclass
class TermModel:
    """Ground terms of the completed theory, quotiented by provable
    equality, with operation tables on the classes.

    op_tables[f] maps class-id tuples to class ids; a tuple is absent
    when the value lies outside the universe and no in-universe term is
    provably equal to it.  pred_tables holds only the decided entries.
    """

    completed: CompletedTheory
    partition: Partition
    op_tables: dict[str, dict[tuple[int, ...], int]]
    pred_tables: dict[str, dict[tuple[int, ...], bool]]
    term_depth: int
    universe_cap: int
    _engine: CongruenceEngine = field(repr=False)
    _root_to_class: dict[int, int] = field(repr=False)

    @property
    def universe(self) -> tuple[Term, ...]:
        return self.partition.universe

    @property
    def n_classes(self) -> int:
        return self.partition.n_classes

    @property
    def signature(self) -> Signature:
        return self.completed.expansion.extended_signature

    def representative(self, cid: int) -> Term:
        return self.partition.representatives[cid]

    def class_of_term(self, t: Term) -> int | None:
        """Class of any ground term over the extended signature, or None
        when it is not provably equal to anything inside the universe."""
        if not term_is_ground(t):
            raise ValueError("term model classes contain ground terms only")
        if self.partition.contains(t):
            return self.partition.class_of(t)
        self._engine.add_term(t)
        return self._root_to_class.get(self._engine.root(t))

    def table_size(self, fn: str) -> int:
        arity = dict(self.signature.functions)[fn]
        return self.n_classes**arity

    def missing_cells(self, fn: str) -> int:
        return self.table_size(fn) - len(self.op_tables[fn])

    def to_json_dict(self) -> dict:
        return {
            "universe": [format_term(t) for t in self.universe],
            "classes": list(self.partition.class_ids),
            "representatives": [format_term(t) for t in self.partition.representatives],
            "functions": {
                fn: [[list(args), cid] for args, cid in sorted(table.items())]
                for fn, table in self.op_tables.items()
            },
            "predicates": {
                p: [[list(args), bool(v)] for args, v in sorted(table.items())]
                for p, table in self.pred_tables.items()
            },
            "missing_cells": {fn: self.missing_cells(fn) for fn in self.op_tables},
        }


def build_term_model(
    completed: CompletedTheory,
    term_depth: int,
    universe_cap: int = 4000,
    inst_depth: int = 2,
    inst_cap: int = 16,
    var_bound: int = 3,
    table_fill_cap: int = 4096,
) -> TermModel:
    """Quotient the bounded term universe by everything the completion
    forces equal: ground equational axioms, instantiated universal
    equations, decided equalities, and congruence."""
    theory = completed.constraint_theory()
    sig = theory.signature
    universe = ground_terms_capped(sig, term_depth, universe_cap)
    if not universe:
        raise ValueError(f"{theory.name} has no ground terms; add a constant")

    engine = CongruenceEngine()
    diseqs: list[tuple[Term, Term]] = []
    for ax in theory.axioms:
        if isinstance(ax, Eq):
            engine.merge(ax.lhs, ax.rhs)
    _instantiate_equations(theory, engine, diseqs, inst_depth, inst_cap, var_bound)
    for eq in completed.positive_equalities():
        engine.merge(eq.lhs, eq.rhs)

    partition = engine.partition(universe, sig)
    k = partition.n_classes

    # first pass: read table entries off the in-universe applications
    op_tables: dict[str, dict[tuple[int, ...], int]] = {}
    for fn, arity in sig.functions:
        op_tables[fn] = {}
    for t in universe:
        if isinstance(t, App):
            args = tuple(partition.class_of(a) for a in t.args)
            op_tables[t.fn][args] = partition.class_of(t)

    # second pass: missing cells may still name a class through a term
    # the closure already knows; applications of representatives decide it
    for fn, arity in sig.functions:
        if k**arity > table_fill_cap:
            continue
        table = op_tables[fn]
        missing = [args for args in product(range(k), repeat=arity) if args not in table]
        for args in missing:
            engine.add_term(App(fn, tuple(partition.representatives[c] for c in args)))
    root_to_class = {engine.root(t): partition.class_of(t) for t in universe}
    for fn, arity in sig.functions:
        if k**arity > table_fill_cap:
            continue
        table = op_tables[fn]
        for args in product(range(k), repeat=arity):
            if args in table:
                continue
            t = App(fn, tuple(partition.representatives[c] for c in args))
            cid = root_to_class.get(engine.root(t))
            if cid is not None:
                table[args] = cid

    pred_tables: dict[str, dict[tuple[int, ...], bool]] = {
        p: {} for p, _ in sig.predicates
    }

    def record_atom(atom: Pred, value: bool) -> None:
        if all(partition.contains(a) for a in atom.args):
            key = tuple(partition.class_of(a) for a in atom.args)
            pred_tables[atom.name][key] = value

    for ax in theory.axioms:
        if isinstance(ax, Pred) and all(term_is_ground(a) for a in ax.args):
            record_atom(ax, True)
        elif isinstance(ax, Not) and isinstance(ax.body, Pred):
            if all(term_is_ground(a) for a in ax.body.args):
                record_atom(ax.body, False)
    for atom, polarity in completed.decided_atoms():
        record_atom(atom, polarity)

    return TermModel(
        completed=completed,
        partition=partition,
        op_tables=op_tables,
        pred_tables=pred_tables,
        term_depth=term_depth,
        universe_cap=universe_cap,
        _engine=engine,
        _root_to_class=root_to_class,
    )


# ---------------------------------------------------------------------------
# the functorial action on translations


class ExtensionError(Exception):
    """The target expansion lacks a witness for a translated sentence."""


def extend_translation(
    phi: TheoryTranslation,
    src: HenkinExpansion,
    dst: HenkinExpansion,
) -> TheoryTranslation:
    """Lift a base translation to the witnessed theories.

    Each source witness constant maps to the target witness of the
    translated existential sentence; witnesses are processed in creation
    order so later sentences may mention earlier witness constants.
    """
    if phi.source.signature != src.base.signature:
        raise ExtensionError("translation source does not match the expansion base")
    if phi.target.signature != dst.base.signature:
        raise ExtensionError("translation target does not match the expansion base")
    cmap = dict(phi.const_map)
    fmap = dict(phi.fn_map)
    pmap = dict(phi.pred_map)
    dst_by_key = {alpha_key(s): name for name, s in dst.witnesses}
    for name, sentence in src.witnesses:
        translated = _apply_map(sentence, cmap, fmap, pmap)
        target_name = dst_by_key.get(alpha_key(translated))
        if target_name is None:
            raise ExtensionError(
                f"no target witness for {format_formula(translated)} (source witness {name})"
            )
        cmap[name] = target_name
    return TheoryTranslation(
        name=f"{phi.name}_ext",
        source=src.extended(),
        target=dst.extended(),
        const_map=tuple(sorted(cmap.items(), key=lambda kv: _const_pos(src, kv[0]))),
        fn_map=phi.fn_map,
        pred_map=phi.pred_map,
    )


def _const_pos(src: HenkinExpansion, name: str) -> int:
    return src.extended_signature.constants.index(name)


def _apply_term(t: Term, cmap: dict[str, str], fmap: dict[str, str]) -> Term:
    if isinstance(t, Var):
        return t
    if isinstance(t, Const):
        return Const(cmap[t.name])
    return App(fmap[t.fn], tuple(_apply_term(a, cmap, fmap) for a in t.args))


def _apply_map(
    f: Formula, cmap: dict[str, str], fmap: dict[str, str], pmap: dict[str, str]
) -> Formula:
    if isinstance(f, Eq):
        return Eq(_apply_term(f.lhs, cmap, fmap), _apply_term(f.rhs, cmap, fmap))
    if isinstance(f, Pred):
        return Pred(pmap[f.name], tuple(_apply_term(a, cmap, fmap) for a in f.args))
    if isinstance(f, Not):
        return Not(_apply_map(f.body, cmap, fmap, pmap))
    if isinstance(f, (And, Or, Implies)):
        return type(f)(_apply_map(f.lhs, cmap, fmap, pmap), _apply_map(f.rhs, cmap, fmap, pmap))
    if isinstance(f, (Forall, Exists)):
        return type(f)(f.var, _apply_map(f.body, cmap, fmap, pmap))
    raise TypeError(f"not a formula: {f!r}")


@dataclass(frozen=True)
class TermModelMap:
    """Class map induced by a translation between term models."""

    translation: TheoryTranslation
    source: TermModel
    target: TermModel
    class_map: tuple[int, ...]

    def __call__(self, cid: int) -> int:
        return self.class_map[cid]


def map_term_model(
    phi: TheoryTranslation,
    src: TermModel,
    dst: TermModel,
    proof_budget: int = 2000,
) -> TermModelMap:
    """Send each source class to the class of its translated members.

    Every translated source axiom must be provable in the target theory
    first; then the image class is computed from the representative and
    verified against every other member whose image lands in the target
    universe's reach, so a map that identifies less than the source is
    rejected with the offending pair.
    """
    target_theory = dst.completed.constraint_theory()
    for ob in phi.obligations():
        verdict = prove(target_theory, ob, proof_budget)
        if not verdict.is_proved:
            raise TranslationObligationError(ob, verdict)

    class_map: list[int] = []
    for cid in range(src.n_classes):
        rep = src.representative(cid)
        image = dst.class_of_term(phi.term(rep))
        if image is None:
            raise IllDefinedMapError(
                f"image of class {cid} falls outside the target universe",
                witnesses=[format_term(rep)],
            )
        for member in src.partition.members(cid):
            member_image = dst.class_of_term(phi.term(member))
            if member_image is not None and member_image != image:
                raise IllDefinedMapError(
                    "translation does not respect provable equality",
                    witnesses=[
                        f"{format_term(rep)} -> class {image}",
                        f"{format_term(member)} -> class {member_image}",
                    ],
                )
        class_map.append(image)
    return TermModelMap(phi, src, dst, tuple(class_map))
