"""The comparison map from term classes to model elements, and the
machine checks that make its laws inspectable.

Every check returns a CheckReport rather than raising: the point of the
workbench is to show witnesses when a law fails, not to stop at the
first exception.  Constructors (build_eta, invert_eta) do raise, because
their outputs feed later stages and a silently wrong map would poison
every downstream check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .henkin import TermModel, TermModelMap
from .models import FiniteModel, ModelHom, eval_term
from .syntax import Const, TheoryTranslation, format_term


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one law check: pass, fail with witnesses, or skipped."""

    check: str
    status: str  # pass | fail | skipped
    witnesses: tuple[str, ...] = ()
    coverage: float | None = None
    reason: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json_dict(self) -> dict:
        return {
            "check": self.check,
            "status": self.status,
            "witnesses": list(self.witnesses),
            "coverage": self.coverage,
            "reason": self.reason,
        }


def _report(check: str, witnesses: list[str], coverage: float | None = None) -> CheckReport:
    return CheckReport(
        check=check,
        status="pass" if not witnesses else "fail",
        witnesses=tuple(witnesses),
        coverage=coverage,
    )


def skipped(check: str, reason: str) -> CheckReport:
    return CheckReport(check=check, status="skipped", reason=reason)


class EtaError(Exception):
    def __init__(self, msg: str, witnesses: list[str] | None = None):
        super().__init__(msg)
        self.witnesses = witnesses or []


@dataclass
class EtaComponent:
    """Map from term classes to model elements: each class goes to the
    value of its representative term.  Carries its own well-definedness
    report, since the map is only meaningful when that check passes."""

    term_model: TermModel
    finite_model: FiniteModel
    mapping: tuple[int, ...]
    coverage: float
    well_defined: "CheckReport | None" = None

    def __call__(self, cid: int) -> int:
        return self.mapping[cid]

    def to_json_dict(self) -> dict:
        return {"mapping": list(self.mapping), "coverage": self.coverage}


def build_eta(tm: TermModel, g: FiniteModel) -> EtaComponent:
    """Evaluate each class representative in the model.

    The model must interpret the full extended signature, witness
    constants included; representatives are closed terms, so the map is
    total and coverage is always 1.0.
    """
    if g.theory.signature != tm.signature:
        raise EtaError("model does not interpret the extended signature")
    mapping = tuple(eval_term(g, rep) for rep in tm.partition.representatives)
    eta = EtaComponent(term_model=tm, finite_model=g, mapping=mapping, coverage=1.0)
    eta.well_defined = check_well_defined(eta)
    return eta


def check_well_defined(eta: EtaComponent) -> CheckReport:
    """Every member of a class must evaluate to the class's image."""
    witnesses: list[str] = []
    tm, g = eta.term_model, eta.finite_model
    for t, cid in zip(tm.universe, tm.partition.class_ids):
        value = eval_term(g, t)
        if value != eta.mapping[cid]:
            rep = tm.representative(cid)
            witnesses.append(
                f"{format_term(t)} evaluates to {value} but its class "
                f"[{format_term(rep)}] maps to {eta.mapping[cid]}"
            )
    return _report("well-defined", witnesses, coverage=1.0)


def check_homomorphism(eta: EtaComponent) -> CheckReport:
    """Constants, operation table entries, and decided atoms must commute
    with the map.  Missing table cells are skipped and surface through
    the coverage fraction instead of as failures."""
    witnesses: list[str] = []
    tm, g = eta.term_model, eta.finite_model
    sig = tm.signature
    for c in sig.constants:
        cid = tm.partition.class_of(Const(c))
        if eta.mapping[cid] != g.const(c):
            witnesses.append(
                f"constant {c}: class maps to {eta.mapping[cid]}, model holds {g.const(c)}"
            )
    total = 0
    checked = 0
    for fn, _arity in sig.functions:
        table = tm.op_tables[fn]
        total += tm.table_size(fn)
        gtable = g.fn(fn)
        for args, cid in sorted(table.items()):
            checked += 1
            expected = g.cell(gtable, tuple(eta.mapping[a] for a in args))
            if eta.mapping[cid] != expected:
                arg_text = ", ".join(format_term(tm.representative(a)) for a in args)
                witnesses.append(
                    f"{fn}({arg_text}): term side gives {eta.mapping[cid]}, "
                    f"model side gives {expected}"
                )
    for p, _arity in sig.predicates:
        for args, value in sorted(tm.pred_tables[p].items()):
            if value and not g.cell(g.pred(p), tuple(eta.mapping[a] for a in args)):
                arg_text = ", ".join(format_term(tm.representative(a)) for a in args)
                witnesses.append(f"{p}({arg_text}) holds on classes but not in the model")
    coverage = 1.0 if total == 0 else checked / total
    return _report("homomorphism", witnesses, coverage=coverage)


def _value_classes(tm: TermModel, g: FiniteModel) -> tuple[dict[int, int], list[str]]:
    """Evaluate the whole universe: element -> class of the least term
    reaching it, plus one witness per pair of colliding classes."""
    first: dict[int, int] = {}
    witnesses: list[str] = []
    flagged: set[tuple[int, int]] = set()
    for t, cid in zip(tm.universe, tm.partition.class_ids):
        value = eval_term(g, t)
        prior = first.get(value)
        if prior is None:
            first[value] = cid
        elif prior != cid and (prior, cid) not in flagged:
            flagged.add((prior, cid))
            witnesses.append(
                f"classes [{format_term(tm.representative(prior))}] and "
                f"[{format_term(tm.representative(cid))}] both evaluate to {value}"
            )
    return first, witnesses


def check_canonical_representation(tm: TermModel, g: FiniteModel) -> CheckReport:
    """Two clauses: every model element is the value of some universe
    term, and terms with equal values lie in one class."""
    first, witnesses = _value_classes(tm, g)
    missing = [x for x in range(g.size) if x not in first]
    for x in reversed(missing):
        witnesses.insert(0, f"element {x} is not the value of any universe term")
    coverage = (g.size - len(missing)) / g.size
    return _report("canonical-representation", witnesses, coverage=coverage)


def invert_eta(eta: EtaComponent) -> dict[int, int]:
    """Inverse map element -> class of the least term evaluating to it.

    Raises EtaError carrying witnesses on a representation gap (some
    element unreached) or an injectivity failure (two classes, one
    element).  On success both round trips are verified extensionally.
    """
    report = eta.well_defined or check_well_defined(eta)
    if not report.passed:
        raise EtaError("map is not well-defined", list(report.witnesses))
    first, collisions = _value_classes(eta.term_model, eta.finite_model)
    if collisions:
        raise EtaError("map is not injective", collisions)
    missing = [x for x in range(eta.finite_model.size) if x not in first]
    if missing:
        raise EtaError(
            f"element {missing[0]} is not the value of any universe term",
            [str(x) for x in missing],
        )
    inverse = dict(sorted(first.items()))
    for cid in range(len(eta.mapping)):
        assert inverse[eta.mapping[cid]] == cid
    for x in range(eta.finite_model.size):
        assert eta.mapping[inverse[x]] == x
    return inverse


def check_invertibility(eta: EtaComponent) -> CheckReport:
    try:
        invert_eta(eta)
    except EtaError as e:
        return CheckReport(
            check="invertibility",
            status="fail",
            witnesses=tuple(e.witnesses) or (str(e),),
        )
    return CheckReport(check="invertibility", status="pass", coverage=1.0)


@dataclass(frozen=True)
class NatCandidate:
    """A proposed family member: some map from classes to elements.
    Candidates are allowed to be wrong; the checks say how."""

    description: str
    mapping: tuple[int, ...]


def check_rigidity(theta: NatCandidate, eta: EtaComponent) -> CheckReport:
    """A candidate agreeing with the canonical map on every class is the
    canonical map; each disagreeing class is listed."""
    witnesses = []
    if len(theta.mapping) != len(eta.mapping):
        witnesses.append(
            f"{theta.description}: {len(theta.mapping)} components, "
            f"expected {len(eta.mapping)}"
        )
    else:
        for cid, (lhs, rhs) in enumerate(zip(theta.mapping, eta.mapping)):
            if lhs != rhs:
                rep = eta.term_model.representative(cid)
                witnesses.append(
                    f"class [{format_term(rep)}] (id {cid}): {theta.description} "
                    f"sends it to {lhs}, the canonical map sends it to {rhs}"
                )
    return _report("rigidity", witnesses, coverage=1.0)


def check_naturality(
    phi: TheoryTranslation,
    eta_src: EtaComponent,
    eta_dst: EtaComponent,
    f_map: TermModelMap,
    g_map: ModelHom,
) -> CheckReport:
    """Square condition: translating then comparing must equal comparing
    then translating, class by class."""
    witnesses = []
    for cid in range(len(eta_src.mapping)):
        top = eta_dst.mapping[f_map.class_map[cid]]
        bottom = g_map.mapping[eta_src.mapping[cid]]
        if top != bottom:
            rep = eta_src.term_model.representative(cid)
            witnesses.append(
                f"class [{format_term(rep)}]: translated-then-compared gives {top}, "
                f"compared-then-translated gives {bottom}"
            )
    return _report(f"naturality[{phi.name}]", witnesses, coverage=1.0)


def check_lawvere_square(tm: TermModel, g: FiniteModel, eta: EtaComponent) -> CheckReport:
    """Self-reference square, checked on elements.

    The duplication clause (eta(c), eta(c)) = (eta(c), eta(c)) holds by
    construction on plain structures, so the content is the diagonal
    clause: pushing a class through a binary operation applied to itself
    must match applying the model operation to the image twice.  Missing
    diagonal cells are skipped and show up in coverage.
    """
    witnesses: list[str] = []
    total = 0
    checked = 0
    for fn, arity in tm.signature.functions:
        if arity != 2:
            continue
        table = tm.op_tables[fn]
        gtable = g.fn(fn)
        for cid in range(len(eta.mapping)):
            total += 1
            hit = table.get((cid, cid))
            if hit is None:
                continue
            checked += 1
            lhs = eta.mapping[hit]
            rhs = g.cell(gtable, (eta.mapping[cid], eta.mapping[cid]))
            if lhs != rhs:
                rep = tm.representative(cid)
                witnesses.append(
                    f"self-application of [{format_term(rep)}] through {fn}: "
                    f"term side {lhs}, model side {rhs}"
                )
    coverage = 1.0 if total == 0 else checked / total
    return _report("lawvere-square", witnesses, coverage=coverage)


def standard_battery(eta: EtaComponent) -> list[CheckReport]:
    """The checks every pipeline run performs on its comparison map."""
    return [
        eta.well_defined or check_well_defined(eta),
        check_homomorphism(eta),
        check_canonical_representation(eta.term_model, eta.finite_model),
        check_invertibility(eta),
        check_lawvere_square(eta.term_model, eta.finite_model, eta),
    ]
