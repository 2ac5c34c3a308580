"""End-to-end runs behind the command line: expand, complete, quotient,
search, compare, check.

Reports are plain dicts built in a fixed key order from deterministic
pieces, so serializing one twice gives identical bytes.  Abnormal
outcomes are statuses, not exceptions: a theory with no small model
reports "out of desk scale", a refutable one reports "inconsistent",
and the usual check battery is emitted as skipped so downstream
tooling always sees the same report shape.
"""

from __future__ import annotations

from dataclasses import dataclass

from .closure import KERNEL
from .henkin import (
    CompletedTheory,
    HenkinExpansion,
    IllDefinedMapError,
    InconsistentTheoryError,
    TermModel,
    TermModelMap,
    TranslationObligationError,
    build_term_model,
    extend_translation,
    henkin_expand,
    lindenbaum_complete,
    map_term_model,
    trivial_completion,
)
from .models import (
    FiniteModel,
    HomError,
    ModelHom,
    NotFoundWithinBound,
    find_model,
    induced_hom,
)
from .nattrans import (
    CheckReport,
    EtaComponent,
    build_eta,
    check_naturality,
    skipped,
    standard_battery,
)
from .proofs import axioms_close
from .syntax import Theory, TheoryTranslation, format_formula
from . import finset

BATTERY = (
    "well-defined",
    "homomorphism",
    "canonical-representation",
    "invertibility",
    "lawvere-square",
)

OK = "ok"
OUT_OF_SCALE = "out of desk scale"
INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class PipelineConfig:
    term_depth: int = 3
    henkin_rounds: int = 1
    formula_budget: int = 7
    sentence_budget: int = 7
    proof_budget: int = 2000
    max_model_size: int = 4
    universe_cap: int = 4000
    lindenbaum: bool = True

    def __post_init__(self) -> None:
        for name in (
            "term_depth",
            "henkin_rounds",
            "formula_budget",
            "sentence_budget",
            "proof_budget",
            "universe_cap",
        ):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        if self.max_model_size < 1:
            raise ValueError("max_model_size must be at least 1")

    def to_json_dict(self) -> dict:
        return {
            "term_depth": self.term_depth,
            "henkin_rounds": self.henkin_rounds,
            "formula_budget": self.formula_budget,
            "sentence_budget": self.sentence_budget,
            "proof_budget": self.proof_budget,
            "max_model_size": self.max_model_size,
            "universe_cap": self.universe_cap,
            "lindenbaum": self.lindenbaum,
        }


@dataclass
class PipelineResult:
    theory: Theory
    config: PipelineConfig
    status: str
    checks: list[CheckReport]
    expansion: HenkinExpansion | None = None
    completed: CompletedTheory | None = None
    term_model: TermModel | None = None
    model: FiniteModel | None = None
    eta: EtaComponent | None = None

    @property
    def any_fail(self) -> bool:
        return any(r.status == "fail" for r in self.checks)

    @property
    def any_skipped(self) -> bool:
        return any(r.status == "skipped" for r in self.checks)

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.checks)

    def to_json_dict(self) -> dict:
        report = {
            "schema": 1,
            "command": "pipeline",
            "theory": self.theory.name,
            "kernel": KERNEL,
            "config": self.config.to_json_dict(),
            "status": self.status,
            "expansion": None,
            "completion": None,
            "term_model": None,
            "model": None,
            "eta": None,
            "checks": [r.to_json_dict() for r in self.checks],
            "all_pass": self.all_pass,
        }
        if self.expansion is not None:
            report["expansion"] = {
                "rounds": self.expansion.rounds,
                "witnesses": [
                    [name, format_formula(sentence)]
                    for name, sentence in self.expansion.witnesses
                ],
                "axioms": [format_formula(a) for a in self.expansion.henkin_axioms],
            }
        if self.completed is not None:
            counts: dict[str, int] = {}
            for _, _, how in self.completed.decided:
                counts[how] = counts.get(how, 0) + 1
            report["completion"] = {
                "enabled": self.config.lindenbaum,
                "decided": len(self.completed.decided),
                "counts": dict(sorted(counts.items())),
                "arbitrated": [
                    format_formula(a) for a in self.completed.arbitrated_axioms
                ],
                "residual_unknowns": len(self.completed.residual_unknowns),
            }
        if self.term_model is not None:
            report["term_model"] = self.term_model.to_json_dict()
        if self.model is not None:
            report["model"] = self.model.to_json_dict()
        if self.eta is not None:
            report["eta"] = self.eta.to_json_dict()
        return report


def _skipped_battery(reason: str) -> list[CheckReport]:
    return [skipped(name, reason) for name in BATTERY]


def run_pipeline(theory: Theory, config: PipelineConfig) -> PipelineResult:
    """Expansion, completion, term model, canonical model, comparison
    map, check battery.  Never raises for the two expected dead ends."""
    expansion = henkin_expand(theory, config.henkin_rounds, config.formula_budget)
    completed: CompletedTheory | None = None
    try:
        if config.lindenbaum:
            completed = lindenbaum_complete(
                expansion,
                sentence_budget=config.sentence_budget,
                max_model_size=config.max_model_size,
                proof_budget=config.proof_budget,
            )
        else:
            completed = trivial_completion(expansion)
        term_model = build_term_model(
            completed, config.term_depth, universe_cap=config.universe_cap
        )
        model = find_model(completed.constraint_theory(), config.max_model_size)
    except InconsistentTheoryError as e:
        return PipelineResult(
            theory, config, INCONSISTENT, _skipped_battery(str(e)), expansion, completed
        )
    except NotFoundWithinBound as e:
        if not _consistent_somewhere(completed or trivial_completion(expansion), config):
            return PipelineResult(
                theory,
                config,
                INCONSISTENT,
                _skipped_battery("every interpretation refutes the axioms"),
                expansion,
                completed,
            )
        return PipelineResult(
            theory, config, OUT_OF_SCALE, _skipped_battery(str(e)), expansion, completed
        )
    eta = build_eta(term_model, model)
    checks = standard_battery(eta)
    return PipelineResult(
        theory, config, OK, checks, expansion, completed, term_model, model, eta
    )


def _consistent_somewhere(completed: CompletedTheory, config: PipelineConfig) -> bool:
    """Distinguish 'no small model' from 'no model at all'."""
    theory = completed.constraint_theory()
    return not axioms_close(theory, config.proof_budget)


@dataclass
class NaturalityResult:
    phi: TheoryTranslation
    config: PipelineConfig
    status: str
    source_run: PipelineResult
    target_run: PipelineResult
    checks: list[CheckReport]
    extended: TheoryTranslation | None = None
    f_map: TermModelMap | None = None
    g_map: ModelHom | None = None

    @property
    def any_fail(self) -> bool:
        return any(r.status == "fail" for r in self.checks) or self.source_run.any_fail or self.target_run.any_fail

    @property
    def any_skipped(self) -> bool:
        return (
            any(r.status == "skipped" for r in self.checks)
            or self.source_run.any_skipped
            or self.target_run.any_skipped
        )

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "command": "naturality",
            "translation": self.phi.name,
            "source": self.phi.source.name,
            "target": self.phi.target.name,
            "kernel": KERNEL,
            "config": self.config.to_json_dict(),
            "status": self.status,
            "source_run": self.source_run.to_json_dict(),
            "target_run": self.target_run.to_json_dict(),
            "f_map": list(self.f_map.class_map) if self.f_map else None,
            "g_map": list(self.g_map.mapping) if self.g_map else None,
            "checks": [r.to_json_dict() for r in self.checks],
            "all_pass": all(r.passed for r in self.checks)
            and self.source_run.all_pass
            and self.target_run.all_pass,
        }


def run_naturality(phi: TheoryTranslation, config: PipelineConfig) -> NaturalityResult:
    """Both pipelines, the two induced maps, and the square check.

    Obligation failures and ill-defined maps become failed checks with
    the offending sentence or class pair as witnesses, so the report
    shape stays fixed.
    """
    src_run = run_pipeline(phi.source, config)
    dst_run = run_pipeline(phi.target, config)
    checks: list[CheckReport] = []
    if src_run.status != OK or dst_run.status != OK:
        bad = src_run if src_run.status != OK else dst_run
        reason = f"{bad.theory.name} pipeline status: {bad.status}"
        return NaturalityResult(
            phi, config, bad.status, src_run, dst_run, [skipped("naturality", reason)]
        )
    extended = extend_translation(phi, src_run.expansion, dst_run.expansion)
    try:
        f_map = map_term_model(
            extended, src_run.term_model, dst_run.term_model, config.proof_budget
        )
    except TranslationObligationError as e:
        checks.append(
            CheckReport(
                check="translation-obligations",
                status="fail",
                witnesses=(
                    f"{format_formula(e.axiom)} not provable in the target "
                    f"({e.verdict.status} after {e.verdict.steps} steps)",
                ),
            )
        )
        return NaturalityResult(phi, config, OK, src_run, dst_run, checks, extended)
    except IllDefinedMapError as e:
        checks.append(
            CheckReport(
                check="translation-well-defined",
                status="fail",
                witnesses=tuple(e.witnesses) or (str(e),),
            )
        )
        return NaturalityResult(phi, config, OK, src_run, dst_run, checks, extended)
    try:
        g_map = induced_hom(
            extended, src_run.model, dst_run.model, src_run.term_model.universe
        )
    except HomError as e:
        checks.append(
            CheckReport(
                check="induced-hom",
                status="fail",
                witnesses=tuple(str(w) for w in e.witnesses) or (str(e),),
            )
        )
        return NaturalityResult(
            phi, config, OK, src_run, dst_run, checks, extended, f_map
        )
    checks.append(
        check_naturality(extended, src_run.eta, dst_run.eta, f_map, g_map)
    )
    return NaturalityResult(
        phi, config, OK, src_run, dst_run, checks, extended, f_map, g_map
    )


def run_lawvere(x_size: int, y_size: int) -> dict:
    """Demo survey at one pair of sizes: the exponential, the transpose
    law, the point-surjectivity search, and fixed points where the
    hypothesis holds."""
    x, y = finset.FinSetObj(x_size), finset.FinSetObj(y_size)
    yx = finset.exponential(x, y)
    report: dict = {
        "schema": 1,
        "command": "lawvere",
        "x_size": x_size,
        "y_size": y_size,
        "exponential_size": yx.size,
    }

    # transpose law over every map Z x X -> Y at |Z| = 2, when Y is
    # inhabited; vacuous otherwise
    curry_checked = 0
    z = finset.FinSetObj(2)
    if y.size > 0:
        ev = finset.eval_map(x, y)
        for g in finset.all_maps(finset.product(z, x), y):
            lam = finset.curry(g, z, x)
            for zi in z.elements():
                for xi in x.elements():
                    lhs = ev.table[finset.pair_index(x, lam.table[zi], xi)]
                    assert lhs == g.table[finset.pair_index(x, zi, xi)]
                    curry_checked += 1
    report["transpose_identities_checked"] = curry_checked

    candidates = yx.size**x.size
    exhaustive = candidates <= 100_000
    found = 0
    outcomes: list[dict] = []
    if exhaustive:
        for g in finset.all_maps(x, yx):
            if finset.point_surjective(g, x, y) is None:
                found += 1
                for f in finset.all_maps(y, y):
                    out = finset.lawvere_fixed_point(g, f, x, y)
                    outcomes.append(
                        {
                            "g": list(g.table),
                            "f": list(f.table),
                            "fixed_point": out.fixed_point,
                        }
                    )
    report["point_surjective"] = {
        "exhaustive": exhaustive,
        "candidates": candidates if exhaustive else None,
        "found": found if exhaustive else None,
    }

    cantor = None
    if y.size >= 2 and x.size >= 1:
        # the first x.size functions as images; the gap the search
        # reports is the diagonal flip
        g = finset.FinMap(x, yx, tuple(range(x.size)))
        cantor = list(finset.point_surjective(g, x, y))
    report["cantor_witness"] = cantor
    report["fixed_points"] = outcomes
    report["all_pass"] = True
    return report
