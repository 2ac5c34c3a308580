"""Workbench for building models of first-order theories two ways and
checking that the two constructions agree.

The syntactic way quotients ground terms by provable equality after a
witness expansion and a bounded completion; the semantic way searches
for the least finite model.  The comparison map between them, and every
law it should satisfy, is machine-checked with witnesses on failure.
"""

from .closure import KERNEL, CongruenceEngine, Partition, congruence_close
from .enumeration import enumerate_ground_terms, enumerate_sentences, iter_ground_terms
from .henkin import (
    CompletedTheory,
    HenkinExpansion,
    InconsistentTheoryError,
    TermModel,
    TermModelMap,
    build_term_model,
    extend_translation,
    henkin_expand,
    lindenbaum_complete,
    map_term_model,
    trivial_completion,
)
from .models import (
    Counterexample,
    FiniteModel,
    ModelHom,
    NotFoundWithinBound,
    check_hom,
    check_isomorphic,
    check_model,
    eval_formula,
    eval_term,
    find_model,
    induced_hom,
    reduct,
)
from .nattrans import (
    CheckReport,
    EtaComponent,
    NatCandidate,
    build_eta,
    check_canonical_representation,
    check_homomorphism,
    check_invertibility,
    check_lawvere_square,
    check_naturality,
    check_rigidity,
    check_well_defined,
    invert_eta,
    standard_battery,
)
from .parser import ParseError, parse_formula, parse_theory, parse_translation
from .pipeline import (
    PipelineConfig,
    PipelineResult,
    run_lawvere,
    run_naturality,
    run_pipeline,
)
from .proofs import Verdict, axioms_close, prove, prove_equal
from .syntax import (
    Signature,
    Theory,
    TheoryTranslation,
    compose_translations,
    format_formula,
    format_term,
    identity_translation,
)
from .twocat import (
    Modification,
    ModificationError,
    build_modification,
    check_contractibility,
    check_modification_coherence,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL",
    "CongruenceEngine",
    "Partition",
    "congruence_close",
    "enumerate_ground_terms",
    "enumerate_sentences",
    "iter_ground_terms",
    "CompletedTheory",
    "HenkinExpansion",
    "InconsistentTheoryError",
    "TermModel",
    "TermModelMap",
    "build_term_model",
    "extend_translation",
    "henkin_expand",
    "lindenbaum_complete",
    "map_term_model",
    "trivial_completion",
    "Counterexample",
    "FiniteModel",
    "ModelHom",
    "NotFoundWithinBound",
    "check_hom",
    "check_isomorphic",
    "check_model",
    "eval_formula",
    "eval_term",
    "find_model",
    "induced_hom",
    "reduct",
    "CheckReport",
    "EtaComponent",
    "NatCandidate",
    "build_eta",
    "check_canonical_representation",
    "check_homomorphism",
    "check_invertibility",
    "check_lawvere_square",
    "check_naturality",
    "check_rigidity",
    "check_well_defined",
    "invert_eta",
    "standard_battery",
    "ParseError",
    "parse_formula",
    "parse_theory",
    "parse_translation",
    "PipelineConfig",
    "PipelineResult",
    "run_lawvere",
    "run_naturality",
    "run_pipeline",
    "Verdict",
    "axioms_close",
    "prove",
    "prove_equal",
    "Signature",
    "Theory",
    "TheoryTranslation",
    "compose_translations",
    "format_formula",
    "format_term",
    "identity_translation",
    "Modification",
    "ModificationError",
    "build_modification",
    "check_contractibility",
    "check_modification_coherence",
    "__version__",
]
