"""Finite models: evaluation, axiom checking, the canonical search, and
maps between models (homomorphisms, reducts, isomorphism search).

The canonical Z2 model is pinned both as frozen tables and against the
brute-force enumerator in _oracles, which shares no code with the
search."""

import pytest

from modelbridge.models import (
    FiniteModel,
    HomError,
    ModelError,
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
from modelbridge.parser import parse_translation
from modelbridge.syntax import App, Const, Eq, Not, Signature, Theory, Var

from _oracles import brute_force_least_model
from conftest import FIXTURES, load_theory

E, A = Const("e"), Const("a")

Z2_TABLES = {
    "size": 2,
    "constants": {"e": 0, "a": 1},
    "functions": {"mul": [0, 1, 1, 0]},
    "predicates": {},
}


def mul(x, y):
    return App("mul", (x, y))


def xor_model(theory):
    return FiniteModel(
        theory=theory,
        size=2,
        const_table=(("e", 0), ("a", 1)),
        fn_tables=(("mul", (0, 1, 1, 0)),),
        pred_tables=(),
    )


def collapsed_model(theory):
    return FiniteModel(
        theory=theory,
        size=1,
        const_table=(("e", 0), ("a", 0)),
        fn_tables=(("mul", (0,)),),
        pred_tables=(),
    )


class TestEvaluation:
    def test_constants(self, z2):
        m = xor_model(z2)
        assert eval_term(m, E) == 0
        assert eval_term(m, A) == 1

    def test_composite_term(self, z2):
        m = xor_model(z2)
        assert eval_term(m, mul(A, A)) == 0
        assert eval_term(m, mul(A, mul(A, A))) == 1

    def test_variable_lookup(self, z2):
        m = xor_model(z2)
        assert eval_term(m, Var("x"), {"x": 1}) == 1
        assert eval_term(m, mul(Var("x"), A), {"x": 1}) == 0

    def test_formulas(self, z2):
        m = xor_model(z2)
        assert eval_formula(m, Not(Eq(A, E)), {})
        assert eval_formula(m, Eq(mul(A, A), E), {})
        assert not eval_formula(m, Eq(A, E), {})


class TestCheckModel:
    def test_canonical_model_passes(self, z2):
        assert check_model(xor_model(z2), z2) is None

    def test_collapsed_model_fails_the_disequation(self, z2):
        cx = check_model(collapsed_model(z2), z2)
        assert cx is not None
        assert cx.axiom == Not(Eq(A, E))
        assert cx.assignment == ()

    def test_wrong_table_fails_with_assignment(self, z2):
        m = FiniteModel(
            theory=z2,
            size=2,
            const_table=(("e", 0), ("a", 1)),
            fn_tables=(("mul", (0, 0, 1, 0)),),
            pred_tables=(),
        )
        cx = check_model(m, z2)
        assert cx is not None
        assert cx.axiom == z2.axioms[0]
        assert cx.assignment == (("x", 1),)

    def test_signature_mismatch_rejected(self, z2, monoid):
        with pytest.raises(ModelError):
            check_model(xor_model(z2), monoid)


class TestTableValidation:
    def test_wrong_table_length(self, z2):
        with pytest.raises(ModelError):
            FiniteModel(
                theory=z2,
                size=2,
                const_table=(("e", 0), ("a", 1)),
                fn_tables=(("mul", (0, 1, 1)),),
                pred_tables=(),
            )

    def test_value_outside_domain(self, z2):
        with pytest.raises(ModelError):
            FiniteModel(
                theory=z2,
                size=2,
                const_table=(("e", 0), ("a", 2)),
                fn_tables=(("mul", (0, 1, 1, 0)),),
                pred_tables=(),
            )

    def test_empty_domain_rejected(self, z2):
        with pytest.raises(ModelError):
            FiniteModel(
                theory=z2, size=0, const_table=(), fn_tables=(), pred_tables=()
            )


class TestFindModel:
    def test_empty_theory_is_a_point(self):
        t = Theory("Point", Signature(("c",), (), ()), ())
        m = find_model(t, 4)
        assert m.size == 1
        assert m.const("c") == 0

    def test_z2_canonical_tables(self, z2):
        m = find_model(z2, 4)
        assert m.to_json_dict() == Z2_TABLES

    def test_agrees_with_brute_force(self, z2):
        assert find_model(z2, 4).to_json_dict() == brute_force_least_model(z2, 4)

    def test_monoid_least_model_is_trivial(self, monoid):
        m = find_model(monoid, 4)
        assert m.size == 1
        assert brute_force_least_model(monoid, 4) == m.to_json_dict()

    def test_unsatisfiable_raises(self):
        with pytest.raises(NotFoundWithinBound):
            find_model(load_theory("unsat.thy"), 4)

    def test_no_finite_model_raises(self):
        with pytest.raises(NotFoundWithinBound):
            find_model(load_theory("infinite.thy"), 3)

    def test_axiom_order_does_not_matter(self, z2):
        permuted = Theory(z2.name, z2.signature, tuple(reversed(z2.axioms)))
        assert find_model(permuted, 4).to_json_dict() == Z2_TABLES


class TestHoms:
    def test_identity_hom(self, z2):
        m = xor_model(z2)
        assert check_hom(ModelHom(m, m, (0, 1))) == []

    def test_swap_is_a_hom_between_relabelings(self, z2):
        m = xor_model(z2)
        swapped = FiniteModel(
            theory=z2,
            size=2,
            const_table=(("e", 1), ("a", 0)),
            fn_tables=(("mul", (1, 0, 0, 1)),),
            pred_tables=(),
        )
        assert check_hom(ModelHom(m, swapped, (1, 0))) == []

    def test_violations_are_named(self, z2):
        m = xor_model(z2)
        bad = FiniteModel(
            theory=z2,
            size=2,
            const_table=(("e", 0), ("a", 1)),
            fn_tables=(("mul", (0, 1, 1, 1)),),
            pred_tables=(),
        )
        out = check_hom(ModelHom(m, bad, (0, 1)))
        assert out == ["mul(1, 1): 0 != 1"]


class TestReduct:
    def test_pulls_tables_back(self, monoid, z2):
        phi = parse_translation(
            (FIXTURES / "mon_to_z2.tra").read_text(), monoid, z2
        )
        r = reduct(phi, xor_model(z2))
        assert r.theory is monoid
        assert r.size == 2
        assert r.to_json_dict() == {
            "size": 2,
            "constants": {"e": 0},
            "functions": {"mul": [0, 1, 1, 0]},
            "predicates": {},
        }

    def test_wrong_target_rejected(self, monoid, z2):
        phi = parse_translation(
            (FIXTURES / "mon_to_z2.tra").read_text(), monoid, z2
        )
        with pytest.raises(ModelError):
            reduct(phi, find_model(monoid, 4))


class TestInducedHom:
    def test_collapse_into_z2(self, monoid, z2):
        phi = parse_translation(
            (FIXTURES / "mon_to_z2.tra").read_text(), monoid, z2
        )
        h = induced_hom(phi, find_model(monoid, 4), xor_model(z2), (E,))
        assert h.mapping == (0,)
        assert h.target == reduct(phi, xor_model(z2))

    def test_identity_translation_identity_map(self, z2):
        phi = parse_translation((FIXTURES / "z2_id.tra").read_text(), z2, z2)
        m = xor_model(z2)
        h = induced_hom(phi, m, m, (E, A))
        assert h.mapping == (0, 1)

    def test_representation_gap(self, z2):
        phi = parse_translation((FIXTURES / "z2_id.tra").read_text(), z2, z2)
        m = xor_model(z2)
        with pytest.raises(HomError, match="no term denotes element 1"):
            induced_hom(phi, m, m, (E,))

    def test_not_single_valued(self, z2):
        phi = parse_translation((FIXTURES / "z2_id.tra").read_text(), z2, z2)
        with pytest.raises(HomError, match="not single-valued") as exc:
            induced_hom(phi, collapsed_model(z2), xor_model(z2), (E, A))
        assert exc.value.witnesses == [
            "e and a both denote 0 but map to 0 and 1"
        ]

    def test_not_a_homomorphism(self, z2):
        phi = parse_translation((FIXTURES / "z2_id.tra").read_text(), z2, z2)
        bad = FiniteModel(
            theory=z2,
            size=2,
            const_table=(("e", 0), ("a", 1)),
            fn_tables=(("mul", (0, 1, 1, 1)),),
            pred_tables=(),
        )
        with pytest.raises(HomError, match="not a homomorphism") as exc:
            induced_hom(phi, xor_model(z2), bad, (E, A))
        assert exc.value.witnesses == ["mul(1, 1): 0 != 1"]


class TestIsomorphism:
    def test_self(self, z2):
        assert check_isomorphic(xor_model(z2), xor_model(z2)) == (0, 1)

    def test_relabeling_found(self, z2):
        swapped = FiniteModel(
            theory=z2,
            size=2,
            const_table=(("e", 1), ("a", 0)),
            fn_tables=(("mul", (1, 0, 0, 1)),),
            pred_tables=(),
        )
        assert check_isomorphic(xor_model(z2), swapped) == (1, 0)

    def test_size_mismatch(self, z2):
        assert check_isomorphic(xor_model(z2), collapsed_model(z2)) is None

    def test_different_tables(self, z2):
        other = FiniteModel(
            theory=z2,
            size=2,
            const_table=(("e", 0), ("a", 1)),
            fn_tables=(("mul", (0, 1, 1, 1)),),
            pred_tables=(),
        )
        assert check_isomorphic(xor_model(z2), other) is None

    def test_predicate_mismatch(self):
        t = load_theory("gap.thy")
        kwargs = dict(
            theory=t, size=2, const_table=(("c", 0),), fn_tables=()
        )
        with_p = FiniteModel(pred_tables=(("P", (True, False)),), **kwargs)
        without = FiniteModel(pred_tables=(("P", (False, False)),), **kwargs)
        assert check_isomorphic(with_p, without) is None
        assert check_isomorphic(with_p, with_p) == (0, 1)
