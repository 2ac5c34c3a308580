import pytest

from modelbridge.syntax import (
    And,
    App,
    Const,
    Eq,
    Exists,
    Forall,
    Not,
    Pred,
    Signature,
    SignatureError,
    Theory,
    TheoryTranslation,
    TranslationError,
    Var,
    alpha_equal,
    alpha_key,
    compose_translations,
    format_formula,
    format_term,
    free_vars,
    identity_translation,
    is_sentence,
    substitute,
    term_depth,
    term_is_ground,
    term_key,
    term_vars,
)

SIG = Signature(("e", "a"), (("mul", 2),), ())
E, A = Const("e"), Const("a")


def mul(x, y):
    return App("mul", (x, y))


class TestTerms:
    def test_depth(self):
        assert term_depth(E) == 0
        assert term_depth(mul(E, A)) == 1
        assert term_depth(mul(mul(E, A), E)) == 2

    def test_ground(self):
        assert term_is_ground(mul(E, A))
        assert not term_is_ground(mul(Var("x"), A))
        assert term_vars(mul(Var("x"), mul(Var("y"), Var("x")))) == {"x", "y"}

    def test_key_orders_by_depth_then_shape(self):
        terms = [mul(A, A), E, mul(E, A), A, mul(E, E)]
        terms.sort(key=lambda t: term_key(SIG, t))
        assert terms == [E, A, mul(E, E), mul(E, A), mul(A, A)]


class TestSubstitution:
    def test_single_occurrence(self):
        assert substitute(Pred("P", (Var("x"),)), "x", Const("c")) == Pred(
            "P", (Const("c"),)
        )

    def test_bound_occurrence_untouched(self):
        f = Forall("x", Pred("P", (Var("x"),)))
        assert substitute(f, "x", Const("c")) == f

    def test_shadowing_respected(self):
        f = And(Pred("Q", (Var("x"),)), Exists("x", Pred("R", (Var("x"),))))
        got = substitute(f, "x", mul(A, A))
        assert got == And(Pred("Q", (mul(A, A),)), Exists("x", Pred("R", (Var("x"),))))

    def test_capture_avoided(self):
        # substituting a term containing y under a binder for y must
        # rename the binder, not capture
        f = Exists("y", Eq(Var("x"), Var("y")))
        got = substitute(f, "x", Var("y"))
        assert isinstance(got, Exists)
        assert got.var != "y"
        assert free_vars(got) == {"y"}


class TestAlpha:
    def test_bound_names_do_not_matter(self):
        f = Forall("x", Eq(Var("x"), E))
        g = Forall("z", Eq(Var("z"), E))
        assert alpha_equal(f, g)
        assert alpha_key(f) == alpha_key(g)

    def test_structure_matters(self):
        f = Forall("x", Eq(Var("x"), E))
        g = Exists("x", Eq(Var("x"), E))
        assert not alpha_equal(f, g)


class TestSignature:
    def test_duplicate_name_rejected(self):
        with pytest.raises(SignatureError):
            Signature(("e", "e"), (), ())
        with pytest.raises(SignatureError):
            Signature(("e",), (("e", 1),), ())

    def test_lookup(self):
        assert SIG.fn_arity("mul") == 2
        assert SIG.const_index("a") == 1
        with pytest.raises(SignatureError):
            SIG.fn_arity("nope")

    def test_with_constants_appends_in_order(self):
        ext = SIG.with_constants(("w0", "w1"))
        assert ext.constants == ("e", "a", "w0", "w1")


class TestTheory:
    def test_open_axiom_rejected(self):
        with pytest.raises(ValueError):
            Theory("T", SIG, (Eq(Var("x"), E),))

    def test_undeclared_symbol_rejected(self):
        with pytest.raises(SignatureError):
            Theory("T", SIG, (Pred("P", (E,)),))


class TestFormatting:
    def test_term(self):
        assert format_term(mul(E, mul(A, A))) == "mul(e, mul(a, a))"

    def test_negated_equality(self):
        assert format_formula(Not(Eq(A, E))) == "~(a = e)"

    def test_quantifier_body_is_maximal(self):
        f = Forall("x", And(Eq(Var("x"), E), Eq(Var("x"), Var("x"))))
        assert format_formula(f) == "forall x. x = e & x = x"


def _theories():
    mon_sig = Signature(("e",), (("mul", 2),), ())
    mon = Theory(
        "Monoid",
        mon_sig,
        (Forall("x", Eq(App("mul", (Const("e"), Var("x"))), Var("x"))),),
    )
    z2 = Theory(
        "Z2",
        SIG,
        (Forall("x", Eq(App("mul", (Const("e"), Var("x"))), Var("x"))),),
    )
    return mon, z2


class TestTranslations:
    def test_identity_has_trivial_obligations(self):
        mon, _ = _theories()
        t = identity_translation(mon)
        assert [alpha_key(o) for o in t.obligations()] == [
            alpha_key(a) for a in mon.axioms
        ]

    def test_symbolwise_application(self):
        mon, z2 = _theories()
        phi = TheoryTranslation(
            "i", mon, z2, const_map=(("e", "e"),), fn_map=(("mul", "mul"),)
        )
        assert phi.term(App("mul", (Const("e"), Const("e")))) == mul(E, E)

    def test_totality_enforced(self):
        mon, z2 = _theories()
        with pytest.raises(TranslationError):
            TheoryTranslation("bad", mon, z2, const_map=(), fn_map=(("mul", "mul"),))

    def test_arity_preservation_enforced(self):
        mon, z2 = _theories()
        bad_sig = Signature(("e", "a"), (("mul", 2), ("inv", 1)), ())
        tgt = Theory("T", bad_sig, ())
        with pytest.raises(TranslationError):
            TheoryTranslation(
                "bad", mon, tgt, const_map=(("e", "e"),), fn_map=(("mul", "inv"),)
            )

    def test_compose_applies_right_then_left(self):
        mon, z2 = _theories()
        phi = TheoryTranslation(
            "phi", mon, z2, const_map=(("e", "e"),), fn_map=(("mul", "mul"),)
        )
        psi = identity_translation(z2)
        comp = compose_translations(psi, phi)
        assert comp.source is mon and comp.target is z2
        assert comp.term(Const("e")) == E


def test_sentence_check():
    assert is_sentence(Forall("x", Eq(Var("x"), Var("x"))))
    assert not is_sentence(Eq(Var("x"), Var("x")))
