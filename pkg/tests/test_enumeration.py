from hypothesis import given, settings
from hypothesis import strategies as st

from modelbridge.enumeration import (
    enumerate_ground_terms,
    enumerate_sentences,
    ground_terms_capped,
    iter_ground_terms,
)
from modelbridge.syntax import (
    App,
    Const,
    Eq,
    Signature,
    format_formula,
    format_term,
    formula_size,
    subterms,
    term_key,
)

MON_A = Signature(("e", "a"), (("mul", 2),), ())


def fmt(terms):
    return [format_term(t) for t in terms]


class TestGroundTerms:
    def test_constants_only(self):
        sig = Signature(("c",), (), ())
        assert fmt(enumerate_ground_terms(sig, 3)) == ["c"]

    def test_depth_one_pinned(self):
        assert fmt(enumerate_ground_terms(MON_A, 1)) == [
            "e",
            "a",
            "mul(e, e)",
            "mul(e, a)",
            "mul(a, e)",
            "mul(a, a)",
        ]

    def test_depth_two_count_law(self):
        # 2 constants + 6^2 products of depth-<=1 terms
        assert len(enumerate_ground_terms(MON_A, 2)) == 38

    def test_no_constants_no_terms(self):
        sig = Signature((), (("f", 1),), ())
        assert enumerate_ground_terms(sig, 5) == []

    def test_prefix_stability(self):
        # deeper enumerations start with exactly the shallower ones
        d2 = enumerate_ground_terms(MON_A, 2)
        d3_prefix = ground_terms_capped(MON_A, 3, len(d2))
        assert d2 == d3_prefix

    def test_cap_is_a_prefix_of_the_stream(self):
        capped = ground_terms_capped(MON_A, 3, 10)
        stream = []
        for t, _depth in iter_ground_terms(MON_A):
            stream.append(t)
            if len(stream) == 10:
                break
        assert capped == stream

    def test_enumeration_sorted_by_canonical_key(self):
        terms = enumerate_ground_terms(MON_A, 2)
        keys = [term_key(MON_A, t) for t in terms]
        assert keys == sorted(keys)

    def test_prefixes_are_subterm_closed(self):
        terms = enumerate_ground_terms(MON_A, 2)
        for k in (1, 6, 20, len(terms)):
            prefix = set(terms[:k])
            for t in terms[:k]:
                assert set(subterms(t)) <= prefix


class TestSentences:
    def test_single_constant_budget_three(self):
        sig = Signature(("c",), (), ())
        got = [format_formula(s) for s in enumerate_sentences(sig, 3)]
        assert got == ["c = c"]

    def test_budget_zero(self):
        assert enumerate_sentences(MON_A, 0) == []

    def test_ground_equalities_come_first(self):
        got = [format_formula(s) for s in enumerate_sentences(MON_A, 3)]
        first_quantified = next(
            (i for i, s in enumerate(got) if s.startswith(("forall", "exists"))),
            len(got),
        )
        assert "e = a" in got[:first_quantified]

    def test_reflexive_equalities_included(self):
        # An equality between constants has three nodes, so budget 2 yields
        # nothing and budget 3 yields exactly the constant-pair equalities.
        assert enumerate_sentences(MON_A, 2) == []
        got = [format_formula(s) for s in enumerate_sentences(MON_A, 3)]
        assert got == ["e = e", "e = a", "a = a"]

    def test_deterministic(self):
        assert enumerate_sentences(MON_A, 7) == enumerate_sentences(MON_A, 7)

    def test_budget_filter_law(self):
        # Raising the budget grows each group in place, so the small list is
        # the large one filtered by size, not a prefix of it.
        for small_budget, big_budget in ((3, 7), (4, 9), (7, 9)):
            small = enumerate_sentences(MON_A, small_budget)
            big = enumerate_sentences(MON_A, big_budget)
            assert small == [f for f in big if formula_size(f) <= small_budget]


@st.composite
def signatures(draw):
    n_const = draw(st.integers(min_value=1, max_value=3))
    n_fn = draw(st.integers(min_value=0, max_value=2))
    consts = tuple(f"c{i}" for i in range(n_const))
    fns = tuple(
        (f"f{i}", draw(st.integers(min_value=1, max_value=2))) for i in range(n_fn)
    )
    return Signature(consts, fns, ())


@given(signatures(), st.integers(min_value=0, max_value=2))
@settings(max_examples=40, deadline=None)
def test_terms_unique_and_depth_bounded(sig, depth):
    from modelbridge.syntax import term_depth

    terms = enumerate_ground_terms(sig, depth)
    assert len(set(terms)) == len(terms)
    assert all(term_depth(t) <= depth for t in terms)


@given(signatures(), st.integers(min_value=1, max_value=40))
@settings(max_examples=40, deadline=None)
def test_capped_prefix_subterm_closed(sig, cap):
    terms = ground_terms_capped(sig, 3, cap)
    pool = set(terms)
    for t in terms:
        assert set(subterms(t)) <= pool
