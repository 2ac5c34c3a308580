"""Finite-set category: encodings, the product/exponential structure,
and the diagonal fixed-point argument, checked exhaustively at the
sizes where exhaustion is cheap."""

from itertools import product as iproduct

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modelbridge.finset import (
    TERMINAL,
    FinMap,
    FinSetError,
    FinSetObj,
    all_maps,
    compose,
    curry,
    eval_map,
    exponential,
    fn_index,
    fn_table,
    identity,
    lawvere_fixed_point,
    pair_index,
    point_surjective,
    product,
    proj1,
    proj2,
    tuple_map,
    uncurry,
    unpair,
)

X1, X2, X3 = FinSetObj(1), FinSetObj(2), FinSetObj(3)


class TestObjectsAndMaps:
    def test_elements(self):
        assert list(X3.elements()) == [0, 1, 2]
        assert list(FinSetObj(0).elements()) == []

    def test_negative_size_rejected(self):
        with pytest.raises(FinSetError):
            FinSetObj(-1)

    def test_table_validation(self):
        with pytest.raises(FinSetError):
            FinMap(X2, X2, (0,))
        with pytest.raises(FinSetError):
            FinMap(X2, X2, (0, 2))

    def test_identity_and_compose(self):
        f = FinMap(X2, X3, (2, 0))
        assert compose(f, identity(X2)).table == f.table
        assert compose(identity(X3), f).table == f.table
        g = FinMap(X3, X2, (1, 1, 0))
        assert compose(g, f).table == (0, 1)

    def test_compose_shape_mismatch(self):
        f = FinMap(X2, X3, (0, 1))
        with pytest.raises(FinSetError):
            compose(f, f)

    def test_associativity_exhaustive(self):
        maps_ab = list(all_maps(X2, X2))
        for f in maps_ab:
            for g in maps_ab:
                for h in maps_ab:
                    assert compose(h, compose(g, f)) == compose(compose(h, g), f)


class TestProducts:
    def test_pair_round_trip(self):
        for u, v in iproduct(range(3), range(2)):
            p = pair_index(X2, u, v)
            assert unpair(X2, p) == (u, v)

    def test_projections(self):
        a, b = X3, X2
        p1, p2 = proj1(a, b), proj2(a, b)
        for u, v in iproduct(a.elements(), b.elements()):
            p = pair_index(b, u, v)
            assert p1(p) == u
            assert p2(p) == v

    def test_tuple_map_is_the_unique_factorization(self):
        z, a, b = X2, X2, X3
        for f in all_maps(z, a):
            for g in all_maps(z, b):
                h = tuple_map(f, g)
                assert compose(proj1(a, b), h) == f
                assert compose(proj2(a, b), h) == g

    def test_tuple_map_shape_mismatch(self):
        with pytest.raises(FinSetError):
            tuple_map(FinMap(X2, X2, (0, 1)), FinMap(X3, X2, (0, 1, 0)))

    def test_terminal(self):
        assert TERMINAL.size == 1
        for z in (X1, X2, X3):
            maps = list(all_maps(z, TERMINAL))
            assert len(maps) == 1  # exactly one map into the point


class TestExponentials:
    def test_sizes(self):
        assert exponential(X2, X2).size == 4
        assert exponential(X3, X1).size == 1
        assert exponential(X3, X2).size == 8

    def test_fn_encoding_round_trip(self):
        for idx in range(exponential(X3, X2).size):
            assert fn_index(X3, X2, fn_table(X3, X2, idx)) == idx

    def test_fn_index_is_msb_first(self):
        assert fn_index(X3, X2, (1, 0, 0)) == 4
        assert fn_table(X3, X2, 4) == (1, 0, 0)

    def test_fn_encoding_rejects_bad_tables(self):
        with pytest.raises(FinSetError):
            fn_index(X3, X2, (0, 1))
        with pytest.raises(FinSetError):
            fn_index(X3, X2, (0, 1, 2))
        with pytest.raises(FinSetError):
            fn_table(X3, X2, 8)

    def test_eval_map_applies(self):
        ev = eval_map(X2, X3)
        for fidx in exponential(X2, X3).elements():
            row = fn_table(X2, X3, fidx)
            for xi in X2.elements():
                assert ev(pair_index(X2, fidx, xi)) == row[xi]


class TestCurrying:
    @pytest.mark.parametrize(
        "z,x,y", [(X1, X1, X1), (X2, X2, X2), (X2, X3, X2), (X3, X2, X3)]
    )
    def test_universal_property_exhaustive(self, z, x, y):
        # ev . (curry(g) x id) = g for every g, and curry is the only
        # map with that property; uniqueness follows from injectivity
        ev = eval_map(x, y)
        seen = set()
        for g in all_maps(product(z, x), y):
            h = curry(g, z, x)
            for zi, xi in iproduct(z.elements(), x.elements()):
                assert ev(pair_index(x, h(zi), xi)) == g(pair_index(x, zi, xi))
            assert h.table not in seen
            seen.add(h.table)

    def test_uncurry_inverts_curry(self):
        z, x, y = X2, X3, X2
        for g in all_maps(product(z, x), y):
            assert uncurry(curry(g, z, x), x, y) == g

    def test_curry_inverts_uncurry(self):
        z, x, y = X2, X2, X3
        for h in all_maps(z, exponential(x, y)):
            assert curry(uncurry(h, x, y), z, x) == h

    def test_shape_checks(self):
        g = FinMap(X3, X2, (0, 1, 0))
        with pytest.raises(FinSetError):
            curry(g, X2, X2)
        with pytest.raises(FinSetError):
            uncurry(g, X2, X2)


class TestPointSurjectivity:
    def test_no_surjection_onto_bigger_exponential(self):
        # |Y^X| = 4 > 2 = |X|: something is always missed
        for g in all_maps(X2, exponential(X2, X2)):
            assert point_surjective(g, X2, X2) is not None

    def test_least_missing_table(self):
        g = FinMap(X2, exponential(X2, X2), (2, 3))
        assert point_surjective(g, X2, X2) == (0, 0)

    def test_surjective_when_y_is_a_point(self):
        g = FinMap(X3, exponential(X3, X1), (0, 0, 0))
        assert point_surjective(g, X3, X1) is None

    def test_shape_check(self):
        with pytest.raises(FinSetError):
            point_surjective(FinMap(X2, X2, (0, 1)), X2, X2)


class TestLawvere:
    def test_singleton(self):
        g = FinMap(X1, exponential(X1, X1), (0,))
        f = identity(X1)
        out = lawvere_fixed_point(g, f, X1, X1)
        assert out.surjective
        assert out.fixed_point == 0
        assert out.diagonal == (0,)

    def test_cantor_witness_at_two(self):
        # no g: X -> 2^X is point-surjective; g = (0, 1) hits the tables
        # (0,0) and (0,1), so the least missing one is (1,0)
        g = FinMap(X2, exponential(X2, X2), (0, 1))
        flip = FinMap(X2, X2, (1, 0))
        out = lawvere_fixed_point(g, flip, X2, X2)
        assert not out.surjective
        assert out.missing == (1, 0)
        assert out.fixed_point is None and out.diagonal is None

    def test_every_surjective_g_fixes_every_f(self):
        # at |Y| = 1 every g is point-surjective and 0 is the only point
        x, y = X3, X1
        for g in all_maps(x, exponential(x, y)):
            for f in all_maps(y, y):
                out = lawvere_fixed_point(g, f, x, y)
                assert out.surjective
                assert f(out.fixed_point) == out.fixed_point

    def test_fixed_points_found_whenever_g_is_surjective(self):
        # exhaustive over small shapes: whenever point_surjective says
        # yes, the diagonal produces a genuine fixed point of f
        for x, y in ((X1, X1), (X1, X2), (X2, X1), (X3, X1)):
            for g in all_maps(x, exponential(x, y)):
                if point_surjective(g, x, y) is not None:
                    continue
                for f in all_maps(y, y):
                    out = lawvere_fixed_point(g, f, x, y)
                    assert out.fixed_point is not None
                    assert f(out.fixed_point) == out.fixed_point

    def test_f_shape_check(self):
        g = FinMap(X1, exponential(X1, X1), (0,))
        with pytest.raises(FinSetError):
            lawvere_fixed_point(g, identity(X2), X1, X1)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_fn_encoding_round_trip_property(nx, ny, data):
    x, y = FinSetObj(nx), FinSetObj(ny)
    table = tuple(
        data.draw(st.integers(0, ny - 1), label=f"t{i}") for i in range(nx)
    )
    assert fn_table(x, y, fn_index(x, y, table)) == table


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.data())
def test_curry_round_trip_property(nz, nx, ny, data):
    z, x, y = FinSetObj(nz), FinSetObj(nx), FinSetObj(ny)
    table = tuple(
        data.draw(st.integers(0, ny - 1), label=f"g{i}") for i in range(nz * nx)
    )
    g = FinMap(product(z, x), y, table)
    assert uncurry(curry(g, z, x), x, y) == g
