"""Modifications between families of comparison maps.

Cells here are equality witnesses, so the interesting behavior is all
in the failure paths: which theory breaks the family, which class
breaks the square, and whether contractibility names the stray family."""

import pytest

from modelbridge.henkin import (
    build_term_model,
    extend_translation,
    henkin_expand,
    lindenbaum_complete,
    map_term_model,
)
from modelbridge.models import ModelHom, find_model, induced_hom
from modelbridge.nattrans import NatCandidate, build_eta, check_rigidity
from modelbridge.parser import parse_translation
from modelbridge.twocat import (
    Modification,
    ModificationError,
    build_modification,
    check_contractibility,
    check_modification_coherence,
)
from modelbridge.syntax import Const

from conftest import FIXTURES

E, A = Const("e"), Const("a")


@pytest.fixture(scope="module")
def setting(z2, monoid):
    pieces = {}
    for name, theory in (("Z2", z2), ("Monoid", monoid)):
        completed = lindenbaum_complete(henkin_expand(theory, 0, 0), 3, 4, 2000)
        tm = build_term_model(completed, 2)
        g = find_model(completed.constraint_theory(), 4)
        pieces[name] = (completed, tm, g, build_eta(tm, g))
    return pieces


@pytest.fixture(scope="module")
def etas(setting):
    return {name: parts[3] for name, parts in setting.items()}


def copies(etas):
    return {
        name: NatCandidate(f"copy-{name}", eta.mapping) for name, eta in etas.items()
    }


def twisted(etas):
    out = copies(etas)
    z2 = etas["Z2"]
    out["Z2"] = NatCandidate("twist-Z2", tuple(reversed(z2.mapping)))
    return out


class TestBuildModification:
    def test_equal_families_join(self, etas):
        mu = build_modification(copies(etas), etas)
        assert [name for name, _ in mu.cells] == ["Monoid", "Z2"]
        assert all(cell.passed for _, cell in mu.cells)

    def test_empty_families(self):
        mu = build_modification({}, {})
        assert mu.cells == ()

    def test_disagreement_names_the_theory(self, etas):
        with pytest.raises(ModificationError, match="disagree at Z2") as exc:
            build_modification(twisted(etas), etas)
        assert "class [e] (id 0)" in exc.value.witnesses[0]

    def test_index_mismatch(self, etas):
        thetas = copies(etas)
        del thetas["Monoid"]
        with pytest.raises(ModificationError, match="indexed differently: Monoid"):
            build_modification(thetas, etas)

    def test_agreement_iff_rigidity(self, etas):
        # the constructor succeeds exactly when every pointwise rigidity
        # check passes; probe both directions
        for thetas in (copies(etas), twisted(etas)):
            reports = [check_rigidity(thetas[n], etas[n]) for n in sorted(etas)]
            if all(r.passed for r in reports):
                assert isinstance(build_modification(thetas, etas), Modification)
            else:
                with pytest.raises(ModificationError):
                    build_modification(thetas, etas)


@pytest.fixture(scope="module")
def square(setting, z2, monoid):
    phi = parse_translation((FIXTURES / "mon_to_z2.tra").read_text(), monoid, z2)
    mc, mtm, mg, _ = setting["Monoid"]
    zc, ztm, zg, _ = setting["Z2"]
    ext = extend_translation(phi, mc.expansion, zc.expansion)
    f_map = map_term_model(ext, mtm, ztm)
    g_map = induced_hom(ext, mg, zg, (E,))
    return (ext, "Monoid", "Z2", f_map, g_map)


class TestCoherence:
    def test_canonical_family_coheres(self, etas, square):
        mu = build_modification(copies(etas), etas)
        r = check_modification_coherence(mu, [square])
        assert r.passed
        assert r.check == "modification-coherence"

    def test_sabotaged_bottom_map_breaks_both_squares(self, etas, square):
        mu = build_modification(copies(etas), etas)
        phi, src, dst, f_map, g_map = square
        bad = ModelHom(g_map.source, g_map.target, (1,))
        r = check_modification_coherence(mu, [(phi, src, dst, f_map, bad)])
        assert r.status == "fail"
        # the eta square and the candidate square report independently
        assert any("class [e]" in w for w in r.witnesses)
        assert any("candidate square breaks at class 0" in w for w in r.witnesses)

    def test_unknown_family_entry(self, etas, square):
        mu = build_modification(copies(etas), etas)
        phi, _, _, f_map, g_map = square
        r = check_modification_coherence(mu, [(phi, "Monoid", "Z3", f_map, g_map)])
        assert r.status == "fail"
        assert "no family entry for Monoid -> Z3" in r.witnesses[0]

    def test_no_squares_is_vacuous(self, etas):
        mu = build_modification(copies(etas), etas)
        assert check_modification_coherence(mu, []).passed


class TestContractibility:
    def test_canonical_copies_contract(self, etas):
        r = check_contractibility([copies(etas)], etas)
        assert r.passed
        assert r.check == "contractibility"

    def test_stray_family_is_named(self, etas):
        r = check_contractibility([copies(etas), twisted(etas)], etas)
        assert r.status == "fail"
        assert len(r.witnesses) == 1
        assert r.witnesses[0].startswith("family '")
        assert "class [e] (id 0)" in r.witnesses[0]

    def test_no_families_vacuous(self, etas):
        assert check_contractibility([], etas).passed

    def test_every_reported_family_really_fails(self, etas):
        families = [copies(etas), twisted(etas)]
        r = check_contractibility(families, etas)
        failing = sum(
            1
            for family in families
            if not all(
                check_rigidity(family[n], etas[n]).passed for n in sorted(etas)
            )
        )
        assert len(r.witnesses) == failing
