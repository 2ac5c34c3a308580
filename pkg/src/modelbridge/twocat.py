"""Strict two-level structure on top of the comparison maps.

Between maps of structured families there is no room for interesting
higher cells here: a cell from a candidate family to the canonical
family is an equality witness, one per theory.  So building a
modification is exactly checking pointwise agreement, and
contractibility of the candidate space means every family one can write
down collapses onto the canonical one.  Degenerate on purpose; the
value is that the degeneracy is checked, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .models import ModelHom
from .henkin import TermModelMap
from .nattrans import (
    CheckReport,
    EtaComponent,
    NatCandidate,
    check_naturality,
    check_rigidity,
    _report,
)
from .syntax import TheoryTranslation


class ModificationError(Exception):
    def __init__(self, msg: str, witnesses: list[str] | None = None):
        super().__init__(msg)
        self.witnesses = witnesses or []


@dataclass(frozen=True)
class Modification:
    """Cell family witnessing that a candidate family equals the
    canonical family, theory by theory.  cells[name] is the rigidity
    report that passed for that theory."""

    source: tuple[tuple[str, NatCandidate], ...]
    target: tuple[tuple[str, EtaComponent], ...]
    cells: tuple[tuple[str, CheckReport], ...]


def build_modification(
    thetas: dict[str, NatCandidate],
    etas: dict[str, EtaComponent],
) -> Modification:
    """Identity modification between pointwise-equal families.

    Raises ModificationError naming the first theory and class where the
    families disagree.  Uniqueness needs no search: between equal maps
    there is exactly one equality witness.
    """
    if set(thetas) != set(etas):
        extra = sorted(set(thetas) ^ set(etas))
        raise ModificationError(f"families indexed differently: {', '.join(extra)}")
    cells = []
    for name in sorted(thetas):
        report = check_rigidity(thetas[name], etas[name])
        if not report.passed:
            raise ModificationError(
                f"no modification: families disagree at {name}",
                list(report.witnesses),
            )
        cells.append((name, report))
    return Modification(
        source=tuple(sorted(thetas.items())),
        target=tuple(sorted(etas.items())),
        cells=tuple(cells),
    )


def check_modification_coherence(
    mu: Modification,
    squares: list[tuple[TheoryTranslation, str, str, TermModelMap, ModelHom]],
) -> CheckReport:
    """Pasted squares for the candidate sides.

    Each entry names a translation, its source and target theory in the
    families, and the two induced maps.  Since the cells witness
    theta = eta pointwise, the theta square commutes exactly when the
    eta square does; both sides are still rechecked literally.
    """
    thetas = dict(mu.source)
    etas = dict(mu.target)
    witnesses: list[str] = []
    for phi, src_name, dst_name, f_map, g_map in squares:
        if src_name not in etas or dst_name not in etas:
            witnesses.append(f"{phi.name}: no family entry for {src_name} -> {dst_name}")
            continue
        eta_src, eta_dst = etas[src_name], etas[dst_name]
        base = check_naturality(phi, eta_src, eta_dst, f_map, g_map)
        for w in base.witnesses:
            witnesses.append(f"{phi.name}: {w}")
        theta_src, theta_dst = thetas[src_name], thetas[dst_name]
        for cid in range(len(theta_src.mapping)):
            top = theta_dst.mapping[f_map.class_map[cid]]
            bottom = g_map.mapping[theta_src.mapping[cid]]
            if top != bottom:
                witnesses.append(
                    f"{phi.name}: candidate square breaks at class {cid} "
                    f"({top} vs {bottom})"
                )
    return _report("modification-coherence", witnesses, coverage=1.0)


def check_contractibility(
    families: list[dict[str, NatCandidate]],
    etas: dict[str, EtaComponent],
) -> CheckReport:
    """Every candidate family must admit a modification to the canonical
    family; with equality cells that means every family IS the canonical
    one.  Fail names each family that is not."""
    witnesses: list[str] = []
    for family in families:
        try:
            build_modification(family, etas)
        except ModificationError as e:
            label = next(iter(family.values())).description if family else "empty"
            detail = e.witnesses[0] if e.witnesses else str(e)
            witnesses.append(f"family '{label}': {detail}")
    return _report("contractibility", witnesses, coverage=1.0)
