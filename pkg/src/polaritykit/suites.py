"""Check suites over frames and lattice expansions, as run by the CLI."""

from __future__ import annotations

import itertools
from typing import Sequence

from . import _bits
from .canonical import (
    CanonicalFrame,
    canonical_extension_check,
    canonical_frame,
    represent_operator,
    representation_check,
    sigma_check,
    verify_canonical_lemmas,
)
from .lattice import LatticeExpansion
from .polarity import Polarity, dm_completion_check, is_separated
from .relations import (
    SortedRelation,
    check_complete_additivity,
    closed_image,
    conjugate_relation_from,
    conjugate_residual_report,
    galois_dual,
    goldblatt_operator,
    is_conjugate_pair,
    sections_all_stable,
)
from .report import Check, group

SUITES = ("lemmas", "additivity", "conjugates", "all")


def stability_check(R: SortedRelation) -> Check:
    res = sections_all_stable(R)
    return Check("sections_stable", res.stable, res.witness.to_dict() if res.witness else None)


def goldblatt_check(R: SortedRelation) -> Check:
    P = R.polarity
    S = galois_dual(R)
    bad = None
    count = 0
    for fs in itertools.product(*(P.galois_sets(s) for s in R.stype.args)):
        count += 1
        if goldblatt_operator(S, fs).mask != closed_image(R, fs).mask:
            bad = [_bits.fmt(m) for m in fs]
            break
    detail = {"tuples": count} if bad is None else {"witness": bad}
    return Check("goldblatt_equals_closed_image", bad is None, detail)


def additivity_check(R: SortedRelation) -> Check:
    checks = [stability_check(R)]
    for k in range(1, R.arity + 1):
        res = check_complete_additivity(R, k)
        detail = res.counterexample or {"families": res.families_checked}
        checks.append(Check(f"complete_additivity:{k}", res.passed, detail))
    return group(f"additivity:{R.name}", checks)


def conjugates_check(R: SortedRelation) -> Check:
    checks = []
    stable = sections_all_stable(R)
    for k in range(1, R.arity + 1):
        rep = conjugate_residual_report(R, k)
        parts = [
            Check("three_way_equivalence", rep.equivalent,
                  {"additive": rep.additive, "conjugate": rep.conjugate_law, "residual": rep.residual_law}),
            Check("conjugate_law", rep.conjugate_law),
            Check("residual_law", rep.residual_law),
            Check("conjugate_symmetric", rep.symmetric),
            Check("residual_forms_agree", rep.form_mismatches == 0 and rep.residual_mismatches == 0,
                  {"form_mismatches": rep.form_mismatches, "residual_mismatches": rep.residual_mismatches}),
            Check("residuals_galois", rep.non_galois_residuals == 0, {"count": rep.non_galois_residuals}),
        ]
        if stable:
            S = conjugate_relation_from(R, k)
            parts.append(Check("conjugate_relation", is_conjugate_pair(R, S, k), {"sort_type": str(S.stype)}))
        else:
            # the construction needs every section of the dual stable
            parts.append(Check("conjugate_relation", False, stable.witness.to_dict()))
        checks.append(group(f"place:{k}", parts))
    return group(f"conjugates:{R.name}", checks)


def frame_lemmas(P: Polarity, relations: Sequence[SortedRelation]) -> Check:
    checks = [Check("separated", is_separated(P))]
    if is_separated(P):
        checks.append(dm_completion_check(P))
    for R in relations:
        checks.append(group(f"relation:{R.name}", [stability_check(R), goldblatt_check(R)]))
    return group("lemmas", checks)


def frame_suite(P: Polarity, relations: Sequence[SortedRelation], suite: str = "all") -> Check:
    parts = []
    if suite in ("lemmas", "all"):
        parts.append(frame_lemmas(P, relations))
    if suite in ("additivity", "all"):
        parts.append(group("additivity", [additivity_check(R) for R in relations]))
    if suite in ("conjugates", "all"):
        parts.append(group("conjugates", [conjugates_check(R) for R in relations]))
    return group(f"suite:{suite}", parts)


def lattice_lemmas(CF: CanonicalFrame) -> Check:
    checks = [
        verify_canonical_lemmas(CF),
        representation_check(CF),
        canonical_extension_check(CF),
        sigma_check(CF),
        dm_completion_check(CF.polarity),
    ]
    checks += [group(f"relation:{R.name}", [goldblatt_check(R)]) for R in CF.relations]
    return group("lemmas", checks)


def lattice_suite(E: LatticeExpansion, suite: str = "all") -> Check:
    CF = canonical_frame(E)
    if suite == "lemmas":
        return group("suite:lemmas", [lattice_lemmas(CF)])
    parts = [lattice_lemmas(CF)] if suite == "all" else []
    rest = frame_suite(CF.polarity, CF.relations, "all" if suite == "all" else suite)
    parts += [c for c in rest.children if c.name != "lemmas"]
    return group(f"suite:{suite}", parts)


def represent_report(E: LatticeExpansion) -> Check:
    CF = canonical_frame(E)
    return group("represent", [representation_check(CF)] + [represent_operator(CF, f)[1] for f in E.operators])
