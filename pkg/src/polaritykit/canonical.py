"""Canonical frames of finite lattice expansions.

Points of ``X`` are the filters of the lattice, points of ``Y`` its ideals,
both enumerated in ascending mask order; ``x ⊩ y`` iff ``x ∩ y ≠ ∅``. Each
operator ``f`` with distribution type ``(i_1..i_n; i_{n+1})`` yields a relation
of sort type ``(i_{n+1}; i_1..i_n)`` through the point operator ``f̂``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from . import _bits
from .errors import GuardExceeded, LemmaPreconditionFailed, NotClosedElement, SortMismatch
from .guards import guard
from .lattice import (
    Lattice,
    LatticeExpansion,
    NormalOperator,
    enumerate_filters,
    enumerate_ideals,
    generated_filter,
    generated_ideal,
)
from .polarity import GaloisSet, Polarity, all_stable_sets, as_mask, clopen_witness, is_separated
from .relations import SortedRelation, _alpha_bar, _single_sorted, galois_dual, sections_all_stable
from .report import Check, group
from .sorts import DUAL, ONE, Sort, SortType


def canonical_polarity(L: Lattice) -> tuple[Polarity, list[int], list[int]]:
    """The filter/ideal polarity of ``L`` with its filter and ideal masks."""
    filters, ideals = enumerate_filters(L), enumerate_ideals(L)
    incidence = frozenset(
        (x, y) for x, f in enumerate(filters) for y, i in enumerate(ideals) if f & i
    )
    return Polarity(len(filters), len(ideals), incidence), filters, ideals


@dataclass(frozen=True, eq=False)
class CanonicalFrame:
    source: LatticeExpansion
    polarity: Polarity
    filters: tuple[int, ...]
    ideals: tuple[int, ...]

    @property
    def lattice(self) -> Lattice:
        return self.source.lattice

    @cached_property
    def filter_index(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.filters)}

    @cached_property
    def ideal_index(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.ideals)}

    def carrier(self, sort: Sort) -> tuple[int, ...]:
        return self.filters if sort is ONE else self.ideals

    def point_of(self, sort: Sort, mask: int) -> int:
        return (self.filter_index if sort is ONE else self.ideal_index)[mask]

    def principal(self, sort: Sort, a: int) -> int:
        """Index of ``x_a = ↑a`` (sort 1) or ``y_a = ↓a`` (dual sort)."""
        L = self.lattice
        return self.point_of(sort, L.up[a] if sort is ONE else L.down[a])

    @cached_property
    def relations(self) -> tuple[SortedRelation, ...]:
        return tuple(canonical_relation(self, f) for f in self.source.operators)

    def relation(self, name: str) -> SortedRelation:
        for R in self.relations:
            if R.name == name:
                return R
        raise KeyError(name)

    @cached_property
    def _hat_cache(self) -> dict[str, dict[tuple[int, ...], int]]:
        return {}


def canonical_frame(expansion: LatticeExpansion | Lattice) -> CanonicalFrame:
    if isinstance(expansion, Lattice):
        expansion = LatticeExpansion(expansion, ())
    L = expansion.lattice
    for f in expansion.operators:
        if f.arity > 3 or (f.arity and L.size > guard("lattice")):
            raise GuardExceeded(
                f"operator {f.name!r} (arity {f.arity}) over a lattice of size {L.size} "
                f"exceeds the lattice guard {guard('lattice')} / arity 3"
            )
    P, filters, ideals = canonical_polarity(L)
    return CanonicalFrame(expansion, P, tuple(filters), tuple(ideals))


def _operator(CF: CanonicalFrame, f: NormalOperator | str) -> NormalOperator:
    return CF.source.operator(f) if isinstance(f, str) else f


# ----------------------------------------------------- representation maps


def zeta1(CF: CanonicalFrame, a: int) -> GaloisSet:
    """The filters containing ``a``."""
    return GaloisSet(ONE, _bits.mask_of(x for x, m in enumerate(CF.filters) if m >> a & 1))


def zeta_d(CF: CanonicalFrame, a: int) -> GaloisSet:
    """The ideals containing ``a``."""
    return GaloisSet(DUAL, _bits.mask_of(y for y, m in enumerate(CF.ideals) if m >> a & 1))


def zeta(CF: CanonicalFrame, sort: Sort, a: int) -> int:
    return (zeta1 if sort is ONE else zeta_d)(CF, a).mask


# --------------------------------------------------------- point operators


def _hat(CF: CanonicalFrame, f: NormalOperator, u: tuple[int, ...]) -> int:
    cache = CF._hat_cache.setdefault(f.name, {})
    if u not in cache:
        members = [list(_bits.members(CF.carrier(s)[p])) for s, p in zip(f.dtype.args, u)]
        values = _bits.mask_of(f(*a) for a in itertools.product(*members))
        if f.dtype.out is ONE:
            cache[u] = CF.filter_index[generated_filter(CF.lattice, values)]
        else:
            cache[u] = CF.ideal_index[generated_ideal(CF.lattice, values)]
    return cache[u]


def hat_point_operator(CF: CanonicalFrame, f: NormalOperator | str, u: Sequence[int]) -> int:
    """``f̂(ū)``: the filter (output sort 1) or ideal generated by ``{f(ā) | ā ∈ ū}``.

    Place ``j`` of ``ū`` holds a filter index when ``i_j = 1`` and an ideal
    index otherwise. Returns a point index of the output sort.
    """
    f = _operator(CF, f)
    u = tuple(u)
    if len(u) != f.arity:
        raise SortMismatch(f"{f.name} takes {f.arity} points, got {len(u)}")
    for j, (p, s) in enumerate(zip(u, f.dtype.args)):
        if not (isinstance(p, int) and 0 <= p < len(CF.carrier(s))):
            raise SortMismatch(f"place {j + 1} needs a point of sort {s}, got {p!r}")
    return _hat(CF, f, u)


def canonical_relation(CF: CanonicalFrame, f: NormalOperator | str) -> SortedRelation:
    """``wRū`` iff ``f̂(ū) ⊆ w``, of sort type ``(i_{n+1}; i_1..i_n)``."""
    f = _operator(CF, f)
    out = f.dtype.out
    carrier = CF.carrier(out)
    P = CF.polarity
    sections = {}
    for u in itertools.product(*(range(P.size(s)) for s in f.dtype.args)):
        h = carrier[_hat(CF, f, u)]
        sections[u] = _bits.mask_of(w for w, m in enumerate(carrier) if _bits.issubset(h, m))
    return SortedRelation.from_sections(P, SortType(out, f.dtype.args), sections, f.name)


# ------------------------------------------------------------ lemma suite


def _lemma_checks_for(CF: CanonicalFrame, f: NormalOperator, R: SortedRelation) -> Check:
    P = CF.polarity
    out = f.dtype.out
    carrier = CF.carrier(out)
    arg_ranges = [range(P.size(s)) for s in f.dtype.args]
    checks = []

    sort_ok = R.stype == SortType(out, f.dtype.args)
    checks.append(Check("sort_type", sort_ok, {"sort_type": str(R.stype)}))

    bad = None
    for u in itertools.product(*arg_ranges):
        if R.section_of(u) != P.gamma(out, _hat(CF, f, u)):
            bad = list(u)
            break
    checks.append(Check("sections_are_closed_elements", bad is None, {"witness": bad} if bad else None))

    bad = None
    for u in itertools.product(*arg_ranges):
        sec = R.section_of(u)
        for k, s in enumerate(f.dtype.args):
            for w in range(P.size(s)):
                if _bits.issubset(CF.carrier(s)[w], CF.carrier(s)[u[k]]):
                    if not _bits.issubset(sec, R.section_of(u[:k] + (w,) + u[k + 1:])):
                        bad = list(u) + [k + 1, w]
                        break
            if bad:
                break
        if bad:
            break
    checks.append(Check("decreasing_in_each_place", bad is None, {"witness": bad} if bad else None))

    bad = None
    for u in itertools.product(*arg_ranges):
        members = [list(_bits.members(CF.carrier(s)[p])) for s, p in zip(f.dtype.args, u)]
        values = _bits.mask_of(f(*a) for a in itertools.product(*members))
        expected = _bits.mask_of(w for w, m in enumerate(carrier) if _bits.issubset(values, m))
        if R.section_of(u) != expected:
            bad = list(u)
            break
    checks.append(Check("unified_relational", bad is None, {"witness": bad} if bad else None))

    bad = None
    dual_carrier = CF.carrier(out.bar)
    dual = galois_dual(R)
    for u in itertools.product(*arg_ranges):
        members = [list(_bits.members(CF.carrier(s)[p])) for s, p in zip(f.dtype.args, u)]
        values = _bits.mask_of(f(*a) for a in itertools.product(*members))
        h = carrier[_hat(CF, f, u)]
        by_incidence = _bits.mask_of(v for v, m in enumerate(dual_carrier) if h & m)
        by_witness = _bits.mask_of(v for v, m in enumerate(dual_carrier) if values & m)
        if not (dual.section_of(u) == by_incidence == by_witness):
            bad = list(u)
            break
    checks.append(Check("galois_dual_characterization", bad is None, {"witness": bad} if bad else None))

    res = sections_all_stable(R)
    checks.append(Check("dual_sections_stable", res.stable,
                        res.witness.to_dict() if res.witness else None))
    return group(f"operator:{f.name}", checks)


def verify_canonical_lemmas(CF: CanonicalFrame) -> Check:
    P = CF.polarity
    checks = [Check("separated", is_separated(P))]
    incl = all(
        P.upsets(s)[u] == _bits.mask_of(z for z, m in enumerate(CF.carrier(s))
                                        if _bits.issubset(CF.carrier(s)[u], m))
        for s in (ONE, DUAL)
        for u in range(P.size(s))
    )
    checks.append(Check("preorder_is_inclusion", incl))
    for f, R in zip(CF.source.operators, CF.relations):
        checks.append(_lemma_checks_for(CF, f, R))
    return group("canonical_lemmas", checks)


# ------------------------------------------------------------ representation


def _zeta_index_map(CF: CanonicalFrame) -> list[int]:
    stable = all_stable_sets(CF.polarity, ONE)
    return [stable.index(zeta1(CF, a).mask) for a in range(CF.lattice.size)]


def representation_check(CF: CanonicalFrame) -> Check:
    """``ζ1`` is a lattice isomorphism onto the stable lattice (exact order tables)."""
    L = CF.lattice
    P = CF.polarity
    stable = all_stable_sets(P, ONE)
    z = [zeta1(CF, a).mask for a in range(L.size)]
    onto = sorted(z) == list(stable.sets)
    order = all(L.leq(a, b) == _bits.issubset(z[a], z[b]) for a in range(L.size) for b in range(L.size))
    ops = all(
        z[L.meet(a, b)] == stable.meet(z[a], z[b]) and z[L.join(a, b)] == stable.join(z[a], z[b])
        for a in range(L.size)
        for b in range(L.size)
    )
    bounds = z[L.bottom] == stable.bottom and z[L.top] == stable.top
    polars = all(P.polar(ONE, z[a]) == zeta_d(CF, a).mask and P.polar(DUAL, zeta_d(CF, a).mask) == z[a]
                 for a in range(L.size))
    clopen = all(
        clopen_witness(P, CF.principal(ONE, a)) == CF.principal(DUAL, a)
        and z[a] == P.cols[CF.principal(DUAL, a)]
        for a in range(L.size)
    )
    clopens = {P.gamma(ONE, x) for x in range(P.nx) if clopen_witness(P, x) is not None}
    return group("zeta_isomorphism", [
        Check("bijective_onto_stable_sets", onto, {"elements": L.size, "stable_sets": len(stable)}),
        Check("order_tables_equal", order),
        Check("preserves_meet_join", ops),
        Check("preserves_bounds", bounds),
        Check("polar_of_zeta1_is_zeta_d", polars),
        Check("zeta1_is_clopen_with_principal_witness", clopen),
        Check("zeta1_image_is_all_clopens", clopens == set(z)),
    ])


def represent_operator(CF: CanonicalFrame, f: NormalOperator | str) -> tuple[NormalOperator, Check]:
    """Represent ``f`` on the stable lattice and check the representation identities.

    Returns the single-sorted operator over ``all_stable_sets(polarity)`` (element
    ``i`` is the ``i``-th stable set) and a report counting mismatches of
    ``ζ1(f(ā)) = ᾱ_f(ζ1 ā)`` and of the sorted identities for ``ζ1``/``ζ∂``.
    """
    f = _operator(CF, f)
    R = canonical_relation(CF, f)
    if not sections_all_stable(R):
        raise LemmaPreconditionFailed(f"dual sections of {f.name!r} are not all Galois")
    P = CF.polarity
    stable = all_stable_sets(P, ONE)
    table = tuple(
        stable.index(_single_sorted(R, [stable.sets[i] for i in idx]))
        for idx in itertools.product(range(len(stable)), repeat=f.arity)
    )
    op = NormalOperator(f.name, f.dtype, table, len(stable))
    zidx = _zeta_index_map(CF)
    out = f.dtype.out
    single = sorted_ = 0
    for a in f.arg_tuples():
        v = f(*a)
        if zidx[v] != op(*(zidx[x] for x in a)):
            single += 1
        # sorted form: ζ_out(f(ā)) = ᾱ_R(ζ_{i_j}(a_j)) and the polar identity for the other sort
        sorted_val = _alpha_bar(R, [zeta(CF, s, x) for s, x in zip(f.dtype.args, a)])
        if sorted_val != zeta(CF, out, v) or P.polar(out, sorted_val) != zeta(CF, out.bar, v):
            sorted_ += 1
    report = group(f"represent:{f.name}", [
        Check("single_sorted_identity", single == 0, {"mismatches": single}),
        Check("sorted_identities", sorted_ == 0, {"mismatches": sorted_}),
    ])
    return op, report


# -------------------------------------------------------- σ/π extensions


def _closed_point(CF: CanonicalFrame, sort: Sort, g) -> int:
    P = CF.polarity
    m = as_mask(g)
    for u in range(P.size(sort)):
        if P.gamma(sort, u) == m:
            return u
    raise NotClosedElement(f"{_bits.fmt(m)} is not a closed element of sort {sort}")


def sigma_extension(CF: CanonicalFrame, f: NormalOperator | str, closed: Sequence) -> GaloisSet:
    """``f_σ`` on a tuple of closed elements ``(Γu_1, ..., Γu_n)``.

    Computed by the meet formula ``⋀{ζ(f(ā)) | Γu_j ⊆ ζ_{i_j}(a_j) for all j}``,
    the meet taken in the Galois sets of the output sort.
    """
    f = _operator(CF, f)
    if len(closed) != f.arity:
        raise SortMismatch(f"{f.name} takes {f.arity} arguments")
    P, L = CF.polarity, CF.lattice
    gs = [P.gamma(s, _closed_point(CF, s, g)) for s, g in zip(f.dtype.args, closed)]
    candidates = [
        [a for a in range(L.size) if _bits.issubset(g, zeta(CF, s, a))]
        for s, g in zip(f.dtype.args, gs)
    ]
    out = f.dtype.out
    acc = P.full(out)
    for a in itertools.product(*candidates):
        acc &= zeta(CF, out, f(*a))
    return GaloisSet(out, acc)


def pi_extension(CF: CanonicalFrame, f: NormalOperator | str, closed: Sequence) -> GaloisSet:
    """The polar image of the σ-extension: an open element of the opposite sort."""
    s = sigma_extension(CF, f, closed)
    return GaloisSet(s.sort.bar, CF.polarity.polar(s.sort, s.mask))


def sigma_extension_galois(CF: CanonicalFrame, f: NormalOperator | str, sets: Sequence) -> GaloisSet:
    """``f^σ(F̄) = ⋁{f_σ(Γū) | ū ∈ F̄}`` for Galois sets ``F_j``."""
    f = _operator(CF, f)
    P = CF.polarity
    out = f.dtype.out
    acc = 0
    masks = [as_mask(g) for g in sets]
    for u in itertools.product(*(list(_bits.members(m)) for m in masks)):
        closed = [P.gamma(s, p) for s, p in zip(f.dtype.args, u)]
        acc |= sigma_extension(CF, f, closed).mask
    return GaloisSet(out, P.closure(out, acc))


# ------------------------------------------------- canonical extension check


def canonical_extension_check(CF: CanonicalFrame) -> Check:
    """Density and compactness of ``ζ1`` into the stable lattice over the filters."""
    P, L = CF.polarity, CF.lattice
    stable = all_stable_sets(P, ONE)
    z = [zeta1(CF, a).mask for a in range(L.size)]

    # closed elements: meets of ζ1-images; open elements: joins of ζ1-images
    closed = {P.full(ONE)}
    opened = {P.closure(ONE, 0)}
    for _ in range(L.size):
        closed |= {c & za for c in closed for za in z}
        opened |= {P.closure(ONE, o | za) for o in opened for za in z}
    gammas = {P.gamma(ONE, x) for x in range(P.nx)}
    opens_y = {P.cols[y] for y in range(P.ny)}
    identified = Check("closed_open_are_points", closed == gammas and opened == opens_y,
                       {"closed": len(closed), "open": len(opened)})

    join_of_meets = all(
        stable.join(*[c for c in closed if _bits.issubset(c, g)]) == g for g in stable.sets
    )
    meet_of_joins = all(
        stable.meet(*[o for o in opened if _bits.issubset(g, o)]) == g for g in stable.sets
    )
    density = group("density", [
        Check("join_of_meets", join_of_meets),
        Check("meet_of_joins", meet_of_joins),
    ])

    # Closed (open) elements are closed under meets (joins), so a pair of sets A, B
    # reduces to p = ⋀A ∈ K and o = ⋁B ∈ O; compactness then says p ≤ o iff
    # some lattice element interpolates.
    interpolation = all(
        _bits.issubset(p, o) == any(_bits.issubset(p, za) and _bits.issubset(za, o) for za in z)
        for p in closed
        for o in opened
    )
    filter_ideal = all(
        _bits.issubset(
            stable.meet(*[z[a] for a in _bits.members(fm)]),
            stable.join(*[z[b] for b in _bits.members(im)]),
        ) == bool(fm & im)
        for fm in CF.filters
        for im in CF.ideals
    )
    compactness = group("compactness", [
        Check("interpolation", interpolation),
        Check("filter_ideal_form", filter_ideal),
    ])
    return group("canonical_extension", [identified, density, compactness])


def sigma_check(CF: CanonicalFrame) -> Check:
    """``f_σ(Γū) = Γ(f̂(ū))`` on closed tuples and ``f^σ = ᾱ_R`` on all Galois tuples."""
    P = CF.polarity
    checks = []
    for f, R in zip(CF.source.operators, CF.relations):
        out = f.dtype.out
        bad_closed = bad_galois = 0
        for u in itertools.product(*(range(P.size(s)) for s in f.dtype.args)):
            closed = [P.gamma(s, p) for s, p in zip(f.dtype.args, u)]
            if sigma_extension(CF, f, closed).mask != P.gamma(out, _hat(CF, f, u)):
                bad_closed += 1
        for fs in itertools.product(*(P.galois_sets(s) for s in f.dtype.args)):
            if sigma_extension_galois(CF, f, fs).mask != _alpha_bar(R, fs):
                bad_galois += 1
        checks.append(group(f"sigma:{f.name}", [
            Check("closed_tuples", bad_closed == 0, {"mismatches": bad_closed}),
            Check("galois_tuples", bad_galois == 0, {"mismatches": bad_galois}),
        ]))
    return group("sigma_extension", checks)
