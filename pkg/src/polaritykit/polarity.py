"""Polarities ``(X, ⊩, Y)``, their Galois connection and lattices of Galois sets.

Subsets of ``X`` and ``Y`` are int bitmasks. Most functions take a ``sort``
saying which carrier a subset lives in: sort 1 is ``X``, the dual sort is ``Y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from . import _bits
from .errors import IndexOutOfRange, NotSeparated
from .report import Check
from .sorts import DUAL, ONE, Sort


@dataclass(frozen=True)
class GaloisSet:
    """A stable (sort 1, inside ``X``) or co-stable (dual sort, inside ``Y``) set."""

    sort: Sort
    mask: int

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(_bits.members(self.mask))

    def __contains__(self, item: int) -> bool:
        return bool(self.mask >> item & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __repr__(self) -> str:
        return f"GaloisSet({self.sort}, {_bits.fmt(self.mask)})"


def as_mask(u) -> int:
    """Coerce a bitmask, :class:`GaloisSet` or iterable of indices to a bitmask."""
    if isinstance(u, GaloisSet):
        return u.mask
    if isinstance(u, int):
        return u
    return _bits.mask_of(u)


@dataclass(frozen=True)
class Polarity:
    nx: int
    ny: int
    incidence: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.nx < 1 or self.ny < 1:
            raise IndexOutOfRange("polarity carriers must be nonempty")
        object.__setattr__(self, "incidence", frozenset(self.incidence))
        for x, y in self.incidence:
            if not (0 <= x < self.nx and 0 <= y < self.ny):
                raise IndexOutOfRange(f"incidence pair ({x}, {y}) out of range")

    @classmethod
    def from_rows(cls, rows: Iterable[int], ny: int) -> Polarity:
        rows = list(rows)
        return cls(len(rows), ny, frozenset((x, y) for x, r in enumerate(rows) for y in _bits.members(r)))

    @cached_property
    def rows(self) -> tuple[int, ...]:
        """``rows[x]`` is ``{x}′``: the ``y`` with ``x ⊩ y``."""
        r = [0] * self.nx
        for x, y in self.incidence:
            r[x] |= 1 << y
        return tuple(r)

    @cached_property
    def cols(self) -> tuple[int, ...]:
        """``cols[y]`` is ``′{y}``: the ``x`` with ``x ⊩ y``."""
        c = [0] * self.ny
        for x, y in self.incidence:
            c[y] |= 1 << x
        return tuple(c)

    def size(self, sort: Sort) -> int:
        return self.nx if sort is ONE else self.ny

    def full(self, sort: Sort) -> int:
        return _bits.full(self.size(sort))

    def incident(self, x: int, y: int) -> bool:
        return bool(self.rows[x] >> y & 1)

    def check_range(self, sort: Sort, mask: int) -> None:
        if mask < 0 or mask >> self.size(sort):
            raise IndexOutOfRange(f"subset {_bits.fmt(mask)} out of range for sort {sort}")

    def polar(self, sort: Sort, mask: int) -> int:
        """``U′`` for ``U`` of the given sort; the result lives in the other sort."""
        table = self.rows if sort is ONE else self.cols
        acc = self.full(sort.bar)
        for i in _bits.members(mask):
            acc &= table[i]
        return acc

    def closure(self, sort: Sort, mask: int) -> int:
        return self.polar(sort.bar, self.polar(sort, mask))

    def is_galois(self, sort: Sort, mask: int) -> bool:
        return self.closure(sort, mask) == mask

    def gamma(self, sort: Sort, u: int) -> int:
        """The closed element ``Γu = {u}″``."""
        return self.closure(sort, 1 << u)

    def point_polar(self, sort: Sort, u: int) -> int:
        """``{u}′`` for a point ``u`` of ``sort``."""
        return (self.rows if sort is ONE else self.cols)[u]

    @cached_property
    def _galois_cache(self) -> dict[Sort, tuple[int, ...]]:
        return {}

    def galois_sets(self, sort: Sort) -> tuple[int, ...]:
        """All Galois sets of ``sort``, ascending by mask (cached)."""
        cache = self._galois_cache
        if sort not in cache:
            cache[sort] = tuple(enumerate_galois_sets(self, sort))
        return cache[sort]

    def upsets(self, sort: Sort) -> tuple[int, ...]:
        """``upsets(s)[u]`` = ``{z | u ⪯ z}`` for the induced preorder on ``sort``."""
        table = self.rows if sort is ONE else self.cols
        n = self.size(sort)
        return tuple(
            _bits.mask_of(z for z in range(n) if _bits.issubset(table[u], table[z]))
            for u in range(n)
        )


# ------------------------------------------------------------ polar maps


def polar_right(P: Polarity, U) -> int:
    """``U′ = {y | ∀x∈U. x ⊩ y}`` for ``U ⊆ X``."""
    m = as_mask(U)
    P.check_range(ONE, m)
    return P.polar(ONE, m)


def polar_left(P: Polarity, V) -> int:
    """``′V = {x | ∀y∈V. x ⊩ y}`` for ``V ⊆ Y``."""
    m = as_mask(V)
    P.check_range(DUAL, m)
    return P.polar(DUAL, m)


def closure(P: Polarity, U, sort: Sort = ONE) -> GaloisSet:
    m = as_mask(U)
    P.check_range(sort, m)
    return GaloisSet(sort, P.closure(sort, m))


# --------------------------------------------------- lattices of Galois sets


def _galois_by_powerset(P: Polarity, sort: Sort) -> list[int]:
    return [m for m in range(P.full(sort) + 1) if P.closure(sort, m) == m]


def _galois_by_intersections(P: Polarity, sort: Sort) -> list[int]:
    # Galois sets of a sort are the intersections of the point polars {v}′
    # of the opposite sort, the empty intersection being the full carrier.
    generators = set(P.point_polar(sort.bar, v) for v in range(P.size(sort.bar)))
    found = {P.full(sort)}
    frontier = list(found)
    while frontier:
        nxt = []
        for a in frontier:
            for g in generators:
                c = a & g
                if c not in found:
                    found.add(c)
                    nxt.append(c)
        frontier = nxt
    return sorted(found)


def enumerate_galois_sets(P: Polarity, sort: Sort, method: str = "auto") -> list[int]:
    """Masks of all Galois sets of ``sort``, ascending.

    ``method`` is ``"powerset"`` (filter all subsets), ``"intersections"``
    (close the point polars under intersection) or ``"auto"``, which filters the
    powerset only for carriers of at most 12 points.
    """
    if method == "auto":
        method = "powerset" if P.size(sort) <= 12 else "intersections"
    if method == "powerset":
        return _galois_by_powerset(P, sort)
    if method == "intersections":
        return _galois_by_intersections(P, sort)
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class StableLattice:
    """The complete lattice of Galois sets of one sort, ordered by inclusion."""

    polarity: Polarity
    sort: Sort
    sets: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    @cached_property
    def _index(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.sets)}

    def index(self, mask: int) -> int:
        return self._index[mask]

    @property
    def bottom(self) -> int:
        return self.sets[0]

    @property
    def top(self) -> int:
        return self.sets[-1]

    def meet(self, *masks: int) -> int:
        acc = self.polarity.full(self.sort)
        for m in masks:
            acc &= m
        return acc

    def join(self, *masks: int) -> int:
        acc = 0
        for m in masks:
            acc |= m
        return self.polarity.closure(self.sort, acc)

    def to_lattice(self):
        from .lattice import build_lattice

        n = len(self.sets)
        pairs = [
            (i, j)
            for i in range(n)
            for j in range(n)
            if _bits.issubset(self.sets[i], self.sets[j])
        ]
        prefix = "x" if self.sort is ONE else "y"
        names = [_bits.fmt(m, prefix) for m in self.sets]
        return build_lattice(n, pairs, names)


def all_stable_sets(P: Polarity, sort: Sort = ONE) -> StableLattice:
    return StableLattice(P, sort, P.galois_sets(sort))


# ----------------------------------------------------- preorders and Z-order


def preorder(P: Polarity, sort: Sort = ONE) -> frozenset[tuple[int, int]]:
    """Pairs ``(u, z)`` with ``u ⪯ z``, i.e. ``{u}′ ⊆ {z}′``."""
    ups = P.upsets(sort)
    return frozenset((u, z) for u, m in enumerate(ups) for z in _bits.members(m))


def is_separated(P: Polarity) -> bool:
    return len(set(P.rows)) == P.nx and len(set(P.cols)) == P.ny


def _require_separated(P: Polarity) -> None:
    if not is_separated(P):
        raise NotSeparated("operation requires a separated polarity")


@dataclass(frozen=True)
class ZOrder:
    """Order on ``Z = X ⊎ Y``; points are ``(sort, index)`` pairs.

    Each point is compared through its image in the stable lattice over ``X``
    (``Γx`` for ``x ∈ X``, ``′{y}`` for ``y ∈ Y``). A clopen ``x`` and its
    witness ``y`` share an image, so antisymmetry is a per-sort property.
    """

    polarity: Polarity

    @cached_property
    def images(self) -> dict[tuple[Sort, int], int]:
        P = self.polarity
        out = {(ONE, x): P.gamma(ONE, x) for x in range(P.nx)}
        out.update({(DUAL, y): P.cols[y] for y in range(P.ny)})
        return out

    @property
    def points(self) -> list[tuple[Sort, int]]:
        P = self.polarity
        return [(ONE, x) for x in range(P.nx)] + [(DUAL, y) for y in range(P.ny)]

    def leq(self, a: tuple[Sort, int], b: tuple[Sort, int]) -> bool:
        return _bits.issubset(self.images[a], self.images[b])

    def leq_by_cases(self, a: tuple[Sort, int], b: tuple[Sort, int]) -> bool:
        """The same relation through the four displayed right-hand sides."""
        P = self.polarity
        (sa, ia), (sb, ib) = a, b
        if sa is ONE and sb is DUAL:
            return P.incident(ia, ib)
        if sa is ONE and sb is ONE:
            return _bits.issubset(P.rows[ib], P.rows[ia])  # z ⪯ x
        if sa is DUAL and sb is DUAL:
            return _bits.issubset(P.cols[ia], P.cols[ib])
        # y ⩽ x iff ∀u ∀w (u ⊩ y ∧ x ⊩ w → u ⊩ w)
        return all(_bits.issubset(P.rows[ib], P.rows[u]) for u in _bits.members(P.cols[ia]))

    def is_reflexive(self) -> bool:
        return all(self.leq(p, p) for p in self.points)

    def is_transitive(self) -> bool:
        pts = self.points
        return all(
            self.leq(a, c)
            for a in pts
            for b in pts
            if self.leq(a, b)
            for c in pts
            if self.leq(b, c)
        )

    def is_antisymmetric_per_sort(self) -> bool:
        pts = self.points
        return all(
            a == b or not (self.leq(a, b) and self.leq(b, a))
            for a in pts
            for b in pts
            if a[0] is b[0]
        )


def z_order(P: Polarity) -> ZOrder:
    _require_separated(P)
    return ZOrder(P)


def is_reduced(P: Polarity) -> bool:
    """Both irreducibility conditions of reduced (RS) frames, checked exhaustively."""
    Z = z_order(P)
    X = [(ONE, x) for x in range(P.nx)]
    Y = [(DUAL, y) for y in range(P.ny)]
    for x in X:
        if not any(
            not Z.leq(x, y) and all(Z.leq(z, y) for z in X if z != x and Z.leq(z, x))
            for y in Y
        ):
            return False
    for y in Y:
        if not any(
            not Z.leq(x, y) and all(Z.leq(x, v) for v in Y if v != y and Z.leq(y, v))
            for x in X
        ):
            return False
    return True


def _dm_cuts(Z: ZOrder) -> list[int]:
    """Dedekind-MacNeille cuts of ``(Z, ⩽)`` as masks over ``Z.points``."""
    pts = Z.points
    n = len(pts)
    downs = [_bits.mask_of(i for i in range(n) if Z.leq(pts[i], pts[j])) for j in range(n)]
    # cuts are exactly the intersections of principal downsets (plus Z itself)
    found = {_bits.full(n)}
    frontier = list(found)
    while frontier:
        nxt = []
        for a in frontier:
            for d in downs:
                c = a & d
                if c not in found:
                    found.add(c)
                    nxt.append(c)
        frontier = nxt
    return sorted(found)


def dm_completion_check(P: Polarity) -> Check:
    """Verify the stable lattice over ``X`` is the Dedekind-MacNeille completion of ``Z``."""
    _require_separated(P)
    Z = ZOrder(P)
    gal = P.galois_sets(ONE)
    checks = []

    bad = [g for g in gal if g != _bits.mask_of(
        z for u in _bits.members(g) for z in _bits.members(P.gamma(ONE, u)))]
    checks.append(Check("union_of_closed", not bad, {"witness": _bits.fmt(bad[0], "x")} if bad else None))

    bad = []
    for g in gal:
        join = 0
        for u in _bits.members(g):
            join |= P.gamma(ONE, u)
        meet = P.full(ONE)
        for y in _bits.members(P.polar(ONE, g)):
            meet &= P.cols[y]
        if P.closure(ONE, join) != g or meet != g:
            bad.append(g)
    checks.append(Check("join_of_closed_meet_of_open", not bad,
                        {"witness": _bits.fmt(bad[0], "x")} if bad else None))

    pts = Z.points
    agree = all(Z.leq(a, b) == Z.leq_by_cases(a, b) for a in pts for b in pts)
    checks.append(Check("four_case_order", agree))
    checks.append(Check("z_order_partial", Z.is_reflexive() and Z.is_transitive()
                        and Z.is_antisymmetric_per_sort()))

    images_x = {Z.images[(ONE, x)] for x in range(P.nx)}
    images_y = {Z.images[(DUAL, y)] for y in range(P.ny)}
    embedded = (images_x | images_y) <= set(gal)
    join_dense = all(
        P.closure(ONE, _bits.mask_of(
            z for c in images_x if _bits.issubset(c, g) for z in _bits.members(c))) == g
        for g in gal
    )
    meet_dense = True
    for g in gal:
        acc = P.full(ONE)
        for o in images_y:
            if _bits.issubset(g, o):
                acc &= o
        meet_dense &= acc == g
    checks.append(Check("order_embedding", embedded))
    checks.append(Check("join_dense_from_X", join_dense))
    checks.append(Check("meet_dense_from_Y", meet_dense))

    # Independent oracle: cuts of (Z, ⩽) correspond bijectively and
    # order-isomorphically to the stable sets via G ↦ {z | image(z) ⊆ G}.
    cuts = _dm_cuts(Z)
    to_cut = {g: _bits.mask_of(i for i, p in enumerate(pts) if _bits.issubset(Z.images[p], g)) for g in gal}
    iso = sorted(to_cut.values()) == cuts and all(
        _bits.issubset(a, b) == _bits.issubset(to_cut[a], to_cut[b]) for a in gal for b in gal
    )
    checks.append(Check("isomorphic_to_cut_lattice", iso, {"stable_sets": len(gal), "cuts": len(cuts)}))
    return Check("dm_completion", all(c.passed for c in checks), None, checks)


# ------------------------------------------------------ closed/open elements


def _check_point(P: Polarity, sort: Sort, u: int) -> None:
    if not 0 <= u < P.size(sort):
        raise IndexOutOfRange(f"point {u} out of range for sort {sort}")


def closed_element(P: Polarity, u: int, sort: Sort = ONE) -> GaloisSet:
    """``Γu`` for a point ``u`` of ``sort``."""
    _check_point(P, sort, u)
    return GaloisSet(sort, P.gamma(sort, u))


def open_element(P: Polarity, v: int, sort: Sort = ONE) -> GaloisSet:
    """The open element ``{v}′`` of the Galois sets of ``sort``; ``v`` has the other sort."""
    _check_point(P, sort.bar, v)
    return GaloisSet(sort, P.point_polar(sort.bar, v))


def clopen_witness(P: Polarity, u: int, sort: Sort = ONE) -> int | None:
    """A ``v`` with ``u | v`` and ``Γu = {v}′``, or ``None``."""
    _check_point(P, sort, u)
    g = P.gamma(sort, u)
    for v in _bits.members(P.point_polar(sort, u)):
        if P.point_polar(sort.bar, v) == g:
            return v
    return None


def is_clopen(P: Polarity, u: int, sort: Sort = ONE) -> bool:
    return clopen_witness(P, u, sort) is not None
