"""Finite bounded lattices, normal lattice operators, filters and ideals.

Elements are the dense indices ``0..size-1``. Subsets of the carrier are int
bitmasks, so filters and ideals order deterministically by mask value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import _bits
from .errors import ArityMismatch, BadSize, NotALattice, NotAPartialOrder, NotBounded
from .sorts import DUAL, ONE, DistributionType, Sort


@dataclass(frozen=True, eq=False)
class Lattice:
    """A finite bounded lattice given by its (reflexive, transitive) order.

    ``up[a]`` is the mask of all ``b`` with ``a <= b``. Use :func:`build_lattice`
    rather than the constructor; it validates and fills the derived tables.
    """

    size: int
    up: tuple[int, ...]
    bottom: int
    top: int
    meet_table: tuple[tuple[int, ...], ...]
    join_table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]

    @cached_property
    def down(self) -> tuple[int, ...]:
        return tuple(
            _bits.mask_of(b for b in range(self.size) if self.up[b] >> a & 1)
            for a in range(self.size)
        )

    def leq(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)

    def meet(self, a: int, b: int) -> int:
        return self.meet_table[a][b]

    def join(self, a: int, b: int) -> int:
        return self.join_table[a][b]

    def meet_all(self, elems: Iterable[int]) -> int:
        acc = self.top
        for e in elems:
            acc = self.meet_table[acc][e]
        return acc

    def join_all(self, elems: Iterable[int]) -> int:
        acc = self.bottom
        for e in elems:
            acc = self.join_table[acc][e]
        return acc

    def bound(self, sort: Sort) -> int:
        """Bottom of ``L^sort``: ``bottom`` for sort 1, ``top`` for the order dual."""
        return self.bottom if sort is ONE else self.top

    def join_in(self, sort: Sort, a: int, b: int) -> int:
        """Binary join of ``L^sort`` (a meet of ``L`` when the sort is dual)."""
        return self.join_table[a][b] if sort is ONE else self.meet_table[a][b]

    @property
    def leq_pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (a, b) for a in range(self.size) for b in _bits.members(self.up[a])
        )

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges ``(a, b)`` with ``a < b`` and nothing strictly between."""
        out = []
        for a in range(self.size):
            strict_up = self.up[a] & ~(1 << a)
            for b in _bits.members(strict_up):
                between = strict_up & self.down[b] & ~(1 << b)
                if not between:
                    out.append((a, b))
        return out

    def name_of(self, a: int) -> str:
        return self.names[a]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.size == other.size and self.up == other.up and self.names == other.names

    def __hash__(self) -> int:
        return hash((self.size, self.up, self.names))

    def __repr__(self) -> str:
        return f"Lattice(size={self.size}, covers={self.covers()})"


def build_lattice(
    size: int,
    leq_pairs: Iterable[tuple[int, int]],
    names: Sequence[str] | None = None,
) -> Lattice:
    """Build and validate a lattice from order pairs.

    The reflexive-transitive closure of ``leq_pairs`` is taken first, so a Hasse
    covering suffices.
    """
    if size < 1:
        raise NotBounded("a bounded lattice needs at least one element")
    up = [1 << a for a in range(size)]
    for a, b in leq_pairs:
        if not (0 <= a < size and 0 <= b < size):
            raise NotAPartialOrder(f"pair ({a}, {b}) out of range for size {size}")
        up[a] |= 1 << b
    # Warshall closure on bitmask rows.
    for k in range(size):
        bit = 1 << k
        row_k = up[k]
        for a in range(size):
            if up[a] & bit:
                up[a] |= row_k
    for a in range(size):
        for b in _bits.members(up[a]):
            if b != a and up[b] >> a & 1:
                raise NotAPartialOrder(f"{a} <= {b} and {b} <= {a} with {a} != {b}")
    everything = _bits.full(size)
    bottoms = [a for a in range(size) if up[a] == everything]
    tops = [a for a in range(size) if all(up[b] >> a & 1 for b in range(size))]
    if not bottoms or not tops:
        raise NotBounded("order has no least or no greatest element")
    down = [_bits.mask_of(b for b in range(size) if up[b] >> a & 1) for a in range(size)]

    def extremum(common: int, table: list[int]) -> int | None:
        # the unique member g of ``common`` whose own cone is all of ``common``
        for g in _bits.members(common):
            if table[g] == common:
                return g
        return None

    meet_rows, join_rows = [], []
    for a in range(size):
        mrow, jrow = [], []
        for b in range(size):
            m = extremum(down[a] & down[b], down)
            j = extremum(up[a] & up[b], up)
            if m is None:
                raise NotALattice(f"elements {a} and {b} have no meet")
            if j is None:
                raise NotALattice(f"elements {a} and {b} have no join")
            mrow.append(m)
            jrow.append(j)
        meet_rows.append(tuple(mrow))
        join_rows.append(tuple(jrow))
    if names is None:
        names = [str(a) for a in range(size)]
    if len(names) != size or len(set(names)) != size:
        raise ValueError("names must be distinct and one per element")
    return Lattice(
        size=size,
        up=tuple(up),
        bottom=bottoms[0],
        top=tops[0],
        meet_table=tuple(meet_rows),
        join_table=tuple(join_rows),
        names=tuple(names),
    )


def meet(L: Lattice, a: int, b: int) -> int:
    return L.meet(a, b)


def join(L: Lattice, a: int, b: int) -> int:
    return L.join(a, b)


def chain(n: int) -> Lattice:
    """The ``n``-element chain ``0 < 1 < ... < n-1``."""
    if n < 1:
        raise BadSize("chain needs n >= 1")
    return build_lattice(n, [(i, i + 1) for i in range(n - 1)])


# ---------------------------------------------------------------- operators


@dataclass(frozen=True)
class NormalOperator:
    """An n-ary operation with a declared distribution type.

    ``table`` is row-major over the lexicographic order of argument tuples,
    i.e. ``table[sum(a_j * size**(n-1-j))]``.
    """

    name: str
    dtype: DistributionType
    table: tuple[int, ...]
    size: int

    @property
    def arity(self) -> int:
        return self.dtype.arity

    def __call__(self, *args: int) -> int:
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return self.table[idx]

    def arg_tuples(self) -> Iterable[tuple[int, ...]]:
        return itertools.product(range(self.size), repeat=self.arity)

    @classmethod
    def from_function(cls, name: str, dtype: DistributionType | str, size: int, fn) -> NormalOperator:
        if isinstance(dtype, str):
            dtype = DistributionType.parse(dtype)
        table = tuple(fn(*args) for args in itertools.product(range(size), repeat=dtype.arity))
        return cls(name, dtype, table, size)


@dataclass(frozen=True)
class PlaceResult:
    place: int  # 1-based, as in the usual notation
    distributes: bool
    normal: bool
    counterexample: tuple | None = None

    @property
    def passed(self) -> bool:
        return self.distributes and self.normal


@dataclass(frozen=True)
class ValidationReport:
    operator: str
    places: tuple[PlaceResult, ...]

    @property
    def accepted(self) -> bool:
        return all(p.passed for p in self.places)

    def failing_places(self) -> list[int]:
        return [p.place for p in self.places if not p.passed]


def validate_normal_operator(L: Lattice, op: NormalOperator) -> ValidationReport:
    """Check each argument place distributes over binary joins of ``L^{i_j}``
    into joins of ``L^{i_{n+1}}`` and sends the bottom of ``L^{i_j}`` to the
    bottom of ``L^{i_{n+1}}``."""
    n = op.arity
    if op.size != L.size or len(op.table) != L.size**n:
        raise ArityMismatch(
            f"operator {op.name!r} table has {len(op.table)} entries, "
            f"expected {L.size}**{n} over a lattice of size {L.size}"
        )
    out = op.dtype.out
    places = []
    for j, sort_j in enumerate(op.dtype.args):
        distributes, normal, witness = True, True, None
        zero_in, zero_out = L.bound(sort_j), L.bound(out)
        for rest in itertools.product(range(L.size), repeat=n - 1):
            def at(v: int) -> int:
                return op(*rest[:j], v, *rest[j:])

            if normal and at(zero_in) != zero_out:
                normal = False
                witness = witness or ("normality", rest[:j] + (zero_in,) + rest[j:])
            if distributes:
                for a in range(L.size):
                    for b in range(a + 1, L.size):
                        lhs = at(L.join_in(sort_j, a, b))
                        rhs = L.join_in(out, at(a), at(b))
                        if lhs != rhs:
                            distributes = False
                            witness = ("distribution", rest[:j] + (a,) + rest[j:], rest[:j] + (b,) + rest[j:])
                            break
                    if not distributes:
                        break
            if not (distributes or normal):
                break
        places.append(PlaceResult(j + 1, distributes, normal, witness))
    return ValidationReport(op.name, tuple(places))


@dataclass(frozen=True)
class LatticeExpansion:
    lattice: Lattice
    operators: tuple[NormalOperator, ...] = field(default_factory=tuple)
    name: str = "expansion"

    def operator(self, name: str) -> NormalOperator:
        for op in self.operators:
            if op.name == name:
                return op
        raise KeyError(name)

    def validate(self) -> list[ValidationReport]:
        return [validate_normal_operator(self.lattice, op) for op in self.operators]


# ------------------------------------------------------- filters and ideals


def _is_filter(L: Lattice, m: int) -> bool:
    if not m:
        return False
    for a in _bits.members(m):
        if not _bits.issubset(L.up[a], m):
            return False
        for b in _bits.members(m):
            if not m >> L.meet(a, b) & 1:
                return False
    return True


def _is_ideal(L: Lattice, m: int) -> bool:
    if not m:
        return False
    for a in _bits.members(m):
        if not _bits.issubset(L.down[a], m):
            return False
        for b in _bits.members(m):
            if not m >> L.join(a, b) & 1:
                return False
    return True


def enumerate_filters(L: Lattice) -> list[int]:
    """All filters of ``L`` (the improper filter included), ascending by mask.

    Every filter of a finite lattice is principal, so this is ``{↑a}``.
    """
    return sorted(set(L.up))


def enumerate_ideals(L: Lattice) -> list[int]:
    return sorted(set(L.down))


def generated_filter(L: Lattice, seed: int) -> int:
    """Close ``seed`` under upward closure and binary meets; ``{top}`` for an empty seed."""
    m = seed or 1 << L.top
    while True:
        new = m
        for a in _bits.members(m):
            new |= L.up[a]
        for a in _bits.members(new):
            for b in _bits.members(new):
                new |= 1 << L.meet(a, b)
        if new == m:
            return m
        m = new


def generated_ideal(L: Lattice, seed: int) -> int:
    m = seed or 1 << L.bottom
    while True:
        new = m
        for a in _bits.members(m):
            new |= L.down[a]
        for a in _bits.members(new):
            for b in _bits.members(new):
                new |= 1 << L.join(a, b)
        if new == m:
            return m
        m = new


# -------------------------------------------------------------- FL_ew chains


def make_flew_chain(n: int, kind: str = "godel") -> LatticeExpansion:
    """An ``n``-element chain with fusion ``comp`` and its residual ``impl``.

    ``kind`` is ``"godel"`` (fusion = min) or ``"lukasiewicz"``
    (``a∘c = max(0, a+c-(n-1))`` on indices).
    """
    if n < 2:
        raise BadSize("FL_ew chain needs n >= 2")
    top = n - 1
    if kind == "godel":
        def comp(a: int, c: int) -> int:
            return min(a, c)

        def impl(a: int, b: int) -> int:
            return top if a <= b else b
    elif kind == "lukasiewicz":
        def comp(a: int, c: int) -> int:
            return max(0, a + c - top)

        def impl(a: int, b: int) -> int:
            return min(top, top - a + b)
    else:
        raise ValueError(f"unknown FL_ew kind {kind!r}")
    L = chain(n)
    ops = (
        NormalOperator.from_function("comp", DistributionType((ONE, ONE), ONE), n, comp),
        NormalOperator.from_function("impl", DistributionType((ONE, DUAL), DUAL), n, impl),
    )
    return LatticeExpansion(L, ops, name=f"c{n}-{kind}")
