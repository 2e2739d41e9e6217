"""Curated lattices, expansions and frames used by the tests and the CLI."""

from __future__ import annotations

from .lattice import Lattice, LatticeExpansion, NormalOperator, build_lattice, chain, make_flew_chain
from .polarity import Polarity
from .relations import SortedRelation
from .sorts import SortType


def boolean_square() -> Lattice:
    """``M2 = 2×2``: ``0 < a, b < 1``."""
    return build_lattice(4, [(0, 1), (0, 2), (1, 3), (2, 3)], ["0", "a", "b", "1"])


def diamond() -> Lattice:
    """``M3``: three pairwise incomparable atoms between ``0`` and ``1``."""
    return build_lattice(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], ["0", "a", "b", "c", "1"])


def pentagon() -> Lattice:
    """``N5``: ``0 < a < c < 1`` and ``0 < b < 1`` with ``b`` incomparable to ``a, c``."""
    return build_lattice(5, [(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)], ["0", "a", "b", "c", "1"])


def boolean_cube() -> Lattice:
    """The 8-element Boolean lattice; element ``i`` is the subset of ``{0,1,2}`` with bitmask ``i``."""
    pairs = [(i, i | 1 << b) for i in range(8) for b in range(3) if not i >> b & 1]
    names = ["".join(str(b) for b in range(3) if i >> b & 1) or "e" for i in range(8)]
    return build_lattice(8, pairs, names)


def lattices() -> dict[str, Lattice]:
    out = {f"c{n}": chain(n) for n in range(2, 7)}
    out.update(m2=boolean_square(), m3=diamond(), n5=pentagon(), b8=boolean_cube())
    return out


def _demorgan(L: Lattice, neg: list[int], name: str) -> LatticeExpansion:
    return LatticeExpansion(
        L,
        (
            NormalOperator.from_function("neg1", "1;d", L.size, lambda a: neg[a]),
            NormalOperator.from_function("neg2", "d;1", L.size, lambda a: neg[a]),
        ),
        name=name,
    )


def expansions() -> dict[str, LatticeExpansion]:
    c2, c3 = chain(2), chain(3)
    m3 = diamond()
    out = {e.name: e for e in (make_flew_chain(n, k) for n in (3, 4) for k in ("godel", "lukasiewicz"))}
    out["c2-id"] = LatticeExpansion(c2, (NormalOperator.from_function("id", "1;1", 2, lambda a: a),), "c2-id")
    out["c3-demorgan"] = _demorgan(c3, [2, 1, 0], "c3-demorgan")
    out["m2-demorgan"] = _demorgan(boolean_square(), [3, 2, 1, 0], "m2-demorgan")
    out["m3-ops"] = LatticeExpansion(
        m3,
        (
            # atoms fixed, bounds swapped: an order-reversing involution
            NormalOperator.from_function("inv", "d;1", 5, lambda a: {0: 4, 4: 0}.get(a, a)),
            NormalOperator.from_function("zero", "d;1", 5, lambda a: 0 if a == 4 else 4),
        ),
        "m3-ops",
    )
    out["c3-grishin"] = LatticeExpansion(
        c3, (NormalOperator.from_function("star", "d,d;d", 3, max),), "c3-grishin"
    )
    out["c2-meet3"] = LatticeExpansion(
        c2, (NormalOperator.from_function("meet3", "1,1,1;1", 2, lambda a, b, c: min(a, b, c)),), "c2-meet3"
    )
    return out


# ------------------------------------------------------------------ frames

def frames() -> dict[str, tuple[Polarity, tuple[SortedRelation, ...]]]:
    p1 = Polarity(1, 1, frozenset())
    p2 = Polarity(2, 2, frozenset({(0, 0), (1, 1)}))
    # diagonal 3×3: stable sets are ∅, the singletons and X, so the 1-section
    # {0, 2} of the dual of the partial identity below is not stable
    bad = Polarity(3, 3, frozenset({(0, 0), (1, 1), (2, 2)}))
    bad_rel = SortedRelation(bad, SortType.parse("1;1"), frozenset({(0, 0), (1, 1)}), "R")
    return {
        "p1": (p1, ()),
        "p2": (p2, (SortedRelation(p2, SortType.parse("1;1"), frozenset({(0, 0), (1, 1)}), "R"),)),
        "bad": (bad, (bad_rel,)),
    }
