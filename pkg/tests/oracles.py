"""Brute-force reference implementations over plain Python sets.

Nothing here touches the package's bitmask machinery; the tests compare the
package against these.
"""

from __future__ import annotations

import itertools


def powerset(items):
    items = list(items)
    for r in range(len(items) + 1):
        for combo in itertools.combinations(items, r):
            yield frozenset(combo)


# ----------------------------------------------------------------- lattices


def leq_from_pairs(size, pairs):
    rel = {(a, a) for a in range(size)} | set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return rel


def glb(size, leq, a, b):
    lower = [c for c in range(size) if (c, a) in leq and (c, b) in leq]
    best = [c for c in lower if all((d, c) in leq for d in lower)]
    return best[0] if len(best) == 1 else None


def lub(size, leq, a, b):
    upper = [c for c in range(size) if (a, c) in leq and (b, c) in leq]
    best = [c for c in upper if all((c, d) in leq for d in upper)]
    return best[0] if len(best) == 1 else None


def filters(L):
    """Nonempty, upward closed, meet closed subsets, by scanning the powerset."""
    out = []
    for s in powerset(range(L.size)):
        if not s:
            continue
        if all(b in s for a in s for b in range(L.size) if L.leq(a, b)) and all(
            L.meet(a, b) in s for a in s for b in s
        ):
            out.append(s)
    return out


def ideals(L):
    out = []
    for s in powerset(range(L.size)):
        if not s:
            continue
        if all(b in s for a in s for b in range(L.size) if L.leq(b, a)) and all(
            L.join(a, b) in s for a in s for b in s
        ):
            out.append(s)
    return out


def to_mask(s):
    return sum(1 << i for i in s)


def distributes(L, op):
    """Per place: f(..a∨b..) = f(..a..) ∨ f(..b..) in the sorted lattices, by the order table."""
    size = L.size
    leq = {(a, b) for a in range(size) for b in range(size) if L.leq(a, b)}

    def sorted_join(sort, a, b):
        if sort.value == "1":
            return lub(size, leq, a, b)
        return glb(size, leq, a, b)

    bottom = next(e for e in range(size) if all((e, d) in leq for d in range(size)))
    top = next(e for e in range(size) if all((d, e) in leq for d in range(size)))

    def sorted_bottom(sort):
        return bottom if sort.value == "1" else top

    verdicts = []
    for j, s in enumerate(op.dtype.args):
        ok = True
        for t in itertools.product(range(size), repeat=op.arity):
            for b in range(size):
                t2 = t[:j] + (b,) + t[j + 1:]
                t3 = t[:j] + (sorted_join(s, t[j], b),) + t[j + 1:]
                if op(*t3) != sorted_join(op.dtype.out, op(*t), op(*t2)):
                    ok = False
            bottom_in = t[:j] + (sorted_bottom(s),) + t[j + 1:]
            if op(*bottom_in) != sorted_bottom(op.dtype.out):
                ok = False
        verdicts.append(ok)
    return verdicts


# ---------------------------------------------------------------- polarities


def rel_of(P):
    return set(P.incidence)


def upper_polar(P, U):
    return frozenset(y for y in range(P.ny) if all((x, y) in P.incidence for x in U))


def lower_polar(P, V):
    return frozenset(x for x in range(P.nx) if all((x, y) in P.incidence for y in V))


def polar(P, sort_value, U):
    return upper_polar(P, U) if sort_value == "1" else lower_polar(P, U)


def closure(P, sort_value, U):
    if sort_value == "1":
        return lower_polar(P, upper_polar(P, U))
    return upper_polar(P, lower_polar(P, U))


def galois_sets(P, sort_value):
    n = P.nx if sort_value == "1" else P.ny
    return sorted((s for s in powerset(range(n)) if closure(P, sort_value, s) == s), key=to_mask)


def carrier(P, sort_value):
    return range(P.nx if sort_value == "1" else P.ny)


# ----------------------------------------------------------------- relations


def sect(R, u):
    return frozenset(t[0] for t in R.tuples if t[1:] == tuple(u))


def alpha(R, sets):
    out = set()
    for u in itertools.product(*sets):
        out |= sect(R, u)
    return frozenset(out)


def alpha_bar(R, sets):
    return closure(R.polarity, R.stype.out.value, alpha(R, sets))


def residual(R, k, sets, target):
    """Union of every subset V at place k with α_R(W̄[V]_k) ⊆ target."""
    j = k - 1
    P = R.polarity
    acc = set()
    for V in powerset(carrier(P, R.stype.args[j].value)):
        args = list(sets)
        args[j] = V
        if alpha(R, args) <= target:
            acc |= V
    return frozenset(acc)


def dual_section(R, u):
    return polar(R.polarity, R.stype.out.value, sect(R, u))


def k_sections_stable(R):
    P = R.polarity
    args = R.stype.args
    w_sort = R.stype.out.bar.value
    for j, s in enumerate(args):
        others = [carrier(P, t.value) if i != j else [None] for i, t in enumerate(args)]
        for rest in itertools.product(*others):
            for w in carrier(P, w_sort):
                sec = frozenset(
                    v for v in carrier(P, s.value)
                    if w in dual_section(R, rest[:j] + (v,) + rest[j + 1:])
                )
                if closure(P, s.value, sec) != sec:
                    return False
    return True


def completely_additive(R, k):
    """Every subfamily of the Galois sets at place k, all other places over all Galois sets."""
    P = R.polarity
    j = k - 1
    args = R.stype.args
    out = R.stype.out.value
    gk = galois_sets(P, args[j].value)
    others = [galois_sets(P, s.value) if i != j else [None] for i, s in enumerate(args)]
    for rest in itertools.product(*others):
        def image(g):
            a = list(rest)
            a[j] = g
            return alpha_bar(R, a)

        for fam in powerset(range(len(gk))):
            joined = closure(P, args[j].value, frozenset().union(*(gk[i] for i in fam)))
            images = closure(P, out, frozenset().union(*(image(gk[i]) for i in fam)))
            if image(joined) != images:
                return False
    return True
