import itertools

import pytest

import oracles
from polaritykit import (
    DUAL,
    ONE,
    GuardExceeded,
    LatticeExpansion,
    NotClosedElement,
    NormalOperator,
    SortMismatch,
    SortType,
    all_stable_sets,
    build_lattice,
    canonical_extension_check,
    canonical_frame,
    canonical_polarity,
    canonical_relation,
    chain,
    closed_image,
    complex_algebra,
    galois_dual,
    goldblatt_operator,
    hat_point_operator,
    is_separated,
    make_flew_chain,
    pi_extension,
    represent_operator,
    representation_check,
    sigma_check,
    sigma_extension,
    sigma_extension_galois,
    verify_canonical_lemmas,
    zeta1,
    zeta_d,
)
from polaritykit.corpus import diamond, expansions, lattices

ALL = {**{n: LatticeExpansion(L, (), n) for n, L in lattices().items()}, **expansions()}


def test_one_element_lattice():
    P, filters, ideals = canonical_polarity(chain(1))
    assert (P.nx, P.ny) == (1, 1) and P.incident(0, 0)
    assert canonical_extension_check(canonical_frame(chain(1))).passed


def test_m3_principal_pairs():
    L = diamond()
    P, filters, ideals = canonical_polarity(L)
    assert (P.nx, P.ny) == (5, 5)
    for a, b in itertools.product(range(5), repeat=2):
        x, y = filters.index(L.up[a]), ideals.index(L.down[b])
        assert P.incident(x, y) == L.leq(a, b)


def test_zeta_on_c2():
    CF = canonical_frame(chain(2))
    assert zeta1(CF, 1).mask == 0b11
    # F0 = {0, 1} is the second filter in mask order
    assert zeta1(CF, 0).mask == 0b10


@pytest.mark.parametrize("name", sorted(lattices()))
def test_zeta_bounds_and_polars(name):
    L = lattices()[name]
    CF = canonical_frame(L)
    P = CF.polarity
    assert zeta1(CF, L.top).mask == P.full(ONE)
    assert zeta1(CF, L.bottom).mask == 1 << CF.filter_index[(1 << L.size) - 1]
    for a in range(L.size):
        assert P.polar(ONE, zeta1(CF, a).mask) == zeta_d(CF, a).mask
        assert P.polar(DUAL, zeta_d(CF, a).mask) == zeta1(CF, a).mask
        assert zeta1(CF, a).mask == P.gamma(ONE, CF.principal(ONE, a))


def test_hat_point_operator_godel():
    E = make_flew_chain(3, "godel")
    CF = canonical_frame(E)
    half = CF.principal(ONE, 1)
    assert hat_point_operator(CF, "comp", (half, half)) == half
    x1, y0 = CF.principal(ONE, 2), CF.principal(DUAL, 0)
    assert hat_point_operator(CF, "impl", (x1, y0)) == CF.principal(DUAL, 0)
    improper_f = CF.filter_index[0b111]
    improper_i = CF.ideal_index[0b111]
    assert hat_point_operator(CF, "comp", (improper_f, improper_f)) == improper_f
    assert hat_point_operator(CF, "impl", (improper_f, improper_i)) == improper_i
    with pytest.raises(SortMismatch):
        hat_point_operator(CF, "comp", (half,))
    with pytest.raises(SortMismatch):
        hat_point_operator(CF, "impl", (x1, 9))


@pytest.mark.parametrize("name", sorted(expansions()))
def test_hat_matches_generated_filter_oracle(name):
    E = expansions()[name]
    CF = canonical_frame(E)
    L = E.lattice
    for f in E.operators:
        for u in itertools.product(*(range(len(CF.carrier(s))) for s in f.dtype.args)):
            members = [[a for a in range(L.size) if CF.carrier(s)[p] >> a & 1] for s, p in zip(f.dtype.args, u)]
            values = {f(*a) for a in itertools.product(*members)}
            # smallest filter (or ideal) containing every value, by scanning all of them
            if f.dtype.out is ONE:
                cands = [F for F in oracles.filters(L) if values <= F]
            else:
                cands = [I for I in oracles.ideals(L) if values <= I]
            smallest = min(cands, key=len)
            assert CF.carrier(f.dtype.out)[hat_point_operator(CF, f, u)] == oracles.to_mask(smallest)


def test_canonical_relation_examples():
    CF = canonical_frame(make_flew_chain(3, "godel"))
    R = canonical_relation(CF, "comp")
    half = CF.principal(ONE, 1)
    assert R.stype == SortType.parse("1;1 1")
    assert (half, half, half) in R.tuples
    S = canonical_relation(CF, "impl")
    assert S.stype == SortType.parse("∂;1∂")
    for y, x, v in S.tuples:
        assert CF.ideals[hat_point_operator(CF, "impl", (x, v))] & ~CF.ideals[y] == 0
    ident = canonical_frame(expansions()["c2-id"])
    R = ident.relation("id")
    for w, u in itertools.product(range(2), repeat=2):
        assert ((w, u) in R.tuples) == (ident.filters[u] & ~ident.filters[w] == 0)


@pytest.mark.parametrize("name", sorted(ALL))
def test_canonical_lemmas(name):
    CF = canonical_frame(ALL[name])
    report = verify_canonical_lemmas(CF)
    assert report.passed, report.to_text()
    assert is_separated(CF.polarity)


@pytest.mark.parametrize("name", sorted(expansions()))
def test_represent_operators(name):
    E = expansions()[name]
    CF = canonical_frame(E)
    assert representation_check(CF).passed
    A = complex_algebra(CF.polarity, CF.relations)
    z = [all_stable_sets(CF.polarity).index(zeta1(CF, a).mask) for a in range(E.lattice.size)]
    for f, g in zip(E.operators, A.operators):
        op, report = represent_operator(CF, f)
        assert report.passed, report.to_text()
        assert op.table == g.table
        # ζ1 is an isomorphism of expansions
        for a in f.arg_tuples():
            assert z[f(*a)] == op(*(z[x] for x in a))


def test_c2_identity_represented_as_identity():
    CF = canonical_frame(expansions()["c2-id"])
    op, _ = represent_operator(CF, "id")
    assert op.table == (0, 1)


def test_godel_arrow_represented_on_dual_side():
    CF = canonical_frame(make_flew_chain(3, "godel"))
    S = CF.relation("impl")
    lhs = zeta_d(CF, 0).mask  # ζ∂(1 → 0) = ζ∂(0)
    rhs = closed_image(S, [zeta1(CF, 2).mask, zeta_d(CF, 0).mask]).mask
    assert lhs == rhs


def test_sigma_extension_examples():
    CF = canonical_frame(expansions()["c2-id"])
    P = CF.polarity
    f1 = CF.filter_index[0b10]
    assert sigma_extension(CF, "id", [P.gamma(ONE, f1)]).mask == P.gamma(ONE, f1)
    CF = canonical_frame(make_flew_chain(3, "godel"))
    P = CF.polarity
    half = CF.principal(ONE, 1)
    g = P.gamma(ONE, half)
    assert sigma_extension(CF, "comp", [g, g]).mask == g
    with pytest.raises(NotClosedElement):
        sigma_extension(CF, "comp", [0, g])


@pytest.mark.parametrize("name", sorted(expansions()))
def test_sigma_and_pi_extensions(name):
    CF = canonical_frame(expansions()[name])
    assert sigma_check(CF).passed
    P = CF.polarity
    for f, R in zip(CF.source.operators, CF.relations):
        for u in itertools.product(*(range(P.size(s)) for s in f.dtype.args)):
            closed = [P.gamma(s, p) for s, p in zip(f.dtype.args, u)]
            pi = pi_extension(CF, f, closed)
            assert pi.sort is f.dtype.out.bar
            assert pi.mask == P.point_polar(f.dtype.out, hat_point_operator(CF, f, u))
        for fs in itertools.product(*(P.galois_sets(s) for s in f.dtype.args)):
            assert sigma_extension_galois(CF, f, fs).mask == closed_image(R, fs).mask


@pytest.mark.parametrize("name", sorted(ALL))
def test_canonical_extension(name):
    report = canonical_extension_check(canonical_frame(ALL[name]))
    assert report.passed, report.to_text()


def test_m3_is_its_own_canonical_extension():
    CF = canonical_frame(diamond())
    L = all_stable_sets(CF.polarity).to_lattice()
    assert L.size == 5 and len(L.covers()) == 6


@pytest.mark.parametrize("name", sorted(expansions()))
def test_goldblatt_on_canonical_relations(name):
    CF = canonical_frame(expansions()[name])
    P = CF.polarity
    for R in CF.relations:
        S = galois_dual(R)
        for fs in itertools.product(*(P.galois_sets(s) for s in R.stype.args)):
            assert goldblatt_operator(S, fs) == closed_image(R, fs)


def test_lattice_guard(monkeypatch):
    E = make_flew_chain(4, "godel")
    monkeypatch.setenv("POLARITYKIT_GUARD", "stable=12,lattice=3")
    with pytest.raises(GuardExceeded):
        canonical_frame(E)
    # no operators: the guard does not apply
    canonical_frame(E.lattice)
    op = NormalOperator.from_function("m4", "1,1,1,1;1", 2, lambda *a: min(a))
    monkeypatch.delenv("POLARITYKIT_GUARD")
    with pytest.raises(GuardExceeded):
        canonical_frame(LatticeExpansion(chain(2), (op,)))


def test_nullary_operator_point():
    L = chain(3)
    c = NormalOperator.from_function("half", ";1", 3, lambda: 1)
    CF = canonical_frame(LatticeExpansion(L, (c,)))
    assert hat_point_operator(CF, "half", ()) == CF.principal(ONE, 1)
    assert verify_canonical_lemmas(CF).passed
    op, report = represent_operator(CF, "half")
    assert report.passed


def test_pentagon_frame_matches_build():
    L = build_lattice(5, [(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)])
    assert canonical_frame(L).polarity == canonical_frame(lattices()["n5"]).polarity
