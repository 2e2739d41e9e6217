import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polaritykit import (
    GenerationFailed,
    ParseError,
    SortMismatch,
    ValidationError,
    chain,
    parse_frame_doc,
    parse_lattice_doc,
    serialize_frame_doc,
    serialize_lattice_doc,
)
from polaritykit.corpus import expansions, frames, lattices
from polaritykit.formats import frame_doc_files, lattice_doc_files
from polaritykit.generate import random_lattice, random_polarity, random_stable_relation

C3_GODEL = """\
lattice c3-godel
elements 0 h 1
order
  0 < h
  h < 1
operator comp dtype (1,1;1)
  0 0 0
  0 h h
  0 h 1
"""


def test_parse_c2_without_operators():
    E = parse_lattice_doc("elements 0 1\norder\n  0 < 1\n")
    assert E.lattice == chain(2) and E.operators == ()


def test_parse_c3_godel_with_names_and_comments():
    E = parse_lattice_doc("# fusion only\n" + C3_GODEL.replace("h h\n", "h h  # middle row\n"))
    comp = E.operator("comp")
    assert comp(1, 1) == 1 and comp(2, 1) == 1 and E.lattice.names == ("0", "h", "1")


def test_identity_is_normal_with_both_places_dual():
    E = parse_lattice_doc("elements 0 1\norder\n  0 < 1\noperator f dtype ∂;∂\n  0 1\n")
    assert E.operator("f").table == (0, 1)


def test_claimed_dtype_failure_names_place():
    doc = "elements 0 1\norder\n  0 < 1\noperator f dtype ∂;1\n  0 1\n"
    with pytest.raises(ValidationError) as info:
        parse_lattice_doc(doc)
    assert info.value.place == 1
    assert "place 1" in str(info.value)


def test_not_a_lattice_is_a_validation_error():
    with pytest.raises(ValidationError):
        parse_lattice_doc("elements a b\norder\n")


@pytest.mark.parametrize(
    "doc, line, col",
    [
        ("order\n", 1, 1),
        ("elements 0 1\norder\n  0 < 2\n", 3, 7),
        ("elements 0 1\norder\n  0 <= 1\n", 3, 3),
        ("elements 0 1\norder\n  0 < 1\noperator f dtype 1;1\n  0 1 1\n", 5, 3),
        ("elements 0 1\norder\n  0 < 1\noperator f dtype 1;x\n  0 1\n", 4, 18),
        ("frobnicate\n", 1, 1),
    ],
)
def test_positioned_parse_errors(doc, line, col):
    with pytest.raises(ParseError) as info:
        parse_lattice_doc(doc)
    assert (info.value.line, info.value.col) == (line, col)


def test_parse_p2():
    P, rels = parse_frame_doc("x 2\ny 2\nincidence\n  x0 y0\n  x1 y1\n")
    assert P == frames()["p2"][0] and rels == ()


def test_relation_with_y_in_one_slot_reports_line():
    doc = "x 2\ny 2\nincidence\nrelation R sort 1;1 1\n  x0 x0 x1\n  x0 y1 x0\n"
    with pytest.raises(SortMismatch) as info:
        parse_frame_doc(doc)
    assert info.value.line == 6 and info.value.col == 6


def test_frame_parse_errors():
    with pytest.raises(ParseError):
        parse_frame_doc("x 2\nincidence\n")
    with pytest.raises(ParseError) as info:
        parse_frame_doc("x 2\ny 2\nincidence\n  x0 y5\n")
    assert info.value.line == 4
    with pytest.raises(ParseError):
        parse_frame_doc("x 0\ny 1\n")


def test_dual_glyph_accepted_and_d_emitted():
    doc = "x 1\ny 1\nincidence\nrelation S sort ∂;1 ∂\n  y0 x0 y0\n"
    P, (S,) = parse_frame_doc(doc)
    assert "sort d;1 d" in serialize_frame_doc(P, (S,))


@pytest.mark.parametrize("name", sorted(lattice_doc_files()))
def test_bundled_lattice_round_trip(name):
    text = lattice_doc_files()[name]
    E = parse_lattice_doc(text)
    assert serialize_lattice_doc(E) == text
    stem = name.removesuffix(".lat")
    source = expansions().get(stem)
    if source is None:
        assert E.lattice == lattices()[stem]
    else:
        assert E.lattice == source.lattice
        assert [(f.name, f.dtype, f.table) for f in E.operators] == [
            (f.name, f.dtype, f.table) for f in source.operators
        ]


@pytest.mark.parametrize("name", sorted(frame_doc_files()))
def test_bundled_frame_round_trip(name):
    text = frame_doc_files()[name]
    P, rels = parse_frame_doc(text)
    assert serialize_frame_doc(P, rels) == text
    src_P, src_rels = frames()[name.removesuffix(".frame")]
    assert P == src_P and rels == src_rels


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 4), st.integers(1, 4))
def test_random_frame_round_trip(seed, nx, ny):
    P = random_polarity(seed, nx, ny, 0.5)
    try:
        rels = (random_stable_relation(seed, P, arity=2),)
    except GenerationFailed:
        rels = ()
    once = serialize_frame_doc(*parse_frame_doc(serialize_frame_doc(P, rels)))
    assert once == serialize_frame_doc(P, rels)
    assert parse_frame_doc(once) == (P, rels)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 7))
def test_random_lattice_round_trip(seed, n):
    L = random_lattice(seed, n)
    text = serialize_lattice_doc(L)
    assert parse_lattice_doc(text).lattice == L
    assert serialize_lattice_doc(parse_lattice_doc(text)) == text
