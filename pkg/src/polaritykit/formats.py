"""Line-oriented text formats for lattice expansions and polarity frames.

Lattice documents::

    lattice c3-godel
    elements 0 1 2
    order
      0 < 1
      1 < 2
    operator comp dtype 1,1;1
      0 0 0
      0 1 1
      0 1 2

Operator tables are row-major over the lexicographic order of argument tuples:
each row fixes all but the last argument and lists the values as the last
argument runs through the elements in declaration order.

Frame documents::

    x 2
    y 2
    incidence
      x0 y0
      x1 y1
    relation R sort 1;1
      x0 x0
      x1 x1

A relation row lists the output point first, then the arguments, each written
``x<i>`` or ``y<i>`` according to its sort. ``#`` starts a comment; sort glyphs
``d`` and ``∂`` are both accepted and ``d`` is always written.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import NotALattice, NotAPartialOrder, NotBounded, ParseError, SortMismatch, ValidationError
from .lattice import Lattice, LatticeExpansion, NormalOperator, build_lattice, validate_normal_operator
from .polarity import Polarity
from .relations import SortedRelation
from .sorts import ONE, DistributionType, SortType

LATTICE_HEADER = "# polaritykit lattice; operator tables row-major over lexicographic argument tuples"
FRAME_HEADER = "# polaritykit frame; relation rows list the output point first"


@dataclass
class _Line:
    number: int
    indent: int
    text: str

    def tokens(self) -> list[tuple[int, str]]:
        """Tokens with their 1-based columns."""
        return [(m.start() + self.indent + 1, m.group()) for m in re.finditer(r"\S+", self.text)]

    def error(self, message: str, col: int | None = None) -> ParseError:
        return ParseError(self.number, col if col is not None else self.indent + 1, message)


def _lines(text: str) -> list[_Line]:
    out = []
    for n, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].rstrip()
        stripped = body.lstrip()
        if stripped:
            out.append(_Line(n, len(body) - len(stripped), stripped))
    return out


@dataclass
class _Block:
    head: _Line
    body: list[_Line] = field(default_factory=list)


def _blocks(lines: list[_Line], keywords: set[str]) -> list[_Block]:
    blocks: list[_Block] = []
    for line in lines:
        word = line.text.split()[0]
        if word in keywords:
            blocks.append(_Block(line))
        elif not blocks:
            raise line.error(f"expected one of {', '.join(sorted(keywords))}, got {word!r}")
        else:
            blocks[-1].body.append(line)
    return blocks


# ------------------------------------------------------------- lattices


def parse_lattice_doc(text: str) -> LatticeExpansion:
    blocks = _blocks(_lines(text), {"lattice", "elements", "order", "operator"})
    name, names, pairs, ops = "lattice", None, [], []
    index: dict[str, int] = {}

    def element(line: _Line, col: int, tok: str) -> int:
        if tok not in index:
            raise line.error(f"unknown element {tok!r}", col)
        return index[tok]

    for block in blocks:
        head = block.head
        toks = head.tokens()
        kw = toks[0][1]
        if kw == "lattice":
            if len(toks) != 2 or block.body:
                raise head.error("expected 'lattice <name>'")
            name = toks[1][1]
        elif kw == "elements":
            if names is not None:
                raise head.error("duplicate 'elements' line")
            names = [t for _, t in toks[1:]] + [t for line in block.body for _, t in line.tokens()]
            if not names:
                raise head.error("no elements declared")
            for i, nm in enumerate(names):
                if nm in index:
                    raise head.error(f"duplicate element {nm!r}")
                index[nm] = i
        elif names is None:
            raise head.error("'elements' must come before order and operators")
        elif kw == "order":
            if len(toks) != 1:
                raise head.error("'order' takes no arguments", toks[1][0])
            for line in block.body:
                lt = line.tokens()
                if len(lt) != 3 or lt[1][1] != "<":
                    raise line.error("expected '<a> < <b>'")
                pairs.append((element(line, *lt[0]), element(line, *lt[2])))
        else:
            ops.append((block, toks))

    if names is None:
        raise ParseError(1, 1, "missing 'elements' line")
    try:
        L = build_lattice(len(names), pairs, names)
    except (NotAPartialOrder, NotALattice, NotBounded) as exc:
        raise ValidationError(f"order does not define a bounded lattice: {exc}") from exc

    operators = []
    for block, toks in ops:
        head = block.head
        if len(toks) != 4 or toks[2][1] != "dtype":
            raise head.error("expected 'operator <name> dtype <types>'")
        try:
            dtype = DistributionType.parse(toks[3][1])
        except ValueError as exc:
            raise head.error(str(exc), toks[3][0]) from exc
        width = L.size if dtype.arity else 1
        rows = L.size ** max(dtype.arity - 1, 0)
        if len(block.body) != rows:
            raise head.error(f"operator {toks[1][1]!r} needs {rows} table rows, got {len(block.body)}")
        table = []
        for line in block.body:
            lt = line.tokens()
            if len(lt) != width:
                raise line.error(f"table row needs {width} entries, got {len(lt)}")
            table.extend(element(line, c, t) for c, t in lt)
        op = NormalOperator(toks[1][1], dtype, tuple(table), L.size)
        _validate(L, op, head)
        operators.append(op)
    names_seen = [op.name for op in operators]
    if len(set(names_seen)) != len(names_seen):
        raise ValidationError("duplicate operator names")
    return LatticeExpansion(L, tuple(operators), name)


def _validate(L: Lattice, op: NormalOperator, head: _Line) -> None:
    report = validate_normal_operator(L, op)
    if not report.accepted:
        place = report.failing_places()[0]
        result = report.places[place - 1]
        kind = "distribution" if not result.distributes else "normality"
        err = ValidationError(
            f"line {head.number}: operator {op.name!r} with dtype {op.dtype} fails {kind} "
            f"at place {place}; witness {result.counterexample[1:]}"
        )
        err.place = place
        raise err


def serialize_lattice_doc(E: LatticeExpansion | Lattice) -> str:
    if isinstance(E, Lattice):
        E = LatticeExpansion(E, ())
    L = E.lattice
    nm = L.name_of
    lines = [LATTICE_HEADER, f"lattice {E.name}", "elements " + " ".join(nm(a) for a in range(L.size)), "order"]
    lines += [f"  {nm(a)} < {nm(b)}" for a, b in sorted(L.covers())]
    for op in E.operators:
        dt = ",".join(map(str, op.dtype.args)) + ";" + str(op.dtype.out)
        lines.append(f"operator {op.name} dtype {dt}")
        width = L.size if op.arity else 1
        for i in range(0, len(op.table), width):
            lines.append("  " + " ".join(nm(v) for v in op.table[i:i + width]))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- frames


def _point(line: _Line, col: int, tok: str, sort, P_size: int) -> int:
    prefix = "x" if sort is ONE else "y"
    if tok[:1] not in ("x", "y") or not tok[1:].isdigit():
        raise line.error(f"expected a point like {prefix}0, got {tok!r}", col)
    if tok[0] != prefix:
        err = SortMismatch(f"line {line.number}, col {col}: {tok} is not a point of sort {sort}")
        err.line, err.col = line.number, col
        raise err
    i = int(tok[1:])
    if i >= P_size:
        raise line.error(f"{tok} out of range (carrier has {P_size} points)", col)
    return i


def parse_frame_doc(text: str) -> tuple[Polarity, tuple[SortedRelation, ...]]:
    blocks = _blocks(_lines(text), {"x", "y", "incidence", "relation"})
    sizes: dict[str, int] = {}
    incidence: list[tuple[_Line, list]] = []
    rel_blocks = []
    for block in blocks:
        head = block.head
        toks = head.tokens()
        kw = toks[0][1]
        if kw in ("x", "y"):
            if len(toks) != 2 or not toks[1][1].isdigit() or block.body:
                raise head.error(f"expected '{kw} <count>'")
            if kw in sizes:
                raise head.error(f"duplicate '{kw}' line")
            sizes[kw] = int(toks[1][1])
            if sizes[kw] < 1:
                raise head.error("carriers must be nonempty", toks[1][0])
        elif kw == "incidence":
            incidence.extend((line, line.tokens()) for line in block.body)
        else:
            rel_blocks.append(block)
    if "x" not in sizes or "y" not in sizes:
        raise ParseError(1, 1, "missing 'x <count>' or 'y <count>' line")
    nx, ny = sizes["x"], sizes["y"]
    pairs = set()
    for line, lt in incidence:
        if len(lt) != 2:
            raise line.error("expected 'x<i> y<j>'")
        pairs.add((_point(line, *lt[0], ONE, nx), _point(line, *lt[1], ONE.bar, ny)))
    P = Polarity(nx, ny, frozenset(pairs))

    relations = []
    for block in rel_blocks:
        head = block.head
        toks = head.tokens()
        if len(toks) < 4 or toks[2][1] != "sort":
            raise head.error("expected 'relation <name> sort <sort type>'")
        try:
            stype = SortType.parse(" ".join(t for _, t in toks[3:]))
        except ValueError as exc:
            raise head.error(str(exc), toks[3][0]) from exc
        sorts = (stype.out,) + stype.args
        tuples = set()
        for line in block.body:
            lt = line.tokens()
            if len(lt) != len(sorts):
                raise line.error(f"relation row needs {len(sorts)} points, got {len(lt)}")
            tuples.add(tuple(_point(line, c, t, s, P.size(s)) for (c, t), s in zip(lt, sorts)))
        relations.append(SortedRelation(P, stype, frozenset(tuples), toks[1][1]))
    return P, tuple(relations)


def _tok(sort, i: int) -> str:
    return ("x" if sort is ONE else "y") + str(i)


def serialize_frame_doc(P: Polarity, relations=()) -> str:
    lines = [FRAME_HEADER, f"x {P.nx}", f"y {P.ny}", "incidence"]
    lines += [f"  x{x} y{y}" for x, y in sorted(P.incidence)]
    for R in relations:
        lines.append(f"relation {R.name} sort {R.stype}")
        sorts = (R.stype.out,) + R.stype.args
        lines += ["  " + " ".join(_tok(s, i) for s, i in zip(sorts, t)) for t in sorted(R.tuples)]
    return "\n".join(lines) + "\n"


def lattice_doc_files() -> dict[str, str]:
    """Bundled lattice documents by file name."""
    return _bundled(".lat")


def frame_doc_files() -> dict[str, str]:
    """Bundled frame documents by file name."""
    return _bundled(".frame")


def _bundled(suffix: str) -> dict[str, str]:
    from importlib import resources

    root = resources.files("polaritykit") / "data"
    return {
        p.name: p.read_text(encoding="utf-8")
        for p in sorted(root.iterdir(), key=lambda p: p.name)
        if p.name.endswith(suffix)
    }

