"""The two sorts ``1`` and ``d`` (written ∂ in the literature) and signatures over them."""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Sort(enum.Enum):
    ONE = "1"
    DUAL = "d"

    @property
    def bar(self) -> Sort:
        return Sort.DUAL if self is Sort.ONE else Sort.ONE

    @classmethod
    def parse(cls, text: str) -> Sort:
        text = text.strip()
        if text == "1":
            return cls.ONE
        if text in ("d", "∂"):
            return cls.DUAL
        raise ValueError(f"unknown sort {text!r}")

    def __str__(self) -> str:
        return self.value


ONE = Sort.ONE
DUAL = Sort.DUAL


@dataclass(frozen=True)
class DistributionType:
    """Signature ``(i_1,...,i_n; i_{n+1})`` of a normal lattice operator."""

    args: tuple[Sort, ...]
    out: Sort

    @classmethod
    def parse(cls, text: str) -> DistributionType:
        """Parse ``"1,d;d"`` (parentheses and whitespace optional)."""
        body = text.strip().removeprefix("(").removesuffix(")")
        if body.count(";") != 1:
            raise ValueError(f"distribution type needs exactly one ';': {text!r}")
        left, right = body.split(";")
        args = tuple(Sort.parse(t) for t in left.replace(",", " ").split())
        return cls(args, Sort.parse(right))

    @property
    def arity(self) -> int:
        return len(self.args)

    def sort_type(self) -> SortType:
        return SortType(self.out, self.args)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.args)) + ";" + str(self.out) + ")"


@dataclass(frozen=True)
class SortType:
    """Signature ``(i_{n+1}; i_1 ... i_n)`` of a sorted relation, output sort first."""

    out: Sort
    args: tuple[Sort, ...]

    @classmethod
    def parse(cls, text: str) -> SortType:
        """Parse ``"d;1 d"``; the argument sorts may also be run together (``"d;1d"``)."""
        body = text.strip().removeprefix("(").removesuffix(")")
        if body.count(";") != 1:
            raise ValueError(f"sort type needs exactly one ';': {text!r}")
        left, right = body.split(";")
        tokens = right.replace(",", " ").split()
        if len(tokens) == 1 and len(tokens[0]) > 1:
            tokens = list(tokens[0])
        return cls(Sort.parse(left), tuple(Sort.parse(t) for t in tokens))

    @property
    def arity(self) -> int:
        return len(self.args)

    def distribution_type(self) -> DistributionType:
        return DistributionType(self.args, self.out)

    def __str__(self) -> str:
        return f"{self.out};" + " ".join(map(str, self.args))
