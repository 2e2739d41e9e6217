"""Structured check results with deterministic text and JSON renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

SCHEMA = 1


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict[str, Any] | None = None
    children: list[Check] = field(default_factory=list)

    def failures(self) -> list[Check]:
        """Leaf checks that failed, depth first."""
        if not self.passed and not self.children:
            return [self]
        return [f for c in self.children for f in c.failures()]

    def find(self, name: str) -> Check | None:
        if self.name == name:
            return self
        for c in self.children:
            hit = c.find(name)
            if hit is not None:
                return hit
        return None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "passed": self.passed}
        if self.detail:
            out["detail"] = self.detail
        if self.children:
            out["children"] = [c.to_dict() for c in self.children]
        return out

    def to_text(self, indent: int = 0) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = "  " * indent + f"{status} {self.name}"
        if self.detail:
            line += "  " + " ".join(f"{k}={_plain(v)}" for k, v in sorted(self.detail.items()))
        return "\n".join([line] + [c.to_text(indent + 1) for c in self.children])


def group(name: str, children: list[Check], detail: dict[str, Any] | None = None) -> Check:
    return Check(name, all(c.passed for c in children), detail, children)


def _plain(v: Any) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_plain(x) for x in v) + "]"
    return str(v)


def render_json(command: str, source: str, root: Check, extra: dict[str, Any] | None = None) -> str:
    doc = {"schema": SCHEMA, "command": command, "input": source, "passed": root.passed,
           "report": root.to_dict()}
    if extra:
        doc.update(extra)
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)
