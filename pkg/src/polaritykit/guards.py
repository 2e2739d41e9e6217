"""Size guards for exhaustive checks, adjustable through ``POLARITYKIT_GUARD``.

The variable holds either a bare integer (the stable-lattice guard) or a comma
separated list of ``key=value`` items with keys ``stable`` and ``lattice``,
e.g. ``POLARITYKIT_GUARD=stable=16,lattice=10``.
"""

from __future__ import annotations

import os

DEFAULTS = {"stable": 12, "lattice": 8}


def guard(key: str) -> int:
    raw = os.environ.get("POLARITYKIT_GUARD", "").strip()
    values = dict(DEFAULTS)
    if raw:
        if raw.isdigit():
            values["stable"] = int(raw)
        else:
            for item in raw.split(","):
                name, _, value = item.partition("=")
                name = name.strip()
                if name not in values or not value.strip().isdigit():
                    raise ValueError(f"bad POLARITYKIT_GUARD item {item!r}")
                values[name] = int(value)
    return values[key]
