"""Upper bounds on RD(n) and minimal permutation degrees.

Both are literature facts rather than computations.  The RD ladder is read
from a small text file (see ``data/rd_ladder.txt``); set ``RDBOUND_LADDER``
to point at a replacement.
"""

from __future__ import annotations

import bisect
import os
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Optional

from .ffield import prime_power

__all__ = [
    "NotSimple",
    "LadderError",
    "RdLadder",
    "load_ladder",
    "default_ladder",
    "rd_upper",
    "mu",
    "bound_by_mu",
    "MU_EXCEPTIONS",
    "MU_COMPAT",
]

LADDER_ENV = "RDBOUND_LADDER"


class NotSimple(ValueError):
    """The requested group is not simple, so μ is not tabulated."""


class LadderError(ValueError):
    pass


@dataclass(frozen=True)
class RdLadder:
    explicit: dict[int, int]
    rules: tuple[tuple[int, int], ...]  # (n0, c): RD(n) <= n - c for n >= n0
    compat: dict[int, int] = field(default_factory=dict)
    version: str = "1"
    source: str = "<builtin>"

    def __post_init__(self):
        starts = [n0 for n0, _ in self.rules]
        if starts != sorted(starts):
            raise LadderError("threshold rules must be sorted")
        # every n up to one past the last breakpoint must be covered and monotone
        top = max([*self.explicit, *starts, 1]) + 1
        prev = 0
        for n in range(1, top + 1):
            v = self(n)
            if v < prev or (n >= 2 and v > n - 1):
                raise LadderError(f"ladder is not a valid bound sequence at n = {n}")
            prev = v

    def __call__(self, n: int, paper_compat: bool = False) -> int:
        if n < 1:
            raise ValueError("n must be positive")
        if paper_compat and n in self.compat:
            return self.compat[n]
        if n in self.explicit:
            return self.explicit[n]
        starts = [n0 for n0, _ in self.rules]
        i = bisect.bisect_right(starts, n) - 1
        if i < 0:
            raise LadderError(f"no ladder entry covers n = {n}")
        return n - self.rules[i][1]


_LINE_EXPLICIT = re.compile(r"^(\d+)\s*=\s*(\d+)$")
_LINE_RULE = re.compile(r"^from\s+(\d+)\s*:\s*n\s*-\s*(\d+)$")
_LINE_COMPAT = re.compile(r"^compat\s+(\d+)\s*=\s*(\d+)$")
_LINE_VERSION = re.compile(r"^version\s*=\s*(\S+)$")


def parse_ladder(text: str, source: str = "<string>") -> RdLadder:
    explicit: dict[int, int] = {}
    rules: list[tuple[int, int]] = []
    compat: dict[int, int] = {}
    version = "1"
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _LINE_VERSION.match(line):
            version = m.group(1)
        elif m := _LINE_EXPLICIT.match(line):
            explicit[int(m.group(1))] = int(m.group(2))
        elif m := _LINE_RULE.match(line):
            rules.append((int(m.group(1)), int(m.group(2))))
        elif m := _LINE_COMPAT.match(line):
            compat[int(m.group(1))] = int(m.group(2))
        else:
            raise LadderError(f"{source}:{lineno}: cannot parse {raw!r}")
    rules.sort()
    return RdLadder(explicit, tuple(rules), compat, version, source)


def load_ladder(path: Optional[str | Path] = None) -> RdLadder:
    if path is None:
        text = resources.files("rdbound").joinpath("data/rd_ladder.txt").read_text()
        return parse_ladder(text, "rd_ladder.txt")
    path = Path(path)
    return parse_ladder(path.read_text(), str(path))


@lru_cache(maxsize=None)
def _cached_ladder(path: Optional[str]) -> RdLadder:
    return load_ladder(path)


def default_ladder() -> RdLadder:
    return _cached_ladder(os.environ.get(LADDER_ENV) or None)


def rd_upper(n: int, paper_compat: bool = False, ladder: Optional[RdLadder] = None) -> int:
    """Best encoded upper bound on RD(n)."""
    return (ladder or default_ladder())(n, paper_compat)


MU_EXCEPTIONS = {
    "PSU2": {5: 5, 7: 7, 9: 6, 11: 11},
    "PSU3": {5: 50},
}
# values printed in the historical PSL(2,q) table, reproduced on request
MU_COMPAT = {"PSU2": {13: 12, 16: 14, 37: 36}, "PSU3": {}}


def mu(family: str, q: int, paper_compat: bool = False, allow_nonsimple: bool = False) -> int:
    """Minimal faithful permutation degree of PSU(2,q) or PSU(3,q).

    PSU(3,2) is solvable; ``allow_nonsimple`` returns the generic value
    q^3 + 1 = 9 for it (the degree of its natural doubly transitive action).
    """
    prime_power(q)
    if family == "PSU2":
        if q < 4:
            raise NotSimple(f"PSL(2,{q}) is not simple")
        generic = q + 1
    elif family == "PSU3":
        if q == 2 and not allow_nonsimple:
            raise NotSimple("PSU(3,2) is not simple")
        generic = q**3 + 1
    else:
        raise ValueError(f"unknown family {family!r}")
    if paper_compat and q in MU_COMPAT[family]:
        return MU_COMPAT[family][q]
    return MU_EXCEPTIONS[family].get(q, generic)


def bound_by_mu(family: str, q: int, paper_compat: bool = False, allow_nonsimple: bool = False,
                ladder: Optional[RdLadder] = None) -> int:
    return rd_upper(mu(family, q, paper_compat, allow_nonsimple), paper_compat, ladder)
