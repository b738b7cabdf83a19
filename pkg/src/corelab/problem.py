"""Line-oriented problem files.

    # Example 5.2
    field gf2 k=16
    ring x y
    ideal I = x^6, x^5*y^3, x^4*y^4, x^2*y^8, y^9
    elem f = x^6 + y^9
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .field import FieldDescriptor, FieldError
from .ideal import Ideal
from .poly import ParseError, Polynomial, PolyRing

_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*$")


class ProblemError(ValueError):
    """A problem-file error positioned at ``line`` (1-based) and ``column``."""

    def __init__(self, message: str, line: int, column: int | None = None):
        where = f"line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column
        self.reason = message


@dataclass
class Problem:
    field: FieldDescriptor
    ring: PolyRing
    ideals: dict[str, Ideal] = field(default_factory=dict)
    elements: dict[str, Polynomial] = field(default_factory=dict)

    def ideal(self, name: str) -> Ideal:
        try:
            return self.ideals[name]
        except KeyError:
            known = ", ".join(self.ideals) or "none"
            raise KeyError(f"no ideal named {name!r} (defined: {known})") from None

    def render(self) -> str:
        lines = [self.field.directive(), "ring " + " ".join(self.ring.variables)]
        for name, I in self.ideals.items():
            lines.append(f"ideal {name} = " + ", ".join(str(g) for g in I.generators))
        for name, f in self.elements.items():
            lines.append(f"elem {name} = {f}")
        return "\n".join(lines) + "\n"


def _parse_field(rest: str, lineno: int, offset: int) -> FieldDescriptor:
    words = rest.split()
    try:
        if len(words) == 1 and words[0].startswith("p="):
            return FieldDescriptor.prime(int(words[0][2:]))
        if len(words) == 2 and words[0] == "gf2" and words[1].startswith("k="):
            return FieldDescriptor.gf2(int(words[1][2:]))
    except ValueError as exc:  # FieldError is a ValueError too
        if isinstance(exc, FieldError):
            raise ProblemError(str(exc), lineno, offset) from None
        raise ProblemError(f"bad number in field directive {rest.strip()!r}", lineno, offset) from None
    raise ProblemError("field directive must be 'field p=<prime>' or 'field gf2 k=<1..32>'",
                       lineno, offset)


def _split_polys(text: str, start_col: int):
    """Yield (chunk, column) for comma-separated pieces of ``text``."""
    col = start_col
    for piece in text.split(","):
        lead = len(piece) - len(piece.lstrip())
        yield piece.strip(), col + lead
        col += len(piece) + 1


def parse_problem(text: str) -> Problem:
    fld: FieldDescriptor | None = None
    ring: PolyRing | None = None
    ideals: dict[str, Ideal] = {}
    elements: dict[str, Polynomial] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        keyword, _, rest = line.strip().partition(" ")
        rest_col = indent + len(keyword) + 2
        if keyword == "field":
            if fld is not None:
                raise ProblemError("duplicate field directive", lineno, indent + 1)
            fld = _parse_field(rest, lineno, rest_col)
        elif keyword == "ring":
            if ring is not None:
                raise ProblemError("duplicate ring directive", lineno, indent + 1)
            if fld is None:
                raise ProblemError("ring directive before field directive", lineno, indent + 1)
            names = rest.split()
            if not names:
                raise ProblemError("ring needs at least one variable", lineno, rest_col)
            for nm in names:
                if not _NAME.match(nm):
                    raise ProblemError(f"bad variable name {nm!r}", lineno, rest_col + rest.find(nm))
            dup = {nm for nm in names if names.count(nm) > 1}
            if dup:
                raise ProblemError(f"duplicate variable {sorted(dup)[0]!r}", lineno, rest_col)
            ring = PolyRing(names, fld)
        elif keyword in ("ideal", "elem"):
            if ring is None:
                raise ProblemError(f"{keyword} before ring directive", lineno, indent + 1)
            name, eq, body = rest.partition("=")
            name = name.strip()
            if not eq or not _NAME.match(name):
                raise ProblemError(f"expected '{keyword} <name> = ...'", lineno, rest_col)
            if name in ideals or name in elements:
                raise ProblemError(f"duplicate name {name!r}", lineno, rest_col + rest.find(name))
            body_col = rest_col + rest.find("=") + 1
            polys = []
            for chunk, col in _split_polys(body, body_col):
                try:
                    polys.append(ring.parse(chunk))
                except ParseError as exc:
                    column = col + (exc.column - 1 if exc.column else 0)
                    reason = str(exc).split(" (column")[0]
                    raise ProblemError(reason, lineno, column) from None
            if keyword == "elem":
                if len(polys) != 1:
                    raise ProblemError("elem takes exactly one polynomial", lineno, body_col)
                elements[name] = polys[0]
            else:
                nonzero = [f for f in polys if f.coeffs]
                ideals[name] = Ideal(ring, nonzero)
        else:
            raise ProblemError(f"unknown directive {keyword!r}", lineno, indent + 1)
    if fld is None:
        raise ProblemError("missing field directive", 1)
    if ring is None:
        raise ProblemError("missing ring directive", 1)
    return Problem(fld, ring, ideals, elements)


def load_problem(path: str) -> Problem:
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read())
