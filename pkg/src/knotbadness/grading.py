"""Local A/M/delta/f contributions of Kauffman corners.

All values are integers in quarter units (value x 4).  The table is read
from ``data/grading_table.json`` and validated on load.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .errors import InvalidTable

QUADRANTS = ("N", "S", "E", "W")

# slot k names the corner between slots k and k+1
_CLASS_OF_CORNER = {
    1: ("E", "N", "W", "S"),
    -1: ("S", "E", "N", "W"),
}


def quadrant_class(sign: int, position: int) -> str:
    return _CLASS_OF_CORNER[sign][position]


@dataclass(frozen=True)
class GradingTable:
    # (sign, quadrant) -> (A4, M4)
    entries: dict

    def a4(self, sign, position):
        return self.entries[sign, quadrant_class(sign, position)][0]

    def m(self, sign, position):
        return self.entries[sign, quadrant_class(sign, position)][1] // 4

    def delta4(self, sign, position):
        a4, m4 = self.entries[sign, quadrant_class(sign, position)]
        return a4 - m4

    def f4(self, sign, position):
        # delta = -wr/4 + sum f, so each crossing contributes delta + sign/4
        return self.delta4(sign, position) + sign

    def corner_values(self, sign, position):
        """``(A4, M, delta4, f4)`` for one corner."""
        a4, m4 = self.entries[sign, quadrant_class(sign, position)]
        return a4, m4 // 4, a4 - m4, a4 - m4 + sign

    def validate(self):
        for sign in (1, -1):
            for q in QUADRANTS:
                if (sign, q) not in self.entries:
                    raise InvalidTable(f"missing row sign={sign} quadrant={q}")
                a4, m4 = self.entries[sign, q]
                if m4 % 4:
                    raise InvalidTable(f"Maslov entry {Fraction(m4, 4)} at ({sign},{q}) is not an integer")
                if a4 % 2:
                    raise InvalidTable(f"Alexander entry {Fraction(a4, 4)} at ({sign},{q}) is not a half-integer")
                delta4 = a4 - m4
                allowed = (0, -2) if sign > 0 else (0, 2)
                if delta4 not in allowed:
                    raise InvalidTable(
                        f"delta contribution {Fraction(delta4, 4)} at ({sign},{q}) "
                        f"must be one of {[str(Fraction(v, 4)) for v in allowed]}"
                    )
        for sign in (1, -1):
            # the four corners of a crossing carry both delta values, and f = ±1/4
            deltas = sorted(self.entries[sign, q][0] - self.entries[sign, q][1] for q in QUADRANTS)
            if len(set(deltas)) != 2:
                raise InvalidTable(f"crossings of sign {sign} must have corners of both delta values")
        return self

    def to_json(self):
        return {
            "rows": [
                {"sign": s, "quadrant": q, "A": a, "M": m}
                for (s, q), (a, m) in sorted(self.entries.items(), key=lambda kv: (-kv[0][0], kv[0][1]))
            ]
        }


def table_from_json(data) -> GradingTable:
    if isinstance(data, str):
        data = json.loads(data)
    entries = {}
    try:
        for row in data["rows"]:
            key = (int(row["sign"]), row["quadrant"])
            if key in entries:
                raise InvalidTable(f"duplicate row {key}")
            entries[key] = (int(row["A"]), int(row["M"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidTable(f"unreadable grading table: {exc}") from exc
    if len(entries) != 8:
        raise InvalidTable(f"expected 8 rows, found {len(entries)}")
    return GradingTable(entries).validate()


def load_table(path=None) -> GradingTable:
    if path is None:
        text = resources.files("knotbadness").joinpath("data/grading_table.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return table_from_json(text)


_DEFAULT = None


def default_table() -> GradingTable:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = load_table()
    return _DEFAULT
