"""
Named pretzel knots with known a2 and Delta-unknotting values.

CSV columns are ``name,twists,a2,u_delta``; twists are separated by
semicolons and alternative u^Delta values by ``|`` (``10_76`` is listed
as ``2|4`` because only the pair is known).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple, Union

from .pretzel import is_knot, mirror, symmetries

FIELDS = ("name", "twists", "a2", "u_delta")


class TableError(ValueError):
    pass


@dataclass(frozen=True)
class KnotTableEntry:
    name: str
    twists: Tuple[int, ...]
    a2: int
    u_delta: FrozenSet[int]

    def __post_init__(self):
        if not self.u_delta:
            raise TableError(f"{self.name}: empty u_delta set")
        if not is_knot(self.twists):
            raise TableError(f"{self.name}: twists {self.twists} describe a link")

    def as_dict(self) -> dict:
        return {"name": self.name, "twists": list(self.twists), "a2": self.a2,
                "uDelta": sorted(self.u_delta)}

    @classmethod
    def from_dict(cls, data: dict) -> "KnotTableEntry":
        return cls(str(data["name"]), tuple(int(p) for p in data["twists"]),
                   int(data["a2"]), frozenset(int(u) for u in data["uDelta"]))


class KnotTable:
    def __init__(self, entries: Sequence[KnotTableEntry]):
        self.entries = list(entries)

    def __iter__(self) -> Iterator[KnotTableEntry]:
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def by_name(self, name: str) -> KnotTableEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def lookup(self, v: Sequence[int]) -> Optional[KnotTableEntry]:
        """Entry whose twists match ``v`` up to rotation, reversal, mirror."""
        forms = set()
        for w in symmetries(v):
            forms.add(w)
            forms.add(mirror(w))
        for e in self.entries:
            if e.twists in forms:
                return e
        return None

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(FIELDS)
        for e in self.entries:
            writer.writerow([e.name, ";".join(map(str, e.twists)), e.a2,
                             "|".join(map(str, sorted(e.u_delta)))])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps([e.as_dict() for e in self.entries], indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "KnotTable":
        return cls([KnotTableEntry.from_dict(d) for d in json.loads(text)])


def _ints(text: str, sep: str, what: str, line: int) -> List[int]:
    try:
        return [int(x.strip().replace("−", "-")) for x in text.split(sep)]
    except ValueError:
        raise TableError(f"line {line}: cannot parse {what} {text!r}") from None


def parse_table(text: str) -> KnotTable:
    reader = csv.reader(io.StringIO(text))
    entries = []
    header_seen = False
    for line, row in enumerate(reader, start=1):
        if not row or all(not c.strip() for c in row) or row[0].lstrip().startswith("#"):
            continue
        cells = [c.strip() for c in row]
        if not header_seen:
            header_seen = True
            if tuple(cells) == FIELDS:
                continue
        if len(cells) != 4:
            raise TableError(f"line {line}: expected 4 columns, got {len(cells)}")
        name, twists, a2, u = cells
        twist_vec = tuple(_ints(twists, ";", "twists", line))
        (a2_val,) = _ints(a2, ";", "a2", line)
        u_vals = frozenset(_ints(u, "|", "u_delta", line))
        try:
            entries.append(KnotTableEntry(name, twist_vec, a2_val, u_vals))
        except TableError as exc:
            raise TableError(f"line {line}: {exc}") from None
    return KnotTable(entries)


def load_table(path: Union[str, Path, None] = None) -> KnotTable:
    if path is None:
        text = resources.files("pretzel_delta").joinpath("data/knots.csv").read_text()
    else:
        text = Path(path).read_text()
    return parse_table(text)
