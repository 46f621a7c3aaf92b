"""Labeled energy tables shared by the solvers, the oracle and the report."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field

PROVENANCES = ("exact", "deformed-model", "grid-oracle")


@dataclass(frozen=True)
class EnergyLevel:
    index: int
    energy: float
    parity: str  # "even" | "odd"
    provenance: str

    def __post_init__(self):
        if self.parity not in ("even", "odd"):
            raise ValueError(f"parity must be 'even' or 'odd', got {self.parity!r}")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")


@dataclass
class EnergyTable:
    label: str
    levels: list = field(default_factory=list)

    @property
    def energies(self):
        return [lv.energy for lv in self.levels]

    @property
    def indices(self):
        return [lv.index for lv in self.levels]

    def __len__(self):
        return len(self.levels)

    def __iter__(self):
        return iter(self.levels)

    def __getitem__(self, i):
        return self.levels[i]

    def to_dict(self):
        return {"label": self.label, "levels": [asdict(lv) for lv in self.levels]}

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, d):
        return cls(d["label"], [EnergyLevel(**lv) for lv in d["levels"]])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["index", "parity", "energy", "provenance"])
        for lv in self.levels:
            writer.writerow([lv.index, lv.parity, repr(float(lv.energy)), lv.provenance])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text, label=""):
        rows = csv.DictReader(io.StringIO(text))
        levels = [
            EnergyLevel(int(r["index"]), float(r["energy"]), r["parity"], r["provenance"])
            for r in rows
        ]
        return cls(label, levels)


def parity_of(index) -> str:
    return "even" if index % 2 == 0 else "odd"
