"""Good simple roots and the admissibility classification.

A simple root gamma is *good* when every positive root has gamma-coordinate
0 or 1 in the simple-root basis.  A group is admissible exactly when its
relative root system has a good root.  The test is brute force over the
positive roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, NamedTuple

from .realforms import RealFormSpec, list_families, render, restricted_root_datum
from .rootsys import RootSystem, RootSystemType, build_root_system


@dataclass(frozen=True)
class GoodRootReport:
    rs_type: RootSystemType
    good_roots: tuple[int, ...]
    per_root_max_coeff: Mapping[int, int]

    def to_dict(self) -> dict:
        return {
            "rs_type": str(self.rs_type),
            "good_roots": list(self.good_roots),
            "per_root_max_coeff": {str(i): c for i, c in sorted(self.per_root_max_coeff.items())},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GoodRootReport":
        from .rootsys import parse_type

        return cls(
            parse_type(d["rs_type"]),
            tuple(d["good_roots"]),
            {int(i): c for i, c in d["per_root_max_coeff"].items()},
        )


def good_roots(rs: RootSystem) -> GoodRootReport:
    """Indices (1-based, Bourbaki numbering) of the good simple roots."""
    max_coeff = {i + 1: 0 for i in range(rs.rank)}
    for root in rs.positive:
        for i, c in enumerate(root.simple_coeffs, start=1):
            if c > max_coeff[i]:
                max_coeff[i] = c
    good = tuple(i for i, c in max_coeff.items() if c == 1)
    return GoodRootReport(rs.type, good, max_coeff)


def is_admissible(g: RealFormSpec) -> tuple[bool, GoodRootReport]:
    datum = restricted_root_datum(g)
    report = good_roots(build_root_system(datum.rs_type))
    if not datum.rs_type.reduced():
        return False, report
    return bool(report.good_roots), report


class ClassificationRow(NamedTuple):
    group: str
    cartan_label: str
    rs_type: str
    rank: int
    admissible: bool
    good_roots: tuple[int, ...]

    def to_dict(self) -> dict:
        d = self._asdict()
        d["good_roots"] = list(self.good_roots)
        return d


def classify(max_rank: int, max_q: int | None = None) -> list[ClassificationRow]:
    rows = []
    for entry in list_families(max_rank, max_q):
        ok, report = is_admissible(entry.spec)
        rows.append(
            ClassificationRow(
                render(entry.spec),
                entry.cartan_label,
                str(report.rs_type),
                entry.rank,
                ok,
                report.good_roots,
            )
        )
    return rows
