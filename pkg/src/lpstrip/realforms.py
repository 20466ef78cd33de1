"""Non-compact simple real Lie groups and their restricted root data.

A group is named by a short text form (``"SL(4,R)"``, ``"SU(2,3)"``,
``"SO*(8)"``, ``"E7^3"``, ``"E6(C)"``...) parsed into a :class:`RealFormSpec`.
The relative root system and multiplicities come from a small JSON
database shipped with the package; ``LPSTRIP_DB`` may point at a
replacement file with the same schema.
"""

from __future__ import annotations

import enum
import json
import os
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Mapping, NamedTuple

import jsonschema

from .errors import (
    CompactGroup,
    DatabaseError,
    MissingMultiplicities,
    NotSimple,
    ParseError,
    UnknownForm,
)
from .rootsys import Family, RootSystemType, build_root_system, length_classes

DB_ENV_VAR = "LPSTRIP_DB"


class GroupFamily(str, enum.Enum):
    SL_R = "SL_R"
    SL_H = "SL_H"
    SU_pq = "SU_pq"
    Sp2n_R = "Sp2n_R"
    Sp_pq = "Sp_pq"
    SO_pq = "SO_pq"
    SOstar = "SOstar"
    Split_E6 = "Split_E6"
    E6_rank2 = "E6_rank2"
    Split_E7 = "Split_E7"
    E7_rank3 = "E7_rank3"
    Complex = "Complex"
    NonAdmissibleExceptional = "NonAdmissibleExceptional"


@dataclass(frozen=True)
class RealFormSpec:
    """A group: family plus integer parameters.

    ``label`` carries the inner type letter for complex groups and the
    form name for the non-admissible exceptional forms.
    """

    family: GroupFamily
    params: tuple[int, ...] = ()
    label: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", GroupFamily(self.family))
        object.__setattr__(self, "params", tuple(self.params))

    def __str__(self) -> str:
        return render(self)


# Squared lengths of each named length class (ambient units of rootsys).
CLASS_SQ_LENGTH: dict[Family, dict[str, int]] = {
    Family.A: {"all": 2},
    Family.D: {"all": 2},
    Family.E: {"all": 2},
    Family.B: {"short": 1, "long": 2},
    Family.C: {"short": 2, "long": 4},
    Family.F: {"short": 1, "long": 2},
    Family.G: {"short": 2, "long": 6},
    Family.BC: {"short": 1, "middle": 2, "long": 4},
}


def class_name(family: Family, sq_length: int) -> str:
    for name, sq in CLASS_SQ_LENGTH[Family(family)].items():
        if sq == sq_length:
            return name
    raise KeyError(sq_length)


@dataclass(frozen=True)
class RestrictedDatum:
    rs_type: RootSystemType
    mult: Mapping[int, int] = field(default_factory=dict)
    cartan_label: str = ""
    verified: bool = True
    note: str | None = None

    @property
    def rank(self) -> int:
        return self.rs_type.rank

    def has_multiplicities(self) -> bool:
        present = length_classes(build_root_system(self.rs_type))
        return all(sq in self.mult for sq in present)

    def mult_by_class(self) -> dict[str, int]:
        return {class_name(self.rs_type.family, sq): m for sq, m in sorted(self.mult.items())}

    def to_dict(self) -> dict:
        return {
            "rs_type": str(self.rs_type),
            "rank": self.rank,
            "mult": self.mult_by_class(),
            "cartan_label": self.cartan_label,
            "verified": self.verified,
            "note": self.note,
        }


# --------------------------------------------------------------------------
# parsing and rendering

_EXCEPTIONAL = {
    "E6^6": (GroupFamily.Split_E6, None),
    "E6^2": (GroupFamily.E6_rank2, None),
    "E7^7": (GroupFamily.Split_E7, None),
    "E7^3": (GroupFamily.E7_rank3, None),
    "E8^8": (GroupFamily.NonAdmissibleExceptional, "E8^8"),
    "F4^4": (GroupFamily.NonAdmissibleExceptional, "F4^4"),
    "G2^2": (GroupFamily.NonAdmissibleExceptional, "G2^2"),
    "E6^4": (GroupFamily.NonAdmissibleExceptional, "E6^4"),
    "E7^4": (GroupFamily.NonAdmissibleExceptional, "E7^4"),
    "E8^4": (GroupFamily.NonAdmissibleExceptional, "E8^4"),
    "F4^1": (GroupFamily.NonAdmissibleExceptional, "F4^1"),
    "EIII": (GroupFamily.NonAdmissibleExceptional, "EIII"),
}

_CARTAN_ALIASES = {
    "EI": "E6^6",
    "EII": "E6^4",
    "EIV": "E6^2",
    "EV": "E7^7",
    "EVI": "E7^4",
    "EVII": "E7^3",
    "EVIII": "E8^8",
    "EIX": "E8^4",
    "FI": "F4^4",
    "FII": "F4^1",
}

_EXCEPTIONAL_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


def _complex(letter: str, l: int) -> RealFormSpec:
    # Low-rank coincidences are normalized to one canonical name.
    if letter == "B" and l == 1 or letter == "C" and l == 1:
        letter = "A"
    elif letter == "D" and l == 3:
        letter = "A"
    elif letter == "D" and l == 2:
        raise NotSimple("SO(4,C) is not simple (locally SL(2,C) x SL(2,C))")
    if l < 1 or letter == "D" and l < 2:
        raise NotSimple(f"complex group of type {letter}_{l} is not simple")
    if letter in _EXCEPTIONAL_RANKS and l not in _EXCEPTIONAL_RANKS[letter]:
        raise UnknownForm(f"no complex group of type {letter}_{l}")
    return RealFormSpec(GroupFamily.Complex, (l,), letter)


def _so_complex(n: int) -> RealFormSpec:
    if n <= 2:
        raise NotSimple(f"SO({n},C) is not simple")
    return _complex("B", (n - 1) // 2) if n % 2 else _complex("D", n // 2)


def _pq(p: int, q: int, name: str) -> tuple[int, int]:
    p, q = min(p, q), max(p, q)
    if p == 0:
        raise CompactGroup(f"{name}(0,{q}) is compact")
    return p, q


def parse_group(text: str) -> RealFormSpec:
    """Parse a group name into a normalized :class:`RealFormSpec`."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ParseError("empty group name")

    m = re.fullmatch(r"SL\((\d+),([RHC])\)", s)
    if m:
        n, field_ = int(m[1]), m[2]
        if n < 2:
            if field_ == "H" and n == 1:
                raise CompactGroup("SL(1,H) = SU(2) is compact")
            raise NotSimple(f"SL({n},{field_}) is trivial or abelian")
        if field_ == "C":
            return _complex("A", n - 1)
        return RealFormSpec(GroupFamily.SL_R if field_ == "R" else GroupFamily.SL_H, (n,))

    m = re.fullmatch(r"SU\*\((\d+)\)", s)
    if m:
        n = int(m[1])
        if n % 2:
            raise ParseError("SU*(m) needs even m")
        return parse_group(f"SL({n // 2},H)")

    m = re.fullmatch(r"SU\((\d+),(\d+)\)", s)
    if m:
        p, q = _pq(int(m[1]), int(m[2]), "SU")
        return RealFormSpec(GroupFamily.SU_pq, (p, q))

    m = re.fullmatch(r"Sp\((\d+),([RC])\)", s)
    if m:
        two_n = int(m[1])
        if two_n % 2 or two_n == 0:
            raise ParseError(f"Sp(m,{m[2]}) needs positive even m, got {two_n}")
        if m[2] == "C":
            return _complex("C", two_n // 2)
        return RealFormSpec(GroupFamily.Sp2n_R, (two_n // 2,))

    m = re.fullmatch(r"Sp\((\d+),(\d+)\)", s)
    if m:
        p, q = _pq(int(m[1]), int(m[2]), "Sp")
        return RealFormSpec(GroupFamily.Sp_pq, (p, q))

    m = re.fullmatch(r"SO\((\d+),C\)", s)
    if m:
        return _so_complex(int(m[1]))

    m = re.fullmatch(r"SO\((\d+),(\d+),C\)", s)
    if m:
        return _so_complex(int(m[1]) + int(m[2]))

    m = re.fullmatch(r"SO\((\d+),(\d+)\)", s)
    if m:
        p, q = _pq(int(m[1]), int(m[2]), "SO")
        if p + q <= 2:
            raise NotSimple(f"SO({p},{q}) is abelian")
        if (p, q) == (2, 2):
            raise NotSimple("SO(2,2) is not simple (locally SL(2,R) x SL(2,R))")
        return RealFormSpec(GroupFamily.SO_pq, (p, q))

    m = re.fullmatch(r"SO\*\((\d+)\)", s)
    if m:
        two_r = int(m[1])
        if two_r % 2 or two_r == 0:
            raise ParseError(f"SO*(m) needs positive even m, got {two_r}")
        r = two_r // 2
        if r == 1:
            raise NotSimple("SO*(2) is abelian")
        if r == 2:
            raise NotSimple("SO*(4) is not simple (locally SU(2) x SL(2,R))")
        if r == 3:
            raise NotSimple("SO*(6) is locally isomorphic to SU(1,3); query that group instead")
        return RealFormSpec(GroupFamily.SOstar, (r,))

    m = re.fullmatch(r"([EFG])(\d)\(C\)", s)
    if m:
        return _complex(m[1], int(m[2]))

    key = _CARTAN_ALIASES.get(s.upper(), s)
    if key.upper() == "EIII":
        key = "EIII"
    if key in _EXCEPTIONAL:
        fam, label = _EXCEPTIONAL[key]
        return RealFormSpec(fam, (), label)
    if re.fullmatch(r"[EFG]\d\^\d+", s):
        raise UnknownForm(f"no real form named {text!r}")
    raise ParseError(f"cannot parse group name {text!r}")


def render(g: RealFormSpec) -> str:
    """Canonical text form; ``parse_group(render(g)) == g``."""
    f, ps = g.family, g.params
    if f is GroupFamily.SL_R:
        return f"SL({ps[0]},R)"
    if f is GroupFamily.SL_H:
        return f"SL({ps[0]},H)"
    if f is GroupFamily.SU_pq:
        return f"SU({ps[0]},{ps[1]})"
    if f is GroupFamily.Sp2n_R:
        return f"Sp({2 * ps[0]},R)"
    if f is GroupFamily.Sp_pq:
        return f"Sp({ps[0]},{ps[1]})"
    if f is GroupFamily.SO_pq:
        return f"SO({ps[0]},{ps[1]})"
    if f is GroupFamily.SOstar:
        return f"SO*({2 * ps[0]})"
    if f is GroupFamily.Complex:
        l = ps[0]
        return {
            "A": f"SL({l + 1},C)",
            "B": f"SO({l},{l + 1},C)",
            "C": f"Sp({2 * l},C)",
            "D": f"SO({l},{l},C)",
        }.get(g.label, f"{g.label}{l}(C)")
    if f is GroupFamily.NonAdmissibleExceptional:
        return g.label
    return {
        GroupFamily.Split_E6: "E6^6",
        GroupFamily.E6_rank2: "E6^2",
        GroupFamily.Split_E7: "E7^7",
        GroupFamily.E7_rank3: "E7^3",
    }[f]


def _bindings(g: RealFormSpec) -> dict[str, int]:
    f, ps = g.family, g.params
    if f in (GroupFamily.SL_R, GroupFamily.SL_H, GroupFamily.Sp2n_R):
        return {"n": ps[0]}
    if f in (GroupFamily.SU_pq, GroupFamily.Sp_pq, GroupFamily.SO_pq):
        return {"p": ps[0], "q": ps[1]}
    if f is GroupFamily.SOstar:
        return {"r": ps[0]}
    if f is GroupFamily.Complex:
        return {"l": ps[0]}
    return {}


def _case(g: RealFormSpec) -> str:
    b = _bindings(g)
    f = g.family
    if f in (GroupFamily.SU_pq, GroupFamily.Sp_pq):
        if b["p"] < b["q"]:
            return "p<q"
        return "p=q=1" if b["p"] == 1 else "p=q>=2"
    if f is GroupFamily.Sp2n_R:
        return "n=1" if b["n"] == 1 else "n>=2"
    if f is GroupFamily.SO_pq:
        p, q = b["p"], b["q"]
        if p == 1:
            return "p=1"
        if p < q:
            return "2<=p<q"
        return "p=q=3" if p == 3 else "p=q>=4"
    if f is GroupFamily.SOstar:
        return "r even" if b["r"] % 2 == 0 else "r odd"
    if f in (GroupFamily.Complex, GroupFamily.NonAdmissibleExceptional):
        return g.label
    return "default"


_FORMULAS: dict[str, Callable[[Mapping[str, int]], int]] = {
    "n": lambda b: b["n"],
    "n-1": lambda b: b["n"] - 1,
    "l": lambda b: b["l"],
    "p": lambda b: b["p"],
    "q-1": lambda b: b["q"] - 1,
    "q-p": lambda b: b["q"] - b["p"],
    "2*(q-p)": lambda b: 2 * (b["q"] - b["p"]),
    "4*(q-p)": lambda b: 4 * (b["q"] - b["p"]),
    "r/2": lambda b: b["r"] // 2,
    "(r-1)/2": lambda b: (b["r"] - 1) // 2,
}

_KNOWN_CASES = {
    "SL_R": {"default"},
    "SL_H": {"default"},
    "SU_pq": {"p=q>=2", "p=q=1", "p<q"},
    "Sp2n_R": {"n>=2", "n=1"},
    "Sp_pq": {"p=q>=2", "p=q=1", "p<q"},
    "SO_pq": {"p=1", "2<=p<q", "p=q=3", "p=q>=4"},
    "SOstar": {"r even", "r odd"},
    "Split_E6": {"default"},
    "E6_rank2": {"default"},
    "Split_E7": {"default"},
    "E7_rank3": {"default"},
    "Complex": set("ABCDEFG"),
    "NonAdmissibleExceptional": {label for _, label in _EXCEPTIONAL.values() if label},
}


def _eval(value: int | str, bindings: Mapping[str, int]) -> int:
    if isinstance(value, int):
        return value
    try:
        return _FORMULAS[value](bindings)
    except KeyError:
        raise DatabaseError(f"formula tag {value!r} cannot be evaluated here") from None


class Database:
    """Validated multiplicity database, immutable after construction."""

    def __init__(self, entries: Iterable[dict], source: str = "<memory>") -> None:
        entries = list(entries)
        try:
            jsonschema.validate(entries, _schema())
        except jsonschema.ValidationError as exc:
            raise DatabaseError(f"{source}: {exc.message}") from None
        index: dict[tuple[str, str], dict] = {}
        for e in entries:
            fam, case = e["family"], e["case"]
            if case not in _KNOWN_CASES.get(fam, ()):
                raise DatabaseError(f"{source}: unknown family/case {fam!r}/{case!r}")
            if (fam, case) in index:
                raise DatabaseError(f"{source}: duplicate entry {fam!r}/{case!r}")
            allowed = CLASS_SQ_LENGTH[Family(e["rs_family"])]
            for cls, value in e.get("mult", {}).items():
                if cls not in allowed:
                    raise DatabaseError(
                        f"{source}: class {cls!r} does not exist in type {e['rs_family']}"
                    )
                if isinstance(value, str) and value not in _FORMULAS:
                    raise DatabaseError(f"{source}: unknown formula tag {value!r}")
            if isinstance(e["rank_param"], str) and e["rank_param"] not in _FORMULAS:
                raise DatabaseError(f"{source}: unknown formula tag {e['rank_param']!r}")
            index[(fam, case)] = e
        self._entries = tuple(entries)
        self._index = index
        self.source = source

    @property
    def entries(self) -> tuple[dict, ...]:
        return self._entries

    def entry(self, g: RealFormSpec) -> dict:
        try:
            return self._index[(g.family.value, _case(g))]
        except KeyError:
            raise UnknownForm(f"no database entry for {render(g)}") from None

    def dump(self) -> str:
        return json.dumps(list(self._entries), indent=2)


@lru_cache(maxsize=1)
def _schema() -> dict:
    return json.loads(resources.files("lpstrip.data").joinpath("multiplicities.schema.json").read_text())


def load_database(path: str | os.PathLike) -> Database:
    p = Path(path)
    try:
        data = json.loads(p.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise DatabaseError(f"{p}: {exc}") from None
    return Database(data, source=str(p))


@lru_cache(maxsize=None)
def _default_database(override: str | None) -> Database:
    if override:
        return load_database(override)
    text = resources.files("lpstrip.data").joinpath("multiplicities.json").read_text()
    return Database(json.loads(text), source="builtin")


def default_database() -> Database:
    return _default_database(os.environ.get(DB_ENV_VAR) or None)


_ISOGENIES = {
    (GroupFamily.SO_pq, (1, 2)): "SO(1,2) is locally isomorphic to SL(2,R)",
    (GroupFamily.SO_pq, (1, 3)): "SO(1,3) is locally isomorphic to SL(2,C)",
    (GroupFamily.SO_pq, (1, 5)): "SO(1,5) is locally isomorphic to SL(2,H)",
    (GroupFamily.SO_pq, (2, 3)): "SO(2,3) is locally isomorphic to Sp(4,R)",
    (GroupFamily.SO_pq, (2, 4)): "SO(2,4) is locally isomorphic to SU(2,2)",
    (GroupFamily.SO_pq, (3, 3)): "SO(3,3) is locally isomorphic to SL(4,R)",
    (GroupFamily.SU_pq, (1, 1)): "SU(1,1) is locally isomorphic to SL(2,R)",
    (GroupFamily.Sp2n_R, (1,)): "Sp(2,R) = SL(2,R)",
    (GroupFamily.Sp_pq, (1, 1)): "Sp(1,1) is locally isomorphic to SO(1,4)",
}


def isogeny_note(g: RealFormSpec) -> str | None:
    return _ISOGENIES.get((g.family, g.params))


def restricted_root_datum(g: RealFormSpec, db: Database | None = None) -> RestrictedDatum:
    """Relative root system type and multiplicities of ``g``."""
    db = db or default_database()
    e = db.entry(g)
    b = _bindings(g)
    rs_type = RootSystemType(Family(e["rs_family"]), _eval(e["rank_param"], b))
    classes = CLASS_SQ_LENGTH[rs_type.family]
    present = set(length_classes(build_root_system(rs_type)))
    mult = {}
    for cls, value in e.get("mult", {}).items():
        sq = classes[cls]
        if sq in present:
            mult[sq] = _eval(value, b)
    if any(sq in mult and mult[sq] < 1 for sq in present):
        raise DatabaseError(f"{render(g)}: a present root class has multiplicity < 1")
    return RestrictedDatum(
        rs_type,
        mult,
        cartan_label=e["cartan_label"],
        verified=e.get("verified", True),
        note=isogeny_note(g),
    )


def require_multiplicities(datum: RestrictedDatum) -> None:
    if not datum.has_multiplicities():
        raise MissingMultiplicities(f"no multiplicity data for the roots of {datum.rs_type}")


class CatalogEntry(NamedTuple):
    spec: RealFormSpec
    cartan_label: str
    rank: int


def list_families(max_rank: int, max_q: int | None = None) -> list[CatalogEntry]:
    """Every catalogued group of real rank <= ``max_rank``.

    Two-parameter families SU(p,q), Sp(p,q), SO(p,q) are cut off at
    ``q <= max_q`` (default ``max(9, max_rank + 1)``).
    """
    if max_rank < 1:
        raise ValueError("max_rank must be >= 1")
    Q = max_q if max_q is not None else max(9, max_rank + 1)
    specs: list[RealFormSpec] = []
    for n in range(2, max_rank + 2):
        specs.append(RealFormSpec(GroupFamily.SL_R, (n,)))
    for n in range(2, max_rank + 2):
        specs.append(RealFormSpec(GroupFamily.SL_H, (n,)))
    for fam in (GroupFamily.SU_pq, GroupFamily.Sp_pq):
        for p in range(1, max_rank + 1):
            for q in range(max(p, 2), Q + 1):
                specs.append(RealFormSpec(fam, (p, q)))
    for n in range(2, max_rank + 1):
        specs.append(RealFormSpec(GroupFamily.Sp2n_R, (n,)))
    for p in range(1, max_rank + 1):
        for q in range(max(p, 2), Q + 1):
            if (p, q) != (2, 2):
                specs.append(RealFormSpec(GroupFamily.SO_pq, (p, q)))
    for r in range(4, 2 * max_rank + 2):
        specs.append(RealFormSpec(GroupFamily.SOstar, (r,)))
    for letter, lo in (("A", 1), ("B", 2), ("C", 2), ("D", 4)):
        for l in range(lo, max_rank + 1):
            specs.append(RealFormSpec(GroupFamily.Complex, (l,), letter))
    for letter, ranks in _EXCEPTIONAL_RANKS.items():
        for l in ranks:
            specs.append(RealFormSpec(GroupFamily.Complex, (l,), letter))
    for key in _EXCEPTIONAL:
        specs.append(parse_group(key))

    out = []
    for g in specs:
        datum = restricted_root_datum(g)
        if datum.rank <= max_rank:
            out.append(CatalogEntry(g, datum.cartan_label, datum.rank))
    return out
