"""Dimensions, strip width and per-degree vanishing verdicts.

For an admissible group with good root gamma, ``d - 1`` is the dimension of
the nilradical ``N_gamma`` (sum of multiplicities over the positive roots
with nonzero gamma-coordinate) and ``D`` the dimension of the symmetric
space.  Group L^p-cohomology in degree ``k`` can only survive for
``(d-1)/p < k < (d-1)/p + D - d + 2``.  All comparisons are exact.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

from .admissibility import good_roots, is_admissible
from .errors import (
    BadIndex,
    DegreeOutOfRange,
    ExponentOutOfRange,
    MissingMultiplicities,
    NotAdmissible,
    NotGoodRoot,
)
from .realforms import (
    RealFormSpec,
    RestrictedDatum,
    parse_group,
    render,
    restricted_root_datum,
)
from .rootsys import Root, RootSystem, build_root_system

RationalLike = Union[int, str, Fraction]


def to_rational(x: RationalLike) -> Fraction:
    """Exact rational from an int, a Fraction, ``"a/b"`` or a decimal literal."""
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass 'a/b' or a decimal string")
    try:
        return Fraction(x.replace(" ", "")) if isinstance(x, str) else Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise ExponentOutOfRange(f"not a rational number: {x!r}") from None


def rational_to_json(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def rational_from_json(d: dict) -> Fraction:
    return Fraction(d["num"], d["den"])


def _exponent(p: RationalLike) -> Fraction:
    p = to_rational(p)
    if p <= 1:
        raise ExponentOutOfRange(f"exponent p must be > 1, got {p}")
    return p


def conjugate_exponent(p: RationalLike) -> Fraction:
    """``q`` with ``1/p + 1/q = 1``."""
    p = _exponent(p)
    return p / (p - 1)


# --------------------------------------------------------------------------
# dimensions


def psi(rs: RootSystem, gamma: int) -> list[Root]:
    """Positive roots whose ``gamma``-coordinate is nonzero."""
    if not 1 <= gamma <= rs.rank:
        raise BadIndex(f"simple root index {gamma} out of range 1..{rs.rank}")
    return [r for r in rs.positive if r.simple_coeffs[gamma - 1] >= 1]


def dim_nilradical(datum: RestrictedDatum, gamma: int) -> int:
    rs = build_root_system(datum.rs_type)
    roots = psi(rs, gamma)
    if gamma not in good_roots(rs).good_roots:
        raise NotGoodRoot(f"alpha_{gamma} is not a good root of {datum.rs_type}")
    # At most two root lengths, hence at most two multiplicities.
    by_length = Counter(r.sq_length for r in roots)
    missing = set(by_length) - set(datum.mult)
    if missing:
        raise MissingMultiplicities(f"no multiplicity for roots of squared length {sorted(missing)}")
    return sum(datum.mult[sq] * n for sq, n in by_length.items())


def _nilradical_dims(datum: RestrictedDatum, goods: tuple[int, ...]) -> dict[int, int]:
    # one pass over the positive roots serves every good root at once
    rs = build_root_system(datum.rs_type)
    dims = dict.fromkeys(goods, 0)
    for r in rs.positive:
        m = datum.mult.get(r.sq_length)
        for i in goods:
            if r.simple_coeffs[i - 1]:
                if m is None:
                    raise MissingMultiplicities(
                        f"no multiplicity for roots of squared length {r.sq_length}"
                    )
                dims[i] += m
    return dims


def dim_symmetric_space(datum: RestrictedDatum) -> int:
    rs = build_root_system(datum.rs_type)
    counts = Counter(r.sq_length for r in rs.positive)
    missing = set(counts) - set(datum.mult)
    if missing:
        raise MissingMultiplicities(
            f"{datum.rs_type}: no multiplicity for squared length {sorted(missing)}"
        )
    return datum.rank + sum(datum.mult[sq] * n for sq, n in counts.items())


@dataclass(frozen=True)
class StripReport:
    group: RealFormSpec
    rs_type: str
    rank: int
    chosen_gamma: int
    psi_size: int
    d_minus_1: int
    d: int
    D: int
    width: int
    proportion: Fraction
    alternatives: tuple[tuple[int, int], ...] = ()

    def to_dict(self) -> dict:
        return {
            "group": render(self.group),
            "rs_type": self.rs_type,
            "rank": self.rank,
            "chosen_gamma": self.chosen_gamma,
            "psi_size": self.psi_size,
            "d_minus_1": self.d_minus_1,
            "d": self.d,
            "D": self.D,
            "width": self.width,
            "proportion": rational_to_json(self.proportion),
            "alternatives": [list(a) for a in self.alternatives],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "StripReport":
        return cls(
            parse_group(d["group"]),
            d["rs_type"],
            d["rank"],
            d["chosen_gamma"],
            d["psi_size"],
            d["d_minus_1"],
            d["d"],
            d["D"],
            d["width"],
            rational_from_json(d["proportion"]),
            tuple(tuple(a) for a in d["alternatives"]),
        )


def strip_report(g: RealFormSpec, gamma: int | None = None) -> StripReport:
    """Strip data for ``g``; the good root maximizing ``d - 1`` unless ``gamma`` is given."""
    ok, report = is_admissible(g)
    if not ok:
        raise NotAdmissible(
            f"{render(g)} is not admissible: relative root system {report.rs_type} has no good root"
        )
    datum = restricted_root_datum(g)
    rs = build_root_system(datum.rs_type)
    dims = _nilradical_dims(datum, report.good_roots)
    if gamma is None:
        gamma = max(report.good_roots, key=lambda i: (dims[i], -i))
    elif gamma not in dims:
        if not 1 <= gamma <= rs.rank:
            raise BadIndex(f"simple root index {gamma} out of range 1..{rs.rank}")
        raise NotGoodRoot(
            f"alpha_{gamma} is not a good root of {datum.rs_type}; good roots: {list(report.good_roots)}"
        )
    dm1 = dims[gamma]
    D = dim_symmetric_space(datum)
    d = dm1 + 1
    return StripReport(
        group=g,
        rs_type=str(datum.rs_type),
        rank=datum.rank,
        chosen_gamma=gamma,
        psi_size=len(psi(rs, gamma)),
        d_minus_1=dm1,
        d=d,
        D=D,
        width=D - d + 2,
        proportion=Fraction(d - 2, D),
        alternatives=tuple((i, dims[i]) for i in report.good_roots if i != gamma),
    )


# --------------------------------------------------------------------------
# real hyperbolic space and duality


@dataclass(frozen=True)
class HypStatus:
    zero: bool
    hausdorff: bool
    reduced_zero: bool

    def to_dict(self) -> dict:
        return {"zero": self.zero, "hausdorff": self.hausdorff, "reduced_zero": self.reduced_zero}

    @classmethod
    def from_dict(cls, d: dict) -> "HypStatus":
        return cls(d["zero"], d["hausdorff"], d["reduced_zero"])


def hyperbolic_status(d: int, p: RationalLike, k: int) -> HypStatus:
    """L^p-cohomology of real hyperbolic d-space in degree ``k``.

    At the single non-Hausdorff degree ``k = (d-1)/p + 1`` the reduced space
    is taken to vanish.
    """
    p = _exponent(p)
    if d < 2:
        raise DegreeOutOfRange(f"dimension d must be >= 2, got {d}")
    if k < 0:
        raise DegreeOutOfRange(f"degree must be >= 0, got {k}")
    if k == 0 or k >= d:
        return HypStatus(True, True, True)
    t = Fraction(d - 1) / p
    return HypStatus(
        zero=k <= t or k > t + 1,
        hausdorff=k != t + 1,
        reduced_zero=not (t < k < t + 1),
    )


class DualityImage(NamedTuple):
    hausdorff_dual: tuple[Fraction, int]
    reduced_dual: tuple[Fraction, int]


def duality_image(D: int, p: RationalLike, k: int) -> DualityImage:
    if not 0 <= k <= D:
        raise DegreeOutOfRange(f"degree {k} outside 0..{D}")
    q = conjugate_exponent(p)
    return DualityImage((q, D - k + 1), (q, D - k))


# --------------------------------------------------------------------------
# verdicts for the group


class Verdict(str, enum.Enum):
    VanishesUnreduced = "VanishesUnreduced"
    VanishesReducedOnly = "VanishesReducedOnly"
    Unknown = "Unknown"


class Reason(str, enum.Enum):
    DEGREE_ZERO = "degree-zero"
    TOP_DEGREE = "degree-at-least-D"
    DEGREE_ONE = "degree-one-corollary"
    LOWER_TAIL = "lower-tail"
    UPPER_TAIL = "upper-tail"
    REDUCED_BAND = "reduced-band"
    INSIDE_STRIP = "inside-strip"


@dataclass(frozen=True)
class CohomologyStatus:
    verdict: Verdict
    reason: Reason
    ell: int | None = None

    def to_dict(self) -> dict:
        return {"verdict": self.verdict.value, "reason": self.reason.value, "ell": self.ell}

    @classmethod
    def from_dict(cls, d: dict) -> "CohomologyStatus":
        return cls(Verdict(d["verdict"]), Reason(d["reason"]), d.get("ell"))


def status_from_report(report: StripReport, p: RationalLike, k: int) -> CohomologyStatus:
    p = _exponent(p)
    if k < 0:
        raise DegreeOutOfRange(f"degree must be >= 0, got {k}")
    t = Fraction(report.d_minus_1) / p
    vanishes = Verdict.VanishesUnreduced
    if k == 0:
        return CohomologyStatus(vanishes, Reason.DEGREE_ZERO)
    if k >= report.D:
        return CohomologyStatus(vanishes, Reason.TOP_DEGREE)
    if k == 1 and report.rank >= 2:
        return CohomologyStatus(vanishes, Reason.DEGREE_ONE)
    if k <= t:
        return CohomologyStatus(vanishes, Reason.LOWER_TAIL)
    if k >= t + report.width:
        return CohomologyStatus(vanishes, Reason.UPPER_TAIL)
    if k >= t + report.width - 1:
        return CohomologyStatus(Verdict.VanishesReducedOnly, Reason.REDUCED_BAND)
    ell = None if t.denominator == 1 else t.numerator // t.denominator + 1
    return CohomologyStatus(Verdict.Unknown, Reason.INSIDE_STRIP, ell)


def group_status(g: RealFormSpec, p: RationalLike, k: int) -> CohomologyStatus:
    return status_from_report(strip_report(g), p, k)


def scan(g: RealFormSpec, p: RationalLike) -> list[CohomologyStatus]:
    """Statuses for every degree ``0..D``."""
    report = strip_report(g)
    return [status_from_report(report, p, k) for k in range(report.D + 1)]
