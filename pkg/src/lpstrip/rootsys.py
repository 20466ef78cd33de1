"""Irreducible root systems with exact integer data.

Simple roots follow Bourbaki's numbering.  Ambient coordinates are stored
doubled so that the half-integer vectors of E_8 (and its subsystems E_6,
E_7) and of F_4 become integers:

    A_l   alpha_i = e_i - e_{i+1}                         (in R^{l+1})
    B_l   alpha_i = e_i - e_{i+1} (i < l),  alpha_l = e_l
    C_l   alpha_i = e_i - e_{i+1} (i < l),  alpha_l = 2 e_l
    D_l   alpha_i = e_i - e_{i+1} (i < l),  alpha_l = e_{l-1} + e_l
    E_8   alpha_1 = (e_1 + e_8 - e_2 - ... - e_7)/2, alpha_2 = e_1 + e_2,
          alpha_i = e_{i-1} - e_{i-2} (3 <= i <= 8)
    E_6, E_7   the first 6 (resp. 7) simple roots of E_8
    F_4   alpha_1 = e_2 - e_3, alpha_2 = e_3 - e_4, alpha_3 = e_4,
          alpha_4 = (e_1 - e_2 - e_3 - e_4)/2
    G_2   alpha_1 = e_1 - e_2, alpha_2 = -2 e_1 + e_2 + e_3   (in R^3)
    BC_l  simple roots as for B_l; positive roots e_i, 2 e_i, e_i +- e_j

Reduced systems are enumerated by the root-string closure over the Cartan
matrix; BC_l is listed explicitly and its simple-basis coefficients are
recovered by an exact linear solve.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import UnsupportedRank

__all__ = [
    "Family",
    "RootSystemType",
    "Root",
    "RootSystem",
    "build_root_system",
    "count_positive",
    "length_classes",
    "cartan_matrix",
    "highest_root",
    "parse_type",
]


class Family(str, enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"
    F = "F"
    G = "G"
    BC = "BC"


_MIN_RANK = {Family.A: 1, Family.B: 2, Family.C: 2, Family.D: 4, Family.BC: 1}
_FIXED_RANKS = {Family.E: (6, 7, 8), Family.F: (4,), Family.G: (2,)}


@dataclass(frozen=True, order=True)
class RootSystemType:
    family: Family
    rank: int

    def __post_init__(self) -> None:
        try:
            fam = Family(self.family)
        except ValueError:
            raise UnsupportedRank(f"unknown root system family {self.family!r}") from None
        object.__setattr__(self, "family", fam)
        if not isinstance(self.rank, int) or isinstance(self.rank, bool):
            raise UnsupportedRank(f"rank must be an integer, got {self.rank!r}")
        if fam in _FIXED_RANKS:
            if self.rank not in _FIXED_RANKS[fam]:
                raise UnsupportedRank(f"{fam.value}_{self.rank} does not exist")
        elif self.rank < _MIN_RANK[fam]:
            raise UnsupportedRank(
                f"{fam.value}_{self.rank} unsupported: need rank >= {_MIN_RANK[fam]}"
            )

    def reduced(self) -> bool:
        return self.family is not Family.BC

    def __str__(self) -> str:
        return f"{self.family.value}_{self.rank}"


def parse_type(text: str) -> RootSystemType:
    """Parse ``"E7"``, ``"E_7"``, ``"BC3"`` and similar."""
    s = text.strip().upper().replace("_", "")
    fam = "BC" if s.startswith("BC") else s[:1]
    digits = s[len(fam):]
    if fam not in Family.__members__ or not digits.isdigit():
        raise UnsupportedRank(f"cannot read root system type {text!r}")
    return RootSystemType(Family(fam), int(digits))


@dataclass(frozen=True)
class Root:
    ambient: tuple[int, ...]
    simple_coeffs: tuple[int, ...]
    sq_length: int

    @property
    def height(self) -> int:
        return sum(self.simple_coeffs)

    def to_dict(self) -> dict:
        return {
            "ambient": list(self.ambient),
            "coeffs": list(self.simple_coeffs),
            "sq_length": self.sq_length,
        }


@dataclass(frozen=True)
class RootSystem:
    type: RootSystemType
    simple: tuple[Root, ...]
    positive: tuple[Root, ...]

    @property
    def rank(self) -> int:
        return self.type.rank

    def to_dict(self) -> dict:
        return {
            "type": str(self.type),
            "rank": self.rank,
            "simple": [list(r.ambient) for r in self.simple],
            "positive": [r.to_dict() for r in self.positive],
        }


def _unit(n: int, i: int, scale: int = 2) -> list[int]:
    v = [0] * n
    v[i] = scale
    return v


def _simple_ambient(t: RootSystemType) -> list[list[int]]:
    """Doubled ambient vectors of the simple roots, Bourbaki order."""
    fam, l = t.family, t.rank
    if fam is Family.A:
        return [[a - b for a, b in zip(_unit(l + 1, i), _unit(l + 1, i + 1))] for i in range(l)]
    if fam in (Family.B, Family.C, Family.D, Family.BC):
        out = [[a - b for a, b in zip(_unit(l, i), _unit(l, i + 1))] for i in range(l - 1)]
        if fam in (Family.B, Family.BC):
            out.append(_unit(l, l - 1))
        elif fam is Family.C:
            out.append(_unit(l, l - 1, 4))
        else:
            out.append([a + b for a, b in zip(_unit(l, l - 2), _unit(l, l - 1))])
        return out
    if fam is Family.E:
        e8 = [[1, -1, -1, -1, -1, -1, -1, 1], [2, 2, 0, 0, 0, 0, 0, 0]]
        for i in range(6):
            e8.append([a - b for a, b in zip(_unit(8, i + 1), _unit(8, i))])
        return e8[:l]
    if fam is Family.F:
        return [[0, 2, -2, 0], [0, 0, 2, -2], [0, 0, 0, 2], [1, -1, -1, -1]]
    return [[2, -2, 0], [-4, 2, 2]]


def _dot(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(x, y))


def cartan_matrix(t: RootSystemType) -> tuple[tuple[int, ...], ...]:
    """``A[i][j] = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j)``."""
    simple = np.array(_simple_ambient(t), dtype=np.int64)
    gram = simple @ simple.T
    num, den = 2 * gram, np.diag(gram)[None, :]
    if (num % den).any():
        raise AssertionError(f"non-integral Cartan entry for {t}")
    return tuple(tuple(row) for row in (num // den).tolist())


def _closure(cartan: tuple[tuple[int, ...], ...]) -> list[tuple[int, ...]]:
    # Root strings: beta + alpha_i is a root iff p - <beta, alpha_i^vee> > 0,
    # where p is the length of the unbroken alpha_i-string below beta.
    # Coefficient vectors are keyed as base-8 integers (coefficients <= 6).
    l = len(cartan)
    pow8 = [8**i for i in range(l)]
    seen: set[int] = set()
    level: list[tuple[int, list[int], list[int]]] = []
    order: list[tuple[int, ...]] = []
    for i in range(l):
        c = [1 if j == i else 0 for j in range(l)]
        seen.add(pow8[i])
        level.append((pow8[i], c, list(cartan[i])))
        order.append(tuple(c))
    while level:
        nxt = []
        for key, coeffs, pairing in level:
            for i in range(l):
                pi = pairing[i]
                if pi >= 0:
                    if coeffs[i] <= pi or key - (pi + 1) * pow8[i] not in seen:
                        continue
                new = key + pow8[i]
                if new in seen:
                    continue
                seen.add(new)
                c = list(coeffs)
                c[i] += 1
                nxt.append((new, c, [a + b for a, b in zip(pairing, cartan[i])]))
                order.append(tuple(c))
        level = nxt
    return order


def _solve_coeffs(simple: list[list[int]], vec: list[int]) -> tuple[int, ...]:
    """Exact coordinates of ``vec`` in the basis ``simple`` (Gauss-Jordan)."""
    n, m = len(vec), len(simple)
    rows = [[Fraction(simple[j][r]) for j in range(m)] + [Fraction(vec[r])] for r in range(n)]
    piv_row = 0
    pivots = []
    for col in range(m):
        pr = next((r for r in range(piv_row, n) if rows[r][col] != 0), None)
        if pr is None:
            raise ValueError("simple roots are linearly dependent")
        rows[piv_row], rows[pr] = rows[pr], rows[piv_row]
        pv = rows[piv_row][col]
        rows[piv_row] = [x / pv for x in rows[piv_row]]
        for r in range(n):
            if r != piv_row and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[piv_row])]
        pivots.append(col)
        piv_row += 1
    if any(rows[r][m] != 0 for r in range(piv_row, n)):
        raise ValueError("vector is not in the span of the simple roots")
    sol = [rows[k][m] for k in range(m)]
    if any(x.denominator != 1 for x in sol):
        raise ValueError("non-integral simple-basis coordinates")
    return tuple(int(x) for x in sol)


def _bc_positive_ambient(l: int) -> list[list[int]]:
    out = []
    for i in range(l):
        out.append(_unit(l, i))
        out.append(_unit(l, i, 4))
        for j in range(i + 1, l):
            out.append([a - b for a, b in zip(_unit(l, i), _unit(l, j))])
            out.append([a + b for a, b in zip(_unit(l, i), _unit(l, j))])
    return out


def _make_root(ambient: Sequence[int], coeffs: Sequence[int]) -> Root:
    sq4 = _dot(ambient, ambient)
    if sq4 % 4:
        raise AssertionError(f"non-integral squared length for {ambient}")
    return Root(tuple(ambient), tuple(coeffs), sq4 // 4)


@lru_cache(maxsize=None)
def build_root_system(t: RootSystemType) -> RootSystem:
    if not isinstance(t, RootSystemType):
        raise UnsupportedRank(f"expected a RootSystemType, got {t!r}")
    simple_amb = _simple_ambient(t)
    l = t.rank

    if t.reduced():
        coeff_list = _closure(cartan_matrix(t))
        amb = np.array(coeff_list, dtype=np.int64) @ np.array(simple_amb, dtype=np.int64)
        sq4 = (amb * amb).sum(axis=1)
        if (sq4 % 4).any():
            raise AssertionError(f"non-integral squared length in {t}")
        positive = [
            Root(tuple(v), c, n // 4)
            for v, c, n in zip(amb.tolist(), coeff_list, sq4.tolist())
        ]
    else:
        positive = [_make_root(v, _solve_coeffs(simple_amb, v)) for v in _bc_positive_ambient(l)]
        positive.sort(key=lambda r: (r.height, tuple(-c for c in r.simple_coeffs)))
    by_coeff = {r.simple_coeffs: r for r in positive}
    simple = tuple(by_coeff[tuple(1 if j == i else 0 for j in range(l))] for i in range(l))
    return RootSystem(t, simple, tuple(positive))


def count_positive(t: RootSystemType) -> int:
    """Closed-form number of positive roots."""
    l = t.rank
    return {
        Family.A: l * (l + 1) // 2,
        Family.B: l * l,
        Family.C: l * l,
        Family.D: l * (l - 1),
        Family.E: {6: 36, 7: 63, 8: 120}.get(l, 0),
        Family.F: 24,
        Family.G: 6,
        Family.BC: l * l + l,
    }[t.family]


def length_classes(rs: RootSystem) -> dict[int, list[Root]]:
    """Positive roots grouped by squared length, keys ascending."""
    groups: dict[int, list[Root]] = defaultdict(list)
    for r in rs.positive:
        groups[r.sq_length].append(r)
    return {k: groups[k] for k in sorted(groups)}


def highest_root(rs: RootSystem) -> Root:
    """The unique positive root of maximal height (reduced types)."""
    return max(rs.positive, key=lambda r: r.height)
