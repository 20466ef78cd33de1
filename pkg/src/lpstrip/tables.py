"""Summary tables for the admissible families.

Every cell is computed from the root data.  For the rank-parametrized
families the per-rank values are turned into closed forms in ``l`` by
exact forward differences (all of them are polynomials of degree <= 2,
or quasi-polynomials with one quadratic per parity of ``l``).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import factorial
from typing import Callable, Sequence

import sympy

from .admissibility import good_roots
from .errors import NotAdmissible, NotLowDegree
from .realforms import RealFormSpec, parse_group, restricted_root_datum
from .rootsys import build_root_system
from .strip import dim_nilradical, psi, rational_to_json, strip_report

L, I = sympy.symbols("l i")


# --------------------------------------------------------------------------
# exact polynomials


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial of degree <= 2 with exact rational coefficients, constant first."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        c = [Fraction(x) for x in self.coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c) or (Fraction(0),))

    def __call__(self, x: int | Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    @property
    def degree(self) -> int:
        return -1 if self.coeffs == (0,) else len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1]

    def to_sympy(self, var: sympy.Symbol = L) -> sympy.Expr:
        return sum(
            (sympy.Rational(c.numerator, c.denominator) * var**k for k, c in enumerate(self.coeffs)),
            sympy.Integer(0),
        )

    def __str__(self) -> str:
        return pretty(self.to_sympy())


def _poly_mul_linear(poly: list[Fraction], a: Fraction, b: Fraction) -> list[Fraction]:
    """``poly * (a + b x)``."""
    out = [Fraction(0)] * (len(poly) + 1)
    for k, c in enumerate(poly):
        out[k] += a * c
        out[k + 1] += b * c
    return out


def exact_polynomial_from_samples(
    values: Sequence[int | Fraction], start: int = 0, step: int = 1
) -> IntPolynomial:
    """Interpolate samples at ``start, start+step, ...`` by a polynomial of degree <= 2.

    Raises NotLowDegree when the third forward differences do not vanish.
    """
    if len(values) < 3:
        raise ValueError("need at least 3 samples")
    rows = [[Fraction(v) for v in values]]
    while len(rows[-1]) > 1:
        prev = rows[-1]
        rows.append([b - a for a, b in zip(prev, prev[1:])])
    if any(x != 0 for row in rows[3:] for x in row):
        raise NotLowDegree(f"samples {list(values)} are not of degree <= 2")
    # Newton form in t = (x - start)/step, then expand in x.
    result = [Fraction(0)]
    for k in range(3):
        basis = [Fraction(1)]
        for j in range(k):
            basis = _poly_mul_linear(basis, Fraction(-start - j * step, step), Fraction(1, step))
        basis = [c / factorial(k) for c in basis]
        result = [
            (result[n] if n < len(result) else 0) + rows[k][0] * (basis[n] if n < len(basis) else 0)
            for n in range(max(len(result), len(basis)))
        ]
    return IntPolynomial(tuple(result))


def limit_ratio(num: IntPolynomial, den: IntPolynomial) -> Fraction:
    """``lim num(l)/den(l)`` as ``l -> infinity``."""
    if num.degree < den.degree:
        return Fraction(0)
    if num.degree > den.degree:
        raise ValueError("ratio diverges")
    return num.leading / den.leading


def _add_text(expr: sympy.Expr) -> str:
    # positive terms first, so l + 1 - i rather than -i + l + 1
    def key(t):
        deg = sympy.Poly(t, *sorted(t.free_symbols, key=str)).total_degree() if t.free_symbols else 0
        return (t.could_extract_minus_sign(), -deg, str(t))

    terms = sorted(sympy.Add.make_args(expr), key=key)
    out = str(terms[0])
    for t in terms[1:]:
        out += f" - {-t}" if t.could_extract_minus_sign() else f" + {t}"
    return out


def _factor_text(x: sympy.Expr) -> str:
    if isinstance(x, sympy.Add):
        return f"({_add_text(x)})"
    if isinstance(x, sympy.Pow) and isinstance(x.base, sympy.Add):
        return f"({_add_text(x.base)})^{x.exp}"
    return str(x)


def pretty(expr: sympy.Expr) -> str:
    """Compact human form: factored when that gives a product, expanded otherwise."""
    f = sympy.factor(expr)
    if isinstance(f, (sympy.Mul, sympy.Pow)):
        coeff, rest = f.as_coeff_Mul()
        factors = list(sympy.Mul.make_args(rest))
        if coeff < 0 and any(isinstance(x, sympy.Add) for x in factors):
            n = next(n for n, x in enumerate(factors) if isinstance(x, sympy.Add))
            factors[n] = -factors[n]
            coeff = -coeff
        parts = [_factor_text(x) for x in factors]
        head = {1: "", -1: "-"}.get(coeff.p, str(coeff.p))
        text = head + "*".join(parts)
        if coeff.q != 1:
            text += f"/{coeff.q}"
    else:
        text = _add_text(sympy.expand(expr))
    return text.replace("**", "^").replace("*", "")


# --------------------------------------------------------------------------
# table families


@dataclass(frozen=True)
class TableFamily:
    name: str
    cartan: str
    table: int
    make: Callable[[int], RealFormSpec]
    lo: int
    hi: int = 8


@dataclass(frozen=True)
class TableFixed:
    name: str
    cartan: str
    table: int
    group: str


FAMILIES: tuple[TableFamily | TableFixed, ...] = (
    TableFamily("SL_{l+1}(R)", "A I", 1, lambda l: parse_group(f"SL({l + 1},R)"), 1),
    TableFamily("SL_{l+1}(H)", "A II", 1, lambda l: parse_group(f"SL({l + 1},H)"), 1),
    TableFamily("SU_{l,l}(R)", "A III", 1, lambda l: parse_group(f"SU({l},{l})"), 2),
    TableFamily("Sp_{2l}(R)", "C I", 1, lambda l: parse_group(f"Sp({2 * l},R)"), 2),
    TableFamily("Sp_{2l,2l}(R)", "C II", 1, lambda l: parse_group(f"Sp({l},{l})"), 2),
    TableFamily("SO_{l,l}(R)", "D I", 1, lambda l: parse_group(f"SO({l},{l})"), 4),
    TableFamily("SO*_{4l}(R)", "D III", 1, lambda l: parse_group(f"SO*({4 * l})"), 2),
    TableFixed("E_6^6(R)", "E I", 1, "E6^6"),
    TableFixed("E_6^2(R)", "E IV", 1, "E6^2"),
    TableFixed("E_7^7(R)", "E V", 1, "E7^7"),
    TableFixed("E_7^3(R)", "E VII", 1, "E7^3"),
    TableFamily("SL_{l+1}(C)", "--", 2, lambda l: parse_group(f"SL({l + 1},C)"), 1),
    TableFamily("SO_{l,l+1}(C)", "--", 2, lambda l: parse_group(f"SO({l},{l + 1},C)"), 2),
    TableFamily("Sp_{2l}(C)", "--", 2, lambda l: parse_group(f"Sp({2 * l},C)"), 2),
    TableFamily("SO_{l,l}(C)", "--", 2, lambda l: parse_group(f"SO({l},{l},C)"), 4),
    TableFixed("E_6(C)", "--", 2, "E6(C)"),
    TableFixed("E_7(C)", "--", 2, "E7(C)"),
)


def family(name: str) -> TableFamily | TableFixed:
    for f in FAMILIES:
        if f.name == name:
            return f
    raise KeyError(name)


def _root_labels(goods: dict[int, tuple[int, ...]]) -> tuple[str, ...]:
    """Name each good root consistently over all sampled ranks."""
    counts = {len(g) for g in goods.values()}
    if len(counts) != 1:
        raise ValueError(f"number of good roots varies with l: {goods}")
    labels = []
    for n in range(counts.pop()):
        idx = {l: g[n] for l, g in goods.items()}
        if len(set(idx.values())) == 1:
            labels.append(f"alpha_{next(iter(idx.values()))}")
        elif all(i == l for l, i in idx.items()):
            labels.append("alpha_l")
        elif all(i == l - 1 for l, i in idx.items()):
            labels.append("alpha_{l-1}")
        else:
            raise ValueError(f"good root position {n} has no uniform name: {idx}")
    return tuple(labels)


def _mult_text(spec: RealFormSpec) -> str:
    values = list(restricted_root_datum(spec).mult_by_class().values())
    if len(set(values)) == 1:
        return str(values[0])
    return " and ".join(str(v) for v in values)


def _constant(values: Sequence, what: str):
    if any(v != values[0] for v in values):
        raise ValueError(f"{what} varies with l: {values}")
    return values[0]


@dataclass(frozen=True)
class Piecewise:
    """Quasi-polynomial: one polynomial per residue of ``l`` mod 2, or a single one."""

    pieces: dict[str, IntPolynomial]

    def __call__(self, l: int) -> Fraction:
        if "all" in self.pieces:
            return self.pieces["all"](l)
        return self.pieces["even" if l % 2 == 0 else "odd"](l)

    def leading_degree(self) -> tuple[int, Fraction]:
        degs = {(p.degree, p.leading) for p in self.pieces.values()}
        if len(degs) != 1:
            raise ValueError("pieces disagree at leading order")
        return degs.pop()

    def as_polynomial(self) -> IntPolynomial:
        """Representative polynomial for leading-order questions."""
        deg, lead = self.leading_degree()
        return IntPolynomial(tuple([Fraction(0)] * deg + [lead]))

    def text(self) -> str:
        if "all" in self.pieces:
            return str(self.pieces["all"])
        return f"{self.pieces['odd']} (odd l), {self.pieces['even']} (even l)"

    def to_json(self) -> dict[str, str]:
        return {k: str(v) for k, v in self.pieces.items()}


def fit_sequence(ls: Sequence[int], values: Sequence[int]) -> Piecewise:
    """Fit values over consecutive ``ls``; fall back to one fit per parity."""
    try:
        return Piecewise({"all": exact_polynomial_from_samples(values, ls[0])})
    except NotLowDegree:
        pass
    pieces = {}
    for parity, name in ((0, "even"), (1, "odd")):
        idx = [n for n, l in enumerate(ls) if l % 2 == parity]
        pieces[name] = exact_polynomial_from_samples([values[n] for n in idx], ls[idx[0]], 2)
    return Piecewise(pieces)


def fit_bivariate(f: Callable[[int, int], int], lo: int, hi: int) -> sympy.Expr:
    """Closed form of ``f(i, l)`` (for ``1 <= i <= l``), quadratic in each variable.

    Fits ``l`` for each of ``i = 1..4``, then each ``l``-coefficient in ``i``,
    and finally checks the result on every sample.
    """
    per_i = []
    i_values = range(1, 5)
    for i in i_values:
        ls = list(range(max(i, lo), hi + 1))
        per_i.append(exact_polynomial_from_samples([f(i, l) for l in ls], ls[0]))
    expr = sympy.Integer(0)
    for k in range(3):
        ck = [p.coeffs[k] if k < len(p.coeffs) else Fraction(0) for p in per_i]
        expr += exact_polynomial_from_samples(ck, 1).to_sympy(I) * L**k
    for l in range(lo, hi + 1):
        for i in range(1, l + 1):
            if expr.subs({I: i, L: l}) != f(i, l):
                raise NotLowDegree(f"bivariate fit fails at i={i}, l={l}")
    return sympy.expand(expr)


@dataclass
class FamilyRow:
    name: str
    cartan: str
    table: int
    relative_root_system: str
    good_roots: tuple[str, ...]
    psi: dict[str, str]
    multiplicities: str
    d_minus_1: dict[str, str]
    best_d_minus_1: str
    D: str
    proportion: Fraction
    fits: dict = field(default_factory=dict, repr=False, compare=False)

    def to_dict(self) -> dict:
        return {
            "group": self.name,
            "cartan_type": self.cartan,
            "table": self.table,
            "relative_root_system": self.relative_root_system,
            "good_roots": list(self.good_roots),
            "psi": dict(self.psi),
            "multiplicities": self.multiplicities,
            "d_minus_1": dict(self.d_minus_1),
            "best_d_minus_1": self.best_d_minus_1,
            "D": self.D,
            "proportion": rational_to_json(self.proportion),
        }


def _family_row(fam: TableFamily) -> FamilyRow:
    ls = list(range(fam.lo, fam.hi + 1))
    specs = {l: fam.make(l) for l in ls}
    data = {l: restricted_root_datum(g) for l, g in specs.items()}
    rss = {l: build_root_system(d.rs_type) for l, d in data.items()}
    for l, d in data.items():
        if d.rank != l:
            raise ValueError(f"{fam.name}: rank {d.rank} at l={l}")
    letter = _constant([d.rs_type.family.value for d in data.values()], "root system family")
    goods = {l: good_roots(rs).good_roots for l, rs in rss.items()}
    if not all(goods.values()):
        raise NotAdmissible(f"{fam.name} is not admissible")

    fits: dict = {}
    psi_cells: dict[str, str] = {}
    dm1_cells: dict[str, str] = {}
    if all(goods[l] == tuple(range(1, l + 1)) for l in ls):
        labels: tuple[str, ...] = ("alpha_i",)
        psi_expr = fit_bivariate(lambda i, l: len(psi(rss[l], i)), fam.lo, fam.hi)
        dm1_expr = fit_bivariate(lambda i, l: dim_nilradical(data[l], i), fam.lo, fam.hi)
        fits["psi"] = {"alpha_i": psi_expr}
        fits["d_minus_1"] = {"alpha_i": dm1_expr}
        psi_cells["alpha_i"] = pretty(psi_expr)
        dm1_cells["alpha_i"] = pretty(dm1_expr)
    else:
        labels = _root_labels(goods)
        fits["psi"], fits["d_minus_1"] = {}, {}
        for n, label in enumerate(labels):
            psi_fit = fit_sequence(ls, [len(psi(rss[l], goods[l][n])) for l in ls])
            dm1_fit = fit_sequence(ls, [dim_nilradical(data[l], goods[l][n]) for l in ls])
            fits["psi"][label] = psi_fit
            fits["d_minus_1"][label] = dm1_fit
            psi_cells[label] = psi_fit.text()
            dm1_cells[label] = dm1_fit.text()

    reports = {l: strip_report(g) for l, g in specs.items()}
    best = fit_sequence(ls, [r.d_minus_1 for r in reports.values()])
    big_d = fit_sequence(ls, [r.D for r in reports.values()])
    fits["best_d_minus_1"], fits["D"] = best, big_d
    d_poly = best.as_polynomial()
    d_poly = IntPolynomial((d_poly.coeffs[0] + 1,) + d_poly.coeffs[1:])
    return FamilyRow(
        name=fam.name,
        cartan=fam.cartan,
        table=fam.table,
        relative_root_system=f"{letter}_l",
        good_roots=labels,
        psi=psi_cells,
        multiplicities=_constant([_mult_text(g) for g in specs.values()], "multiplicities"),
        d_minus_1=dm1_cells,
        best_d_minus_1=best.text(),
        D=big_d.text(),
        proportion=limit_ratio(d_poly, big_d.as_polynomial()),
        fits=fits,
    )


def _fixed_row(fx: TableFixed) -> FamilyRow:
    g = parse_group(fx.group)
    datum = restricted_root_datum(g)
    rs = build_root_system(datum.rs_type)
    report = strip_report(g)
    goods = good_roots(rs).good_roots
    labels = tuple(f"alpha_{i}" for i in goods)
    return FamilyRow(
        name=fx.name,
        cartan=fx.cartan,
        table=fx.table,
        relative_root_system=str(datum.rs_type),
        good_roots=labels,
        psi={lab: str(len(psi(rs, i))) for lab, i in zip(labels, goods)},
        multiplicities=_mult_text(g),
        d_minus_1={lab: str(dim_nilradical(datum, i)) for lab, i in zip(labels, goods)},
        best_d_minus_1=str(report.d_minus_1),
        D=str(report.D),
        proportion=report.proportion,
    )


@lru_cache(maxsize=None)
def compute_rows() -> tuple[FamilyRow, ...]:
    return tuple(
        _family_row(f) if isinstance(f, TableFamily) else _fixed_row(f) for f in FAMILIES
    )


def asymptotic_proportion(name: str) -> Fraction:
    """Limit of ``d/D`` along a family, or ``(d-2)/D`` for a single group."""
    try:
        fam = family(name)
    except KeyError:
        return strip_report(parse_group(name)).proportion
    for row in compute_rows():
        if row.name == fam.name:
            return row.proportion
    raise KeyError(name)


# --------------------------------------------------------------------------
# fixture comparison


@lru_cache(maxsize=1)
def expected_rows() -> tuple[dict, ...]:
    text = resources.files("lpstrip.data").joinpath("expected_tables.json").read_text()
    return tuple(json.loads(text))


def _same_formula(computed: str | Piecewise | sympy.Expr, expected: str | dict) -> bool:
    if isinstance(computed, Piecewise):
        if isinstance(expected, str):
            expected = {"all": expected}
        if set(computed.pieces) != set(expected):
            # A single polynomial may be written as two equal pieces.
            if "all" in computed.pieces and set(expected) == {"odd", "even"}:
                return all(
                    _same_formula(computed.pieces["all"].to_sympy(), e) for e in expected.values()
                )
            return False
        return all(_same_formula(computed.pieces[k].to_sympy(), expected[k]) for k in expected)
    if isinstance(expected, dict):
        return False
    lhs = sympy.sympify(computed, locals={"l": L, "i": I})
    rhs = sympy.sympify(expected, locals={"l": L, "i": I})
    return sympy.simplify(lhs - rhs) == 0


def check_tables() -> list[str]:
    """Compare every computed cell with the fixture; returns mismatch descriptions."""
    problems = []
    computed = {r.name: r for r in compute_rows()}
    for exp in expected_rows():
        name = exp["group"]
        row = computed.get(name)
        if row is None:
            problems.append(f"{name}: row missing")
            continue

        def bad(col: str, got, want) -> None:
            problems.append(f"{name} [{col}]: computed {got!r}, expected {want!r}")

        for col, got in (
            ("cartan_type", row.cartan),
            ("relative_root_system", row.relative_root_system),
            ("multiplicities", row.multiplicities),
        ):
            if got != exp[col]:
                bad(col, got, exp[col])
        if list(row.good_roots) != exp["good_roots"]:
            bad("good_roots", list(row.good_roots), exp["good_roots"])
        if Fraction(exp["proportion"]) != row.proportion:
            bad("proportion", str(row.proportion), exp["proportion"])

        fits = row.fits
        for col in ("psi", "d_minus_1"):
            want = exp[col]
            if set(want) != set(row.good_roots):
                bad(col, sorted(row.good_roots), sorted(want))
                continue
            for label, formula in want.items():
                got = fits[col][label] if fits else getattr(row, col)[label]
                if not _same_formula(got, formula):
                    bad(f"{col} {label}", getattr(row, col)[label], formula)
        for col, attr in (("best_d_minus_1", "best_d_minus_1"), ("D", "D")):
            got = fits[col] if fits else getattr(row, attr)
            if not _same_formula(got, exp[col]):
                bad(col, getattr(row, attr), exp[col])
    return problems


# --------------------------------------------------------------------------
# rendering

_GREEK = {"alpha_i": "α_i", "alpha_l": "α_l", "alpha_{l-1}": "α_{l-1}"}


def _greek(label: str) -> str:
    return _GREEK.get(label, label.replace("alpha_", "α_"))


def _by_root(cells: dict[str, str]) -> str:
    values = set(cells.values())
    if len(values) == 1:
        return values.pop()
    return "; ".join(f"{v} for γ = {_greek(k)}" for k, v in cells.items())


def _good_root_text(labels: Sequence[str]) -> str:
    if tuple(labels) == ("alpha_i",):
        return "any simple root α_i"
    return ", ".join(_greek(x) for x in labels)


def render_tables(fmt: str = "markdown") -> str:
    rows = compute_rows()
    if fmt == "json":
        return json.dumps([r.to_dict() for r in rows], indent=2, ensure_ascii=False)
    if fmt == "csv":
        buf = io.StringIO()
        keys = [
            "group",
            "cartan_type",
            "relative_root_system",
            "good_roots",
            "psi",
            "multiplicities",
            "d_minus_1",
            "best_d_minus_1",
            "D",
            "proportion",
        ]
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(keys)
        for r in rows:
            w.writerow(
                [
                    r.name,
                    r.cartan,
                    r.relative_root_system,
                    " ".join(r.good_roots),
                    "; ".join(f"{k}: {v}" for k, v in r.psi.items()),
                    r.multiplicities,
                    "; ".join(f"{k}: {v}" for k, v in r.d_minus_1.items()),
                    r.best_d_minus_1,
                    r.D,
                    f"{r.proportion.numerator}/{r.proportion.denominator}",
                ]
            )
        return buf.getvalue()
    if fmt != "markdown":
        raise ValueError(f"unknown format {fmt!r}")
    header = (
        "| Admissible group | Cartan type | Relative root system | Good root γ | |Ψ| "
        "| Multiplicities | d-1 = dim N_γ | D = dim X | Asymptotic vanishing proportion |"
    )
    sep = "|" + "---|" * 9
    out = []
    for table, title in ((1, "Real forms"), (2, "Complex groups")):
        out += [f"### {title}", "", header, sep]
        for r in rows:
            if r.table != table:
                continue
            dm1 = _by_root(r.d_minus_1)
            if dm1 != r.best_d_minus_1:
                dm1 = f"{dm1}; best choice: {r.best_d_minus_1}"
            cells = [
                r.name,
                r.cartan,
                r.relative_root_system,
                _good_root_text(r.good_roots),
                _by_root(r.psi),
                r.multiplicities,
                dm1,
                r.D,
                str(r.proportion),
            ]
            out.append("| " + " | ".join(c.replace("|", "\\|") for c in cells) + " |")
        out.append("")
    return "\n".join(out)
