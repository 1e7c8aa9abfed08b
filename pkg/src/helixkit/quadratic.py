"""Quadratic algebras over a field, indexed with a repeating dimension cycle.

A presentation fixes generator dimensions g_0..g_{p-1} (indices read modulo
p) and, per index, a matrix of relation rows inside the g_i * g_{i+1} tensor
square. Everything downstream is exact linear algebra on those rows: the
dual presentation annihilates them, degree dimensions subtract the rank of
their spreads, and the witness report folds both dimension tables into an
alternating sum that must hit a delta. A parallel series model covers the
equigenerated family where only dimensions, not relation spaces, are pinned
down by the defining data d.

The dual basis pairing used throughout is the coordinatewise one on tensor
squares: <f (x) g, u (x) w> = f(u) g(w), with factor order preserved.
double_dual_check exercises the self-consistency of that choice.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import comb, prod
from typing import NamedTuple

from .bundles import ChernVector, euler_pairing
from .errors import DimensionCapExceeded, UnsupportedD
from .exact import (
    RationalMatrix,
    TruncatedSeries,
    _sparse_rank,
    annihilator,
    first_series_mismatch,
    row_space_equal,
    series_mul,
)
from .helix import Seed, invariants_from_seed

_DEFAULT_CAP = 10**6


def _dim_cap() -> int:
    raw = os.environ.get("HELIXKIT_DIM_CAP")
    return int(raw) if raw is not None else _DEFAULT_CAP


@dataclass(frozen=True)
class QuadraticPresentation:
    """period, generator dims per index, and relation rows per index.

    relations[i] lives in the g_i * g_{i+1} tensor square with basis order
    (u_a, w_b) -> a * g_{i+1} + b; its rows must be linearly independent.
    """

    period: int
    gen_dims: tuple[int, ...]
    relations: tuple[RationalMatrix, ...]

    def __init__(self, period, gen_dims, relations):
        gen_dims = tuple(gen_dims)
        relations = tuple(relations)
        if not isinstance(period, int) or period < 1:
            raise ValueError("period must be a positive integer")
        if len(gen_dims) != period or len(relations) != period:
            raise ValueError("need one generator dim and one relation matrix per index")
        for g in gen_dims:
            if not isinstance(g, int) or g < 1:
                raise ValueError("generator dims must be positive integers")
        for i, rel in enumerate(relations):
            ambient = gen_dims[i] * gen_dims[(i + 1) % period]
            if rel.cols != ambient:
                raise ValueError(
                    f"relations at index {i} need {ambient} columns, got {rel.cols}"
                )
            if rel.rank() != rel.rows:
                raise ValueError(f"relation rows at index {i} are dependent")
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "gen_dims", gen_dims)
        object.__setattr__(self, "relations", relations)

    def to_json_dict(self) -> dict:
        return {
            "period": self.period,
            "gen_dims": list(self.gen_dims),
            "relations": [
                {
                    "index": i,
                    "rows": [
                        [str(v) for v in rel.row(k)] for k in range(rel.rows)
                    ],
                }
                for i, rel in enumerate(self.relations)
            ],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "QuadraticPresentation":
        period = doc["period"]
        gen_dims = tuple(doc["gen_dims"])
        if not isinstance(period, int) or period < 1:
            raise ValueError("period must be a positive integer")
        if len(gen_dims) != period:
            raise ValueError("gen_dims length must equal the period")
        by_index: dict[int, list[list[Fraction]]] = {}
        for item in doc.get("relations", []):
            i = item["index"]
            if not isinstance(i, int) or not 0 <= i < period:
                raise ValueError(f"relation index {i} out of range")
            if i in by_index:
                raise ValueError(f"duplicate relation block for index {i}")
            by_index[i] = [[Fraction(s) for s in row] for row in item["rows"]]
        rels = []
        for i in range(period):
            ambient = gen_dims[i] * gen_dims[(i + 1) % period]
            rows = by_index.get(i, [])
            rels.append(RationalMatrix.from_rows(rows, cols=ambient))
        return cls(period, gen_dims, tuple(rels))


def koszul_dual(p: QuadraticPresentation) -> QuadraticPresentation:
    """Same generator dims; relations replaced by their annihilators."""
    duals = tuple(
        annihilator(rel, rel.cols) for rel in p.relations
    )
    return QuadraticPresentation(p.period, p.gen_dims, duals)


def double_dual_check(p: QuadraticPresentation) -> bool:
    """Row-space equality of relations with their double annihilator."""
    dd = koszul_dual(koszul_dual(p))
    return all(
        row_space_equal(a, b) for a, b in zip(p.relations, dd.relations)
    )


@dataclass(frozen=True)
class DimTable:
    """dim of each (start index, word length) cell, index read modulo period."""

    period: int
    max_degree: int
    dims: tuple[tuple[int, ...], ...]

    def dim(self, i: int, n: int) -> int:
        if not 0 <= n <= self.max_degree:
            raise ValueError(f"degree {n} outside computed range 0..{self.max_degree}")
        return self.dims[i % self.period][n]

    def to_csv(self) -> str:
        lines = ["index,degree,dim"]
        for i in range(self.period):
            for n in range(self.max_degree + 1):
                lines.append(f"{i},{n},{self.dims[i][n]}")
        return "\n".join(lines) + "\n"


def _spread_rows(p: QuadraticPresentation, i: int, n: int):
    """Sparse rows spanning every T^a (x) R (x) T^b inside the length-n word."""
    word = [p.gen_dims[(i + k) % p.period] for k in range(n)]
    for a in range(n - 1):
        rel = p.relations[(i + a) % p.period]
        if rel.rows == 0:
            continue
        pre = prod(word[:a])
        suf = prod(word[a + 2 :])
        block = word[a] * word[a + 1] * suf
        for k in range(rel.rows):
            support = [(c, v) for c, v in enumerate(rel.row(k)) if v != 0]
            for u in range(pre):
                base = u * block
                for w in range(suf):
                    yield {base + c * suf + w: v for c, v in support}


def degree_dims(p: QuadraticPresentation, max_degree: int) -> DimTable:
    """Exact dimension of every quotient component up to the given length.

    Each cell is the full tensor dimension minus the rank of the stacked
    relation spreads. Ambient tensor dimensions above the HELIXKIT_DIM_CAP
    environment value (default 10**6) are refused rather than attempted.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    cap = _dim_cap()
    table = []
    for i in range(p.period):
        row = []
        for n in range(max_degree + 1):
            ambient = prod(p.gen_dims[(i + k) % p.period] for k in range(n))
            if ambient > cap:
                raise DimensionCapExceeded(
                    f"tensor dimension {ambient} at index {i}, degree {n} "
                    f"exceeds cap {cap}"
                )
            if n < 2:
                row.append(ambient)
                continue
            row.append(ambient - _sparse_rank(_spread_rows(p, i, n)))
        table.append(tuple(row))
    return DimTable(p.period, max_degree, tuple(table))


class WitnessEntry(NamedTuple):
    j: int
    q: int
    value: int
    ok: bool


@dataclass(frozen=True)
class WitnessReport:
    """Alternating-sum checks, one entry per (offset, target) pair.

    An all-pass run is labeled a witness: the condition tested is necessary,
    not sufficient, so nothing here certifies exactness.
    """

    entries: tuple[WitnessEntry, ...]

    @property
    def passed(self) -> bool:
        return all(e.ok for e in self.entries)

    @property
    def label(self) -> str:
        return "witness" if self.passed else "failed"

    def failures(self) -> list[tuple[int, int]]:
        return [(e.j, e.q) for e in self.entries if not e.ok]


def _witness_presentation(p: QuadraticPresentation, bound: int) -> WitnessReport:
    dual = koszul_dual(p)
    prim = degree_dims(p, bound)
    dual_dims = degree_dims(dual, bound)
    entries = []
    for j in range(p.period):
        for n in range(bound + 1):
            s = sum(
                (-1) ** l * dual_dims.dim(j, l) * prim.dim(j + l, n - l)
                for l in range(n + 1)
            )
            entries.append(WitnessEntry(j, j + n, s, s == (1 if n == 0 else 0)))
    return WitnessReport(tuple(entries))


def _witness_model(model: "EquigenModel", bound: int) -> WitnessReport:
    a = hilbert_A(model, max(3, bound)).coeffs
    profile = (1, model.d, model.d, 1)
    entries = []
    for j in range(3):
        for n in range(bound + 1):
            s = sum(
                (-1) ** l * profile[l] * a[n - l]
                for l in range(min(n, 3) + 1)
            )
            entries.append(WitnessEntry(j, j + n, int(s), s == (1 if n == 0 else 0)))
    return WitnessReport(tuple(entries))


def koszulity_witness(p, bound: int) -> WitnessReport:
    """Necessary Euler-characteristic condition over all (j, q), q - j <= bound."""
    if isinstance(p, EquigenModel):
        return _witness_model(p, bound)
    return _witness_presentation(p, bound)


@dataclass(frozen=True)
class EquigenModel:
    """Dimension skeleton of the degree-d equigenerated pair of algebras."""

    d: int

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 3:
            raise UnsupportedD(f"model needs an integer d >= 3, got {self.d}")


def hilbert_A(model: EquigenModel, order: int) -> TruncatedSeries:
    """Coefficients of 1 / (1 - d t + d t^2 - t^3) to the given order."""
    if order < 3:
        raise ValueError("order must be at least 3")
    d = model.d
    return TruncatedSeries([1, -d, d, -1]).with_order(order).inverse()


def hilbert_B(model: EquigenModel, order: int) -> TruncatedSeries:
    """(1 - t^3) times the A series: same denominator, cubic numerator."""
    if order < 3:
        raise ValueError("order must be at least 3")
    cubic = TruncatedSeries([1, 0, 0, -1]).with_order(order)
    return series_mul(cubic, hilbert_A(model, order))


def cross_check_hilbert(model: EquigenModel, order: int) -> tuple[bool, int | None]:
    """Compare B-series coefficients against pairings from the seed table.

    The two routes share no code: one inverts a power series, the other runs
    the integer recursion and evaluates a 2x2 determinant per row.
    """
    d = model.d
    if d != 3 and (d < 5 or d % 2 == 0):
        raise UnsupportedD(f"cross check covers d = 3 and odd d >= 5, got {d}")
    if order < 3:
        raise ValueError("order must be at least 3")
    b = hilbert_B(model, order).coeffs
    if b[0] != 1:
        return False, 0
    table = invariants_from_seed(Seed(0, Fraction(d, 2), d), order)
    origin = ChernVector(1, 0)
    for i in range(1, order + 1):
        row = table.rows[i]
        if b[i] != euler_pairing(origin, ChernVector(row.r, row.d)):
            return False, i
    return True, None


def normal_quotient_check(model: EquigenModel, order: int) -> bool:
    """Does dividing the B series by 1 - t^3 reproduce the A series exactly.

    This is the series-level signature of a degree-3 regular normal family
    cutting B out of A.
    """
    if order < 6:
        raise ValueError("order must be at least 6")
    inv_cubic = TruncatedSeries([1, 0, 0, -1]).with_order(order).inverse()
    lhs = series_mul(hilbert_B(model, order), inv_cubic)
    return first_series_mismatch(lhs, hilbert_A(model, order)) is None


def frobenius_profile(model: EquigenModel) -> tuple[int, int, int, int]:
    """Dual dimension vector (1, d, d, 1); zero beyond degree three.

    Internally revalidates that the vector, read as an alternating
    denominator, actually annihilates the A series.
    """
    d = model.d
    poly = TruncatedSeries([1, -d, d, -1]).with_order(8)
    if poly * hilbert_A(model, 8) != TruncatedSeries([1]).with_order(8):
        raise ArithmeticError("resolution ranks disagree with the A series")
    return (1, d, d, 1)


def equigenerated_detect(pairings) -> int | None:
    """d when three consecutive pairing dims agree, else None."""
    vals = tuple(pairings)
    if len(vals) != 3:
        raise ValueError("need exactly three consecutive pairing dimensions")
    for v in vals:
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise ValueError("pairing dimensions must be positive integers")
    return vals[0] if vals[0] == vals[1] == vals[2] else None


def classical_euler_fixture(n: int):
    """Commutator presentation on n+1 variables plus its expected dual dims."""
    if not 1 <= n <= 4:
        raise ValueError("fixture covers 1 <= n <= 4")
    m = n + 1
    rows = []
    for a in range(m):
        for b in range(a + 1, m):
            row = [Fraction(0)] * (m * m)
            row[a * m + b] = Fraction(1)
            row[b * m + a] = Fraction(-1)
            rows.append(row)
    pres = QuadraticPresentation(
        1, (m,), (RationalMatrix.from_rows(rows, cols=m * m),)
    )
    expected = tuple(comb(m, l) for l in range(m + 1)) + (0,)
    return pres, expected
