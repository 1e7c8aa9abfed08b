"""Seed-driven generation and certification of mutation-invariant tables.

A seed is a strictly increasing triple of rational slopes. Its reduced
fractions populate rows 0 and 1 of an integer table which then grows by two
determinant recursions; everything else here (positivity verdicts, minor
periodicity, closed forms over Q(sqrt m), limit slopes, two-sided extension)
is a view of that table or an independent route to the same numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import NamedTuple

from .bundles import ChernVector, Triad, dualize, dualize_triad, mutate_triad_right
from .errors import (
    InvalidSeed,
    NotEquigeneratedSeed,
    TableTooShort,
    UnsupportedD,
)
from .exact import SurdValue, surd_to_decimal


@dataclass(frozen=True)
class Seed:
    """Strictly increasing rational slope triple (mu0, mu1p, mu1)."""

    mu0: Fraction
    mu1p: Fraction
    mu1: Fraction

    def __init__(self, mu0, mu1p, mu1):
        mu0, mu1p, mu1 = Fraction(mu0), Fraction(mu1p), Fraction(mu1)
        if not mu0 < mu1p < mu1:
            raise InvalidSeed(f"slopes must increase strictly: {mu0}, {mu1p}, {mu1}")
        object.__setattr__(self, "mu0", mu0)
        object.__setattr__(self, "mu1p", mu1p)
        object.__setattr__(self, "mu1", mu1)

    @property
    def d_param(self) -> int | None:
        """d when the seed is (0, d/2, d) with d an odd integer >= 3."""
        if (
            self.mu0 == 0
            and self.mu1.denominator == 1
            and self.mu1 >= 3
            and self.mu1.numerator % 2 == 1
            and self.mu1p == Fraction(self.mu1, 2)
        ):
            return int(self.mu1)
        return None

    def pairs(self):
        """((d0,r0), (d1p,r1p), (d1,r1)) from the reduced fractions."""
        return (
            (self.mu0.numerator, self.mu0.denominator),
            (self.mu1p.numerator, self.mu1p.denominator),
            (self.mu1.numerator, self.mu1.denominator),
        )


class Row(NamedTuple):
    n: int
    d: int
    r: int
    dp: int | None
    rp: int | None


@dataclass(frozen=True)
class HelixTable:
    seed: Seed
    d_param: int | None
    rows: tuple[Row, ...]
    degenerate_at: int | None

    def row(self, n: int) -> Row:
        return self.rows[n]

    def seed_triad(self) -> Triad:
        (d0, r0), (d1p, r1p), (d1, r1) = self.seed.pairs()
        return Triad(ChernVector(r0, d0), ChernVector(r1p, d1p), ChernVector(r1, d1))

    def to_json_dict(self) -> dict:
        doc: dict = {
            "seed": {
                "mu0": str(self.seed.mu0),
                "mu1p": str(self.seed.mu1p),
                "mu1": str(self.seed.mu1),
            }
        }
        if self.d_param is not None:
            doc["d"] = self.d_param
        rows = []
        for r in self.rows:
            item: dict = {"n": r.n, "d": r.d, "r": r.r}
            if r.dp is not None:
                item["dp"] = r.dp
                item["rp"] = r.rp
            rows.append(item)
        doc["rows"] = rows
        if self.degenerate_at is not None:
            doc["degenerate_at"] = self.degenerate_at
        return doc

    def to_csv(self) -> str:
        lines = ["n,d,r,dp,rp,slope"]
        for r in self.rows:
            dp = "" if r.dp is None else str(r.dp)
            rp = "" if r.rp is None else str(r.rp)
            mu = str(Fraction(r.d, r.r)) if r.r != 0 else ""
            lines.append(f"{r.n},{r.d},{r.r},{dp},{rp},{mu}")
        return "\n".join(lines) + "\n"


def invariants_from_seed(seed: Seed, n_max: int) -> HelixTable:
    """Grow the integer table to row n_max (or to the first rank <= 0).

    Row i gains its primed pair from the unprimed rows i-1, i-2 and its
    unprimed pair from row i-1 together with row i-1's primed pair. A
    nonpositive rank component stops growth; the offending row is kept and
    flagged in degenerate_at.
    """
    if n_max < 1:
        raise ValueError("need at least rows 0 and 1")
    (d0, r0), (d1p, r1p), (d1, r1) = seed.pairs()
    rows = [Row(0, d0, r0, None, None), Row(1, d1, r1, d1p, r1p)]
    degenerate_at = None
    for i in range(2, n_max + 1):
        prev, prev2 = rows[i - 1], rows[i - 2]
        minor = prev.d * prev2.r - prev2.d * prev.r
        dp, rp = minor * prev.d - prev2.d, minor * prev.r - prev2.r
        mixed = prev.d * prev.rp - prev.dp * prev.r
        d, r = mixed * prev.d - prev.dp, mixed * prev.r - prev.rp
        rows.append(Row(i, d, r, dp, rp))
        if r <= 0 or rp <= 0:
            degenerate_at = i
            break
    return HelixTable(seed, seed.d_param, tuple(rows), degenerate_at)


@dataclass(frozen=True)
class PositivityReport:
    """kind is Certified, VerifiedToHorizon or FailsAt."""

    kind: str
    horizon: int
    fail_index: int | None = None
    fail_component: str | None = None

    def __str__(self):
        if self.kind == "Certified":
            return "Certified"
        if self.kind == "VerifiedToHorizon":
            return f"VerifiedToHorizon({self.horizon})"
        return f"FailsAt({self.fail_index}, {self.fail_component})"


def check_positivity(seed: Seed, n_max: int) -> PositivityReport:
    """Three-valued positivity verdict for the rank components.

    Certified is reserved for the (0, d/2, d) family with odd d >= 5, where
    positivity holds for every n; any other seed gets a horizon-bounded
    answer or the first failure.
    """
    d = seed.d_param
    if d is not None and d >= 5:
        return PositivityReport("Certified", n_max)
    table = invariants_from_seed(seed, n_max)
    if table.degenerate_at is not None:
        bad = table.rows[-1]
        component = "r" if bad.r <= 0 else "rp"
        return PositivityReport("FailsAt", n_max, bad.n, component)
    return PositivityReport("VerifiedToHorizon", n_max)


def _minor(x: Row, y: Row) -> int:
    return x.d * y.r - y.d * x.r


def _mixed_minor(x: Row) -> int:
    return x.d * x.rp - x.dp * x.r


def verify_periodicity(table: HelixTable) -> tuple[bool, str | None]:
    """Check the three determinant identity families over the whole table.

    Consecutive-pair minors match the mixed minor one step earlier (from
    n = 1), mixed minors reach two steps back (from n = 2), and both minor
    kinds repeat with period three (from n = 3).
    """
    rows = table.rows
    if len(rows) < 5:
        raise TableTooShort("periodicity checks need at least rows 0..4")
    top = len(rows) - 1
    for n in range(1, top):
        if _minor(rows[n + 1], rows[n]) != _mixed_minor(rows[n]):
            return False, f"consecutive-vs-mixed minor identity fails at n={n}"
    for n in range(2, top):
        if _mixed_minor(rows[n + 1]) != _minor(rows[n - 1], rows[n - 2]):
            return False, f"mixed-minor recursion identity fails at n={n}"
    for n in range(3, top):
        if _minor(rows[n + 1], rows[n]) != _minor(rows[n - 2], rows[n - 3]):
            return False, f"period-3 identity (consecutive minors) fails at n={n}"
        if _mixed_minor(rows[n + 1]) != _mixed_minor(rows[n - 2]):
            return False, f"period-3 identity (mixed minors) fails at n={n}"
    return True, None


def _require_odd_ge5(d: int) -> int:
    if not isinstance(d, int) or d < 5 or d % 2 == 0:
        raise UnsupportedD(f"d must be an odd integer >= 5, got {d}")
    return (d - 3) * (d + 1)


def closed_form(d: int, n: int) -> tuple[int, int]:
    """(r_n, d_n) evaluated exactly in Q(sqrt m), m = (d-3)(d+1).

    The two conjugate growth factors are d-1 -+ sqrt m; the result must come
    out a rational integer (hard failure otherwise).
    """
    m = _require_odd_ge5(d)
    if n < 0:
        raise ValueError("n must be nonnegative")
    x = SurdValue(d - 1, -1, m)
    y = SurdValue(d - 1, 1, m)
    w = SurdValue(0, Fraction(d - 3, m), m)  # (d-3)/sqrt(m)
    r = (x**n * (w + 1) + y**n * (1 - w)) / Fraction(2 ** (n + 1))
    deg = (y**n - x**n) * SurdValue(0, Fraction(d, m), m) / Fraction(2**n)
    for v in (r, deg):
        if not v.is_rational or v.a.denominator != 1:
            raise ArithmeticError(f"closed form did not collapse to an integer: {v}")
    return int(r.a), int(deg.a)


@dataclass(frozen=True)
class LimitReport:
    right_limit: SurdValue
    left_limit: SurdValue
    irrational: bool
    decimal_right: str
    decimal_left: str


def limit_slopes(d: int) -> LimitReport:
    """Exact limiting slopes of the table in both directions.

    right = 2d / (sqrt m - (d-3)) computed by actual surd division;
    left = d - right. Both irrational exactly when m is not a perfect square.
    """
    m = _require_odd_ge5(d)
    right = SurdValue(2 * d, 0, m) / SurdValue(-(d - 3), 1, m)
    left = SurdValue(d, 0, m) - right
    s = isqrt(m)
    return LimitReport(
        right_limit=right,
        left_limit=left,
        irrational=s * s != m,
        decimal_right=surd_to_decimal(right, 7),
        decimal_left=surd_to_decimal(left, 7),
    )


def verify_ratio_bound(table: HelixTable) -> bool:
    """2 r_{n+1} >= (d-1) r_n for all n >= 1 in the table (exact integers)."""
    d = table.d_param
    if d is None or d < 5:
        raise NotEquigeneratedSeed("ratio bound applies to (0, d/2, d) seeds, d >= 5")
    rows = table.rows
    for n in range(1, len(rows) - 1):
        if 2 * rows[n + 1].r < (d - 1) * rows[n].r:
            return False
    return True


@dataclass(frozen=True)
class TwoSidedTable:
    """Chern data indexed over the symmetric window [-n_max, n_max]."""

    n_max: int
    entries: dict[int, ChernVector]

    def __post_init__(self):
        ns = sorted(self.entries)
        slopes = [Fraction(self.entries[n].degree, self.entries[n].rank) for n in ns]
        for a, b in zip(slopes, slopes[1:]):
            if not a < b:
                raise ValueError("two-sided slopes must increase strictly")

    def entry(self, n: int) -> ChernVector:
        return self.entries[n]

    def slope(self, n: int) -> Fraction:
        v = self.entries[n]
        return Fraction(v.degree, v.rank)

    def to_json_dict(self) -> dict:
        return {
            "window": [-self.n_max, self.n_max],
            "entries": [
                {"n": n, "chern": [self.entries[n].rank, self.entries[n].degree]}
                for n in sorted(self.entries)
            ],
        }


def extend_two_sided(d: int, n_max: int) -> TwoSidedTable:
    """Entries 0..n_max from the table; entries -1..-n_max through the dual.

    The dualized seed triad is mutated rightward; after i steps the dual of
    its last member is the entry at -i.
    """
    _require_odd_ge5(d)
    if n_max < 1:
        raise ValueError("window must include indices -1, 0, 1")
    table = invariants_from_seed(Seed(0, Fraction(d, 2), d), n_max)
    entries = {row.n: ChernVector(row.r, row.d) for row in table.rows}
    tri = dualize_triad(table.seed_triad())
    for i in range(1, n_max + 1):
        tri = mutate_triad_right(tri)
        entries[-i] = dualize(tri.c)
    return TwoSidedTable(n_max, entries)
