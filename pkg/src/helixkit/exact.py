"""Exact arithmetic foundation: rationals, quadratic surds, truncated power
series, and dense/sparse linear algebra over the rationals.

Everything here is pure and immutable. No operation constructs a float; the
only decimal output is the string produced by :func:`surd_to_decimal`, and
that is computed with integer square roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import isqrt
from typing import Iterable, Sequence

from .errors import ColumnMismatch, RadicandMismatch, ZeroConstantTerm

#: Arbitrary-precision rational type used throughout the package. Always
#: stored reduced with a positive denominator; comparison is a total order.
BigRational = Fraction

_ORDER_CAP = 512


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floating-point input is not accepted")
    return Fraction(x)


# --------------------------------------------------------------------------
# truncated power series
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncatedSeries:
    """A power series known exactly modulo t^(order+1).

    coeffs holds c_0 .. c_N; the order is len(coeffs) - 1 and is capped at
    512 (far above anything the verification suites require).
    """

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable):
        cs = tuple(_frac(c) for c in coeffs)
        if not cs:
            raise ValueError("a series needs at least its constant coefficient")
        if len(cs) - 1 > _ORDER_CAP:
            raise ValueError(f"series order {len(cs) - 1} exceeds the cap {_ORDER_CAP}")
        object.__setattr__(self, "coeffs", cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def with_order(self, order: int) -> "TruncatedSeries":
        """Pad with zeros or truncate so that the order becomes `order`."""
        if order < 0:
            raise ValueError("order must be nonnegative")
        if order > _ORDER_CAP:
            raise ValueError(f"series order {order} exceeds the cap {_ORDER_CAP}")
        cs = self.coeffs[: order + 1]
        return TruncatedSeries(cs + (Fraction(0),) * (order + 1 - len(cs)))

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = max(self.order, other.order)
        a, b = self.with_order(n).coeffs, other.with_order(n).coeffs
        return TruncatedSeries(x + y for x, y in zip(a, b))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = max(self.order, other.order)
        a, b = self.with_order(n).coeffs, other.with_order(n).coeffs
        return TruncatedSeries(x - y for x, y in zip(a, b))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = max(self.order, other.order)
        a, b = self.with_order(n).coeffs, other.with_order(n).coeffs
        out = [Fraction(0)] * (n + 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j in range(n + 1 - i):
                if b[j]:
                    out[i + j] += ai * b[j]
        return TruncatedSeries(out)

    def inverse(self) -> "TruncatedSeries":
        c = self.coeffs
        if c[0] == 0:
            raise ZeroConstantTerm("cannot invert a series with zero constant term")
        inv0 = 1 / c[0]
        out = [inv0]
        for n in range(1, self.order + 1):
            acc = Fraction(0)
            for k in range(1, n + 1):
                if k < len(c) and c[k]:
                    acc += c[k] * out[n - k]
            out.append(-inv0 * acc)
        return TruncatedSeries(out)


def series_inverse(s: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse modulo t^(order+1); requires c_0 != 0."""
    return s.inverse()


def series_mul(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the longer operand's order."""
    return s * t


def first_series_mismatch(s: TruncatedSeries, t: TruncatedSeries) -> int | None:
    """Index of the first differing coefficient, or None if equal throughout."""
    n = max(s.order, t.order)
    a, b = s.with_order(n).coeffs, t.with_order(n).coeffs
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return i
    return None


# --------------------------------------------------------------------------
# quadratic surds
# --------------------------------------------------------------------------


@total_ordering
@dataclass(frozen=True)
class SurdValue:
    """The exact real number a + b*sqrt(m) with a, b rational and m >= 0.

    A perfect-square radicand is collapsed into the rational part at
    construction, so is_rational is simply b == 0. The radicand is kept as
    given otherwise (no squarefree reduction); values are expected to share
    one m per computation context, and arithmetic between two irrational
    values over different radicands raises RadicandMismatch. Rational
    operands (b == 0, or plain int/Fraction) adopt the other side's m.
    """

    a: Fraction
    b: Fraction = Fraction(0)
    m: int = 0

    def __init__(self, a, b=0, m: int = 0):
        a, b = _frac(a), _frac(b)
        if not isinstance(m, int) or m < 0:
            raise ValueError("radicand must be a nonnegative integer")
        if b != 0:
            s = isqrt(m)
            if s * s == m:
                a, b = a + b * s, Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "m", m)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 m exactly
        lhs, rhs = a * a, b * b * self.m
        if a > 0:
            return (lhs > rhs) - (lhs < rhs)
        return (rhs > lhs) - (rhs < lhs)

    def _with(self, other) -> tuple["SurdValue", "SurdValue"]:
        if isinstance(other, (int, Fraction)):
            other = SurdValue(other, 0, self.m)
        elif not isinstance(other, SurdValue):
            return NotImplemented, NotImplemented
        if other.b == 0:
            return self, SurdValue(other.a, 0, self.m)
        if self.b == 0:
            return SurdValue(self.a, 0, other.m), other
        if self.m != other.m:
            raise RadicandMismatch(f"radicands differ: {self.m} vs {other.m}")
        return self, other

    def __add__(self, other):
        s, o = self._with(other)
        if s is NotImplemented:
            return NotImplemented
        return SurdValue(s.a + o.a, s.b + o.b, s.m)

    __radd__ = __add__

    def __neg__(self):
        return SurdValue(-self.a, -self.b, self.m)

    def __sub__(self, other):
        s, o = self._with(other)
        if s is NotImplemented:
            return NotImplemented
        return SurdValue(s.a - o.a, s.b - o.b, s.m)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        s, o = self._with(other)
        if s is NotImplemented:
            return NotImplemented
        return SurdValue(s.a * o.a + s.b * o.b * s.m, s.a * o.b + s.b * o.a, s.m)

    __rmul__ = __mul__

    def __truediv__(self, other):
        s, o = self._with(other)
        if s is NotImplemented:
            return NotImplemented
        if o.a == 0 and o.b == 0:
            raise ZeroDivisionError("surd division by zero")
        den = o.a * o.a - o.b * o.b * o.m
        num = s * SurdValue(o.a, -o.b, s.m)
        return SurdValue(num.a / den, num.b / den, s.m)

    def __rtruediv__(self, other):
        return SurdValue(other, 0, self.m).__truediv__(self)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are supported")
        out = SurdValue(1, 0, self.m)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, SurdValue):
            return NotImplemented
        if self.b == 0 and other.b == 0:
            return self.a == other.a
        return self.m == other.m and self.a == other.a and self.b == other.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.m))

    def __lt__(self, other):
        s, o = self._with(other)
        if s is NotImplemented:
            return NotImplemented
        return (s - o)._sign() < 0

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        root = f"√{self.m}"
        bs = "" if abs(self.b) == 1 else str(abs(self.b))
        tail = f"{bs}{root}"
        if self.a == 0:
            return tail if self.b > 0 else f"-{tail}"
        op = "+" if self.b > 0 else "-"
        return f"{self.a} {op} {tail}"


def surd_arith(x: SurdValue, y: SurdValue, op: str):
    """Field arithmetic and exact comparison dispatch for surds.

    op is one of add, sub, mul, div, compare; compare returns -1, 0 or 1.
    """
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "compare":
        return (x - y)._sign()
    raise ValueError(f"unknown operation {op!r}")


def _floor_surd(v: SurdValue) -> int:
    """Exact floor. Uses an isqrt estimate, then corrects by exact comparison."""
    if v.b == 0:
        return v.a.numerator // v.a.denominator
    p, q = v.b.numerator, v.b.denominator
    if p >= 0:
        approx = Fraction(isqrt(p * p * v.m), q)
    else:
        approx = -Fraction(isqrt(p * p * v.m) + 1, q)
    k = (v.a + approx).__floor__()
    while v >= k + 1:
        k += 1
    while v < k:
        k -= 1
    return k


def surd_to_decimal(x: SurdValue, digits: int) -> str:
    """Correctly rounded decimal string with `digits` fractional digits.

    Display only; the value never passes through floating point. Exact ties
    (possible only for rational inputs) round away from zero.
    """
    if not isinstance(digits, int) or not 1 <= digits <= 50:
        raise ValueError("digits must be an integer between 1 and 50")
    v = x * 10**digits
    neg = v < 0
    if neg:
        v = -v
    k = _floor_surd(v + Fraction(1, 2))
    s = str(k).rjust(digits + 1, "0")
    return ("-" if neg else "") + s[:-digits] + "." + s[-digits:]


# --------------------------------------------------------------------------
# exact linear algebra
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalMatrix:
    """Immutable row-major matrix over the rationals."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __init__(self, rows: int, cols: int, entries: Iterable):
        es = tuple(_frac(e) for e in entries)
        if rows < 0 or cols < 0 or len(es) != rows * cols:
            raise ValueError("entry count must equal rows*cols")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", es)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None):
        rows = [list(r) for r in rows]
        if rows:
            cols = len(rows[0])
            if any(len(r) != cols for r in rows):
                raise ValueError("ragged rows")
        elif cols is None:
            raise ValueError("empty matrix needs an explicit column count")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, [Fraction(int(i == j)) for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls(rows, cols, [Fraction(0)] * (rows * cols))

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row_lists(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def stack(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.cols:
            raise ColumnMismatch("cannot stack matrices with different widths")
        return RationalMatrix(
            self.rows + other.rows, self.cols, self.entries + other.entries
        )

    def rref(self) -> tuple["RationalMatrix", list[int]]:
        """Reduced row echelon form and the pivot column list.

        Pivot selection takes, within each column, the candidate entry with
        the largest absolute numerator (first row on ties) for determinism.
        """
        work = self.row_lists()
        pivots: list[int] = []
        rank = 0
        for c in range(self.cols):
            best = None
            for r in range(rank, self.rows):
                e = work[r][c]
                if e != 0 and (best is None or abs(e.numerator) > best[0]):
                    best = (abs(e.numerator), r)
            if best is None:
                continue
            r = best[1]
            work[rank], work[r] = work[r], work[rank]
            pv = work[rank][c]
            work[rank] = [x / pv for x in work[rank]]
            for rr in range(self.rows):
                if rr != rank and work[rr][c] != 0:
                    f = work[rr][c]
                    work[rr] = [x - f * y for x, y in zip(work[rr], work[rank])]
            pivots.append(c)
            rank += 1
            if rank == self.rows:
                break
        flat = [e for r in work for e in r]
        return RationalMatrix(self.rows, self.cols, flat), pivots

    def rank(self) -> int:
        return len(self.rref()[1])


def matrix_kernel(m: RationalMatrix) -> RationalMatrix:
    """Basis rows of the right null space {v : m v^T = 0}.

    Returns cols - rank(m) independent rows (possibly none).
    """
    red, pivots = m.rref()
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for k, pc in enumerate(pivots):
            v[pc] = -red.entry(k, f)
        basis.append(v)
    return RationalMatrix.from_rows(basis, cols=m.cols)


def annihilator(m: RationalMatrix, ambient_dim: int) -> RationalMatrix:
    """Basis of the functionals vanishing on the row space of m.

    Functionals are written as row vectors in the dual basis, so this is the
    kernel of the pairing matrix m itself.
    """
    if m.cols != ambient_dim:
        raise ColumnMismatch(f"matrix has {m.cols} columns, ambient dim is {ambient_dim}")
    return matrix_kernel(m)


def _sparse_rank(rows: Iterable[dict[int, Fraction]]) -> int:
    """Rank of a set of sparse rows via forward elimination.

    Pivot on each row's least column; rows with tiny support (the tensor
    spreads) stay tiny throughout, which keeps this near linear.
    """
    pivots: dict[int, dict[int, Fraction]] = {}
    rank = 0
    for raw in rows:
        row = {c: v for c, v in raw.items() if v != 0}
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                inv = 1 / row[c]
                pivots[c] = {k: v * inv for k, v in row.items()}
                rank += 1
                break
            f = row.pop(c)
            for k, v in piv.items():
                if k == c:
                    continue
                nv = row.get(k, Fraction(0)) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return rank


def _dense_to_sparse(m: RationalMatrix) -> Iterable[dict[int, Fraction]]:
    for i in range(m.rows):
        r = m.row(i)
        yield {j: e for j, e in enumerate(r) if e != 0}


def subspace_sum_dim(bases: Sequence[RationalMatrix], ambient_dim: int) -> int:
    """Dimension of the sum of the row spaces, i.e. rank of the vertical stack."""
    for b in bases:
        if b.cols != ambient_dim:
            raise ColumnMismatch(
                f"basis has {b.cols} columns, ambient dim is {ambient_dim}"
            )

    def all_rows():
        for b in bases:
            yield from _dense_to_sparse(b)

    return _sparse_rank(all_rows())


def row_space_equal(a: RationalMatrix, b: RationalMatrix) -> bool:
    """Exact equality of row spaces (not just of dimensions)."""
    if a.cols != b.cols:
        raise ColumnMismatch("row spaces live in different ambient dimensions")
    ra, rb = a.rank(), b.rank()
    return ra == rb and a.stack(b).rank() == ra
