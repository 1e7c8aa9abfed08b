"""Rank/degree calculus for simple bundles on a smooth elliptic curve.

Everything works at the level of the integer pair (rank, degree): the
dimension pairing, the evaluation dichotomy, and the left/right mutations of
pairs and of triads. Rank-zero data (torsion sheaves) is outside the model.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import NamedTuple

from .errors import NotMutable, NotSimple, SlopeOrderViolation


@dataclass(frozen=True)
class ChernVector:
    """(rank, degree) with rank >= 1."""

    rank: int
    degree: int

    def __post_init__(self):
        if not isinstance(self.rank, int) or not isinstance(self.degree, int):
            raise TypeError("rank and degree must be integers")
        if self.rank < 1:
            raise ValueError("rank must be at least 1")

    @property
    def is_simple(self) -> bool:
        # coprime rank and degree; degree 0 therefore forces rank 1
        return gcd(self.rank, abs(self.degree)) == 1

    def __str__(self):
        return f"{self.rank}:{self.degree}"


def slope(c: ChernVector) -> Fraction:
    return Fraction(c.degree, c.rank)


def euler_pairing(e: ChernVector, f: ChernVector) -> int:
    """The antisymmetric pairing d_F r_E - d_E r_F (defined for all pairs)."""
    return f.degree * e.rank - e.degree * f.rank


def _require_simple_increasing(e: ChernVector, f: ChernVector) -> None:
    if not e.is_simple:
        raise NotSimple(f"{e} has non-coprime rank and degree")
    if not f.is_simple:
        raise NotSimple(f"{f} has non-coprime rank and degree")
    if slope(e) >= slope(f):
        raise SlopeOrderViolation(f"need slope({e}) < slope({f})")


def hom_dim(e: ChernVector, f: ChernVector) -> int:
    """Dimension of the map space for a simple pair of increasing slope.

    Equals the pairing, which is then guaranteed positive.
    """
    _require_simple_increasing(e, f)
    return euler_pairing(e, f)


class EvalClass(Enum):
    INJECTIVE = "Injective"
    SURJECTIVE = "Surjective"


def classify_evaluation(e: ChernVector, f: ChernVector) -> EvalClass:
    """Which side of the evaluation dichotomy a simple increasing pair is on."""
    h = hom_dim(e, f)
    return EvalClass.INJECTIVE if h * e.rank <= f.rank else EvalClass.SURJECTIVE


def right_mutate(a: ChernVector, b: ChernVector) -> ChernVector:
    """Reflection of a rightward past b: (h r_B - r_A, h d_B - d_A)."""
    h = hom_dim(a, b)
    new_rank = h * b.rank - a.rank
    if new_rank <= 0:
        raise NotMutable(f"right mutation of {a} past {b} has rank {new_rank}")
    return ChernVector(new_rank, h * b.degree - a.degree)


def left_mutate(e: ChernVector, f: ChernVector) -> ChernVector:
    """Reflection of f leftward past e: (h r_E - r_F, h d_E - d_F)."""
    h = hom_dim(e, f)
    new_rank = h * e.rank - f.rank
    if new_rank <= 0:
        raise NotMutable(f"left mutation of {f} past {e} has rank {new_rank}")
    return ChernVector(new_rank, h * e.degree - f.degree)


def dualize(c: ChernVector) -> ChernVector:
    return ChernVector(c.rank, -c.degree)


@dataclass(frozen=True)
class Triad:
    """Three simple vectors of strictly increasing slope."""

    a: ChernVector
    b: ChernVector
    c: ChernVector

    def __post_init__(self):
        for v in (self.a, self.b, self.c):
            if not v.is_simple:
                raise NotSimple(f"{v} has non-coprime rank and degree")
        if not (slope(self.a) < slope(self.b) < slope(self.c)):
            raise SlopeOrderViolation("triad slopes must increase strictly")

    def members(self) -> tuple[ChernVector, ChernVector, ChernVector]:
        return (self.a, self.b, self.c)

    def __str__(self):
        return f"({self.a}, {self.b}, {self.c})"


def dualize_triad(t: Triad) -> Triad:
    """Negate degrees and reverse order, so slopes increase again."""
    return Triad(dualize(t.c), dualize(t.b), dualize(t.a))


class HomDims(NamedTuple):
    ab: int
    ac: int
    bc: int


def hom_dims(t: Triad) -> HomDims:
    return HomDims(hom_dim(t.a, t.b), hom_dim(t.a, t.c), hom_dim(t.b, t.c))


def mutate_triad_right(t: Triad) -> Triad:
    """(a, b, c) -> (c, R_c a, R_c b). Reports which member fails to mutate."""
    try:
        ra = right_mutate(t.a, t.c)
    except NotMutable as exc:
        raise NotMutable(str(exc), member="a") from None
    try:
        rb = right_mutate(t.b, t.c)
    except NotMutable as exc:
        raise NotMutable(str(exc), member="b") from None
    return Triad(t.c, ra, rb)


def mutate_triad_left(t: Triad) -> Triad:
    """(a, b, c) -> (L_a b, L_a c, a); inverse of the right step."""
    try:
        lb = left_mutate(t.a, t.b)
    except NotMutable as exc:
        raise NotMutable(str(exc), member="b") from None
    try:
        lc = left_mutate(t.a, t.c)
    except NotMutable as exc:
        raise NotMutable(str(exc), member="c") from None
    return Triad(lb, lc, t.a)
