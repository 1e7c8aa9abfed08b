"""Random generators for property tests and the self-check command.

Every function takes a caller-owned random.Random so runs are reproducible;
nothing here touches global RNG state.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from .bundles import ChernVector, Triad, mutate_triad_right
from .errors import NotMutable
from .exact import RationalMatrix
from .helix import Seed, invariants_from_seed
from .quadratic import QuadraticPresentation


def random_simple_pair(rng: random.Random) -> tuple[ChernVector, ChernVector]:
    """Two coprime (rank, degree) vectors with strictly increasing slopes."""
    out = []
    while len(out) < 2:
        r = rng.randint(1, 8)
        d = rng.randint(-20, 20)
        if gcd(r, abs(d)) != 1:
            continue
        v = ChernVector(r, d)
        if out and out[0].degree * v.rank == v.degree * out[0].rank:
            continue
        out.append(v)
    out.sort(key=lambda v: Fraction(v.degree, v.rank))
    return out[0], out[1]


def random_triad(rng: random.Random) -> Triad:
    """A random slope-ordered triple of pairwise coprime-type vectors."""
    while True:
        vs = []
        while len(vs) < 3:
            r = rng.randint(1, 6)
            d = rng.randint(-15, 15)
            if gcd(r, abs(d)) != 1:
                continue
            vs.append(ChernVector(r, d))
        vs.sort(key=lambda v: Fraction(v.degree, v.rank))
        slopes = [Fraction(v.degree, v.rank) for v in vs]
        if slopes[0] < slopes[1] < slopes[2]:
            return Triad(vs[0], vs[1], vs[2])


def random_right_mutable_triad(rng: random.Random) -> Triad:
    """A triad on which one rightward mutation step is defined."""
    while True:
        t = random_triad(rng)
        try:
            mutate_triad_right(t)
        except NotMutable:
            continue
        return t


def random_seed_triple(rng: random.Random, n_max: int = 12) -> Seed:
    """A seed whose table stays rank-positive through row n_max."""
    while True:
        picks = set()
        while len(picks) < 3:
            picks.add(Fraction(rng.randint(-12, 12), rng.randint(1, 6)))
        mu0, mu1p, mu1 = sorted(picks)
        seed = Seed(mu0, mu1p, mu1)
        if invariants_from_seed(seed, n_max).degenerate_at is None:
            return seed


def random_presentation(
    rng: random.Random,
    period: int | None = None,
    max_gen: int = 4,
) -> QuadraticPresentation:
    """A random quadratic presentation with independent relation rows.

    Candidate rows get small rational entries; reduction to echelon form
    discards dependent ones so the construction invariant always holds.
    """
    p = period if period is not None else rng.choice([1, 2, 3])
    gens = tuple(rng.randint(1, max_gen) for _ in range(p))
    rels = []
    for i in range(p):
        ambient = gens[i] * gens[(i + 1) % p]
        count = rng.randint(0, ambient)
        rows = [
            [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(ambient)]
            for _ in range(count)
        ]
        reduced, pivots = RationalMatrix.from_rows(rows, cols=ambient).rref()
        basis = [list(reduced.row(k)) for k in range(len(pivots))]
        rels.append(RationalMatrix.from_rows(basis, cols=ambient))
    return QuadraticPresentation(p, gens, tuple(rels))
