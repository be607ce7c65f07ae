"""Seeded instance generators for the property campaigns.

Every generator takes an explicit random.Random so that an instance is
reconstructible from (campaign seed, trial index) alone; trial_rng
derives the per-trial stream by hashing both through sha256, which keeps
streams independent of each other and of Python's hash randomization.

The complex recipe: pick n in [4, n_max] and a top missing cardinality
d+1 with d in [1, d_max], keep each (d+1)-subset with probability 1/2
(one cardinality is automatically an antichain), and with probability
1/4 mix in a lower cardinality kept at rate 1/4, dropping the larger
sets they sit inside.  Empty draws are rerolled.
"""

from __future__ import annotations

import hashlib
import math
import random
from fractions import Fraction
from itertools import combinations

from .complexes import Complex, Partition, from_missing_faces
from .domination import VectorRepresentation, index_sets, total_domination
from .matroids import LinearMatroid, UniformMatroid

__all__ = [
    "trial_rng",
    "random_complex",
    "random_single_layer_complex",
    "random_representation",
    "random_partition",
    "random_linear_matroid",
    "random_matroid",
]


def trial_rng(seed: int, trial: int) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{trial}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def random_complex(rng: random.Random, n_max: int = 7, d_max: int = 3,
                   n: int | None = None, mixed: bool = True) -> Complex:
    """A complex with at least one missing face, per the module recipe."""
    while True:
        nn = n if n is not None else rng.randint(4, n_max)
        d = rng.randint(1, min(d_max, nn - 1))
        fam = [s for s in combinations(range(nn), d + 1) if rng.random() < 0.5]
        if mixed and d >= 2 and rng.random() < 0.25:
            low = rng.randint(2, d)
            extra = [s for s in combinations(range(nn), low) if rng.random() < 0.25]
            if extra:
                fam = [s for s in fam
                       if not any(set(e) <= set(s) for e in extra)] + extra
        if fam:
            return from_missing_faces(nn, sorted(fam, key=lambda s: (len(s), s)))


def random_single_layer_complex(rng: random.Random, n_max: int = 6,
                                d_max: int = 3) -> Complex:
    """All missing faces of one cardinality, rerolled until a totally
    dominating set exists (every vertex inside some missing face)."""
    while True:
        n = rng.randint(4, n_max)
        d = rng.randint(1, min(d_max, n - 1))
        fam = [s for s in combinations(range(n), d + 1) if rng.random() < 0.5]
        if not fam:
            continue
        x = from_missing_faces(n, fam)
        if not math.isinf(total_domination(x)):
            return x


def random_representation(rng: random.Random, x: Complex) -> VectorRepresentation:
    """Valid by construction: the anchor coordinate of every vector is a
    shared rational >= 1, so constrained inner products stay >= 1; the
    remaining coordinates are arbitrary nonnegative noise."""
    width = rng.randint(1, 3)
    mats = {}
    for sigma in index_sets(x):
        anchor = Fraction(rng.randint(2, 6), rng.randint(1, 2))
        if anchor < 1:  # pragma: no cover - bounds above keep anchor >= 1
            anchor = 1 / anchor
        rows = []
        for _ in range(x.n):
            row = [anchor] + [
                Fraction(rng.randint(0, 6), rng.randint(1, 4))
                for _ in range(width - 1)
            ]
            rows.append(tuple(row))
        mats[sigma] = rows
    return VectorRepresentation(x, mats)


def random_partition(rng: random.Random, n: int, m: int) -> Partition:
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= classes <= {n}, got {m}")
    verts = list(range(n))
    rng.shuffle(verts)
    cuts = sorted(rng.sample(range(1, n), m - 1))
    classes = []
    prev = 0
    for c in cuts + [n]:
        classes.append(verts[prev:c])
        prev = c
    return Partition(classes)


def random_linear_matroid(rng: random.Random, n_max: int = 9, p: int = 3,
                          min_rank: int = 2) -> LinearMatroid:
    """Nonzero random columns over F_p (loopless), rerolled until the
    rank reaches min_rank."""
    while True:
        n = rng.randint(5, n_max)
        height = rng.randint(3, 4)
        cols = []
        for _ in range(n):
            c = (0,) * height
            while not any(c):
                c = tuple(rng.randrange(p) for _ in range(height))
            cols.append(c)
        m = LinearMatroid(p, cols)
        if m.full_rank >= min_rank:
            return m


def random_matroid(rng: random.Random, n_max: int = 9):
    """A uniform matroid one time in three, else linear over F_3."""
    if rng.random() < 1 / 3:
        n = rng.randint(6, n_max)
        return UniformMatroid(rng.randint(2, min(4, n - 1)), n)
    return random_linear_matroid(rng, n_max=n_max)
