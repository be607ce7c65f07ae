"""Matroids with exact rank oracles and general-position machinery.

Linear matroids over a prime field (rank by Gaussian elimination,
memoized per vertex-subset bitmask) and uniform matroids, plus the two
finite geometries used as stock examples.  On top of the rank oracle:
closures and flats, circuits, general-position complexes, the integer
and fractional general-position numbers phi and phi-star (the latter an
exact rational LP), a flat-indexed vector representation of the
general-position complex, and Hall-type checkers that search for
colorful general-position sets when the phi / phi-star hypotheses hold.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .complexes import Complex, Partition, from_missing_faces
from .domination import VectorRepresentation, index_sets, rep_value
from .numerics.lp import lp_solve_max
from .reports import CheckRecord, digest

__all__ = [
    "LinearMatroid",
    "UniformMatroid",
    "FlatSet",
    "GpWeighting",
    "MAX_PHI_GROUND",
    "MAX_GP_CLASSES",
    "closure",
    "flats",
    "circuits",
    "is_general_position",
    "gp_by_flat_counts",
    "gp_complex",
    "phi",
    "phi_star",
    "phi_star_weighting",
    "fractional_gp_violations",
    "flat_representation",
    "check_flat_rep_bound",
    "colorful_gp_search",
    "check_gp_hall",
    "check_fractional_gp_hall",
    "ag23_matroid",
    "pg33_matroid",
    "ag23_complex",
    "pg33_complex",
    "matroid_to_json",
    "matroid_from_json",
]

MAX_PHI_GROUND = 24
MAX_GP_CLASSES = 12


def _as_mask(s, n: int) -> int:
    mask = 0
    for v in s:
        v = int(v)
        if v < 0 or v >= n:
            raise ValueError(f"vertex {v} outside ground set of size {n}")
        mask |= 1 << v
    return mask


def _bits(mask: int):
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


class LinearMatroid:
    """Columns of a matrix over F_p; rank = rank of the chosen columns."""

    __slots__ = ("p", "columns", "n", "label", "_rank_cache", "_flat_cache", "_gp_cache")

    def __init__(self, p: int, columns, label: str | None = None) -> None:
        p = int(p)
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"modulus {p} is not prime")
        cols = tuple(tuple(int(e) % p for e in c) for c in columns)
        if not cols:
            raise ValueError("need at least one column")
        if len({len(c) for c in cols}) != 1:
            raise ValueError("columns must all have the same height")
        self.p = p
        self.columns = cols
        self.n = len(cols)
        self.label = label
        self._rank_cache = {0: 0}
        self._flat_cache = {}
        self._gp_cache = None

    def rank_mask(self, mask: int) -> int:
        cached = self._rank_cache.get(mask)
        if cached is not None:
            return cached
        p = self.p
        pivots = []  # echelon rows, each with leading coefficient 1
        for v in _bits(mask):
            vec = list(self.columns[v])
            for lead, prow in pivots:
                f = vec[lead]
                if f:
                    vec = [(a - f * b) % p for a, b in zip(vec, prow)]
            lead = next((i for i, e in enumerate(vec) if e), None)
            if lead is not None:
                inv = pow(vec[lead], p - 2, p)
                pivots.append((lead, [(e * inv) % p for e in vec]))
        r = len(pivots)
        self._rank_cache[mask] = r
        return r

    def rank(self, s) -> int:
        return self.rank_mask(_as_mask(s, self.n))

    @property
    def full_rank(self) -> int:
        return self.rank_mask((1 << self.n) - 1)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        tag = self.label or f"linear(p={self.p})"
        return f"<{tag} matroid on {self.n} elements, rank {self.full_rank}>"


class UniformMatroid:
    """Every set of at most r elements is independent."""

    __slots__ = ("r", "n", "label", "_flat_cache", "_gp_cache")

    def __init__(self, r: int, n: int) -> None:
        r, n = int(r), int(n)
        if n < 1 or not 0 <= r <= n:
            raise ValueError(f"need 0 <= rank <= n, got rank {r}, n {n}")
        self.r = r
        self.n = n
        self.label = None
        self._flat_cache = {}
        self._gp_cache = None

    def rank_mask(self, mask: int) -> int:
        return min(mask.bit_count(), self.r)

    def rank(self, s) -> int:
        return self.rank_mask(_as_mask(s, self.n))

    @property
    def full_rank(self) -> int:
        return self.r

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"<uniform matroid U({self.r},{self.n})>"


# -- closure, flats, circuits ------------------------------------------


def _closure_mask(m, mask: int) -> int:
    r = m.rank_mask(mask)
    out = mask
    for v in range(m.n):
        bit = 1 << v
        if not mask & bit and m.rank_mask(mask | bit) == r:
            out |= bit
    return out


def closure(m, s) -> tuple:
    """Every vertex whose addition leaves the rank unchanged."""
    return tuple(_bits(_closure_mask(m, _as_mask(s, m.n))))


@dataclass(frozen=True)
class FlatSet:
    rank: int
    flats: tuple  # sorted vertex tuples, lexicographic


def flats(m, r: int) -> FlatSet:
    """All rank-r flats, as closures of independent r-subsets."""
    if not 0 <= r <= m.full_rank:
        raise ValueError(f"flat rank {r} outside 0..{m.full_rank}")
    cached = m._flat_cache.get(r)
    if cached is not None:
        return cached
    if r == 0:
        masks = {_closure_mask(m, 0)}
    else:
        masks = set()
        for s in combinations(range(m.n), r):
            mask = _as_mask(s, m.n)
            if m.rank_mask(mask) == r:
                masks.add(_closure_mask(m, mask))
    fs = FlatSet(r, tuple(sorted(tuple(_bits(mask)) for mask in masks)))
    m._flat_cache[r] = fs
    return fs


def circuits(m, max_size: int) -> tuple:
    """Minimal dependent sets of at most max_size elements, ascending."""
    out = []
    found = []
    for size in range(1, max_size + 1):
        for s in combinations(range(m.n), size):
            mask = _as_mask(s, m.n)
            if any(c & mask == c for c in found):
                continue
            if m.rank_mask(mask) != size - 1:
                continue
            if all(m.rank_mask(mask ^ (1 << v)) == size - 1 for v in s):
                out.append(s)
                found.append(mask)
    return tuple(out)


# -- general position --------------------------------------------------


def is_general_position(m, s) -> bool:
    """True when every subset of at most full_rank elements is independent.

    Checking the subsets of one maximal size suffices: smaller ones all
    embed in them.
    """
    elems = sorted(set(s))
    t = min(len(elems), m.full_rank)
    return all(
        m.rank_mask(_as_mask(sub, m.n)) == t for sub in combinations(elems, t)
    )


def gp_by_flat_counts(m, s) -> bool:
    """Flat-counting form: no rank-k flat (1 <= k <= d) holds more than k
    points of s.  Agrees with is_general_position on loopless matroids."""
    elems = set(int(v) for v in s)
    d = m.full_rank - 1
    for k in range(1, d + 1):
        for f in flats(m, k).flats:
            if len(elems.intersection(f)) > k:
                return False
    return True


def gp_complex(m, u=None) -> Complex:
    """Complex of general-position sets; missing faces are the circuits
    of at most full_rank elements.  With u, the induced subcomplex on u
    (vertices relabeled densely in sorted order)."""
    if m._gp_cache is None:
        m._gp_cache = from_missing_faces(m.n, circuits(m, m.full_rank))
    x = m._gp_cache
    if u is None:
        return x
    return x.induced(sorted(set(u)))


def phi(m, s=None) -> int:
    """Largest general-position subset, by branch and bound."""
    elems = sorted(set(s)) if s is not None else list(range(m.n))
    if len(elems) > MAX_PHI_GROUND:
        raise ValueError(f"ground set of {len(elems)} exceeds cap {MAX_PHI_GROUND}")
    d = m.full_rank - 1
    best = 0

    def extends(chosen, v):
        bit = 1 << v
        for t in range(min(len(chosen), d) + 1):
            for sub in combinations(chosen, t):
                mask = bit
                for w in sub:
                    mask |= 1 << w
                if m.rank_mask(mask) != t + 1:
                    return False
        return True

    def walk(i, chosen):
        nonlocal best
        if len(chosen) > best:
            best = len(chosen)
        if i == len(elems) or len(chosen) + len(elems) - i <= best:
            return
        if extends(chosen, elems[i]):
            walk(i + 1, chosen + (elems[i],))
        walk(i + 1, chosen)

    walk(0, ())
    return best


# -- fractional general position ---------------------------------------


@dataclass(frozen=True)
class GpWeighting:
    """Nonnegative rational weights on a vertex subset."""

    subset: tuple
    weights: tuple

    @property
    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def as_dict(self) -> dict:
        return dict(zip(self.subset, self.weights))


def _gp_constraint_supports(m, elems) -> tuple:
    """Support sets of the flat constraints: for each rank-k flat F and
    each (k-1)-subset sigma of F, the vertices v with cl(v sigma) = F.
    Two flats of equal rank nested in each other coincide, so the test
    reduces to v in F and rank(sigma + v) = k."""
    d = m.full_rank - 1
    elemset = set(elems)
    supports = set()
    for k in range(1, d + 1):
        for f in flats(m, k).flats:
            inside = [v for v in f if v in elemset]
            for sigma in combinations(inside, k - 1):
                smask = _as_mask(sigma, m.n)
                support = tuple(
                    v
                    for v in inside
                    if v not in sigma and m.rank_mask(smask | (1 << v)) == k
                )
                if support:
                    supports.add(support)
    return tuple(sorted(supports))


def fractional_gp_violations(m, w: GpWeighting) -> list:
    """Flat constraints the weighting breaks (empty list = feasible)."""
    if any(e < 0 for e in w.weights):
        return ["negative weight"]
    d = m.full_rank - 1
    value = w.as_dict()
    out = []
    for support in _gp_constraint_supports(m, w.subset):
        total = sum((value[v] for v in support), Fraction(0))
        if total > d:
            out.append(f"flat constraint over {support}: {total} > {d}")
    return out


def phi_star_weighting(m, s=None) -> GpWeighting:
    """Optimal fractional general-position weighting, by exact LP."""
    elems = tuple(sorted(set(s))) if s is not None else tuple(range(m.n))
    d = m.full_rank - 1
    if d < 1:
        raise ValueError("matroid rank must be at least 2")
    pos = {v: i for i, v in enumerate(elems)}
    supports = _gp_constraint_supports(m, elems)
    rows = []
    for support in supports:
        row = [0] * len(elems)
        for v in support:
            row[pos[v]] = 1
        rows.append(row)
    if not rows:
        # no flat meets two of the chosen vertices; each weight is only
        # capped by the rank-1 constraints, which are absent exactly when
        # elems is empty
        if elems:  # pragma: no cover - rank-1 flats always constrain
            raise RuntimeError("unconstrained fractional weighting")
        return GpWeighting((), ())
    sol = lp_solve_max([1] * len(elems), rows, [d] * len(rows))
    if sol.status != "optimal":
        raise RuntimeError(f"fractional weighting LP ended {sol.status}")
    w = GpWeighting(elems, tuple(sol.x))
    bad = fractional_gp_violations(m, w)
    if bad:
        raise RuntimeError("LP weighting infeasible: " + "; ".join(bad[:3]))
    return w


def phi_star(m, s=None) -> Fraction:
    """Maximum total weight over fractional general-position weightings."""
    elems = tuple(sorted(set(s))) if s is not None else tuple(range(m.n))
    if not elems:
        return Fraction(0)
    return phi_star_weighting(m, elems).total


# -- the flat representation -------------------------------------------


def flat_representation(m, u=None) -> VectorRepresentation:
    """0/1 vectors over the rank-r flats for the general-position complex.

    For an index set sigma of cardinality r-1 the vector of v indicates
    which rank-r flat is spanned by v and sigma (zero when the span has
    lower rank).  Completions of sigma to a missing face share that
    flat, so the inner-product condition holds with value exactly 1.
    """
    verts = tuple(sorted(set(u))) if u is not None else tuple(range(m.n))
    x = gp_complex(m, verts)
    mats = {}
    for sigma in index_sets(x):
        r = len(sigma) + 1
        layer = flats(m, r).flats
        col = {f: i for i, f in enumerate(layer)}
        smask = 0
        for i in sigma:
            smask |= 1 << verts[i]
        rows = []
        for vd in range(x.n):
            mask = smask | (1 << verts[vd])
            row = [Fraction(0)] * len(layer)
            if m.rank_mask(mask) == r:
                row[col[tuple(_bits(_closure_mask(m, mask)))]] = Fraction(1)
            rows.append(tuple(row))
        mats[sigma] = rows
    return VectorRepresentation(x, mats)


def check_flat_rep_bound(m, u=None) -> CheckRecord:
    """phi-star is at most rank-minus-one times the representation value.

    The optimal weighting divided by d is certified dual-feasible for
    the covering LP of the flat representation, so the inequality holds
    by weak duality; both sides are computed independently and compared
    exactly."""
    verts = tuple(sorted(set(u))) if u is not None else tuple(range(m.n))
    d = m.full_rank - 1
    name = "flat_rep_bound"
    inputs = digest(matroid_to_json(m), verts)
    p = flat_representation(m, verts)
    value = rep_value(p)
    w = phi_star_weighting(m, verts)
    target = w.total
    if isinstance(value, float) and math.isinf(value):
        return CheckRecord(name, inputs, target, value, math.inf, True,
                           note="representation value infinite (no index sets)")
    y = [w.as_dict()[v] / d for v in verts]
    alpha_ok = True
    for sigma in p.matrices:
        for wv in range(x_n := p.complex.n):
            total = sum(
                (y[v] * p.gram_entry(sigma, v, wv) for v in range(x_n)),
                Fraction(0),
            )
            if total > 1:
                alpha_ok = False
    rhs = d * value
    passed = alpha_ok and target <= rhs
    return CheckRecord(name, inputs, target, rhs, rhs - target, passed,
                       details={"rep_value": str(value), "alpha_feasible": alpha_ok})


# -- colorful general-position sets ------------------------------------


def colorful_gp_search(m, partition: Partition):
    """Lexicographically first transversal in general position, or None."""
    if partition.m > MAX_GP_CLASSES:
        raise ValueError(f"more than {MAX_GP_CLASSES} classes")
    for cl in partition.classes:
        if any(v < 0 or v >= m.n for v in cl):
            raise ValueError("partition vertex outside the ground set")
    d = m.full_rank - 1

    def extends(chosen, v):
        for t in range(min(len(chosen), d) + 1):
            for sub in combinations(chosen, t):
                mask = 1 << v
                for w in sub:
                    mask |= 1 << w
                if m.rank_mask(mask) != t + 1:
                    return False
        return True

    def walk(i, chosen):
        if i == partition.m:
            return tuple(sorted(chosen))
        for v in partition.classes[i]:
            if extends(chosen, v):
                res = walk(i + 1, chosen + (v,))
                if res is not None:
                    return res
        return None

    return walk(0, ())


def check_gp_hall(m, partition: Partition) -> CheckRecord:
    """Hall condition on the integer general-position numbers.

    Small unions must beat |I|-1; from d+2 classes on, the threshold
    grows to d * sum r C(|I|-1, r).  When every union clears it, a
    colorful general-position transversal must exist."""
    if partition.m > MAX_GP_CLASSES:
        raise ValueError(f"more than {MAX_GP_CLASSES} classes")
    name = "gp_hall"
    inputs = digest(matroid_to_json(m), partition.classes)
    d = m.full_rank - 1
    values = {}
    for size in range(1, partition.m + 1):
        for which in combinations(range(partition.m), size):
            union = partition.union_of(which)
            val = phi(m, union)
            if size <= d + 1:
                threshold = size - 1
            else:
                threshold = d * sum(r * comb(size - 1, r) for r in range(1, d + 1))
            values[",".join(map(str, which))] = [val, threshold]
            if not val > threshold:
                return CheckRecord(
                    name, inputs, None, None, None, True,
                    note=f"not applicable: phi {val} <= threshold {threshold} "
                         f"for classes {which}",
                    details={"values": values},
                )
    found = colorful_gp_search(m, partition)
    return CheckRecord(name, inputs, None, None, None, found is not None,
                       details={"values": values, "found": found})


def check_fractional_gp_hall(m, partition: Partition) -> CheckRecord:
    """Hall condition on the fractional general-position numbers: every
    union of classes needs phi-star strictly above d * sum r C(|I|-1, r);
    then a colorful general-position transversal must exist."""
    if partition.m > MAX_GP_CLASSES:
        raise ValueError(f"more than {MAX_GP_CLASSES} classes")
    name = "fractional_gp_hall"
    inputs = digest(matroid_to_json(m), partition.classes)
    d = m.full_rank - 1
    values = {}
    for size in range(1, partition.m + 1):
        threshold = d * sum(r * comb(size - 1, r) for r in range(1, d + 1))
        for which in combinations(range(partition.m), size):
            union = partition.union_of(which)
            val = phi_star(m, union)
            values[",".join(map(str, which))] = [str(val), threshold]
            if not val > threshold:
                return CheckRecord(
                    name, inputs, None, None, None, True,
                    note=f"not applicable: phi-star {val} <= threshold {threshold} "
                         f"for classes {which}",
                    details={"values": values},
                )
    found = colorful_gp_search(m, partition)
    return CheckRecord(name, inputs, None, None, None, found is not None,
                       details={"values": values, "found": found})


# -- stock geometries --------------------------------------------------


def ag23_matroid() -> LinearMatroid:
    """Nine columns (x, y, 1) over F_3; element index is 3x + y."""
    cols = [(x, y, 1) for x in range(3) for y in range(3)]
    return LinearMatroid(3, cols, label="AG23")


def pg33_matroid() -> LinearMatroid:
    """The 40 projective points of F_3^4: nonzero vectors normalized to
    leading coordinate 1, in lexicographic order."""
    cols = []
    for a in range(3):
        for b in range(3):
            for c in range(3):
                for e in range(3):
                    vec = (a, b, c, e)
                    nz = next((x for x in vec if x), None)
                    if nz == 1:
                        cols.append(vec)
    return LinearMatroid(3, cols, label="PG33")


def ag23_complex() -> Complex:
    """General-position complex of the nine-point affine plane: missing
    faces are its twelve lines."""
    return gp_complex(ag23_matroid())


def pg33_complex() -> Complex:
    """Forty vertices; missing faces are the 520 collinear triples (three
    points from any of the 130 lines)."""
    m = pg33_matroid()
    triples = set()
    for line in flats(m, 2).flats:
        triples.update(combinations(line, 3))
    return from_missing_faces(m.n, sorted(triples))


# -- JSON boundary -----------------------------------------------------


def matroid_to_json(m) -> str:
    if getattr(m, "label", None) in ("AG23", "PG33"):
        doc = {"kind": "builtin", "name": m.label}
    elif isinstance(m, UniformMatroid):
        doc = {"kind": "uniform", "rank": m.r, "n": m.n}
    elif isinstance(m, LinearMatroid):
        doc = {"kind": "linear", "p": m.p, "columns": [list(c) for c in m.columns]}
    else:
        raise TypeError(f"cannot serialize {type(m).__name__}")
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def matroid_from_json(text: str):
    doc = json.loads(text)
    kind = doc.get("kind")
    if kind == "linear":
        return LinearMatroid(doc["p"], doc["columns"])
    if kind == "uniform":
        return UniformMatroid(doc["rank"], doc["n"])
    if kind == "builtin":
        name = doc.get("name")
        if name == "AG23":
            return ag23_matroid()
        if name == "PG33":
            return pg33_matroid()
        raise ValueError(f"unknown builtin matroid {name!r}")
    raise ValueError(f"unknown matroid kind {kind!r}")
