"""Total domination, vector representations and Hall-type machinery.

A totally dominating set S serves every vertex v through some face
sigma inside S whose extension by v leaves the complex; equivalently,
some missing face contains v and otherwise sits inside S.  The vector
side assigns to each index set sigma (one cardinality below each
missing dimension) a nonnegative rational matrix of vertex vectors,
constrained so that pairs completing sigma to a missing face have inner
product at least one.  The representation's value |P| is a covering LP
solved exactly, together with its single-vector dual; both optima must
coincide, and everything downstream (domination bounds, connectivity
bounds, Hall-type colorful-simplex conditions) consumes that exact
rational value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb

from .complexes import Complex, Partition, is_colorful
from .homology import eta, missing_top_eigenvalue
from .numerics import LpProblem, lp_solve, lp_solve_max
from .reports import CheckRecord, digest

__all__ = [
    "VectorRepresentation",
    "DominationReport",
    "total_domination",
    "index_sets",
    "validate_representation",
    "all_ones_representation",
    "rep_value",
    "dominating_alpha_from_tds",
    "domination_summary",
    "check_domination_bound",
    "check_connectivity_bound",
    "check_rep_eigen_bound",
    "colorful_simplex_search",
    "check_colorful_hall",
    "check_representation_hall",
    "representation_to_json",
    "representation_from_json",
]

#: Largest class count accepted by the 2^m Hall sweeps.
MAX_PARTITION_CLASSES = 20


# -- total domination --------------------------------------------------


def _served(x: Complex, v: int, smask: int) -> bool:
    # v is served iff some missing face contains v with the rest inside S
    bit = 1 << v
    for m in x.missing_masks:
        if m & bit and (m & ~bit) & ~smask == 0:
            return True
    return False


def total_domination(x: Complex, cap: int = 22):
    """Minimum size of a totally dominating set, or inf when none exists.

    A set S works iff every vertex v has a face sigma inside S with
    v+sigma not a face; minimal witnesses are missing faces through v,
    so feasibility requires every vertex to lie in some missing face.
    """
    union = 0
    for m in x.missing_masks:
        union |= m
    if union != (1 << x.n) - 1:
        return math.inf
    if x.n > cap:
        raise ValueError(f"vertex count {x.n} above search cap {cap}")
    for size in range(1, x.n + 1):
        for s in combinations(range(x.n), size):
            smask = 0
            for v in s:
                smask |= 1 << v
            if all(_served(x, v, smask) for v in range(x.n)):
                return size
    return math.inf  # pragma: no cover - full V always works when feasible


def _tds_sets(x: Complex, size: int):
    """All totally dominating sets of the given size."""
    out = []
    for s in combinations(range(x.n), size):
        smask = 0
        for v in s:
            smask |= 1 << v
        if all(_served(x, v, smask) for v in range(x.n)):
            out.append(s)
    return out


# -- vector representations -------------------------------------------


def index_sets(x: Complex) -> tuple:
    """Vertex sets one cardinality below each missing dimension.

    For every missing dimension i >= 1 this contributes all subsets of
    cardinality i-1; two extra vertices then complete such a set to a
    candidate missing face.
    """
    out = []
    for i in sorted(x.missing_dims()):
        if i < 1:
            continue
        out.extend(combinations(range(x.n), i - 1))
    return tuple(sorted(set(out), key=lambda s: (len(s), s)))


class VectorRepresentation:
    """Nonnegative rational vertex vectors for each index set of a complex."""

    __slots__ = ("complex", "matrices")

    def __init__(self, x: Complex, matrices) -> None:
        self.complex = x
        mats = {}
        for sigma, rows in matrices.items():
            key = tuple(sorted(int(v) for v in sigma))
            mats[key] = tuple(
                tuple(Fraction(e) for e in row) for row in rows
            )
        self.matrices = mats
        ok, violations = validate_representation(self, x)
        if not ok:
            raise ValueError("invalid representation: " + "; ".join(violations[:5]))

    def vector(self, sigma, v) -> tuple:
        return self.matrices[tuple(sigma)][v]

    def gram_entry(self, sigma, v, w) -> Fraction:
        rows = self.matrices[tuple(sigma)]
        return sum((a * b for a, b in zip(rows[v], rows[w])), Fraction(0))


def validate_representation(p: VectorRepresentation, x: Complex):
    """Exact check of shapes, nonnegativity and the inner-product lower
    bounds on missing-face completions.  Returns (ok, violations)."""
    violations = []
    expected = index_sets(x)
    got = tuple(sorted(p.matrices, key=lambda s: (len(s), s)))
    if got != expected:
        return False, [f"index sets mismatch: expected {expected}, got {got}"]
    for sigma, rows in p.matrices.items():
        if len(rows) != x.n:
            violations.append(f"sigma={sigma}: need {x.n} rows, got {len(rows)}")
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            violations.append(f"sigma={sigma}: ragged rows")
        if any(e < 0 for r in rows for e in r):
            violations.append(f"sigma={sigma}: negative entry")
    if violations:
        return False, violations
    for mu in x.missing_faces:
        card = len(mu)
        for sigma in combinations(mu, card - 2):
            if sigma not in p.matrices:
                continue
            v, w = sorted(set(mu) - set(sigma))
            if p.gram_entry(sigma, v, w) < 1:
                violations.append(
                    f"sigma={sigma}: vectors {v},{w} have product "
                    f"{p.gram_entry(sigma, v, w)} < 1"
                )
    return not violations, violations


def all_ones_representation(x: Complex) -> VectorRepresentation:
    """One-dimensional vectors, every entry 1 — valid on any complex."""
    return VectorRepresentation(
        x, {sigma: [(1,)] * x.n for sigma in index_sets(x)}
    )


def _grams(p: VectorRepresentation):
    sets = sorted(p.matrices, key=lambda s: (len(s), s))
    grams = []
    for sigma in sets:
        rows = p.matrices[sigma]
        g = [
            [sum((a * b for a, b in zip(rows[v], rows[w])), Fraction(0)) for w in range(len(rows))]
            for v in range(len(rows))
        ]
        grams.append(g)
    return sets, grams


def rep_value(p: VectorRepresentation):
    """The value |P|: exact optimum of the covering LP.

    Solves the primal (one nonnegative weight vector per index set,
    weighted Gram rows covering every vertex) and the single-vector
    dual, both exactly; their optima must coincide.  With no index sets
    the primal is infeasible and the value is +inf.
    """
    x = p.complex
    sets, grams = _grams(p)
    if not sets:
        return math.inf
    n = x.n
    m = len(sets)
    # primal: min sum alpha  s.t.  sum_sigma G_sigma^T alpha_sigma >= 1
    a_rows = []
    for w in range(n):
        row = []
        for g in grams:
            row.extend(g[v][w] for v in range(n))
        a_rows.append(row)
    primal = lp_solve(LpProblem([1] * (m * n), a_rows, [1] * n))
    if primal.status != "optimal":  # pragma: no cover - all-ones scaling is feasible
        raise RuntimeError(f"covering LP {primal.status}; representation invalid?")
    # dual: max sum y  s.t.  y >= 0, y G_sigma <= 1 for every sigma
    ub_rows = []
    for g in grams:
        for v in range(n):
            ub_rows.append([g[w][v] for w in range(n)])
    dual = lp_solve_max([1] * n, ub_rows, [1] * (m * n))
    if dual.status != "optimal" or primal.value != dual.value:
        raise RuntimeError(
            f"covering/packing duality broken: {primal.value} vs {dual.status}:{dual.value}"
        )
    return primal.value


def dominating_alpha_from_tds(s, p: VectorRepresentation):
    """The explicit dominating family built from a totally dominating set.

    Requires every missing face to have one common dimension d; the
    family puts weight 1/d on the vertices of S minus sigma, for index
    sets inside S.  Verifies domination and that the total weight is
    C(|S|, d).
    """
    x = p.complex
    dims = x.missing_dims()
    if len(dims) != 1:
        raise ValueError(f"missing faces must share one dimension, got {sorted(dims)}")
    d = next(iter(dims))
    if d < 1:
        raise ValueError("missing faces must have dimension at least 1")
    s = tuple(sorted(set(s)))
    smask = 0
    for v in s:
        smask |= 1 << v
    if not all(_served(x, v, smask) for v in range(x.n)):
        raise ValueError(f"{s} is not totally dominating")
    sset = set(s)
    alpha = {}
    for sigma in index_sets(x):
        if set(sigma) <= sset:
            alpha[sigma] = tuple(
                Fraction(1, d) if (v in sset and v not in sigma) else Fraction(0)
                for v in range(x.n)
            )
        else:
            alpha[sigma] = tuple(Fraction(0) for _ in range(x.n))
    total = sum(sum(a) for a in alpha.values())
    if total != comb(len(s), d):
        raise RuntimeError(f"weight {total} != C({len(s)},{d})")
    for w in range(x.n):
        cover = sum(
            a[v] * p.gram_entry(sigma, v, w)
            for sigma, a in alpha.items()
            for v in range(x.n)
            if a[v]
        )
        if cover < 1:
            raise RuntimeError(f"constructed family fails to dominate vertex {w}")
    return alpha


@dataclass(frozen=True)
class DominationReport:
    """Total domination number plus representation values seen so far."""

    gamma_tilde: object
    rep_values: tuple
    gamma_lower: object

    def to_dict(self) -> dict:
        return {
            "gamma_tilde": self.gamma_tilde,
            "rep_values": [[label, v] for label, v in self.rep_values],
            "gamma_lower": self.gamma_lower,
        }


def domination_summary(x: Complex, reps) -> DominationReport:
    """Bundle gamma-tilde with |P| for each labelled representation."""
    values = tuple((label, rep_value(p)) for label, p in reps)
    finite = [v for _, v in values if not (isinstance(v, float) and math.isinf(v))]
    lower = max(finite) if finite else (values[0][1] if values else Fraction(0))
    return DominationReport(total_domination(x), values, lower)


# -- theorem checkers --------------------------------------------------


def check_domination_bound(x: Complex, p: VectorRepresentation | None = None) -> CheckRecord:
    """|P| is at most C(gamma-tilde, d) when all missing faces share
    dimension d: exact rationals against the brute-forced gamma-tilde,
    with the proof's explicit family revalidated along the way."""
    dims = x.missing_dims()
    if len(dims) != 1 or min(dims) < 1:
        raise ValueError(f"missing faces must share one dimension >= 1, got {sorted(dims)}")
    d = next(iter(dims))
    if p is None:
        p = all_ones_representation(x)
    name = "domination_bound"
    inputs = digest(x.n, x.missing_masks)
    gamma = total_domination(x)
    if math.isinf(gamma):
        return CheckRecord(name, inputs, None, None, math.inf, True,
                           note="vacuous: no totally dominating set")
    value = rep_value(p)
    bound = comb(gamma, d)
    for s in _tds_sets(x, gamma):
        dominating_alpha_from_tds(s, p)  # raises if the construction breaks
        break
    return CheckRecord(name, inputs, value, bound, bound - value, value <= bound,
                       details={"gamma_tilde": gamma, "d": d})


def check_connectivity_bound(x: Complex, p: VectorRepresentation | None = None) -> CheckRecord:
    """sum over missing dimensions r of r C(eta, r) bounds |P| from above
    (one-sided: |P| never exceeds the representation supremum)."""
    if p is None:
        p = all_ones_representation(x)
    name = "connectivity_bound"
    inputs = digest(x.n, x.missing_masks)
    e = eta(x)
    if math.isinf(e):
        return CheckRecord(name, inputs, None, None, math.inf, True,
                           note="vacuous: infinite connectivity")
    value = rep_value(p)
    lhs = sum(r * comb(e, r) for r in x.missing_dims() if r >= 1)
    if isinstance(value, float) and math.isinf(value):
        return CheckRecord(name, inputs, lhs, value, -math.inf, False,
                           note="representation value infinite with finite connectivity")
    return CheckRecord(name, inputs, lhs, value, lhs - value, value <= lhs,
                       details={"eta": e})


def check_rep_eigen_bound(x: Complex, p: VectorRepresentation | None = None,
                          tol: float = 1e-9) -> CheckRecord:
    """Missing-layer top eigenvalues against i times the largest scaled
    vector product of the representation."""
    if p is None:
        p = all_ones_representation(x)
    name = "rep_eigen_bound"
    inputs = digest(x.n, x.missing_masks)
    dims = [i for i in sorted(x.missing_dims()) if i >= 1]
    if not dims:
        return CheckRecord(name, inputs, None, None, math.inf, True,
                           note="vacuous: no missing dimensions above 0")
    per_dim = {}
    passed = True
    worst = math.inf
    for i in dims:
        lam = missing_top_eigenvalue(x, i)
        best = Fraction(0)
        for sigma in combinations(range(x.n), i - 1):
            rows = p.matrices[sigma]
            col_sum = [sum(col, Fraction(0)) for col in zip(*rows)]
            for v in range(x.n):
                prod = sum((a * b for a, b in zip(rows[v], col_sum)), Fraction(0))
                if prod > best:
                    best = prod
        bound = i * best
        margin = float(bound) - lam
        per_dim[i] = {"top_eig": lam, "bound": str(bound)}
        passed = passed and margin >= -tol
        worst = min(worst, margin)
    return CheckRecord(name, inputs, None, None, worst, passed, details=per_dim)


# -- colorful simplices ------------------------------------------------


def colorful_simplex_search(z: Complex, partition: Partition):
    """First transversal of the classes that is a face, or None."""
    if partition.m > MAX_PARTITION_CLASSES:
        raise ValueError(f"more than {MAX_PARTITION_CLASSES} classes")
    for cl in partition.classes:
        if any(v < 0 or v >= z.n for v in cl):
            raise ValueError("partition vertex outside the complex")
    for pick in product(*partition.classes):
        if z.contains(pick):
            return tuple(sorted(pick))
    return None


def check_colorful_hall(z: Complex, partition: Partition) -> CheckRecord:
    """If every union of classes is connected one step deeper than the
    number of classes joined, a colorful simplex must exist."""
    if partition.m > MAX_PARTITION_CLASSES:
        raise ValueError(f"more than {MAX_PARTITION_CLASSES} classes")
    name = "colorful_hall"
    inputs = digest(z.n, z.missing_masks, partition.classes)
    m = partition.m
    etas = {}
    hypothesis = True
    witness = None
    for size in range(1, m + 1):
        for which in combinations(range(m), size):
            sub = z.induced(partition.union_of(which))
            e = eta(sub)
            etas[",".join(map(str, which))] = e
            if not e >= size:
                hypothesis = False
                witness = which
        if not hypothesis:
            break
    if not hypothesis:
        return CheckRecord(name, inputs, None, None, None, True,
                           note=f"not applicable: hypothesis fails for classes {witness}",
                           details={"etas": etas})
    found = colorful_simplex_search(z, partition)
    return CheckRecord(name, inputs, None, None, None, found is not None,
                       details={"etas": etas, "found": found})


def check_representation_hall(x: Complex, partition: Partition, reps=None) -> CheckRecord:
    """Hall condition with representation values as connectivity proxies.

    For every union of classes, |P| of the induced subcomplex must
    strictly exceed sum_r r C(|I|-1, r); when that holds throughout, a
    colorful simplex must exist.  Representations default to all-ones
    and may be supplied per class index set.
    """
    if partition.m > MAX_PARTITION_CLASSES:
        raise ValueError(f"more than {MAX_PARTITION_CLASSES} classes")
    name = "representation_hall"
    inputs = digest(x.n, x.missing_masks, partition.classes)
    values = {}
    for size in range(1, partition.m + 1):
        for which in combinations(range(partition.m), size):
            sub = x.induced(partition.union_of(which))
            p = None if reps is None else reps.get(frozenset(which))
            value = rep_value(p if p is not None else all_ones_representation(sub))
            threshold = sum(r * comb(size - 1, r) for r in sub.missing_dims() if r >= 1)
            values[",".join(map(str, which))] = [
                str(value) if not isinstance(value, float) else "inf",
                threshold,
            ]
            if not value > threshold:
                return CheckRecord(
                    name, inputs, None, None, None, True,
                    note=f"not applicable: value {value} <= threshold {threshold} "
                         f"for classes {which}",
                    details={"values": values},
                )
    found = colorful_simplex_search(x, partition)
    return CheckRecord(name, inputs, None, None, None, found is not None,
                       details={"values": values, "found": found})


# -- JSON boundary -----------------------------------------------------


def representation_to_json(p: VectorRepresentation) -> str:
    import json

    doc = {
        "sets": [
            {
                "sigma": list(sigma),
                "matrix": [[str(e) for e in row] for row in p.matrices[sigma]],
            }
            for sigma in sorted(p.matrices, key=lambda s: (len(s), s))
        ]
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def representation_from_json(text, x: Complex) -> VectorRepresentation:
    import json

    doc = json.loads(text)
    mats = {
        tuple(entry["sigma"]): [[Fraction(e) for e in row] for row in entry["matrix"]]
        for entry in doc["sets"]
    }
    return VectorRepresentation(x, mats)
