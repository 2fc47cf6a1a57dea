"""Rewrite rules on dimension vectors.

Each rule is a pure function from a DimensionVector to rewrite steps.  A step
either settles the vector outright (direction BaseDense / BaseSparse) or
relates it to smaller vectors:

    Iff       input dense  <=>  output dense
    DenseIf   output dense  =>  input dense
    SparseIf  output sparse =>  input sparse

The rule_id strings are the stable wire format used in certificate JSON; the
short L* names are opaque labels for the reduction rules, in the order the
engine tries them.

A rewrite may produce a vector all of whose entries drop during
normalization ("vacuous": the configuration degenerates to a point, which is
dense).  Such steps carry empty outputs and params ``vacuous=True``; for an
Iff rule this settles the input as dense.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Optional

from .core import DimensionVector, VacuousVectorError, normalize, parse

# rule_id wire strings
SUM_DENSE = "SumDense"
L3 = "L3"
L4_MERGE = "L4Merge"
SUBSEQ_2N = "SubseqTwoN"
L6 = "L6"
L7 = "L7"
L8 = "L8"
L9 = "L9"
L10 = "L10"
LENGTH4 = "Length4"
POINTS_BASE = "PointsBase"
SIZE_TABLE = "SizeTable"
BALANCED = "Balanced"
EXCESS_L1 = "ExcessL1"
DOMINATION = "Domination"
COMPLEMENT = "Complement"
TRIVIALLY_SPARSE = "TriviallySparse"  # leaf marker used by the engine

# directions
IFF = "Iff"
DENSE_IF = "DenseIf"
SPARSE_IF = "SparseIf"
BASE_DENSE = "BaseDense"
BASE_SPARSE = "BaseSparse"

RULE_IDS = frozenset({
    SUM_DENSE, L3, L4_MERGE, SUBSEQ_2N, L6, L7, L8, L9, L10, LENGTH4,
    POINTS_BASE, SIZE_TABLE, BALANCED, EXCESS_L1, DOMINATION, COMPLEMENT,
})

# Subset/partition enumeration is exhaustive up to this length; longer
# vectors make the subset rules return nothing (the engine reports Unknown
# rather than hanging).
SUBSET_ENUM_CAP = 12


@dataclass(frozen=True)
class RewriteStep:
    """One rule application.  params is a sorted tuple of (name, value) pairs
    so steps stay hashable; values are ints, strings or int tuples."""

    rule_id: str
    direction: str
    params: tuple[tuple[str, object], ...]
    input: DimensionVector
    outputs: tuple[DimensionVector, ...]

    def params_dict(self) -> dict:
        return dict(self.params)

    @property
    def is_vacuous(self) -> bool:
        return not self.outputs and bool(self.params_dict().get("vacuous"))

    @property
    def is_base(self) -> bool:
        return self.direction in (BASE_DENSE, BASE_SPARSE)


def _step(rule_id: str, direction: str, d: DimensionVector,
          outputs: tuple[DimensionVector, ...], **params) -> RewriteStep:
    return RewriteStep(rule_id, direction, tuple(sorted(params.items())), d, outputs)


def _try_normalize(entries, ambient) -> Optional[DimensionVector]:
    """normalize, mapping the vacuous case to None."""
    try:
        return normalize(entries, ambient)
    except VacuousVectorError:
        return None


def _submultisets(dims: tuple[int, ...], min_size: int = 1) -> Iterator[tuple[int, ...]]:
    """All distinct nonempty sub-multisets as sorted tuples, smallest first
    in (size, entries) order is NOT guaranteed; order is deterministic."""
    items = sorted(Counter(dims).items())

    def rec(i: int, chosen: list[int]) -> Iterator[tuple[int, ...]]:
        if i == len(items):
            if len(chosen) >= min_size:
                yield tuple(chosen)
            return
        v, mult = items[i]
        for take in range(mult + 1):
            yield from rec(i + 1, chosen + [v] * take)

    yield from rec(0, [])


def _remove(dims: tuple[int, ...], sub: tuple[int, ...]) -> tuple[int, ...]:
    left = Counter(dims)
    left.subtract(Counter(sub))
    return tuple(sorted(left.elements()))


def _distinct_pairs(dims: tuple[int, ...]) -> Iterator[tuple[int, int]]:
    """Distinct unordered entry pairs (b1 <= b2) present with multiplicity."""
    counts = Counter(dims)
    values = sorted(counts)
    for i, b1 in enumerate(values):
        for b2 in values[i:]:
            if b1 == b2 and counts[b1] < 2:
                continue
            yield b1, b2


# ---------------------------------------------------------------------------
# base rules (settle the vector outright)
# ---------------------------------------------------------------------------

def rule_sum_dense(d: DimensionVector) -> Optional[RewriteStep]:
    """Total dimension at most n+1 (on either side) forces density: the
    subspaces can be put in general position spanning independently."""
    n = d.ambient
    if d.total <= n + 1:
        return _step(SUM_DENSE, BASE_DENSE, d, (), side="self", total=d.total)
    c = d.complement()
    if c.total <= n + 1:
        return _step(SUM_DENSE, BASE_DENSE, d, (), side="complement", total=c.total)
    return None


def rule_length4(d: DimensionVector) -> Optional[RewriteStep]:
    """Vectors of length <= 4 are classified completely: sparse exactly for
    length 4 with total dimension 2n, dense otherwise."""
    if d.length > 4:
        return None
    if d.length == 4 and d.total == 2 * d.ambient:
        return _step(LENGTH4, BASE_SPARSE, d, (), length=d.length, total=d.total)
    return _step(LENGTH4, BASE_DENSE, d, (), length=d.length, total=d.total)


def rule_points_base(d: DimensionVector) -> Optional[RewriteStep]:
    """Point configurations (1^r;n): dense iff r <= n+1.  Also the dense
    configuration of n points plus one hyperplane, (1^n, n-1; n).  Both
    patterns are recognized up to complement."""
    n = d.ambient
    for side, v in (("self", d), ("complement", d.complement())):
        if all(x == 1 for x in v.dims):
            direction = BASE_DENSE if v.length <= n + 1 else BASE_SPARSE
            return _step(POINTS_BASE, direction, d, (), side=side, form="points", count=v.length)
        if n >= 3 and v.dims == (1,) * n + (n - 1,):
            return _step(POINTS_BASE, BASE_DENSE, d, (), side=side, form="points+hyperplane")
    return None


def rule_subseq_2n(d: DimensionVector, cap: int = SUBSET_ENUM_CAP) -> Optional[RewriteStep]:
    """A sub-multiset of at least 4 entries summing to exactly 2n (in d or
    its complement) forces sparsity: split it into four nonempty parts of
    size <= n-1, merge to a length-4 vector of total 2n, and dominate.

    Three-entry subsets are NOT sufficient ((2,3,3;4) sums to 2n yet is
    dense), hence the >= 4 guard.
    """
    if d.length > cap:
        return None
    target = 2 * d.ambient
    for side, v in (("self", d), ("complement", d.complement())):
        if v.total < target:
            continue
        for sub in _submultisets(v.dims, min_size=4):
            if sum(sub) == target:
                return _step(SUBSEQ_2N, BASE_SPARSE, d, (), side=side, subset=sub)
    return None


# -- size-table data --------------------------------------------------------

# Dense vectors of size 2 with excess >= 3 (complete finite tail).
_TAIL2 = frozenset(parse(s) for s in ("(2^3;3)", "(1,2^3;3)", "(2^4;3)", "(1,2^3;4)", "(2^4;5)"))

# Dense vectors of size 3 with total >= n+4 (complete finite tail: the
# bullet predicates below cover total <= n+3, and an exhaustive
# oracle-verified sweep over n <= 12 plus the excess bound
# sum (k+1-i)*i*e_i <= k(k+2) shows no others exist).
_TAIL3 = frozenset(parse(s) for s in (
    "(2,3^2;4)", "(3^3;4)", "(1,2,3^2;4)", "(1,3^3;4)", "(2^3,3;4)",
    "(2^2,3^2;4)", "(2,3^3;4)", "(3^4;4)", "(1,3^4;4)", "(3^5;4)",
    "(3^3;5)", "(1,2,3^2;5)", "(2^3,3;5)", "(2,3^3;5)", "(3^4;5)",
    "(1,3^3;6)", "(2^2,3^2;6)", "(2,3^3;6)",
    "(2,3^3;7)", "(3^4;7)",
    "(3^4;8)", "(1,3^4;9)", "(3^5;11)",
))


def _size_table_verdict(v: DimensionVector) -> Optional[tuple[bool, str]]:
    """(dense?, category) from the embedded size-<=4 classification, or None
    where the table is not complete (size 4 with total >= n+5)."""
    n, total = v.ambient, v.total
    mult = Counter(v.dims)
    a, b, c = mult[1], mult[2], mult[3]
    size = v.size
    if size == 1:
        return v.length <= n + 1, "points"
    if total <= n + 1:
        return True, "total<=n+1"
    if total == n + 2:
        return a <= 3, "total=n+2"
    if total == n + 3:
        return a + b <= 4 and (a, b) != (2, 2), "total=n+3"
    if size == 2:
        return v in _TAIL2, "tail"
    if size == 3:
        return v in _TAIL3, "tail"
    # size 4
    if total == n + 4:
        # reduces to (1^a,2^b,3^c;4); its density in closed form:
        dense = (a + b + c <= 3
                 or (a + b + c == 4 and a + 2 * b + 3 * c != 8)
                 or (a + c == 5 and b == 0 and (a <= 1 or c <= 1)))
        return dense, "total=n+4"
    return None  # size-4 finite tail: left to the engine's search


def rule_size_table(d: DimensionVector) -> Optional[RewriteStep]:
    """Complete classification lookup for vectors of size <= 3 (any n) and
    size 4 with total <= n+4, applied to whichever of d / complement has the
    smaller size."""
    sides = sorted((("self", d), ("complement", d.complement())), key=lambda sv: sv[1].size)
    for side, v in sides:
        if v.size > 4:
            continue
        res = _size_table_verdict(v)
        if res is None:
            continue
        dense, category = res
        return _step(SIZE_TABLE, BASE_DENSE if dense else BASE_SPARSE, d, (),
                     side=side, size=v.size, category=category)
    return None


# -- balanced vectors -------------------------------------------------------

_BALANCED_SPORADIC = frozenset(
    parse(s).canonical() for s in ("(1^3,3^2;4)", "(1^4,3;5)", "(1^3,3^2;5)")
)


def _is_balanced_target(v: DimensionVector) -> bool:
    for w in (v, v.complement()):
        if w.canonical() in _BALANCED_SPORADIC:
            return True
        m = Counter(w.dims)
        c = m[3]
        if m[1] == 2 and m[2] == 2 and w.length == 4 + c and w.ambient == 3 * c + 3:
            return True
    return False


def rule_balanced(d: DimensionVector) -> Optional[RewriteStep]:
    """Vectors whose entries span a window of width <= 2 (max - min <= 2, a
    complement-invariant condition) are dense exactly when not trivially
    sparse, except for the length-4 total-2n case and the finitely many
    sporadic families; the latter are detected by closing under the
    span-intersect reduction (L9) and complements and testing membership."""
    if d.size - d.dims[0] > 2:
        return None
    if d.is_trivially_sparse:
        return _step(BALANCED, BASE_SPARSE, d, (), reason="trivially-sparse")
    if d.length == 4 and d.total == 2 * d.ambient:
        return _step(BALANCED, BASE_SPARSE, d, (), reason="length4-2n")
    seen: set[DimensionVector] = set()
    stack = [d.canonical()]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        if _is_balanced_target(v):
            return _step(BALANCED, BASE_SPARSE, d, (), reason="sporadic-family")
        for w in (v, v.complement()):
            for st in rule_span_intersect(w):
                for out in st.outputs:
                    stack.append(out.canonical())
    return _step(BALANCED, BASE_DENSE, d, (), reason="not-trivially-sparse")


def rule_domination_sparse(d: DimensionVector,
                           known_sparse: frozenset[DimensionVector] | set[DimensionVector],
                           ) -> Optional[RewriteStep]:
    """d (or its complement) dominating a known sparse vector makes d sparse:
    the extra subspaces only impose further conditions.  The step points at
    the dominated vector so the certificate chain can continue into its own
    sparseness proof."""
    candidates = sorted(known_sparse, key=lambda v: (v.length, v.total, v.dims))
    fallback = None
    for side, v in (("self", d), ("complement", d.complement())):
        for w in candidates:
            if w.ambient != v.ambient or not v.dominates(w):
                continue
            if w == v:
                fallback = fallback or _step(DOMINATION, SPARSE_IF, d, (w,), side=side, strict=0)
                continue
            return _step(DOMINATION, SPARSE_IF, d, (w,), side=side, strict=1)
    return fallback


# ---------------------------------------------------------------------------
# reduction rules
# ---------------------------------------------------------------------------

def _iff_step(rule_id: str, d: DimensionVector, entries: list[int], ambient: int,
              **params) -> RewriteStep:
    out = _try_normalize(entries, ambient)
    if out is None:
        return _step(rule_id, IFF, d, (), vacuous=True, ambient=ambient, **params)
    return _step(rule_id, IFF, d, (out,), **params)


def _dedup(steps: list[RewriteStep]) -> list[RewriteStep]:
    seen = set()
    kept = []
    for s in steps:
        key = (s.rule_id, s.outputs) if s.outputs else (s.rule_id, s.params)
        if key not in seen:
            seen.add(key)
            kept.append(s)
    return kept


def rule_restrict_to_span(d: DimensionVector, cap: int = SUBSET_ENUM_CAP) -> list[RewriteStep]:
    """Restrict to the span of a subfamily.  Split the entries into A and B
    with sum(A) = n - k < n and sum(n - b for b in B) <= n - k; inside the
    span of the A-subspaces (generically of dimension n - k) the B-subspaces
    cut out subspaces of dimension b - k.  Density transfers both ways."""
    if d.length > cap:
        return []
    n = d.ambient
    steps = []
    for sub in _submultisets(d.dims):
        rest = _remove(d.dims, sub)
        if not rest:
            continue
        sa = sum(sub)
        if sa >= n:
            continue
        k = n - sa
        if sum(n - b for b in rest) > sa:
            continue
        entries = list(sub) + [b - k for b in rest]
        steps.append(_iff_step(L3, d, entries, sa, kept=sub, k=k))
    return _dedup(steps)


def rule_merge_sparse(d: DimensionVector, cap: int = SUBSET_ENUM_CAP) -> list[RewriteStep]:
    """Merge up to three disjoint groups of entries (each of size >= 2 and
    group sum <= n) into single subspaces spanning them.  If the merged
    vector is sparse, so is the original."""
    if d.length > cap:
        return []
    n = d.ambient
    steps = []

    def groups_from(dims: tuple[int, ...], lower: tuple[int, ...], chosen: list[tuple[int, ...]]):
        if chosen:
            rest = dims
            entries = list(rest) + [sum(g) for g in chosen]
            out = _try_normalize(entries, n)
            if out is not None and out != d:
                steps.append(_step(L4_MERGE, SPARSE_IF, d, (out,), groups=tuple(chosen)))
        if len(chosen) == 3:
            return
        for g in _submultisets(dims, min_size=2):
            if sum(g) > n or g < lower:
                continue
            groups_from(_remove(dims, g), g, chosen + [g])

    groups_from(d.dims, (), [])
    return _dedup(steps)


def rule_pair_collapse(d: DimensionVector) -> list[RewriteStep]:
    """Collapse a repeated pair: two copies of b with b <= n/2 and
    b + sum(rest) = n project to a configuration in dimension n - b with a
    single copy of b.  Density transfers both ways."""
    n = d.ambient
    counts = Counter(d.dims)
    steps = []
    for b in sorted(counts):
        if counts[b] < 2 or 2 * b > n:
            continue
        rest = _remove(d.dims, (b, b))
        if b + sum(rest) != n:
            continue
        steps.append(_iff_step(L6, d, list(rest) + [b], n - b, b=b))
    return _dedup(steps)


def rule_largest_block(d: DimensionVector) -> list[RewriteStep]:
    """Pass to the largest subspace: if the other entries sum to exactly n
    and each fits alongside b (a + b <= n), the configuration restricts to
    the b-dimensional subspace.  Density transfers both ways."""
    n = d.ambient
    b = d.size
    others = _remove(d.dims, (b,))
    if not others or sum(others) != n:
        return []
    if any(a + b > n for a in others):
        return []
    return [_iff_step(L7, d, list(others), b, b=b)]


def rule_complementary_pair(d: DimensionVector, ) -> list[RewriteStep]:
    """Complementary pair: entries b1 + b2 = n and the rest summing to
    n - k with k <= b1 <= b2 reduce to ambient n - k, shrinking the pair to
    (b1 - k, b2 - k).  Density transfers both ways."""
    n = d.ambient
    steps = []
    for b1, b2 in _distinct_pairs(d.dims):
        if b1 + b2 != n:
            continue
        rest = _remove(d.dims, (b1, b2))
        if not rest:
            continue
        sa = sum(rest)
        if sa >= n:
            continue
        k = n - sa
        if k > b1:
            continue
        entries = list(rest) + [b1 - k, b2 - k]
        steps.append(_iff_step(L8, d, entries, n - k, pair=(b1, b2), k=k))
    return _dedup(steps)


def rule_span_intersect(d: DimensionVector) -> list[RewriteStep]:
    """Span-intersect: entries b1 + b2 < n with the rest summing to n - k,
    k <= b1 <= b2, reduce to the span of the pair intersected with the rest:
    ambient m = b1 + b2 - k, keeping b1, b2.  Density transfers both ways.
    Skipped when a leftover entry exceeds m (it would not fit)."""
    n = d.ambient
    steps = []
    for b1, b2 in _distinct_pairs(d.dims):
        if b1 + b2 >= n:
            continue
        rest = _remove(d.dims, (b1, b2))
        if not rest:
            continue
        sa = sum(rest)
        if sa >= n:
            continue
        k = n - sa
        if k > b1:
            continue
        m = b1 + b2 - k
        if any(a > m for a in rest):
            continue
        entries = list(rest) + [b1, b2]
        steps.append(_iff_step(L9, d, entries, m, pair=(b1, b2), k=k, m=m))
    return _dedup(steps)


def rule_intersection_swap(d: DimensionVector, cap: int = SUBSET_ENUM_CAP) -> list[RewriteStep]:
    """Intersection swap: a sub-multiset S of k >= 3 entries with
    sum(S) = (k-1) n gets every selected entry a replaced by n - a, ambient
    unchanged.  Density transfers both ways.  (k = 2 would be the identity.)
    """
    if d.length > cap:
        return []
    n = d.ambient
    steps = []
    for sub in _submultisets(d.dims, min_size=3):
        if sum(sub) != (len(sub) - 1) * n:
            continue
        rest = _remove(d.dims, sub)
        entries = list(rest) + [n - a for a in sub]
        steps.append(_iff_step(L10, d, entries, n, subset=sub))
    return _dedup(steps)


def rule_excess(d: DimensionVector) -> list[RewriteStep]:
    """Excess collapse: total dimension n + l + 1 with 1 <= l < size reduces
    to the profile of small entries, (1^{e_1},...,l^{e_l}; l+1).  Density
    transfers both ways.  l = 0 is the total <= n+1 density bound and is
    left to rule_sum_dense."""
    l = d.excess - 1
    if l < 1 or l >= d.size:
        return []
    kept = [a for a in d.dims if a <= l]
    return [_iff_step(EXCESS_L1, d, kept, l + 1, l=l)]


def rule_complement(d: DimensionVector) -> RewriteStep:
    """Complement each subspace; density is preserved both ways."""
    return _step(COMPLEMENT, IFF, d, (d.complement(),))


# rule functions by id, for certificate re-verification
BASE_RULES = {
    SUM_DENSE: rule_sum_dense,
    LENGTH4: rule_length4,
    POINTS_BASE: rule_points_base,
    SUBSEQ_2N: rule_subseq_2n,
    SIZE_TABLE: rule_size_table,
    BALANCED: rule_balanced,
}

REDUCTION_RULES = {
    EXCESS_L1: rule_excess,
    L3: rule_restrict_to_span,
    L8: rule_complementary_pair,
    L9: rule_span_intersect,
    L6: rule_pair_collapse,
    L7: rule_largest_block,
    L10: rule_intersection_swap,
    L4_MERGE: rule_merge_sparse,
}
