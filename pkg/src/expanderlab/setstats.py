"""Exact set statistics over F_p.

Sumsets, product sets, polynomial images, the difference representation
function r_{A-B} with its moment energies, dyadic level structure, the
normalized fourth-moment statistic d4, and value histograms of
three-variable polynomials.  Every count here is exact: the fast paths
are integer-only (numpy sort/bincount, big-integer convolution) and the
slow paths are literal dictionaries of pairs.

Three interchangeable counting paths back r_{A-B}:

* plain dict counting for small pair counts,
* an exact dense cyclic convolution (indicator vectors packed into big
  integers, multiplied via gmpy2) when p <= 2**20 and the pair count
  dwarfs p,
* vectorized outer differences + sort/run-length encoding otherwise.

The paths are cross-checked against each other in the test suite.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import gmpy2
import numpy as np

from .errors import BudgetExceededError, UniverseTooLargeError
from .fieldset import FpSet, PrimeField, require_same_field
from .quadpoly import QuadPoly2, QuadPoly3, eval2, eval3
from .rng import derive_seed, sample_distinct

_SMALL_PAIRS = 1 << 16
_DENSE_P_MAX = 1 << 20
_PAIRS_HARD_CAP = 1 << 28
_NUMPY_MUL_MAX_P = 1 << 30          # keeps stepwise-reduced products inside int64
_TRIPLE_BUDGET = 10**9
_D4_UNIVERSE_MAX = 20

EXACT_MODE = "exact"
HEURISTIC_MODE = "heuristic-lower-bound"


# ---------------------------------------------------------------------------
# pairwise set operations
# ---------------------------------------------------------------------------

def _check_pair_budget(n: int, m: int) -> None:
    if n * m > _PAIRS_HARD_CAP:
        raise BudgetExceededError(f"{n}x{m} pair table exceeds the {_PAIRS_HARD_CAP} cap")


def sumset(A: FpSet, B: FpSet) -> FpSet:
    """A + B = {a + b mod p}."""
    field = require_same_field(A, B)
    p = field.p
    n, m = len(A), len(B)
    if n == 0 or m == 0:
        return FpSet(field, ())
    if n * m <= _SMALL_PAIRS:
        return FpSet(field, {(a + b) % p for a in A.elements for b in B.elements})
    _check_pair_budget(n, m)
    # sums stay below 2**62 for any permitted modulus, so int64 is always safe
    a = A.as_array()
    s = (a[:, None] + B.as_array()[None, :]).ravel()
    s[s >= p] -= p
    return FpSet(field, np.unique(s).tolist())


def product_set(A: FpSet, B: FpSet) -> FpSet:
    """A * B = {a * b mod p}."""
    field = require_same_field(A, B)
    p = field.p
    n, m = len(A), len(B)
    if n == 0 or m == 0:
        return FpSet(field, ())
    if n * m <= _SMALL_PAIRS or p > _NUMPY_MUL_MAX_P:
        return FpSet(field, {a * b % p for a in A.elements for b in B.elements})
    _check_pair_budget(n, m)
    prod = (A.as_array()[:, None] * B.as_array()[None, :]) % p
    return FpSet(field, np.unique(prod).tolist())


def neg_set(A: FpSet) -> FpSet:
    p = A.field.p
    return FpSet(A.field, ((p - a) % p for a in A.elements), reduce=True)


def difference_set(A: FpSet, B: FpSet) -> FpSet:
    """A - B, computed as the support of r_{A-B}."""
    return rep_function(A, B).support()


def image2(f: QuadPoly2, A: FpSet, B: FpSet) -> FpSet:
    """The exact image {f(a, b) : a in A, b in B}."""
    field = require_same_field(A, B)
    if f.field.p != field.p:
        from .errors import FieldMismatchError

        raise FieldMismatchError("polynomial and sets live in different fields")
    p = field.p
    n, m = len(A), len(B)
    if n == 0 or m == 0:
        return FpSet(field, ())
    if n * m <= _SMALL_PAIRS or p > _NUMPY_MUL_MAX_P:
        return FpSet(field, {eval2(f, a, b) for a in A.elements for b in B.elements})
    y = B.as_array()
    # per-row vectorization keeps peak memory at one row of the pair grid
    yy = (f.b * (y * y % p) + f.e * y + f.g0) % p
    out: set[int] = set()
    for a in A.elements:
        row = (yy + (f.a * a * a + f.d * a) % p + (f.c * a % p) * y) % p
        out.update(np.unique(row).tolist())
    return FpSet(field, out)


# ---------------------------------------------------------------------------
# the representation function r_{A-B} and its moments
# ---------------------------------------------------------------------------

class RepProfile:
    """r_{A-B} stored sparsely: parallel arrays of residues and multiplicities.

    Invariants: sum of multiplicities equals |A|*|B|, and every stored
    multiplicity lies in (0, min(|A|, |B|)].
    """

    __slots__ = ("field", "values", "multiplicities", "size_a", "size_b")

    def __init__(self, field, values, multiplicities, size_a, size_b):
        self.field = field
        self.values = np.asarray(values, dtype=np.int64)
        self.multiplicities = np.asarray(multiplicities, dtype=np.int64)
        self.size_a = size_a
        self.size_b = size_b
        total = int(self.multiplicities.sum()) if len(self.multiplicities) else 0
        if total != size_a * size_b:
            raise AssertionError(
                f"representation mass {total} != |A||B| = {size_a * size_b}"
            )

    def __len__(self) -> int:
        return len(self.values)

    def total(self) -> int:
        return self.size_a * self.size_b

    def max_multiplicity(self) -> int:
        return int(self.multiplicities.max()) if len(self.multiplicities) else 0

    def r(self, x: int) -> int:
        i = int(np.searchsorted(self.values, x))
        if i < len(self.values) and int(self.values[i]) == x:
            return int(self.multiplicities[i])
        return 0

    def counts(self) -> dict[int, int]:
        return {int(v): int(c) for v, c in zip(self.values, self.multiplicities)}

    def support(self) -> FpSet:
        return FpSet(self.field, self.values.tolist())

    def moment(self, k: int) -> int:
        """Sum of r(x)**k over the support, exact."""
        hist = np.bincount(self.multiplicities)
        return _hist_moment(hist, k)


def _hist_moment(hist, k: int) -> int:
    total = 0
    for mult, ways in enumerate(hist):
        if mult and ways:
            total += int(ways) * mult**k
    return total


def _diff_pairs_sorted(A: FpSet, B: FpSet) -> np.ndarray:
    """All differences a-b mod p as one sorted array; int32 when p allows."""
    p = A.field.p
    if len(A) * len(B) > _PAIRS_HARD_CAP:
        raise BudgetExceededError(
            f"{len(A)}x{len(B)} difference table exceeds the {_PAIRS_HARD_CAP} cap"
        )
    dtype = np.int32 if p < (1 << 31) else np.int64
    a = A.as_array(dtype)
    b = B.as_array(dtype)
    d = (a[:, None] - b[None, :]).ravel()
    d[d < 0] += dtype(p)
    d.sort()
    return d


def _run_lengths(sorted_arr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = len(sorted_arr)
    bounds = np.empty(0, dtype=np.int64)
    if n:
        change = np.flatnonzero(sorted_arr[1:] != sorted_arr[:-1]) + 1
        bounds = np.concatenate(([0], change, [n]))
    values = sorted_arr[bounds[:-1]] if n else sorted_arr
    counts = np.diff(bounds) if n else np.empty(0, dtype=np.int64)
    return values.astype(np.int64), counts


def _dense_rep_array(A: FpSet, B: FpSet) -> np.ndarray:
    """Exact dense r_{A-B} over [0, p) via big-integer polynomial product.

    Indicators are packed as base-2**32 digits; every convolution
    coefficient is < 2**32 (it is at most min(|A|, |B|) <= 2**20), so no
    digit ever carries.
    """
    p = A.field.p
    buf_a = bytearray(4 * p)
    for a in A.elements:
        buf_a[4 * a] = 1
    buf_b = bytearray(4 * p)
    for b in B.elements:
        buf_b[4 * ((p - b) % p)] = 1
    xa = gmpy2.mpz(int.from_bytes(bytes(buf_a), "little"))
    xb = gmpy2.mpz(int.from_bytes(bytes(buf_b), "little"))
    raw = int(xa * xb).to_bytes(8 * p, "little")
    coeffs = np.frombuffer(raw, dtype="<u4").astype(np.int64)
    folded = coeffs[:p].copy()
    folded[: p - 1] += coeffs[p : 2 * p - 1]
    return folded


def rep_function(A: FpSet, B: FpSet) -> RepProfile:
    """r_{A-B}(x) = #{(a, b) : a - b = x mod p}, all nonzero entries."""
    field = require_same_field(A, B)
    p = field.p
    n, m = len(A), len(B)
    if n == 0 or m == 0:
        return RepProfile(field, [], [], n, m)
    if n * m <= _SMALL_PAIRS:
        counter = Counter((a - b) % p for a in A.elements for b in B.elements)
        items = sorted(counter.items())
        return RepProfile(field, [x for x, _ in items], [c for _, c in items], n, m)
    if p <= _DENSE_P_MAX and n * m > 4 * p:
        dense = _dense_rep_array(A, B)
        nz = np.flatnonzero(dense)
        return RepProfile(field, nz, dense[nz], n, m)
    values, counts = _run_lengths(_diff_pairs_sorted(A, B))
    return RepProfile(field, values, counts, n, m)


def _multiplicity_histogram(A: FpSet, B: FpSet) -> np.ndarray:
    """hist[k] = #{x : r_{A-B}(x) = k}; avoids materializing the support."""
    field = require_same_field(A, B)
    p = field.p
    n, m = len(A), len(B)
    if n == 0 or m == 0:
        return np.zeros(1, dtype=np.int64)
    if n * m <= _SMALL_PAIRS:
        counter = Counter((a - b) % p for a in A.elements for b in B.elements)
        return np.bincount(list(counter.values()))
    if p <= _DENSE_P_MAX and n * m > 4 * p:
        dense = _dense_rep_array(A, B)
        hist = np.bincount(dense)
        hist[0] = 0
        return hist
    d = _diff_pairs_sorted(A, B)
    _, counts = _run_lengths(d)
    return np.bincount(counts)


def energy2(A: FpSet, B: FpSet) -> int:
    """Second-moment additive energy: number of (a1,a2,b1,b2) with a1-b1 = a2-b2."""
    return _hist_moment(_multiplicity_histogram(A, B), 2)


def energy4(A: FpSet, B: FpSet) -> int:
    """Fourth-moment additive energy: 8-tuples sharing one common difference."""
    return _hist_moment(_multiplicity_histogram(A, B), 4)


# ---------------------------------------------------------------------------
# dyadic level structure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DyadicRow:
    t: int
    size_d: int
    mass: int  # size_d * t**4


@dataclass(frozen=True)
class DyadicProfile:
    rows: tuple[DyadicRow, ...]
    argmax: DyadicRow | None

    def max_mass(self) -> int:
        return self.argmax.mass if self.argmax else 0


def dyadic_profile(A: FpSet, B: FpSet) -> DyadicProfile:
    """Rows (t, |D_t|, |D_t|*t^4) for t = 1, 2, 4, ... up to max r.

    |D_t| counts x with r_{A-B}(x) >= t.  The argmax row maximizes the
    mass; ties resolve to the smallest t.
    """
    hist = _multiplicity_histogram(A, B)
    max_r = len(hist) - 1
    while max_r > 0 and hist[max_r] == 0:
        max_r -= 1
    if max_r == 0:
        return DyadicProfile((), None)
    tail = np.cumsum(hist[::-1])[::-1]  # tail[k] = #{x : r(x) >= k}
    rows = []
    best = None
    t = 1
    while t <= max_r:
        size_d = int(tail[t])
        mass = size_d * t**4
        row = DyadicRow(t, size_d, mass)
        rows.append(row)
        if best is None or mass > best.mass:
            best = row
        t *= 2
    return DyadicProfile(tuple(rows), best)


def level_set(A: FpSet, B: FpSet, t: int) -> FpSet:
    """D_t = {x : r_{A-B}(x) >= t}."""
    if t < 1:
        raise ValueError(f"threshold must be >= 1, got {t}")
    rep = rep_function(A, B)
    keep = rep.values[rep.multiplicities >= t]
    return FpSet(A.field, keep.tolist())


# ---------------------------------------------------------------------------
# the normalized fourth-moment statistic d4
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class D4Result:
    """max (or best-found) value of energy4(A, B) / (|A| * |B|^3) over B."""

    value: Fraction
    maximizer_b: FpSet
    mode: str  # EXACT_MODE or HEURISTIC_MODE


def d4_exact(A: FpSet, universe: FpSet) -> D4Result:
    """Exact supremum of energy4(A, B) / (|A|*|B|^3) over nonempty B <= universe.

    Enumerates all 2^|universe| - 1 subsets with a Gray-code walk,
    updating the fourth moment incrementally.  Ties break toward the
    lexicographically smallest B.
    """
    field = require_same_field(A, universe)
    if len(universe) > _D4_UNIVERSE_MAX:
        raise UniverseTooLargeError(
            f"universe of {len(universe)} elements exceeds the {_D4_UNIVERSE_MAX}-element cap"
        )
    if len(A) == 0:
        raise ValueError("d4 is undefined for empty A")
    p = field.p
    univ = universe.elements
    k = len(univ)
    n_a = len(A)
    diff_index: dict[int, int] = {}
    idx_lists: list[list[int]] = []
    for u in univ:
        lst = []
        for a in A.elements:
            x = (a - u) % p
            lst.append(diff_index.setdefault(x, len(diff_index)))
        idx_lists.append(lst)
    pow4 = [v**4 for v in range(n_a + 1)]
    r = [0] * len(diff_index)
    in_b = [False] * k
    e4 = 0
    size_b = 0
    best_e4 = best_den = -1  # ratio e4 / (n_a * size_b^3), compared cross-multiplied
    best_elems: tuple[int, ...] | None = None
    for i in range(1, 1 << k):
        bit = (i & -i).bit_length() - 1
        if in_b[bit]:
            in_b[bit] = False
            size_b -= 1
            for j in idx_lists[bit]:
                v = r[j]
                e4 += pow4[v - 1] - pow4[v]
                r[j] = v - 1
        else:
            in_b[bit] = True
            size_b += 1
            for j in idx_lists[bit]:
                v = r[j]
                e4 += pow4[v + 1] - pow4[v]
                r[j] = v + 1
        den = size_b**3
        if best_elems is None or e4 * best_den > best_e4 * den:
            best_e4, best_den = e4, den
            best_elems = tuple(u for u, inside in zip(univ, in_b) if inside)
        elif e4 * best_den == best_e4 * den:
            elems = tuple(u for u, inside in zip(univ, in_b) if inside)
            if elems < best_elems:
                best_elems = elems
    value = Fraction(best_e4, n_a * best_den)
    return D4Result(value, FpSet(field, best_elems), EXACT_MODE)


DEFAULT_D4_STRATEGIES = ("self", "sumset", "diffset", "levelsets", "aps", "random")


def _ratio(A: FpSet, B: FpSet) -> Fraction:
    return Fraction(energy4(A, B), len(A) * len(B) ** 3)


def d4_search(A: FpSet, strategies=None, seed: int = 0) -> D4Result:
    """Heuristic lower bound for d4: best ratio over a structured candidate list.

    Candidates: A itself (always), A+A, A-A, the dyadic level sets of
    r_{A-A}, arithmetic progressions anchored at min(A) with popular
    difference steps, and seeded random subsets.  The true supremum
    ranges over all nonempty B, so the result is only a lower bound.
    """
    if len(A) == 0:
        raise ValueError("d4 is undefined for empty A")
    field = A.field
    p = field.p
    n_a = len(A)
    chosen = set(strategies) if strategies is not None else set(DEFAULT_D4_STRATEGIES)
    candidates: dict[tuple[int, ...], FpSet] = {}

    def add(B: FpSet) -> None:
        if len(B):
            candidates.setdefault(B.elements, B)

    add(A)
    if "sumset" in chosen:
        add(sumset(A, A))
    if "diffset" in chosen:
        add(difference_set(A, A))
    if "levelsets" in chosen:
        for row in dyadic_profile(A, A).rows:
            add(level_set(A, A, row.t))
    if "aps" in chosen and n_a >= 2:
        rep = rep_function(A, A)
        order = sorted(
            (int(-c), int(v))
            for v, c in zip(rep.values, rep.multiplicities)
            if int(v) != 0
        )
        start = min(A.elements)
        lengths = {isqrt(n_a), n_a, min(isqrt(n_a**3), p)}
        for _, step in order[:3]:
            for length in lengths:
                if length >= 1:
                    add(FpSet(field, ((start + i * step) % p for i in range(length)), reduce=True))
    if "random" in chosen:
        sizes = {n_a, min(isqrt(n_a**3), p)}
        stream = 0
        for size in sorted(sizes):
            if size < 1:
                continue
            for _ in range(4):
                add(FpSet(field, sample_distinct(p, size, derive_seed(seed, stream))))
                stream += 1

    best_b = None
    best_ratio = None
    for elems in sorted(candidates):
        B = candidates[elems]
        ratio = _ratio(A, B)
        if best_ratio is None or ratio > best_ratio:
            best_ratio, best_b = ratio, B
    return D4Result(best_ratio, best_b, HEURISTIC_MODE)


# ---------------------------------------------------------------------------
# three-variable value histograms
# ---------------------------------------------------------------------------

class Energy3Result:
    """Value histogram of F over A x B x C and the collision count E = sum N(t)^2."""

    __slots__ = ("values", "counts", "energy", "total")

    def __init__(self, values, counts, total):
        self.values = np.asarray(values, dtype=np.int64)
        self.counts = np.asarray(counts, dtype=np.int64)
        self.total = total
        if int(self.counts.sum() if len(self.counts) else 0) != total:
            raise AssertionError("histogram mass does not match the triple count")
        self.energy = int(np.dot(self.counts, self.counts)) if len(self.counts) else 0

    def histogram(self) -> dict[int, int]:
        return {int(v): int(c) for v, c in zip(self.values, self.counts)}

    def support_size(self) -> int:
        return len(self.values)


def _value_histogram(F: QuadPoly3, U: FpSet, V: FpSet, W: FpSet):
    field = require_same_field(U, V, W)
    p = field.p
    total = len(U) * len(V) * len(W)
    if total > _TRIPLE_BUDGET:
        raise BudgetExceededError(f"{total} triple evaluations exceed the 10^9 budget")
    if total == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64), 0
    if total <= (1 << 15) or p > _NUMPY_MUL_MAX_P:
        counter = Counter(
            eval3(F, u, v, w) for u in U.elements for v in V.elements for w in W.elements
        )
        items = sorted(counter.items())
        return (
            np.asarray([t for t, _ in items], dtype=np.int64),
            np.asarray([c for _, c in items], dtype=np.int64),
            total,
        )
    v = V.as_array()
    w = W.as_array()
    vv, ww = np.meshgrid(v, w, indexing="ij")
    vv = vv.ravel()
    ww = ww.ravel()
    base = (
        F.cyy * (vv * vv % p) + F.czz * (ww * ww % p)
        + F.cyz * (vv * ww % p) + F.cy * vv + F.cz * ww
    ) % p
    dense = p <= (1 << 24)
    acc = np.zeros(p, dtype=np.int64) if dense else None
    counter = Counter()
    for u in U.elements:
        cu = (F.cxx * u * u + F.cx * u + F.c0) % p
        row = (base + cu + (F.cxy * u % p) * vv + (F.cxz * u % p) * ww) % p
        if dense:
            acc += np.bincount(row, minlength=p)
        else:
            vals, cnts = np.unique(row, return_counts=True)
            for t, c in zip(vals.tolist(), cnts.tolist()):
                counter[t] += c
    if dense:
        nz = np.flatnonzero(acc)
        return nz, acc[nz], total
    items = sorted(counter.items())
    return (
        np.asarray([t for t, _ in items], dtype=np.int64),
        np.asarray([c for _, c in items], dtype=np.int64),
        total,
    )


def energy3(F: QuadPoly3, A: FpSet, B: FpSet, C: FpSet) -> Energy3Result:
    """Histogram of F over A x B x C plus E = number of value-colliding triple pairs."""
    values, counts, total = _value_histogram(F, A, B, C)
    return Energy3Result(values, counts, total)


def count_solutions(F: QuadPoly3, U: FpSet, V: FpSet, W: FpSet, T: FpSet) -> int:
    """#{(u, v, w, t) in U x V x W x T : F(u, v, w) = t}."""
    values, counts, _total = _value_histogram(F, U, V, W)
    if len(values) == 0 or len(T) == 0:
        return 0
    targets = T.as_array()
    pos = np.searchsorted(values, targets)
    pos_clipped = np.minimum(pos, len(values) - 1)
    mask = values[pos_clipped] == targets
    return int(counts[pos_clipped[mask]].sum())
