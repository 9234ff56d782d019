"""Norm evaluators for every space expression.

The Tsirelson norm is computed by dynamic programming over sub-ranges of
the support.  The defining supremum runs over admissible families of
successive finite sets, but replacing each set by its interval hull
never decreases a part's norm (suppression unconditionality) and
preserves admissibility, so it suffices to search interval partitions of
a tail of the support; dropping leading support points is what buys a
larger admissible part count.  This reduction is *tested* against the
set-family oracle `brute_force_tsirelson`, not assumed.

The modified norm searches disjoint families via a subset DP, and the
partition-scaled (gauge) norm uses the same interval DP without the
admissibility constraint.  Both recursions bottom out in coordinate
absolute values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Optional

from .caps import Caps, get_caps
from .errors import InputError
from .spaces import (
    Lp,
    LpN,
    ModifiedTsirelson,
    Schlumprecht,
    SpaceExpr,
    Sum,
    Tsirelson,
    TsirelsonDual,
    validate_vector,
)
from .vectors import SparseVec, inner_product

HALF = Fraction(1, 2)
ONE = Fraction(1)


# -- admissible families ------------------------------------------------


@dataclass(frozen=True)
class AdmissibleFamily:
    """Successive nonempty finite sets E_1 < ... < E_n with n <= min(E_1)."""

    parts: tuple[frozenset, ...]

    def __post_init__(self):
        if len(self.parts) < 2:
            raise InputError("an admissible family needs n >= 2 parts")
        if not is_admissible(self.parts):
            raise InputError("parts are not successive-admissible")


def is_successive(parts: Iterable[Iterable[int]]) -> bool:
    parts = [sorted(p) for p in parts]
    if any(not p for p in parts):
        return False
    return all(parts[i][-1] < parts[i + 1][0] for i in range(len(parts) - 1))


def is_admissible(parts: Iterable[Iterable[int]]) -> bool:
    parts = [sorted(p) for p in parts]
    return is_successive(parts) and len(parts) <= parts[0][0]


def _chunkings(seq: tuple, n: int):
    """Splits of a sorted tuple into n consecutive nonempty chunks."""
    m = len(seq)
    if n > m:
        return
    for cuts in combinations(range(1, m), n - 1):
        parts, prev = [], 0
        for cut in cuts + (m,):
            parts.append(seq[prev:cut])
            prev = cut
        yield parts


def _nonempty_subsets(seq: tuple):
    for r in range(1, len(seq) + 1):
        yield from combinations(seq, r)


# -- Tsirelson norm (interval DP) ----------------------------------------


class _TsirelsonDP:
    """Shared DP core; records decisions so a norming functional witnessing
    the value can be reconstructed on demand."""

    def __init__(self, x: SparseVec):
        self.pos = [p[0] for p in x.support()]
        self.coef = [x[(p,)] for p in self.pos]
        self.norm_memo: dict = {}
        self.dec: dict = {}
        self.sum_memo: dict = {}
        self.split: dict = {}

    def value(self) -> Fraction:
        if not self.pos:
            return Fraction(0)
        return self.norm(0, len(self.pos) - 1)

    def norm(self, i: int, j: int) -> Fraction:
        key = (i, j)
        if key in self.norm_memo:
            return self.norm_memo[key]
        best, arg = Fraction(0), None
        for t in range(i, j + 1):
            mag = abs(self.coef[t])
            if mag > best:
                best, arg = mag, ("coord", t)
        for s in range(i, j + 1):
            nmax = min(self.pos[s], j - s + 1)
            for n in range(2, nmax + 1):
                cand = HALF * self.best_sum(s, j, n)
                if cand > best:
                    best, arg = cand, ("family", s, n)
        self.norm_memo[key] = best
        self.dec[key] = arg
        return best

    def best_sum(self, s: int, j: int, n: int) -> Fraction:
        """Max of sum of part norms over splits of [s..j] into n chunks."""
        if n == 1:
            return self.norm(s, j)
        key = (s, j, n)
        if key in self.sum_memo:
            return self.sum_memo[key]
        best, arg = None, None
        for t in range(s, j - n + 2):
            cand = self.norm(s, t) + self.best_sum(t + 1, j, n - 1)
            if best is None or cand > best:
                best, arg = cand, t
        self.sum_memo[key] = best
        self.split[key] = arg
        return best

    def witness(self, i: int, j: int) -> tuple[dict, int]:
        """Functional coefficients and generation depth attaining norm(i, j)."""
        arg = self.dec[(i, j)]
        if arg[0] == "coord":
            t = arg[1]
            sign = ONE if self.coef[t] >= 0 else -ONE
            return {self.pos[t]: sign}, 0
        _, s, n = arg
        chunks, start = [], s
        for parts_left in range(n, 1, -1):
            t = self.split[(start, j, parts_left)]
            chunks.append((start, t))
            start = t + 1
        chunks.append((start, j))
        coeffs: dict = {}
        depth = 0
        for a, b in chunks:
            part, part_depth = self.witness(a, b)
            depth = max(depth, part_depth)
            for p, c in part.items():
                coeffs[p] = HALF * c
        return coeffs, depth + 1


def tsirelson_norm(x: SparseVec) -> Fraction:
    if x and x.depth != 1:
        raise InputError("the Tsirelson norm is defined on depth-1 vectors")
    return _TsirelsonDP(x).value()


def tsirelson_norm_witness(x: SparseVec) -> tuple[Fraction, dict, int]:
    """Norm together with coefficients and depth of an attaining functional."""
    dp = _TsirelsonDP(x)
    value = dp.value()
    if not x:
        return value, {}, 0
    coeffs, depth = dp.witness(0, len(dp.pos) - 1)
    return value, coeffs, depth


def brute_force_tsirelson(x: SparseVec, caps: Optional[Caps] = None) -> Fraction:
    """Test oracle: explicit recursion over all admissible families of
    successive nonempty sets.  No interval reduction, no memoization."""
    caps = caps or get_caps()
    if x and x.depth != 1:
        raise InputError("the Tsirelson norm is defined on depth-1 vectors")
    caps.check("tsirelson", len(x))

    def recurse(vec: dict) -> Fraction:
        supp = tuple(sorted(vec))
        best = max(abs(v) for v in vec.values())
        for chosen in _nonempty_subsets(supp):
            nmax = min(chosen[0], len(chosen))
            for n in range(2, nmax + 1):
                for parts in _chunkings(chosen, n):
                    total = Fraction(0)
                    for part in parts:
                        total += recurse({p: vec[p] for p in part})
                    cand = HALF * total
                    if cand > best:
                        best = cand
        return best

    if not x:
        return Fraction(0)
    return recurse({p[0]: v for p, v in x.items()})


# -- modified Tsirelson norm ----------------------------------------------


def modified_norm(x: SparseVec, caps: Optional[Caps] = None) -> Fraction:
    """Search over families of disjoint nonempty sets, every part with
    minimum >= the part count.  Exhaustive over set partitions of the
    eligible support, which caps the usable support size."""
    caps = caps or get_caps()
    if x and x.depth != 1:
        raise InputError("the modified norm is defined on depth-1 vectors")
    caps.check("modified", len(x))
    if not x:
        return Fraction(0)
    coef = {p[0]: v for p, v in x.items()}
    norm_memo: dict = {}
    part_memo: dict = {}

    def m_norm(S: tuple) -> Fraction:
        if S in norm_memo:
            return norm_memo[S]
        best = max(abs(coef[p]) for p in S)
        for n in range(2, len(S) + 1):
            eligible = tuple(p for p in S if p >= n)
            if len(eligible) < n:
                break
            cand = HALF * best_partition(eligible, n)
            if cand > best:
                best = cand
        norm_memo[S] = best
        return best

    def best_partition(V: tuple, n: int) -> Fraction:
        """Max of sum of part norms over partitions of V into n parts;
        the part containing min(V) is enumerated first to avoid
        revisiting permutations."""
        if n == 1:
            return m_norm(V)
        key = (V, n)
        if key in part_memo:
            return part_memo[key]
        head, rest = V[0], V[1:]
        best = None
        for r in range(0, len(rest) - n + 2):
            for extra in combinations(rest, r):
                first = (head,) + extra
                remaining = tuple(p for p in rest if p not in extra)
                cand = m_norm(first) + best_partition(remaining, n - 1)
                if best is None or cand > best:
                    best = cand
        part_memo[key] = best
        return best

    return m_norm(tuple(sorted(coef)))


# -- partition-scaled (gauge) norm -----------------------------------------


def gauge_norm(x: SparseVec, gauge) -> float:
    """Interval DP without the admissibility constraint; each family of l
    successive parts is scaled by 1/f(l).  Float-valued since the gauges
    are irrational."""
    if x and x.depth != 1:
        raise InputError("the gauge norm is defined on depth-1 vectors")
    if not x:
        return 0.0
    supp = x.support()
    coef = [float(x[p]) for p in supp]
    norm_memo: dict = {}
    sum_memo: dict = {}

    def norm(i: int, j: int) -> float:
        key = (i, j)
        if key in norm_memo:
            return norm_memo[key]
        best = max(abs(coef[t]) for t in range(i, j + 1))
        for l in range(2, j - i + 2):
            cand = best_sum(i, j, l) / gauge(l)
            if cand > best:
                best = cand
        norm_memo[key] = best
        return best

    def best_sum(i: int, j: int, l: int) -> float:
        if l == 1:
            return norm(i, j)
        key = (i, j, l)
        if key in sum_memo:
            return sum_memo[key]
        best = None
        for t in range(i, j - l + 2):
            cand = norm(i, t) + best_sum(t + 1, j, l - 1)
            if best is None or cand > best:
                best = cand
        sum_memo[key] = best
        return best

    return norm(0, len(supp) - 1)


# -- finite lp norms ---------------------------------------------------------


def lp_norm(values, p) -> Fraction | float:
    """lp norm of a list of nonnegative values; exact for p in {1, inf}
    and for singletons, float otherwise."""
    values = list(values)
    if not values:
        return Fraction(0)
    if p is None:
        return max(values)
    if len(values) == 1:
        return values[0]
    if p == 1:
        total = values[0]
        for v in values[1:]:
            total = total + v
        return total
    expo = float(p)
    return sum(float(v) ** expo for v in values) ** (1.0 / expo)


# -- the engine ---------------------------------------------------------------


class NormEngine:
    """Memoizing norm evaluator bound to one space expression.

    Single-writer: the memo mutates, so share one instance per thread.
    Distinct instances over the same space produce identical values.
    """

    def __init__(self, space: SpaceExpr, caps: Optional[Caps] = None):
        self.space = space
        self.caps = caps or get_caps()
        self._memo: dict[SparseVec, Fraction | float] = {}
        self._outer: Optional[NormEngine] = None
        self._inner: dict[int, NormEngine] = {}

    def norm(self, x: SparseVec) -> Fraction | float:
        if x in self._memo:
            return self._memo[x]
        validate_vector(self.space, x)
        value = self._evaluate(x)
        self._memo[x] = value
        return value

    def _evaluate(self, x: SparseVec):
        space = self.space
        if isinstance(space, (Lp, LpN)):
            return lp_norm((abs(v) for v in dict(x.items()).values()), space.p)
        if isinstance(space, Tsirelson):
            return tsirelson_norm(x)
        if isinstance(space, ModifiedTsirelson):
            return modified_norm(x, self.caps)
        if isinstance(space, Schlumprecht):
            return gauge_norm(x, space.gauge)
        if isinstance(space, TsirelsonDual):
            from .dual import dual_norm

            return dual_norm(x, self.caps).value
        if isinstance(space, Sum):
            return self._sum_norm(space, x)
        raise InputError(f"no norm evaluator for {space!r}")

    def _sum_norm(self, space: Sum, x: SparseVec):
        if not x:
            return Fraction(0)
        inexact = False
        outer_entries = {}
        for k, part in x.leading_groups().items():
            engine = self._inner_engine(space, k)
            value = engine.norm(part)
            if isinstance(value, float):
                inexact = True
                value = Fraction(value)
            if value:
                outer_entries[(k,)] = value
        if self._outer is None:
            self._outer = NormEngine(space.outer, self.caps)
        value = self._outer.norm(SparseVec(outer_entries))
        return float(value) if inexact and isinstance(value, Fraction) else value

    def _inner_engine(self, space: Sum, k: int) -> "NormEngine":
        if k not in self._inner:
            self._inner[k] = NormEngine(space.inner_at(k), self.caps)
        return self._inner[k]


# -- norming set of the Tsirelson norm ---------------------------------------
#
# The minimal set K with {±e_j*} ⊆ K that is closed under
# f = (f_1 + ... + f_n)/2 over successive supports with n <= min supp(f_1).
# Generated bottom-up by exact support; every coefficient is ±2^-d.


@dataclass(frozen=True)
class Functional:
    """Element of the norming set: rational coefficients, generation depth."""

    coefficients: SparseVec
    depth: int

    def __call__(self, y: SparseVec) -> Fraction:
        return inner_product(self.coefficients, y)


_exact_cache: dict[tuple, list[tuple[tuple, int]]] = {}
_maxsum_cache: dict[tuple, Fraction] = {}


def _exact_functionals(support: tuple) -> list[tuple[tuple, int]]:
    """All functionals with support exactly `support`, as
    (sorted (position, coefficient) items, depth), deduplicated."""
    if support in _exact_cache:
        return _exact_cache[support]
    if len(support) == 1:
        p = support[0]
        out = [(((p, ONE),), 0), (((p, -ONE),), 0)]
    else:
        found: dict[tuple, int] = {}
        nmax = min(support[0], len(support))
        for n in range(2, nmax + 1):
            for parts in _chunkings(support, n):
                pools = [_exact_functionals(part) for part in parts]
                for combo in product(*pools):
                    items = []
                    depth = 0
                    for part_items, part_depth in combo:
                        depth = max(depth, part_depth)
                        items.extend((p, HALF * c) for p, c in part_items)
                    key = tuple(items)
                    prior = found.get(key)
                    if prior is None or depth + 1 < prior:
                        found[key] = depth + 1
        out = [(k, d) for k, d in found.items()]
    _exact_cache[support] = out
    # empty when the support contains 1 and has size >= 2: no composite
    # family satisfies the part-count bound there
    _maxsum_cache[support] = (
        max(sum(c for _, c in items) for items, _ in out) if out else None
    )
    return out


def norming_set(S: Iterable[int], caps: Optional[Caps] = None) -> list[Functional]:
    """The finite deduplicated set K_S; max_{f in K_S} f(y) equals the
    Tsirelson norm for every y supported in S."""
    caps = caps or get_caps()
    S = tuple(sorted(set(int(s) for s in S)))
    if any(s < 1 for s in S):
        raise InputError("norming-set coordinates must be >= 1")
    caps.check("tsirelson", len(S))
    out = []
    for A in _nonempty_subsets(S):
        for items, depth in _exact_functionals(A):
            coeffs = SparseVec({(p,): c for p, c in items})
            out.append(Functional(coeffs, depth))
    return out


def norming_set_max(y: SparseVec, caps: Optional[Caps] = None) -> Fraction:
    """max_{f in K_supp(y)} f(y), without materializing Functional objects.

    For 0/1 vectors this is a table lookup of precomputed coefficient
    sums; otherwise each candidate functional is paired with y exactly.
    """
    caps = caps or get_caps()
    if not y:
        return Fraction(0)
    if y.depth != 1:
        raise InputError("norming-set evaluation needs a depth-1 vector")
    supp = tuple(y.leading_support())
    caps.check("tsirelson", len(supp))
    coef = {p[0]: v for p, v in y.items()}
    if all(v == 1 for v in coef.values()):
        best = Fraction(0)
        for A in _nonempty_subsets(supp):
            _exact_functionals(A)
            cand = _maxsum_cache[A]
            if cand is not None and cand > best:
                best = cand
        return best
    best = None
    for A in _nonempty_subsets(supp):
        for items, _depth in _exact_functionals(A):
            value = sum((c * coef[p] for p, c in items), Fraction(0))
            if best is None or value > best:
                best = value
    return best
