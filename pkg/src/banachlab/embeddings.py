"""Explicit embeddings of Hamming graphs and their measured distortion.

Three constructions are provided: the coordinatewise map m -> sum_i
e^(i)_{m_i} into the width-k lp-sum of dual-Tsirelson copies, the
array-driven map m -> sum_i x^(i)_{k m_i + i}, and the branch vectors of
the nested lq-of-lp tree spaces.  Distortion is measured exactly by
enumerating all pairs of a restricted graph [n]^k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Mapping, Optional, Sequence, Union

from .caps import Caps, get_caps
from .errors import CapExceeded, InputError
from .hamming import (
    HammingSpace,
    KSubset,
    hamming_distance,
    johnson_distance,
    make_ksubset,
    _binomial,
)
from .norms import NormEngine
from .spaces import LpN, PValue, Repeat, SpaceExpr, Sum, TsirelsonDual
from .vectors import SparseVec

ONE = Fraction(1)


# -- the lp^k(T*) embedding ----------------------------------------------


def prop73_space(p: PValue, k: int) -> SpaceExpr:
    if p is None:
        raise InputError("the coordinatewise embedding needs finite p")
    return Sum(LpN(p, k), Repeat(TsirelsonDual()))


def prop73_embed(p: PValue, k: int, m: KSubset) -> SparseVec:
    """Entry 1 at path i.m_i for i = 1..k."""
    if p is None:
        raise InputError("the coordinatewise embedding needs finite p")
    m = make_ksubset(m)
    if len(m) != k:
        raise InputError(f"expected a {k}-subset")
    return SparseVec({(i + 1, m[i]): ONE for i in range(k)})


# -- array embeddings -------------------------------------------------------


def array_embed(array: Mapping[tuple[int, int], SparseVec], k: int, m: KSubset) -> SparseVec:
    """sum_i x^(i)_{k m_i + i} for the given array of vectors."""
    m = make_ksubset(m)
    if len(m) != k:
        raise InputError(f"expected a {k}-subset")
    total = SparseVec()
    for i in range(1, k + 1):
        key = (i, k * m[i - 1] + i)
        if key not in array:
            raise InputError(f"array entry {key} is missing")
        total = total + array[key]
    return total


# -- nested lq-of-lp tree spaces ----------------------------------------------
#
# The level-k tree space is R +_q (width-W lp-sum of level-(k-1) spaces).
# The scalar summand is represented isometrically as the all-ones basis
# direction of the first copy, which keeps every coordinate path at the
# uniform depth 2k + 1.


def xpq_space(p: PValue, q: PValue, k: int, width: int = 8) -> SpaceExpr:
    if k < 0:
        raise InputError("tree height must be >= 0")
    space: SpaceExpr = LpN(q, 1)
    for _ in range(k):
        level = Sum(LpN(p, width), Repeat(space))
        space = Sum(LpN(q, 2), Repeat(level))
    return space


def _node_path(k: int, gaps: Sequence[int]) -> tuple[int, ...]:
    """Path of the tree vector at the node described by copy gaps."""
    if not gaps:
        return (1,) * (2 * k + 1)
    return (2, gaps[0]) + _node_path(k - 1, gaps[1:])


def xpq_branch_vectors(
    p: PValue, q: PValue, k: int, m: KSubset, width: int = 8
) -> list[SparseVec]:
    """The k branch vectors at nodes m|1, ..., m|k; each is a unit basis
    vector of the truncated tree space, so the truncation is exact as
    long as every copy index fits the width."""
    m = make_ksubset(m)
    if len(m) != k:
        raise InputError(f"expected a {k}-subset")
    gaps = [m[0]] + [b - a for a, b in zip(m, m[1:])]
    for gap in gaps:
        if gap > width:
            raise CapExceeded(
                f"branch copy index {gap} exceeds the truncation width {width}"
            )
    return [
        SparseVec({_node_path(k, gaps[: n + 1]): ONE}) for n in range(k)
    ]


# -- embedding specifications ---------------------------------------------


@dataclass(frozen=True)
class Prop73:
    p: PValue
    k: int


@dataclass(frozen=True)
class ArrayEmbed:
    array: Mapping[tuple[int, int], SparseVec] = field(hash=False)
    k: int = 1
    space: SpaceExpr = None

    def __post_init__(self):
        if self.space is None:
            raise InputError("an array embedding needs its ambient space")
        engine = NormEngine(self.space)
        for key, vec in self.array.items():
            if engine.norm(vec) != 1:
                raise InputError(f"array entry {key} is not normalized")


@dataclass(frozen=True)
class XpqBranch:
    p: PValue
    q: PValue
    k: int
    width: int = 8


EmbeddingSpec = Union[Prop73, ArrayEmbed, XpqBranch]


def ambient_space(spec: EmbeddingSpec) -> SpaceExpr:
    if isinstance(spec, Prop73):
        return prop73_space(spec.p, spec.k)
    if isinstance(spec, ArrayEmbed):
        return spec.space
    if isinstance(spec, XpqBranch):
        return xpq_space(spec.p, spec.q, spec.k, spec.width)
    raise InputError(f"unknown embedding spec {spec!r}")


def embed(spec: EmbeddingSpec, m: KSubset) -> SparseVec:
    if isinstance(spec, Prop73):
        return prop73_embed(spec.p, spec.k, m)
    if isinstance(spec, ArrayEmbed):
        return array_embed(spec.array, spec.k, m)
    if isinstance(spec, XpqBranch):
        total = SparseVec()
        for vec in xpq_branch_vectors(spec.p, spec.q, spec.k, m, spec.width):
            total = total + vec
        return total
    raise InputError(f"unknown embedding spec {spec!r}")


# -- distortion measurement ---------------------------------------------------


@dataclass(frozen=True)
class DistortionReport:
    lower: Fraction | float  # min ||f(a) - f(b)|| / d(a, b)
    upper: Fraction | float  # max ratio
    distortion: Fraction | float  # upper / lower
    argmin: tuple[KSubset, KSubset]
    argmax: tuple[KSubset, KSubset]
    pairs: int

    def to_dict(self) -> dict:
        from .report import encode_value

        return {
            "lower": encode_value(self.lower),
            "upper": encode_value(self.upper),
            "distortion": encode_value(self.distortion),
            "argmin": [list(self.argmin[0]), list(self.argmin[1])],
            "argmax": [list(self.argmax[0]), list(self.argmax[1])],
            "pairs": self.pairs,
        }


def measure_distortion(
    spec: EmbeddingSpec,
    metric: str,
    n: int,
    caps: Optional[Caps] = None,
    metric_space: Optional[SpaceExpr] = None,
    budget: int = 10**6,
) -> DistortionReport:
    """Exact min and max of ||f(a) - f(b)|| / d(a, b) over distinct pairs
    of [n]^k.  `metric` is hamming, johnson, or d_e (with a generator)."""
    caps = caps or get_caps()
    k = spec.k
    count = _binomial(n, k)
    if count * count > budget:
        raise CapExceeded(
            f"pair budget exceeded: C({n},{k})^2 = {count * count} > {budget}"
        )
    if metric == "hamming":
        dist = lambda a, b: Fraction(hamming_distance(a, b))
    elif metric == "johnson":
        dist = johnson_distance
    elif metric == "d_e":
        if metric_space is None:
            raise InputError("metric d_e needs a generator space")
        hs = HammingSpace(k, metric_space, caps)
        dist = hs.distance
    else:
        raise InputError(f"unknown metric {metric!r}")

    engine = NormEngine(ambient_space(spec), caps)
    points = [make_ksubset(c) for c in combinations(range(1, n + 1), k)]
    images = {m: embed(spec, m) for m in points}
    lower = upper = None
    argmin = argmax = None
    pairs = 0
    for i, a in enumerate(points):
        for b in points[i + 1:]:
            d = dist(a, b)
            if d == 0:
                raise InputError(f"metric vanishes on distinct points {a}, {b}")
            value = engine.norm(images[a] - images[b])
            ratio = value / d
            pairs += 1
            if lower is None or ratio < lower:
                lower, argmin = ratio, (a, b)
            if upper is None or ratio > upper:
                upper, argmax = ratio, (a, b)
    if lower is None:
        raise InputError("need at least two points to measure distortion")
    if lower == 0:
        raise InputError(f"embedding collapses the pair {argmin}")
    return DistortionReport(lower, upper, upper / lower, argmin, argmax, pairs)


# -- finite linfty equivalence constants ----------------------------------


def ell_infty_equivalence(
    vectors: Sequence[SparseVec],
    space: SpaceExpr,
    caps: Optional[Caps] = None,
    max_n: int = 12,
):
    """Certified constants (c_low, c_up) with

        c_low * max|a_i|  <=  ||sum a_i x_i||  <=  c_up * max|a_i|.

    c_up is the max over sign patterns (the sup over [-1,1]^n of a convex
    function is attained at vertices, and the bases are unconditional);
    c_low = min_i ||x_i|| comes from the suppression bound, which needs
    pairwise disjoint supports.
    """
    caps = caps or get_caps()
    n = len(vectors)
    if n == 0 or n > max_n:
        raise InputError(f"need between 1 and {max_n} vectors, got {n}")
    seen: set = set()
    for vec in vectors:
        paths = set(vec.support())
        if seen & paths:
            raise InputError("vectors must have pairwise disjoint supports")
        seen |= paths
    engine = NormEngine(space, caps)
    c_low = min(engine.norm(v) for v in vectors)
    c_up = None
    for signs in product((ONE, -ONE), repeat=n - 1):
        total = vectors[0]
        for sign, vec in zip(signs, vectors[1:]):
            total = total + sign * vec
        value = engine.norm(total)
        if c_up is None or value > c_up:
            c_up = value
    return c_low, c_up


# -- plegma families ------------------------------------------------------


def is_plegma(families: Sequence[Sequence[int]]) -> bool:
    """The full interleaving chain s^(1)_1 < ... < s^(k)_1 < s^(1)_2 < ..."""
    if not families:
        raise InputError("a plegma needs at least one family")
    length = len(families[0])
    if any(len(f) != length for f in families):
        raise InputError("plegma families must have equal lengths")
    if length == 0:
        raise InputError("plegma families must be nonempty")
    chain = [f[j] for j in range(length) for f in families]
    return all(a < b for a, b in zip(chain, chain[1:]))


def plegma_extend(
    k: int, i_list: Sequence[int], l_list: Sequence[int], N: int
) -> list[list[int]]:
    """Complete prescribed entries s^(i_j)_j = l_j into a full k-row
    plegma with min of the first row greater than N.

    The l's must be pairwise distinct multiples of 2k exceeding N + k;
    the construction shifts each column so that column j runs through
    consecutive integers around l_j, which the 2k gaps keep interleaved.
    """
    if k < 1:
        raise InputError("k must be >= 1")
    if len(i_list) != len(l_list):
        raise InputError("i_list and l_list must have equal lengths")
    if not i_list:
        raise InputError("nothing to extend")
    for i in i_list:
        if not 1 <= i <= k:
            raise InputError(f"row index {i} outside [1, {k}]")
    if len(set(l_list)) != len(l_list):
        raise InputError("the prescribed l's must be pairwise distinct")
    for l in l_list:
        if l % (2 * k) != 0:
            raise InputError(f"l = {l} is not a multiple of 2k = {2 * k}")
        if l <= N + k:
            raise InputError(f"l = {l} does not exceed N + k = {N + k}")
    order = sorted(range(len(l_list)), key=lambda j: l_list[j])
    ls = [l_list[j] for j in order]
    rows_of = [i_list[j] for j in order]
    m = len(ls)
    plegma = [[0] * m for _ in range(k)]
    for j in range(m):
        for i in range(1, k + 1):
            plegma[i - 1][j] = ls[j] + i - rows_of[j]
    if not is_plegma(plegma):
        raise InputError("internal error: completion violates the chain")
    if plegma[0][0] <= N:
        raise InputError(f"first entry {plegma[0][0]} does not exceed N = {N}")
    return plegma
