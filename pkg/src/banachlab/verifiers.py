"""Desk-scale verifiers for the quantitative block inequalities.

The dual-Tsirelson block bounds (2 for families past the first support,
3 past the second), the grid pigeonhole selection with its 1/k proximity
and sign-sum bound 2, and the rectangle decomposition argument are all
checked by exact enumeration or seeded sampling.  Bounds that involve
the equivalence constant between the plain and modified norms are only
known to exist, with no numeric value, so those verifiers report an
empirical maximum instead of asserting; only the explicit constants are
hard assertions.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence, Union

from .caps import Caps, get_caps
from .dual import dual_norm
from .embeddings import ell_infty_equivalence
from .errors import CapExceeded, InputError
from .norms import NormEngine, modified_norm, tsirelson_norm, _chunkings, _nonempty_subsets
from .report import VerifierReport
from .spaces import Repeat, SpaceExpr, Sum, TsirelsonDual, space_depth
from .vectors import SparseVec

ONE = Fraction(1)
DEFAULT_SEED = 1729

SIGNS = (ONE, -ONE)


def tt_space() -> SpaceExpr:
    """The dual-Tsirelson sum of dual-Tsirelson copies."""
    return Sum(TsirelsonDual(), Repeat(TsirelsonDual()))


@dataclass(frozen=True)
class GridVec:
    """Depth-2 vector with row and rectangle projections.

    Rectangle projections are idempotent restrictions; projecting to the
    whole grid is the identity.
    """

    vec: SparseVec

    def __post_init__(self):
        if self.vec and self.vec.depth != 2:
            raise InputError("a grid vector has depth-2 paths")

    def p_row(self, i: int) -> "GridVec":
        return GridVec(
            SparseVec({p: v for p, v in self.vec.items() if p[0] == i}, depth=2)
        )

    def p_rect(self, rows, cols) -> "GridVec":
        rows, cols = set(rows), set(cols)
        return GridVec(
            SparseVec(
                {p: v for p, v in self.vec.items() if p[0] in rows and p[1] in cols},
                depth=2,
            )
        )

    def cells(self) -> list[tuple[int, int]]:
        return [tuple(p) for p in self.vec.support()]


def _as_vec(w) -> SparseVec:
    return w.vec if isinstance(w, GridVec) else w


# -- block inequalities in the dual norm --------------------------------


def verify_block_c0(
    max_support: int = 10, variant: str = "strict", caps: Optional[Caps] = None
) -> VerifierReport:
    """Enumerate every 0/1 block family in [1, max_support] and compare
    ||sum x_j|| against max_j ||x_j|| in the dual norm.

    strict:  admissible when the part count n is at most min supp(x_1);
    relaxed: at most min supp(x_2).  The strict bound 2 and relaxed
    bound 3 are hard assertions.
    """
    caps = caps or get_caps()
    if variant not in ("strict", "relaxed"):
        raise InputError(f"unknown variant {variant!r}")
    caps.check("dual", max_support)
    memo: dict[tuple, Fraction] = {}

    def dual01(subset: tuple) -> Fraction:
        if subset not in memo:
            memo[subset] = dual_norm(
                SparseVec({(p,): ONE for p in subset}), caps
            ).value
        return memo[subset]

    bound = Fraction(2) if variant == "strict" else Fraction(3)
    best = Fraction(0)
    witness = None
    families = 0
    universe = tuple(range(1, max_support + 1))
    for subset in _nonempty_subsets(universe):
        whole = dual01(subset)
        for n in range(1, len(subset) + 1):
            for parts in _chunkings(subset, n):
                if variant == "strict":
                    if n > parts[0][0]:
                        continue
                elif n > 1 and n > parts[1][0]:
                    continue
                families += 1
                ratio = whole / max(dual01(part) for part in parts)
                if ratio > best:
                    best = ratio
                    witness = {"blocks": [list(part) for part in parts]}
    return VerifierReport(
        lemma=f"block-c0-{variant}",
        params={"max_support": max_support, "variant": variant},
        samples=families,
        max_ratio=best,
        witness=witness,
        passed=bool(best <= bound),
        bound_claimed=str(bound),
    )


def estimate_dm(
    n: int = 2, max_support: int = 8, caps: Optional[Caps] = None
) -> VerifierReport:
    """Empirical lower bound on the disjoint-support constant: max of
    ||sum x_k|| / max ||x_k|| over families of n disjoint nonempty 0/1
    vectors supported in [n, max_support].  The constant has no known
    numeric value, so the outcome is reported, not asserted."""
    caps = caps or get_caps()
    if n < 1:
        raise InputError("n must be >= 1")
    caps.check("dual", max_support)
    positions = list(range(n, max_support + 1))
    if len(positions) < n:
        raise InputError(f"no family of {n} disjoint sets fits in [{n}, {max_support}]")
    memo: dict[tuple, Fraction] = {}

    def dual01(subset: tuple) -> Fraction:
        if subset not in memo:
            memo[subset] = dual_norm(
                SparseVec({(p,): ONE for p in subset}), caps
            ).value
        return memo[subset]

    best = Fraction(0)
    witness = None
    families = 0
    # restricted-growth assignments: 0 = unused, parts appear in order
    for assignment in product(range(n + 1), repeat=len(positions)):
        seen = 0
        ok = True
        for label in assignment:
            if label == 0:
                continue
            if label > seen + 1:
                ok = False
                break
            seen = max(seen, label)
        if not ok or seen != n:
            continue
        parts = [
            tuple(p for p, label in zip(positions, assignment) if label == j)
            for j in range(1, n + 1)
        ]
        families += 1
        union = tuple(sorted(p for part in parts for p in part))
        ratio = dual01(union) / max(dual01(part) for part in parts)
        if ratio > best:
            best = ratio
            witness = {"parts": [list(part) for part in parts]}
    return VerifierReport(
        lemma="dm",
        params={"n": n, "max_support": max_support},
        samples=families,
        max_ratio=best,
        witness=witness,
        passed="reported",
        bound_claimed="D_M (no numeric value known)",
    )


def estimate_cm(
    max_support: int = 8,
    samples: int = 100,
    seed: int = DEFAULT_SEED,
    caps: Optional[Caps] = None,
) -> VerifierReport:
    """Empirical lower bound on the modified-vs-plain norm ratio over 0/1
    and seeded random rational vectors; the lower inequality (plain norm
    never exceeds the modified norm) is asserted exactly on every
    sample."""
    caps = caps or get_caps()
    if max_support > 8:
        raise CapExceeded(
            f"max_support {max_support} > 8: the modified-norm partition "
            "search blows up past this point"
        )
    rng = random.Random(seed)
    vectors = [
        SparseVec({(p,): ONE for p in subset})
        for subset in _nonempty_subsets(tuple(range(1, max_support + 1)))
    ]
    for _ in range(samples):
        vectors.append(_random_vector(rng, max_support))
    best = Fraction(0)
    witness = None
    violated = None
    for vec in vectors:
        tn = tsirelson_norm(vec)
        mn = modified_norm(vec, caps)
        if tn > mn:
            violated = {"vector": _vec_witness(vec), "T": str(tn), "M": str(mn)}
            break
        ratio = mn / tn
        if ratio > best:
            best = ratio
            witness = {"vector": _vec_witness(vec)}
    return VerifierReport(
        lemma="cm",
        params={"max_support": max_support},
        samples=len(vectors),
        max_ratio=best,
        witness=violated if violated else witness,
        passed=False if violated else "reported",
        seed=seed,
        bound_claimed="C_M (no numeric value known); lower half exact",
    )


def _random_vector(rng: random.Random, max_support: int, max_size: int = 6) -> SparseVec:
    size = rng.randint(1, min(max_size, max_support))
    positions = rng.sample(range(1, max_support + 1), size)
    entries = {}
    for p in positions:
        num = rng.choice([v for v in range(-4, 5) if v])
        den = rng.randint(1, 4)
        entries[(p,)] = Fraction(num, den)
    return SparseVec(entries)


def _vec_witness(vec: SparseVec):
    from .vectors import format_vector

    return format_vector(vec)


# -- rectangle decomposition (grid) verifiers ------------------------------


def verify_lemma_l2(
    k: int,
    cuts: Sequence[int],
    samples: int = 50,
    seed: int = DEFAULT_SEED,
    ceiling: int = 12,
    caps: Optional[Caps] = None,
) -> VerifierReport:
    """Sample normalized grid vectors z_j supported in the rectangle
    differences ((k, n_j] x [1, n_j]) \\ previous and report the max of
    ||sum a_j z_j|| over sign vectors.  The bound is symbolic (three
    times the disjoint-support constant), so only a configurable sanity
    ceiling is asserted."""
    caps = caps or get_caps()
    cuts = [int(c) for c in cuts]
    if len(cuts) != k + 1 or cuts[0] != k or any(
        a >= b for a, b in zip(cuts, cuts[1:])
    ):
        raise InputError(
            f"cuts must be k+1 strictly increasing integers starting at k, got {cuts}"
        )
    engine = NormEngine(tt_space(), caps)
    rng = random.Random(seed)
    best = Fraction(0)
    witness = None
    for _ in range(samples):
        zs = []
        for j in range(1, k + 1):
            region = _l2_region(k, cuts, j)
            zs.append(_random_normalized(rng, region, engine))
        for signs in product(SIGNS, repeat=k - 1):
            total = zs[0]
            for sign, z in zip(signs, zs[1:]):
                total = total + sign * z
            value = engine.norm(total)
            if value > best:
                best = value
                witness = {
                    "z": [_vec_witness(z) for z in zs],
                    "signs": [1] + [int(s) for s in signs],
                }
    return VerifierReport(
        lemma="l2",
        params={"k": k, "cuts": cuts, "ceiling": ceiling},
        samples=samples,
        max_ratio=best,
        witness=witness,
        passed=False if best > ceiling else "reported",
        seed=seed,
        bound_claimed="3*D_M (no numeric value known)",
    )


def _l2_region(k: int, cuts: Sequence[int], j: int) -> list[tuple[int, int]]:
    nj, nprev = cuts[j], cuts[j - 1]
    cells = []
    for row in range(k + 1, nj + 1):
        for col in range(1, nj + 1):
            if row <= nprev and col <= nprev:
                continue
            cells.append((row, col))
    return cells


def _random_normalized(
    rng: random.Random, region: list[tuple[int, int]], engine: NormEngine
) -> SparseVec:
    count = rng.randint(1, min(3, len(region)))
    cells = rng.sample(region, count)
    entries = {}
    for cell in cells:
        if rng.random() < 0.5:
            entries[cell] = ONE
        else:
            entries[cell] = Fraction(rng.randint(1, 4), rng.randint(1, 4))
    vec = SparseVec(entries, depth=2)
    norm = engine.norm(vec)
    return (1 / norm) * vec


# -- the grid pigeonhole selection -----------------------------------------


def hat_select(
    k: int, w_list: Sequence, caps: Optional[Caps] = None
) -> tuple[list[int], tuple, VerifierReport]:
    """Pigeonhole selection of k indices whose row-norm profiles land in
    one grid cube of side 1/k, plus exact verification of the proximity
    bound 1/k and the sign-sum bound 2.

    Expects k^(k+1) grid vectors, the j-th supported in rows [1, k] and a
    column band that lies strictly after the previous one (first band
    past column k), each with norm at most 1.
    """
    caps = caps or get_caps()
    M = k ** (k + 1)
    vecs = [_as_vec(w) for w in w_list]
    if len(vecs) != M:
        raise InputError(f"need k^(k+1) = {M} vectors, got {len(vecs)}")
    engine = NormEngine(tt_space(), caps)
    last_col = k
    for j, vec in enumerate(vecs, start=1):
        rows = {p[0] for p in vec.support()}
        if any(r > k for r in rows):
            raise InputError(f"vector {j} has support outside rows [1, {k}]")
        cols = {p[1] for p in vec.support()}
        if cols:
            if min(cols) <= last_col:
                raise InputError(
                    f"vector {j} has support outside its column band "
                    f"(column {min(cols)} <= {last_col})"
                )
            last_col = max(cols)
        if engine.norm(vec) > 1:
            raise InputError(f"vector {j} has norm > 1")

    profiles = []
    for vec in vecs:
        profile = []
        for i in range(1, k + 1):
            row = SparseVec(
                {p: v for p, v in vec.items() if p[0] == i}, depth=2
            )
            profile.append(engine.norm(row))
        profiles.append(tuple(profile))

    def cube(value: Fraction) -> int:
        return 1 if value == 0 else math.ceil(value * k)

    cells: dict[tuple, list[int]] = {}
    selected = None
    cell_key = None
    for j, profile in enumerate(profiles, start=1):
        key = tuple(cube(v) for v in profile)
        bucket = cells.setdefault(key, [])
        bucket.append(j)
        if len(bucket) == k and selected is None:
            selected, cell_key = list(bucket), key
    if selected is None:
        raise RuntimeError(
            "pigeonhole failure: no grid cube holds k profiles; "
            "preconditions must have been violated"
        )

    passed = True
    base = profiles[selected[0] - 1]
    for j in selected:
        for i in range(k):
            if abs(profiles[j - 1][i] - base[i]) > Fraction(1, k):
                passed = False
    best = Fraction(0)
    sign_witness = None
    for signs in product(SIGNS, repeat=k):
        total = SparseVec(depth=2)
        for sign, j in zip(signs, selected):
            total = total + sign * vecs[j - 1]
        value = engine.norm(total)
        if value > best:
            best = value
            sign_witness = [int(s) for s in signs]
    if best > 2:
        passed = False
    report = VerifierReport(
        lemma="hat",
        params={"k": k, "M": M},
        samples=M,
        max_ratio=best,
        witness={"indices": selected, "cell": list(cell_key), "signs": sign_witness},
        passed=passed,
        bound_claimed="2",
    )
    return selected, cell_key, report


def select_c0_subsequence(
    k: int, x_list: Sequence, caps: Optional[Caps] = None
) -> tuple[list[int], tuple, VerifierReport]:
    """Split each normalized block x_j into its hat part (rows up to k)
    and its rectangle part, select indices through the grid pigeonhole on
    the hat parts, and measure the exact finite-linfty equivalence
    constants of the selected blocks."""
    caps = caps or get_caps()
    M = k ** (k + 1)
    vecs = [_as_vec(x) for x in x_list]
    if len(vecs) != M:
        raise InputError(f"need k^(k+1) = {M} vectors, got {len(vecs)}")
    engine = NormEngine(tt_space(), caps)
    n_prev = k
    for j, vec in enumerate(vecs, start=1):
        if engine.norm(vec) != 1:
            raise InputError(f"vector {j} is not normalized")
        extent = n_prev
        for p in vec.support():
            if p[0] <= n_prev and p[1] <= n_prev:
                raise InputError(
                    f"vector {j} meets the previous square [1,{n_prev}]^2 at {p}"
                )
            extent = max(extent, p[0], p[1])
        n_prev = max(n_prev + 1, extent)

    hats = [
        SparseVec({p: v for p, v in vec.items() if p[0] <= k}, depth=2)
        for vec in vecs
    ]
    selected, cell, hat_report = hat_select(k, hats, caps)
    chosen = [vecs[j - 1] for j in selected]
    c_low, c_up = ell_infty_equivalence(chosen, tt_space(), caps)
    passed: Union[bool, str] = "reported"
    if c_low < 1 or hat_report.passed is not True:
        passed = False
    report = VerifierReport(
        lemma="c0-subseq",
        params={"k": k, "M": M},
        samples=M,
        max_ratio=c_up,
        witness={
            "indices": selected,
            "cell": list(cell),
            "c_low": str(c_low),
            "c_up": str(c_up),
        },
        passed=passed,
        bound_claimed="3*D_M + 2 (no numeric value known)",
    )
    return selected, (c_low, c_up), report


# -- seeded instance generators (CLI and acceptance harnesses) -------------


def random_hat_instance(
    k: int, rng: random.Random, band_width: int = 2
) -> list[SparseVec]:
    """k^(k+1) vectors satisfying the hat-selection preconditions, with
    norms exactly 1 or a random fraction of 1."""
    M = k ** (k + 1)
    engine = NormEngine(tt_space())
    out = []
    start = k + 1
    for _ in range(M):
        band = list(range(start, start + band_width))
        entries = {}
        rows = rng.sample(range(1, k + 1), rng.randint(1, k))
        for row in rows:
            for col in rng.sample(band, rng.randint(1, band_width)):
                entries[(row, col)] = Fraction(rng.randint(1, 4), rng.randint(1, 4))
        vec = SparseVec(entries, depth=2)
        scale = 1 / engine.norm(vec)
        if rng.random() < 0.3:
            scale = scale * Fraction(rng.randint(1, 4), 4)
        out.append(scale * vec)
        start += band_width
    return out


def random_c0_instance(
    k: int, rng: random.Random, band_width: int = 2
) -> list[SparseVec]:
    """k^(k+1) normalized blocks for the subsequence selection, each
    living between consecutive squares [1, n_j]^2."""
    M = k ** (k + 1)
    engine = NormEngine(tt_space())
    out = []
    n_prev = k
    for _ in range(M):
        n_j = n_prev + band_width
        cells = []
        # a couple of hat cells (rows <= k, columns past n_prev)
        for _ in range(rng.randint(1, 2)):
            cells.append((rng.randint(1, k), rng.randint(n_prev + 1, n_j)))
        # a couple of rectangle cells (rows past max(k, n_prev))
        for _ in range(rng.randint(0, 2)):
            cells.append(
                (rng.randint(max(k, n_prev) + 1, n_j), rng.randint(1, n_j))
            )
        entries = {}
        for cell in cells:
            entries[cell] = Fraction(rng.randint(1, 4), rng.randint(1, 4))
        vec = SparseVec(entries, depth=2)
        out.append((1 / engine.norm(vec)) * vec)
        n_prev = n_j
    return out


def hat_sampled_report(
    k: int = 2,
    samples: int = 100,
    seed: int = DEFAULT_SEED,
    caps: Optional[Caps] = None,
) -> VerifierReport:
    """Run the grid pigeonhole selection on seeded random instances and
    merge the outcomes; every instance must select successfully and pass
    the proximity and sign-sum assertions."""
    caps = caps or get_caps()
    rng = random.Random(seed)
    best = Fraction(0)
    witness = None
    passed = True
    for index in range(samples):
        instance = random_hat_instance(k, rng)
        _, _, report = hat_select(k, instance, caps)
        if report.passed is not True:
            passed = False
            witness = {"instance": index, **report.to_dict()["witness"]}
        if report.max_ratio > best:
            best = report.max_ratio
            if passed:
                witness = {"instance": index, **report.to_dict()["witness"]}
    return VerifierReport(
        lemma="hat",
        params={"k": k, "M": k ** (k + 1)},
        samples=samples,
        max_ratio=best,
        witness=witness,
        passed=passed,
        seed=seed,
        bound_claimed="2",
    )


def c0_sampled_report(
    k: int = 2,
    samples: int = 20,
    seed: int = DEFAULT_SEED,
    caps: Optional[Caps] = None,
) -> VerifierReport:
    """Seeded-instance harness for the block subsequence selection."""
    caps = caps or get_caps()
    rng = random.Random(seed)
    best = Fraction(0)
    witness = None
    passed: Union[bool, str] = "reported"
    for index in range(samples):
        instance = random_c0_instance(k, rng)
        _, (c_low, c_up), report = select_c0_subsequence(k, instance, caps)
        if report.passed is False:
            passed = False
        if c_up > best:
            best = c_up
            witness = {"instance": index, **report.to_dict()["witness"]}
    return VerifierReport(
        lemma="c0-subseq",
        params={"k": k, "M": k ** (k + 1)},
        samples=samples,
        max_ratio=best,
        witness=witness,
        passed=passed,
        seed=seed,
        bound_claimed="3*D_M + 2 (no numeric value known)",
    )


# -- spreading-model witnesses ----------------------------------------------


def spreading_witness(
    space: SpaceExpr,
    block_gen: str = "unit",
    k: int = 2,
    shift: int = 4,
    caps: Optional[Caps] = None,
) -> tuple:
    """Finite-linfty equivalence constants of k named blocks pushed
    `shift` components along the space: an upper-bound witness for the
    spreading-model constant, never a proof of the limit statement."""
    caps = caps or get_caps()
    blocks = _named_blocks(space, block_gen, k, shift, caps)
    return ell_infty_equivalence(blocks, space, caps)


def spreading_report(
    space: SpaceExpr,
    block_gen: str = "unit",
    k: int = 2,
    shift: int = 4,
    caps: Optional[Caps] = None,
    space_text: str = "",
) -> VerifierReport:
    c_low, c_up = spreading_witness(space, block_gen, k, shift, caps)
    return VerifierReport(
        lemma="spreading",
        params={"space": space_text, "blocks": block_gen, "k": k, "shift": shift},
        samples=2 ** (k - 1),
        max_ratio=c_up / c_low,
        witness={"c_low": str(c_low), "c_up": str(c_up)},
        passed="reported",
        bound_claimed="6 (consistency with the spreading-model constant)",
    )


def _unit_path(space: SpaceExpr, leading: int) -> tuple[int, ...]:
    return (leading,) + (1,) * (space_depth(space) - 1)


def _named_blocks(
    space: SpaceExpr, name: str, k: int, shift: int, caps: Caps
) -> list[SparseVec]:
    engine = NormEngine(space, caps)
    if name == "unit":
        return [
            SparseVec({_unit_path(space, shift + i): ONE}) for i in range(1, k + 1)
        ]
    if name == "doubleton":
        out = []
        for i in range(1, k + 1):
            a = _unit_path(space, shift + 2 * i - 1)
            b = _unit_path(space, shift + 2 * i)
            vec = SparseVec({a: ONE, b: ONE})
            out.append((1 / engine.norm(vec)) * vec)
        return out
    raise InputError(f"unknown block family {name!r}")
