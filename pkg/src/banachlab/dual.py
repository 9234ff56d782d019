"""The dual Tsirelson norm as an exact linear program.

For x supported in S, the dual norm is the maximum of <x, y> over the
polytope {y : f(y) <= 1 for all f in ±K_S}, K_S the norming set.  K_S is
far too large to enumerate near the support cap, so the LP is solved in
its decomposition form

    minimize sum(t)  subject to  sum_f t_f f = x,  t >= 0,

with columns generated on demand: the separation oracle for the dual
vector y of the restricted program is the Tsirelson-norm DP itself,
which either certifies ||y||_T <= 1 (optimality: y is a feasible point
of the polytope attaining the restricted optimum) or produces a norming
functional with f(y) > 1 to enter as a fresh column.  Both the value and
the witness come out exactly rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .caps import Caps, get_caps
from .errors import InputError
from .norms import Functional, NormEngine, norming_set, tsirelson_norm_witness
from .simplex import SimplexError, StandardFormSimplex, maximize_over_unit_polytope
from .vectors import SparseVec, inner_product

ONE = Fraction(1)


@dataclass(frozen=True)
class LPResult:
    value: Fraction
    witness: SparseVec  # optimal y with ||y||_T <= 1 and <x, y> = value
    certificate: tuple[Functional, ...]  # active constraints (LP basis)


def dual_norm(x: SparseVec, caps: Optional[Caps] = None) -> LPResult:
    caps = caps or get_caps()
    if x and x.depth != 1:
        raise InputError("the dual norm is defined on depth-1 vectors")
    if not x:
        return LPResult(Fraction(0), SparseVec(), ())
    positions = x.leading_support()
    caps.check("dual", len(positions))
    row_of = {p: i for i, p in enumerate(positions)}
    coords = [x[(p,)] for p in positions]

    sx = StandardFormSimplex(coords)
    columns: list[tuple[dict, int]] = []

    def add(coeffs: dict, depth: int) -> int:
        dense = [Fraction(0)] * len(positions)
        for p, c in coeffs.items():
            dense[row_of[p]] = c
        columns.append((coeffs, depth))
        return sx.add_column(dense, ONE)

    basis = []
    for p, value in zip(positions, coords):
        sign = ONE if value >= 0 else -ONE
        basis.append(add({p: sign}, 0))
        add({p: -sign}, 0)
    sx.set_basis(basis)

    for _ in range(100000):
        value = sx.solve()
        y = SparseVec(
            {(p,): d for p, d in zip(positions, sx.duals()) if d},
            depth=1,
        )
        t_norm, f_star, depth = tsirelson_norm_witness(y)
        if t_norm <= 1:
            break
        add(f_star, depth)
        add({p: -c for p, c in f_star.items()}, depth)
    else:
        raise SimplexError("column generation failed to converge")

    if inner_product(x, y) != value:
        raise SimplexError("duality certificate failed")
    certificate = tuple(
        Functional(SparseVec({(p,): c for p, c in columns[j][0].items()}), columns[j][1])
        for j in sx.basis
    )
    return LPResult(value, y, certificate)


def verify_duality(x: SparseVec, y: SparseVec, caps: Optional[Caps] = None) -> bool:
    """Exact check of <x, y> <= ||x||_T* ||y||_T."""
    from .spaces import Tsirelson

    caps = caps or get_caps()
    pairing = inner_product(x, y)
    bound = dual_norm(x, caps).value * NormEngine(Tsirelson(), caps).norm(y)
    return pairing <= bound


def dual_norm_reference(x: SparseVec, caps: Optional[Caps] = None) -> Fraction:
    """Independent route for tests: enumerate the full norming set of the
    support and maximize <x, y> over the inequality polytope with the
    dense tableau solver.  Exponential; keep supports small."""
    caps = caps or get_caps()
    if not x:
        return Fraction(0)
    positions = x.leading_support()
    functionals = norming_set(positions, caps)
    rows = []
    for f in functionals:
        rows.append([f.coefficients[(p,)] for p in positions])
    objective = [x[(p,)] for p in positions]
    return maximize_over_unit_polytope(objective, rows)


def decomposition_weight(x: SparseVec, result: LPResult) -> Fraction:
    """Total weight of the decomposition x = sum t_f f carried by the LP
    basis; re-derives t from the certificate and checks it reproduces x.

    Together with the witness inequality f(y) <= 1 for all f (which holds
    because ||y||_T <= 1), this certifies that the minimal decomposition
    weight and the polytope maximum agree: the unit ball of the dual is
    the closed convex hull of the norming set at this support.
    """
    positions = x.leading_support()
    m = len(positions)
    cols = [[f.coefficients[(p,)] for p in positions] for f in result.certificate]
    if len(cols) != m:
        raise SimplexError("certificate is not a basis")
    # solve B t = x by Gaussian elimination on the small system
    from .simplex import _invert, _mat_vec

    binv = _invert([[cols[j][i] for j in range(m)] for i in range(m)])
    t = _mat_vec(binv, [x[(p,)] for p in positions])
    if any(v < 0 for v in t):
        raise SimplexError("certificate weights are not nonnegative")
    rebuilt: dict = {}
    for weight, f in zip(t, result.certificate):
        for p, c in f.coefficients.items():
            rebuilt[p] = rebuilt.get(p, Fraction(0)) + weight * c
    if SparseVec(rebuilt) != x:
        raise SimplexError("certificate does not reproduce x")
    return sum(t, Fraction(0))
