"""The contraction matrix of M on pairs of vectors, its kernel and cokernel,
and the rank-7/8 dichotomy governing the dual bundle.

For a 2×2 grade-3 matrix M the map sends a pair (v₁, v₂) of vectors to the
pair of 4-vectors (v₁∧m₁₁ + v₂∧m₁₂, v₁∧m₂₁ + v₂∧m₂₂).  Written in the
frozen bases below it is a 10×10 scalar matrix of rank 7 or 8 for every
valid monad; 8 − rank counts independent sections of the dual bundle.

Frozen bases (documented here once, used everywhere):

* pairs of vectors: (copy k ∈ {0,1} outer, e_j with j = 0..4 inner),
  index 5k + j;
* pairs of 4-vectors: (copy l outer, b_m inner), index 5l + m, where
  b_m is the 4-vector on the complement of m signed so that
  e_m ∧ b_m = e_{01234}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from .exterior import Multivector, merge_sign
from .extmatrix import ExtMatrix, degenerate_combinations
from .fields import Field
from .forms import BinaryForm, form_gcd, projective_roots
from .linalg import ScalarMatrix, in_span, span_rank
from .monad import Monad
from .normal_forms import ClassificationError, kronecker_form_2xr
from .syzygy import family_dimension


class DualError(ValueError):
    """The input violates an invariant of the dual computation."""


def _b_basis(field: Field, m: int, dim_v: int = 5) -> Multivector:
    """The signed complement 4-vector b_m with e_m ∧ b_m = e_{01..4}."""
    comp = tuple(i for i in range(dim_v) if i != m)
    sign = merge_sign((m,), comp)
    return Multivector.basis(field, comp, dim_v).scale(sign)


def _grade4_coords(field: Field, w: Multivector) -> List:
    """Coordinates of a 4-vector in the signed complement basis b_0..b_4."""
    out = []
    for m in range(w.dim_v):
        comp = tuple(i for i in range(w.dim_v) if i != m)
        sign = merge_sign((m,), comp)
        out.append(w.terms.get(comp, field.zero) * field.of(sign))
    return out


def build_mtilde(m: ExtMatrix) -> ScalarMatrix:
    """The 10×10 matrix of (v₁,v₂) ↦ (Σ_k v_k∧m_{1k}, Σ_k v_k∧m_{2k}) in
    the frozen bases."""
    if m.rows != 2 or m.cols != 2:
        raise DualError("expected a 2×2 matrix")
    if not m.is_zero() and m.grade != 3:
        raise DualError("expected grade-3 entries")
    field, nv = m.field, m.dim_v
    cols = []
    for k in range(2):
        for j in range(nv):
            v = Multivector.basis(field, (j,), nv)
            col = []
            for l in range(2):
                col.extend(_grade4_coords(field, v.wedge(m[l, k])))
            cols.append(col)
    return ScalarMatrix(field, [list(r) for r in zip(*cols)])


def _pairs_from_vectors(field: Field, vectors: List[List], nv: int = 5) -> ExtMatrix:
    """Reassemble 10-coordinate vectors as columns of a 2×p grade-1 matrix."""
    entries = [[], []]
    for v in vectors:
        for i in range(2):
            entries[i].append(
                Multivector.from_coords(field, v[nv * i : nv * (i + 1)], nv)
            )
    return ExtMatrix(entries)


def kernel_p(m: ExtMatrix) -> ExtMatrix:
    """Kernel of the contraction matrix reassembled as a 2×p grade-1 matrix
    (p ∈ {2,3}); asserts no generalized column is a pure pair (λx, μx)."""
    mt = build_mtilde(m)
    rank = mt.rank()
    if rank < 7:
        raise DualError(f"contraction rank {rank} < 7")
    kern = mt.kernel_basis()
    p = _pairs_from_vectors(m.field, kern, m.dim_v)
    if p.cols == 2:
        if not degenerate_combinations(p, "columns").is_constant():
            raise DualError("kernel pencil has a degenerate generalized column")
    else:
        # staircase normalization both certifies nondegeneracy and is the
        # downstream consumer for 3-column kernels
        kronecker_form_2xr(p)
    return p


def _n_map(n: ExtMatrix) -> ScalarMatrix:
    """The 2×10 matrix of (w₁,w₂) ↦ (Σ_j n_ij ∧ w_j) in the frozen bases
    (top form coefficient on e_{01234})."""
    field, nv = n.field, n.dim_v
    rows = []
    for i in range(n.rows):
        row = []
        for j in range(2):
            row.extend(list(n[i, j].coords(1)))
        rows.append(row)
    return ScalarMatrix(field, rows)


@dataclass
class DualDiagnosis:
    mtilde: ScalarMatrix
    rank: int
    p: ExtMatrix
    n1: ExtMatrix
    h0_dual: int

    def to_json_obj(self) -> dict:
        return {
            "rank_mtilde": self.rank,
            "h0_dual": self.h0_dual,
            "P": self.p.to_json_obj(),
            "N1": self.n1.to_json_obj(),
        }


def cokernel_n1(m: ExtMatrix, n: ExtMatrix) -> ExtMatrix:
    """For contraction rank 8 returns N itself; for rank 7 the 3×2 matrix
    (N′ over (x,0)) built from the three cokernel functionals, with N′ a
    column transform of N, x ≠ 0 in span N and dim span N = 3."""
    mt = build_mtilde(m)
    rank = mt.rank()
    if rank == 8:
        return n
    if rank != 7:
        raise DualError(f"contraction rank {rank} not in {{7,8}}")
    field, nv = n.field, n.dim_v
    left = mt.cokernel_functionals()  # 3 functionals ≅ pairs of vectors
    if len(left) != 3:
        raise DualError("cokernel dimension mismatch")
    n_rows = [_n_map(n).row(i) for i in range(2)]
    for r in n_rows:
        if not in_span(field, left, r):
            raise DualError("rows of N are not cokernel functionals")
    third = next(
        (f for f in left if span_rank(field, n_rows + [f]) == 3), None
    )
    if third is None:
        raise DualError("no independent third cokernel functional")
    y1 = third[:nv]
    y2 = third[nv:]
    n_entries = [n[i, j].coords(1) for i in range(2) for j in range(2)]

    # find a column direction (g12 : g22) and row corrections (α, β) with
    # y(g) + α·n₁(g) + β·n₂(g) = 0 in the second transformed column
    sols = _second_column_kill(field, n_entries, y1, y2)
    if sols is None:
        raise DualError(
            "third functional cannot be reduced to (x, 0) over this field"
        )
    g12, g22, alpha, beta = sols
    # complete to an invertible column operation
    for cand in ((field.one, field.zero), (field.zero, field.one)):
        g = ScalarMatrix(field, [[cand[0], g12], [cand[1], g22]])
        if g.rank() == 2:
            break
    n_prime = n.scalar_mul_right(g)
    t1 = Multivector.from_coords(field, y1, nv)
    t2 = Multivector.from_coords(field, y2, nv)
    row3 = [
        (t1.scale(g[0, 0]) + t2.scale(g[1, 0]))
        + n_prime[0, 0].scale(alpha) + n_prime[1, 0].scale(beta),
        (t1.scale(g12) + t2.scale(g22))
        + n_prime[0, 1].scale(alpha) + n_prime[1, 1].scale(beta),
    ]
    if not row3[1].is_zero():
        raise DualError("internal: second entry of the third row not cleared")
    x = row3[0]
    if x.is_zero():
        raise DualError("third row vanished during reduction")
    span_n = [v.coords(1) for v in
              (n_prime[0, 0], n_prime[0, 1], n_prime[1, 0], n_prime[1, 1])]
    if span_rank(field, span_n) != 3:
        raise DualError("dim span N is not 3 in the rank-7 case")
    if not in_span(field, span_n, x.coords(1)):
        raise DualError("x is not in span N")
    return ExtMatrix([n_prime.row(0), n_prime.row(1), [x, Multivector.zero(field, nv)]])


def _second_column_kill(field, n_entries, y1, y2):
    """Solve (y₁g₁₂ + y₂g₂₂) + α(n₁₁g₁₂ + n₁₂g₂₂) + β(n₂₁g₁₂ + n₂₂g₂₂) = 0
    for a ratio (g₁₂ : g₂₂) and scalars α, β.

    The ratio must make the combined y lie in the span of the combined N
    column — a gcd of 3×3 minors, degree-≤3 binary form; only roots in the
    ground field are usable.
    """
    n11, n12, n21, n22 = n_entries
    nv = len(y1)
    # columns of the 5×3 matrix [Ncol1(g), Ncol2(g), y(g)], each linear in g
    lin = [
        [(n11[i], n12[i]) for i in range(nv)],
        [(n21[i], n22[i]) for i in range(nv)],
        [(y1[i], y2[i]) for i in range(nv)],
    ]
    minors = []
    from itertools import combinations

    for rows in combinations(range(nv), 3):
        entries = [
            [BinaryForm(field, list(lin[c][r])) for c in range(3)]
            for r in rows
        ]
        from .normal_forms import _form_det

        minors.append(_form_det(entries))
    g = form_gcd(minors)
    candidates: List[Tuple] = []
    if g.is_zero():
        candidates = [(field.one, field.zero), (field.zero, field.one),
                      (field.one, field.one)]
    else:
        if g.is_constant():
            return None
        roots, _missing = projective_roots(g)
        candidates = [r for r, _ in roots]
    for g12, g22 in candidates:
        yv = [g12 * a + g22 * b for a, b in zip(y1, y2)]
        nc1 = [g12 * a + g22 * b for a, b in zip(n11, n12)]
        nc2 = [g12 * a + g22 * b for a, b in zip(n21, n22)]
        mat = ScalarMatrix(field, [list(r) for r in zip(nc1, nc2)])
        sol = mat.solve([-v for v in yv])
        if sol is not None:
            return g12, g22, sol[0], sol[1]
    return None


def diagnose(monad: Monad) -> DualDiagnosis:
    """Full dual diagnosis of a valid monad."""
    if not monad.in_x0:
        raise DualError("input fails the monad validity checks")
    mt = build_mtilde(monad.m)
    rank = mt.rank()
    if rank not in (7, 8):
        raise DualError(f"contraction rank {rank} outside {{7,8}}")
    p = kernel_p(monad.m)
    n1 = cokernel_n1(monad.m, monad.n)
    return DualDiagnosis(mt, rank, p, n1, 8 - rank)


@dataclass
class InstantonDual:
    """Rank-8 case: the dual bundle is itself given by a 2×2 monad pair."""

    monad: Monad

    def to_json_obj(self) -> dict:
        return {"kind": "instanton", "monad": self.monad.to_json_obj()}


@dataclass
class ExtensionDatum:
    """Rank-7 case: dual data is a 3-row monad plus the trivial-subsheaf
    direction x; the transposed M fails the subbundle test."""

    m_t: ExtMatrix
    p_t: ExtMatrix  # 3×2
    x: Multivector

    def to_json_obj(self) -> dict:
        return {
            "kind": "extension",
            "M_dual": self.m_t.to_json_obj(),
            "P_dual": self.p_t.to_json_obj(),
            "x": str(self.x),
        }


def dual_monad(monad: Monad) -> Union[InstantonDual, ExtensionDatum]:
    """Dual bundle data: a valid monad (Mᵀ, Pᵀ) when the contraction rank
    is 8, otherwise the 3-row extension datum."""
    diag = diagnose(monad)
    m_t = monad.m.transpose()
    p_t = diag.p.transpose()
    if diag.rank == 8:
        dual = Monad(m_t, p_t)
        if not dual.in_x0:
            raise DualError("rank-8 dual pair fails the monad checks")
        return InstantonDual(dual)
    x = diag.n1[2, 0]
    return ExtensionDatum(m_t, p_t, x)


def verify_exact_sequence(m: ExtMatrix, n: ExtMatrix, p: ExtMatrix) -> bool:
    """Exactness of 0 → k² → k²⊗V → k²⊗Λ⁴V → k²⊗Λ⁵V → 0 with maps
    (P, contraction-with-M, wedge-with-N); requires contraction rank 8."""
    mt = build_mtilde(m)
    if mt.rank() != 8:
        return False
    field, nv = m.field, m.dim_v
    # P columns as 10-vectors
    p_cols = [
        [x for i in range(2) for x in p[i, j].coords(1)] for j in range(p.cols)
    ]
    if len(p_cols) != 2 or span_rank(field, p_cols) != 2:
        return False
    for col in p_cols:
        if any(x != 0 for x in _matvec(mt, col)):
            return False
    nm = _n_map(n)
    if nm.rank() != 2:
        return False
    if not (nm @ mt).is_zero():
        return False
    # im mtilde = ker n_map by dimension count: 8 = 10 − 2
    return True


def _matvec(m: ScalarMatrix, v) -> List:
    return [
        sum((m[i, j] * v[j] for j in range(m.cols)), m.field.zero)
        for i in range(m.rows)
    ]


def length_c(n1: ExtMatrix) -> int:
    """The length count for a U-type 3×2 matrix: syzygy-family dimension
    − 20 + 15; asserted equal to 3."""
    from .normal_forms import classify_n1

    tag = classify_n1(n1).tag
    if not tag.startswith("U"):
        raise DualError(f"length count requires a U-type matrix, got {tag}")
    val = family_dimension(n1) - 20 + 15
    if val != 3:
        raise DualError(f"length count {val} != 3")
    return val
