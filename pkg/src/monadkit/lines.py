"""Jumping-line classification on the Grassmannian of lines in P⁴.

A line is a decomposable 2-vector ω = x∧y.  The central criterion is the
2×2 scalar matrix with entries m_ij∧x∧y: its rank determines the splitting
type of the bundle on the line, with the rank-0 case refined by two exact
linear side tests (a 20×2 and a 20×3 stacked system).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from .exterior import Multivector, apply_linear_map
from .extmatrix import ExtMatrix
from .fields import Field
from .linalg import ScalarMatrix, span_rank
from .monad import Monad
from .normal_forms import normalize_n

FULL = (0, 1, 2, 3, 4)


class LineError(ValueError):
    """Degenerate line data."""


@dataclass
class PlueckerLine:
    """A line stored as a decomposable 2-vector with spanning witnesses."""

    omega: Multivector
    x: Multivector
    y: Multivector

    def __post_init__(self):
        if self.omega.is_zero():
            raise LineError("zero 2-vector")
        if not self.omega.wedge(self.omega).is_zero():
            raise LineError("2-vector is not decomposable")
        if self.x.wedge(self.y) != self.omega:
            raise LineError("witnesses do not wedge to the 2-vector")

    @staticmethod
    def from_span(x: Multivector, y: Multivector) -> "PlueckerLine":
        return PlueckerLine(x.wedge(y), x, y)

    @staticmethod
    def from_omega(omega: Multivector) -> "PlueckerLine":
        """Recover witnesses as a basis of {v : v∧ω = 0}."""
        field, nv = omega.field, omega.dim_v
        rows = []
        for j in range(nv):
            w = Multivector.basis(field, (j,), nv).wedge(omega)
            rows.append(w.coords(3))
        mat = ScalarMatrix(field, [list(r) for r in zip(*rows)])
        kern = mat.kernel_basis()
        if len(kern) != 2:
            raise LineError("2-vector is not decomposable")
        x = Multivector.from_coords(field, kern[0], nv)
        y = Multivector.from_coords(field, kern[1], nv)
        line = PlueckerLine(x.wedge(y), x, y)
        # same line: ω proportional to the witness wedge
        if not _proportional(omega, line.omega):
            raise LineError("witness recovery failed")
        return line

    def remixed(self, g: ScalarMatrix) -> "PlueckerLine":
        """The same line through GL₂-mixed witnesses."""
        x = self.x.scale(g[0, 0]) + self.y.scale(g[1, 0])
        y = self.x.scale(g[0, 1]) + self.y.scale(g[1, 1])
        return PlueckerLine.from_span(x, y)

    def to_json_obj(self) -> dict:
        return {"omega": str(self.omega), "x": str(self.x), "y": str(self.y)}


def _proportional(a: Multivector, b: Multivector) -> bool:
    field = a.field
    coords_a = a.coords(2)
    coords_b = b.coords(2)
    return span_rank(field, [coords_a, coords_b]) <= 1


def m_wedge_line(m: ExtMatrix, line: PlueckerLine) -> ScalarMatrix:
    """The 2×2 scalar matrix of top-form coefficients m_ij∧x∧y (defined up
    to one global scalar by the choice of witnesses)."""
    field = m.field
    out = []
    for i in range(2):
        row = []
        for j in range(2):
            w = m[i, j].wedge(line.omega)
            row.append(w.terms.get(FULL, field.zero))
        out.append(row)
    return ScalarMatrix(field, out)


def _pair_in_plane_test(cols: List[List[Multivector]], line: PlueckerLine) -> bool:
    """Does some nonzero combination c of the given column list have every
    combined entry inside the line's 2-plane?

    ``cols[j]`` is the j-th column (a list of grade-1 entries); the combined
    column Σ c_j·cols[j] must satisfy entry∧ω = 0 entrywise.  Stacked exact
    system; True iff its rank is less than the number of columns.
    """
    field = cols[0][0].field
    stacked = []
    for col in cols:
        vec: List = []
        for entry in col:
            vec.extend(entry.wedge(line.omega).coords(3))
        stacked.append(vec)
    mat = ScalarMatrix(field, [list(r) for r in zip(*stacked)])
    return mat.rank() < len(cols)


def negative_side(n: ExtMatrix, line: PlueckerLine) -> Tuple[int, int]:
    """(−2,0) when some row pencil combination t·n₁ⱼ + s·n₂ⱼ lands in the
    line's plane for both j, else (−1,−1)."""
    rows = [[n[0, j] for j in range(n.cols)], [n[1, j] for j in range(n.cols)]]
    return (-2, 0) if _pair_in_plane_test(rows, line) else (-1, -1)


def positive_side(monad: Monad, line: PlueckerLine) -> Tuple[int, int]:
    """(2,0) or (1,1) by the dual-side membership test."""
    from .dual import diagnose

    diag = diagnose(monad)
    if diag.rank == 8:
        # same pencil test on the dual pair's grade-1 matrix Pᵀ
        p_t = diag.p.transpose()
        rows = [[p_t[0, j] for j in range(2)], [p_t[1, j] for j in range(2)]]
        hit = _pair_in_plane_test(rows, line)
    else:
        # 2×3 kernel: combined column over (s:t:u) inside the plane
        p = diag.p
        cols = [[p[0, j], p[1, j]] for j in range(3)]
        hit = _pair_in_plane_test(cols, line)
    return (2, 0) if hit else (1, 1)


@dataclass
class LineClass:
    rank: int
    splitting: Tuple[int, int, int, int]

    def to_json_obj(self) -> dict:
        return {"rank": self.rank, "splitting": list(self.splitting)}


def classify_line(monad: Monad, line: PlueckerLine) -> LineClass:
    """Splitting type of the bundle on a line from the exact rank criterion
    and, in the rank-0 case, the two side tests."""
    rank = m_wedge_line(monad.m, line).rank()
    if rank == 2:
        return LineClass(2, (0, 0, 0, 0))
    if rank == 1:
        return LineClass(1, (1, 0, 0, -1))
    neg = negative_side(monad.n, line)
    pos = positive_side(monad, line)
    split = tuple(sorted(pos + neg, reverse=True))
    return LineClass(0, split)


# ---------------------------------------------------------------------------
# The strata curves


def negative_conic(n: ExtMatrix):
    """Parametrized curve (s:t) ↦ ω of lines carrying a −2 summand, for any
    surjective N (via the normalization witnesses).

    In normalized coordinates the curve is t²e₁₂ − tse₂₃ − s²e₁₃ for entry
    span 3 and (te₁+se₃)∧(te₂+se₄) for span 4; the general case conjugates
    by the inverse basis change.
    """
    res = normalize_n(n)
    field = n.field
    binv = res.basis_change.inverse()

    def curve(s, t) -> Multivector:
        s, t = field.of(s), field.of(t)
        if res.tag == "SPAN3":
            omega = (
                Multivector.basis(field, (1, 2)).scale(t * t)
                + Multivector.basis(field, (2, 3)).scale(-t * s)
                + Multivector.basis(field, (1, 3)).scale(-s * s)
            )
        else:
            u = Multivector.basis(field, (1,)).scale(t) + Multivector.basis(field, (3,)).scale(s)
            v = Multivector.basis(field, (2,)).scale(t) + Multivector.basis(field, (4,)).scale(s)
            omega = u.wedge(v)
        return apply_linear_map(omega, binv)

    return curve


@dataclass
class PositiveLocus:
    kind: str  # "CONIC" | "SURFACE"
    parametrize: object  # callable: CONIC (s,t) -> ω; SURFACE (s,t,u) -> ω
    member: object  # callable: PlueckerLine -> bool


def positive_locus(monad: Monad) -> PositiveLocus:
    """The locus of lines with a +2 summand: a conic (contraction rank 8,
    delegated to the dual pair) or a surface swept by the 2×3 kernel
    columns (rank 7)."""
    from .dual import diagnose

    diag = diagnose(monad)
    if diag.rank == 8:
        p_t = diag.p.transpose()
        curve = negative_conic(p_t)

        def member(line: PlueckerLine) -> bool:
            rows = [[p_t[0, j] for j in range(2)], [p_t[1, j] for j in range(2)]]
            return _pair_in_plane_test(rows, line)

        return PositiveLocus("CONIC", curve, member)

    p = diag.p
    field = monad.field

    def surface(s, t, u) -> Multivector:
        coeffs = [field.of(s), field.of(t), field.of(u)]
        a = Multivector.zero(field, p.dim_v)
        b = Multivector.zero(field, p.dim_v)
        for c, j in zip(coeffs, range(3)):
            a = a + p[0, j].scale(c)
            b = b + p[1, j].scale(c)
        return a.wedge(b)

    def member(line: PlueckerLine) -> bool:
        cols = [[p[0, j], p[1, j]] for j in range(3)]
        return _pair_in_plane_test(cols, line)

    return PositiveLocus("SURFACE", surface, member)


# ---------------------------------------------------------------------------
# Enumeration over finite fields


def line_count(q: int) -> int:
    """Number of lines in P⁴ over F_q (points of the Grassmannian)."""
    return (q * q + 1) * (q**4 + q**3 + q * q + q + 1)


def enumerate_lines(q: int) -> Iterator[PlueckerLine]:
    """Every line of P⁴(F_q) exactly once, as reduced-echelon spans, in a
    deterministic order."""
    if q > 11:
        raise ValueError("enumeration capped at q ≤ 11")
    field = Field.GF(q)
    nv = 5
    for i in range(nv):
        for j in range(i + 1, nv):
            free_x = [c for c in range(i + 1, nv) if c != j]
            free_y = [c for c in range(j + 1, nv)]
            for assign in _tuples(q, len(free_x) + len(free_y)):
                xa = assign[: len(free_x)]
                ya = assign[len(free_x) :]
                xc = [0] * nv
                yc = [0] * nv
                xc[i] = 1
                yc[j] = 1
                for c, v in zip(free_x, xa):
                    xc[c] = v
                for c, v in zip(free_y, ya):
                    yc[c] = v
                x = Multivector.from_coords(field, [field.of(v) for v in xc], nv)
                y = Multivector.from_coords(field, [field.of(v) for v in yc], nv)
                yield PlueckerLine.from_span(x, y)


def _tuples(q: int, n: int):
    if n == 0:
        yield ()
        return
    for rest in _tuples(q, n - 1):
        for v in range(q):
            yield rest + (v,)
