"""Matrices with exterior-algebra entries and the degeneracy tests.

An :class:`ExtMatrix` keeps a rectangular array of homogeneous
:class:`~monadkit.exterior.Multivector` entries of one common grade and
variance.  The product of two such matrices wedges entries.  The
``degenerate_combinations`` routine decides where a pencil of rows (or
columns) of a grade-1 matrix degenerates to a single vector, as a binary-form
gcd.
"""

from __future__ import annotations

import json
from typing import List, Sequence

from .exterior import Multivector, PRIMAL
from .fields import Field
from .forms import BinaryForm, form_gcd
from .linalg import ScalarMatrix


class ExtMatrix:
    """A matrix of homogeneous multivector entries of one grade."""

    __slots__ = ("field", "dim_v", "variance", "grade", "rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[Multivector]]):
        self.entries: List[List[Multivector]] = [list(r) for r in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        first = self.entries[0][0]
        self.field = first.field
        self.dim_v = first.dim_v
        self.variance = first.variance
        grades = set()
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
            for x in row:
                if x.dim_v != self.dim_v or x.variance != self.variance:
                    raise ValueError("mixed exterior algebras in one matrix")
                if not x.is_zero():
                    grades.add(x.grade)
        if len(grades) > 1:
            raise ValueError(f"mixed grades {sorted(grades)} in one matrix")
        self.grade = grades.pop() if grades else 0

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero(
        field: Field, rows: int, cols: int, dim_v: int = 5, variance: str = PRIMAL
    ) -> "ExtMatrix":
        z = Multivector.zero(field, dim_v, variance)
        return ExtMatrix([[z] * cols for _ in range(rows)])

    @staticmethod
    def parse(
        field: Field, rows: Sequence[Sequence[str]], dim_v: int = 5
    ) -> "ExtMatrix":
        return ExtMatrix(
            [[Multivector.parse(field, s, dim_v) for s in row] for row in rows]
        )

    # -- access -------------------------------------------------------
    def __getitem__(self, ij) -> Multivector:
        return self.entries[ij[0]][ij[1]]

    def row(self, i: int) -> List[Multivector]:
        return list(self.entries[i])

    def col(self, j: int) -> List[Multivector]:
        return [self.entries[i][j] for i in range(self.rows)]

    def transpose(self) -> "ExtMatrix":
        return ExtMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.entries for x in row)

    def __eq__(self, other):
        return isinstance(other, ExtMatrix) and self.entries == other.entries

    # -- algebra ------------------------------------------------------
    def wedge_mul(self, other: "ExtMatrix") -> "ExtMatrix":
        """Matrix product with entrywise wedge: (A∧B)_ij = Σ_k A_ik ∧ B_kj."""
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        if self.dim_v != other.dim_v or self.variance != other.variance:
            raise ValueError("mismatched exterior algebras")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = Multivector.zero(self.field, self.dim_v, self.variance)
                for k in range(self.cols):
                    acc = acc + self.entries[i][k].wedge(other.entries[k][j])
                row.append(acc)
            out.append(row)
        return ExtMatrix(out)

    def scalar_mul_left(self, g: ScalarMatrix) -> "ExtMatrix":
        """g · A with scalar g acting on the left."""
        if g.cols != self.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(g.rows):
            row = []
            for j in range(self.cols):
                acc = Multivector.zero(self.field, self.dim_v, self.variance)
                for k in range(self.rows):
                    acc = acc + self.entries[k][j].scale(g[i, k])
                row.append(acc)
            out.append(row)
        return ExtMatrix(out)

    def scalar_mul_right(self, g: ScalarMatrix) -> "ExtMatrix":
        """A · g with scalar g acting on the right."""
        if self.cols != g.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(g.cols):
                acc = Multivector.zero(self.field, self.dim_v, self.variance)
                for k in range(self.cols):
                    acc = acc + self.entries[i][k].scale(g[k, j])
                row.append(acc)
            out.append(row)
        return ExtMatrix(out)

    def scale(self, c) -> "ExtMatrix":
        return ExtMatrix([[x.scale(c) for x in row] for row in self.entries])

    def __add__(self, other: "ExtMatrix") -> "ExtMatrix":
        return ExtMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: "ExtMatrix") -> "ExtMatrix":
        return self + other.scale(-1)

    # -- span of entries ---------------------------------------------
    def entry_span_rank(self) -> int:
        """Dimension of the linear span of all entries."""
        coords = [
            x.coords(self.grade) for row in self.entries for x in row
        ]
        return ScalarMatrix(self.field, coords).rank()

    # -- serialization ------------------------------------------------
    def to_json_obj(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "grade": self.grade,
            "entries": [[str(x) for x in row] for row in self.entries],
        }

    @staticmethod
    def from_json_obj(field: Field, obj: dict, dim_v: int = 5) -> "ExtMatrix":
        m = ExtMatrix.parse(field, obj["entries"], dim_v)
        if m.rows != obj["rows"] or m.cols != obj["cols"]:
            raise ValueError("declared shape does not match entries")
        if not m.is_zero() and m.grade != obj["grade"]:
            raise ValueError("declared grade does not match entries")
        return m

    def __repr__(self):
        return json.dumps(self.to_json_obj())


def degenerate_combinations(a: ExtMatrix, axis: str) -> BinaryForm:
    """Degeneracy gcd of a pencil of two rows (or two columns).

    For axis="rows" (requires exactly 2 rows), form the combined row
    u(s,t) = s·row₁ + t·row₂ entrywise and return the gcd of all Λ²V
    coefficients of the pairwise wedges of its entries.  The combination is a
    pure tensor λ⊗x exactly at the projective roots of the gcd (gcd = 0 means
    every (s:t)).  axis="columns" is the transposed statement.
    """
    if a.grade != 1:
        raise ValueError("degeneracy test expects grade-1 entries")
    if axis == "rows":
        if a.rows != 2:
            raise ValueError("axis=rows needs exactly 2 rows")
        vecs = [(a[0, j], a[1, j]) for j in range(a.cols)]
    elif axis == "columns":
        if a.cols != 2:
            raise ValueError("axis=columns needs exactly 2 columns")
        vecs = [(a[i, 0], a[i, 1]) for i in range(a.rows)]
    else:
        raise ValueError("axis must be 'rows' or 'columns'")
    field = a.field
    # entries of the combined vector: v_j(s,t) = s·first_j + t·second_j;
    # wedge v_j ∧ v_k is quadratic in (s,t) with Λ²V coefficients.
    quadratics: List[BinaryForm] = []
    n = len(vecs)
    for j in range(n):
        for k in range(j + 1, n):
            f0, s0 = vecs[j]
            f1, s1 = vecs[k]
            c_ss = f0.wedge(f1)  # s² term
            c_st = f0.wedge(s1) + s0.wedge(f1)  # st term
            c_tt = s0.wedge(s1)  # t² term
            for key in c_ss.terms.keys() | c_st.terms.keys() | c_tt.terms.keys():
                quadratics.append(
                    BinaryForm(
                        field,
                        [
                            c_ss.terms.get(key, field.zero),
                            c_st.terms.get(key, field.zero),
                            c_tt.terms.get(key, field.zero),
                        ],
                    )
                )
    if not quadratics:
        return BinaryForm.zero(field)
    return form_gcd(quadratics)
