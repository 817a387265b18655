"""Exact dense linear algebra over any field from :mod:`monadkit.fields`.

All routines work on lists-of-lists of field scalars and use plain Gaussian
elimination with exact division.  Matrices at this scale (≤ ~60 columns) make
fraction growth a non-issue.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .fields import Field, Scalar

Row = List[Scalar]
Mat = List[Row]


class ScalarMatrix:
    """An immutable-by-convention matrix of exact field scalars."""

    def __init__(self, field: Field, entries: Sequence[Sequence]):
        self.field = field
        self.entries: Mat = [[field.of(x) for x in row] for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")

    # -- constructors -------------------------------------------------
    @staticmethod
    def identity(field: Field, n: int) -> "ScalarMatrix":
        return ScalarMatrix(
            field, [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def zero(field: Field, rows: int, cols: int) -> "ScalarMatrix":
        return ScalarMatrix(field, [[0] * cols for _ in range(rows)])

    # -- basic ops ----------------------------------------------------
    def __getitem__(self, ij: Tuple[int, int]) -> Scalar:
        return self.entries[ij[0]][ij[1]]

    def row(self, i: int) -> Row:
        return list(self.entries[i])

    def col(self, j: int) -> Row:
        return [self.entries[i][j] for i in range(self.rows)]

    def transpose(self) -> "ScalarMatrix":
        return ScalarMatrix(
            self.field,
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def __matmul__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        z = self.field.zero
        out = []
        for i in range(self.rows):
            out.append(
                [
                    sum(
                        (self.entries[i][k] * other.entries[k][j] for k in range(self.cols)),
                        z,
                    )
                    for j in range(other.cols)
                ]
            )
        return ScalarMatrix(self.field, out)

    def __add__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        return ScalarMatrix(
            self.field,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def __sub__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        return ScalarMatrix(
            self.field,
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def scale(self, c) -> "ScalarMatrix":
        c = self.field.of(c)
        return ScalarMatrix(self.field, [[c * x for x in row] for row in self.entries])

    def __eq__(self, other):
        return (
            isinstance(other, ScalarMatrix)
            and self.field == other.field
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"ScalarMatrix({self.field}, {self.entries})"

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(x == z for row in self.entries for x in row)

    # -- elimination --------------------------------------------------
    def rref(self) -> Tuple[Mat, List[int]]:
        """Reduced row-echelon form and the list of pivot columns."""
        m = [list(row) for row in self.entries]
        pivots: List[int] = []
        r = 0
        for c in range(self.cols):
            pr = next((i for i in range(r, self.rows) if m[i][c] != 0), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            inv = self.field.one / m[r][c]
            m[r] = [inv * x for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return m, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> List[Row]:
        """Basis of the right kernel (column vectors as flat lists)."""
        m, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        one, zero = self.field.one, self.field.zero
        for fc in free:
            v = [zero] * self.cols
            v[fc] = one
            for r, pc in enumerate(pivots):
                v[pc] = -m[r][fc]
            basis.append(v)
        return basis

    def cokernel_functionals(self) -> List[Row]:
        """Basis of left-kernel functionals (vanish on the column space)."""
        return self.transpose().kernel_basis()

    def inverse(self) -> "ScalarMatrix":
        if self.rows != self.cols:
            raise ValueError("not square")
        n = self.rows
        aug = ScalarMatrix(
            self.field,
            [
                self.entries[i] + [1 if j == i else 0 for j in range(n)]
                for i in range(n)
            ],
        )
        m, pivots = aug.rref()
        if pivots != list(range(n)):
            raise ValueError("singular matrix")
        return ScalarMatrix(self.field, [row[n:] for row in m])

    def det(self) -> Scalar:
        if self.rows != self.cols:
            raise ValueError("not square")
        m = [list(row) for row in self.entries]
        n = self.rows
        det = self.field.one
        for c in range(n):
            pr = next((i for i in range(c, n) if m[i][c] != 0), None)
            if pr is None:
                return self.field.zero
            if pr != c:
                m[c], m[pr] = m[pr], m[c]
                det = -det
            det = det * m[c][c]
            inv = self.field.one / m[c][c]
            for i in range(c + 1, n):
                if m[i][c] != 0:
                    f = m[i][c] * inv
                    m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        return det

    def solve(self, rhs: Sequence) -> Optional[Row]:
        """One solution of self·x = rhs, or None if inconsistent."""
        b = [self.field.of(x) for x in rhs]
        aug = ScalarMatrix(
            self.field, [self.entries[i] + [b[i]] for i in range(self.rows)]
        )
        m, pivots = aug.rref()
        if self.cols in pivots:
            return None
        zero = self.field.zero
        x = [zero] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = m[r][self.cols]
        return x


def span_rank(field: Field, vectors: Sequence[Sequence]) -> int:
    """Dimension of the span of the given coordinate vectors."""
    if not vectors:
        return 0
    return ScalarMatrix(field, list(vectors)).rank()


def in_span(field: Field, vectors: Sequence[Sequence], target: Sequence) -> bool:
    """Is ``target`` a linear combination of ``vectors``?"""
    cols = [list(v) for v in vectors]
    mat = ScalarMatrix(field, [list(r) for r in zip(*cols)]) if cols else None
    if mat is None:
        return all(field.of(x) == 0 for x in target)
    return mat.solve(list(target)) is not None
