"""Degree-3 syzygy spaces of a grade-1 matrix and the families of grade-3
matrices they parametrize.

For a 2-column grade-1 matrix A (2×2 or 3×2), a syzygy column is a pair
(γ₁, γ₂) of grade-3 multivectors with a₁₁∧γ₁ + a₁₂∧γ₂ = 0 for every row.
The full space is the kernel of a stacked scalar system with 20 columns
(two copies of the 10-dimensional grade-3 component).
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .exterior import Multivector
from .extmatrix import ExtMatrix
from .fields import Field
from .linalg import ScalarMatrix
from .monad import Monad, check_m_subbundle


def _basis3(dim_v: int = 5):
    return list(combinations(range(dim_v), 3))


class SyzygySpace:
    """A basis of all degree-3 syzygy columns of a grade-1 matrix."""

    def __init__(self, source: ExtMatrix, columns: List[Tuple[Multivector, Multivector]]):
        self.source = source
        self.columns = columns
        self.field = source.field

    @property
    def dimension(self) -> int:
        return len(self.columns)

    def column_matrix(self) -> Optional[ExtMatrix]:
        """The 2×(r+1) exterior matrix whose columns are the basis syzygies."""
        if not self.columns:
            return None
        return ExtMatrix(
            [[c[0] for c in self.columns], [c[1] for c in self.columns]]
        )

    def coordinates(self) -> ScalarMatrix:
        """20×dim matrix: each basis column as coordinates in (Λ³V)²."""
        cols = []
        for g1, g2 in self.columns:
            cols.append(g1.coords(3) + g2.coords(3))
        return ScalarMatrix(self.field, [list(r) for r in zip(*cols)])

    def make_m(self, p: Sequence, q: Sequence) -> ExtMatrix:
        """The grade-3 matrix with columns Γ·p and Γ·q."""
        if len(p) != self.dimension or len(q) != self.dimension:
            raise ValueError("coefficient length must equal the syzygy dimension")
        field = self.field
        dim_v = self.source.dim_v

        def combine(coeffs):
            top = Multivector.zero(field, dim_v)
            bot = Multivector.zero(field, dim_v)
            for c, (g1, g2) in zip(coeffs, self.columns):
                top = top + g1.scale(c)
                bot = bot + g2.scale(c)
            return top, bot

        c1 = combine(p)
        c2 = combine(q)
        return ExtMatrix([[c1[0], c2[0]], [c1[1], c2[1]]])

    def coefficients_of(self, m: ExtMatrix) -> Optional[Tuple[List, List]]:
        """Solve M = Γ·[(p;q)] for (p, q); None if M is outside the family."""
        coords = self.coordinates()
        col1 = m.col(0)
        col2 = m.col(1)
        t1 = col1[0].coords(3) + col1[1].coords(3)
        t2 = col2[0].coords(3) + col2[1].coords(3)
        p = coords.solve(t1)
        q = coords.solve(t2)
        if p is None or q is None:
            return None
        return p, q

    def contains(self, m: ExtMatrix) -> bool:
        return self.coefficients_of(m) is not None


def syzygy_space(a: ExtMatrix) -> SyzygySpace:
    """Exact kernel basis of the degree-3 syzygy system of a 2-column
    grade-1 matrix."""
    if a.cols != 2:
        raise ValueError("expected a 2-column matrix")
    if not a.is_zero() and a.grade != 1:
        raise ValueError("expected grade-1 entries")
    field, dim_v = a.field, a.dim_v
    b3 = _basis3(dim_v)
    b4 = list(combinations(range(dim_v), 4))
    rows = []
    for i in range(a.rows):
        # images of basis columns (e_T, 0) and (0, e_T) under the row map
        images = []
        for j in (0, 1):
            aij = a[i, j]
            for t in b3:
                images.append(aij.wedge(Multivector.basis(field, t, dim_v)))
        for s in b4:
            rows.append([img.terms.get(s, field.zero) for img in images])
    kernel = ScalarMatrix(field, rows).kernel_basis()
    n3 = len(b3)
    columns = []
    for vec in kernel:
        g1 = Multivector(field, dim_v, terms={t: c for t, c in zip(b3, vec[:n3])})
        g2 = Multivector(field, dim_v, terms={t: c for t, c in zip(b3, vec[n3:])})
        columns.append((g1, g2))
    return SyzygySpace(a, columns)


def family_dimension(a: ExtMatrix) -> int:
    return syzygy_space(a).dimension


def subbundle_witness(
    a: ExtMatrix, search_budget: int = 1000, seed: int = 0
) -> Optional[ExtMatrix]:
    """Seeded search for a subbundle matrix in the syzygy family of ``a``.

    Samples coefficient pairs (p, q) with entries in {−2..2} and returns the
    first matrix passing the subbundle test, or None within the budget.
    """
    space = syzygy_space(a)
    if space.dimension == 0:
        return None
    field = a.field
    for trial in range(search_budget):
        rng = random.Random(f"{seed}:{trial}")
        p = [field.of(rng.randint(-2, 2)) for _ in range(space.dimension)]
        q = [field.of(rng.randint(-2, 2)) for _ in range(space.dimension)]
        m = space.make_m(p, q)
        if m.is_zero():
            continue
        if check_m_subbundle(m):
            return m
    return None


def random_monad(
    n: ExtMatrix,
    rng: random.Random,
    height: int = 3,
    max_tries: int = 200,
) -> Monad:
    """A random valid monad on the given surjective N, built from random
    syzygy coefficients; raises after ``max_tries`` failures."""
    space = syzygy_space(n)
    field = n.field
    for _ in range(max_tries):
        p = [field.random(rng, height) for _ in range(space.dimension)]
        q = [field.random(rng, height) for _ in range(space.dimension)]
        m = space.make_m(p, q)
        if m.is_zero():
            continue
        monad = Monad(m, n)
        if monad.in_x0:
            return monad
    raise RuntimeError("no valid monad found in the sampling budget")
