"""Hyperplane restriction and the scroll of plane-vanishing sections.

Covers: the section-count criterion for restricting a monad bundle to a
hyperplane, the exact splitting solver that detaches two trivial summands
from the restriction, the induced rank-2 monad on the hyperplane, and the
membership test for kernel-bundle sections vanishing on a 2-plane.

Frozen conventions:

* The canonical syzygy tables for the two normal forms are the 2×10
  matrices returned by :func:`canonical_syzygy_table`; coefficient vectors
  (p₀..p₉) always refer to their column order.
* The solver's equations are M'∧S + M'' = 0, which decouple per S-column
  into two 8×8 systems with unknowns (x₁..x₄, y₁..y₄) — the W-coordinates
  of the column's top and bottom entries — and rows ordered by the grade-3
  W-basis (123), (124), (134), (234) for product entry 1, then entry 2.
* The reference layout :func:`splitting_system_printed` pairs a row of
  unknowns against the columns of M' instead (the opposite composition
  order); it reproduces the closed-form canonical matrix entry-for-entry
  but is generically singular, so it is kept only as a frozen artifact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .exterior import (
    LinearFactorSpace,
    Multivector,
    apply_linear_map,
    factor_space_intersection,
    linear_factor_space,
)
from .extmatrix import ExtMatrix
from .fields import Field
from .forms import BinaryForm, has_common_projective_root
from .linalg import ScalarMatrix, span_rank
from .monad import Monad


class RestrictionError(ValueError):
    """Invalid input to a restriction or scroll computation."""


# ---------------------------------------------------------------------------
# Canonical syzygy tables


def canonical_syzygy_table(field: Field, tag: str) -> List[Tuple[Multivector, Multivector]]:
    """The frozen 10-column syzygy table (pairs of 3-forms) for the span-4
    normal form (``tag="SPAN4"``) or the span-3 normal form (``"SPAN3"``)."""

    def e(*idx):
        return Multivector.basis(field, idx)

    z = Multivector.zero(field)
    if tag == "SPAN4":
        return [
            (z, e(0, 2, 4)),
            (e(0, 2, 4), e(0, 2, 3) + e(0, 1, 4)),
            (e(0, 2, 3) + e(0, 1, 4), e(0, 1, 3)),
            (e(0, 1, 3), z),
            (z, e(1, 2, 4)),
            (e(1, 2, 4), e(1, 2, 3)),
            (e(1, 2, 3), z),
            (z, e(2, 3, 4)),
            (e(2, 3, 4), e(1, 3, 4)),
            (e(1, 3, 4), z),
        ]
    if tag == "SPAN3":
        return [
            (z, e(0, 1, 2)),
            (e(0, 1, 2), -e(0, 2, 3)),
            (e(0, 2, 3), e(0, 1, 3)),
            (e(0, 1, 3), z),
            (z, e(1, 2, 3)),
            (e(1, 2, 3), z),
            (z, e(1, 2, 4)),
            (e(1, 2, 4), -e(2, 3, 4)),
            (e(2, 3, 4), e(1, 3, 4)),
            (e(1, 3, 4), z),
        ]
    raise RestrictionError("tag must be 'SPAN4' or 'SPAN3'")


def section_from_coeffs(field: Field, p: Sequence, tag: str) -> Tuple[Multivector, Multivector]:
    """The kernel-bundle section (ξ, η) with coefficient vector p against the
    canonical syzygy table."""
    table = canonical_syzygy_table(field, tag)
    if len(p) != 10:
        raise RestrictionError("expected 10 coefficients")
    xi = Multivector.zero(field)
    eta = Multivector.zero(field)
    for c, (g1, g2) in zip(p, table):
        c = field.of(c)
        xi = xi + g1.scale(c)
        eta = eta + g2.scale(c)
    return xi, eta


# ---------------------------------------------------------------------------
# Restriction to a hyperplane


def _quotient_functional(w_basis: Sequence[Multivector]) -> List:
    """Coordinates of a nonzero linear functional vanishing on the given
    4-dimensional subspace."""
    if len(w_basis) != 4:
        raise RestrictionError("expected a basis of a 4-dimensional subspace")
    field = w_basis[0].field
    rows = [w.coords(1) for w in w_basis]
    kern = ScalarMatrix(field, rows).kernel_basis()
    if len(kern) != 1:
        raise RestrictionError("subspace is not 4-dimensional")
    return kern[0]


def h0_restriction(m: Monad, w_basis: Sequence[Multivector]) -> int:
    """Number of independent global sections of the bundle restricted to the
    hyperplane spanned by ``w_basis``: 2 minus the rank of the 2×2 matrix
    pairing the quotient functional against the entries of N."""
    phi = _quotient_functional(w_basis)
    field = m.field
    rows = []
    for i in range(2):
        row = []
        for j in range(2):
            coords = m.n[i, j].coords(1)
            row.append(sum((a * b for a, b in zip(phi, coords)), field.zero))
        rows.append(row)
    return 2 - ScalarMatrix(field, rows).rank()


def _adapted_basis(w_basis: Sequence[Multivector], v0: Multivector) -> ScalarMatrix:
    field = v0.field
    cols = [v0.coords(1)] + [w.coords(1) for w in w_basis]
    b = ScalarMatrix(field, [list(r) for r in zip(*cols)])
    if b.det() == 0:
        raise RestrictionError("v0 must complete the subspace to a basis")
    return b


def decompose_m(
    m: ExtMatrix, w_basis: Sequence[Multivector], v0: Multivector
) -> Tuple[ExtMatrix, ExtMatrix]:
    """Split a grade-3 matrix as M = M'∧v0 + M'' with M' of grade 2 and M''
    of grade 3, both inside the exterior algebra of the subspace."""
    b = _adapted_basis(w_basis, v0)
    binv = b.inverse()
    field = m.field
    prime_rows, dprime_rows = [], []
    for i in range(2):
        prow, drow = [], []
        for j in range(2):
            local = apply_linear_map(m[i, j], binv)
            pterms, dterms = {}, {}
            for key, val in local.terms.items():
                if 0 in key:
                    pterms[tuple(k for k in key if k != 0)] = val
                else:
                    dterms[key] = val
            prow.append(apply_linear_map(
                Multivector(field, 5, terms=pterms), b))
            drow.append(apply_linear_map(
                Multivector(field, 5, terms=dterms), b))
        prime_rows.append(prow)
        dprime_rows.append(drow)
    mprime = ExtMatrix(prime_rows)
    mdprime = ExtMatrix(dprime_rows)
    # exact reassembly check
    for i in range(2):
        for j in range(2):
            if mprime[i, j].wedge(v0) + mdprime[i, j] != m[i, j]:
                raise RestrictionError("decomposition failed to reassemble")
    return mprime, mdprime


# ---------------------------------------------------------------------------
# The splitting solver

_TRI_W = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
_ROW_SIGNS = (-1, -1, 1, 1)


def _to_w_coords(
    w_basis: Sequence[Multivector],
) -> Tuple[ScalarMatrix, ScalarMatrix]:
    """A basis change carrying w₁..w₄ onto e₁..e₄ (with any completion in
    position 0) and its inverse."""
    field = w_basis[0].field
    for j in range(5):
        try:
            b = _adapted_basis(w_basis, Multivector.basis(field, (j,)))
            return b, b.inverse()
        except RestrictionError:
            continue
    raise RestrictionError("subspace basis is degenerate")


def _w_entry(mv: Multivector, binv: ScalarMatrix) -> Multivector:
    local = apply_linear_map(mv, binv)
    if any(0 in key for key in local.terms):
        raise RestrictionError("entry does not lie inside the subspace algebra")
    return local


def splitting_system(
    mprime: ExtMatrix, mdprime: ExtMatrix, w_basis: Sequence[Multivector]
) -> Tuple[ScalarMatrix, List, List]:
    """The 8×8 coefficient matrix of the splitting equations
    (M'∧S)_ij = −M''_ij for one unknown S-column, plus the two right-hand
    sides (for the left and right columns of S).

    Unknowns are (x₁..x₄, y₁..y₄), the coordinates of the column's top and
    bottom entries; equation rows run over the product entries (1,c), (2,c)
    in the grade-3 basis order (123), (124), (134), (234)."""
    field = mprime.field
    _, binv = _to_w_coords(w_basis)
    mp = [[_w_entry(mprime[i, j], binv) for j in range(2)] for i in range(2)]
    md = [[_w_entry(mdprime[i, j], binv) for j in range(2)] for i in range(2)]
    cols: List[List] = []
    for unknown in range(2):  # S-column entry 1 then 2: pairs with m'-column 1 / 2
        for k in range(1, 5):
            ek = Multivector.basis(field, (k,))
            col: List = []
            for i in range(2):  # m'-row = product-entry row
                w = mp[i][unknown].wedge(ek)
                col.extend(w.terms.get(key, field.zero) for key in _TRI_W)
            cols.append(col)
    a = ScalarMatrix(field, [list(r) for r in zip(*cols)])
    rhs = []
    for c in range(2):  # S-column
        vec: List = []
        for i in range(2):
            vec.extend(
                -md[i][c].terms.get(key, field.zero) for key in _TRI_W
            )
        rhs.append(vec)
    return a, rhs[0], rhs[1]


def splitting_system_printed(
    mprime: ExtMatrix, w_basis: Sequence[Multivector]
) -> ScalarMatrix:
    """The frozen reference layout of the splitting coefficients: the 8×8
    matrix built by pairing a row of unknowns against the columns of M'
    (the opposite composition order to :func:`splitting_system`), with the
    row signs of :data:`_ROW_SIGNS` applied per 4-block.

    In the canonical coordinates this matrix agrees entry-for-entry with
    :func:`splitting_system_canonical`.  It is generically singular, so the
    actual solver does not use it."""
    field = mprime.field
    _, binv = _to_w_coords(w_basis)
    mp = [[_w_entry(mprime[i, j], binv) for j in range(2)] for i in range(2)]
    cols: List[List] = []
    for unknown in range(2):  # row-unknown 1 then 2: pairs with m'-row 1 / 2
        for k in range(1, 5):
            ek = Multivector.basis(field, (k,))
            col: List = []
            for j in range(2):  # m'-column
                w = ek.wedge(mp[unknown][j])
                for sgn, key in zip(_ROW_SIGNS, _TRI_W):
                    col.append(field.of(sgn) * w.terms.get(key, field.zero))
            cols.append(col)
    return ScalarMatrix(field, [list(r) for r in zip(*cols)])


def splitting_system_canonical(field: Field, p: Sequence, q: Sequence) -> ScalarMatrix:
    """The closed-form 8×8 splitting matrix for a matrix built on the span-4
    normal form from syzygy coefficients (p, q) against the canonical
    table; used as the independent reference for :func:`splitting_system`."""
    p = [field.of(c) for c in p]
    q = [field.of(c) for c in q]
    z = field.zero

    def block(c):
        return [
            [-c[2], c[3], z, z, -c[1], c[2], z, z],
            [-c[1], c[2], z, z, -c[0], c[1], z, z],
            [z, z, -c[2], c[3], z, z, -c[1], c[2]],
            [z, z, -c[1], c[2], z, z, -c[0], c[1]],
        ]

    return ScalarMatrix(field, block(p) + block(q))


def solve_splitting(
    mprime: ExtMatrix, mdprime: ExtMatrix, w_basis: Sequence[Multivector]
) -> Optional[ExtMatrix]:
    """An exact 2×2 matrix S of linear forms over the subspace with
    M'∧S + M'' = 0, or None when the linear system has no solution."""
    field = mprime.field
    b, _ = _to_w_coords(w_basis)
    a, rhs_left, rhs_right = splitting_system(mprime, mdprime, w_basis)
    cols = []
    for rhs in (rhs_left, rhs_right):
        sol = a.solve(rhs)
        if sol is None:
            return None
        entries = []
        for half in (sol[:4], sol[4:]):
            local = Multivector(
                field, 5, terms={(k,): c for k, c in zip(range(1, 5), half)}
            )
            entries.append(apply_linear_map(local, b))
        cols.append(entries)
    s = ExtMatrix([[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]])
    if not (mprime.wedge_mul(s) + mdprime).is_zero():
        raise RestrictionError("splitting verification failed")
    return s


# ---------------------------------------------------------------------------
# The induced monad on the hyperplane


def _mprime_is_subbundle(mprime: ExtMatrix, w_basis: Sequence[Multivector]) -> bool:
    """Subbundle test for a 2×2 grade-2 matrix over a 4-dimensional space:
    no point of the column pencil may have entries with a common linear
    factor, i.e. the three top-form pairings ξ², η², ξ∧η (binary quadratics
    along the pencil) share no projective root."""
    field = mprime.field
    _, binv = _to_w_coords(w_basis)
    mp = [[_w_entry(mprime[i, j], binv) for j in range(2)] for i in range(2)]
    top = (1, 2, 3, 4)

    def pairing(u1, u2, v1, v2) -> BinaryForm:
        # coefficient of the subspace top form in (s·u1+t·u2)∧(s·v1+t·v2)
        c0 = u1.wedge(v1).terms.get(top, field.zero)
        c1 = (u1.wedge(v2) + u2.wedge(v1)).terms.get(top, field.zero)
        c2 = u2.wedge(v2).terms.get(top, field.zero)
        return BinaryForm(field, [c0, c1, c2])

    forms = [
        pairing(mp[0][0], mp[0][1], mp[0][0], mp[0][1]),
        pairing(mp[1][0], mp[1][1], mp[1][0], mp[1][1]),
        pairing(mp[0][0], mp[0][1], mp[1][0], mp[1][1]),
    ]
    return not has_common_projective_root(forms)


@dataclass
class P3Restriction:
    """The rank-2 monad data induced on the hyperplane spanned by the
    entries of N, together with the splitting matrix that detached the two
    trivial summands."""

    mprime: ExtMatrix
    mdprime: ExtMatrix
    n: ExtMatrix
    s: ExtMatrix
    w_basis: List[Multivector]
    v0: Multivector

    def to_json_obj(self) -> dict:
        return {
            "mprime": self.mprime.to_json_obj(),
            "n": self.n.to_json_obj(),
            "s": self.s.to_json_obj(),
            "w": [str(w) for w in self.w_basis],
            "v0": str(self.v0),
        }


def induced_p3_monad(m: Monad) -> P3Restriction:
    """Restrict the monad to the hyperplane spanned by the entries of N,
    split off the two trivial summands, and validate the induced monad."""
    from .normal_forms import span_basis

    field = m.field
    dim, w_basis = span_basis(m.n)
    if dim != 4:
        raise RestrictionError("the entry span of N must be 4-dimensional")
    v0 = None
    for j in range(5):
        cand = Multivector.basis(field, (j,))
        try:
            _adapted_basis(w_basis, cand)
            v0 = cand
            break
        except RestrictionError:
            continue
    if v0 is None:
        raise RestrictionError("could not complete the subspace basis")
    mprime, mdprime = decompose_m(m.m, w_basis, v0)
    s = solve_splitting(mprime, mdprime, w_basis)
    if s is None:
        raise RestrictionError("no splitting found at this point")
    if not m.n.wedge_mul(mprime).is_zero():
        raise RestrictionError("induced complex condition failed")
    if not _mprime_is_subbundle(mprime, w_basis):
        raise RestrictionError("induced matrix is not a subbundle")
    return P3Restriction(mprime, mdprime, m.n, s, list(w_basis), v0)


# ---------------------------------------------------------------------------
# The scroll of plane-vanishing sections

# rows as (coefficient index, sign); the signs on the second type absorb
# the two negated table entries so that rank 1 means exact proportionality
_SCROLL_ROWS = {
    "SPAN4": (
        ((1, 1), (2, 1), (3, 1), (5, 1), (6, 1), (8, 1), (9, 1)),
        ((0, 1), (1, 1), (2, 1), (4, 1), (5, 1), (7, 1), (8, 1)),
    ),
    "SPAN3": (
        ((1, 1), (2, -1), (3, 1), (5, 1), (7, 1), (8, -1), (9, 1)),
        ((0, 1), (1, 1), (2, 1), (4, 1), (6, 1), (7, 1), (8, 1)),
    ),
}


@dataclass
class ScrollResult:
    on_scroll: bool
    xi: Multivector
    eta: Multivector
    plane: Optional[LinearFactorSpace]

    def to_json_obj(self) -> dict:
        return {
            "on_scroll": self.on_scroll,
            "xi": str(self.xi),
            "eta": str(self.eta),
            "plane": None if self.plane is None
            else [str(v) for v in self.plane.basis],
        }


def section_plane(xi: Multivector, eta: Multivector) -> Optional[LinearFactorSpace]:
    """The 2-plane inside the common zero set of a section (ξ, η), when one
    exists: the linear-factor spaces must share a 3-dimensional subspace."""
    if xi.is_zero() and eta.is_zero():
        raise RestrictionError("zero section")
    if xi.is_zero():
        space = linear_factor_space(eta)
    elif eta.is_zero():
        space = linear_factor_space(xi)
    else:
        space = LinearFactorSpace(factor_space_intersection(xi, eta))
    if space.dim >= 3:
        return space
    return None


def scroll_membership(field: Field, p: Sequence, tag: str) -> ScrollResult:
    """Does the section with coefficients p against the canonical syzygy
    table vanish on a 2-plane?

    The decision is the rank-1 condition on the frozen 2×7 coefficient
    matrix; when it holds, the result is cross-validated: ξ and η are
    proportional, the starred square of the section vanishes, and the
    returned plane is the 3-dimensional linear-factor space.
    """
    p = [field.of(c) for c in p]
    if all(c == 0 for c in p):
        raise RestrictionError("zero coefficient vector")
    if tag not in _SCROLL_ROWS:
        raise RestrictionError("tag must be 'SPAN4' or 'SPAN3'")
    top, bot = _SCROLL_ROWS[tag]
    mat = ScalarMatrix(
        field,
        [
            [field.of(s) * p[i] for i, s in top],
            [field.of(s) * p[i] for i, s in bot],
        ],
    )
    xi, eta = section_from_coeffs(field, p, tag)
    # membership needs ξ = λ·η with λ ≠ 0: rank 1 with both rows nonzero
    row_zero = any(
        all(c == 0 for c in mat.entries[i]) for i in range(2)
    )
    if mat.rank() != 1 or row_zero:
        return ScrollResult(False, xi, eta, None)
    # cross-validation of the membership
    if xi.is_zero() or eta.is_zero():
        raise RestrictionError("rank test and proportionality disagree")
    if span_rank(field, [xi.coords(3), eta.coords(3)]) > 1:
        raise RestrictionError("rank test and proportionality disagree")
    for form in (xi, eta):
        st = form.star()
        if not st.wedge(st).is_zero():
            raise RestrictionError("starred square does not vanish on scroll")
    plane = linear_factor_space(xi)
    if plane.dim != 3:
        raise RestrictionError("linear-factor space is not 3-dimensional")
    return ScrollResult(True, xi, eta, plane)


def starred_square_coords(field: Field, p: Sequence, tag: str) -> Tuple[List, List]:
    """Two routes to the starred square of ξ: the exact exterior-algebra
    computation and the closed-form quadratic coefficient formulas; the two
    must agree up to one global scalar."""
    p = [field.of(c) for c in p]
    xi, _ = section_from_coeffs(field, p, tag)
    st = xi.star()
    raw = st.wedge(st).coords(4)
    # the star convention used here differs from the closed form's pairing
    # by an alternating sign over the lexicographic top-form basis
    exact = [c if k % 2 == 0 else -c for k, c in enumerate(raw)]
    if tag == "SPAN4":
        closed = [
            p[2] * p[8] - p[1] * p[9],
            p[3] * p[8] - p[2] * p[9],
            p[1] * p[6] - p[2] * p[5],
            p[2] * p[6] - p[3] * p[5],
            p[2] * p[2] - p[1] * p[3],
        ]
    else:
        closed = [
            field.zero,
            p[3] * p[8] - p[2] * p[9],
            p[1] * p[8] - p[2] * p[7],
            p[1] * p[9] - p[3] * p[7],
            field.zero,
        ]
    return exact, closed
