"""Normal forms of grade-1 matrices under basis changes on both sides and on
the underlying 5-space.

Three routines:

* ``normalize_n`` — brings a surjective 2×2 grade-1 matrix to
  ``[[e1,e2],[e3,e4]]`` (entry span 4) or ``[[e1,e2],[e3,e1]]`` (entry span
  3) and returns the explicit transformation witnesses.
* ``kronecker_form_2xr`` — staircase normal form of a 2×r grade-1 pencil
  with no degenerate generalized column, with witnesses.
* ``classify_n1`` — sorts a 3×2 grade-1 matrix (surjective top block) into
  one of seven equivalence classes by exact orbit invariants.

Every witness is re-verified by carrying out the product; nothing is trusted
from intermediate algebra.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Sequence, Tuple

from .exterior import Multivector, apply_linear_map
from .extmatrix import ExtMatrix
from .fields import Field
from .forms import BinaryForm, projective_roots
from .linalg import ScalarMatrix, in_span, span_rank
from .syzygy import family_dimension


class ClassificationError(ValueError):
    """The input violates a precondition of a normal-form routine."""


class PencilError(ValueError):
    """The pencil has a degenerate generalized column (or is otherwise not
    of staircase type)."""


# ---------------------------------------------------------------------------
# Entry spans


def span_basis(a: ExtMatrix) -> Tuple[int, List[Multivector]]:
    """Dimension and a basis (chosen among the entries) of the linear span
    of all entries of a grade-1 matrix."""
    field = a.field
    entries = [x for row in a.entries for x in row if not x.is_zero()]
    basis: List[Multivector] = []
    coords: List[List] = []
    for x in entries:
        c = x.coords(1)
        if not in_span(field, coords, c):
            basis.append(x)
            coords.append(list(c))
    return len(basis), basis


def _complete_basis(field: Field, cols: List[List], n: int) -> ScalarMatrix:
    """An invertible n×n matrix whose first ``len(cols)`` columns are the
    given independent vectors, completed by standard basis vectors."""
    chosen = [list(c) for c in cols]
    for i in range(n):
        if len(chosen) == n:
            break
        e = [field.one if j == i else field.zero for j in range(n)]
        cand = chosen + [e]
        if span_rank(field, cand) == len(cand):
            chosen.append(e)
    if len(chosen) != n:
        raise ClassificationError("could not complete to a basis")
    return ScalarMatrix(field, [list(r) for r in zip(*chosen)])


def apply_basis(b: ScalarMatrix, a: ExtMatrix) -> ExtMatrix:
    """Entrywise push-forward of a primal exterior matrix through the basis
    change v ↦ B·v."""
    return ExtMatrix(
        [[apply_linear_map(x, b) for x in row] for row in a.entries]
    )


# ---------------------------------------------------------------------------
# 2×2 normalization


@dataclass
class NormalizeResult:
    """Witnesses with the convention
    ``apply_basis(basis_change, g_row · N · g_col) == normal``."""

    tag: str  # "SPAN4" | "SPAN3"
    g_row: ScalarMatrix
    g_col: ScalarMatrix
    basis_change: ScalarMatrix
    normal: ExtMatrix

    def reconstruct(self, n: ExtMatrix) -> ExtMatrix:
        return apply_basis(
            self.basis_change,
            n.scalar_mul_left(self.g_row).scalar_mul_right(self.g_col),
        )

    def to_json_obj(self) -> dict:
        return {
            "tag": self.tag,
            "g_row": [[str(x) for x in r] for r in self.g_row.entries],
            "g_col": [[str(x) for x in r] for r in self.g_col.entries],
            "basis_change": [
                [str(x) for x in r] for r in self.basis_change.entries
            ],
            "normal": self.normal.to_json_obj(),
        }


SPAN4_NORMAL = [["e1", "e2"], ["e3", "e4"]]
SPAN3_NORMAL = [["e1", "e2"], ["e3", "e1"]]


def normalize_n(n: ExtMatrix) -> NormalizeResult:
    """Normal form of a surjective 2×2 grade-1 matrix with verified
    transformation witnesses."""
    from .monad import check_n_surjective

    if n.rows != 2 or n.cols != 2 or (not n.is_zero() and n.grade != 1):
        raise ClassificationError("expected a 2×2 grade-1 matrix")
    if not check_n_surjective(n):
        raise ClassificationError("matrix is not surjective")
    field = n.field
    dim, _ = span_basis(n)

    if dim == 4:
        cols = [n[0, 0].coords(1), n[0, 1].coords(1),
                n[1, 0].coords(1), n[1, 1].coords(1)]
        c = _complete_basis(field, cols, 5)
        # order the basis so the four entries land on e1..e4
        perm = ScalarMatrix(field, [
            [1 if (i, j) in ((0, 4), (1, 0), (2, 1), (3, 2), (4, 3)) else 0
             for j in range(5)] for i in range(5)
        ])
        # c columns: [n11,n12,n21,n22,u]; we want n11→e1 … n22→e4, u→e0
        b = perm @ c.inverse()
        ident = ScalarMatrix.identity(field, 2)
        result = NormalizeResult(
            "SPAN4", ident, ident, b, ExtMatrix.parse(field, SPAN4_NORMAL)
        )
    elif dim == 3:
        result = _normalize_span3(n)
    else:
        raise ClassificationError(f"entry span {dim} inconsistent with surjectivity")

    if result.reconstruct(n) != result.normal:
        raise ClassificationError("witness verification failed")
    return result


def _normalize_span3(n: ExtMatrix) -> NormalizeResult:
    field = n.field
    swap = ScalarMatrix(field, [[0, 1], [1, 0]])
    ident = ScalarMatrix.identity(field, 2)
    # permute so the entries at (0,0), (0,1), (1,0) are independent
    for g_row in (ident, swap):
        for g_col in (ident, swap):
            cur = n.scalar_mul_left(g_row).scalar_mul_right(g_col)
            trio = [cur[0, 0].coords(1), cur[0, 1].coords(1), cur[1, 0].coords(1)]
            if span_rank(field, trio) == 3:
                return _span3_chain(n, g_row, g_col)
    raise ClassificationError("no independent corner triple in a span-3 matrix")


def _span3_chain(
    n: ExtMatrix, g_row: ScalarMatrix, g_col: ScalarMatrix
) -> NormalizeResult:
    """Column-operation chain: clear the third coordinate of the (1,1)
    entry, rescale the first column by the (then nonzero) diagonal
    coefficient, and absorb the remaining off-term into the first column."""
    field = n.field

    def current():
        return n.scalar_mul_left(g_row).scalar_mul_right(g_col)

    def decompose(cur):
        a, b, c = cur[0, 0].coords(1), cur[0, 1].coords(1), cur[1, 0].coords(1)
        abc = ScalarMatrix(field, [list(r) for r in zip(a, b, c)])
        sol = abc.solve(cur[1, 1].coords(1))
        if sol is None:
            raise ClassificationError("entry span is not 3-dimensional")
        return sol  # (λ, μ, ν)

    lam, mu, nu = decompose(current())
    # column 2 −= ν · column 1
    g_col = g_col @ ScalarMatrix(field, [[1, -nu], [0, 1]])
    lam, mu, nu = decompose(current())
    if nu != 0:
        raise ClassificationError("internal: third coefficient not cleared")
    if lam == 0:
        raise ClassificationError("degenerate column pencil; matrix not surjective")
    # column 1 ·= λ, then column 1 += μ · column 2
    g_col = g_col @ ScalarMatrix(field, [[lam, 0], [0, 1]])
    g_col = g_col @ ScalarMatrix(field, [[1, 0], [mu, 1]])
    cur = current()
    if cur[0, 0] != cur[1, 1]:
        raise ClassificationError("internal: diagonal entries differ after chain")
    cols = [cur[0, 0].coords(1), cur[0, 1].coords(1), cur[1, 0].coords(1)]
    c = _complete_basis(field, cols, 5)
    # c columns: [a', b', c', u, w]; send a'→e1, b'→e2, c'→e3, u→e0, w→e4
    perm = ScalarMatrix(field, [
        [1 if (i, j) in ((0, 3), (1, 0), (2, 1), (3, 2), (4, 4)) else 0
         for j in range(5)] for i in range(5)
    ])
    b = perm @ c.inverse()
    return NormalizeResult(
        "SPAN3", g_row, g_col, b, ExtMatrix.parse(field, SPAN3_NORMAL)
    )


# ---------------------------------------------------------------------------
# 2×r staircase form


@dataclass
class KroneckerResult:
    """Staircase form of a 2×r grade-1 pencil, convention
    ``apply_basis(basis_change, g_row · P · g_col) == normal``."""

    lengths: List[int]  # chain lengths, longest first; sum = r
    g_row: ScalarMatrix
    g_col: ScalarMatrix
    basis_change: ScalarMatrix
    normal: ExtMatrix

    def reconstruct(self, p: ExtMatrix) -> ExtMatrix:
        return apply_basis(
            self.basis_change,
            p.scalar_mul_left(self.g_row).scalar_mul_right(self.g_col),
        )

    def to_json_obj(self) -> dict:
        return {
            "lengths": self.lengths,
            "g_row": [[str(x) for x in r] for r in self.g_row.entries],
            "g_col": [[str(x) for x in r] for r in self.g_col.entries],
            "basis_change": [
                [str(x) for x in r] for r in self.basis_change.entries
            ],
            "normal": self.normal.to_json_obj(),
        }


def staircase_matrix(field: Field, lengths: Sequence[int], dim_v: int = 5) -> ExtMatrix:
    """The 2×r staircase with the given chain lengths on consecutive basis
    vectors: chain of length b contributes columns (e_k, e_{k+1})."""
    top, bot = [], []
    offset = 0
    for b in lengths:
        for k in range(b):
            top.append(Multivector.basis(field, (offset + k,), dim_v))
            bot.append(Multivector.basis(field, (offset + k + 1,), dim_v))
        offset += b + 1
    return ExtMatrix([top, bot])


def _subspace_intersection(field, basis_a, basis_b):
    """Basis of the intersection of two coordinate subspaces (vectors as
    rows)."""
    if not basis_a or not basis_b:
        return []
    n = len(basis_a[0])
    cols = [list(v) for v in basis_a] + [[-x for x in v] for v in basis_b]
    mat = ScalarMatrix(field, [list(r) for r in zip(*cols)])
    out = []
    for k in mat.kernel_basis():
        vec = [field.zero] * n
        for coeff, v in zip(k[: len(basis_a)], basis_a):
            vec = [x + coeff * y for x, y in zip(vec, v)]
        if any(x != 0 for x in vec):
            out.append(vec)
    # reduce to an independent set
    red = ScalarMatrix(field, out).rref()[0] if out else []
    return [r for r in red if any(x != 0 for x in r)]


def kronecker_form_2xr(p: ExtMatrix, attempts: int = 40, seed: int = 0) -> KroneckerResult:
    """Staircase normal form of a 2×r grade-1 pencil (r ≤ 4) whose
    generalized columns are all nondegenerate, with verified witnesses.

    The chain structure is read off from the filtration S_k = T(S_{k−1} ∩
    im U) of the shift operator T = V∘U⁻¹ for a generic row mix (U, V);
    chains are extracted longest-first by walking unique preimages and the
    assembled witnesses are checked by multiplication.  Inputs that are not
    of pure staircase type (equivalently: with a degenerate generalized
    column) make every attempt fail and raise :class:`PencilError`.
    """
    if p.rows != 2 or not (1 <= p.cols <= 4) or p.grade != 1:
        raise PencilError("expected a 2×r grade-1 matrix, 1 ≤ r ≤ 4")
    field, r, nv = p.field, p.cols, p.dim_v
    rng = random.Random(seed)
    last_err: Optional[Exception] = None
    for _ in range(attempts):
        try:
            return _kronecker_attempt(p, rng)
        except PencilError as exc:
            last_err = exc
    raise PencilError(f"no staircase decomposition found: {last_err}")


def _kronecker_attempt(p: ExtMatrix, rng: random.Random) -> KroneckerResult:
    field, r, nv = p.field, p.cols, p.dim_v
    u_cols = [p[0, j].coords(1) for j in range(r)]
    v_cols = [p[1, j].coords(1) for j in range(r)]
    u_mat = ScalarMatrix(field, [list(row) for row in zip(*u_cols)])  # nv×r
    v_mat = ScalarMatrix(field, [list(row) for row in zip(*v_cols)])
    # generic invertible row mix
    while True:
        a, b, c, d = (field.random(rng, 5) for _ in range(4))
        if a * d - b * c != 0:
            break
    g_row = ScalarMatrix(field, [[a, b], [c, d]])
    up = u_mat.scale(a) + v_mat.scale(b)  # nv×r
    vp = u_mat.scale(c) + v_mat.scale(d)
    if up.rank() != r or vp.rank() != r:
        raise PencilError("row mix not injective")

    im_u = [up.col(j) for j in range(r)]
    w_basis = _row_space(field, [up.col(j) for j in range(r)] + [vp.col(j) for j in range(r)])
    dim_w = len(w_basis)

    def shift_image(s_basis):
        inter = _subspace_intersection(field, s_basis, im_u)
        out = []
        for vec in inter:
            x = up.solve(vec)
            if x is None:
                raise PencilError("preimage missing")
            out.append(_apply(vp, x))
        return _row_space(field, out)

    # filtration dimensions → chain lengths
    s_chain = [w_basis]
    while s_chain[-1]:
        s_chain.append(shift_image(s_chain[-1]))
    dims = [len(s) for s in s_chain] + [0]
    # at_least[k] = number of chains of length ≥ k
    at_least = [dims[k] - dims[k + 1] for k in range(1, len(dims) - 1)] + [0]
    lengths: List[int] = []
    for k in range(len(at_least) - 1):
        lengths.extend([k + 1] * (at_least[k] - at_least[k + 1]))
    lengths.sort(reverse=True)
    if sum(lengths) != r or sum(b + 1 for b in lengths) != dim_w:
        raise PencilError("pencil is not of pure staircase type")

    used_w: List[List] = []
    used_x: List[List] = []
    chains: List[Tuple[List[List], List[List]]] = []
    for b in lengths:
        placed = False
        for _ in range(30):
            z = _random_combo(field, s_chain[b], rng)
            if z is None:
                break
            try:
                ws, xs = _walk_chain(field, up, vp, z, b)
            except PencilError:
                continue
            if (span_rank(field, used_w + ws) == len(used_w) + len(ws)
                    and span_rank(field, used_x + xs) == len(used_x) + len(xs)):
                used_w += ws
                used_x += xs
                chains.append((ws, xs))
                placed = True
                break
        if not placed:
            raise PencilError("independent chain extraction failed")

    g_col = ScalarMatrix(field, [list(row) for row in zip(*used_x)])
    c = _complete_basis(field, used_w, nv)
    basis = c.inverse()
    # the chain vectors land on e0, e1, … in order already
    normal = staircase_matrix(field, lengths, nv)
    result = KroneckerResult(lengths, g_row, g_col, basis, normal)
    if result.reconstruct(p) != normal:
        raise PencilError("staircase witness verification failed")
    return result


def _apply(m: ScalarMatrix, x: Sequence) -> List:
    return [
        sum((m[i, j] * x[j] for j in range(m.cols)), m.field.zero)
        for i in range(m.rows)
    ]


def _row_space(field, vectors):
    if not vectors:
        return []
    red = ScalarMatrix(field, [list(v) for v in vectors]).rref()[0]
    return [r for r in red if any(x != 0 for x in r)]


def _random_combo(field, basis, rng):
    if not basis:
        return None
    for _ in range(20):
        coeffs = [field.random(rng, 3) for _ in basis]
        vec = [
            sum((c * v[i] for c, v in zip(coeffs, basis)), field.zero)
            for i in range(len(basis[0]))
        ]
        if any(x != 0 for x in vec):
            return vec
    return None


def _walk_chain(field, up, vp, z, b):
    """Walk a top chain vector down through unique preimages; returns the
    chain vectors w_0..w_b and the column vectors x_0..x_{b−1}."""
    ws = [z]
    xs: List[List] = []
    cur = z
    for _ in range(b):
        x = vp.solve(cur)
        if x is None:
            raise PencilError("chain walk left the image")
        xs.append(x)
        cur = _apply(up, x)
        ws.append(cur)
    ws.reverse()
    xs.reverse()
    return ws, xs


# ---------------------------------------------------------------------------
# 3×2 classification


@dataclass
class SPoint:
    """A point of the degenerate-row locus: a direction v, the ratio (α:β)
    with (αv, βv) in the row space, and the row combination realizing it."""

    vector: List
    ratio: Tuple
    combination: List

    def to_json_obj(self) -> dict:
        return {
            "vector": [str(x) for x in self.vector],
            "ratio": [str(x) for x in self.ratio],
            "combination": [str(x) for x in self.combination],
        }


@dataclass
class N1Classification:
    tag: str
    family_dim: int
    entry_span: int
    s_points: List[SPoint]
    x_in_top_span: bool
    top_surjective: bool = True

    def to_json_obj(self) -> dict:
        return {
            "tag": self.tag,
            "family_dim": self.family_dim,
            "entry_span": self.entry_span,
            "s_points": [s.to_json_obj() for s in self.s_points],
            "x_in_top_span": self.x_in_top_span,
            "top_surjective": self.top_surjective,
        }


def _row_pair_coords(n1: ExtMatrix, i: int) -> List:
    return list(n1[i, 0].coords(1)) + list(n1[i, 1].coords(1))


def degenerate_row_points(n1: ExtMatrix) -> List[SPoint]:
    """All directions v with (αv, βv) in the row space of a 3×2 grade-1
    matrix, each verified by re-forming the row combination.

    The ratios (α:β) are the projective roots of the gcd of the maximal
    minors of the 7×5 system cutting out such v; roots outside the ground
    field, an everywhere-degenerate pencil, or a multi-dimensional solution
    space at one ratio all raise :class:`ClassificationError`.
    """
    field, nv = n1.field, n1.dim_v
    rows = [_row_pair_coords(n1, i) for i in range(3)]
    if span_rank(field, rows) != 3:
        raise ClassificationError("rows are linearly dependent")
    perp = ScalarMatrix(field, rows).kernel_basis()  # 7 functionals on V⊕V
    # K(α,β) = α·Φ¹ + β·Φ² (7×5), entries linear binary forms
    k_forms = [
        [BinaryForm(field, [phi[j], phi[nv + j]]) for j in range(nv)]
        for phi in perp
    ]
    minors = []
    for rows_idx in _combos(len(k_forms), nv):
        minors.append(_form_det([[k_forms[i][j] for j in range(nv)] for i in rows_idx]))
    from .forms import form_gcd

    g = form_gcd(minors)
    if g.is_zero():
        raise ClassificationError("every ratio is degenerate")
    if g.is_constant():
        return []
    roots, missing = projective_roots(g)
    if missing:
        raise ClassificationError(
            "degenerate ratios exist only over a field extension"
        )
    points: List[SPoint] = []
    for (al, be), _mult in roots:
        k_eval = ScalarMatrix(
            field,
            [[al * phi[j] + be * phi[nv + j] for j in range(nv)] for phi in perp],
        )
        kern = k_eval.kernel_basis()
        if len(kern) != 1:
            raise ClassificationError(
                "degenerate-row locus is not a finite set of reduced points"
            )
        v = kern[0]
        target = [al * x for x in v] + [be * x for x in v]
        combo = ScalarMatrix(field, [list(r) for r in zip(*rows)]).solve(target)
        if combo is None:
            raise ClassificationError("internal: row combination missing")
        # verify by multiplication
        rebuilt = [
            sum((c * row[i] for c, row in zip(combo, rows)), field.zero)
            for i in range(2 * nv)
        ]
        if rebuilt != target:
            raise ClassificationError("internal: row combination check failed")
        points.append(SPoint(v, (al, be), combo))
    return points


def _combos(n: int, k: int):
    from itertools import combinations

    return combinations(range(n), k)


def _form_det(entries: List[List[BinaryForm]]) -> BinaryForm:
    """Cofactor-expansion determinant of a small matrix of binary forms."""
    n = len(entries)
    if n == 1:
        return entries[0][0]
    field = entries[0][0].field
    deg = None
    terms = []
    for j in range(n):
        top = entries[0][j]
        if top.is_zero():
            continue
        minor = _form_det([row[:j] + row[j + 1 :] for row in entries[1:]])
        term = top * minor
        if term.is_zero():
            continue
        term = term.scale(-1) if j % 2 else term
        terms.append(term)
        deg = term.degree
    if not terms:
        return BinaryForm.zero(field)
    acc = terms[0]
    for t in terms[1:]:
        acc = acc + t if not acc.is_zero() else t
    return acc


_SIGNATURES = {
    (6, 5, 1): "T1",
    (6, 4, 1): "T3",
    (7, 4, 2): "T2",
    (7, 4, 1): "T4",
    (8, 3, 3): "U1",
    (8, 3, 2): "U2",
    (8, 3, 1): "U3",
}


def classify_n1(n1: ExtMatrix) -> N1Classification:
    """Equivalence class of a 3×2 grade-1 matrix with surjective top block,
    decided by the exact orbit invariants (syzygy-family dimension, entry
    span, size of the degenerate-row locus)."""
    from .monad import check_n_surjective

    if n1.rows != 3 or n1.cols != 2 or n1.grade != 1:
        raise ClassificationError("expected a 3×2 grade-1 matrix")
    top = ExtMatrix([n1.row(0), n1.row(1)])
    top_surjective = check_n_surjective(top)
    fam = family_dimension(n1)
    span = n1.entry_span_rank()
    s_points = degenerate_row_points(n1)
    sig = (fam, span, len(s_points))
    tag = _SIGNATURES.get(sig)
    if tag is None:
        raise ClassificationError(f"no class matches invariants {sig}")
    x_in = in_span(
        n1.field,
        [x.coords(1) for x in top.entries[0] + top.entries[1] if not x.is_zero()],
        n1[2, 0].coords(1),
    )
    return N1Classification(tag, fam, span, s_points, x_in, top_surjective)
