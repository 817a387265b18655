"""Finite moduli-space checks: the smoothness Jacobian, stabilizer tangent
ranks, one-parameter-subgroup weights, the determinant quadric, and
finite-field stratum sampling.

Frozen coordinate orderings used throughout this module:

* The 20 equations are the entries of N∧M, a 2×2 matrix of 4-vectors,
  flattened row-major with each entry expanded in the lexicographic
  grade-4 basis (0123), (0124), (0134), (0234), (1234).
* The 60 variables are the 20 coefficients of N (entries row-major, each
  in the basis e₀..e₄) followed by the 40 coefficients of M (entries
  row-major, each in the lexicographic grade-3 basis).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Tuple

import numpy as np

from .exterior import Multivector, merge_sign
from .extmatrix import ExtMatrix
from .fields import Field
from .linalg import ScalarMatrix
from .monad import Monad


class ModuliError(ValueError):
    """Invalid input to a moduli-space check."""


_TRI = list(combinations(range(5), 3))
_PAIR = list(combinations(range(5), 2))
_QUAD = list(combinations(range(5), 4))


# ---------------------------------------------------------------------------
# Smoothness Jacobian


def _flatten(mat: ExtMatrix, grade: int) -> List:
    out: List = []
    for i in range(mat.rows):
        for j in range(mat.cols):
            out.extend(mat[i, j].coords(grade))
    return out


def _unit_matrix(field: Field, i: int, j: int, key: Tuple[int, ...]) -> ExtMatrix:
    z = Multivector.zero(field)
    e = Multivector.basis(field, key)
    entries = [[z, z], [z, z]]
    entries[i][j] = e
    return ExtMatrix(entries)


def jacobian(m: ExtMatrix, n: ExtMatrix) -> ScalarMatrix:
    """The 20×60 matrix of partial derivatives of the entries of N∧M with
    respect to the coefficients of N (first 20 columns) and of M (last 40),
    in the frozen ordering documented in the module docstring.

    By bilinearity of the wedge product, the column for an N-coefficient is
    the flattened product (unit N-matrix)∧M and the column for an
    M-coefficient is N∧(unit M-matrix).
    """
    field = n.field
    cols: List[List] = []
    for i in range(2):
        for j in range(2):
            for v in range(5):
                unit = _unit_matrix(field, i, j, (v,))
                cols.append(_flatten(unit.wedge_mul(m), 4))
    for i in range(2):
        for j in range(2):
            for key in _TRI:
                unit = _unit_matrix(field, i, j, key)
                cols.append(_flatten(n.wedge_mul(unit), 4))
    return ScalarMatrix(field, [list(r) for r in zip(*cols)])


def j1_block(n: ExtMatrix) -> ScalarMatrix:
    """The 20×40 block of the Jacobian holding only the M-coefficient
    columns; it depends on N alone."""
    field = n.field
    cols: List[List] = []
    for i in range(2):
        for j in range(2):
            for key in _TRI:
                unit = _unit_matrix(field, i, j, key)
                cols.append(_flatten(n.wedge_mul(unit), 4))
    return ScalarMatrix(field, [list(r) for r in zip(*cols)])


# ---------------------------------------------------------------------------
# Stabilizer tangent rank

_SL2_BASIS = [
    [[1, 0], [0, -1]],
    [[0, 1], [0, 0]],
    [[0, 0], [1, 0]],
]


def _sl2(field: Field) -> List[ScalarMatrix]:
    return [ScalarMatrix(field, b) for b in _SL2_BASIS]


def stabilizer_tangent_rank(n: ExtMatrix, m: Optional[ExtMatrix] = None) -> int:
    """Rank of the infinitesimal-action map at (M, N).

    With ``m`` omitted: (g₁, h₁) ↦ g₁N − Nh₁ on 𝔰𝔩₂ ⊕ 𝔰𝔩₂ (six inputs,
    twenty output coordinates).  With ``m`` given:
    (f₁, g₁, h₁) ↦ (f₁M − Mg₁, g₁N − Nh₁) on three copies of 𝔰𝔩₂.
    """
    field = n.field
    basis = _sl2(field)
    cols: List[List] = []
    zero20 = [field.zero] * 20
    if m is None:
        for b in basis:
            cols.append(_flatten(n.scalar_mul_left(b), 1))
        for b in basis:
            cols.append(_flatten(n.scalar_mul_right(b).scale(-1), 1))
    else:
        for b in basis:  # f-direction
            cols.append(_flatten(m.scalar_mul_left(b), 3) + zero20)
        for b in basis:  # g-direction
            cols.append(
                _flatten(m.scalar_mul_right(b).scale(-1), 3)
                + _flatten(n.scalar_mul_left(b), 1)
            )
        for b in basis:  # h-direction
            cols.append(
                [field.zero] * 40 + _flatten(n.scalar_mul_right(b).scale(-1), 1)
            )
    return ScalarMatrix(field, [list(r) for r in zip(*cols)]).rank()


# ---------------------------------------------------------------------------
# One-parameter subgroups and weights


@dataclass
class OnePS:
    """A one-parameter subgroup of the triple SL(2) symmetry group, given by
    the three integer weights and the three right frame matrices (the left
    frames do not affect the weight computation and are omitted)."""

    r1: int
    r2: int
    r3: int
    v1: ScalarMatrix
    v2: ScalarMatrix
    v3: ScalarMatrix

    def __post_init__(self):
        if self.r1 == 0 and self.r2 == 0 and self.r3 == 0:
            raise ModuliError("trivial one-parameter subgroup")
        for v in (self.v1, self.v2, self.v3):
            if v.rows != 2 or v.cols != 2 or v.det() == 0:
                raise ModuliError("frames must be invertible 2×2 matrices")

    @staticmethod
    def diagonal(field: Field, r1: int, r2: int, r3: int) -> "OnePS":
        one = ScalarMatrix.identity(field, 2)
        return OnePS(r1, r2, r3, one, one, one)


def mu_parts(m: Monad, lam: OnePS) -> Tuple[int, int]:
    """The two weight minima (μ_M, μ_N) of a monad under a one-parameter
    subgroup: transform by the frames, then take the minimal torus weight
    over the nonzero entries of each transformed matrix."""
    a = m.m.scalar_mul_left(lam.v2.inverse()).scalar_mul_right(lam.v1)
    b = m.n.scalar_mul_left(lam.v3.inverse()).scalar_mul_right(lam.v2)

    def min_weight(mat: ExtMatrix, r_col: int, r_row: int) -> int:
        best = None
        for i in range(2):
            for j in range(2):
                if mat[i, j].is_zero():
                    continue
                w = (-r_row if i == 0 else r_row) + (r_col if j == 0 else -r_col)
                if best is None or w < best:
                    best = w
        if best is None:
            raise ModuliError("zero matrix has no weight")
        return best

    return min_weight(a, lam.r1, lam.r2), min_weight(b, lam.r2, lam.r3)


def mu(m: Monad, lam: OnePS) -> int:
    """Total weight μ = μ_M + μ_N."""
    mm, mn = mu_parts(m, lam)
    return mm + mn


@dataclass
class StabilityReport:
    trials: int
    seed: int
    min_mu: int
    counterexamples: List[dict]

    @property
    def all_stable(self) -> bool:
        return not self.counterexamples

    def to_json_obj(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "min_mu": self.min_mu,
            "all_stable": self.all_stable,
            "counterexamples": self.counterexamples,
        }


def stability_sample(m: Monad, trials: int, seed: int) -> StabilityReport:
    """Sample random nontrivial one-parameter subgroups and verify μ < 0 at
    the given monad.

    Each sample also asserts the stronger per-sample facts that force
    negativity: every frame-transformed entry of M and of N is nonzero, so
    μ_M = −|r₁|−|r₂| and μ_N = −|r₂|−|r₃| exactly.
    """
    field = m.field
    rng = random.Random(f"stability:{seed}")
    counterexamples: List[dict] = []
    min_mu = 0
    for _ in range(trials):
        while True:
            rs = [rng.randint(-3, 3) for _ in range(3)]
            if any(rs):
                break
        frames = []
        for _ in range(3):
            while True:
                v = ScalarMatrix(
                    field, [[field.random(rng) for _ in range(2)] for _ in range(2)]
                )
                if v.det() != 0:
                    frames.append(v)
                    break
        lam = OnePS(rs[0], rs[1], rs[2], *frames)
        a = m.m.scalar_mul_left(lam.v2.inverse()).scalar_mul_right(lam.v1)
        b = m.n.scalar_mul_left(lam.v3.inverse()).scalar_mul_right(lam.v2)
        entries_nonzero = all(
            not mat[i, j].is_zero() for mat in (a, b) for i in range(2) for j in range(2)
        )
        mm, mn = mu_parts(m, lam)
        value = mm + mn
        min_mu = min(min_mu, value)
        expected = -(abs(rs[0]) + 2 * abs(rs[1]) + abs(rs[2]))
        if not entries_nonzero or value != expected or value >= 0:
            counterexamples.append(
                {
                    "weights": rs,
                    "frames": [[[field.format(v[i, j]) for j in range(2)]
                                for i in range(2)] for v in frames],
                    "mu": value,
                    "entries_nonzero": entries_nonzero,
                }
            )
    return StabilityReport(trials, seed, min_mu, counterexamples)


# ---------------------------------------------------------------------------
# The determinant quadric


def det_quadric(n: ExtMatrix) -> Tuple[ScalarMatrix, int]:
    """The symmetric 5×5 coefficient matrix of the quadratic form
    n₁₁n₂₂ − n₁₂n₂₁ on the dual space, and its rank.

    Requires characteristic ≠ 2 (the symmetric matrix of a quadratic form
    needs halving).
    """
    field = n.field
    if field.is_finite and field.p == 2:
        raise ModuliError("determinant quadric needs characteristic ≠ 2")
    half = field.one / field.of(2)
    gram = [[field.zero] * 5 for _ in range(5)]
    for u, v, sgn in (
        (n[0, 0], n[1, 1], field.one),
        (n[0, 1], n[1, 0], -field.one),
    ):
        uc, vc = u.coords(1), v.coords(1)
        for i in range(5):
            for j in range(5):
                gram[i][j] = gram[i][j] + sgn * half * (uc[i] * vc[j] + uc[j] * vc[i])
    mat = ScalarMatrix(field, gram)
    return mat, mat.rank()


# ---------------------------------------------------------------------------
# Finite-field stratum sampling
#
# The sampler re-implements the exact pipeline (surjectivity, syzygy kernel,
# subbundle test, contraction rank, span ranks) in plain modular arithmetic
# so it can run both as pure Python and compiled with numba, sharing one
# explicit 32-bit xorshift* random stream so the two engines are
# bit-identical.

_M32 = 0xFFFFFFFF


def _sign_tables() -> Dict[str, np.ndarray]:
    """Integer sign/index tables for the exterior operations used by the
    sampler, derived from the same index conventions as the exact library."""
    tri_index = {t: i for i, t in enumerate(_TRI)}
    pair_index = {t: i for i, t in enumerate(_PAIR)}
    quad_index = {t: i for i, t in enumerate(_QUAD)}

    w13i = np.full((5, 10), -1, dtype=np.int64)
    w13s = np.zeros((5, 10), dtype=np.int64)
    for j in range(5):
        for ti, t in enumerate(_TRI):
            if j in t:
                continue
            key = tuple(sorted((j,) + t))
            w13i[j, ti] = quad_index[key]
            w13s[j, ti] = merge_sign((j,), t)

    st3i = np.zeros(10, dtype=np.int64)
    st3s = np.zeros(10, dtype=np.int64)
    for ti, t in enumerate(_TRI):
        comp = tuple(i for i in range(5) if i not in t)
        st3i[ti] = pair_index[comp]
        st3s[ti] = merge_sign(t, comp)

    w22i = np.full((10, 10), -1, dtype=np.int64)
    w22s = np.zeros((10, 10), dtype=np.int64)
    for ai, a in enumerate(_PAIR):
        for bi, b in enumerate(_PAIR):
            if set(a) & set(b):
                continue
            key = tuple(sorted(a + b))
            w22i[ai, bi] = quad_index[key]
            w22s[ai, bi] = merge_sign(a, b)

    st4i = np.zeros(5, dtype=np.int64)
    st4s = np.zeros(5, dtype=np.int64)
    for qi, t in enumerate(_QUAD):
        comp = tuple(i for i in range(5) if i not in t)
        st4i[qi] = comp[0]
        st4s[qi] = merge_sign(t, comp)

    return {
        "w13i": w13i, "w13s": w13s,
        "st3i": st3i, "st3s": st3s,
        "w22i": w22i, "w22s": w22s,
        "st4i": st4i, "st4s": st4s,
    }


_TABLES = _sign_tables()


def _build_loop(jit: bool):
    if jit:
        import numba

        dec = numba.njit(cache=True)
    else:
        def dec(f):
            return f

    @dec
    def rng_mix(seed, trial):
        s = (seed * 2654435761 + trial * 40503 + 2654435769) & _M32
        s ^= s >> 16
        s = (s * 2246822519) & _M32
        s ^= s >> 13
        if s == 0:
            s = 1831565813
        return s

    @dec
    def rng_next(state):
        state ^= (state << 13) & _M32
        state ^= state >> 17
        state ^= (state << 5) & _M32
        return state, (state * 624679537) & _M32

    @dec
    def rank_mod(a, rows, cols, p, inv):
        r = 0
        for c in range(cols):
            piv = -1
            for i in range(r, rows):
                if a[i, c] % p != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for k in range(cols):
                    tmp = a[r, k]
                    a[r, k] = a[piv, k]
                    a[piv, k] = tmp
            f = inv[a[r, c] % p]
            for k in range(cols):
                a[r, k] = (a[r, k] * f) % p
            for i in range(rows):
                if i != r and a[i, c] % p != 0:
                    f2 = a[i, c] % p
                    for k in range(cols):
                        a[i, k] = (a[i, k] - f2 * a[r, k]) % p
            r += 1
            if r == rows:
                break
        return r

    @dec
    def kernel_mod(a, rows, cols, p, inv, kb):
        """Reduced row echelon on ``a``; writes a kernel basis into ``kb``
        (one vector per row) and returns its size."""
        pivots = np.full(cols, -1, np.int64)
        r = 0
        for c in range(cols):
            piv = -1
            for i in range(r, rows):
                if a[i, c] % p != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for k in range(cols):
                    tmp = a[r, k]
                    a[r, k] = a[piv, k]
                    a[piv, k] = tmp
            f = inv[a[r, c] % p]
            for k in range(cols):
                a[r, k] = (a[r, k] * f) % p
            for i in range(rows):
                if i != r and a[i, c] % p != 0:
                    f2 = a[i, c] % p
                    for k in range(cols):
                        a[i, k] = (a[i, k] - f2 * a[r, k]) % p
            pivots[c] = r
            r += 1
            if r == rows:
                break
        nk = 0
        for c in range(cols):
            if pivots[c] >= 0:
                continue
            for k in range(cols):
                kb[nk, k] = 0
            kb[nk, c] = 1
            for c2 in range(cols):
                if pivots[c2] >= 0:
                    kb[nk, c2] = (-a[pivots[c2], c]) % p
            nk += 1
        return nk

    @dec
    def poly_gcd(g, glen, h, hlen, p, inv):
        """Euclid on univariate polynomials stored highest-degree-first in
        fixed buffers; returns the new length of ``g`` (gcd in place)."""
        a = np.zeros(8, np.int64)
        b = np.zeros(8, np.int64)
        for i in range(glen):
            a[i] = g[i] % p
        for i in range(hlen):
            b[i] = h[i] % p
        la, lb = glen, hlen
        while lb > 0:
            # a mod b
            while la >= lb:
                f = (a[0] * inv[b[0]]) % p
                for i in range(lb):
                    a[i] = (a[i] - f * b[i]) % p
                # strip leading zeros
                sh = 0
                while sh < la and a[sh] == 0:
                    sh += 1
                for i in range(la - sh):
                    a[i] = a[i + sh]
                la -= sh
                if la == 0:
                    break
            a, b = b, a
            la, lb = lb, la
        for i in range(la):
            g[i] = a[i]
        return la

    @dec
    def common_root(forms, degs, nf, p, inv):
        """Do the homogeneous binary forms share a projective root over the
        algebraic closure?  True when all forms vanish, when a pure s- or
        t-power divides all of them, or when the core gcd is nonconstant."""
        have = False
        minvs = 99
        minvt = 99
        g = np.zeros(8, np.int64)
        glen = 0
        core = np.zeros(8, np.int64)
        for i in range(nf):
            d = degs[i]
            lo = -1
            hi = -1
            for k in range(d + 1):
                if forms[i, k] % p != 0:
                    hi = k
                    if lo < 0:
                        lo = k
            if hi < 0:
                continue
            have = True
            if lo < minvt:
                minvt = lo
            if d - hi < minvs:
                minvs = d - hi
            clen = hi - lo + 1
            for k in range(clen):
                core[k] = forms[i, lo + k] % p
            if glen == 0:
                for k in range(clen):
                    g[k] = core[k]
                glen = clen
            elif glen > 1:
                glen = poly_gcd(g, glen, core, clen, p, inv)
        if not have:
            return True
        if minvs > 0 or minvt > 0:
            return True
        return glen > 1

    @dec
    def loop(q, trials, seed, inv, w13i, w13s, st3i, st3s, w22i, w22s,
             st4i, st4s):
        # counts[0..4] are the stratum counters; counts[5] counts rank-7
        # monads whose N-span is not 3-dimensional (must stay zero).
        counts = np.zeros(6, np.int64)
        ncoef = np.zeros((2, 2, 5), np.int64)
        minors = np.zeros((10, 4), np.int64)
        mdegs = np.zeros(10, np.int64)
        eq = np.zeros((10, 20), np.int64)
        kb = np.zeros((20, 20), np.int64)
        mc = np.zeros((2, 2, 10), np.int64)
        pq = np.zeros((2, 10), np.int64)
        span = np.zeros((4, 10), np.int64)
        xstar = np.zeros((10, 2), np.int64)
        sq = np.zeros((5, 3), np.int64)
        vst = np.zeros((5, 3), np.int64)
        cubics = np.zeros((10, 4), np.int64)
        cdegs = np.zeros(10, np.int64)
        mt = np.zeros((10, 10), np.int64)
        for trial in range(trials):
            state = rng_mix(seed, trial)
            for i in range(2):
                for j in range(2):
                    for k in range(5):
                        state, v = rng_next(state)
                        ncoef[i, j, k] = v % q
            # surjectivity: the pencil of row combinations must never be a
            # degenerate pair; all 2×5 minors are binary quadratics.
            nm = 0
            for a in range(5):
                for b in range(a + 1, 5):
                    us_a = ncoef[0, 0, a]
                    ut_a = ncoef[1, 0, a]
                    us_b = ncoef[0, 0, b]
                    ut_b = ncoef[1, 0, b]
                    vs_a = ncoef[0, 1, a]
                    vt_a = ncoef[1, 1, a]
                    vs_b = ncoef[0, 1, b]
                    vt_b = ncoef[1, 1, b]
                    minors[nm, 0] = (us_a * vs_b - us_b * vs_a) % q
                    minors[nm, 1] = (us_a * vt_b + ut_a * vs_b
                                     - us_b * vt_a - ut_b * vs_a) % q
                    minors[nm, 2] = (ut_a * vt_b - ut_b * vt_a) % q
                    minors[nm, 3] = 0
                    mdegs[nm] = 2
                    nm += 1
            if common_root(minors, mdegs, nm, q, inv):
                continue
            counts[0] += 1  # surjective
            for i in range(2):
                for j in range(2):
                    for k in range(5):
                        span[i * 2 + j, k] = ncoef[i, j, k]
            scratch = span[:, :5].copy()
            nrank = rank_mod(scratch, 4, 5, q, inv)
            if nrank == 3:
                counts[1] += 1  # entry span of dimension 3
            # syzygy kernel: columns (c₁, c₂) of 3-forms with N∧col = 0
            for i in range(10):
                for jj in range(20):
                    eq[i, jj] = 0
            for i in range(2):
                for j in range(5):
                    for t in range(10):
                        qd = w13i[j, t]
                        if qd < 0:
                            continue
                        s = w13s[j, t]
                        eq[i * 5 + qd, t] = (eq[i * 5 + qd, t]
                                             + s * ncoef[i, 0, j]) % q
                        eq[i * 5 + qd, 10 + t] = (eq[i * 5 + qd, 10 + t]
                                                  + s * ncoef[i, 1, j]) % q
            nk = kernel_mod(eq, 10, 20, q, inv, kb)
            if nk != 10:
                continue
            for c in range(2):
                for i in range(10):
                    state, v = rng_next(state)
                    pq[c, i] = v % q
            for l in range(2):
                for c in range(2):
                    for t in range(10):
                        acc = 0
                        for i in range(10):
                            acc += pq[c, i] * kb[i, l * 10 + t]
                        mc[l, c, t] = acc % q
            # subbundle: the two starred-square obstruction vectors must
            # share no projective root across the column pencil.
            ncub = 0
            for side in range(2):
                fr = side            # row whose star-square is taken
                ot = 1 - side        # row wedged against it
                for i in range(10):
                    for k in range(2):
                        xstar[i, k] = 0
                for t in range(10):
                    pc = st3i[t]
                    s = st3s[t]
                    xstar[pc, 0] = (xstar[pc, 0] + s * mc[fr, 0, t]) % q
                    xstar[pc, 1] = (xstar[pc, 1] + s * mc[fr, 1, t]) % q
                for i in range(5):
                    for k in range(3):
                        sq[i, k] = 0
                for a in range(10):
                    for b in range(10):
                        qd = w22i[a, b]
                        if qd < 0:
                            continue
                        s = w22s[a, b]
                        for da in range(2):
                            for db in range(2):
                                sq[qd, da + db] = (
                                    sq[qd, da + db]
                                    + s * xstar[a, da] * xstar[b, db]) % q
                for i in range(5):
                    for k in range(3):
                        vst[i, k] = 0
                for qd in range(5):
                    tgt = st4i[qd]
                    s = st4s[qd]
                    for k in range(3):
                        vst[tgt, k] = (vst[tgt, k] + s * sq[qd, k]) % q
                for k in range(4):
                    for i in range(5):
                        cubics[ncub + i, k] = 0
                for j in range(5):
                    for t in range(10):
                        qd = w13i[j, t]
                        if qd < 0:
                            continue
                        s = w13s[j, t]
                        for k in range(3):
                            for l in range(2):
                                cubics[ncub + qd, k + l] = (
                                    cubics[ncub + qd, k + l]
                                    + s * vst[j, k] * mc[ot, l, t]) % q
                for i in range(5):
                    cdegs[ncub + i] = 3
                ncub += 5
            if common_root(cubics, cdegs, ncub, q, inv):
                continue
            counts[2] += 1  # valid monad point
            for i in range(10):
                for j in range(10):
                    mt[i, j] = 0
            for l in range(2):
                for c in range(2):
                    for j in range(5):
                        for t in range(10):
                            qd = w13i[j, t]
                            if qd < 0:
                                continue
                            mt[l * 5 + qd, c * 5 + j] = (
                                mt[l * 5 + qd, c * 5 + j]
                                + w13s[j, t] * mc[l, c, t]) % q
            if rank_mod(mt, 10, 10, q, inv) == 7:
                counts[3] += 1
                if nrank != 3:
                    counts[5] += 1
            for l in range(2):
                for c in range(2):
                    for t in range(10):
                        span[l * 2 + c, t] = mc[l, c, t]
            if rank_mod(span, 4, 10, q, inv) == 3:
                counts[4] += 1
        return counts

    return loop


_LOOP_PY = _build_loop(False)
_LOOP_NB = None


def _loop_numba():
    global _LOOP_NB
    if _LOOP_NB is None:
        _LOOP_NB = _build_loop(True)
    return _LOOP_NB


@dataclass
class StrataSampleReport:
    q: int
    trials: int
    seed: int
    counts: Dict[str, int]
    engine: str
    rank7_span_violations: int = 0

    def __post_init__(self):
        for v in self.counts.values():
            if v < 0 or v > self.trials:
                raise ModuliError("counts must lie in [0, trials]")

    def frequencies(self) -> Dict[str, float]:
        return {k: v / self.trials for k, v in self.counts.items()}

    def to_json_obj(self) -> dict:
        return {
            "q": self.q,
            "trials": self.trials,
            "seed": self.seed,
            "engine": self.engine,
            "counts": dict(self.counts),
            "rank7_span_violations": self.rank7_span_violations,
        }


_COUNT_KEYS = ("y0_pass", "span3", "x0_pass", "rank7", "spanM3")


def strata_sample(q: int, trials: int, seed: int,
                  engine: str = "numba") -> StrataSampleReport:
    """Sample ``trials`` random 2×2 matrices of vectors over F_q and count
    the strata reached: surjective N; surjective with 3-dimensional entry
    span; valid monads built from random syzygy coefficients; among those,
    contraction rank 7 and 3-dimensional M-entry span.

    The per-trial random stream depends only on (seed, trial index), so the
    pure-Python and numba engines produce bit-identical reports.
    """
    from .fields import _is_prime

    if not _is_prime(q):
        raise ModuliError("q must be prime")
    if trials <= 0:
        raise ModuliError("trials must be positive")
    inv = np.zeros(q, dtype=np.int64)
    for v in range(1, q):
        inv[v] = pow(v, q - 2, q)
    t = _TABLES
    args = (q, trials, seed, inv, t["w13i"], t["w13s"], t["st3i"], t["st3s"],
            t["w22i"], t["w22s"], t["st4i"], t["st4s"])
    if engine == "numba":
        counts = _loop_numba()(*args)
    elif engine == "python":
        counts = _LOOP_PY(*args)
    else:
        raise ModuliError("engine must be 'numba' or 'python'")
    return StrataSampleReport(
        q, trials, seed,
        {k: int(c) for k, c in zip(_COUNT_KEYS, counts)},
        engine,
        rank7_span_violations=int(counts[5]),
    )
