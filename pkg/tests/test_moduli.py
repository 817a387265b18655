import random

import pytest

import refdata
from monadkit.fields import Field
from monadkit.linalg import ScalarMatrix
from monadkit.moduli import (
    ModuliError,
    OnePS,
    det_quadric,
    j1_block,
    jacobian,
    mu,
    mu_parts,
    stability_sample,
    stabilizer_tangent_rank,
    strata_sample,
)
from monadkit.syzygy import random_monad

Q = Field.QQ()


def test_jacobian_rank_at_golden_points(monad_span4, monad_span3):
    for mon in (monad_span4, monad_span3):
        j = jacobian(mon.m, mon.n)
        assert (j.rows, j.cols) == (20, 60)
        assert j.rank() == 20


def test_jacobian_rank_at_random_points(n_span4, n_span3):
    rng = random.Random(18)
    f101 = Field.GF(101)
    for rows in (refdata.N_SPAN4, refdata.N_SPAN3):
        n = refdata.matrix(f101, rows)
        for _ in range(5):
            mon = random_monad(n, rng)
            assert jacobian(mon.m, mon.n).rank() == 20


def test_j1_block_rank_and_alphabet(n_span4, n_span3):
    for n in (n_span4, n_span3):
        j1 = j1_block(n)
        assert (j1.rows, j1.cols) == (20, 40)
        assert j1.rank() == 20
        allowed = {Q.of(-1), Q.zero, Q.of(1)}
        assert all(
            j1[i, jj] in allowed for i in range(j1.rows) for jj in range(j1.cols)
        )


def test_stabilizer_tangent_ranks(monad_span4, monad_span3):
    for mon in (monad_span4, monad_span3):
        assert stabilizer_tangent_rank(mon.n) == 6
        assert stabilizer_tangent_rank(mon.n, mon.m) == 9


def test_one_ps_guards():
    with pytest.raises(ModuliError):
        OnePS.diagonal(Q, 0, 0, 0)
    singular = ScalarMatrix(Q, [[Q.of(1), Q.of(1)], [Q.of(1), Q.of(1)]])
    ident = ScalarMatrix.identity(Q, 2)
    with pytest.raises(ModuliError):
        OnePS(1, 0, 0, singular, ident, ident)


def test_mu_fixed_example(monad_span4):
    lam = OnePS.diagonal(Q, 1, 0, 0)
    assert mu_parts(monad_span4, lam) == (-1, 0)
    assert mu(monad_span4, lam) == -1
    lam = OnePS.diagonal(Q, 0, 1, 1)
    assert mu_parts(monad_span4, lam)[1] == -2


def test_mu_additivity(monad_span4, monad_span3):
    rng = random.Random(19)
    for mon in (monad_span4, monad_span3):
        for _ in range(50):
            rs = [rng.randint(-3, 3) for _ in range(3)]
            if not any(rs):
                continue
            frames = []
            while len(frames) < 3:
                g = ScalarMatrix(
                    Q, [[Q.of(rng.randint(-2, 2)) for _ in range(2)] for _ in range(2)]
                )
                if g.det() != Q.zero:
                    frames.append(g)
            lam = OnePS(rs[0], rs[1], rs[2], *frames)
            mm, mn = mu_parts(mon, lam)
            assert mu(mon, lam) == mm + mn


def test_stability_of_golden_monads(monad_span4, monad_span3):
    for mon in (monad_span4, monad_span3):
        rep = stability_sample(mon, trials=60, seed=3)
        assert rep.all_stable
        assert rep.min_mu < 0


def test_degenerate_negative_control():
    """A matrix pair aligned with a coordinate one-parameter subgroup has a
    nonnegative weight: the open-condition failure is visible to the test."""
    from monadkit.extmatrix import ExtMatrix
    from monadkit.monad import Monad

    m = ExtMatrix.parse(Q, [["e012", "0"], ["e034", "0"]])
    n = ExtMatrix.parse(Q, [["e1", "0"], ["e2", "0"]])
    mon = Monad(m, n)
    assert not mon.in_x0
    lam = OnePS.diagonal(Q, 1, 0, 0)
    assert mu(mon, lam) >= 0


def test_det_quadric(n_span4, n_span3):
    gram, rank = det_quadric(n_span4)
    assert rank == 4
    gram3, rank3 = det_quadric(n_span3)
    assert rank3 == 3
    # the two-element fiber: column-swapped variant maps to the same quadric
    swapped = refdata.matrix(Q, [["e1", "e3"], ["e2", "e4"]])
    gram_s, rank_s = det_quadric(swapped)
    assert rank_s == 4
    assert gram_s == gram or gram_s == gram.scale(Q.of(-1))


def test_strata_engines_agree():
    a = strata_sample(5, 2000, seed=42, engine="python")
    b = strata_sample(5, 2000, seed=42, engine="numba")
    assert a.counts == b.counts
    assert a.rank7_span_violations == b.rank7_span_violations == 0


def test_strata_counts_frozen_at_small_scale():
    rep = strata_sample(5, 2000, seed=1)
    assert rep.counts == {
        "y0_pass": 1983,
        "span3": 82,
        "x0_pass": 1440,
        "rank7": 11,
        "spanM3": 3,
    }
    freq = rep.frequencies()
    assert set(freq) >= {"span3", "rank7", "spanM3"}
