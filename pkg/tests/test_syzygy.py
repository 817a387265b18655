import random

import pytest

import refdata
from monadkit.extmatrix import ExtMatrix
from monadkit.fields import Field
from monadkit.forms import BinaryForm
from monadkit.linalg import span_rank
from monadkit.monad import check_m_subbundle, subbundle_obstruction_gcds
from monadkit.syzygy import (
    family_dimension,
    random_monad,
    subbundle_witness,
    syzygy_space,
)

Q = Field.QQ()


def _column_coords(space):
    return [
        list(top.coords(3)) + list(bot.coords(3)) for top, bot in space.columns
    ]


def _pair_coords(field, pairs):
    from monadkit.exterior import Multivector

    out = []
    for top, bot in pairs:
        t = Multivector.parse(field, top)
        b = Multivector.parse(field, bot)
        out.append(list(t.coords(3)) + list(b.coords(3)))
    return out


def test_dimensions_match_published_tables(n_span4, n_span3):
    assert syzygy_space(n_span4).dimension == 10
    assert syzygy_space(n_span3).dimension == 10
    for tag, rows in refdata.N1_REPS.items():
        assert family_dimension(refdata.matrix(Q, rows)) == refdata.N1_FAMILY_DIMS[tag]


def test_columns_are_honest_syzygies(n_span4):
    space = syzygy_space(n_span4)
    gamma = space.column_matrix()
    assert n_span4.wedge_mul(gamma).is_zero()


def test_span_equality_with_published_columns(n_span4, n_span3):
    for n, pairs in ((n_span4, refdata.GAMMA_SPAN4), (n_span3, refdata.GAMMA_SPAN3)):
        space = syzygy_space(n)
        ours = _column_coords(space)
        published = _pair_coords(Q, pairs)
        assert len(published) == space.dimension
        assert span_rank(Q, published) == space.dimension
        assert span_rank(Q, ours + published) == space.dimension


def test_make_m_reproduces_published_example(n_span4, monad_span4):
    space = syzygy_space(n_span4)
    # resolve the example matrix into coefficients, then re-emit it
    coeffs = space.coefficients_of(monad_span4.m)
    assert coeffs is not None
    p, q = coeffs
    assert space.make_m(p, q) == monad_span4.m


def test_make_m_zero_and_length_guard(n_span4):
    space = syzygy_space(n_span4)
    zero = space.make_m([Q.zero] * 10, [Q.zero] * 10)
    assert zero.is_zero()
    with pytest.raises(ValueError):
        space.make_m([Q.zero] * 9, [Q.zero] * 10)


def test_make_m_u1_example():
    n1 = refdata.matrix(Q, refdata.N1_REPS["U1"])
    space = syzygy_space(n1)
    m = refdata.matrix(Q, refdata.M_U_EXAMPLES["U1"])
    coeffs = space.coefficients_of(m)
    assert coeffs is not None
    assert space.make_m(*coeffs) == m


def test_membership_of_valid_monads(n_span4, n_span3):
    rng = random.Random(13)
    for n in (n_span4, n_span3):
        space = syzygy_space(n)
        for _ in range(5):
            mon = random_monad(n, rng)
            assert space.contains(mon.m)


def test_witness_search_dichotomy():
    budget = 120
    for tag in ("U1", "U2", "U3"):
        w = subbundle_witness(refdata.matrix(Q, refdata.N1_REPS[tag]), budget, seed=1)
        assert w is not None
        assert check_m_subbundle(w)
        assert refdata.matrix(Q, refdata.N1_REPS[tag]).wedge_mul(w).is_zero()
    for tag in ("T1", "T2", "T3", "T4"):
        w = subbundle_witness(refdata.matrix(Q, refdata.N1_REPS[tag]), budget, seed=1)
        assert w is None


def test_t1_obstruction_quadratic_divides():
    """For the six-column family attached to T1, the published quadratic in
    the coefficient letters divides both obstruction gcds, so no member
    defines a subbundle."""
    from test_forms import _divides
    from monadkit.exterior import Multivector

    n1 = refdata.matrix(Q, refdata.N1_REPS["T1"])
    cols = [
        (Multivector.parse(Q, top), Multivector.parse(Q, bot))
        for top, bot in refdata.GAMMA_N1["T1"]
    ]
    rng = random.Random(14)
    checked = 0
    while checked < 40:
        p = [Q.of(rng.randint(-2, 2)) for _ in range(6)]
        q = [Q.of(rng.randint(-2, 2)) for _ in range(6)]

        def combo(coeffs, part):
            acc = Multivector.zero(Q, 5)
            for c, col in zip(coeffs, cols):
                acc = acc + col[part].scale(c)
            return acc

        m = ExtMatrix([[combo(p, 0), combo(q, 0)], [combo(p, 1), combo(q, 1)]])
        if m.is_zero():
            continue
        assert n1.wedge_mul(m).is_zero()
        checked += 1
        assert not check_m_subbundle(m)
        # coefficients ordered highest s-power first
        f = BinaryForm(
            Q,
            [
                p[3] * p[4] - p[5] * p[5],
                p[4] * q[3] + p[3] * q[4] - Q.of(2) * p[5] * q[5],
                q[3] * q[4] - q[5] * q[5],
            ],
        )
        if f.is_zero():
            continue
        g_a, g_b = subbundle_obstruction_gcds(m)
        for g in (g_a, g_b):
            if g.is_zero():
                continue
            assert _divides(Q, f, g)
