import random

import pytest

import refdata
from monadkit.extmatrix import ExtMatrix, degenerate_combinations
from monadkit.fields import Field
from monadkit.linalg import ScalarMatrix
from monadkit.monad import Monad, check_m_subbundle, check_n_surjective

Q = Field.QQ()


def rand_g(field, rng):
    while True:
        g = ScalarMatrix(
            field, [[field.of(rng.randint(-3, 3)) for _ in range(2)] for _ in range(2)]
        )
        if g.det() != field.zero:
            return g


def test_golden_monads_validate(monad_span4, monad_span3):
    for mon in (monad_span4, monad_span3):
        rep = mon.validate()
        assert rep.complex_ok and rep.n_surjective and rep.m_subbundle
        assert mon.in_x0


def test_complex_examples(n_span4):
    m1 = refdata.matrix(Q, refdata.M_GOLDEN_SPAN4)
    assert n_span4.wedge_mul(m1).is_zero()
    assert n_span4.wedge_mul(ExtMatrix.zero(Q, 2, 2)).is_zero()
    bad = ExtMatrix.parse(Q, [["e234", "0"], ["0", "0"]])
    assert not n_span4.wedge_mul(bad).is_zero()


def test_n_surjectivity_examples():
    assert check_n_surjective(refdata.matrix(Q, refdata.N_SPAN4))
    assert check_n_surjective(refdata.matrix(Q, refdata.N_SPAN3))
    assert not check_n_surjective(ExtMatrix.parse(Q, [["e1", "e2"], ["e2", "e1"]]))


def test_subbundle_examples():
    assert check_m_subbundle(refdata.matrix(Q, refdata.M_GOLDEN_SPAN4))
    assert check_m_subbundle(refdata.matrix(Q, refdata.M_GOLDEN_SPAN3))
    # every entry divisible by e0: common factor at every pencil point
    e0_common = ExtMatrix.parse(
        Q, [["e012", "e013"], ["e014", "e023"]]
    )
    assert not check_m_subbundle(e0_common)


def test_negative_controls(n_span4):
    assert not Monad(ExtMatrix.zero(Q, 2, 2), n_span4).in_x0
    bad_n = ExtMatrix.parse(Q, [["e1", "e2"], ["e2", "e1"]])
    assert not Monad(refdata.matrix(Q, refdata.M_GOLDEN_SPAN4), bad_n).in_x0


def test_group_action_preserves_flags(monad_span4, monad_span3):
    rng = random.Random(7)
    for mon in (monad_span4, monad_span3):
        for _ in range(25):
            g1, g2, g3 = (rand_g(Q, rng) for _ in range(3))
            moved = mon.group_act(g1, g2, g3)
            a, b = moved.validate(), mon.validate()
            assert (a.complex_ok, a.n_surjective, a.m_subbundle) == (
                b.complex_ok, b.n_surjective, b.m_subbundle
            )


def test_group_action_rejects_singular(monad_span4):
    singular = ScalarMatrix(Q, [[Q.of(1), Q.of(1)], [Q.of(1), Q.of(1)]])
    ident = ScalarMatrix.identity(Q, 2)
    with pytest.raises(ValueError):
        monad_span4.group_act(singular, ident, ident)


def test_checks_are_scale_invariant(monad_span4):
    scaled = Monad(monad_span4.m.scale(Q.of(-7)), monad_span4.n.scale(Q.of(3)))
    assert scaled.in_x0


def test_row_column_degeneracy_equivalence():
    from monadkit.exterior import Multivector

    def nondegenerate(g):
        return not g.is_zero() and g.is_constant()

    rng = random.Random(8)
    for _ in range(60):
        entries = [
            [
                Multivector.from_coords(
                    Q, [Q.of(rng.randint(-2, 2)) for _ in range(5)], 5
                )
                for _ in range(2)
            ]
            for _ in range(2)
        ]
        if any(x.is_zero() for row in entries for x in row):
            continue
        n = ExtMatrix(entries)
        rows_ok = nondegenerate(degenerate_combinations(n, "rows"))
        cols_ok = nondegenerate(degenerate_combinations(n, "columns"))
        assert rows_ok == cols_ok


def test_json_roundtrip(monad_span4):
    again = Monad.from_json(monad_span4.to_json())
    assert again.m == monad_span4.m
    assert again.n == monad_span4.n
    assert again.in_x0
