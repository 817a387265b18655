import random

import pytest

import refdata
from monadkit.dual import (
    DualError,
    build_mtilde,
    diagnose,
    dual_monad,
    ExtensionDatum,
    InstantonDual,
    length_c,
    verify_exact_sequence,
)
from monadkit.fields import Field
from monadkit.linalg import ScalarMatrix, in_span
from monadkit.monad import Monad
from monadkit.syzygy import random_monad

Q = Field.QQ()


def test_contraction_ranks_of_examples(monad_span4, monad_span3):
    assert build_mtilde(monad_span4.m).rank() == 8
    assert build_mtilde(monad_span3.m).rank() == 7


def test_rank8_dual_is_a_valid_monad(monad_span4):
    diag = diagnose(monad_span4)
    assert diag.rank == 8
    assert verify_exact_sequence(monad_span4.m, monad_span4.n, diag.p)
    dual = dual_monad(monad_span4)
    assert isinstance(dual, InstantonDual)
    assert dual.monad.in_x0


def test_rank7_extension_datum(monad_span3):
    diag = diagnose(monad_span3)
    assert diag.rank == 7
    datum = dual_monad(monad_span3)
    assert isinstance(datum, ExtensionDatum)
    # the reduced third row is (x, 0) with x in the entry span of N
    n1 = diag.n1
    assert n1.rows == 3 and n1.cols == 2
    assert n1[2, 1].is_zero()
    x = n1[2, 0]
    assert not x.is_zero()
    span = [
        v.coords(1)
        for v in (monad_span3.n[i, j] for i in range(2) for j in range(2))
        if not v.is_zero()
    ]
    assert in_span(Q, span, x.coords(1))
    assert monad_span3.n.entry_span_rank() == 3


def test_exact_sequence_rejects_rank7(monad_span3):
    diag = diagnose(monad_span3)
    assert not verify_exact_sequence(monad_span3.m, monad_span3.n, diag.p)


def test_diagnose_requires_validity(n_span4):
    from monadkit.extmatrix import ExtMatrix

    with pytest.raises(DualError):
        diagnose(Monad(ExtMatrix.zero(Q, 2, 2), n_span4))


def test_random_monads_have_rank_7_or_8(n_span4, n_span3):
    rng = random.Random(15)
    for field in (Q, Field.GF(101)):
        for rows in (refdata.N_SPAN4, refdata.N_SPAN3):
            n = refdata.matrix(field, rows)
            for _ in range(4):
                mon = random_monad(n, rng)
                diag = diagnose(mon)
                assert diag.rank in (7, 8)
                if diag.rank == 8:
                    assert verify_exact_sequence(mon.m, mon.n, diag.p)
                    assert dual_monad(mon).monad.in_x0


def test_rank_is_orbit_invariant(monad_span4, monad_span3):
    rng = random.Random(16)

    def rand_g():
        while True:
            g = ScalarMatrix(
                Q, [[Q.of(rng.randint(-2, 2)) for _ in range(2)] for _ in range(2)]
            )
            if g.det() != Q.zero:
                return g

    for mon, expected in ((monad_span4, 8), (monad_span3, 7)):
        for _ in range(8):
            moved = mon.group_act(rand_g(), rand_g(), rand_g())
            assert build_mtilde(moved.m).rank() == expected


def test_length_c_is_three_for_u_types():
    for tag in ("U1", "U2", "U3"):
        assert length_c(refdata.matrix(Q, refdata.N1_REPS[tag])) == 3
    with pytest.raises(DualError):
        length_c(refdata.matrix(Q, refdata.N1_REPS["T1"]))
