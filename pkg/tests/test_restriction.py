import random

import pytest

import refdata
from monadkit.exterior import Multivector
from monadkit.extmatrix import ExtMatrix
from monadkit.fields import Field
from monadkit.linalg import ScalarMatrix, span_rank
from monadkit.monad import Monad
from monadkit.restriction import (
    RestrictionError,
    canonical_syzygy_table,
    decompose_m,
    h0_restriction,
    induced_p3_monad,
    scroll_membership,
    section_from_coeffs,
    section_plane,
    solve_splitting,
    splitting_system,
    splitting_system_canonical,
    splitting_system_printed,
    starred_square_coords,
)
from monadkit.syzygy import random_monad

Q = Field.QQ()


def mv(text, field=Q):
    return Multivector.parse(field, text)


def basis_vectors(field, *indices):
    return [Multivector.basis(field, (i,)) for i in indices]


def test_canonical_table_matches_frozen_reference(n_span4, n_span3):
    for tag, n, pairs in (
        ("SPAN4", n_span4, refdata.GAMMA_SPAN4),
        ("SPAN3", n_span3, refdata.GAMMA_SPAN3),
    ):
        table = canonical_syzygy_table(Q, tag)
        assert len(table) == 10
        for (top, bot), (rtop, rbot) in zip(table, pairs):
            assert top == mv(rtop)
            assert bot == mv(rbot)
        # every column is an honest syzygy
        for top, bot in table:
            for i in range(2):
                acc = n[i, 0].wedge(top) + n[i, 1].wedge(bot)
                assert acc.is_zero()
    with pytest.raises(RestrictionError):
        canonical_syzygy_table(Q, "SPAN5")


def test_golden_matrix_from_canonical_coefficients(monad_span4):
    xi, eta = section_from_coeffs(Q, refdata.P_GOLDEN_SPAN4, "SPAN4")
    assert xi == monad_span4.m[0, 0]
    assert eta == monad_span4.m[1, 0]
    xi, eta = section_from_coeffs(Q, refdata.Q_GOLDEN_SPAN4, "SPAN4")
    assert xi == monad_span4.m[0, 1]
    assert eta == monad_span4.m[1, 1]


def test_h0_restriction_values(monad_span4):
    assert h0_restriction(monad_span4, basis_vectors(Q, 1, 2, 3, 4)) == 2
    assert h0_restriction(monad_span4, basis_vectors(Q, 0, 1, 2, 3)) == 1
    tilted = basis_vectors(Q, 0, 2, 3) + [mv("e1-e4")]
    assert h0_restriction(monad_span4, tilted) == 0


def test_decompose_reassembles(monad_span4):
    w = basis_vectors(Q, 1, 2, 3, 4)
    v0 = Multivector.basis(Q, (0,))
    mprime, mdprime = decompose_m(monad_span4.m, w, v0)
    assert mprime.grade == 2 and mdprime.grade == 3
    expect_prime = ExtMatrix.parse(Q, [["e14+e23", "e13+e24"], ["e13", "e14+e23"]])
    expect_dprime = ExtMatrix.parse(Q, [["0", "e134"], ["e124", "0"]])
    assert mprime == expect_prime
    assert mdprime == expect_dprime
    # complex condition survives the split
    assert monad_span4.n.wedge_mul(mprime).is_zero()


def test_decompose_rejects_bad_completion(monad_span4):
    w = basis_vectors(Q, 1, 2, 3, 4)
    with pytest.raises(RestrictionError):
        decompose_m(monad_span4.m, w, Multivector.basis(Q, (1,)))


def test_solver_golden_splitting(monad_span4):
    w = basis_vectors(Q, 1, 2, 3, 4)
    v0 = Multivector.basis(Q, (0,))
    mprime, mdprime = decompose_m(monad_span4.m, w, v0)
    s = solve_splitting(mprime, mdprime, w)
    assert s is not None
    assert s == ExtMatrix.parse(Q, [["e1", "e3"], ["e2", "0"]])
    assert (mprime.wedge_mul(s) + mdprime).is_zero()


def test_solver_trivial_and_unsolvable_cases():
    w = basis_vectors(Q, 1, 2, 3, 4)
    zero2 = ExtMatrix.zero(Q, 2, 2)
    some_prime = ExtMatrix.parse(Q, [["e12", "e34"], ["e13", "e24"]])
    s = solve_splitting(some_prime, zero2, w)
    assert s is not None and s.is_zero()
    nonzero_d = ExtMatrix.parse(Q, [["e123", "0"], ["0", "0"]])
    assert solve_splitting(zero2, nonzero_d, w) is None


def test_printed_layout_equals_canonical_closed_form(n_span4):
    """The frozen reference layout of the splitting system agrees with the
    closed-form matrix built straight from the coefficient letters."""
    rng = random.Random(20)
    w = basis_vectors(Q, 1, 2, 3, 4)
    v0 = Multivector.basis(Q, (0,))
    for _ in range(25):
        p = [Q.of(rng.randint(-3, 3)) for _ in range(10)]
        q = [Q.of(rng.randint(-3, 3)) for _ in range(10)]
        xi_p, eta_p = section_from_coeffs(Q, p, "SPAN4")
        xi_q, eta_q = section_from_coeffs(Q, q, "SPAN4")
        m = ExtMatrix([[xi_p, xi_q], [eta_p, eta_q]])
        if m.is_zero():
            continue
        mprime, _ = decompose_m(m, w, v0)
        printed = splitting_system_printed(mprime, w)
        # only four coefficient letters of each vector enter the system
        canonical = splitting_system_canonical(Q, p[:4], q[:4])
        assert printed == canonical


def test_printed_layout_is_singular(monad_span4):
    w = basis_vectors(Q, 1, 2, 3, 4)
    v0 = Multivector.basis(Q, (0,))
    mprime, _ = decompose_m(monad_span4.m, w, v0)
    printed = splitting_system_printed(mprime, w)
    assert printed.det() == Q.zero
    a, _, _ = splitting_system(mprime, ExtMatrix.zero(Q, 2, 2), w)
    assert a.rank() >= printed.rank()


def test_induced_p3_monad_golden(monad_span4):
    res = induced_p3_monad(monad_span4)
    assert res.n.wedge_mul(res.mprime).is_zero()
    assert (res.mprime.wedge_mul(res.s) + res.mdprime).is_zero()
    # reassembly against the original matrix
    for i in range(2):
        for j in range(2):
            assert (
                res.mprime[i, j].wedge(res.v0) + res.mdprime[i, j]
                == monad_span4.m[i, j]
            )


def test_induced_p3_monad_requires_span4(monad_span3):
    with pytest.raises(RestrictionError):
        induced_p3_monad(monad_span3)


def test_induced_p3_monad_random_samples(n_span4):
    rng = random.Random(21)
    produced = 0
    attempts = 0
    while produced < 6 and attempts < 40:
        attempts += 1
        mon = random_monad(n_span4, rng)
        try:
            res = induced_p3_monad(mon)
        except RestrictionError:
            continue
        produced += 1
        assert (res.mprime.wedge_mul(res.s) + res.mdprime).is_zero()
        assert res.n.wedge_mul(res.mprime).is_zero()
    assert produced >= 4


# ---------------------------------------------------------------------------
# The scroll


def on_scroll_coeffs(field, tag, lam, m_, n_):
    lam, m_, n_ = field.of(lam), field.of(m_), field.of(n_)
    one = field.one
    if tag == "SPAN4":
        return [
            one, lam, lam * lam, lam ** 3,
            m_, m_ * lam, m_ * lam * lam,
            n_, n_ * lam, n_ * lam * lam,
        ]
    return [
        one, lam, -lam * lam, -(lam ** 3),
        m_, m_ * lam,
        n_, n_ * lam, -n_ * lam * lam, -(n_ * lam ** 3),
    ]


def test_scroll_families_are_members():
    rng = random.Random(22)
    for tag in ("SPAN4", "SPAN3"):
        for _ in range(15):
            lam = Q.of(rng.randint(1, 6))
            m_, n_ = Q.of(rng.randint(-4, 4)), Q.of(rng.randint(-4, 4))
            p = on_scroll_coeffs(Q, tag, lam, m_, n_)
            res = scroll_membership(Q, p, tag)
            assert res.on_scroll
            assert res.plane is not None and res.plane.dim == 3


def test_scroll_rejects_generic_sections():
    rng = random.Random(23)
    for tag in ("SPAN4", "SPAN3"):
        for _ in range(15):
            p = [Q.of(rng.randint(-5, 5)) for _ in range(10)]
            if all(c == Q.zero for c in p):
                continue
            res = scroll_membership(Q, p, tag)
            # agreement with the brute-force plane oracle
            if res.xi.is_zero() and res.eta.is_zero():
                continue
            plane = section_plane(res.xi, res.eta)
            proportional = (
                not res.xi.is_zero()
                and not res.eta.is_zero()
                and span_rank(Q, [res.xi.coords(3), res.eta.coords(3)]) <= 1
            )
            assert res.on_scroll == (plane is not None and proportional)


def test_scroll_unit_vector_is_off():
    p = [1] + [0] * 9
    for tag in ("SPAN4", "SPAN3"):
        res = scroll_membership(Q, p, tag)
        assert not res.on_scroll
    with pytest.raises(RestrictionError):
        scroll_membership(Q, [0] * 10, "SPAN4")


def test_starred_square_two_routes_agree():
    rng = random.Random(24)
    for field in (Q, Field.GF(7)):
        for tag in ("SPAN4", "SPAN3"):
            for _ in range(20):
                p = [field.of(rng.randint(-5, 5)) for _ in range(10)]
                exact, closed = starred_square_coords(field, p, tag)
                assert exact == [field.of(2) * c for c in closed]


def test_starred_square_vanishes_on_scroll():
    rng = random.Random(25)
    for tag in ("SPAN4", "SPAN3"):
        lam = Q.of(rng.randint(1, 5))
        p = on_scroll_coeffs(Q, tag, lam, Q.of(2), Q.of(-3))
        exact, closed = starred_square_coords(Q, p, tag)
        assert all(c == Q.zero for c in exact)
        assert all(c == Q.zero for c in closed)
