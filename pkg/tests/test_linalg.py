import random

from hypothesis import given, settings, strategies as st

from monadkit.fields import Field
from monadkit.linalg import ScalarMatrix, in_span, span_rank

Q = Field.QQ()


def qm(rows):
    return ScalarMatrix(Q, [[Q.of(x) for x in r] for r in rows])


def test_rank_rref_kernel():
    m = qm([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert m.rank() == 2
    kern = m.kernel_basis()
    assert len(kern) == 1
    for v in kern:
        assert all(x == Q.zero for x in _matvec(m, v))
    for f in m.cokernel_functionals():
        assert all(
            sum((f[i] * m[i, j] for i in range(m.rows)), Q.zero) == Q.zero
            for j in range(m.cols)
        )


def _matvec(m, v):
    return [
        sum((m[i, j] * v[j] for j in range(m.cols)), m.field.zero)
        for i in range(m.rows)
    ]


def test_det_and_inverse():
    m = qm([[2, 1], [5, 3]])
    assert m.det() == Q.of(1)
    assert m.inverse() @ m == ScalarMatrix.identity(Q, 2)
    assert qm([[1, 2], [2, 4]]).det() == Q.zero


def test_solve_unique():
    m = qm([[1, 1], [0, 2]])
    x = m.solve([Q.of(3), Q.of(4)])
    assert _matvec(m, x) == [Q.of(3), Q.of(4)]


def test_solve_singular_consistent_and_inconsistent():
    m = qm([[1, 2], [2, 4]])
    # consistent: rhs in the column space — a particular solution is returned
    x = m.solve([Q.of(1), Q.of(2)])
    assert x is not None
    assert _matvec(m, x) == [Q.of(1), Q.of(2)]
    # inconsistent: no solution
    assert m.solve([Q.of(1), Q.of(3)]) is None


def test_span_helpers():
    vecs = [[Q.of(1), Q.of(0)], [Q.of(2), Q.of(0)]]
    assert span_rank(Q, vecs) == 1
    assert in_span(Q, vecs, [Q.of(5), Q.of(0)])
    assert not in_span(Q, vecs, [Q.of(0), Q.of(1)])


@settings(max_examples=50)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3),
                min_size=3, max_size=3),
       st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_solve_verifies_over_f7(rows, rhs):
    f = Field.GF(7)
    m = ScalarMatrix(f, [[f.of(x) for x in r] for r in rows])
    b = [f.of(x) for x in rhs]
    x = m.solve(b)
    if x is None:
        # rhs must genuinely lie outside the column space
        aug = ScalarMatrix(f, [r + [b[i]] for i, r in enumerate(m.entries)])
        assert aug.rank() == m.rank() + 1
    else:
        assert _matvec(m, x) == b


def test_rank_transpose_invariance():
    rng = random.Random(5)
    for _ in range(30):
        m = qm([[rng.randint(-4, 4) for _ in range(4)] for _ in range(3)])
        assert m.rank() == m.transpose().rank()
