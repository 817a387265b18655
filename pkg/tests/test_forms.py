import random

from hypothesis import given, settings, strategies as st

from monadkit.fields import Field
from monadkit.forms import (
    BinaryForm,
    form_gcd,
    has_common_projective_root,
    projective_roots,
)

Q = Field.QQ()


def bf(*coeffs):
    return BinaryForm(Q, [Q.of(c) for c in coeffs])


def test_arithmetic_basics():
    f = bf(1, 0, -1)  # s² − t²
    g = bf(1, 1)  # s + t
    assert (f + g * g).degree == 2
    assert f.evaluate(Q.of(1), Q.of(1)) == Q.zero
    assert f.evaluate(Q.of(2), Q.of(1)) == Q.of(3)
    assert (f * g).degree == 3
    assert (-f) + f == BinaryForm.zero(Q) or ((-f) + f).is_zero()


def test_gcd_of_fixed_pair():
    f = bf(1, 0, -1)  # (s−t)(s+t)
    g = bf(1, 2, 1)  # (s+t)²
    d = form_gcd([f, g]).monic()
    assert d == bf(1, 1)


def test_gcd_axioms_random():
    rng = random.Random(4)
    for field in (Q, Field.GF(5)):
        for _ in range(40):
            def rand_form(deg):
                return BinaryForm(
                    field, [field.of(rng.randint(-3, 3)) for _ in range(deg + 1)]
                )
            common = rand_form(1)
            a = common * rand_form(2)
            b = common * rand_form(1)
            g = form_gcd([a, b])
            # divisibility of both inputs by the gcd
            for h in (a, b):
                if h.is_zero():
                    continue
                assert _divides(field, g, h)
            # the planted common divisor divides the gcd
            if not common.is_zero() and not a.is_zero() and not b.is_zero():
                assert _divides(field, common, g)


def _divides(field, b, a):
    """Does the binary form b divide a?  Handled via the s/t valuations and
    plain long division of the residual univariate parts."""
    ca, sa, ta = a.strip_st()
    cb, sb, tb = b.strip_st()
    if sb > sa or tb > ta:
        return False
    ra = list(ca.coeffs)
    rb = list(cb.coeffs)
    if len(ra) < len(rb):
        return False
    for i in range(len(ra) - len(rb) + 1):
        c = ra[i] / rb[0]
        for j, bc in enumerate(rb):
            ra[i + j] = ra[i + j] - c * bc
    return all(x == field.zero for x in ra[len(ra) - len(rb) + 1:])


def test_projective_roots_rational():
    f = bf(1, -3, 2)  # (s−t)(s−2t)
    roots, missing = projective_roots(f)
    assert missing == 0
    ratios = {tuple(r) for r, _ in roots}
    assert len(ratios) == 2
    for (a, b), mult in roots:
        assert mult == 1
        assert f.evaluate(a, b) == Q.zero


def test_projective_roots_irreducible():
    f = bf(1, 0, 1)  # s² + t², no rational roots
    roots, missing = projective_roots(f)
    assert roots == []
    assert missing == 2


def test_projective_roots_finite_field():
    f5 = Field.GF(5)
    f = BinaryForm(f5, [f5.of(1), f5.of(0), f5.of(-1)])
    roots, missing = projective_roots(f)
    assert missing == 0
    assert {tuple(int(x) for x in r) for r, _ in roots} == {(1, 1), (4, 1)}


def test_has_common_projective_root():
    assert has_common_projective_root([bf(1, -1), bf(1, 0, -1)])
    assert not has_common_projective_root([bf(1, 0), bf(0, 1)])
    assert not has_common_projective_root([bf(1, 0, 1), bf(1, -1)])


@settings(max_examples=60)
@given(st.lists(st.integers(-4, 4), min_size=2, max_size=4),
       st.lists(st.integers(-4, 4), min_size=2, max_size=4))
def test_gcd_symmetry(a, b):
    fa, fb = BinaryForm(Q, [Q.of(c) for c in a]), BinaryForm(Q, [Q.of(c) for c in b])
    g1, g2 = form_gcd([fa, fb]), form_gcd([fb, fa])
    if g1.is_zero():
        assert g2.is_zero()
    else:
        assert g1.monic() == g2.monic()
