import itertools
import random

import pytest

from monadkit.exterior import Multivector
from monadkit.fields import Field
from monadkit.linalg import ScalarMatrix
from monadkit.lines import (
    LineError,
    PlueckerLine,
    classify_line,
    enumerate_lines,
    line_count,
    m_wedge_line,
    negative_conic,
    positive_locus,
)

Q = Field.QQ()


def mv(text, field=Q):
    return Multivector.parse(field, text)


def test_line_constructors_and_guards():
    line = PlueckerLine.from_span(mv("e0"), mv("e1"))
    assert line.omega == mv("e01")
    again = PlueckerLine.from_omega(mv("e01"))
    assert again.omega.wedge(line.omega).is_zero()
    with pytest.raises(LineError):
        PlueckerLine.from_omega(mv("e01+e23"))  # not decomposable
    with pytest.raises(LineError):
        PlueckerLine.from_omega(Multivector.zero(Q, 5))


def test_remixed_is_the_same_line():
    line = PlueckerLine.from_span(mv("e0+e2"), mv("e1-e4"))
    g = ScalarMatrix(Q, [[Q.of(1), Q.of(2)], [Q.of(1), Q.of(3)]])
    mixed = line.remixed(g)
    assert mixed.omega == line.omega.scale(g.det())


def test_classification_is_witness_independent(monad_span4):
    rng = random.Random(17)
    line = PlueckerLine.from_span(mv("e0"), mv("e1"))
    base = classify_line(monad_span4, line)
    for _ in range(10):
        while True:
            g = ScalarMatrix(
                Q, [[Q.of(rng.randint(-3, 3)) for _ in range(2)] for _ in range(2)]
            )
            if g.det() != Q.zero:
                break
        again = classify_line(monad_span4, line.remixed(g))
        assert again.rank == base.rank
        assert again.splitting == base.splitting


def test_rank_determines_generic_splittings(monad_span4):
    generic = classify_line(monad_span4, PlueckerLine.from_span(mv("e2"), mv("e4")))
    assert generic.rank == 2 and generic.splitting == (0, 0, 0, 0)


def test_negative_conic_points_jump(monad_span4, monad_span3):
    for mon in (monad_span4, monad_span3):
        curve = negative_conic(mon.n)
        for s, t in ((1, 0), (0, 1), (1, 1), (2, -1), (1, 3)):
            omega = curve(s, t)
            line = PlueckerLine.from_omega(omega)
            cls = classify_line(mon, line)
            assert cls.rank == 0
            assert -2 in cls.splitting


def test_positive_locus_kinds(monad_span4, monad_span3):
    conic = positive_locus(monad_span4)
    assert conic.kind == "CONIC"
    for s, t in ((1, 0), (0, 1), (1, 2)):
        omega = conic.parametrize(s, t)
        line = PlueckerLine.from_omega(omega)
        assert conic.member(line)
        assert classify_line(monad_span4, line).splitting[0] == 2

    surf = positive_locus(monad_span3)
    assert surf.kind == "SURFACE"
    for s, t, u in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, -2, 3)):
        omega = surf.parametrize(s, t, u)
        assert not omega.is_zero()
        line = PlueckerLine.from_omega(omega)
        assert surf.member(line)
        assert classify_line(monad_span3, line).splitting[0] == 2


def test_line_count_formula():
    assert line_count(2) == 5 * 31
    assert line_count(5) == 26 * 781


def test_enumeration_is_complete_and_duplicate_free():
    seen = set()
    for line in enumerate_lines(2):
        f2 = line.omega.field
        coords = tuple(int(c) for c in line.omega.coords(2))
        # normalize the projective class: leading coefficient is already 1
        # by the echelon construction, so raw coordinates must be distinct
        assert coords not in seen
        seen.add(coords)
    assert len(seen) == line_count(2)
    with pytest.raises(ValueError):
        next(enumerate_lines(13))
