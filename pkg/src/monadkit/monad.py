"""The monad aggregate: a pair (M, N) of exterior matrices with the three
defining conditions, plus the group action on such pairs.

M is 2×2 with grade-3 entries, N is 2×2 with grade-1 entries.  The pair
represents a rank-4 bundle exactly when the complex condition N∧M = 0, the
surjectivity of N, and the subbundle condition on M all hold.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .exterior import Multivector, PRIMAL
from .extmatrix import ExtMatrix, degenerate_combinations
from .fields import Field
from .forms import BinaryForm, form_gcd
from .linalg import ScalarMatrix


@dataclass(frozen=True)
class ValidationReport:
    complex_ok: bool
    n_surjective: bool
    m_subbundle: bool

    @property
    def in_x0(self) -> bool:
        return self.complex_ok and self.n_surjective and self.m_subbundle

    def to_json_obj(self) -> dict:
        return {
            "complex_ok": self.complex_ok,
            "n_surjective": self.n_surjective,
            "m_subbundle": self.m_subbundle,
            "in_X0": self.in_x0,
        }


class Monad:
    """A candidate monad pair (M grade-3, N grade-1), flags recomputed on
    demand and never trusted from input."""

    def __init__(self, m: ExtMatrix, n: ExtMatrix):
        if m.rows != 2 or m.cols != 2 or n.rows != 2 or n.cols != 2:
            raise ValueError("expected 2×2 matrices")
        if m.dim_v != 5 or n.dim_v != 5:
            raise ValueError("expected dim 5")
        if not m.is_zero() and m.grade != 3:
            raise ValueError("M must have grade-3 entries")
        if not n.is_zero() and n.grade != 1:
            raise ValueError("N must have grade-1 entries")
        self.m = m
        self.n = n
        self.field = m.field
        self._report: Optional[ValidationReport] = None

    # -- conditions ---------------------------------------------------
    def check_complex(self) -> bool:
        return self.n.wedge_mul(self.m).is_zero()

    def check_n_surjective(self) -> bool:
        return check_n_surjective(self.n)

    def check_m_subbundle(self) -> bool:
        return check_m_subbundle(self.m)

    def validate(self) -> ValidationReport:
        if self._report is None:
            self._report = ValidationReport(
                self.check_complex(),
                self.check_n_surjective(),
                self.check_m_subbundle(),
            )
        return self._report

    @property
    def in_x0(self) -> bool:
        return self.validate().in_x0

    # -- group action -------------------------------------------------
    def group_act(
        self, g1: ScalarMatrix, g2: ScalarMatrix, g3: ScalarMatrix
    ) -> "Monad":
        """(g₁,g₂,g₃)·(M,N) = (g₂⁻¹Mg₁, g₃⁻¹Ng₂); all validity flags are
        invariant."""
        for g in (g1, g2, g3):
            if g.rows != 2 or g.cols != 2:
                raise ValueError("expected 2×2 group elements")
            if g.det() == g.field.zero:
                raise ValueError("group elements must be invertible")
        m2 = self.m.scalar_mul_left(g2.inverse()).scalar_mul_right(g1)
        n2 = self.n.scalar_mul_left(g3.inverse()).scalar_mul_right(g2)
        return Monad(m2, n2)

    # -- serialization ------------------------------------------------
    def to_json_obj(self) -> dict:
        return {
            "field": self.field.to_json(),
            "M": self.m.to_json_obj(),
            "N": self.n.to_json_obj(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2)

    @staticmethod
    def from_json_obj(obj: dict) -> "Monad":
        field = Field.from_json(obj["field"])
        m = ExtMatrix.from_json_obj(field, obj["M"])
        n = ExtMatrix.from_json_obj(field, obj["N"])
        return Monad(m, n)

    @staticmethod
    def from_json(text: str) -> "Monad":
        return Monad.from_json_obj(json.loads(text))

    def __repr__(self):
        return f"Monad(M={self.m.to_json_obj()['entries']}, N={self.n.to_json_obj()['entries']})"


def check_n_surjective(n: ExtMatrix) -> bool:
    """N is surjective iff no nontrivial combination of its rows is a pure
    tensor: the row-degeneracy gcd must be a nonzero constant."""
    if n.is_zero():
        return False
    g = degenerate_combinations(n, "rows")
    return g.is_constant()


def subbundle_obstruction_gcds(m: ExtMatrix) -> tuple[BinaryForm, BinaryForm]:
    """The two obstruction gcds (g_A, g_B) for the subbundle condition.

    With ξ(s,t) = s·m₁₁ + t·m₁₂ and η(s,t) = s·m₂₁ + t·m₂₂, the generalized
    columns of M share a linear factor at (s:t) exactly when both
    A(s,t) = (ξ*²)*∧η and B(s,t) = (η*²)*∧ξ vanish there.  Each of A, B is a
    Λ⁴-valued binary cubic; g_A and g_B are the gcds of their five
    coefficient forms.
    """
    field = m.field

    def pencil_cubics(first: Multivector, second: Multivector,
                      other_first: Multivector, other_second: Multivector):
        # (ξ*²)*∧η with ξ = s·first + t·second, η = s·other_first + t·other_second
        # expand by bilinearity: ξ* = s·a + t·b with a=first*, b=second*.
        a, b = first.star(), second.star()
        sq = [a.wedge(a), a.wedge(b) + b.wedge(a), b.wedge(b)]  # s², st, t²
        core = [x.star() for x in sq]  # grade-1 primal, coeffs of s²,st,t²
        eta = [other_first, other_second]  # s, t coefficients
        # product: cubic in (s,t) with Λ⁴ values
        acc = [Multivector.zero(field, m.dim_v) for _ in range(4)]
        for i, c in enumerate(core):
            for j, e in enumerate(eta):
                acc[i + j] = acc[i + j] + c.wedge(e)
        return acc

    m11, m12, m21, m22 = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    a_cubics = pencil_cubics(m11, m12, m21, m22)
    b_cubics = pencil_cubics(m21, m22, m11, m12)

    def coeff_forms(cubics):
        keys = set()
        for c in cubics:
            keys |= c.terms.keys()
        forms = []
        for key in sorted(keys):
            forms.append(
                BinaryForm(field, [c.terms.get(key, field.zero) for c in cubics])
            )
        return forms

    ga = form_gcd(coeff_forms(a_cubics)) if any(not c.is_zero() for c in a_cubics) else BinaryForm.zero(field)
    gb = form_gcd(coeff_forms(b_cubics)) if any(not c.is_zero() for c in b_cubics) else BinaryForm.zero(field)
    return ga, gb


def check_m_subbundle(m: ExtMatrix) -> bool:
    """True iff no point of P¹ (over the closure) is a simultaneous root of
    both obstruction gcds."""
    ga, gb = subbundle_obstruction_gcds(m)
    if ga.is_zero() and gb.is_zero():
        return False
    if ga.is_zero():
        return gb.degree < 1
    if gb.is_zero():
        return ga.degree < 1
    g = form_gcd([ga, gb])
    return g.degree < 1
