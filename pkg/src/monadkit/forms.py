"""Homogeneous binary forms in (s,t) with exact coefficients.

The coefficient list ``c[0..d]`` stores the coefficient of s^{d−i}·t^i.
The key routine is the homogeneous gcd, which keeps track of pure s- and
t-power factors exactly, so "the forms share a projective root over the
algebraic closure" is decided by ``gcd degree ≥ 1 or gcd = 0`` in any
characteristic.
"""

from __future__ import annotations

from typing import List, Sequence

from .fields import Field, Scalar


class BinaryForm:
    """A homogeneous polynomial in (s, t); the zero form has degree -1."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Sequence):
        self.field = field
        cs = [field.of(c) for c in coeffs]
        if all(c == 0 for c in cs):
            cs = []
        self.coeffs = cs

    @staticmethod
    def zero(field: Field) -> "BinaryForm":
        return BinaryForm(field, [])

    @staticmethod
    def constant(field: Field, c) -> "BinaryForm":
        return BinaryForm(field, [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) == 1

    def __eq__(self, other):
        return (
            isinstance(other, BinaryForm)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("adding forms of different degrees")
        return BinaryForm(
            self.field, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __neg__(self) -> "BinaryForm":
        return BinaryForm(self.field, [-c for c in self.coeffs])

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + (-other)

    def scale(self, c) -> "BinaryForm":
        return BinaryForm(self.field, [self.field.of(c) * x for x in self.coeffs])

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        if self.is_zero() or other.is_zero():
            return BinaryForm.zero(self.field)
        out = [self.field.zero] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return BinaryForm(self.field, out)

    def evaluate(self, s, t) -> Scalar:
        s, t = self.field.of(s), self.field.of(t)
        d = self.degree
        acc = self.field.zero
        for i, c in enumerate(self.coeffs):
            acc = acc + c * s ** (d - i) * t**i
        return acc

    def monic(self) -> "BinaryForm":
        if self.is_zero():
            return self
        lead = next(c for c in self.coeffs if c != 0)
        return self.scale(self.field.one / lead)

    # -- valuation bookkeeping ---------------------------------------
    def t_valuation(self) -> int:
        """Largest k with t^k dividing the form (leading zero coefficients)."""
        if self.is_zero():
            raise ValueError("zero form")
        return next(i for i, c in enumerate(self.coeffs) if c != 0)

    def s_valuation(self) -> int:
        if self.is_zero():
            raise ValueError("zero form")
        return next(
            i for i, c in enumerate(reversed(self.coeffs)) if c != 0
        )

    def strip_st(self) -> tuple["BinaryForm", int, int]:
        """Divide out all s- and t-power factors; return (core, vs, vt)."""
        if self.is_zero():
            raise ValueError("zero form")
        vt = self.t_valuation()
        vs = self.s_valuation()
        core = self.coeffs[vt : len(self.coeffs) - vs]
        return BinaryForm(self.field, core), vs, vt

    def __repr__(self):
        if self.is_zero():
            return "0"
        d = self.degree
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "".join(
                filter(None, [f"s^{d-i}" if d - i else "", f"t^{i}" if i else ""])
            ) or "1"
            parts.append(f"({c})*{mono}")
        return " + ".join(parts)


def _poly_gcd(field: Field, a: List[Scalar], b: List[Scalar]) -> List[Scalar]:
    """Monic gcd of two dehomogenized polynomials (low-to-high degree? no:
    coefficient lists are highest-degree-first, matching BinaryForm)."""

    def deg(p):
        return len(p) - 1

    def norm(p):
        i = 0
        while i < len(p) and p[i] == 0:
            i += 1
        return p[i:]

    a, b = norm(a), norm(b)
    while b:
        # a mod b
        while len(a) >= len(b):
            f = a[0] / b[0]
            a = [
                x - f * y
                for x, y in zip(a, b + [field.zero] * (len(a) - len(b)))
            ]
            a = norm(a[1:]) if a and a[0] == 0 else norm(a)
            if not a:
                break
        a, b = b, a
    if not a:
        return []
    lead = a[0]
    return [c / lead for c in a]


def form_gcd(forms: Sequence[BinaryForm]) -> BinaryForm:
    """Monic gcd of homogeneous binary forms.

    The gcd of an empty or all-zero collection is the zero form, meaning the
    common vanishing locus is all of P¹.  Pure s- and t-power factors are
    tracked exactly, so the roots (1:0) and (0:1) are never lost.
    """
    nonzero = [f for f in forms if not f.is_zero()]
    if not nonzero:
        field = forms[0].field if forms else Field.QQ()
        return BinaryForm.zero(field)
    field = nonzero[0].field
    cores, vss, vts = [], [], []
    for f in nonzero:
        core, vs, vt = f.strip_st()
        cores.append(core)
        vss.append(vs)
        vts.append(vt)
    vs, vt = min(vss), min(vts)
    g = cores[0].coeffs
    for f in cores[1:]:
        if len(g) == 1:
            break
        g = _poly_gcd(field, g, f.coeffs)
    core_gcd = g if g else [field.one]
    out = (
        [field.zero] * vt
        + core_gcd
        + [field.zero] * vs
    )
    return BinaryForm(field, out).monic()


def _horner(coeffs: List[Scalar], x: Scalar) -> Scalar:
    acc = coeffs[0]
    for c in coeffs[1:]:
        acc = acc * x + c
    return acc


def _synthetic_div(coeffs: List[Scalar], x0: Scalar) -> List[Scalar]:
    """Quotient of a univariate polynomial (highest-degree-first) by X − x0;
    assumes x0 is a root."""
    out = [coeffs[0]]
    for c in coeffs[1:-1]:
        out.append(out[-1] * x0 + c)
    return out


def _divisors(n: int) -> List[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return out


def projective_roots(f: BinaryForm) -> tuple[List[tuple[tuple, int]], int]:
    """All projective roots of a nonzero binary form that lie in its
    coefficient field.

    Returns ``(roots, missing_degree)`` where ``roots`` is a list of
    ``((s0, t0), multiplicity)`` and ``missing_degree`` is the degree of the
    factor whose roots live only in a proper extension (0 when the form
    splits completely over the field).
    """
    if f.is_zero():
        raise ValueError("the zero form vanishes everywhere")
    field = f.field
    core, vs, vt = f.strip_st()
    roots: List[tuple[tuple, int]] = []
    if vt:
        roots.append(((field.one, field.zero), vt))
    if vs:
        roots.append(((field.zero, field.one), vs))
    coeffs = list(core.coeffs)  # poly in x = s/t, highest-first; ends nonzero
    if len(coeffs) == 1:
        return roots, 0

    def record(x0):
        mult = 0
        nonlocal coeffs
        while len(coeffs) > 1 and _horner(coeffs, x0) == 0:
            coeffs = _synthetic_div(coeffs, x0)
            mult += 1
        if mult:
            roots.append(((x0, field.one), mult))

    if field.is_finite:
        for v in range(field.p):
            record(field.of(v))
            if len(coeffs) == 1:
                break
    else:
        from fractions import Fraction
        from math import lcm

        den = lcm(*[c.denominator for c in coeffs])
        ints = [int(c * den) for c in coeffs]
        for p in _divisors(ints[-1]):
            for q in _divisors(ints[0]):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    record(cand)
                    if len(coeffs) == 1:
                        break
                if len(coeffs) == 1:
                    break
            if len(coeffs) == 1:
                break
    return roots, len(coeffs) - 1


def has_common_projective_root(forms: Sequence[BinaryForm]) -> bool:
    """True iff the forms share a root in P¹ over the algebraic closure."""
    g = form_gcd(forms)
    return g.is_zero() or g.degree >= 1
