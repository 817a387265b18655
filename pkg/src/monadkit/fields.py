"""Exact scalar arithmetic: the rationals and prime fields F_p.

Every computation in this package is exact.  Rational scalars are plain
``fractions.Fraction`` objects; finite-field scalars are instances of a
per-prime ``int`` subclass so that hashing, equality and truthiness behave
like ordinary integers while ``+ - * /`` reduce mod p.

A :class:`Field` object carries the conversions (``of``, ``parse``,
``random``) so that all higher layers are field-generic.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from typing import Union

Scalar = Union[Fraction, "FpElement"]


class FpElement(int):
    """Base class for prime-field elements; concrete subclasses fix ``p``."""

    p: int = 0  # overridden per subclass

    __slots__ = ()

    def __new__(cls, value: int) -> "FpElement":
        return super().__new__(cls, value % cls.p)

    def __add__(self, other):
        return type(self)(int(self) + int(other))

    __radd__ = __add__

    def __sub__(self, other):
        return type(self)(int(self) - int(other))

    def __rsub__(self, other):
        return type(self)(int(other) - int(self))

    def __mul__(self, other):
        return type(self)(int(self) * int(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = int(other) % self.p
        if o == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return type(self)(int(self) * pow(o, -1, self.p))

    def __rtruediv__(self, other):
        if int(self) == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return type(self)(int(other) * pow(int(self), -1, self.p))

    def __neg__(self):
        return type(self)(-int(self))

    def __pow__(self, exp):
        if exp < 0:
            return (type(self)(1) / self) ** (-exp)
        return type(self)(pow(int(self), exp, self.p))

    def __repr__(self):
        return f"{int(self)}"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@lru_cache(maxsize=None)
def _fp_class(p: int) -> type:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    return type(f"F{p}", (FpElement,), {"p": p, "__slots__": ()})


class Field:
    """A ground field: the rationals (``Field.QQ()``) or F_p (``Field.GF(p)``)."""

    def __init__(self, p: int = 0):
        self.p = p
        self._cls = _fp_class(p) if p else Fraction

    @staticmethod
    def QQ() -> "Field":
        return Field(0)

    @staticmethod
    def GF(p: int) -> "Field":
        return Field(p)

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    def of(self, value) -> Scalar:
        """Coerce an int / Fraction / same-field scalar into this field."""
        if self.p:
            return self._cls(int(value))
        return Fraction(value)

    @property
    def zero(self) -> Scalar:
        return self.of(0)

    @property
    def one(self) -> Scalar:
        return self.of(1)

    def parse(self, text: str) -> Scalar:
        text = text.strip()
        if self.p:
            if "/" in text:
                num, den = text.split("/")
                return self.of(num) / self.of(den)
            return self.of(int(text))
        return Fraction(text)

    def format(self, x: Scalar) -> str:
        return str(x)

    def random(self, rng: random.Random, height: int = 3) -> Scalar:
        """A uniform element of F_p, or a rational with |num|,den ≤ height."""
        if self.p:
            return self.of(rng.randrange(self.p))
        return Fraction(rng.randint(-height, height))

    def random_nonzero(self, rng: random.Random, height: int = 3) -> Scalar:
        while True:
            x = self.random(rng, height)
            if x != 0:
                return x

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    def to_json(self) -> str:
        return "Q" if self.p == 0 else f"Fp:{self.p}"

    @staticmethod
    def from_json(text: str) -> "Field":
        text = text.strip()
        if text in ("Q", "QQ"):
            return Field.QQ()
        if text.startswith("Fp:"):
            return Field.GF(int(text[3:]))
        raise ValueError(f"unknown field descriptor {text!r}")
