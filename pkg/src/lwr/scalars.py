"""Exact field arithmetic: the rationals and prime fields of odd characteristic.

Rational scalars are plain :class:`fractions.Fraction` values.  Prime-field
scalars are :class:`Residue` objects.  Both support ``+ - * /`` with each
other's kind of integer operands, so the algebra code never needs to know
which field it is running over.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "CharacteristicTwo",
    "FieldSpec",
    "QQ",
    "Residue",
    "Scalar",
    "ScalarParseError",
    "format_scalar",
    "is_prime",
    "scalar_arith",
    "scalar_parse",
]


class ScalarParseError(ValueError):
    pass


class CharacteristicTwo(ValueError):
    """Raised for fields of characteristic 2; the embedding construction halves values."""


_SCALAR_RE = re.compile(r"^\s*(-?\d+)(?:/(\d+))?\s*$")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Residue:
    """An element of F_p, stored as its representative in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.p != self.p:
                raise ValueError(f"mixing F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.p)

    def inverse(self) -> "Residue":
        if self.value == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Residue(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Residue(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.inverse() * o

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return (self.value - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"Residue({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, Residue]


@dataclass(frozen=True)
class FieldSpec:
    """Which field scalars live in: ``kind`` is ``"rational"`` or ``"prime"``."""

    kind: str = "rational"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.p is not None:
                raise ValueError("the rational field takes no modulus")
        elif self.kind == "prime":
            if self.p == 2:
                raise CharacteristicTwo("F_2 has characteristic 2")
            if self.p is None or not is_prime(self.p):
                raise ValueError(f"prime field needs a prime modulus, got {self.p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "rational" else self.p

    def __call__(self, n: int | Fraction = 0) -> Scalar:
        """Coerce an integer (or, over Q, a fraction) into the field."""
        if self.kind == "rational":
            return Fraction(n)
        if isinstance(n, Fraction):
            return Residue(n.numerator, self.p) / n.denominator
        return Residue(n, self.p)

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def half(self, x: Scalar) -> Scalar:
        return x / self(2)

    def to_json(self) -> dict:
        if self.kind == "rational":
            return {"type": "rational"}
        return {"type": "prime", "p": self.p}

    def __str__(self):
        return "Q" if self.kind == "rational" else f"F_{self.p}"


QQ = FieldSpec("rational")


def scalar_parse(text: str, spec: FieldSpec = QQ) -> Scalar:
    """Parse ``-?digits(/digits)?`` into an exact element of ``spec``.

    >>> scalar_parse("3/6")
    Fraction(1, 2)
    >>> scalar_parse("7", FieldSpec("prime", 5))
    Residue(2, 5)
    """
    m = _SCALAR_RE.match(str(text))
    if m is None:
        raise ScalarParseError(f"malformed scalar {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ScalarParseError(f"zero denominator in {text!r}")
    if spec.kind == "rational":
        return Fraction(num, den)
    if den % spec.p == 0:
        raise ScalarParseError(f"denominator of {text!r} vanishes in F_{spec.p}")
    return Residue(num, spec.p) / den


def format_scalar(c: Scalar) -> str:
    if isinstance(c, Residue):
        return str(c.value)
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")
