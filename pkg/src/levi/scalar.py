"""Exact field arithmetic over GF(p) and the rationals.

A :class:`Field` is the descriptor; its methods work on *raw* canonical
representatives (``int`` residues in ``[0, p)`` or reduced
:class:`fractions.Fraction`).  Everything downstream (function vectors,
elimination) stores raw representatives and carries the field alongside,
so the hot loops never allocate wrapper objects.  :class:`FieldScalar`
is the checked, self-describing wrapper for public use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Raw = Union[int, Fraction]

MAX_PRIME = 1 << 16


class FieldError(Exception):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class DescriptorMismatch(FieldError, ValueError):
    pass


class InfiniteField(FieldError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """A prime field GF(p) (``p`` set) or the rationals (``p is None``)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or isinstance(self.p, bool):
                raise FieldError(f"modulus must be an int, got {self.p!r}")
            if not _is_prime(self.p):
                raise FieldError(f"{self.p} is not prime")
            if self.p >= MAX_PRIME:
                raise FieldError(f"modulus {self.p} exceeds 2**16")

    @property
    def kind(self) -> str:
        return "rational" if self.p is None else "gf"

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def order(self) -> int:
        if self.p is None:
            raise InfiniteField("the rationals have no finite order")
        return self.p

    @property
    def zero(self) -> Raw:
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self) -> Raw:
        return 1 if self.p is not None else Fraction(1)

    # raw arithmetic -------------------------------------------------------

    def canon(self, value) -> Raw:
        """Canonical representative of ``value`` (int, Fraction, str or scalar)."""
        if isinstance(value, FieldScalar):
            if value.field != self:
                raise DescriptorMismatch(f"{value.field} vs {self}")
            return value.value
        if isinstance(value, str):
            value = Fraction(value)
        if self.p is None:
            if isinstance(value, float):
                raise FieldError("floating point values are not exact")
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator == 1:
                return value.numerator % self.p
            den = value.denominator % self.p
            if den == 0:
                raise DivisionByZero(f"denominator {value.denominator} vanishes mod {self.p}")
            return value.numerator * pow(den, -1, self.p) % self.p
        if isinstance(value, bool) or not isinstance(value, int):
            raise FieldError(f"cannot coerce {value!r} into {self}")
        return value % self.p

    def add(self, x: Raw, y: Raw) -> Raw:
        return (x + y) % self.p if self.p else x + y

    def sub(self, x: Raw, y: Raw) -> Raw:
        return (x - y) % self.p if self.p else x - y

    def mul(self, x: Raw, y: Raw) -> Raw:
        return x * y % self.p if self.p else x * y

    def neg(self, x: Raw) -> Raw:
        return -x % self.p if self.p else -x

    def inv(self, x: Raw) -> Raw:
        if not x:
            raise DivisionByZero("inverse of zero")
        return pow(x, -1, self.p) if self.p else 1 / x

    def div(self, x: Raw, y: Raw) -> Raw:
        return self.mul(x, self.inv(y))

    def elements(self) -> list[Raw]:
        if self.p is None:
            raise InfiniteField("the rationals cannot be enumerated")
        return list(range(self.p))

    # encodings ------------------------------------------------------------

    def encode(self, x: Raw):
        """JSON encoding of a raw value: int for GF(p), "a/b" string for Q."""
        if self.p is not None:
            return int(x)
        return str(Fraction(x))

    def decode(self, obj) -> Raw:
        return self.canon(obj)

    def to_json(self) -> dict:
        if self.p is None:
            return {"type": "rational"}
        return {"type": "gf", "p": self.p}

    @classmethod
    def from_json(cls, obj: dict) -> Field:
        kind = obj.get("type")
        if kind == "gf":
            return cls(int(obj["p"]))
        if kind == "rational":
            return cls(None)
        raise FieldError(f"unknown field descriptor {obj!r}")

    @classmethod
    def parse(cls, text: str) -> Field:
        """Parse the command-line form ``gf:P`` or ``rational``."""
        text = text.strip().lower()
        if text in ("rational", "rationals", "q"):
            return cls(None)
        if text.startswith("gf:"):
            return cls(int(text[3:]))
        raise FieldError(f"bad field spec {text!r}; expected gf:P or rational")

    def __call__(self, value) -> FieldScalar:
        return FieldScalar(self, self.canon(value))

    def __str__(self) -> str:
        return "Q" if self.p is None else f"GF({self.p})"


def GF(p: int) -> Field:
    return Field(p)


QQ = Field(None)


@dataclass(frozen=True)
class FieldScalar:
    field: Field
    value: Raw

    def __post_init__(self):
        if self.field.p is not None:
            ok = isinstance(self.value, int) and 0 <= self.value < self.field.p
        else:
            ok = isinstance(self.value, Fraction)
        if not ok:
            raise FieldError(f"{self.value!r} is not canonical in {self.field}")

    def _other(self, other) -> Raw:
        if isinstance(other, FieldScalar):
            if other.field != self.field:
                raise DescriptorMismatch(f"{self.field} vs {other.field}")
            return other.value
        return self.field.canon(other)

    def __add__(self, other):
        return FieldScalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldScalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldScalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldScalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldScalar(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return FieldScalar(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return FieldScalar(self.field, self.field.neg(self.value))

    def inv(self) -> FieldScalar:
        return FieldScalar(self.field, self.field.inv(self.value))

    def __bool__(self) -> bool:
        return bool(self.value)

    def to_json(self):
        return self.field.encode(self.value)

    def __str__(self) -> str:
        return str(self.value)


_BINARY = {"add", "sub", "mul", "div"}


def field_arith(op: str, x: FieldScalar, y: FieldScalar | None = None) -> FieldScalar:
    """Apply ``op`` (add, sub, mul, div, neg, inv) to scalars of one field."""
    if op in _BINARY:
        if y is None:
            raise FieldError(f"{op} needs two operands")
        if x.field != y.field:
            raise DescriptorMismatch(f"{x.field} vs {y.field}")
        return FieldScalar(x.field, getattr(x.field, op)(x.value, y.value))
    if op in ("neg", "inv"):
        return FieldScalar(x.field, getattr(x.field, op)(x.value))
    raise FieldError(f"unknown operation {op!r}")


def enumerate_field(field: Field) -> list[FieldScalar]:
    """All elements of a prime field, zero first, in ascending residue order."""
    return [FieldScalar(field, v) for v in field.elements()]
