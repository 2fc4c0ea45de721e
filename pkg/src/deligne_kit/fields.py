"""Exact scalar fields.

Elements of ``Q`` are :class:`fractions.Fraction`; elements of ``F_p`` are plain
``int`` in ``range(p)``.  Arithmetic is done with the ordinary Python operators
and results are brought back to canonical form with :meth:`Field.reduce`.
Only division needs the field (:meth:`Field.inv`).
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache


class FieldError(ValueError):
    pass


class CharacteristicTooSmall(FieldError):
    """Raised when a truncated exponential series needs denominators the field cannot invert."""


class InfiniteField(FieldError):
    """Raised when an enumeration is requested over ``Q``."""


class FieldMismatch(FieldError):
    pass


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    characteristic = 0
    is_finite = False

    zero = None
    one = None

    def reduce(self, x):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def __call__(self, x):
        """Coerce an int, Fraction, or string like ``"-3/2"`` into the field."""
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction) and x.denominator != 1:
            return self.reduce(self.reduce(x.numerator) * self.inv(self.reduce(x.denominator)))
        return self.reduce(int(x) if isinstance(x, Fraction) else x)

    def div(self, a, b):
        return self.reduce(a * self.inv(b))

    def vec(self, xs):
        return tuple(self(x) for x in xs)

    def zeros(self, n):
        return (self.zero,) * n

    def to_json(self, a):
        raise NotImplementedError

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __reduce__(self):
        return (parse_field, (self.name,))


class RationalField(Field):
    name = "Q"
    characteristic = 0
    is_finite = False
    zero = Fraction(0)
    one = Fraction(1)

    def reduce(self, x):
        return x if isinstance(x, Fraction) else Fraction(x)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def elements(self):
        raise InfiniteField("Q has infinitely many elements")

    def to_json(self, a):
        a = Fraction(a)
        return a.numerator if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def format(self, a):
        return str(Fraction(a))


class PrimeField(Field):
    is_finite = True
    zero = 0
    one = 1

    def __init__(self, p):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"

    def reduce(self, x):
        return x % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def elements(self):
        return range(self.p)

    @property
    def order(self):
        return self.p

    def to_json(self, a):
        return int(a) % self.p

    def format(self, a):
        return str(int(a) % self.p)


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p):
    return PrimeField(p)


def parse_field(value):
    """``"Q"`` / ``"QQ"`` or ``"F5"`` / ``"GF5"`` / ``"F_5"``."""
    if isinstance(value, Field):
        return value
    s = str(value).strip()
    if s in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"(?:GF|F)_?\(?(\d+)\)?", s)
    if not m:
        raise FieldError(f"unrecognised field {value!r}")
    return GF(int(m.group(1)))


def require_denominators(field, bound, what=""):
    """Series with denominators dividing ``lcm(1..bound)`` need char 0 or ``p > bound``."""
    p = field.characteristic
    if p and p <= bound:
        raise CharacteristicTooSmall(
            f"{what or 'operation'} needs characteristic 0 or p > {bound}, got {field.name}")


def same_field(*fields):
    first = fields[0]
    for f in fields[1:]:
        if f != first:
            raise FieldMismatch(f"fields differ: {first} vs {f}")
    return first
