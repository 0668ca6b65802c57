"""Exact field contexts.

A field context knows how to build its elements, test squares and extract
canonical square roots. Element arithmetic is done with ordinary operators;
mixing elements of different contexts raises ``TypeError``.
"""

from fractions import Fraction
from math import isqrt


class FieldError(ValueError):
    pass


class Field:
    """Base contract shared by every exact field used in the package."""

    characteristic = 0
    is_finite = False
    cardinality = None  # None means infinite
    is_ordered = False

    def __call__(self, value):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def is_square(self, x):
        raise NotImplementedError

    def sqrt(self, x):
        raise NotImplementedError

    def elements(self):
        raise FieldError("infinite field cannot be enumerated")

    def contains(self, x):
        raise NotImplementedError


def _perfect_square(n):
    return n >= 0 and isqrt(n) ** 2 == n


class RationalField(Field):
    """The rational numbers with their usual order.

    Elements are :class:`fractions.Fraction`, which is already kept in lowest
    terms with a positive denominator.
    """

    characteristic = 0
    is_finite = False
    cardinality = None
    is_ordered = True

    def __call__(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (int, str)):
            return Fraction(value)
        raise TypeError(f"cannot coerce {value!r} into QQ")

    def contains(self, x):
        return isinstance(x, Fraction)

    def is_square(self, x):
        x = self(x)
        return _perfect_square(x.numerator) and _perfect_square(x.denominator)

    def sqrt(self, x):
        """Non-negative rational square root, or ``None``."""
        x = self(x)
        if not self.is_square(x):
            return None
        return Fraction(isqrt(x.numerator), isqrt(x.denominator))

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


QQ = RationalField()


def square_free_part(x):
    """Square-free integer in the square class of the nonzero rational ``x``."""
    x = Fraction(x)
    if x == 0:
        raise FieldError("zero has no square class")
    n = x.numerator * x.denominator
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e % 2:
            out *= d
        d += 1
    return sign * out * n


def is_square(ctx, x):
    return ctx.is_square(x)


def sqrt(ctx, x):
    return ctx.sqrt(x)
