"""Quadratic extensions l = k(sqrt t) with conjugation, norm and trace.

An element ``u + v*w`` (``w`` a fixed square root of t) is an :class:`ExtElem`.
Conjugation is ``(u, v) -> (u, -v)``. Over a finite base every element also
has an integer code ``u.code + q * v.code``, used by the vectorized kernels.
"""

from fractions import Fraction
from functools import cached_property

import numpy as np

from .fields import QQ, FieldError, RationalField, square_free_part


class QuadExt:
    def __init__(self, base, t):
        t = base(t)
        if isinstance(base, RationalField):
            if t == 0:
                raise FieldError("t must be nonzero")
            t = Fraction(square_free_part(t))
        if t == 0 or base.is_square(t):
            raise FieldError(f"t = {t!r} is a square in {base!r}; k(sqrt t) is not a field")
        self.base = base
        self.t = t

    @property
    def is_finite(self):
        return self.base.is_finite

    def __call__(self, u, v=0):
        if isinstance(u, ExtElem):
            if u.ext != self:
                raise TypeError("element belongs to a different extension")
            return u
        return ExtElem(self, self.base(u), self.base(v))

    @property
    def zero(self):
        return self(0, 0)

    @property
    def one(self):
        return self(1, 0)

    @property
    def w(self):
        """The chosen purely imaginary generator, w^2 = t."""
        return self(0, 1)

    def conj(self, x):
        return self(x).conj()

    def norm(self, x):
        return self(x).norm()

    def trace(self, x):
        return self(x).trace()

    def is_imaginary(self, x):
        return self(x).u == 0

    # -- finite base ------------------------------------------------------

    def _require_finite(self):
        if not self.base.is_finite:
            raise FieldError("infinite base")

    @property
    def q(self):
        self._require_finite()
        return self.base.q

    @property
    def order(self):
        return self.q**2

    def from_code(self, code):
        q = self.q
        code = int(code)
        return ExtElem(self, self.base.from_code(code % q), self.base.from_code(code // q))

    def elements(self):
        self._require_finite()
        return [self.from_code(c) for c in range(self.order)]

    def units(self):
        return self.elements()[1:]

    def unit_circle(self):
        """All x with x * conj(x) = 1."""
        self._require_finite()
        return [x for x in self.units() if x.norm() == 1]

    def punctured_axes(self):
        """Nonzero elements on the base axis or the imaginary axis."""
        self._require_finite()
        return [x for x in self.units() if x.u == 0 or x.v == 0]

    def norm_image(self):
        self._require_finite()
        return {x.norm() for x in self.units()}

    def norm_surjective(self):
        self._require_finite()
        return len(self.norm_image()) == self.base.q - 1

    # -- vectorized kernels on code arrays --------------------------------

    @cached_property
    def _t_code(self):
        return self.t.code

    def split(self, codes):
        q = self.base.q
        codes = np.asarray(codes)
        return codes % q, codes // q

    def join(self, u, v):
        return np.asarray(u) + self.base.q * np.asarray(v)

    def vadd(self, a, b):
        A = self.base.add_table
        au, av = self.split(a)
        bu, bv = self.split(b)
        return self.join(A[au, bu], A[av, bv])

    def vneg(self, a):
        N = self.base.neg_table
        au, av = self.split(a)
        return self.join(N[au], N[av])

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        A, M = self.base.add_table, self.base.mul_table
        au, av = self.split(a)
        bu, bv = self.split(b)
        u = A[M[au, bu], M[self._t_code, M[av, bv]]]
        v = A[M[au, bv], M[av, bu]]
        return self.join(u, v)

    def vscale(self, s, a):
        """Multiply ext codes ``a`` by base codes ``s``."""
        M = self.base.mul_table
        au, av = self.split(a)
        return self.join(M[s, au], M[s, av])

    def vconj(self, a):
        N = self.base.neg_table
        au, av = self.split(a)
        return self.join(au, N[av])

    def vnorm(self, a):
        """Norms as base codes."""
        A, M, N = self.base.add_table, self.base.mul_table, self.base.neg_table
        au, av = self.split(a)
        return A[M[au, au], N[M[self._t_code, M[av, av]]]]

    @cached_property
    def all_codes(self):
        return np.arange(self.order, dtype=np.int64)

    def __eq__(self, other):
        return isinstance(other, QuadExt) and self.base == other.base and self.t == other.t

    def __hash__(self):
        return hash((self.base, self.t))

    def __repr__(self):
        return f"{self.base!r}(sqrt {self.t!r})"


class ExtElem:
    __slots__ = ("ext", "u", "v")

    def __init__(self, ext, u, v):
        self.ext = ext
        self.u = u
        self.v = v

    def _coerce(self, other):
        if isinstance(other, ExtElem):
            if other.ext is not self.ext and other.ext != self.ext:
                raise TypeError(f"cannot mix {self.ext!r} and {other.ext!r}")
            return other
        try:
            return ExtElem(self.ext, self.ext.base(other), self.ext.base.zero)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElem(self.ext, self.u + o.u, self.v + o.v)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExtElem(self.ext, self.u - o.u, self.v - o.v)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return ExtElem(self.ext, -self.u, -self.v)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = self.ext.t
        return ExtElem(self.ext, self.u * o.u + t * self.v * o.v, self.u * o.v + self.v * o.u)

    __rmul__ = __mul__

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return ExtElem(self.ext, self.u / n, -self.v / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ext.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self):
        return ExtElem(self.ext, self.u, -self.v)

    def norm(self):
        return self.u * self.u - self.ext.t * self.v * self.v

    def trace(self):
        return self.u + self.u

    def is_zero(self):
        return self.u == 0 and self.v == 0

    def __bool__(self):
        return not self.is_zero()

    def in_base(self):
        return self.v == 0

    def __eq__(self, other):
        if isinstance(other, ExtElem):
            return self.ext == other.ext and self.u == other.u and self.v == other.v
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.u == o.u and self.v == o.v

    def __hash__(self):
        return hash((self.u, self.v))

    @property
    def code(self):
        return self.u.code + self.ext.base.q * self.v.code

    def __lt__(self, other):
        return self.code < other.code

    def __repr__(self):
        u, v = _fmt(self.u), _fmt(self.v)
        if self.v == 0:
            return u
        if self.u == 0:
            return f"{v}*w"
        return f"{u}+{v}*w"


def _fmt(x):
    return str(x) if isinstance(x, Fraction) else repr(x)


def conj(ext, x):
    return ext.conj(x)


def norm(ext, x):
    return ext.norm(x)


def gaussian_rationals():
    """QQ(sqrt -1)."""
    return QuadExt(QQ, -1)
