"""Finite fields F_q, q = p^n odd.

Elements are stored as integer codes ``sum(d_i * p**i)`` where ``d_i`` is the
coefficient of ``x**i`` in the residue modulo the defining polynomial. The
code order is the fixed enumeration order: 0, 1, ..., p-1, x, x+1, ...

The defining polynomial is the first monic irreducible of degree n when the
non-leading coefficients are read from x^(n-1) down to x^0 and compared
lexicographically. For n = 1 the field is Z/pZ.
"""

from functools import cached_property

import numpy as np

from .fields import Field, FieldError

DEFAULT_MAX_ORDER = 4096


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over F_p, coefficient lists low -> high -------------------

def _trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mod(f, g, p):
    f = _trim(f)
    g = _trim(g)
    inv_lead = pow(g[-1], p - 2, p)
    while len(f) >= len(g):
        coef = f[-1] * inv_lead % p
        shift = len(f) - len(g)
        for i, gc in enumerate(g):
            f[shift + i] = (f[shift + i] - coef * gc) % p
        f = _trim(f)
    return f


def _poly_mulmod(f, g, m, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _poly_mod(out, m, p)


def _poly_powmod(f, e, m, p):
    result = [1]
    base = _poly_mod(f, m, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        e >>= 1
    return result


def _poly_sub(f, g, p):
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    return _trim([(a - b) % p for a, b in zip(f, g)])


def _poly_gcd(f, g, p):
    f, g = _trim(f), _trim(g)
    while g:
        f, g = g, _poly_mod(f, g, p)
    return f


def is_irreducible(f, p):
    """Rabin's test for a monic polynomial ``f`` (low -> high) over F_p."""
    f = _trim(f)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _poly_sub(_poly_powmod(x, p**n, f, p), x, p):
        return False
    for r in _prime_factors(n):
        h = _poly_sub(_poly_powmod(x, p ** (n // r), f, p), x, p)
        if len(_poly_gcd(f, h, p)) != 1:
            return False
    return True


def first_irreducible(p, n):
    if n == 1:
        return (0, 1)
    for idx in range(p**n):
        # idx read in base p gives (a_{n-1}, ..., a_0), most significant first
        high_to_low = []
        rest = idx
        for _ in range(n):
            high_to_low.append(rest % p)
            rest //= p
        high_to_low.reverse()
        f = list(reversed(high_to_low)) + [1]
        if f[0] != 0 and is_irreducible(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {n} over F_{p}")


class PrimePowerField(Field):
    """The finite field with ``p**n`` elements, p odd."""

    is_finite = True
    is_ordered = False

    def __init__(self, p, n=1, max_order=DEFAULT_MAX_ORDER):
        if not is_prime(p) or p == 2:
            raise FieldError(f"not an odd prime: {p}")
        if n < 1:
            raise FieldError(f"exponent must be positive, got {n}")
        q = p**n
        if max_order is not None and q > max_order:
            raise FieldError(f"size bound exceeded: q = {q} > {max_order}")
        self.p = p
        self.n = n
        self.q = q
        self.characteristic = p
        self.cardinality = q
        self.modulus = first_irreducible(p, n)
        self._digits = [self._to_digits(c) for c in range(q)]
        self._build_log_tables()

    # -- construction helpers --------------------------------------------

    def _to_digits(self, code):
        out = []
        for _ in range(self.n):
            out.append(code % self.p)
            code //= self.p
        return tuple(out)

    def _from_digits(self, digits):
        code = 0
        for d in reversed(digits):
            code = code * self.p + d % self.p
        return code

    def _poly_mul_codes(self, a, b):
        prod = _poly_mulmod(list(self._digits[a]), list(self._digits[b]), list(self.modulus), self.p)
        return self._from_digits(prod + [0] * (self.n - len(prod)))

    def _build_log_tables(self):
        q = self.q
        order = q - 1
        factors = _prime_factors(order)
        gen = None
        for g in range(2 if q > 2 else 1, q):
            ok = True
            for r in factors:
                # g^(order/r) by repeated squaring on codes
                e, acc, base = order // r, 1, g
                while e:
                    if e & 1:
                        acc = self._poly_mul_codes(acc, base)
                    base = self._poly_mul_codes(base, base)
                    e >>= 1
                if acc == 1:
                    ok = False
                    break
            if ok:
                gen = g
                break
        if gen is None:
            gen = 1  # only for q = 2, excluded above
        exp = [1] * order
        for k in range(1, order):
            exp[k] = self._poly_mul_codes(exp[k - 1], gen)
        log = [0] * q
        for k, v in enumerate(exp):
            log[v] = k
        self.generator_code = gen
        self._exp = exp
        self._log = log

    # -- scalar operations on codes --------------------------------------

    def add_codes(self, a, b):
        if self.n == 1:
            return (a + b) % self.p
        da, db = self._digits[a], self._digits[b]
        return self._from_digits([x + y for x, y in zip(da, db)])

    def neg_code(self, a):
        if self.n == 1:
            return (-a) % self.p
        return self._from_digits([-x for x in self._digits[a]])

    def sub_codes(self, a, b):
        return self.add_codes(a, self.neg_code(b))

    def mul_codes(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv_code(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow_code(self, a, e):
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    # -- vectorized tables ------------------------------------------------

    @cached_property
    def add_table(self):
        D = np.array(self._digits, dtype=np.int64).reshape(self.q, self.n)
        W = self.p ** np.arange(self.n, dtype=np.int64)
        S = (D[:, None, :] + D[None, :, :]) % self.p
        return (S @ W).astype(np.int32)

    @cached_property
    def mul_table(self):
        log = np.array(self._log, dtype=np.int64)
        exp = np.array(self._exp, dtype=np.int64)
        T = exp[(log[:, None] + log[None, :]) % (self.q - 1)]
        T[0, :] = 0
        T[:, 0] = 0
        return T.astype(np.int32)

    @cached_property
    def neg_table(self):
        return np.array([self.neg_code(a) for a in range(self.q)], dtype=np.int32)

    @cached_property
    def inv_table(self):
        # inverse of 0 is set to 0; callers must mask zero divisors themselves
        return np.array([0] + [self.inv_code(a) for a in range(1, self.q)], dtype=np.int32)

    @cached_property
    def square_mask(self):
        """Boolean array: ``square_mask[c]`` is True iff code c is a square (0 included)."""
        mask = np.zeros(self.q, dtype=bool)
        mask[self.mul_table[np.arange(self.q), np.arange(self.q)]] = True
        return mask

    # -- Field contract ---------------------------------------------------

    def __call__(self, value):
        if isinstance(value, FqElement):
            if value.field is not self and value.field != self:
                raise TypeError(f"element of {value.field!r} is not in {self!r}")
            return value
        if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
            return FqElement(self, int(value) % self.p)
        raise TypeError(f"cannot coerce {value!r} into {self!r}")

    def from_code(self, code):
        code = int(code)
        if not 0 <= code < self.q:
            raise FieldError(f"code {code} out of range for {self!r}")
        return FqElement(self, code)

    def contains(self, x):
        return isinstance(x, FqElement) and x.field == self

    def elements(self):
        return [FqElement(self, c) for c in range(self.q)]

    def __iter__(self):
        return iter(self.elements())

    def __len__(self):
        return self.q

    def is_square_code(self, a):
        if a == 0:
            return True
        return self.pow_code(a, (self.q - 1) // 2) == 1

    def is_square(self, x):
        """Euler's criterion: x^((q-1)/2) is 0 or 1."""
        return self.is_square_code(self(x).code)

    def sqrt_code(self, a):
        if a == 0:
            return 0
        if not self.is_square_code(a):
            return None
        r = self._exp[self._log[a] // 2]
        return min(r, self.neg_code(r))

    def sqrt(self, x):
        """Square root with the least code among the two roots, or ``None``."""
        r = self.sqrt_code(self(x).code)
        return None if r is None else FqElement(self, r)

    def frobenius(self, x):
        return x**self.p

    @property
    def generator(self):
        return FqElement(self, self.generator_code)

    def __repr__(self):
        return f"F_{self.q}"

    def __eq__(self, other):
        return (
            isinstance(other, PrimePowerField)
            and self.p == other.p
            and self.n == other.n
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash(("Fq", self.p, self.n, self.modulus))

    def __reduce__(self):
        return (PrimePowerField, (self.p, self.n, None))


class FqElement:
    __slots__ = ("field", "code")

    def __init__(self, field, code):
        self.field = field
        self.code = code

    def _coerce(self, other):
        if isinstance(other, FqElement):
            if other.field is not self.field and other.field != self.field:
                raise TypeError(f"cannot mix {self.field!r} and {other.field!r}")
            return other.code
        if isinstance(other, int) and not isinstance(other, bool):
            return other % self.field.p
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FqElement(self.field, self.field.add_codes(self.code, c))

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FqElement(self.field, self.field.sub_codes(self.code, c))

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FqElement(self.field, self.field.sub_codes(c, self.code))

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FqElement(self.field, self.field.mul_codes(self.code, c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FqElement(self.field, self.field.mul_codes(self.code, self.field.inv_code(c)))

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FqElement(self.field, self.field.mul_codes(c, self.field.inv_code(self.code)))

    def __neg__(self):
        return FqElement(self.field, self.field.neg_code(self.code))

    def __pos__(self):
        return self

    def __pow__(self, e):
        return FqElement(self.field, self.field.pow_code(self.code, int(e)))

    def inverse(self):
        return FqElement(self.field, self.field.inv_code(self.code))

    def __eq__(self, other):
        if isinstance(other, FqElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int) and not isinstance(other, bool):
            return self.code == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.code))

    def __lt__(self, other):
        return self.code < self.field(other).code

    def __le__(self, other):
        return self.code <= self.field(other).code

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        return self.code

    def __index__(self):
        return self.code

    def __repr__(self):
        if self.field.n == 1:
            return str(self.code)
        terms = []
        for i, d in reversed(list(enumerate(self.field._digits[self.code]))):
            if d == 0:
                continue
            if i == 0:
                terms.append(str(d))
            else:
                mono = "x" if i == 1 else f"x^{i}"
                terms.append(mono if d == 1 else f"{d}{mono}")
        return "+".join(terms) if terms else "0"


def make_fq(p, n=1, max_order=DEFAULT_MAX_ORDER):
    return PrimePowerField(p, n, max_order)


def fq(q, max_order=DEFAULT_MAX_ORDER):
    """Field of order ``q`` given as a prime power."""
    if q < 3:
        raise FieldError(f"not an odd prime power: {q}")
    for p in range(3, q + 1):
        if is_prime(p) and q % p == 0:
            n, rest = 0, q
            while rest % p == 0:
                rest //= p
                n += 1
            if rest != 1:
                break
            return PrimePowerField(p, n, max_order)
    raise FieldError(f"not an odd prime power: {q}")


def smallest_nonsquare(F):
    for c in range(1, F.q):
        if not F.is_square_code(c):
            return F.from_code(c)
    raise FieldError(f"{F!r} has no non-squares")


def enumerate_field(F):
    return F.elements()
