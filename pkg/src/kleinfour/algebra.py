"""The algebras A(l, c) on l^2 and their structural invariants.

The product is

    (x, y) . (w, z) = (x w + (c2 y + c3 conj(y)) z,  y w + ((1 - c1) x + c1 conj(x)) z)

and A(l, c) is a division algebra exactly when

    q_c(x, y) = (1 - c1) x^2 + c1 x conj(x) - c2 y^2 - c3 y conj(y)

vanishes only at (0, 0). The k-basis used throughout is
e0 = (1, 0), e1 = (w, 0), e2 = (0, 1), e3 = (0, w) with w^2 = t.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import NamedTuple

import numpy as np

from . import linalg
from .budget import resolve
from .fields import QQ, FieldError, RationalField, square_free_part
from .quad_ext import ExtElem, QuadExt


class InadmissibleTriple(ValueError):
    pass


class Triple(NamedTuple):
    c1: object
    c2: object
    c3: object

    @classmethod
    def of(cls, field, c1, c2, c3):
        return cls(field(c1), field(c2), field(c3))

    def codes(self):
        return (self.c1.code, self.c2.code, self.c3.code)

    def sort_key(self):
        # enumeration order for finite fields, numeric order for rationals
        return tuple(getattr(c, "code", c) for c in self)


def square_abs(field, x):
    """|x| = x if x is a square (0 included), else -x."""
    return x if field.is_square(x) else -x


@dataclass(frozen=True)
class AlgebraSpec:
    ext: QuadExt
    c: Triple

    def __post_init__(self):
        k = self.ext.base
        object.__setattr__(self, "c", Triple(*(k(x) for x in self.c)))

    @property
    def base(self):
        return self.ext.base

    def __call__(self, x, y=0):
        return AlgElem(self, self.ext(x), self.ext(y))

    @property
    def zero(self):
        return self(0, 0)

    @property
    def one(self):
        return self(1, 0)

    @property
    def j(self):
        return self(0, 1)

    @property
    def u(self):
        """(w, 0), a generator of the subfield 1_A l over k."""
        return self(self.ext.w, 0)

    def mul(self, a, b):
        c1, c2, c3 = self.c
        x, y, w, z = a.x, a.y, b.x, b.y
        top = x * w + (y * c2 + y.conj() * c3) * z
        bottom = y * w + (x * (1 - c1) + x.conj() * c1) * z
        return AlgElem(self, top, bottom)

    # -- coordinates ------------------------------------------------------

    def basis(self):
        w = self.ext.w
        return [self(1, 0), self(w, 0), self(0, 1), self(0, w)]

    def coords(self, a):
        return [a.x.u, a.x.v, a.y.u, a.y.v]

    def from_coords(self, v):
        return AlgElem(self, self.ext(v[0], v[1]), self.ext(v[2], v[3]))

    @cached_property
    def structure_constants(self):
        """``table[i][j]`` = coordinates of e_i e_j."""
        B = self.basis()
        return [[self.coords(self.mul(a, b)) for b in B] for a in B]

    def left_matrix(self, a):
        return _columns([self.coords(self.mul(a, e)) for e in self.basis()])

    def right_matrix(self, a):
        return _columns([self.coords(self.mul(e, a)) for e in self.basis()])

    # -- finite base ------------------------------------------------------

    @property
    def order(self):
        return self.ext.order**2

    def from_code(self, code):
        Q = self.ext.order
        return AlgElem(self, self.ext.from_code(code % Q), self.ext.from_code(code // Q))

    def elements(self):
        return [self.from_code(c) for c in range(self.order)]

    def vmul(self, a, b):
        """Vectorized product on algebra codes ``x + |l| * y``."""
        ext = self.ext
        Q = ext.order
        a = np.asarray(a)
        b = np.asarray(b)
        x, y = a % Q, a // Q
        w, z = b % Q, b // Q
        c1, c2, c3 = (c.code for c in self.c)
        one_minus_c1 = (1 - self.c[0]).code
        yy = ext.vadd(ext.vscale(c2, y), ext.vscale(c3, ext.vconj(y)))
        xx = ext.vadd(ext.vscale(one_minus_c1, x), ext.vscale(c1, ext.vconj(x)))
        top = ext.vadd(ext.vmul(x, w), ext.vmul(yy, z))
        bottom = ext.vadd(ext.vmul(y, w), ext.vmul(xx, z))
        return top + Q * bottom

    def __repr__(self):
        return f"A({self.ext!r}, {tuple(self.c)!r})"


def _columns(cols):
    return [list(r) for r in zip(*cols)]


class AlgElem:
    __slots__ = ("alg", "x", "y")

    def __init__(self, alg, x, y):
        self.alg = alg
        self.x = x
        self.y = y

    def _same(self, other):
        if other.alg is not self.alg and other.alg != self.alg:
            raise TypeError(f"cannot mix {self.alg!r} and {other.alg!r}")

    def __add__(self, other):
        self._same(other)
        return AlgElem(self.alg, self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        self._same(other)
        return AlgElem(self.alg, self.x - other.x, self.y - other.y)

    def __neg__(self):
        return AlgElem(self.alg, -self.x, -self.y)

    def __mul__(self, other):
        if isinstance(other, AlgElem):
            self._same(other)
            return self.alg.mul(self, other)
        # right action of l (and hence of k) on the column (x, y)
        s = self.alg.ext(other) if not isinstance(other, ExtElem) else other
        return AlgElem(self.alg, self.x * s, self.y * s)

    def __rmul__(self, other):
        s = self.alg.ext(other) if not isinstance(other, ExtElem) else other
        return AlgElem(self.alg, s * self.x, s * self.y)

    def __eq__(self, other):
        if not isinstance(other, AlgElem):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def is_zero(self):
        return self.x.is_zero() and self.y.is_zero()

    @property
    def code(self):
        return self.x.code + self.alg.ext.order * self.y.code

    def __repr__(self):
        return f"({self.x!r}, {self.y!r})"


def mul(A, a, b):
    return A.mul(a, b)


# -- the quadratic map q_c --------------------------------------------------

def q_c(A, a):
    c1, c2, c3 = A.c
    x, y = a.x, a.y
    return x * x * (1 - c1) + x * x.conj() * c1 - y * y * c2 - y * y.conj() * c3


def ell_matrix(A, a):
    """2x2 matrix over l of the (l-linear) left multiplication by a."""
    c1, c2, c3 = A.c
    x, y = a.x, a.y
    return [[x, y * c2 + y.conj() * c3], [y, x * (1 - c1) + x.conj() * c1]]


def ell_det(A, a):
    M = ell_matrix(A, a)
    return M[0][0] * M[1][1] - M[0][1] * M[1][0]


def _q_parts(ext, c):
    """Code arrays f, g over all of l with q_c(x, y) = f(x) - g(y)."""
    codes = ext.all_codes
    sq = ext.vmul(codes, codes)
    nrm = ext.vnorm(codes)  # base codes; as ext codes they are nrm + q*0
    c1, c2, c3 = c
    one_minus_c1 = (1 - c1).code
    M = ext.base.mul_table
    f = ext.vadd(ext.vscale(one_minus_c1, sq), M[c1.code, nrm])
    g = ext.vadd(ext.vscale(c2.code, sq), M[c3.code, nrm])
    return f, g


def isotropy_witness(A, budget=None, method="split"):
    """A nonzero (x, y) with q_c(x, y) = 0, or None when q_c is anisotropic.

    ``method="split"`` writes q_c(x, y) = f(x) - g(y) and matches value sets,
    which still covers every point of l^2. ``method="pointwise"`` evaluates
    q_c at every point with scalar arithmetic.
    """
    ext = A.ext
    if not ext.is_finite:
        raise FieldError("exhaustive scan needs a finite base")
    resolve(budget).check("scan", ext.q)
    if method == "pointwise":
        elems = ext.elements()
        for x in elems:
            for y in elems:
                if (x or y) and q_c(A, AlgElem(A, x, y)).is_zero():
                    return x, y
        return None
    f, g = _q_parts(ext, A.c)
    return _split_witness(ext, f, g)


def _split_witness(ext, f, g):
    zero = ext.zero
    hits = np.flatnonzero(f[1:] == 0)
    if hits.size:
        return ext.from_code(hits[0] + 1), zero
    hits = np.flatnonzero(g[1:] == 0)
    if hits.size:
        return zero, ext.from_code(hits[0] + 1)
    common, ix, iy = np.intersect1d(f[1:], g[1:], return_indices=True)
    if common.size:
        return ext.from_code(ix[0] + 1), ext.from_code(iy[0] + 1)
    return None


def is_admissible_bruteforce(A, budget=None, method="split"):
    return isotropy_witness(A, budget, method) is None


def admissible_codes_bruteforce(ext, budget=None):
    """All admissible triples over a finite base, as code tuples, by exhaustive scan.

    The q^3 triples share the per-c1 and per-(c2, c3) value sets, so each is
    computed once and reused.
    """
    k = ext.base
    resolve(budget).check("sweep", k.q)
    q = k.q
    Q = ext.order
    codes = ext.all_codes
    sq = ext.vmul(codes, codes)[1:]
    nrm = ext.vnorm(codes)[1:]
    M = k.mul_table
    f_sets = []
    for c1 in range(q):
        f = ext.vadd(ext.vscale((1 - k.from_code(c1)).code, sq), M[c1, nrm])
        mask = np.zeros(Q, dtype=bool)
        mask[f] = True
        f_sets.append(mask)
    out = []
    for c2, c3 in product(range(q), repeat=2):
        g = ext.vadd(ext.vscale(c2, sq), M[c3, nrm])
        if not np.all(g):  # g(y) = 0 for some y != 0
            continue
        for c1 in range(q):
            fm = f_sets[c1]
            if fm[0] or fm[g].any():
                continue
            out.append((c1, c2, c3))
    out.sort()
    return out


def is_admissible_closed_form_fq(A):
    """Membership in the explicit display of admissible triples over F_q."""
    k = A.base
    if not k.is_finite:
        raise FieldError("closed form applies to finite bases only")
    c1, c2, c3 = A.c
    if (1 - c1) * c2 == 0:
        return False
    if k.is_square(1 - 2 * c1):
        return False
    return c3 == -c1 * square_abs(k, c2) / square_abs(k, 1 - c1)


def is_admissible_positivity_cert(A):
    """'certified' when the real part of q_c is positive definite, else 'unknown'.

    Only for QQ(sqrt -1). The real part is
    x1^2 - (1 - 2 c1) x2^2 - (c2 + c3) y1^2 + (c2 - c3) y2^2.
    """
    if not isinstance(A.base, RationalField):
        raise FieldError("positivity certificate needs an ordered base")
    if A.ext.t != -1:
        raise FieldError(f"wrong extension: t = {A.ext.t}, need -1")
    c1, c2, c3 = A.c
    coeffs = (1, -(1 - 2 * c1), -(c2 + c3), c2 - c3)
    return "certified" if all(x > 0 for x in coeffs) else "unknown"


def rational_q_components(A):
    """Coefficients (a1, a2, b1, b2, s, r) with, for x = x1 + x2 w, y = y1 + y2 w,

    q_c = (x1^2 + a2 x2^2 + b1 y1^2 + b2 y2^2) + 2 (s x1 x2 - r y1 y2) w.
    """
    t = A.ext.t
    c1, c2, c3 = A.c
    return (1, (1 - 2 * c1) * t, -(c2 + c3), -(c2 - c3) * t, 1 - c1, c2)


def find_isotropy_witness_rational(A, height=12):
    """Bounded search for a nonzero rational zero of q_c over QQ(sqrt t).

    Returns (x, y) or None. A None answer proves nothing.
    """
    k = A.base
    if not isinstance(k, RationalField):
        raise FieldError("rational search needs QQ as base")
    _, a2, b1, b2, s, r = rational_q_components(A)
    diag = {"x1": Fraction(1), "x2": a2, "y1": b1, "y2": b2}

    def build(x1=0, x2=0, y1=0, y2=0):
        x, y = A.ext(x1, x2), A.ext(y1, y2)
        if (x or y) and q_c(A, AlgElem(A, x, y)).is_zero():
            return x, y
        return None

    # coordinate planes on which the imaginary part vanishes identically
    planes = [("x1", "y1"), ("x1", "y2"), ("x2", "y1"), ("x2", "y2")]
    if s == 0:
        planes.append(("x1", "x2"))
    if r == 0:
        planes.append(("y1", "y2"))
    for p1, p2 in planes:
        a, b = diag[p1], diag[p2]
        if a == 0:
            sol = {p1: 1}
        elif b == 0:
            sol = {p2: 1}
        else:
            root = k.sqrt(-b / a)
            if root is None or root == 0:
                continue
            sol = {p1: root, p2: 1}
        hit = build(**sol)
        if hit:
            return hit

    # one-parameter families: fix two coordinates, the imaginary part then
    # ties the other two linearly and the real part becomes a*z^2 + b = 0
    rng = range(-height, height + 1)
    for m, n in product(rng, repeat=2):
        if m == 0 and n == 0:
            continue
        m, n = Fraction(m), Fraction(n)
        # fix (x2, y2) = (m, n): s x1 m = r y1 n -> x1 = lam y1
        if s != 0 and m != 0:
            lam = r * n / (s * m)
            hit = _solve_family(k, build, lam**2 + b1, a2 * m * m + b2 * n * n,
                                lambda z: dict(x1=lam * z, x2=m, y1=z, y2=n))
            if hit:
                return hit
        # fix (x1, y1) = (m, n): s m x2 = r n y2 -> x2 = mu y2
        if s != 0 and m != 0:
            mu = r * n / (s * m)
            hit = _solve_family(k, build, a2 * mu**2 + b2, m * m + b1 * n * n,
                                lambda z: dict(x1=m, x2=mu * z, y1=n, y2=z))
            if hit:
                return hit
        # fix (x2, y1) = (m, n): s x1 m = r n y2 -> x1 = nu y2
        if s != 0 and m != 0:
            nu = r * n / (s * m)
            hit = _solve_family(k, build, nu**2 + b2, a2 * m * m + b1 * n * n,
                                lambda z: dict(x1=nu * z, x2=m, y1=n, y2=z))
            if hit:
                return hit
        # fix (x1, y2) = (m, n): s m x2 = r y1 n -> x2 = rho y1
        if s != 0 and m != 0:
            rho = r * n / (s * m)
            hit = _solve_family(k, build, a2 * rho**2 + b1, m * m + b2 * n * n,
                                lambda z: dict(x1=m, x2=rho * z, y1=z, y2=n))
            if hit:
                return hit
    return None


@dataclass(frozen=True)
class RealWitness:
    """A zero (x1 + x2 w, y1 + y2 w) of q_c with coordinates in QQ(sqrt r).

    Coordinates are Fractions when r = 1, otherwise elements of QQ(sqrt r).
    Any ordered field in which positives are squares contains such a point.
    """

    r: Fraction
    coords: tuple  # (x1, x2, y1, y2)

    def components(self, A):
        _, a2, b1, b2, s, rr = rational_q_components(A)
        x1, x2, y1, y2 = self.coords
        real = x1 * x1 + a2 * x2 * x2 + b1 * y1 * y1 + b2 * y2 * y2
        imag = 2 * (s * x1 * x2 - rr * y1 * y2)
        return real, imag

    def verify(self, A):
        real, imag = self.components(A)
        return any(x != 0 for x in self.coords) and real == 0 and imag == 0


def real_isotropy_witness(A):
    """Zero of q_c on a coordinate plane where the imaginary part vanishes.

    Needs only one square root of a positive rational, so the point exists in
    every square-ordered field. Returns a verified RealWitness or None.
    """
    if not isinstance(A.base, RationalField):
        raise FieldError("real witness search needs QQ as base")
    _, a2, b1, b2, s, r = rational_q_components(A)
    diag = [Fraction(1), a2, b1, b2]
    planes = [(0, 2), (0, 3), (1, 2), (1, 3)]
    if s == 0:
        planes.append((0, 1))
    if r == 0:
        planes.append((2, 3))
    for i, j in planes:
        a, b = diag[i], diag[j]
        coords = [Fraction(0)] * 4
        if a == 0:
            coords[i] = Fraction(1)
            rad = Fraction(1)
        elif b == 0:
            coords[j] = Fraction(1)
            rad = Fraction(1)
        else:
            ratio = -b / a
            if ratio <= 0:
                continue
            rad = Fraction(square_free_part(ratio))
            coords[i] = QQ.sqrt(ratio) if rad == 1 else QuadExt(QQ, rad)(0, QQ.sqrt(ratio / rad))
            coords[j] = Fraction(1)
        w = RealWitness(rad, tuple(coords))
        if w.verify(A):
            return w
    return None


def _solve_family(k, build, a, b, point):
    # a z^2 + b = 0
    if a == 0:
        return build(**point(Fraction(0))) if b == 0 else None
    z = k.sqrt(-b / a)
    if z is None:
        return None
    return build(**point(z))


# -- types, nucleus, grading, trace form -----------------------------------

def pattern_type(c):
    c1, c2, c3 = c
    if c1 == 1 and c2 == 0:
        return "S"
    if c1 == 0 and c3 == 0:
        return "K"
    return "N"


def triple_type(A, budget=None):
    """Type N, S or K of an admissible triple.

    Over a finite base admissibility is verified first. Over QQ only the
    coefficient pattern is read.
    """
    if A.base.is_finite and not is_admissible_bruteforce(A, budget):
        raise InadmissibleTriple(f"inadmissible triple {tuple(A.c)}")
    return pattern_type(A.c)


def right_nucleus(A):
    """k-basis of {z : (e_i e_j) z = e_i (e_j z) for all i, j}."""
    B = A.basis()
    rows = []
    for a, b in product(B, repeat=2):
        ab = A.mul(a, b)
        cols = [A.coords(A.mul(ab, e) - A.mul(a, A.mul(b, e))) for e in B]
        rows.extend(_columns(cols))
    return [A.from_coords(v) for v in linalg.nullspace(rows, A.base, 4)]


def subspace_coords(A, elems):
    return [A.coords(e) for e in elems]


def alpha(A, a):
    return AlgElem(A, a.x, -a.y)


def beta(A, a):
    return AlgElem(A, a.x.conj(), a.y.conj())


def map_matrix(A, f):
    return _columns([A.coords(f(e)) for e in A.basis()])


def eigenspace(A, M, eps):
    k = A.base
    shifted = [[M[i][j] - (eps if i == j else k.zero) for j in range(4)] for i in range(4)]
    return linalg.nullspace(shifted, k, 4)


def v_grading(A):
    """Joint eigenspaces A_ij = E_alpha((-1)^i) & E_beta((-1)^j), keyed by (i, j)."""
    k = A.base
    Ma = map_matrix(A, lambda a: alpha(A, a))
    Mb = map_matrix(A, lambda a: beta(A, a))
    out = {}
    for i, j in product((0, 1), repeat=2):
        Ea = eigenspace(A, Ma, k((-1) ** i))
        Eb = eigenspace(A, Mb, k((-1) ** j))
        out[(i, j)] = [A.from_coords(v) for v in linalg.intersect(Ea, Eb, k, 4)]
    return out


def in_span(A, elem, span):
    k = A.base
    vecs = subspace_coords(A, span)
    return linalg.rank(vecs + [A.coords(elem)], k) == linalg.rank(vecs, k)


def grading_law_holds(A, grading=None):
    grading = grading or v_grading(A)
    for (i, j), (m, n) in product(grading, repeat=2):
        target = grading[((i + m) % 2, (j + n) % 2)]
        for a in grading[(i, j)]:
            for b in grading[(m, n)]:
                if not in_span(A, A.mul(a, b), target):
                    return False
    return True


def trace_form(A, a, b):
    return linalg.trace(A.left_matrix(A.mul(a, b)))


def gram_matrix(A, basis=None):
    basis = basis or A.basis()
    return [[trace_form(A, a, b) for b in basis] for a in basis]


def orthogonal_complement(A, elems):
    """{z : trace_form(s, z) = 0 for every s in elems}."""
    rows = [[trace_form(A, s, e) for e in A.basis()] for s in elems]
    return [A.from_coords(v) for v in linalg.nullspace(rows, A.base, 4)]


def same_subspace(A, U, V):
    return linalg.same_span(subspace_coords(A, U), subspace_coords(A, V), A.base)


def is_associative(A):
    B = A.basis()
    for a, b, c in product(B, repeat=3):
        if not (A.mul(A.mul(a, b), c) - A.mul(a, A.mul(b, c))).is_zero():
            return False
    return True


def is_commutative(A):
    B = A.basis()
    return all(A.mul(a, b) == A.mul(b, a) for a, b in product(B, repeat=2))


def is_division_bruteforce(A):
    """Every nonzero a has injective L_a and R_a (finite base, exhaustive)."""
    n = A.order
    codes = np.arange(1, n, dtype=np.int64)
    for a in range(1, n):
        if not np.all(A.vmul(np.full_like(codes, a), codes)):
            return False
        if not np.all(A.vmul(codes, np.full_like(codes, a))):
            return False
    return True
