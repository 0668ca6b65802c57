"""Morphisms between algebras A(l, c) over a common extension l.

For a in l* the maps

    phi_a(x, y) = (x, a y),        psi_a(x, y) = (conj x, a conj y)

are morphisms A(l, c) -> A(l, d) whenever (c1, c2 / a^2, c3 / (a conj a)) = d.
The set of such a is ``ell_star_set(l, c, d)``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from . import linalg
from .algebra import AlgebraSpec, AlgElem, pattern_type
from .budget import resolve
from .fields import FieldError, RationalField


class NotAWitness(ValueError):
    pass


class Undecided(RuntimeError):
    """The rational decision procedure could neither find nor exclude a witness."""


def in_ell_star(ext, c, d, a):
    if a.is_zero():
        return False
    c1, c2, c3 = c
    d1, d2, d3 = d
    return c1 == d1 and ext(c2) == a * a * d2 and c3 == a.norm() * d3


@dataclass(frozen=True)
class MorphismWitness:
    source: AlgebraSpec
    target: AlgebraSpec
    a: object
    kind: str  # "phi" or "psi"

    def __post_init__(self):
        if self.kind not in ("phi", "psi"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.source.ext != self.target.ext:
            raise NotAWitness("source and target use different extensions")
        if not in_ell_star(self.source.ext, self.source.c, self.target.c, self.a):
            raise NotAWitness(f"{self.a!r} is not in l*({tuple(self.source.c)}, {tuple(self.target.c)})")

    def apply(self, elem):
        B = self.target
        if self.kind == "phi":
            return AlgElem(B, elem.x, self.a * elem.y)
        return AlgElem(B, elem.x.conj(), self.a * elem.y.conj())

    __call__ = apply

    def matrix(self):
        A = self.source
        return _freeze(linalg_columns([self.target.coords(self.apply(e)) for e in A.basis()]))

    def __repr__(self):
        return f"{self.kind}_{self.a!r}"


def linalg_columns(cols):
    return [list(r) for r in zip(*cols)]


def _freeze(M):
    return tuple(tuple(r) for r in M)


def phi(source, target, a):
    return MorphismWitness(source, target, source.ext(a), "phi")


def psi(source, target, a):
    return MorphismWitness(source, target, source.ext(a), "psi")


def apply(w, elem):
    return w.apply(elem)


def is_morphism_check(w):
    """Unital, bijective and multiplicative on all 16 basis products."""
    A, B = w.source, w.target
    if w.apply(A.one) != B.one:
        return False
    if linalg.rank([list(r) for r in w.matrix()], A.base) != 4:
        return False
    basis = A.basis()
    return all(w.apply(A.mul(a, b)) == B.mul(w.apply(a), w.apply(b)) for a, b in product(basis, repeat=2))


# -- l*(c, d) ---------------------------------------------------------------

def ell_star_set(ext, c, d):
    """All a in l* with (c1, c2/a^2, c3/(a conj a)) = d, finite base only."""
    if not ext.is_finite:
        raise FieldError("use ell_star_decide over an infinite base")
    c1, c2, c3 = (ext.base(x) for x in c)
    d1, d2, d3 = (ext.base(x) for x in d)
    if c1 != d1:
        return []
    codes = ext.all_codes[1:]
    sq = ext.vmul(codes, codes)
    nrm = ext.vnorm(codes)
    M = ext.base.mul_table
    ok = (ext.vscale(d2.code, sq) == c2.code) & (M[d3.code, nrm] == c3.code)
    return [ext.from_code(a) for a in codes[ok]]


@dataclass
class StarDecision:
    status: str  # "nonempty", "empty" or "undecided"
    witnesses: list = field(default_factory=list)
    reason: str = ""

    def __bool__(self):
        if self.status == "undecided":
            raise Undecided(self.reason)
        return self.status == "nonempty"


def _norm_witness(ext, r, height):
    """Some a in l with a conj a = r, found by a bounded search, or None."""
    k = ext.base
    root = k.sqrt(r)
    if root is not None:
        return ext(root, 0)
    t = ext.t
    for n in range(1, height + 1):
        for m in range(0, height * n + 1):
            for l in range(1, height * n + 1):
                if Fraction(m * m) - t * l * l == r * n * n:
                    return ext(Fraction(m, n), Fraction(l, n))
    return None


def ell_star_decide(ext, c, d, height=24):
    """Three-way answer for l*(c, d) that also works over QQ."""
    if ext.is_finite:
        ws = ell_star_set(ext, c, d)
        return StarDecision("nonempty" if ws else "empty", ws, "exhaustive scan")
    k = ext.base
    c1, c2, c3 = (k(x) for x in c)
    d1, d2, d3 = (k(x) for x in d)
    if c1 != d1:
        return StarDecision("empty", reason="c1 != d1")
    if (c2 == 0) != (d2 == 0) or (c3 == 0) != (d3 == 0):
        return StarDecision("empty", reason="zero pattern differs")
    if c2 != 0:
        r = c2 / d2
        # a^2 in k* forces a onto one of the two axes
        cands = []
        s = k.sqrt(r)
        if s is not None:
            cands += [ext(s, 0), ext(-s, 0)]
        s = k.sqrt(r / ext.t)
        if s is not None:
            cands += [ext(0, s), ext(0, -s)]
        ws = [a for a in cands if in_ell_star(ext, (c1, c2, c3), (d1, d2, d3), a)]
        if ws:
            return StarDecision("nonempty", ws, "square root of c2/d2")
        return StarDecision("empty", reason="no square root of c2/d2 meets the norm condition")
    if c3 == 0:
        return StarDecision("nonempty", [ext.one], "c2 = c3 = 0")
    r = c3 / d3
    if isinstance(k, RationalField) and ext.t < 0 and r < 0:
        return StarDecision("empty", reason="norms from QQ(sqrt t), t < 0, are non-negative")
    a = _norm_witness(ext, r, height)
    if a is not None:
        return StarDecision("nonempty", [a, a.conj()], "norm equation solved")
    return StarDecision("undecided", reason=f"no norm witness for {r} up to height {height}")


def is_isomorphic(ext, c, d):
    """A(l, c) and A(l, d) are isomorphic iff l*(c, d) is nonempty."""
    return bool(ell_star_decide(ext, c, d))


def constructed_morphisms(A, B):
    out = []
    for a in ell_star_set(A.ext, A.c, B.c):
        out.append(MorphismWitness(A, B, a, "phi"))
        out.append(MorphismWitness(A, B, a, "psi"))
    return out


# -- brute force --------------------------------------------------------------

@dataclass(frozen=True)
class LinearMap:
    source: AlgebraSpec
    target: AlgebraSpec
    matrix: tuple

    def apply(self, elem):
        v = linalg.matvec([list(r) for r in self.matrix], self.source.coords(elem))
        return self.target.from_coords(v)

    __call__ = apply


def brute_force_morphisms(A, B, budget=None):
    """Every algebra morphism A -> B, found by scanning generator images.

    The candidate images of u = (w, 0) and j = (0, 1) range over B; images
    failing P^2 = image(u^2) or Q^2 = image(j^2) are discarded before the full
    test of the 16 basis products.
    """
    if A.ext != B.ext:
        raise FieldError("algebras over different extensions")
    if not A.ext.is_finite:
        raise FieldError("brute force needs a finite base")
    k = A.base
    resolve(budget).check("morphism", k.q)

    u, j = A.u, A.j
    gens = [A.one, u, j, A.mul(j, u)]
    if linalg.rank([A.coords(g) for g in gens], k) != 4:
        raise FieldError("{1, u, j, ju} is not a basis")
    if [A.coords(g) for g in gens] != [A.coords(e) for e in A.basis()]:
        raise FieldError("generator basis differs from the coordinate basis")

    u2, j2 = A.mul(u, u), A.mul(j, j)
    for sq in (u2, j2):
        if not (sq.y.is_zero() and sq.x.v == 0):
            raise FieldError("generator square is not a scalar")
    codes = np.arange(B.order, dtype=np.int64)
    squares = B.vmul(codes, codes)
    P_cands = codes[squares == B(u2.x.u).code]
    Q_cands = codes[squares == B(j2.x.u).code]

    basis = A.basis()
    out = []
    for P, Q in product(P_cands, Q_cands):
        Pe, Qe = B.from_code(P), B.from_code(Q)
        images = [B.one, Pe, Qe, B.mul(Qe, Pe)]
        cols = [B.coords(img) for img in images]
        M = linalg_columns(cols)
        if linalg.rank(M, k) != 4:
            continue
        f = LinearMap(A, B, _freeze(M))
        if all(f(A.mul(a, b)) == B.mul(f(a), f(b)) for a, b in product(basis, repeat=2)):
            out.append(f)
    return out


# -- automorphism groups ----------------------------------------------------

@dataclass
class AutGroup:
    tag: str  # KLEIN_FOUR, S_SEMIDIRECT_C2 or UNITS_MOD_CENTER
    order: object  # int, or "infinite"
    elements: list = field(default_factory=list)
    table: dict = field(default_factory=dict)
    description: str = ""


def _compose(M, N):
    return _freeze(linalg.matmul([list(r) for r in M], [list(r) for r in N]))


def klein_relations(mats, identity):
    """Four distinct involutions closed under composition, pairwise commuting."""
    if len(set(mats)) != 4 or identity not in mats:
        return False
    S = set(mats)
    for M in mats:
        if _compose(M, M) != identity:
            return False
        for N in mats:
            MN = _compose(M, N)
            if MN not in S or MN != _compose(N, M):
                return False
    return True


def aut_group(A):
    k = A.base
    c1, c2, c3 = A.c
    kind = pattern_type(A.c)
    if kind == "S":
        return AutGroup("UNITS_MOD_CENTER", "infinite" if not k.is_finite else None,
                        description="Aut(A) ~ A*/k* (inner automorphisms)")
    if kind == "N" and c2 == 0:
        order = 2 * len(A.ext.unit_circle()) if k.is_finite else "infinite"
        return AutGroup("S_SEMIDIRECT_C2", order, description="Aut(A) ~ S(l/k) x| C2")
    if kind == "K":
        return AutGroup("KLEIN_FOUR", 4, description="Aut(A) = Gal(A/k)")

    names = {"phi_1": phi(A, A, 1), "phi_-1": phi(A, A, -1), "psi_1": psi(A, A, 1), "psi_-1": psi(A, A, -1)}
    mats = {n: w.matrix() for n, w in names.items()}
    by_mat = {m: n for n, m in mats.items()}
    identity = _freeze(linalg.identity(4, k))
    table = {}
    for a, b in product(mats, repeat=2):
        table[(a, b)] = by_mat.get(_compose(mats[a], mats[b]), "?")
    if not klein_relations(list(mats.values()), identity):
        raise FieldError("constructed automorphisms do not satisfy the Klein four relations")
    return AutGroup("KLEIN_FOUR", 4, list(names), table, "Aut(A) = <phi_-1, psi_1>")
