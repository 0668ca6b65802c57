"""Group action groupoids describing the algebras A(l, c).

The group G^nu = H x| Gal(l/k) (H = l* for nu in {0, 2, 3}, H = A* for nu = 1)
acts on triples by

    (a, sigma^i) . (c1, c2, c3) = (c1, c2 / a^2, c3 / (a conj a))

and a group element (a, sigma^i) carrying c to d is sent to phi_a (i = 0)
or psi_a (i = 1).
"""

from dataclasses import dataclass, field
from itertools import product

from networkx.utils import UnionFind

from .algebra import AlgebraSpec, Triple, pattern_type
from .budget import resolve
from .fields import FieldError
from .morphisms import MorphismWitness, _compose, brute_force_morphisms, ell_star_set


class SemidirectGroup:
    def __init__(self, ext, nu):
        if nu not in (0, 1, 2, 3):
            raise ValueError(f"nu must be 0..3, got {nu}")
        self.ext = ext
        self.nu = nu

    def in_H(self, a):
        if a.is_zero():
            return False
        if self.nu == 1:
            return a.u == 0 or a.v == 0
        return True

    @property
    def identity(self):
        return (self.ext.one, 0)

    def mul(self, g, h):
        (a, i), (b, j) = g, h
        return (a * (b.conj() if i else b), (i + j) % 2)

    def inverse(self, g):
        a, i = g
        inv = a.inverse()
        return (inv.conj() if i else inv, i)

    def H_elements(self):
        return [a for a in self.ext.units() if self.in_H(a)]

    def elements(self):
        return [(a, i) for i in (0, 1) for a in self.H_elements()]

    def order(self):
        return 2 * len(self.H_elements())

    def generators(self):
        """A generating set: (h, 0) for generators h of H, plus (1, sigma)."""
        ext = self.ext
        sigma = (ext.one, 1)
        if self.nu == 1:
            k_gen = ext(ext.base.generator, 0)
            return [(k_gen, 0), (ext.w, 0), sigma]
        n = ext.order - 1
        for a in ext.units():
            if _mult_order(a, n) == n:
                return [(a, 0), sigma]
        raise FieldError("l* has no generator")  # unreachable for finite l

    def closure(self, gens=None):
        gens = gens or self.generators()
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for g in frontier:
                for s in gens:
                    h = self.mul(g, s)
                    if h not in seen:
                        seen.add(h)
                        nxt.append(h)
            frontier = nxt
        return seen


def _mult_order(a, n):
    one = a.ext.one
    for d in sorted(_divisors(n)):
        if a**d == one:
            return d
    return None


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def act(g, c):
    """Image of the triple c under g = (a, i)."""
    a, _ = g
    if a.is_zero():
        raise ValueError("a must be nonzero")
    c1, c2, c3 = c
    ext = a.ext
    new2 = ext(c2) / (a * a)
    if new2.v != 0:
        raise ValueError(f"c2 / a^2 = {new2!r} leaves the base field")
    return Triple(c1, new2.u, c3 / a.norm())


def objects(ext, nu, admissible):
    """The object set C^nu inside the given admissible triples."""
    if nu == 0:
        return [c for c in admissible if c[1] == 0]
    if nu == 1:
        return [c for c in admissible if c[1] != 0]
    if nu == 2:
        return [c for c in admissible if c[1] == 0 and pattern_type(c) == "N"]
    return [c for c in admissible if pattern_type(c) == "S"]


def orbit_partition(ext, triples, group=None):
    """Orbits as sorted lists, ordered by their least member."""
    triples = [Triple(*c) for c in triples]
    if not triples:
        return []
    present = set(triples)
    uf = UnionFind(triples)
    groups = [group] if group else [SemidirectGroup(ext, 1), SemidirectGroup(ext, 0)]
    for c in triples:
        G = groups[0] if group else (groups[0] if c[1] != 0 else groups[1])
        for g in G.generators():
            d = act(g, c)
            if d not in present:
                raise FieldError(f"object set is not closed under the action: {tuple(d)}")
            uf.union(c, d)
    classes = [sorted(s, key=Triple.sort_key) for s in uf.to_sets()]
    return sorted(classes, key=lambda s: s[0].sort_key())


def stabilizer(G, c):
    return [g for g in G.elements() if act(g, c) == Triple(*c)]


def hom_set(G, c, d):
    d = Triple(*d)
    return [g for g in G.elements() if act(g, c) == d]


def functor_image(g, c, d):
    """phi_a for g = (a, 0), psi_a for g = (a, 1)."""
    if act(g, c) != Triple(*d):
        raise ValueError("g does not carry c to d")
    a, i = g
    ext = a.ext
    return MorphismWitness(AlgebraSpec(ext, c), AlgebraSpec(ext, d), a, "psi" if i else "phi")


@dataclass
class GroupoidDescription:
    ext: object
    nu: int
    objects: list
    group: SemidirectGroup
    orbits: list = field(default_factory=list)
    flags: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_dict(self):
        return {
            "nu": self.nu,
            "extension_t": _lit(self.ext.t),
            "objects": [[_lit(x) for x in c] for c in self.objects],
            "orbits": [[[_lit(x) for x in c] for c in orb] for orb in self.orbits],
            "representatives": [[_lit(x) for x in orb[0]] for orb in self.orbits],
            "flags": dict(self.flags),
            "notes": list(self.notes),
        }

    def to_dot(self):
        lines = [f"graph orbits_nu{self.nu} {{"]
        name = {c: "c_" + "_".join(str(_lit(x)) for x in c) for c in self.objects}
        for c in self.objects:
            lines.append(f'  {name[c]} [label="{tuple(_lit(x) for x in c)}"];')
        edges = set()
        for c in self.objects:
            for g in self.group.generators():
                d = act(g, c)
                if d != c and d in name:
                    edges.add(tuple(sorted((name[c], name[d]))))
        for a, b in sorted(edges):
            lines.append(f"  {a} -- {b};")
        lines.append("}")
        return "\n".join(lines)


def _lit(x):
    return int(x) if hasattr(x, "code") else str(x)


def describe(ext, nu, admissible):
    objs = sorted((Triple(*c) for c in objects(ext, nu, admissible)), key=Triple.sort_key)
    G = SemidirectGroup(ext, nu)
    return GroupoidDescription(ext, nu, objs, G, orbit_partition(ext, objs, G))


def check_description(desc, budget=None):
    """Dense / faithful / quasi-full / full flags, decided by enumeration.

    Density is checked against the algebras A(l, c) built from the object set,
    not against every algebra with the defining property.
    """
    budget = resolve(budget)
    G = desc.group
    objs = desc.objects
    flags = {"dense": True, "faithful": True, "quasi_full": True, "full": True}
    desc.notes = ["density checked relative to the constructed family A(l, c) only"]
    if not objs:
        desc.flags = flags
        return flags
    elements = G.elements()
    for c in objs:
        A = AlgebraSpec(desc.ext, c)
        if A.c != c:
            flags["dense"] = False
    for c, d in product(objs, repeat=2):
        homs = [g for g in elements if act(g, c) == d]
        mats = [functor_image(g, c, d).matrix() for g in homs]
        if len(set(mats)) != len(mats):
            flags["faithful"] = False
        A, B = AlgebraSpec(desc.ext, c), AlgebraSpec(desc.ext, d)
        brute = {m.matrix for m in brute_force_morphisms(A, B, budget)}
        if brute and not homs:
            flags["quasi_full"] = False
        if set(mats) != brute:
            flags["full"] = False
    desc.flags = flags
    return flags


def functor_laws_hold(desc, pairs=None):
    """F(e) = id and F(gh) = F(g) F(h) on the given (g, h) pairs at every object."""
    G = desc.group
    ext = desc.ext
    for c in desc.objects:
        e = functor_image(G.identity, c, c)
        if e.matrix() != _identity_matrix(ext):
            return False
    pairs = pairs if pairs is not None else list(product(G.generators() + [G.identity], repeat=2))
    for c in desc.objects:
        for g, h in pairs:
            hc = act(h, c)
            ghc = act(g, hc)
            lhs = functor_image(G.mul(g, h), c, ghc).matrix()
            rhs = _compose(functor_image(g, hc, ghc).matrix(), functor_image(h, c, hc).matrix())
            if lhs != rhs:
                return False
    return True


def _identity_matrix(ext):
    k = ext.base
    return tuple(tuple(k.one if i == j else k.zero for j in range(4)) for i in range(4))


def aut_structure_report(A, budget=None):
    """Block N0 / N1 / S / K of A together with the shape of Aut(A)."""
    budget = resolve(budget)
    ext = A.ext
    kind = pattern_type(A.c)
    c2 = A.c[1]
    if kind == "S":
        return {"block": "S", "aut": "A*/k*", "order": "infinite" if not ext.is_finite else None}
    if kind == "K":
        return {"block": "K", "aut": "KLEIN_FOUR", "order": 4}
    if c2 == 0:
        s_order = len(ext.unit_circle()) if ext.is_finite else "infinite"
        order = 2 * s_order if ext.is_finite else "infinite"
        return {"block": "N0", "aut": "S(l/k) x| C2", "unit_circle_order": s_order, "order": order}
    if ext.is_finite and ext.q <= budget.morphism_q:
        order = len(brute_force_morphisms(A, A, budget))
        source = "brute force"
    elif ext.is_finite:
        order = 2 * len(ell_star_set(ext, A.c, A.c))
        source = "l*(c, c) scan"
    else:
        order, source = 4, "c2 != 0 forces l*(c, c) = {1, -1}"
    return {"block": "N1", "aut": "KLEIN_FOUR", "order": order, "source": source}
