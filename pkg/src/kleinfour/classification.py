"""Classification of the algebras A(l, c) over finite fields and the
predicate bundle for square-ordered fields.

Over F_q (q odd) every admissible triple is l*-equivalent to exactly one
member of

    T = {(c1, 1, -c1 / |1 - c1|) : c1 != 1, 1 - 2 c1 not a square}

where |x| = x for squares x and -x otherwise.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from .algebra import (
    AlgebraSpec,
    Triple,
    admissible_codes_bruteforce,
    is_admissible_closed_form_fq,
    is_admissible_positivity_cert,
    is_associative,
    pattern_type,
    real_isotropy_witness,
    square_abs,
)
from .budget import resolve
from .fields import FieldError, RationalField
from .finite_field import smallest_nonsquare
from .morphisms import brute_force_morphisms, ell_star_set
from .quad_ext import QuadExt, gaussian_rationals


def standard_extension(F, t=None):
    """F(sqrt t) with t the smallest non-square unless given."""
    return QuadExt(F, smallest_nonsquare(F) if t is None else t)


# -- pairs (a, b) -------------------------------------------------------------

def h_ab(ext, a, b, x, y):
    return x * x - y * y + x * x.conj() * a + y * y.conj() * b


def b_set_membership(F, a, b):
    """(a, b) is admissible iff a = b and 1 - a^2 is not a square."""
    a, b = F(a), F(b)
    return a == b and not F.is_square(1 - a * a)


def b_set_bruteforce(ext, a, b, budget=None):
    """Exhaustive anisotropy test of h_ab(x, y) = x^2 - y^2 + a x conj x + b y conj y."""
    k = ext.base
    resolve(budget).check("scan", k.q)
    a, b = k(a), k(b)
    codes = ext.all_codes[1:]
    sq = ext.vmul(codes, codes)
    nrm = ext.vnorm(codes)
    M = k.mul_table
    f = ext.vadd(sq, M[a.code, nrm])
    g = ext.vsub(sq, M[b.code, nrm])  # h = f(x) - g(y)
    if not (np.all(f) and np.all(g)):
        return False
    return np.intersect1d(f, g).size == 0


def from_c_to_b(F, c):
    """(c1 / |1 - c1|, -c3 / |c2|), or None when (1 - c1) c2 = 0."""
    c1, c2, c3 = (F(x) for x in c)
    if (1 - c1) * c2 == 0:
        return None
    return c1 / square_abs(F, 1 - c1), -c3 / square_abs(F, c2)


def is_admissible_via_b(F, c):
    ab = from_c_to_b(F, c)
    return ab is not None and b_set_membership(F, *ab)


def m1_set(F):
    return [m for m in F.elements() if F.is_square(m * m - 1)]


def m2_set(F):
    # complement of the nonzero squares: zero counts
    return [m for m in F.elements() if m * m - 1 == 0 or not F.is_square(m * m - 1)]


def m_pair_solution(F, a, b):
    """Some (m1, m2) in M1 x M2 with (a + b) m1 = 2 + (a - b) m2, or None."""
    a, b = F(a), F(b)
    m1s = set(m1_set(F))
    for m2 in m2_set(F):
        rhs = 2 + (a - b) * m2
        if a + b == 0:
            if rhs == 0:
                return next(iter(m1s)), m2
            continue
        m1 = rhs / (a + b)
        if m1 in m1s:
            return m1, m2
    return None


def b_set_via_m_sets(F, a, b):
    """Membership in B decided case by case: b = -a, b = a, and b^2 != a^2."""
    a, b = F(a), F(b)
    if b == -a:
        return False
    if b == a:
        return not F.is_square(1 - a * a)
    return m_pair_solution(F, a, b) is None


# -- transversal and full pipeline -----------------------------------------

def fq_transversal(F):
    out = []
    for c1 in F.elements():
        if c1 == 1 or F.is_square(1 - 2 * c1):
            continue
        out.append(Triple(c1, F.one, -c1 / square_abs(F, 1 - c1)))
    return out


def transversal_size_formula(F):
    q = F.q
    return (q - 1) // 2 if F.is_square(-1) else (q - 3) // 2


def orbit_classes(ext, triples):
    """Partition ``triples`` (Triple tuples) into l*-equivalence classes by union-find."""
    from .groupoid import orbit_partition

    return orbit_partition(ext, triples)


@dataclass
class ClassificationReport:
    q: int
    t: object
    admissible_count: int
    transversal: list
    isoclass_count: int
    cross_checks: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "q": self.q,
            "t": int(self.t),
            "admissible_count": self.admissible_count,
            "transversal": [[int(x) for x in c] for c in self.transversal],
            "isoclass_count": self.isoclass_count,
            "cross_checks": dict(self.cross_checks),
        }


def fq_classify(F, t=None, budget=None, aut_samples=4):
    """Transversal of the admissible triples over F plus oracle cross-checks."""
    budget = resolve(budget)
    ext = standard_extension(F, t)
    T = fq_transversal(F)
    checks = {}

    sweep = F.q <= budget.sweep_q
    if sweep:
        brute = [Triple(*(F.from_code(x) for x in c)) for c in admissible_codes_bruteforce(ext, budget)]
    else:
        brute = None
    closed = [
        Triple(*c)
        for c in product(F.elements(), repeat=3)
        if is_admissible_closed_form_fq(AlgebraSpec(ext, Triple(*c)))
    ]
    via_b = [Triple(*c) for c in product(F.elements(), repeat=3) if is_admissible_via_b(F, c)]
    admissible = brute if brute is not None else closed
    if brute is not None:
        checks["bruteforce_eq_closed_form"] = set(brute) == set(closed)
        checks["bruteforce_eq_via_b"] = set(brute) == set(via_b)
    else:
        checks["closed_form_eq_via_b"] = set(closed) == set(via_b)

    classes = orbit_classes(ext, admissible)
    checks["transversal_sound"] = all(c in set(admissible) for c in T)
    hits = [sum(1 for c in T if c in cls) for cls in classes]
    checks["transversal_complete_and_irredundant"] = all(h == 1 for h in hits)
    checks["transversal_size_formula"] = len(T) == transversal_size_formula(F)
    checks["type_N_only"] = all(pattern_type(c) == "N" for c in admissible)
    checks["nonassociative"] = all(not is_associative(AlgebraSpec(ext, c)) for c in T)
    checks["norm_surjective"] = ext.norm_surjective()
    checks["aut_orders_4"] = _aut_orders(ext, admissible, budget, aut_samples)
    return ClassificationReport(F.q, ext.t, len(admissible), T, len(classes), checks)


def _aut_orders(ext, admissible, budget, samples):
    if not admissible:
        return True
    if ext.q <= min(7, budget.morphism_q):
        chosen = admissible
    else:
        step = max(1, len(admissible) // samples)
        chosen = admissible[::step][:samples]
    for c in chosen:
        A = AlgebraSpec(ext, c)
        if ext.q <= budget.morphism_q:
            n = len(brute_force_morphisms(A, A, budget))
        else:
            n = 2 * len(ell_star_set(ext, c, c))
        if n != 4:
            return False
    return True


# -- square-ordered fields ----------------------------------------------------

HALF = Fraction(1, 2)


class OrderedSetPredicates:
    """Membership tests for the explicit subsets of QQ^3 describing admissible
    triples over a square-ordered field (with l = k(sqrt -1)).
    """

    @staticmethod
    def in_C(c):
        c1, c2, c3 = map(Fraction, c)
        return c1 > HALF and c3 < c2 < -c3

    @staticmethod
    def in_CN0(c):
        c1, c2, c3 = map(Fraction, c)
        return c1 > HALF and c3 < 0 and c1 != 1 and c2 == 0

    @classmethod
    def in_CN1(cls, c):
        return cls.in_C(c) and Fraction(c[1]) != 0

    @staticmethod
    def in_TN0(c):
        c1, c2, c3 = map(Fraction, c)
        return c2 == 0 and c3 == -1 and c1 > HALF and c1 != 1

    @staticmethod
    def in_TN1(c):
        c1, c2, c3 = map(Fraction, c)
        return c2 == 1 and c1 > HALF and c3 < -1

    # the single type-S class
    type_S_representative = (Fraction(1), Fraction(0), Fraction(-1))


def ordered_predicates():
    return OrderedSetPredicates()


def square_ordered_report():
    return {
        "extension": "k(sqrt -1)",
        "admissible": "c1 > 1/2 and c3 < c2 < -c3",
        "transversal_N0": "(c1, 0, -1) with c1 > 1/2, c1 != 1",
        "transversal_N1": "(c1, 1, c3) with c1 > 1/2, c3 < -1",
        "type_S": [str(x) for x in OrderedSetPredicates.type_S_representative],
    }


def ordered_grid():
    """c1 in {1/2 + k/8 : |k| <= 8}, c2 and c3 in {-3, -11/4, ..., 3}."""
    c1s = [HALF + Fraction(k, 8) for k in range(-8, 9)]
    cs = [Fraction(k, 4) for k in range(-12, 13)]
    return [(a, b, c) for a in c1s for b in cs for c in cs]


def ordered_grid_check(grid=None):
    """Consistency of the predicate bundle over QQ(sqrt -1) on a rational grid.

    Points in C must carry the positivity certificate; points with c1 <= 1/2
    or c2 + c3 >= 0 must be refuted by an exact isotropy witness.
    """
    ext = gaussian_rationals()
    P = OrderedSetPredicates
    counts = {"points": 0, "in_C": 0, "certified": 0, "refutable": 0, "refuted": 0,
              "TN0": 0, "TN1": 0}
    failures = {"TN0_implies_CN0": [], "TN1_implies_CN1": [], "in_C_certified": [], "outside_C_refuted": []}
    for c in grid if grid is not None else ordered_grid():
        counts["points"] += 1
        if P.in_TN0(c):
            counts["TN0"] += 1
            if not P.in_CN0(c):
                failures["TN0_implies_CN0"].append(c)
        if P.in_TN1(c):
            counts["TN1"] += 1
            if not P.in_CN1(c):
                failures["TN1_implies_CN1"].append(c)
        A = AlgebraSpec(ext, c)
        if P.in_C(c):
            counts["in_C"] += 1
            if is_admissible_positivity_cert(A) == "certified":
                counts["certified"] += 1
            else:
                failures["in_C_certified"].append(c)
        elif c[0] <= HALF or c[1] + c[2] >= 0:
            counts["refutable"] += 1
            if real_isotropy_witness(A) is not None:
                counts["refuted"] += 1
            else:
                failures["outside_C_refuted"].append(c)
    return counts, failures


# -- dichotomy ----------------------------------------------------------------

def dichotomy(F):
    """'second_type' for finite fields (norm onto k* verified), 'not_unique_class' for QQ."""
    if isinstance(F, RationalField):
        # 2 and 3 lie in different square classes, so QQ has many quadratic extensions
        if F.is_square(Fraction(2, 3)):
            raise FieldError("unexpected square class collapse")
        return "not_unique_class"
    if not F.is_finite:
        raise FieldError(f"no dichotomy rule for {F!r}")
    ext = standard_extension(F)
    if not ext.norm_surjective():
        raise FieldError(f"norm of {ext!r} is not surjective")
    return "second_type"
