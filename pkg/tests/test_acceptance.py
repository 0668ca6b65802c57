"""Acceptance criteria 1-9. All comparisons are exact.

Run under pytest (a summary line per criterion is printed at the end) or
directly: ``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from fractions import Fraction
from itertools import product

import pytest

from kleinfour import fq, standard_extension
from kleinfour.algebra import (
    AlgebraSpec,
    Triple,
    admissible_codes_bruteforce,
    is_admissible_closed_form_fq,
    q_c,
    right_nucleus,
    triple_type,
)
from kleinfour.budget import Budget
from kleinfour.classification import (
    is_admissible_via_b,
    m1_set,
    m2_set,
    ordered_grid_check,
)
from kleinfour.groupoid import SemidirectGroup, check_description, describe, hom_set, orbit_partition, stabilizer
from kleinfour.morphisms import brute_force_morphisms, ell_star_set, klein_relations
from kleinfour.quad_ext import gaussian_rationals
from kleinfour.suites import structure_checks

RESULTS = {}
WIDE = Budget().uniform(13)


def admissible(q, budget=None):
    F = fq(q)
    L = standard_extension(F)
    return L, [Triple(*(F.from_code(x) for x in c)) for c in admissible_codes_bruteforce(L, budget)]


def criterion_1():
    """Brute force, (a, b) reduction and closed form agree on all q^3 triples."""
    start = time.perf_counter()
    sizes = {}
    for q in (3, 5, 7, 9):
        F = fq(q)
        L = standard_extension(F)
        brute = set(admissible_codes_bruteforce(L))
        for codes in product(range(q), repeat=3):
            c = Triple(*(F.from_code(x) for x in codes))
            closed = is_admissible_closed_form_fq(AlgebraSpec(L, c))
            if not (closed == is_admissible_via_b(F, c) == (codes in brute)):
                return False, f"deciders disagree at q={q}, c={codes}"
        sizes[q] = len(brute)
    elapsed = time.perf_counter() - start
    return elapsed <= 60, f"admissible counts {sizes}, {elapsed:.1f}s (limit 60s)"


ISOCLASS_COUNTS = {3: 0, 5: 2, 7: 2, 9: 4, 11: 5, 13: 6}


def criterion_2():
    """Isoclass counts from orbit enumeration against the frozen constants."""
    observed, mismatches = {}, []
    for q, expected in ISOCLASS_COUNTS.items():
        L, adm = admissible(q, WIDE)
        n = len(orbit_partition(L, adm))
        formula = (q - 1) // 2 if L.base.is_square(-1) else (q - 3) // 2
        observed[q] = n
        if n != formula:
            return False, f"orbit count {n} != |T| formula {formula} at q={q}"
        if n != expected:
            mismatches.append(f"q={q}: orbits={n}, expected {expected}")
    return not mismatches, f"orbit counts {observed}" + (f"; mismatches: {mismatches}" if mismatches else "")


def criterion_3():
    """Morphisms exist iff l*(c, d) is nonempty, all admissible pairs, q = 5, 7."""
    detail = []
    for q in (5, 7):
        start = time.perf_counter()
        L, adm = admissible(q)
        for c, d in product(adm, repeat=2):
            brute = brute_force_morphisms(AlgebraSpec(L, c), AlgebraSpec(L, d))
            if bool(brute) != bool(ell_star_set(L, c, d)):
                return False, f"q={q}: disagreement at {c}, {d}"
        elapsed = time.perf_counter() - start
        detail.append(f"q={q}: {len(adm) ** 2} pairs in {elapsed:.1f}s")
        if elapsed > 120:
            return False, f"q={q} took {elapsed:.1f}s (limit 120s)"
    return True, "; ".join(detail)


def criterion_4():
    """|Aut| = 4 with Klein-four relations; stabilizers of order 4."""
    total = 0
    for q in (5, 7):
        L, adm = admissible(q)
        G = SemidirectGroup(L, 1)
        identity = tuple(tuple(L.base.one if i == j else L.base.zero for j in range(4)) for i in range(4))
        for c in adm:
            A = AlgebraSpec(L, c)
            mats = [f.matrix for f in brute_force_morphisms(A, A)]
            if len(mats) != 4 or not klein_relations(mats, identity):
                return False, f"q={q}, c={c}: {len(mats)} automorphisms"
            if len(stabilizer(G, c)) != 4:
                return False, f"q={q}, c={c}: stabilizer order {len(stabilizer(G, c))}"
            total += 1
    return True, f"{total} algebras checked"


def criterion_5():
    """Grading, trace form, orthogonal supplement, nucleus, non-(assoc/comm)."""
    total = 0
    for q in (5, 7):
        L, adm = admissible(q)
        for c in adm:
            bad = [k for k, ok in structure_checks(AlgebraSpec(L, c)).items() if not ok]
            if bad:
                return False, f"q={q}, c={c}: {bad}"
            total += 1
    return True, f"{total} algebras, all structure checks hold"


def criterion_6():
    """Rational quaternions A(Q(i), (1, 0, -1))."""
    Q = gaussian_rationals()
    H = AlgebraSpec(Q, (1, 0, -1))
    i, j = H.u, H.j
    one = H.one
    rel = [
        ("i^2 = -1", i * i == -one),
        ("j^2 = -1", j * j == -one),
        ("ij = -ji", i * j == -(j * i)),
        ("(ij)^2 = -1", (i * j) * (i * j) == -one),
    ]
    rng = random.Random(20240601)

    def rat():
        return Fraction(rng.randint(-20, 20), rng.randint(1, 12))

    def elem():
        return H(Q(rat(), rat()), Q(rat(), rat()))

    bad = 0
    for _ in range(1000):
        a, b = elem(), elem()
        if q_c(H, a * b) != q_c(H, a) * q_c(H, b):
            bad += 1
    rel.append(("q_c multiplicative on 1000 pairs", bad == 0))
    rel.append(("type S", triple_type(H) == "S"))
    rel.append(("nucleus dimension 4", len(right_nucleus(H)) == 4))
    failed = [name for name, ok in rel if not ok]
    return not failed, "all relations hold" if not failed else f"failed: {failed}"


def criterion_7():
    """Square-ordered predicate bundle on the rational grid."""
    counts, failures = ordered_grid_check()
    bad = {k: v[:3] for k, v in failures.items() if v}
    detail = (f"{counts['points']} points; {counts['certified']}/{counts['in_C']} in C certified; "
              f"{counts['refuted']}/{counts['refutable']} refuted by exact witnesses")
    return not bad, detail + (f"; failures {bad}" if bad else "")


def criterion_8():
    """Description flags at q = 5."""
    L, adm = admissible(5)
    d1 = describe(L, 1, adm)
    flags = check_description(d1)
    if not all(flags.values()):
        return False, f"flags {flags}"
    G = d1.group
    sizes = {len(hom_set(G, c, d)) for c, d in product(d1.objects, repeat=2) if ell_star_set(L, c, d)}
    if sizes != {4}:
        return False, f"hom-set sizes between equivalent objects: {sizes}"
    d0 = describe(L, 0, adm)
    if d0.objects or not all(check_description(d0).values()):
        return False, "nu = 0 object set not empty"
    return True, f"flags {flags}; hom-sets of size 4; nu=0 empty"


def criterion_9():
    """Counting lemmas for q = 3, ..., 13."""
    for q in (3, 5, 7, 9, 11, 13):
        F = fq(q)
        L = standard_extension(F)
        got = (len(L.unit_circle()), len(L.punctured_axes()), len(m1_set(F)), len(m2_set(F)))
        want = (q + 1, 2 * (q - 1), (q + 1) // 2, (q + 3) // 2)
        if got != want:
            return False, f"q={q}: got {got}, want {want}"
    return True, "|S|, |A*|, |M1|, |M2| match for q = 3..13"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


def run_criterion(n):
    ok, detail = CRITERIA[n - 1]()
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS[n] = line
    return ok, line


@pytest.mark.parametrize("n", range(1, 10))
def test_criterion(n):
    ok, line = run_criterion(n)
    assert ok, line


if __name__ == "__main__":
    outcomes = []
    for n in range(1, 10):
        ok, line = run_criterion(n)
        print(line, flush=True)
        outcomes.append(ok)
    sys.exit(0 if all(outcomes) else 1)
