"""Invariant batteries shared by the ``verify`` command and the test-suite.

Each suite returns a list of ``Check`` records.
"""

from dataclasses import dataclass
from itertools import product

from . import algebra as alg
from .algebra import AlgebraSpec, Triple
from .budget import resolve
from .classification import (
    b_set_bruteforce,
    b_set_membership,
    fq_transversal,
    is_admissible_via_b,
    m1_set,
    m2_set,
    standard_extension,
)
from .groupoid import SemidirectGroup, check_description, describe, stabilizer
from .morphisms import aut_group, brute_force_morphisms, constructed_morphisms, ell_star_set


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self):
        return {"name": self.name, "pass": bool(self.passed), "detail": self.detail}


def admissible_triples(ext, budget=None):
    k = ext.base
    return [Triple(*(k.from_code(x) for x in c)) for c in alg.admissible_codes_bruteforce(ext, budget)]


def structure_checks(A):
    """Per-algebra structure battery; returns {name: bool}."""
    k = A.base
    out = {}
    grading = alg.v_grading(A)
    out["grading_dims_1"] = all(len(v) == 1 for v in grading.values())
    out["A00_is_k1"] = alg.same_subspace(A, grading[(0, 0)], [A.one])
    out["grading_law"] = alg.grading_law_holds(A, grading)
    G = alg.gram_matrix(A)
    out["trace_symmetric"] = all(G[i][j] == G[j][i] for i in range(4) for j in range(4))
    out["trace_nondegenerate"] = alg.linalg.det(G, k) != 0
    out["trace_one_one_is_4"] = alg.trace_form(A, A.one, A.one) == 4
    Mb = alg.map_matrix(A, lambda a: alg.beta(A, a))
    plus = [A.from_coords(v) for v in alg.eigenspace(A, Mb, k.one)]
    minus = [A.from_coords(v) for v in alg.eigenspace(A, Mb, -k.one)]
    out["beta_plus_perp_is_beta_minus"] = alg.same_subspace(A, alg.orthogonal_complement(A, plus), minus)
    nuc = alg.right_nucleus(A)
    out["nucleus_is_ell"] = len(nuc) == 2 and alg.same_subspace(A, nuc, [A.one, A.u])
    out["not_associative"] = not alg.is_associative(A)
    out["not_commutative"] = not alg.is_commutative(A)
    return out


def admissibility_suite(F, budget=None):
    ext = standard_extension(F)
    brute = set(admissible_triples(ext, budget))
    closed, via_b = set(), set()
    for c in product(F.elements(), repeat=3):
        c = Triple(*c)
        if alg.is_admissible_closed_form_fq(AlgebraSpec(ext, c)):
            closed.add(c)
        if is_admissible_via_b(F, c):
            via_b.add(c)
    return [
        Check("admissible_brute_eq_closed_form", brute == closed, f"{len(brute)} admissible of {F.q ** 3}"),
        Check("admissible_brute_eq_via_b", brute == via_b, f"{len(via_b)} via (a, b) reduction"),
    ]


def b_set_suite(F, budget=None):
    ext = standard_extension(F)
    bad = [
        (a, b)
        for a, b in product(F.elements(), repeat=2)
        if b_set_membership(F, a, b) != b_set_bruteforce(ext, a, b, budget)
    ]
    return [Check("b_set_closed_form_eq_bruteforce", not bad, f"{len(bad)} disagreements")]


def counting_suite(F):
    ext = standard_extension(F)
    q = F.q
    return [
        Check("unit_circle_q_plus_1", len(ext.unit_circle()) == q + 1, f"|S| = {len(ext.unit_circle())}"),
        Check("punctured_axes_2q_minus_2", len(ext.punctured_axes()) == 2 * (q - 1)),
        Check("M1_size", len(m1_set(F)) == (q + 1) // 2, f"|M1| = {len(m1_set(F))}"),
        Check("M2_size", len(m2_set(F)) == (q + 3) // 2, f"|M2| = {len(m2_set(F))}"),
        Check("norm_surjective", ext.norm_surjective()),
    ]


def morphism_suite(F, budget=None):
    ext = standard_extension(F)
    adm = admissible_triples(ext, budget)
    iff_ok = set_ok = aut_ok = True
    for c, d in product(adm, repeat=2):
        A, B = AlgebraSpec(ext, c), AlgebraSpec(ext, d)
        brute = brute_force_morphisms(A, B, budget)
        if bool(brute) != bool(ell_star_set(ext, c, d)):
            iff_ok = False
        if {m.matrix for m in brute} != {w.matrix() for w in constructed_morphisms(A, B)}:
            set_ok = False
        if c == d and (len(brute) != 4 or aut_group(A).tag != "KLEIN_FOUR"):
            aut_ok = False
    G = SemidirectGroup(ext, 1)
    stab_ok = all(len(stabilizer(G, c)) == 4 for c in adm)
    return [
        Check("morphisms_exist_iff_ell_star_nonempty", iff_ok, f"{len(adm) ** 2} pairs"),
        Check("all_morphisms_are_constructed", set_ok),
        Check("aut_klein_four", aut_ok),
        Check("stabilizer_order_4", stab_ok),
    ]


def structure_suite(F, budget=None):
    ext = standard_extension(F)
    failures = {}
    adm = admissible_triples(ext, budget)
    for c in adm:
        for name, ok in structure_checks(AlgebraSpec(ext, c)).items():
            if not ok:
                failures.setdefault(name, []).append(tuple(int(x) for x in c))
    names = ["grading_dims_1", "A00_is_k1", "grading_law", "trace_symmetric", "trace_nondegenerate",
             "trace_one_one_is_4", "beta_plus_perp_is_beta_minus", "nucleus_is_ell",
             "not_associative", "not_commutative"]
    return [Check(n, n not in failures, f"failures: {failures.get(n, [])}") for n in names]


def groupoid_suite(F, budget=None):
    ext = standard_extension(F)
    adm = admissible_triples(ext, budget)
    out = []
    for nu in (0, 1):
        desc = describe(ext, nu, adm)
        flags = check_description(desc, budget)
        out.append(Check(f"description_nu{nu}", all(flags.values()),
                         f"{len(desc.objects)} objects, {len(desc.orbits)} orbits, flags {flags}"))
    out.append(Check("orbits_eq_transversal", len(describe(ext, 1, adm).orbits) == len(fq_transversal(F))))
    return out


SUITES = {
    "admissibility": admissibility_suite,
    "b_set": b_set_suite,
    "counting": lambda F, budget=None: counting_suite(F),
    "morphisms": morphism_suite,
    "structure": structure_suite,
    "groupoid": groupoid_suite,
}


def run_suite(F, name="all", budget=None, executor=None):
    budget = resolve(budget)
    names = list(SUITES) if name == "all" else [name]
    if name != "all" and name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    if executor is None:
        results = [SUITES[n](F, budget) for n in names]
    else:
        futures = [executor.submit(SUITES[n], F, budget) for n in names]
        results = [f.result() for f in futures]
    return [c for r in results for c in r]
