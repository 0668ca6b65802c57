import random
from fractions import Fraction
from itertools import product

import pytest

from kleinfour import fq, standard_extension
from kleinfour.algebra import (
    AlgebraSpec,
    InadmissibleTriple,
    Triple,
    admissible_codes_bruteforce,
    alpha,
    beta,
    ell_det,
    eigenspace,
    find_isotropy_witness_rational,
    gram_matrix,
    grading_law_holds,
    is_admissible_bruteforce,
    is_admissible_closed_form_fq,
    is_admissible_positivity_cert,
    is_associative,
    is_commutative,
    is_division_bruteforce,
    isotropy_witness,
    map_matrix,
    orthogonal_complement,
    q_c,
    rational_q_components,
    real_isotropy_witness,
    right_nucleus,
    same_subspace,
    trace_form,
    triple_type,
    v_grading,
)
from kleinfour.budget import Budget, BudgetExceeded
from kleinfour.quad_ext import gaussian_rationals


def alg(q, c):
    F = fq(q)
    return AlgebraSpec(standard_extension(F), Triple.of(F, *c))


def admissible(q):
    F = fq(q)
    L = standard_extension(F)
    return [AlgebraSpec(L, Triple(*(F.from_code(x) for x in c))) for c in admissible_codes_bruteforce(L)]


@pytest.fixture(scope="module")
def H():
    return AlgebraSpec(gaussian_rationals(), (1, 0, -1))


def test_unity(A514):
    for a in A514.elements()[::37]:
        assert A514.one * a == a == a * A514.one


def test_quaternion_relations(H):
    i, j = H.u, H.j
    minus_one = -H.one
    assert j * j == minus_one and i * i == minus_one
    assert i * j == H(0, -H.ext.w) == -(j * i)
    assert (i * j) * (i * j) == minus_one


def test_left_linear_in_right_slot():
    A = alg(3, (2, 1, 1))
    L = A.ext
    E = A.elements()
    for a, b in product(E, repeat=2):
        for s in L.elements():
            assert a * (b * s) == (a * b) * s


def test_q_c_examples(A514):
    assert q_c(A514, A514.one) == 1
    c1, c2, c3 = A514.c
    assert q_c(A514, A514.j) == -c2 - c3


@pytest.mark.parametrize("q", [3, 5, 7])
def test_q_c_is_ell_determinant(q):
    A = alg(q, (2, 1, 1))
    for a in A.elements():
        assert q_c(A, a) == ell_det(A, a)


def test_q_c_multiplicative_only_when_associative():
    Q = alg(3, (1, 0, 1))  # associative pattern c1 = 1, c2 = 0
    assert is_associative(Q)
    E = Q.elements()
    assert all(q_c(Q, a * b) == q_c(Q, a) * q_c(Q, b) for a, b in product(E, repeat=2))
    A = alg(5, (2, 1, 2))
    rng = random.Random(5)
    E = A.elements()
    pairs = [(rng.choice(E), rng.choice(E)) for _ in range(200)]
    assert any(q_c(A, a * b) != q_c(A, a) * q_c(A, b) for a, b in pairs)


def test_admissibility_examples(A514):
    assert is_admissible_bruteforce(A514)
    assert is_admissible_closed_form_fq(A514)
    for c3 in range(7):
        A = alg(7, (1, 0, c3))
        assert not is_admissible_bruteforce(A)
        assert not is_admissible_closed_form_fq(alg(7, (1, 1, c3)))
    assert isotropy_witness(alg(7, (0, 0, 0))) is not None


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_closed_form_equals_bruteforce(q):
    F = fq(q)
    L = standard_extension(F)
    brute = set(admissible_codes_bruteforce(L))
    closed = {
        c for c in product(range(q), repeat=3)
        if is_admissible_closed_form_fq(AlgebraSpec(L, Triple(*(F.from_code(x) for x in c))))
    }
    assert brute == closed


@pytest.mark.parametrize("q", [3, 5])
def test_split_and_pointwise_scans_agree(q):
    rng = random.Random(q)
    for _ in range(15):
        A = alg(q, [rng.randrange(q) for _ in range(3)])
        w1 = isotropy_witness(A, method="split")
        w2 = isotropy_witness(A, method="pointwise")
        assert (w1 is None) == (w2 is None)
        for w in (w1, w2):
            if w is not None:
                x, y = w
                assert not (x.is_zero() and y.is_zero())
                assert q_c(A, A(x, y)).is_zero()


@pytest.mark.parametrize("q", [3, 5])
def test_division_iff_admissible(q):
    F = fq(q)
    L = standard_extension(F)
    brute = set(admissible_codes_bruteforce(L))
    for c in product(range(q), repeat=3):
        A = AlgebraSpec(L, Triple(*(F.from_code(x) for x in c)))
        assert is_division_bruteforce(A) == (c in brute)


def test_scan_budget():
    with pytest.raises(BudgetExceeded, match="scan requires q <= 5"):
        isotropy_witness(alg(7, (5, 1, 4)), Budget().uniform(5))


def test_positivity_certificate():
    Q = gaussian_rationals()
    assert is_admissible_positivity_cert(AlgebraSpec(Q, (1, 1, -2))) == "certified"
    assert is_admissible_positivity_cert(AlgebraSpec(Q, (1, 0, -1))) == "certified"
    assert is_admissible_positivity_cert(AlgebraSpec(Q, (0, 0, 0))) == "unknown"


def test_types(A514):
    Q = gaussian_rationals()
    assert triple_type(AlgebraSpec(Q, (1, 0, -1))) == "S"
    assert triple_type(A514) == "N"
    assert triple_type(AlgebraSpec(Q, (0, -1, 0))) == "K"
    with pytest.raises(InadmissibleTriple):
        triple_type(alg(7, (1, 1, 1)))


def test_nucleus(A514, H):
    nuc = right_nucleus(A514)
    assert len(nuc) == 2 and same_subspace(A514, nuc, [A514.one, A514.u])
    assert len(right_nucleus(H)) == 4


@pytest.mark.parametrize("q", [5, 7])
def test_nucleus_dim_two_and_type_n(q):
    for A in admissible(q):
        assert triple_type(A) == "N"
        assert len(right_nucleus(A)) == 2
        assert not is_associative(A)


def test_associativity_examples(A514, H):
    assert is_associative(H) and not is_commutative(H)
    assert not is_associative(A514) and not is_commutative(A514)


def test_alpha_beta_actions(A514):
    L = A514.ext
    x, y = L(2, 3), L(5, 1)
    a = A514(x, y)
    assert alpha(A514, a) == A514(x, -y)
    assert beta(A514, a) == A514(x.conj(), y.conj())


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_v_grading(q):
    # q = 3 has no admissible triple, the grading is purely formal there
    algebras = admissible(q) or [alg(q, (2, 1, 1))]
    for A in algebras[:6]:
        g = v_grading(A)
        assert all(len(v) == 1 for v in g.values())
        assert same_subspace(A, g[(0, 0)], [A.one])
        assert grading_law_holds(A, g)


def test_v_grading_components(A514):
    g = v_grading(A514)
    L = A514.ext
    assert same_subspace(A514, g[(0, 1)], [A514.u])
    assert same_subspace(A514, g[(1, 0)], [A514(0, 1)])
    assert same_subspace(A514, g[(1, 1)], [A514(0, L.w)])


@pytest.mark.parametrize("q", [5, 7])
def test_trace_form(q):
    for A in admissible(q):
        assert trace_form(A, A.one, A.one) == 4
        G = gram_matrix(A)
        assert all(G[i][j] == G[j][i] for i in range(4) for j in range(4))
        g = v_grading(A)
        for ij, mn in product(g, repeat=2):
            t = trace_form(A, g[ij][0], g[mn][0])
            if ij != mn:
                assert t == 0
            else:
                # on one graded line: tau(x, x) = 0 iff x^2 = 0
                assert (t == 0) == (g[ij][0] * g[ij][0]).is_zero()
        Mb = map_matrix(A, lambda a: beta(A, a))
        k = A.base
        plus = [A.from_coords(v) for v in eigenspace(A, Mb, k.one)]
        minus = [A.from_coords(v) for v in eigenspace(A, Mb, -k.one)]
        assert same_subspace(A, orthogonal_complement(A, plus), minus)


def test_gram_matrix_f7(A514):
    assert [[int(x) for x in r] for r in gram_matrix(A514)] == [
        [4, 0, 0, 0], [0, 5, 0, 0], [0, 0, 6, 0], [0, 0, 0, 6]]


# -- rational witnesses ------------------------------------------------------

def random_rational(rng):
    return Fraction(rng.randint(-9, 9), rng.randint(1, 6))


def test_component_formula_matches_q_c():
    rng = random.Random(11)
    Q = gaussian_rationals()
    for _ in range(200):
        A = AlgebraSpec(Q, [random_rational(rng) for _ in range(3)])
        _, a2, b1, b2, s, r = rational_q_components(A)
        x1, x2, y1, y2 = (random_rational(rng) for _ in range(4))
        val = q_c(A, A(Q(x1, x2), Q(y1, y2)))
        assert val.u == x1 * x1 + a2 * x2 * x2 + b1 * y1 * y1 + b2 * y2 * y2
        assert val.v == 2 * (s * x1 * x2 - r * y1 * y2)


def test_rational_witness_search():
    Q = gaussian_rationals()
    A = AlgebraSpec(Q, (0, 0, 0))
    x, y = find_isotropy_witness_rational(A)
    assert q_c(A, A(x, y)).is_zero()
    assert find_isotropy_witness_rational(AlgebraSpec(Q, (1, 1, -2))) is None


def test_real_witness():
    Q = gaussian_rationals()
    A = AlgebraSpec(Q, (Fraction(-1, 2), 0, -1))
    w = real_isotropy_witness(A)
    assert w is not None and w.verify(A) and w.r != 1
    # rational witnesses are checked against q_c directly
    B = AlgebraSpec(Q, (1, 2, 2))
    w = real_isotropy_witness(B)
    assert w.r == 1
    x1, x2, y1, y2 = w.coords
    assert q_c(B, B(Q(x1, x2), Q(y1, y2))).is_zero()
    assert real_isotropy_witness(AlgebraSpec(Q, (1, 1, -2))) is None
