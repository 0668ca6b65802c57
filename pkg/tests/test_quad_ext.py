import random
from fractions import Fraction

import pytest

from kleinfour.fields import QQ, FieldError
from kleinfour.finite_field import fq, smallest_nonsquare
from kleinfour.quad_ext import QuadExt, gaussian_rationals


def ext(q, t):
    return QuadExt(fq(q), t)


def test_conjugation_examples():
    L = ext(7, 3)
    assert L(1, 0).conj() == L(1, 0)
    assert L(0, 1).conj() == L(0, -1)


def test_conjugation_involution_f49():
    F = fq(49)
    L = QuadExt(F, next(x for x in F.elements() if not F.is_square(x)))
    rng = random.Random(0)
    for _ in range(100):
        x = L(rng.choice(F.elements()), rng.choice(F.elements()))
        assert x.conj().conj() == x


def test_norm_examples():
    L = ext(7, 3)
    assert L(4, 0).norm() == fq(7)(16)
    assert L(1, 1).norm() == fq(7)(5)


def test_norm_multiplicative_f9():
    F = fq(9)
    L = QuadExt(F, smallest_nonsquare(F))
    E = L.elements()
    for a in E:
        for b in E:
            assert (a * b).norm() == a.norm() * b.norm()


def test_norm_matches_frobenius():
    # the conjugation (u, v) -> (u, -v) is the q-th power map on l
    for q, t in [(3, 2), (5, 2), (7, 3)]:
        L = ext(q, t)
        for a in L.elements():
            assert a**q == a.conj()


@pytest.mark.parametrize("q,t,size", [(3, 2, 4), (7, 3, 8)])
def test_unit_circle(q, t, size):
    L = ext(q, t)
    S = L.unit_circle()
    assert len(S) == size
    assert L.one in S and -L.one in S


def test_punctured_axes():
    L = ext(3, 2)
    assert len(L.punctured_axes()) == 4
    assert L(1, 1) not in L.punctured_axes()
    L5 = ext(5, 2)
    k_star = {L5(x) for x in L5.base.elements()[1:]}
    for x in L5.units():
        assert (x in L5.punctured_axes()) == ((x * x) in k_star)


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13])
def test_counts(q):
    F = fq(q)
    L = QuadExt(F, next(x for x in F.elements() if not F.is_square(x)))
    assert len(L.unit_circle()) == q + 1
    assert len(L.punctured_axes()) == 2 * (q - 1)
    assert L.norm_surjective()
    assert L.zero.norm() == 0


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_norm_image_as_binary_form(q):
    F = fq(q)
    t = next(x for x in F.elements() if not F.is_square(x))
    L = QuadExt(F, t)
    form = {x * x - t * y * y for x in F.elements() for y in F.elements() if x or y}
    assert L.norm_image() == form


def test_trace_and_imaginary_part():
    L = ext(7, 3)
    for a in L.elements():
        assert a.trace() == a + a.conj()
        assert (a.trace() / 2 + (a - a.conj()) / 2) == a
        assert L.is_imaginary(a - a.conj())


def test_construction_errors():
    with pytest.raises(FieldError):
        ext(7, 2)  # 2 = 3^2
    with pytest.raises(FieldError):
        QuadExt(QQ, 4)
    with pytest.raises(FieldError):
        QuadExt(QQ, 0)
    with pytest.raises(FieldError, match="infinite base"):
        gaussian_rationals().elements()


def test_rational_normalization():
    assert QuadExt(QQ, 12).t == 3
    assert QuadExt(QQ, Fraction(-1, 4)).t == -1
    i = gaussian_rationals().w
    assert i * i == -1
    assert repr(gaussian_rationals()(Fraction(1, 2), 3)) == "1/2+3*w"


def test_vectorized_kernels_match_scalar():
    L = ext(5, 2)
    codes = L.all_codes
    for a in L.elements():
        for name, f in [("vmul", lambda x, y: x * y), ("vadd", lambda x, y: x + y), ("vsub", lambda x, y: x - y)]:
            got = getattr(L, name)(a.code, codes)
            assert [int(g) for g in got] == [f(a, L.from_code(c)).code for c in codes]
    assert [int(n) for n in L.vnorm(codes)] == [L.from_code(c).norm().code for c in codes]
    assert [int(n) for n in L.vconj(codes)] == [L.from_code(c).conj().code for c in codes]
