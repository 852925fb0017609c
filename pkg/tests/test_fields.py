import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicomp.fields import (FieldElem, FieldError, embedding, ff_arith, ff_embed,
                             ff_enumerate, ff_make, field_from_json, field_to_json,
                             elem_from_json, elem_to_json, least_irreducible)

from .oracles import poly_irreducible_bruteforce, poly_mulmod

SMALL = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (2, 4), (3, 3)]


def elem(K, coeffs):
    return FieldElem.from_coeffs(K, coeffs)


def test_modulus_f4_is_x2_x_1():
    assert ff_make(2, 2).modulus == (1, 1, 1)


def test_same_parameters_same_object():
    assert ff_make(3, 2) is ff_make(3, 2)


@pytest.mark.parametrize("p,e", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (2, 6)])
def test_least_irreducible_is_least(p, e):
    m = least_irreducible(p, e)
    assert poly_irreducible_bruteforce(m, p)
    # every lexicographically smaller monic polynomial factors
    for tail in itertools.product(range(p), repeat=e):
        cand = tuple(tail) + (1,)
        if cand == m:
            break
        assert not poly_irreducible_bruteforce(cand, p)


def test_rejects_bad_parameters():
    with pytest.raises(FieldError):
        ff_make(4, 1)
    with pytest.raises(FieldError):
        ff_make(2, 17)
    with pytest.raises(FieldError):
        ff_make(3, 0)


def test_f4_generator_square():
    K = ff_make(2, 2)
    a = elem(K, [0, 1])
    assert a * a == a + 1


def test_f7_inverse_of_3():
    K = ff_make(7)
    assert ff_arith("inv", FieldElem(K, 3)).code == 5


def test_f4_generator_cube_is_one():
    K = ff_make(2, 2)
    a = elem(K, [0, 1])
    assert ff_arith("cube", a) == FieldElem(K, K.one)


def test_inverse_of_zero_raises():
    K = ff_make(5)
    with pytest.raises(ZeroDivisionError):
        FieldElem(K, 0).inverse()


def test_mixed_fields_raise():
    with pytest.raises(FieldError):
        ff_arith("add", FieldElem(ff_make(2), 1), FieldElem(ff_make(3), 1))


def test_enumerate_order_and_size():
    assert [e.coeffs for e in ff_enumerate(ff_make(2))] == [(0,), (1,)]
    assert len(ff_enumerate(ff_make(2, 2))) == 4
    F9 = ff_enumerate(ff_make(3, 2))
    assert len(F9) == 9 and F9[0].code == 0
    assert [e.coeffs for e in F9] == sorted(e.coeffs for e in F9)


@pytest.mark.parametrize("p,e", SMALL)
def test_multiplication_matches_polynomial_oracle(p, e):
    K = ff_make(p, e)
    for a, b in itertools.product(K.elements(), repeat=2):
        want = poly_mulmod(list(K.to_coeffs(a)), list(K.to_coeffs(b)), K.modulus, p)
        assert K.to_coeffs(K.mul(a, b)) == tuple(want)


def test_embedding_trivial_cases():
    F2, F4, F16 = ff_make(2), ff_make(2, 2), ff_make(2, 4)
    assert ff_embed(FieldElem(F2, 1), F4).code == F4.one
    assert ff_embed(FieldElem(F2, 0), F16).code == 0


def test_embedding_sends_generator_to_least_root():
    F4, F16 = ff_make(2, 2), ff_make(2, 4)
    img = embedding(F4, F16)(F4.generator)
    roots = [r for r in F16.elements() if F16.add(F16.mul(r, r), F16.add(r, F16.one)) == 0]
    assert img == min(roots)


@pytest.mark.parametrize("src,tgt", [((2, 1), (2, 2)), ((3, 1), (3, 2)), ((2, 2), (2, 4)), ((2, 3), (2, 6))])
def test_embedding_is_injective_ring_map(src, tgt):
    S, T = ff_make(*src), ff_make(*tgt)
    emb = embedding(S, T)
    assert len({emb(a) for a in S.elements()}) == S.q
    for a, b in itertools.product(S.elements(), repeat=2):
        assert emb(S.mul(a, b)) == T.mul(emb(a), emb(b))
        assert emb(S.add(a, b)) == T.add(emb(a), emb(b))
        assert emb.restrict(emb(a)) == a


def test_embedding_incompatible_degrees():
    with pytest.raises(FieldError):
        embedding(ff_make(2, 2), ff_make(2, 3))


def test_json_round_trip():
    K = ff_make(3, 2)
    assert field_from_json(field_to_json(K)) is K
    for c in K.elements():
        assert elem_from_json(K, elem_to_json(K, c)) == c


fields = st.sampled_from([(2, 2), (2, 3), (3, 2), (5, 1), (2, 5), (7, 2)]).map(lambda pe: ff_make(*pe))


@settings(max_examples=200)
@given(fields, st.data())
def test_pow_matches_repeated_multiplication(K, data):
    a = data.draw(st.integers(0, K.q - 1))
    n = data.draw(st.integers(0, 40))
    acc = K.one
    for _ in range(n):
        acc = K.mul(acc, a)
    assert K.pow(a, n) == acc


@settings(max_examples=200)
@given(fields, st.data())
def test_frobenius_is_additive(K, data):
    a = data.draw(st.integers(0, K.q - 1))
    b = data.draw(st.integers(0, K.q - 1))
    assert K.frobenius(K.add(a, b)) == K.add(K.frobenius(a), K.frobenius(b))
    assert K.frobenius(a) == K.pow(a, K.p)
