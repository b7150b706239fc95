from fractions import Fraction
from itertools import combinations
from math import factorial
import json

import pytest
import sympy

from qpf.errors import DomainError
from qpf.qmatrix import MatPoly, quantum_det, quantum_minor
from qpf.qpfaff import (
    BPoly,
    b_relation,
    b_relation_check,
    enumerate_matchings,
    matching_length,
    odd_pf_det_check,
    odd_pf_det_sides,
    padded_block_image,
    pf_det_check,
    pf_lemma_sum,
    pf_matchings,
    pf_recursive,
    pfaffian_two_form_check,
    substitute_b,
    substitute_words,
)
from qpf.qscalar import LaurentScalar, q_factorial_factor


def b(i, j):
    return BPoly.generator(i, j)


def double_factorial(k):
    return 1 if k <= 0 else k * double_factorial(k - 2)


def commutative_image(p: BPoly):
    total = 0
    for word, s in p.terms.items():
        c = sum((Fraction(v) for v in s.terms.values()), Fraction(0))
        mono = 1
        for i, j in word:
            mono *= sympy.Symbol(f"b{i}_{j}")
        total += sympy.Rational(c.numerator, c.denominator) * mono
    return sympy.expand(total)


def antisymmetric(S):
    k = len(S)

    def entry(r, c):
        i, j = S[r], S[c]
        if i == j:
            return 0
        return sympy.Symbol(f"b{i}_{j}") if i < j else -sympy.Symbol(f"b{j}_{i}")

    return sympy.Matrix(k, k, entry)


def test_small_matchings():
    assert enumerate_matchings((1, 2)) == [((1, 2),)]
    assert len(enumerate_matchings(range(1, 5))) == 3
    assert len(enumerate_matchings(range(1, 5), canonical=False)) == 6


@pytest.mark.parametrize("size", [2, 4, 6, 8])
def test_matching_counts(size):
    canon = enumerate_matchings(range(1, size + 1))
    ordered = enumerate_matchings(range(1, size + 1), canonical=False)
    assert len(canon) == len(set(canon)) == double_factorial(size - 1)
    assert len(ordered) == len(set(ordered)) == double_factorial(size - 1) * factorial(size // 2)


def test_odd_set_rejected():
    with pytest.raises(DomainError):
        enumerate_matchings((1, 2, 3))
    with pytest.raises(DomainError):
        pf_recursive((1, 2, 3))
    with pytest.raises(DomainError):
        pf_matchings((1, 2, 3))


@pytest.mark.parametrize("m,expected", [(((1, 2), (3, 4)), 0), (((1, 3), (2, 4)), 1), (((1, 4), (2, 3)), 2)])
def test_matching_length(m, expected):
    assert matching_length(m, (1, 2, 3, 4)) == expected


def test_matching_length_uses_ranks():
    assert matching_length(((2, 5), (4, 7)), (2, 4, 5, 7)) == 1


def test_matching_length_rejects_non_cover():
    with pytest.raises(DomainError):
        matching_length(((1, 2),), (1, 2, 3, 4))


def test_recursion_examples():
    assert pf_recursive((1, 2)) == b(1, 2)
    expected = b(1, 2) * b(3, 4) - (b(1, 3) * b(2, 4)).shift(1) + (b(1, 4) * b(2, 3)).shift(2)
    assert pf_recursive((1, 2, 3, 4)) == expected
    expected = b(2, 4) * b(5, 7) - (b(2, 5) * b(4, 7)).shift(1) + (b(2, 7) * b(4, 5)).shift(2)
    assert pf_recursive((2, 4, 5, 7)) == expected


def test_recursion_equals_matchings_on_every_subset():
    for k in (2, 4, 6, 8):
        for S in combinations(range(1, 9), k):
            assert pf_recursive(S) == pf_matchings(S, canonical=True)


@pytest.mark.parametrize("S", [(1, 2, 3, 4), (1, 2, 3, 4, 5, 6), (1, 3, 4, 6, 7, 8)])
def test_pfaffian_squares_to_det_at_q_one(S):
    pf = commutative_image(pf_recursive(S))
    assert sympy.expand(pf ** 2 - antisymmetric(S).det()) == 0


def test_ordered_sum():
    assert pf_matchings((1, 2), canonical=False) == b(1, 2)
    p = pf_matchings((1, 2, 3, 4), canonical=False)
    assert len(p) == 6
    assert p.coefficient(((3, 4), (1, 2))) == LaurentScalar({4: 1})


def test_free_words_do_not_reduce():
    assert b(3, 4) * b(1, 2) != b(1, 2) * b(3, 4)
    with pytest.raises(DomainError):
        BPoly.generator(2, 1)


def test_rendering_and_json():
    p = pf_recursive((1, 2, 3, 4))
    assert str(p) == "b[1,2]b[3,4] - (q)·b[1,3]b[2,4] + (q^2)·b[1,4]b[2,3]"
    data = json.loads(json.dumps(p.to_json()))
    assert data["terms"][0]["word"] == [[1, 2], [3, 4]]
    assert BPoly.from_json(data) == p


def test_substitution_examples():
    assert substitute_b(b(1, 2), 1, "row") == quantum_det(2)
    assert substitute_b(BPoly.zero(), 2).is_zero()
    col = MatPoly.generator(1, 1, 2) * MatPoly.generator(2, 2, 2) - (
        MatPoly.generator(2, 1, 2) * MatPoly.generator(1, 2, 2)).shift(1)
    assert substitute_b(b(1, 2), 1, "col") == col
    assert substitute_b(b(1, 3), 2) == quantum_minor((1, 2), (1, 3), 4) + quantum_minor((3, 4), (1, 3), 4)


def test_substitution_index_range():
    with pytest.raises(DomainError):
        substitute_b(b(1, 5), 2)


def test_b_relation_shape():
    r = b_relation(1, 2, 3, 4)
    assert len(r) == 6
    assert r.degrees() == {2}


@pytest.mark.parametrize("variant", ["row", "col"])
def test_b_relation_in_image(variant):
    assert b_relation_check(2, variant)


def test_b_relation_all_quadruples_at_six():
    assert b_relation_check(3, "row")


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("variant", ["row", "col"])
def test_pf_equals_det(n, variant):
    assert pf_det_check(n, variant)


@pytest.mark.parametrize("variant", ["row", "col"])
def test_pf_equals_det_at_six(variant):
    assert pf_det_check(3, variant)


@pytest.mark.parametrize("variant", ["row", "col"])
def test_odd_order(variant):
    assert odd_pf_det_check(1, variant)
    lhs, rhs = odd_pf_det_sides(1, variant)
    assert rhs == quantum_det(3) and len(lhs) == 6


def test_odd_order_five():
    assert odd_pf_det_check(2, "row")


def test_padding_sanity():
    # b[i, 2n+2] lands on a single entry of the last kept row
    for i in (1, 2, 3):
        img = substitute_words(b(i, 4), lambda blk: padded_block_image(blk, 2, 2, 3, "row"), 3)
        assert img == MatPoly.generator(3, i, 3)


def test_lemma_image():
    S = (1, 2, 3, 4)
    lhs = substitute_b(pf_lemma_sum(S), 2)
    assert lhs == quantum_det(4).scale(q_factorial_factor(2, 4))


def test_ordered_sum_image():
    S = (1, 2, 3, 4)
    assert substitute_b(pf_matchings(S, False), 2) == quantum_det(4).scale(q_factorial_factor(2, 4))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_two_form_volume(n):
    assert pfaffian_two_form_check(n)


def test_parallel_substitution_matches():
    pf = pf_recursive(tuple(range(1, 7)))
    seq = substitute_b(pf, 3)
    par = substitute_words(pf, lambda blk: substitute_b(BPoly.generator(blk), 3), 6, workers=2)
    assert seq == par
