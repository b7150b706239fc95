from itertools import combinations
from math import comb, factorial

import pytest

from qpf.errors import DomainError, ModeError
from qpf.qmatrix import quantum_det, quantum_minor
from qpf.qhyper import (
    HPoly,
    block_partition_length,
    enumerate_block_partitions,
    hyper_det_check,
    hyper_det_sides,
    hyper_lemma_image_check,
    hyper_ordered_image_check,
    hyper_padding_check,
    hyper_padding_sides,
    hyper_relation,
    hyper_relation_check,
    hyper_substitute,
    hyper_volume_check,
    hyperpf_matchings,
    hyperpf_recursive,
    mode_for,
    modulus_for,
)
from qpf.qpfaff import b_relation, pf_matchings, pf_recursive, substitute_b
from qpf.qscalar import EXACT, ScalarMode

M8 = ScalarMode(8)


def test_modulus():
    assert modulus_for(1) == 0
    assert modulus_for(2) == 8
    assert modulus_for(3) == 24
    assert mode_for(2) == EXACT and mode_for(4) == M8


@pytest.mark.parametrize("S,m,canon,count", [
    (range(1, 5), 4, True, 1), (range(1, 9), 4, True, 35), (range(1, 9), 4, False, 70),
])
def test_partition_counts(S, m, canon, count):
    parts = enumerate_block_partitions(S, m, canon)
    assert len(parts) == len(set(parts)) == count


@pytest.mark.parametrize("size,m", [(6, 2), (6, 3 * 2), (8, 2), (8, 4), (12, 4)])
def test_partition_count_formula(size, m):
    p = size // m
    canon = factorial(size) // (factorial(m) ** p * factorial(p))
    assert len(enumerate_block_partitions(range(1, size + 1), m)) == canon
    if size <= 8:
        assert len(enumerate_block_partitions(range(1, size + 1), m, False)) == canon * factorial(p)


def test_divisibility():
    with pytest.raises(DomainError):
        enumerate_block_partitions(range(1, 7), 4)
    with pytest.raises(DomainError):
        hyperpf_recursive(range(1, 7), 4)
    with pytest.raises(DomainError):
        hyperpf_recursive(range(1, 5), 3)


@pytest.mark.parametrize("blocks,expected", [
    (((1, 2, 3, 4), (5, 6, 7, 8)), 0), (((5, 6, 7, 8), (1, 2, 3, 4)), 16), (((1, 2, 3, 5), (4, 6, 7, 8)), 1),
])
def test_lengths(blocks, expected):
    assert block_partition_length(blocks, range(1, 9)) == expected


@pytest.mark.parametrize("m", [2, 4])
def test_swap_law(m):
    S = tuple(range(1, 2 * m + 1))
    for u in combinations(S, m):
        v = tuple(x for x in S if x not in u)
        assert block_partition_length((u, v), S) + block_partition_length((v, u), S) == m * m


def test_recursion_examples():
    assert hyperpf_recursive(range(1, 5), 4) == HPoly.generator(1, 2, 3, 4)
    assert len(hyperpf_recursive(range(1, 9), 4)) == 35
    assert hyperpf_recursive((1, 2, 3, 4), 2) == pf_recursive((1, 2, 3, 4))


@pytest.mark.parametrize("m", [2, 4])
def test_recursion_equals_matchings(m):
    for k in (m, 2 * m):
        for S in combinations(range(1, 9), k):
            assert hyperpf_recursive(S, m) == hyperpf_matchings(S, m)


def test_degeneration_to_pairs():
    S = (1, 2, 3, 4)
    assert hyperpf_matchings(S, 2, False) == pf_matchings(S, False)
    assert len(hyperpf_matchings(S, 2, False)) == 6
    assert hyper_relation(S, 2) == b_relation(1, 2, 3, 4)
    for n in (1, 2):
        pf = pf_recursive(tuple(range(1, 2 * n + 1)))
        for v in ("row", "col"):
            assert hyper_substitute(pf, 2, n, v) == substitute_b(pf, n, v)


def test_substitute_examples():
    assert hyper_substitute(HPoly.generator(1, 2), 2, 1) == quantum_det(2)
    assert hyper_substitute(HPoly.zero(M8), 4, 2).is_zero()
    img = hyper_substitute(HPoly.generator((1, 2, 3, 4), mode=M8), 4, 2)
    block = tuple(range(1, 5))
    expected = quantum_minor(block, block, 8, M8) + quantum_minor((5, 6, 7, 8), block, 8, M8)
    assert img == expected


def test_mode_is_enforced():
    with pytest.raises(ModeError):
        hyper_substitute(HPoly.generator(1, 2, 3, 4), 4, 2)
    with pytest.raises(ModeError):
        hyper_det_check(4, 2, mode=EXACT)
    with pytest.raises(DomainError):
        hyper_substitute(HPoly.generator(1, 2), 4, 2, mode=M8)


@pytest.mark.parametrize("variant", ["row", "col"])
def test_pair_case(variant):
    assert hyper_relation_check(2, 2, variant)
    assert hyper_det_check(2, 1, variant)
    assert hyper_det_check(2, 2, variant)


@pytest.mark.parametrize("variant", ["row", "col"])
def test_padding(variant):
    assert hyper_padding_check(2, 1, 1, variant)
    assert hyper_padding_check(2, 2, 1, variant)


def test_padding_range():
    with pytest.raises(DomainError):
        hyper_padding_check(2, 1, 2)


def test_padded_generator_reduces_to_lower_minor():
    # the top hyper-Pfaffian generator uses the padded rows only in its second block band
    lhs, rhs = hyper_padding_sides(2, 1, 1)
    assert rhs == quantum_det(3)
    assert lhs == rhs


def test_volume():
    assert hyper_volume_check(2, 2)
    assert hyper_volume_check(4, 2)


@pytest.mark.slow
def test_ordered_sum_image_at_eight():
    assert hyper_ordered_image_check(4, 2)


@pytest.mark.slow
def test_lemma_image_at_eight():
    assert hyper_lemma_image_check(4, 2)


def test_lemma_and_ordered_images_for_pairs():
    assert hyper_ordered_image_check(2, 2)
    assert hyper_lemma_image_check(2, 2)
    assert hyper_ordered_image_check(2, 3)


@pytest.mark.slow
def test_generic_residue_is_a_multiple_of_the_modulus():
    lhs, rhs = hyper_det_sides(4, 2, mode=EXACT, allow_generic=True)
    diff = lhs - rhs
    assert not diff.is_zero()
    assert diff.reduce(M8).is_zero()
    # every coefficient is a signed monomial times q^8 - 1
    for s in diff.terms.values():
        (a, c), (b, d) = sorted(s.terms.items())
        assert b == a + 8 and c == -d and abs(c) == 1
