"""Acceptance criteria, one check per criterion, exact equality throughout.

Run under pytest (``pytest tests/test_acceptance.py -v``) or directly with
``python tests/test_acceptance.py``; either way one PASS/FAIL line is printed
per criterion together with its wall time and budget.
"""

from itertools import combinations, permutations, product
from math import factorial
import time

import pytest

from qpf import qmatrix, qpfaff
from qpf.idealcheck import relation_generators, verify_in_B
from qpf.qforms import det_via_wedge, pluecker_exchange_check, pluecker_index_sets, pluecker_vanishing_sum
from qpf.qhyper import (
    hyper_det_check,
    hyper_padding_check,
    hyper_relation_check,
    hyper_volume_check,
    mode_for,
    modulus_for,
)
from qpf.qmatrix import (
    MatPoly,
    generalized_expansion_check,
    laplace_check,
    normal_form,
    orthogonality_check,
    quantum_det,
    quantum_minor,
)
from qpf.qpfaff import (
    b_relation_check,
    enumerate_matchings,
    odd_pf_det_check,
    pf_det_check,
    pf_lemma_sum,
    pf_matchings,
    pf_recursive,
    pfaffian_two_form_check,
)
from qpf.qscalar import EXACT, LaurentScalar, ScalarMode, inversion_count, q_factorial_factor

VARIANTS = ("row", "col")


def double_factorial(k):
    return 1 if k <= 0 else k * double_factorial(k - 2)


def cold():
    qmatrix.clear_cache()
    qpfaff._block_recursive.cache_clear()


def c1():
    for n in range(1, 5):
        d = quantum_det(n, "row")
        if not (d == quantum_det(n, "col") == det_via_wedge(n, "row") == det_via_wedge(n, "col")):
            return False, f"n={n}"
    return True, "n=1..4, four constructions agree"


def c2():
    count = 0
    for n in (3, 4):
        for r in range(1, n):
            for rows in combinations(range(1, n + 1), r):
                for side in VARIANTS:
                    if not laplace_check(n, rows, side):
                        return False, f"n={n} I={rows} {side}"
                    count += 1
    return True, f"{count} expansions"


def c3():
    count = 0
    for n in (2, 3):
        for i, k in product(range(1, n + 1), repeat=2):
            for side in VARIANTS:
                if not orthogonality_check(n, i, k, side):
                    return False, f"n={n} i={i} k={k} {side}"
                count += 1
    return True, f"{count} sums"


def c4():
    count = 0
    for n in (2, 3):
        for seq in product(range(1, n + 1), repeat=n):
            for side in VARIANTS:
                if not generalized_expansion_check(n, seq, side):
                    return False, f"n={n} seq={seq} {side}"
                count += 1
    return True, f"{count} sequences"


def c5():
    for r in (0, 1):
        for variant in ("plus", "minus"):
            for tr in (False, True):
                if not pluecker_vanishing_sum(2, r, variant=variant, transposed=tr).is_zero():
                    return False, f"vanishing r={r} {variant} transposed={tr}"
    for n, r in ((2, 0), (2, 1), (3, 1)):
        if not pluecker_exchange_check(n, r):
            return False, f"exchange n={n} r={r}"
    # (1,2)(3,4) + (-q)(1,3)(2,4) + (-q)^2(1,4)(2,3) = 0, term for term
    if sorted(pluecker_index_sets(2, 1)) != [((1, 2), (3, 4), 0), ((1, 3), (2, 4), 1), ((1, 4), (2, 3), 2)]:
        return False, "index sets of the simplest relation"
    x = lambda c: quantum_minor((1, 2), c, 4)  # noqa: E731
    display = x((1, 2)) * x((3, 4)) - (x((1, 3)) * x((2, 4))).shift(1) + (x((1, 4)) * x((2, 3))).shift(2)
    if not display.is_zero() or display != pluecker_vanishing_sum(2, 1):
        return False, "simplest relation"
    return True, "8 vanishing sums, 3 exchanges, simplest relation"


def c6():
    count = 0
    for k in (2, 4, 6, 8):
        for S in combinations(range(1, 9), k):
            if pf_recursive(S) != pf_matchings(S, True):
                return False, f"S={S}"
            count += 1
        p = k // 2
        canon = enumerate_matchings(range(1, k + 1))
        ordered = enumerate_matchings(range(1, k + 1), False)
        if len(canon) != double_factorial(k - 1) or len(ordered) != double_factorial(k - 1) * factorial(p):
            return False, f"counts at size {k}"
    return True, f"{count} subsets"


def c7():
    for v in VARIANTS:
        if not b_relation_check(2, v):
            return False, f"relation {v}"
        for n in (1, 2):
            if not pf_det_check(n, v):
                return False, f"pf=det n={n} {v}"
    start = time.perf_counter()
    stretch = pf_det_check(3, "row") and b_relation_check(3, "row")
    return True, f"2n=2,4 both variants; stretch 2n=6 row {'passed' if stretch else 'FAILED'} " \
                 f"in {time.perf_counter() - start:.2f}s"


def c8():
    S = (1, 2, 3, 4)
    rels = relation_generators(4, 2)
    pf = pf_recursive(S)
    factor = q_factorial_factor(2, 4)
    lemma = verify_in_B(pf_lemma_sum(S), pf.scale(factor), rels)
    ordered = verify_in_B(pf_matchings(S, False), pf.scale(factor), rels)
    # membership() itself re-expands every certificate before answering
    return lemma.member and ordered.member, \
        f"certificate sizes {len(lemma.certificate)} and {len(ordered.certificate)}"


def c9():
    ok = pfaffian_two_form_check(1) and pfaffian_two_form_check(2) and hyper_volume_check(4, 2)
    return ok, "two-form n=1,2; four-form (m,n)=(4,2)"


def c10():
    if modulus_for(2) != 8:
        return False, "modulus"
    mode = ScalarMode(8)
    if mode_for(4) != mode:
        return False, "mode"
    for v in VARIANTS:
        if not hyper_relation_check(4, 2, v, mode):
            return False, f"relation {v}"
        if not hyper_det_check(4, 2, v, mode):
            return False, f"det {v}"
    return True, "relation and det at size 8, both variants, q^8 = 1"


def c11():
    for v in VARIANTS:
        if not odd_pf_det_check(1, v):
            return False, f"odd pf n=1 {v}"
        for n in (1, 2):
            if not hyper_padding_check(2, n, 1, v):
                return False, f"padding m=2 n={n} {v}"
    return True, "3x3 and 5x5 determinants, both variants"


def c12():
    for mode in (EXACT, ScalarMode(8)):
        for e in (4, 16):
            for n in range(1, 6):
                acc = {}
                for sigma in permutations(range(n)):
                    k = e * inversion_count(sigma)
                    acc[k] = acc.get(k, 0) + 1
                if q_factorial_factor(n, e, mode) != LaurentScalar(acc, mode):
                    return False, f"factor n={n} e={e} {mode}"
    gens = [(1, 1), (1, 2), (2, 1), (2, 2)]
    for word in product(gens, repeat=3):
        left = normal_form(word, 2, strategy="leftmost")
        if left != normal_form(word, 2, strategy="rightmost") or left != normal_form(word, 2):
            return False, f"confluence {word}"
    return True, "factor vs brute force, 64 words confluent"


CRITERIA = [
    (1, "det equivalence", c1, 5),
    (2, "Laplace expansions", c2, 30),
    (3, "Cramer and orthogonality", c3, 10),
    (4, "generalized expansions", c4, 30),
    (5, "Pluecker relations", c5, 60),
    (6, "Pfaffian combinatorics", c6, 5),
    (7, "Pf = det", c7, 30),
    (8, "abstract B identities", c8, 10),
    (9, "volume forms", c9, 60),
    (10, "hyper-Pfaffian modular theorem", c10, 15 * 60),
    (11, "padding corollaries", c11, 10 * 60),
    (12, "scalar layer and confluence", c12, 10),
]


def evaluate(fn, budget):
    cold()
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    within = elapsed < budget
    return ok and within, elapsed, detail if within else f"{detail}; over budget"


def line(num, name, passed, elapsed, budget, detail):
    return f"criterion {num:2d} {'PASS' if passed else 'FAIL'}  {name}  {elapsed:.2f}s/{budget}s  ({detail})"


@pytest.mark.parametrize("num,name,fn,budget", CRITERIA, ids=[f"c{c[0]}" for c in CRITERIA])
def test_criterion(num, name, fn, budget, capsys):
    passed, elapsed, detail = evaluate(fn, budget)
    with capsys.disabled():
        print("\n" + line(num, name, passed, elapsed, budget, detail))
    assert passed, detail


if __name__ == "__main__":
    failures = 0
    for num, name, fn, budget in CRITERIA:
        passed, elapsed, detail = evaluate(fn, budget)
        failures += not passed
        print(line(num, name, passed, elapsed, budget, detail), flush=True)
    raise SystemExit(1 if failures else 0)
