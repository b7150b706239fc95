"""q-Pfaffians on free generators, their matrix images and ideal certificates.

    python demos/02_pfaffian.py
"""

from qpf.idealcheck import relation_generators, verify_in_B
from qpf.qmatrix import quantum_det
from qpf.qpfaff import (
    enumerate_matchings,
    odd_pf_det_check,
    pf_matchings,
    pf_recursive,
    substitute_b,
)
from qpf.qscalar import q_factorial_factor

S = (1, 2, 3, 4)
pf = pf_recursive(S)
print("[1,2,3,4] =", pf)
print("matchings:", enumerate_matchings(S))
print("recursion equals matching sum:", pf == pf_matchings(S))

# b[i,j] -> sum_m xi^{2m-1,2m}_{i,j}
for n in (1, 2, 3):
    full = pf_recursive(tuple(range(1, 2 * n + 1)))
    for variant in ("row", "col"):
        ok = substitute_b(full, n, variant) == quantum_det(2 * n)
        print(f"Pf = det_q at size {2 * n} ({variant}):", ok)

print("3x3 determinant as a padded Pfaffian:", odd_pf_det_check(1, "row"), odd_pf_det_check(1, "col"))

# over ordered matchings the sum picks up (1 + q^4), but only modulo the relations
ordered = pf_matchings(S, canonical=False)
factor = q_factorial_factor(2, 4)
print("ordered sum - (1+q^4) Pf =", ordered - pf.scale(factor))
res = verify_in_B(ordered, pf.scale(factor), relation_generators(4, 2))
for t in res.certificate:
    print(f"  certificate: ({t.num})/({t.den}) * {list(t.left)} r{t.relation} {list(t.right)}")

S6 = tuple(range(1, 7))
res = verify_in_B(pf_matchings(S6, False), pf_recursive(S6).scale(q_factorial_factor(3, 4)),
                  relation_generators(6, 2))
print(f"six indices: member={res.member}, {len(res.certificate)} certificate terms")
