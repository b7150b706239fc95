"""Normal forms in M_q(n), the quantum determinant and its expansions.

    python demos/01_quantum_determinant.py
"""

from qpf.qforms import det_via_wedge, one_form, pluecker_vanishing_sum, wedge
from qpf.qmatrix import MatPoly, laplace_sides, normal_form, quantum_det, quantum_minor

# a[2,2] a[1,1] is out of order; rewriting produces a correction term
print("a22 a11 =", normal_form([(2, 2), (1, 1)]))

# same row: the generators q-commute
a11, a12 = MatPoly.generator(1, 1, 2), MatPoly.generator(1, 2, 2)
print("a12 a11 =", a12 * a11)

d2 = quantum_det(2)
print("det_q(2) =", d2)

# row and column permutation sums give the same element
for n in (2, 3, 4):
    print(f"n={n}: row = col: {quantum_det(n, 'row') == quantum_det(n, 'col')},",
          f"{len(quantum_det(n))} terms")

# omega_i = sum_j a[i,j] x_j behaves like x_i
w1, w2 = one_form(1, 3), one_form(2, 3)
print("w1^w1 = 0:", wedge(w1, w1).is_zero())
print("volume of w1^w2^w3 is det_q(3):", det_via_wedge(3) == quantum_det(3))

# Laplace expansion along rows {1, 2} of a 4x4 matrix
lhs, rhs = laplace_sides(4, (1, 2), "row")
print("Laplace (1,2) in size 4 holds:", lhs == rhs)

# the simplest Pluecker relation among 2x2 minors of a 2x4 block
x = lambda cols: quantum_minor((1, 2), cols, 4)  # noqa: E731
rel = x((1, 2)) * x((3, 4)) - (x((1, 3)) * x((2, 4))).shift(1) + (x((1, 4)) * x((2, 3))).shift(2)
print("(12)(34) - q(13)(24) + q^2(14)(23) =", rel)
print("all r, both signs vanish:",
      all(pluecker_vanishing_sum(2, r, variant=v).is_zero() for r in (0, 1) for v in ("plus", "minus")))
