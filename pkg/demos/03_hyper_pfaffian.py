"""Hyper-Pfaffians of 4-blocks: an 8x8 determinant, but only when q^8 = 1.

This one takes a couple of minutes single-threaded.

    python demos/03_hyper_pfaffian.py
"""

import time

from qpf.qhyper import hyper_det_sides, hyperpf_recursive, mode_for
from qpf.qscalar import EXACT

mode = mode_for(4)
print("block size 4 needs", mode)

h = hyperpf_recursive(tuple(range(1, 9)), 4, mode)
print(f"[1..8]_4 has {len(h)} terms, e.g.", h.words()[:2])

start = time.perf_counter()
lhs, rhs = hyper_det_sides(4, 2, "row")
print(f"image equals det_q(8) mod q^8-1: {lhs == rhs} ({len(rhs)} terms, {time.perf_counter() - start:.1f}s)")

# without the root-of-unity condition the identity fails; the residue is
# a multiple of q^8 - 1 on every word
start = time.perf_counter()
lhs, rhs = hyper_det_sides(4, 2, "row", mode=EXACT, allow_generic=True)
diff = lhs - rhs
coeffs = {str(s) for s in diff.terms.values()}
print(f"generic difference: {len(diff)} words, coefficients {coeffs} ({time.perf_counter() - start:.1f}s)")
print("vanishes mod q^8-1:", diff.reduce(mode).is_zero())
