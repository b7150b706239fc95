from fractions import Fraction

import sympy

from qpf.qmatrix import MatPoly


def at_q_equals_one(p: MatPoly):
    """Commutative image of a MatPoly at q = 1, as a sympy expression."""
    total = 0
    for word, s in p.terms.items():
        c = sum((Fraction(v) for v in s.terms.values()), Fraction(0))
        mono = 1
        for i, j in word:
            mono *= sympy.Symbol(f"a{i}_{j}")
        total += sympy.Rational(c.numerator, c.denominator) * mono
    return sympy.expand(total)


def generic_matrix(n):
    return sympy.Matrix(n, n, lambda i, j: sympy.Symbol(f"a{i + 1}_{j + 1}"))
