"""Quantum exterior algebra with coefficients in a word algebra.

A :class:`Form` is a finite sum of ``coeff * x_{i1} ^ ... ^ x_{ik}`` with
strictly increasing indices, stored as a bitmask (bit ``i - 1`` for ``x_i``).
Coefficients commute with the x's and multiply in their own algebra, so the
same code serves M_q(n)-valued forms and forms over the free Pfaffian
generators.  Basis products obey x_j ^ x_i = (-q) x_i ^ x_j for i < j and
x_i ^ x_i = 0.
"""

from __future__ import annotations

from functools import reduce
from itertools import combinations

from ._poly import WordPoly
from .errors import DomainError
from .qmatrix import MatPoly, quantum_minor
from .qscalar import EXACT, _as_mode, inversion_count

__all__ = [
    "Form",
    "mask_of",
    "indices_of",
    "wedge",
    "wedge_all",
    "one_form",
    "det_via_wedge",
    "pluecker_index_sets",
    "pluecker_vanishing_sum",
    "pluecker_exchange_sides",
    "pluecker_exchange_check",
]


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


def indices_of(mask: int) -> tuple:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _crossings(S: int, T: int) -> int:
    """#{(s, t) in S x T : s > t} for disjoint bitmasks."""
    c = 0
    while T:
        low = T & -T
        c += bin(S & ~((low << 1) - 1)).count("1")
        T ^= low
    return c


class Form:
    """Element of (coefficient algebra) tensor Lambda_N."""

    __slots__ = ("N", "zero", "components")

    def __init__(self, N: int, zero: WordPoly, components=None):
        if N < 0:
            raise DomainError("exterior size must be nonnegative")
        self.N = N
        self.zero = zero
        self.components = {}
        for key, coeff in (components or {}).items():
            mask = key if isinstance(key, int) else mask_of(key)
            if isinstance(key, int):
                idx = indices_of(mask)
            else:
                idx = tuple(key)
                if any(idx[k] >= idx[k + 1] for k in range(len(idx) - 1)):
                    raise DomainError(f"exterior index {idx} must be strictly increasing")
            if idx and idx[-1] > N:
                raise DomainError(f"exterior index {idx} exceeds N={N}")
            if coeff:
                self.components[mask] = coeff

    @classmethod
    def _new(cls, N, zero, comps):
        obj = object.__new__(cls)
        obj.N, obj.zero, obj.components = N, zero, comps
        return obj

    def component(self, indices) -> WordPoly:
        return self.components.get(mask_of(indices), self.zero)

    def is_zero(self) -> bool:
        return not self.components

    def _check(self, other):
        if not isinstance(other, Form):
            raise DomainError("expected a Form")
        if other.N != self.N:
            raise DomainError(f"exterior size mismatch: {self.N} vs {other.N}")
        self.zero._check_compatible(other.zero)

    def __add__(self, other):
        self._check(other)
        comps = dict(self.components)
        for k, c in other.components.items():
            s = comps[k] + c if k in comps else c
            if s:
                comps[k] = s
            else:
                comps.pop(k, None)
        return Form._new(self.N, self.zero, comps)

    def __neg__(self):
        return Form._new(self.N, self.zero, {k: -c for k, c in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> Form:
        comps = {k: c.scale(s) for k, c in self.components.items()}
        return Form._new(self.N, self.zero, {k: c for k, c in comps.items() if c})

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.N == other.N and self.components == other.components

    def __xor__(self, other):
        return wedge(self, other)

    def __str__(self):
        if not self.components:
            return "0"
        parts = []
        for mask in sorted(self.components, key=lambda m: indices_of(m)):
            x = "^".join(f"x{i}" for i in indices_of(mask)) or "1"
            parts.append(f"[{self.components[mask]}]·{x}")
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "components": [
                {"indices": list(indices_of(m)), "coeff": self.components[m].to_json()}
                for m in sorted(self.components, key=lambda m: indices_of(m))
            ],
        }

    @classmethod
    def from_json(cls, data: dict, coeff_type=MatPoly, zero=None) -> Form:
        comps = {}
        for entry in data["components"]:
            comps[tuple(entry["indices"])] = coeff_type.from_json(entry["coeff"])
        if zero is None:
            if not comps:
                raise DomainError("cannot infer the coefficient ring of an empty form")
            zero = next(iter(comps.values())).scale(0)
        return cls(data["N"], zero, comps)


def wedge(f: Form, g: Form) -> Form:
    """Bilinear q-wedge product."""
    f._check(g)
    comps = {}
    for S, a in f.components.items():
        for T, b in g.components.items():
            if S & T:
                continue
            c = _crossings(S, T)
            prod = (a * b).shift(c, -1 if c % 2 else 1)
            key = S | T
            if key in comps:
                prod = comps[key] + prod
            if prod:
                comps[key] = prod
            else:
                comps.pop(key, None)
    return Form._new(f.N, f.zero, comps)


def wedge_all(forms) -> Form:
    forms = list(forms)
    if not forms:
        raise DomainError("need at least one form")
    return reduce(wedge, forms)


_ORIENTATIONS = ("row", "col", "row_lo", "row_hi", "col_lo", "col_hi")


def one_form(i: int, n: int, N: int | None = None, orientation: str = "row", r: int | None = None,
             mode=EXACT) -> Form:
    """A linear form with M_q(n) coefficients in Lambda_N (N <= n).

    ``row``: sum_j a[i,j] x_j; ``col``: sum_j a[j,i] x_j.  The ``_lo`` and
    ``_hi`` variants keep only j <= r or j > r respectively.
    """
    N = n if N is None else N
    mode = _as_mode(mode)
    if orientation not in _ORIENTATIONS:
        raise DomainError(f"unknown orientation {orientation!r}")
    if not 1 <= i <= n:
        raise DomainError(f"form index {i} outside [1, {n}]")
    if N > n:
        raise DomainError(f"exterior size {N} exceeds matrix size {n}")
    base, _, part = orientation.partition("_")
    if part:
        if r is None or not 0 <= r <= N:
            raise DomainError(f"truncation point r must lie in [0, {N}], got {r}")
        js = range(1, r + 1) if part == "lo" else range(r + 1, N + 1)
    else:
        js = range(1, N + 1)
    comps = {}
    for j in js:
        a, b = (i, j) if base == "row" else (j, i)
        comps[1 << (j - 1)] = MatPoly.generator(a, b, n, mode)
    return Form._new(N, MatPoly.zero(n, mode), comps)


def det_via_wedge(n: int, orientation: str = "row", mode=EXACT) -> MatPoly:
    """Coefficient of x_1 ^ ... ^ x_n in omega_1 ^ ... ^ omega_n."""
    if orientation not in ("row", "col"):
        raise DomainError(f"orientation must be 'row' or 'col', got {orientation!r}")
    vol = wedge_all(one_form(i, n, n, orientation, mode=mode) for i in range(1, n + 1))
    return vol.component(range(1, n + 1))


def pluecker_index_sets(n: int, r: int):
    """Yield (first, second, l(sigma)) with first = (1..r, i_{r+1} < ... < i_n)."""
    if not 0 <= r < n:
        raise DomainError(f"need 0 <= r < n, got r={r}, n={n}")
    universe = range(1, 2 * n + 1)
    head = tuple(range(1, r + 1))
    for rest in combinations(range(r + 1, 2 * n + 1), n - r):
        first = head + rest
        second = tuple(x for x in universe if x not in first)
        yield first, second, inversion_count(first + second)


def _minor_fn(rows, cols, size, mode, transposed):
    if transposed:
        return quantum_minor(cols, rows, size, mode)
    return quantum_minor(rows, cols, size, mode)


def pluecker_vanishing_sum(n: int, r: int, rowset=None, variant: str = "plus",
                           transposed: bool = False, colset=None, mode=EXACT) -> MatPoly:
    """The signed sum of products of maximal minors that must vanish.

    ``plus``: sum (-q)^l xi^R_first xi^R_second; ``minus``: sum (-q)^-l
    xi^R_second xi^R_first.  ``transposed`` swaps upper and lower indices,
    ``colset`` relabels 1..2n by an increasing tuple.
    """
    rowset = tuple(range(1, n + 1)) if rowset is None else tuple(rowset)
    colset = tuple(range(1, 2 * n + 1)) if colset is None else tuple(colset)
    if len(rowset) != n or len(colset) != 2 * n:
        raise DomainError(f"need {n} row labels and {2 * n} column labels")
    if variant not in ("plus", "minus"):
        raise DomainError(f"variant must be 'plus' or 'minus', got {variant!r}")
    mode = _as_mode(mode)
    size = max(2 * n, max(rowset), max(colset))
    total = MatPoly.zero(size, mode)
    for first, second, length in pluecker_index_sets(n, r):
        c1 = tuple(colset[k - 1] for k in first)
        c2 = tuple(colset[k - 1] for k in second)
        x1 = _minor_fn(rowset, c1, size, mode, transposed)
        x2 = _minor_fn(rowset, c2, size, mode, transposed)
        if variant == "plus":
            term = (x1 * x2).shift(length, -1 if length % 2 else 1)
        else:
            term = (x2 * x1).shift(-length, -1 if length % 2 else 1)
        total = total + term
    return total


def pluecker_exchange_sides(n: int, r: int, transposed: bool = False, mode=EXACT):
    """Both sides of the exchange identity between rows 1..n and n+1..2n."""
    mode = _as_mode(mode)
    size = 2 * n
    low = tuple(range(1, n + 1))
    high = tuple(range(n + 1, 2 * n + 1))
    lhs = MatPoly.zero(size, mode)
    rhs = MatPoly.zero(size, mode)
    for first, second, length in pluecker_index_sets(n, r):
        a = _minor_fn(high, first, size, mode, transposed)
        b = _minor_fn(low, second, size, mode, transposed)
        lhs = lhs + (a * b).shift(length, -1 if length % 2 else 1)
        k = n * n - length
        rhs = rhs + (b * a).shift(k, -1 if k % 2 else 1)
    k = n * n - 2 * n * r
    return lhs, rhs.shift(k, -1 if k % 2 else 1)


def pluecker_exchange_check(n: int, r: int, transposed: bool = False, mode=EXACT) -> bool:
    lhs, rhs = pluecker_exchange_sides(n, r, transposed, mode)
    return lhs == rhs

