"""The quantum matrix algebra M_q(n) and its determinantal elements.

Generators a[i,j] are packed into ints ``(i << 8) | j`` so that comparing two
packed generators is the lexicographic (row, col) comparison.  A word is
normal when its generators are nondecreasing; every element has a unique
expansion over normal words.  Out-of-order neighbours are rewritten by

    a[i,l] a[i,k] -> q^-1 a[i,k] a[i,l]                      (k < l)
    a[j,k] a[i,k] -> q^-1 a[i,k] a[j,k]                      (i < j)
    a[j,k] a[i,l] -> a[i,l] a[j,k]                           (i < j, k < l)
    a[j,l] a[i,k] -> a[i,k] a[j,l] - (q - q^-1) a[i,l] a[j,k]  (i < j, k < l)
"""

from __future__ import annotations

from itertools import combinations, permutations

from ._poly import WordPoly, add_into
from .errors import DomainError
from .qscalar import EXACT, LaurentScalar, _as_mode, inversion_count

__all__ = [
    "MatPoly",
    "gen",
    "normal_form",
    "is_normal",
    "mat_mul",
    "quantum_det",
    "quantum_minor",
    "cofactor",
    "laplace_check",
    "laplace_sides",
    "orthogonality_check",
    "orthogonality_sides",
    "generalized_expansion_check",
    "generalized_expansion_sides",
    "clear_cache",
]

_BITS = 8
_LOW = (1 << _BITS) - 1
MAX_SIZE = _LOW


def gen(i: int, j: int) -> int:
    """Packed code of the generator a[i,j]."""
    return (i << _BITS) | j


def unpack(g: int) -> tuple:
    return (g >> _BITS, g & _LOW)


def _swap(h: int, g: int):
    """Rewrite the out-of-order pair ``h g`` (h > g) as (x, y, exp, coeff) terms."""
    i1, c1 = h >> _BITS, h & _LOW
    i2, c2 = g >> _BITS, g & _LOW
    if i1 == i2 or c1 == c2:
        return ((g, h, -1, 1),)
    if c1 < c2:
        return ((g, h, 0, 1),)
    x = (i2 << _BITS) | c1
    y = (i1 << _BITS) | c2
    return ((g, h, 0, 1), (x, y, 1, -1), (x, y, -1, 1))


_INSERT_CACHE: dict = {}


def clear_cache():
    """Drop memoized normal forms (they are mode independent and exact)."""
    _INSERT_CACHE.clear()


def _insert(u: tuple, g: int):
    """Normal form of ``u * g`` for a normal word ``u``, as (word, exp, coeff) triples."""
    if not u or u[-1] <= g:
        return ((u + (g,), 0, 1),)
    key = (u, g)
    hit = _INSERT_CACHE.get(key)
    if hit is not None:
        return hit
    prefix = u[:-1]
    acc = {}
    for x, y, e, c in _swap(u[-1], g):
        for w1, e1, c1 in _insert(prefix, x):
            for w2, e2, c2 in _insert(w1, y):
                k = (w2, e + e1 + e2)
                v = acc.get(k, 0) + c * c1 * c2
                if v:
                    acc[k] = v
                else:
                    del acc[k]
    res = tuple((w, e, c) for (w, e), c in acc.items())
    _INSERT_CACHE[key] = res
    return res


def _nf_product(u: tuple, v: tuple):
    """Normal form of the concatenation of two normal words."""
    if not u or not v or u[-1] <= v[0]:
        return ((u + v, 0, 1),)
    cur = {(u, 0): 1}
    for g in v:
        nxt = {}
        for (w, e), c in cur.items():
            for w2, e2, c2 in _insert(w, g):
                k = (w2, e + e2)
                val = nxt.get(k, 0) + c * c2
                if val:
                    nxt[k] = val
                else:
                    del nxt[k]
        cur = nxt
    return [(w, e, c) for (w, e), c in cur.items()]


def _nf_word(word: tuple):
    """Normal form of an arbitrary packed word."""
    k = 1
    while k < len(word) and word[k - 1] <= word[k]:
        k += 1
    return _nf_product(word[:k], word[k:]) if k < len(word) else ((word, 0, 1),)


def _rewrite_reduce(word: tuple, leftmost: bool = True) -> dict:
    """Reference reducer: rewrite one adjacent out-of-order pair at a time.

    Independent of the insertion kernel; used to spot-check confluence.
    """
    out = {}
    work = {(word, 0): 1}
    while work:
        nxt = {}
        for (w, e), c in work.items():
            positions = [p for p in range(len(w) - 1) if w[p] > w[p + 1]]
            if not positions:
                add_into(out, ((w, e, c),), EXACT)
                continue
            p = positions[0] if leftmost else positions[-1]
            for x, y, e2, c2 in _swap(w[p], w[p + 1]):
                add_into(nxt, ((w[:p] + (x, y) + w[p + 2:], e + e2, c * c2),), EXACT)
        work = nxt
    return out


def is_normal(word) -> bool:
    """True when the (row, col) pairs of ``word`` are lexicographically nondecreasing."""
    word = [tuple(g) for g in word]
    return all(word[k] <= word[k + 1] for k in range(len(word) - 1))


class MatPoly(WordPoly):
    """An element of M_q(n): Laurent-weighted sum of normal words in a[i,j]."""

    __slots__ = ("n",)

    def __init__(self, n: int, terms=None, mode=EXACT):
        """``terms`` maps words (sequences of (i, j) pairs) to scalars; words are normalized."""
        _check_size(n)
        self.n = n
        self.mode = _as_mode(mode)
        self._data = {}
        if terms:
            for word, s in terms.items():
                packed = self._pack(word)
                if not isinstance(s, LaurentScalar):
                    s = LaurentScalar.const(s, self.mode)
                for e0, c0 in s.items():
                    add_into(self._data, _nf_word(packed), self.mode, e0, c0)

    def _pack(self, word) -> tuple:
        out = []
        for i, j in word:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise DomainError(f"generator a[{i},{j}] outside M_q({self.n})")
            out.append(gen(i, j))
        return tuple(out)

    @classmethod
    def _new(cls, n, mode, data):
        obj = object.__new__(cls)
        obj.n = n
        obj.mode = mode
        obj._data = data
        return obj

    def _like(self, data):
        return MatPoly._new(self.n, self.mode, data)

    def _check_compatible(self, other):
        super()._check_compatible(other)
        if other.n != self.n:
            raise DomainError(f"size mismatch: M_q({self.n}) vs M_q({other.n})")

    def _key(self):
        return (self.mode, self.n)

    def _mul_words(self, u, v):
        return _nf_product(u, v)

    def _private_word(self, word):
        return self._pack(word)

    def _public_word(self, w):
        return tuple(unpack(g) for g in w)

    def _word_text(self, w):
        return "".join(f"a[{g >> _BITS},{g & _LOW}]" for g in w) if w else "1"

    # constructors --------------------------------------------------------
    @classmethod
    def zero(cls, n, mode=EXACT):
        return cls._new(n, _as_mode(mode), {})

    @classmethod
    def one(cls, n, mode=EXACT):
        return cls._new(n, _as_mode(mode), {((), 0): 1})

    @classmethod
    def generator(cls, i, j, n, mode=EXACT):
        _check_size(n)
        if not (1 <= i <= n and 1 <= j <= n):
            raise DomainError(f"generator a[{i},{j}] outside M_q({n})")
        return cls._new(n, _as_mode(mode), {((gen(i, j),), 0): 1})

    def reduce(self, mode) -> MatPoly:
        """Image in the modular quotient (from exact mode)."""
        mode = _as_mode(mode)
        if mode == self.mode:
            return self
        if not self.mode.is_exact:
            raise DomainError(f"cannot reinterpret a {self.mode} polynomial in {mode}")
        acc = {}
        add_into(acc, self.items(), mode)
        return MatPoly._new(self.n, mode, acc)

    def embed(self, n: int) -> MatPoly:
        """The same element viewed in a larger M_q(n)."""
        if n < self.n:
            raise DomainError("can only embed into a larger algebra")
        return MatPoly._new(n, self.mode, dict(self._data))

    def specialize(self, n: int, values: dict) -> MatPoly:
        """Apply the homomorphism fixing a[i,j] except ``values[(i,j)] in {0, 1}``.

        The caller guarantees the assignment respects the defining relations;
        the image is read in M_q(n).  Subwords of normal words stay normal.
        """
        acc = {}
        for (w, e), c in self._data.items():
            out = []
            for g in w:
                v = values.get(unpack(g))
                if v is None:
                    i, j = unpack(g)
                    if i > n or j > n:
                        raise DomainError(f"a[{i},{j}] survives outside M_q({n})")
                    out.append(g)
                elif v == 0:
                    break
                elif v != 1:
                    raise DomainError("specialization values must be 0 or 1")
            else:
                add_into(acc, ((tuple(out), e, c),), self.mode)
        return MatPoly._new(n, self.mode, acc)

    def to_json(self) -> dict:
        return {"n": self.n, "modulus": self.mode.modulus, "terms": self._terms_json()}

    @classmethod
    def from_json(cls, data: dict) -> MatPoly:
        mode = _as_mode(data.get("modulus", 0))
        terms = {}
        for t in data["terms"]:
            terms[tuple(tuple(g) for g in t["word"])] = LaurentScalar.from_json(t["coeff"], mode)
        return cls(data["n"], terms, mode)


def _check_size(n):
    if not isinstance(n, int) or not 1 <= n <= MAX_SIZE:
        raise DomainError(f"matrix size must be an integer in [1, {MAX_SIZE}], got {n!r}")


def normal_form(word, n: int | None = None, mode=EXACT, strategy: str = "insert") -> MatPoly:
    """Normal form of a word given as a sequence of (row, col) pairs.

    ``strategy`` selects the insertion kernel (default) or the plain
    leftmost/rightmost single-step rewriter; all three must agree.
    """
    word = [tuple(g) for g in word]
    if n is None:
        n = max((max(g) for g in word), default=1)
    mode = _as_mode(mode)
    probe = MatPoly.zero(n, mode)
    packed = probe._pack(word)
    if strategy == "insert":
        items = _nf_word(packed)
    elif strategy in ("leftmost", "rightmost"):
        items = [(w, e, c) for (w, e), c in _rewrite_reduce(packed, strategy == "leftmost").items()]
    else:
        raise DomainError(f"unknown strategy {strategy!r}")
    acc = {}
    add_into(acc, items, mode)
    return MatPoly._new(n, mode, acc)


def mat_mul(p: MatPoly, r: MatPoly) -> MatPoly:
    """Product in M_q(n), renormalized."""
    if not isinstance(p, MatPoly) or not isinstance(r, MatPoly):
        raise DomainError("mat_mul expects two MatPoly operands")
    return p * r


def _sign_weight(k: int):
    # (-q)^k as a flattened (exp, coeff)
    return k, (-1 if k % 2 else 1)


def _check_tuple(t, n, what):
    t = tuple(t)
    if not t:
        raise DomainError(f"{what} must be nonempty")
    if any(not 1 <= x <= n for x in t):
        raise DomainError(f"{what} {t} has entries outside [1, {n}]")
    if any(t[k] >= t[k + 1] for k in range(len(t) - 1)):
        raise DomainError(f"{what} {t} must be strictly increasing")
    return t


def _perm_sum(rows, cols, n, mode, orientation):
    # sum over sigma of (-q)^l(sigma) a[rows[k], cols[sigma(k)]] (row form)
    # or a[rows[sigma(k)], cols[k]] (col form)
    acc = {}
    r = len(rows)
    for sigma in permutations(range(r)):
        e, c = _sign_weight(inversion_count(sigma))
        if orientation == "row":
            word = tuple(gen(rows[k], cols[sigma[k]]) for k in range(r))
        elif orientation == "col":
            word = tuple(gen(rows[sigma[k]], cols[k]) for k in range(r))
        else:
            raise DomainError(f"orientation must be 'row' or 'col', got {orientation!r}")
        add_into(acc, _nf_word(word), mode, e, c)
    return MatPoly._new(n, mode, acc)


def quantum_det(n: int, orientation: str = "row", mode=EXACT) -> MatPoly:
    """det_q of the n x n generic quantum matrix, as a row or column permutation sum."""
    _check_size(n)
    idx = tuple(range(1, n + 1))
    return _perm_sum(idx, idx, n, _as_mode(mode), orientation)


def quantum_minor(rows, cols, n: int, mode=EXACT, orientation: str = "row") -> MatPoly:
    """The quantum minor with row tuple ``rows`` and column tuple ``cols``."""
    _check_size(n)
    rows = _check_tuple(rows, n, "row tuple")
    cols = _check_tuple(cols, n, "column tuple")
    if len(rows) != len(cols):
        raise DomainError(f"row and column tuples differ in size: {rows} vs {cols}")
    return _perm_sum(rows, cols, n, _as_mode(mode), orientation)


def _complement(t, n):
    s = set(t)
    return tuple(x for x in range(1, n + 1) if x not in s)


def cofactor(i: int, j: int, n: int, mode=EXACT) -> MatPoly:
    """Delta_q(ij): the minor deleting row i and column j."""
    if n < 2:
        raise DomainError("cofactors need n >= 2")
    if not (1 <= i <= n and 1 <= j <= n):
        raise DomainError(f"({i}, {j}) outside a {n} x {n} matrix")
    return quantum_minor(_complement((i,), n), _complement((j,), n), n, mode)


def laplace_sides(n: int, rows, side: str = "row", mode=EXACT):
    """(expansion along the index set ``rows``, det_q) for the Laplace identity.

    On the column side the roles of upper and lower minor indices swap.
    """
    _check_size(n)
    I = _check_tuple(rows, n, "index tuple")
    if len(I) == n:
        raise DomainError("index tuple must be a proper subset")
    if side not in ("row", "col"):
        raise DomainError(f"side must be 'row' or 'col', got {side!r}")
    mode = _as_mode(mode)
    Ic = _complement(I, n)
    total = MatPoly.zero(n, mode)
    for J in combinations(range(1, n + 1), len(I)):
        Jc = _complement(J, n)
        if side == "row":
            term = quantum_minor(I, J, n, mode) * quantum_minor(Ic, Jc, n, mode)
        else:
            term = quantum_minor(J, I, n, mode) * quantum_minor(Jc, Ic, n, mode)
        e, c = _sign_weight(sum(J) - sum(I))
        total = total + term.shift(e, c)
    return total, quantum_det(n, mode=mode)


def laplace_check(n: int, rows, side: str = "row", mode=EXACT) -> bool:
    lhs, rhs = laplace_sides(n, rows, side, mode)
    return lhs == rhs


def orthogonality_sides(n: int, i: int, k: int, side: str = "row", mode=EXACT):
    """(sum_j (-q)^(j-i) a_ij Delta(kj), delta_ik det_q) or its column analogue."""
    _check_size(n)
    if not (1 <= i <= n and 1 <= k <= n):
        raise DomainError(f"indices ({i}, {k}) outside [1, {n}]")
    mode = _as_mode(mode)
    if n == 1:
        lhs = MatPoly.generator(1, 1, 1, mode)
    else:
        lhs = MatPoly.zero(n, mode)
        for j in range(1, n + 1):
            if side == "row":
                term = MatPoly.generator(i, j, n, mode) * cofactor(k, j, n, mode)
            elif side == "col":
                term = MatPoly.generator(j, i, n, mode) * cofactor(j, k, n, mode)
            else:
                raise DomainError(f"side must be 'row' or 'col', got {side!r}")
            e, c = _sign_weight(j - i)
            lhs = lhs + term.shift(e, c)
    rhs = quantum_det(n, mode=mode) if i == k else MatPoly.zero(n, mode)
    return lhs, rhs


def orthogonality_check(n: int, i: int, k: int, side: str = "row", mode=EXACT) -> bool:
    lhs, rhs = orthogonality_sides(n, i, k, side, mode)
    return lhs == rhs


def generalized_expansion_sides(n: int, seq, side: str = "row", mode=EXACT):
    """Permutation sum with a prescribed row (or column) sequence, and its predicted value."""
    _check_size(n)
    seq = tuple(seq)
    if len(seq) != n or any(not 1 <= x <= n for x in seq):
        raise DomainError(f"need {n} indices in [1, {n}], got {seq}")
    if side not in ("row", "col"):
        raise DomainError(f"side must be 'row' or 'col', got {side!r}")
    mode = _as_mode(mode)
    acc = {}
    for sigma in permutations(range(1, n + 1)):
        e, c = _sign_weight(inversion_count(sigma))
        if side == "row":
            word = tuple(gen(seq[t], sigma[t]) for t in range(n))
        else:
            word = tuple(gen(sigma[t], seq[t]) for t in range(n))
        add_into(acc, _nf_word(word), mode, e, c)
    lhs = MatPoly._new(n, mode, acc)
    if len(set(seq)) < n:
        rhs = MatPoly.zero(n, mode)
    else:
        e, c = _sign_weight(inversion_count(seq))
        rhs = quantum_det(n, mode=mode).shift(e, c)
    return lhs, rhs


def generalized_expansion_check(n: int, seq, side: str = "row", mode=EXACT) -> bool:
    lhs, rhs = generalized_expansion_sides(n, seq, side, mode)
    return lhs == rhs
