"""Quantum Pfaffians over free generators b[i,j] and their M_q(2n) images.

Free generators are index blocks (pairs here, m-tuples in :mod:`qpf.qhyper`);
words of blocks are never reduced.  Positional exponents are always read off
the ranks of indices inside the ambient index set, which is what lets the
recursion run on arbitrary subsets.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

from ._poly import WordPoly, add_into
from .errors import DomainError
from .qforms import Form, wedge_all
from .qmatrix import MatPoly, quantum_det, quantum_minor
from .qscalar import EXACT, LaurentScalar, _as_mode, inversion_count, q_factorial_factor

__all__ = [
    "BPoly",
    "enumerate_matchings",
    "matching_length",
    "pf_recursive",
    "pf_matchings",
    "pf_lemma_sum",
    "block_partitions",
    "partition_length",
    "block_lemma_sum",
    "block_image",
    "substitute_words",
    "two_form",
    "pfaffian_two_form_check",
    "substitute_b",
    "b_relation",
    "b_relation_check",
    "pf_det_sides",
    "pf_det_check",
    "odd_pf_det_sides",
    "odd_pf_det_check",
    "padding_values",
]


class BPoly(WordPoly):
    """Element of the free algebra on block generators b[i1,...,im]."""

    __slots__ = ()

    def __init__(self, terms=None, mode=EXACT):
        self.mode = _as_mode(mode)
        self._data = {}
        for word, s in (terms or {}).items():
            word = tuple(_check_block(b) for b in word)
            if not isinstance(s, LaurentScalar):
                s = LaurentScalar.const(s, self.mode)
            for e, c in s.items():
                add_into(self._data, ((word, e, c),), self.mode)

    @classmethod
    def _new(cls, mode, data):
        obj = object.__new__(cls)
        obj.mode = mode
        obj._data = data
        return obj

    def _like(self, data):
        return BPoly._new(self.mode, data)

    def _mul_words(self, u, v):
        return ((u + v, 0, 1),)

    def _private_word(self, word):
        return tuple(tuple(b) for b in word)

    def _word_text(self, w):
        return "".join("b[" + ",".join(map(str, b)) + "]" for b in w) if w else "1"

    @classmethod
    def zero(cls, mode=EXACT):
        return cls._new(_as_mode(mode), {})

    @classmethod
    def one(cls, mode=EXACT):
        return cls._new(_as_mode(mode), {((), 0): 1})

    @classmethod
    def generator(cls, *block, mode=EXACT):
        if len(block) == 1 and not isinstance(block[0], int):
            block = tuple(block[0])
        return cls._new(_as_mode(mode), {((_check_block(block),), 0): 1})

    def reduce(self, mode) -> BPoly:
        mode = _as_mode(mode)
        if mode == self.mode:
            return self
        if not self.mode.is_exact:
            raise DomainError(f"cannot reinterpret a {self.mode} polynomial in {mode}")
        acc = {}
        add_into(acc, self.items(), mode)
        return BPoly._new(mode, acc)

    def indices(self) -> set:
        return {i for w, _ in self._data for b in w for i in b}

    def to_json(self) -> dict:
        return {"modulus": self.mode.modulus, "terms": self._terms_json()}

    @classmethod
    def from_json(cls, data: dict) -> BPoly:
        mode = _as_mode(data.get("modulus", 0))
        terms = {}
        for t in data["terms"]:
            terms[tuple(tuple(b) for b in t["word"])] = LaurentScalar.from_json(t["coeff"], mode)
        return cls(terms, mode)


def _check_block(b) -> tuple:
    b = tuple(b)
    if len(b) < 2 or any(b[k] >= b[k + 1] for k in range(len(b) - 1)) or b[0] < 1:
        raise DomainError(f"generator indices {b} must be positive and strictly increasing")
    return b


def _check_set(S, m: int) -> tuple:
    S = tuple(S)
    if any(S[k] >= S[k + 1] for k in range(len(S) - 1)):
        raise DomainError(f"index set {S} must be strictly increasing")
    if len(S) % m:
        raise DomainError(f"index set of size {len(S)} cannot be split into blocks of {m}")
    return S


# ---------------------------------------------------------------------------
# block partitions (pairs are the m = 2 case)

def block_partitions(S, m: int, canonical: bool = True) -> list:
    """All partitions of ``S`` into increasing m-blocks.

    Canonical partitions list blocks by increasing first element; ordered
    ones range over every arrangement of the blocks.
    """
    S = _check_set(S, m)

    def rec(rest):
        if not rest:
            yield ()
            return
        head, tail = rest[0], rest[1:]
        for others in combinations(tail, m - 1):
            block = (head,) + others
            left = tuple(x for x in tail if x not in others)
            for more in rec(left):
                yield (block,) + more

    canon = list(rec(S))
    if canonical:
        return canon
    return [tuple(p[k] for k in order) for p in canon for order in permutations(range(len(p)))]


def partition_length(p, S) -> int:
    """Inversions of the concatenated blocks, read as ranks inside ``S``."""
    S = tuple(S)
    flat = [i for b in p for i in b]
    if sorted(flat) != sorted(S) or len(flat) != len(S):
        raise DomainError(f"{p} does not partition {S}")
    for b in p:
        _check_block(b)
    rank = {x: k for k, x in enumerate(sorted(S), 1)}
    return inversion_count([rank[i] for i in flat])


def enumerate_matchings(S, canonical: bool = True) -> list:
    """Perfect matchings of ``S`` into increasing pairs (set Pi, or Pi' when not canonical)."""
    return block_partitions(S, 2, canonical)


def matching_length(matching, S) -> int:
    for b in matching:
        if len(b) != 2:
            raise DomainError(f"{b} is not a pair")
    return partition_length(matching, S)


def _weighted_sum(parts, S, mode):
    acc = {}
    for p in parts:
        k = partition_length(p, S)
        add_into(acc, ((tuple(p), k, -1 if k % 2 else 1),), mode)
    return BPoly._new(mode, acc)


@lru_cache(maxsize=None)
def _block_recursive(S: tuple, m: int, mode) -> BPoly:
    if not S:
        return BPoly.one(mode)
    rank = {x: k for k, x in enumerate(S, 1)}
    head, tail = S[0], S[1:]
    acc = {}
    for others in combinations(tail, m - 1):
        block = (head,) + others
        k = sum(rank[i] - t for t, i in enumerate(block, 1) if t >= 2)
        rest = _block_recursive(tuple(x for x in tail if x not in others), m, mode)
        add_into(acc, (((block,) + w, e, c) for w, e, c in rest.items()), mode, k,
                 -1 if k % 2 else 1)
    return BPoly._new(mode, acc)


def pf_recursive(S, mode=EXACT) -> BPoly:
    """The q-Pfaffian [S] by expansion along the smallest index."""
    S = _check_set(S, 2)
    if not S:
        raise DomainError("index set must be nonempty")
    return _block_recursive(S, 2, _as_mode(mode))


def pf_matchings(S, canonical: bool = True, mode=EXACT) -> BPoly:
    """Sum of (-q)^l(pi) b_pi over canonical (Pi) or ordered (Pi') matchings."""
    S = _check_set(S, 2)
    return _weighted_sum(enumerate_matchings(S, canonical), S, _as_mode(mode))


def block_lemma_sum(S, m: int, mode=EXACT) -> BPoly:
    """Expansion over every first block I: sum (-q)^(sum_t rank(i_t) - t) [I] [S minus I]."""
    S = _check_set(S, m)
    mode = _as_mode(mode)
    rank = {x: k for k, x in enumerate(S, 1)}
    acc = {}
    for block in combinations(S, m):
        k = sum(rank[i] - t for t, i in enumerate(block, 1))
        rest = _block_recursive(tuple(x for x in S if x not in block), m, mode)
        add_into(acc, (((block,) + w, e, c) for w, e, c in rest.items()), mode, k,
                 -1 if k % 2 else 1)
    return BPoly._new(mode, acc)


def pf_lemma_sum(S, mode=EXACT) -> BPoly:
    """sum_{i<j} (-q)^(i+j-3) [i,j] [S minus {i,j}] with rank exponents."""
    return block_lemma_sum(S, 2, mode)


def two_form(N: int, m: int = 2, mode=EXACT) -> Form:
    """sum over increasing m-tuples I of b_I x_I, with free coefficients."""
    mode = _as_mode(mode)
    comps = {I: BPoly.generator(I, mode=mode) for I in combinations(range(1, N + 1), m)}
    return Form(N, BPoly.zero(mode), comps)


def pfaffian_two_form_check(n: int, mode=EXACT) -> bool:
    """Volume of the free two-form, and its relation to the Pfaffian.

    The top component of the n-fold wedge must equal the ordered matching
    sum; that sum minus (sum_sigma q^(4 l(sigma))) [1..2n] must vanish or be
    certified as a member of the ideal of Pfaffian relations.
    """
    if n < 1:
        raise DomainError("n must be positive")
    mode = _as_mode(mode)
    S = tuple(range(1, 2 * n + 1))
    omega = two_form(2 * n, 2, mode)
    vol = wedge_all([omega] * n).component(S)
    ordered = pf_matchings(S, canonical=False, mode=mode)
    if vol != ordered:
        return False
    gap = ordered - pf_recursive(S, mode).scale(q_factorial_factor(n, 4, mode))
    if gap.is_zero():
        return True
    from .idealcheck import membership, relation_generators

    return membership(gap, relation_generators(2 * n, 2, mode)).member


# ---------------------------------------------------------------------------
# substitution into M_q

def block_image(block, m: int, nblocks: int, variant: str = "row", mode=EXACT,
                size: int | None = None) -> MatPoly:
    """sum_s xi^{rows of block s}_{block} (row) or xi^{block}_{cols of block s} (col)."""
    size = m * nblocks if size is None else size
    if max(block) > size:
        raise DomainError(f"generator index {max(block)} exceeds {size}")
    mode = _as_mode(mode)
    total = MatPoly.zero(size, mode)
    for s in range(1, nblocks + 1):
        band = tuple(range(m * (s - 1) + 1, m * s + 1))
        if variant == "row":
            total = total + quantum_minor(band, block, size, mode)
        elif variant == "col":
            total = total + quantum_minor(block, band, size, mode)
        else:
            raise DomainError(f"variant must be 'row' or 'col', got {variant!r}")
    return total


def _substitute_chunk(items, images, size, mode):
    acc = {}
    for w, e, c in items:
        prod = MatPoly.one(size, mode)
        for b in w:
            prod = prod * images[b]
            if prod.is_zero():
                break
        add_into(acc, prod.items(), mode, e, c)
    return acc


def substitute_words(p: WordPoly, image, size: int, workers: int = 1) -> MatPoly:
    """Apply the algebra map sending each generator block to ``image(block)``.

    With ``workers > 1`` the words are split across worker processes and the
    partial sums merged; the result does not depend on the split.
    """
    mode = p.mode
    items = sorted(p.items(), key=lambda t: (t[0], t[1]))
    images = {b: image(b) for w, _, _ in items for b in w}
    if workers <= 1 or len(items) < 2:
        return MatPoly._new(size, mode, _substitute_chunk(items, images, size, mode))
    from concurrent.futures import ProcessPoolExecutor

    chunks = [items[k::workers] for k in range(workers)]
    acc = {}
    with ProcessPoolExecutor(workers) as pool:
        futures = [pool.submit(_substitute_chunk, ch, images, size, mode) for ch in chunks if ch]
        for f in futures:
            add_into(acc, ((w, e, c) for (w, e), c in f.result().items()), mode)
    return MatPoly._new(size, mode, acc)


def substitute_b(p: BPoly, n: int, variant: str = "row") -> MatPoly:
    """Image of ``p`` under b[i,j] -> sum_m xi^{2m-1,2m}_{i,j} (or its column form) in M_q(2n)."""
    if n < 1:
        raise DomainError("n must be positive")
    for w, _, _ in p.items():
        for b in w:
            if len(b) != 2:
                raise DomainError(f"{b} is not a Pfaffian generator")
            if b[1] > 2 * n:
                raise DomainError(f"b{list(b)} has an index beyond {2 * n}")
    return substitute_words(p, lambda b: block_image(b, 2, n, variant, p.mode), 2 * n)


def b_relation(i, j, k, l, mode=EXACT) -> BPoly:
    """LHS - RHS of the quadratic relation among b's on indices i < j < k < l."""
    if not i < j < k < l:
        raise DomainError("relation indices must be strictly increasing")
    mode = _as_mode(mode)
    b = lambda x, y: BPoly.generator(x, y, mode=mode)  # noqa: E731
    lhs = b(i, j) * b(k, l) - (b(i, k) * b(j, l)).shift(1) + (b(i, l) * b(j, k)).shift(2)
    rhs = b(k, l) * b(i, j) - (b(j, l) * b(i, k)).shift(-1) + (b(j, k) * b(i, l)).shift(-2)
    return lhs - rhs


def b_relation_check(n: int, variant: str = "row", mode=EXACT) -> bool:
    """Every quadruple i<j<k<l <= 2n satisfies the b-relation after substitution."""
    if 2 * n < 4:
        raise DomainError("the relation needs at least four indices")
    return all(
        substitute_b(b_relation(*quad, mode=mode), n, variant).is_zero()
        for quad in combinations(range(1, 2 * n + 1), 4)
    )


def pf_det_sides(n: int, variant: str = "row", mode=EXACT):
    """(substituted [1..2n], det_q of size 2n)."""
    if n < 1:
        raise DomainError("n must be positive")
    mode = _as_mode(mode)
    S = tuple(range(1, 2 * n + 1))
    return substitute_b(pf_recursive(S, mode), n, variant), quantum_det(2 * n, mode=mode)


def pf_det_check(n: int, variant: str = "row", mode=EXACT) -> bool:
    lhs, rhs = pf_det_sides(n, variant, mode)
    return lhs == rhs


def padding_values(full: int, keep: int) -> dict:
    """a[p,j] = a[j,p] = 0 (j != p) and a[p,p] = 1 for keep < p <= full."""
    values = {}
    for p in range(keep + 1, full + 1):
        for j in range(1, full + 1):
            values[(p, j)] = values[(j, p)] = 0
        values[(p, p)] = 1
    return values


def padded_block_image(block, m: int, nblocks: int, keep: int, variant: str = "row",
                       mode=EXACT) -> MatPoly:
    """Block image in M_q(m * nblocks), specialized onto M_q(keep) by padding."""
    full = m * nblocks
    img = block_image(block, m, nblocks, variant, mode)
    return img.specialize(keep, padding_values(full, keep))


def odd_pf_det_sides(n: int, variant: str = "row", mode=EXACT):
    """(order-(n+1) Pfaffian of the padded size-(2n+2) matrix, det_q of size 2n+1)."""
    if n < 1:
        raise DomainError("n must be positive")
    mode = _as_mode(mode)
    S = tuple(range(1, 2 * n + 3))
    pf = pf_recursive(S, mode)
    lhs = substitute_words(
        pf, lambda b: padded_block_image(b, 2, n + 1, 2 * n + 1, variant, mode), 2 * n + 1
    )
    return lhs, quantum_det(2 * n + 1, mode=mode)


def odd_pf_det_check(n: int, variant: str = "row", mode=EXACT) -> bool:
    lhs, rhs = odd_pf_det_sides(n, variant, mode)
    return lhs == rhs
