"""Quantum hyper-Pfaffians on m-block generators, m = 2k.

The determinant identities only hold when q^(4k(k-1)) = 1, so for k >= 2 the
substitution refuses to run outside that modular quotient unless explicitly
told to (which is how generic counterexamples are exhibited).
"""

from __future__ import annotations

from itertools import combinations
from math import comb

from ._poly import add_into
from .errors import DomainError, ModeError
from .qforms import wedge_all
from .qmatrix import MatPoly, quantum_det
from .qpfaff import (
    BPoly,
    _block_recursive,
    _check_set,
    _weighted_sum,
    block_image,
    block_lemma_sum,
    block_partitions,
    padding_values,
    partition_length,
    substitute_words,
    two_form,
)
from .qscalar import EXACT, LaurentScalar, ScalarMode, _as_mode, q_factorial_factor

__all__ = [
    "HPoly",
    "modulus_for",
    "mode_for",
    "enumerate_block_partitions",
    "block_partition_length",
    "hyperpf_recursive",
    "hyperpf_matchings",
    "hyper_lemma_sum",
    "hyper_relation",
    "hyper_substitute",
    "hyper_relation_check",
    "hyper_det_sides",
    "hyper_det_check",
    "hyper_padding_sides",
    "hyper_padding_check",
    "hyper_volume_check",
    "hyper_ordered_image_check",
    "hyper_lemma_image_check",
]

# the free algebra is the same object for pairs and for m-blocks
HPoly = BPoly


def _check_m(m: int) -> int:
    if not isinstance(m, int) or m < 2 or m % 2:
        raise DomainError(f"block size m must be a positive even integer, got {m!r}")
    return m // 2


def modulus_for(k: int) -> int:
    """8 * C(k, 2); zero means no condition (exact arithmetic)."""
    if k < 1:
        raise DomainError("k must be positive")
    return 8 * comb(k, 2)


def mode_for(m: int) -> ScalarMode:
    return ScalarMode(modulus_for(_check_m(m)))


def enumerate_block_partitions(S, m: int, canonical: bool = True) -> list:
    _check_m(m)
    return block_partitions(S, m, canonical)


def block_partition_length(p, S) -> int:
    return partition_length(p, S)


def hyperpf_recursive(S, m: int, mode=EXACT) -> BPoly:
    """[S]_m expanded along the block containing min(S)."""
    _check_m(m)
    S = _check_set(S, m)
    if not S:
        raise DomainError("index set must be nonempty")
    return _block_recursive(S, m, _as_mode(mode))


def hyperpf_matchings(S, m: int, canonical: bool = True, mode=EXACT) -> BPoly:
    _check_m(m)
    S = _check_set(S, m)
    return _weighted_sum(block_partitions(S, m, canonical), S, _as_mode(mode))


def hyper_lemma_sum(S, m: int, mode=EXACT) -> BPoly:
    _check_m(m)
    return block_lemma_sum(S, m, mode)


def hyper_relation(S, m: int, mode=EXACT) -> BPoly:
    """LHS - RHS of the quadratic relation on a 2m-element index set."""
    _check_m(m)
    S = _check_set(S, m)
    if len(S) != 2 * m:
        raise DomainError(f"relation needs exactly {2 * m} indices, got {len(S)}")
    mode = _as_mode(mode)
    acc = {}
    for u, v in block_partitions(S, m, True):
        k = partition_length((u, v), S)
        sign = -1 if k % 2 else 1
        add_into(acc, (((u, v), k, sign), ((v, u), -k, -sign)), mode)
    return BPoly._new(mode, acc)


def _require_mode(mode, m: int, allow_generic: bool):
    want = mode_for(m)
    if mode != want and not allow_generic:
        raise ModeError(f"block size {m} requires arithmetic {want}, got {mode}")


def _check_indices(p: BPoly, m: int, top: int):
    for w, _, _ in p.items():
        for b in w:
            if len(b) != m:
                raise DomainError(f"generator {b} does not have {m} indices")
            if b[-1] > top:
                raise DomainError(f"generator {b} has an index beyond {top}")


def hyper_substitute(p: BPoly, m: int, n: int, variant: str = "row", mode=None,
                     allow_generic: bool = False, workers: int = 1) -> MatPoly:
    """b[I] -> sum_s xi^{m(s-1)+1..ms}_I (row) or xi^I_{m(s-1)+1..ms} (col) in M_q(mn)."""
    _check_m(m)
    if n < 1:
        raise DomainError("n must be positive")
    if mode is not None:
        p = p.reduce(mode)
    _require_mode(p.mode, m, allow_generic)
    _check_indices(p, m, m * n)
    return substitute_words(p, lambda b: block_image(b, m, n, variant, p.mode), m * n, workers)


def hyper_relation_check(m: int, n: int, variant: str = "row", mode=None,
                         allow_generic: bool = False, workers: int = 1) -> bool:
    """The relation holds in the image for every 2m-subset of 1..mn."""
    if n < 2:
        raise DomainError("need mn >= 2m")
    mode = mode_for(m) if mode is None else _as_mode(mode)
    return all(
        hyper_substitute(hyper_relation(S, m, mode), m, n, variant,
                         allow_generic=allow_generic, workers=workers).is_zero()
        for S in combinations(range(1, m * n + 1), 2 * m)
    )


def hyper_det_sides(m: int, n: int, variant: str = "row", mode=None,
                    allow_generic: bool = False, workers: int = 1):
    """(substituted [1..mn]_m, det_q of size mn), both in the same scalar mode."""
    mode = mode_for(m) if mode is None else _as_mode(mode)
    pf = hyperpf_recursive(tuple(range(1, m * n + 1)), m, mode)
    lhs = hyper_substitute(pf, m, n, variant, allow_generic=allow_generic, workers=workers)
    return lhs, quantum_det(m * n, mode=mode)


def hyper_det_check(m: int, n: int, variant: str = "row", mode=None,
                    allow_generic: bool = False, workers: int = 1) -> bool:
    lhs, rhs = hyper_det_sides(m, n, variant, mode, allow_generic, workers)
    return lhs == rhs


def hyper_padding_sides(m: int, n: int, l: int, variant: str = "row", mode=None,
                        workers: int = 1):
    """(padded [1..m(n+1)]_m specialized to size mn+l, det_q of size mn+l)."""
    _check_m(m)
    if not 1 <= l <= m - 1:
        raise DomainError(f"l must lie in [1, {m - 1}], got {l}")
    if n < 1:
        raise DomainError("n must be positive")
    mode = mode_for(m) if mode is None else _as_mode(mode)
    _require_mode(mode, m, False)
    full, keep = m * (n + 1), m * n + l
    values = padding_values(full, keep)
    pf = hyperpf_recursive(tuple(range(1, full + 1)), m, mode)

    def image(b):
        return block_image(b, m, n + 1, variant, mode).specialize(keep, values)

    return substitute_words(pf, image, keep, workers), quantum_det(keep, mode=mode)


def hyper_padding_check(m: int, n: int, l: int, variant: str = "row", mode=None,
                        workers: int = 1) -> bool:
    lhs, rhs = hyper_padding_sides(m, n, l, variant, mode, workers)
    return lhs == rhs


def hyper_volume_check(m: int, n: int, mode=None) -> bool:
    """The full coefficient of the n-fold wedge of sum b_I x_I is the ordered partition sum."""
    _check_m(m)
    mode = mode_for(m) if mode is None else _as_mode(mode)
    S = tuple(range(1, m * n + 1))
    vol = wedge_all([two_form(m * n, m, mode)] * n)
    others = [c for key, c in vol.components.items() if key != (1 << (m * n)) - 1]
    return not others and vol.component(S) == hyperpf_matchings(S, m, False, mode)


def hyper_ordered_image_check(m: int, n: int, variant: str = "row", mode=None,
                              workers: int = 1) -> bool:
    """Image of the ordered partition sum equals (sum_sigma q^(m^2 l)) det_q."""
    mode = mode_for(m) if mode is None else _as_mode(mode)
    S = tuple(range(1, m * n + 1))
    lhs = hyper_substitute(hyperpf_matchings(S, m, False, mode), m, n, variant, workers=workers)
    return lhs == quantum_det(m * n, mode=mode).scale(q_factorial_factor(n, m * m, mode))


def hyper_lemma_image_check(m: int, n: int, variant: str = "row", mode=None,
                            workers: int = 1) -> bool:
    """Image of the first-block expansion equals (sum_i q^(m^2 i)) det_q."""
    mode = mode_for(m) if mode is None else _as_mode(mode)
    S = tuple(range(1, m * n + 1))
    lhs = hyper_substitute(hyper_lemma_sum(S, m, mode), m, n, variant, workers=workers)
    geom = LaurentScalar({m * m * i: 1 for i in range(n)}, mode)
    return lhs == quantum_det(m * n, mode=mode).scale(geom)
