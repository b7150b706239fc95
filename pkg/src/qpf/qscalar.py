"""Exact Laurent polynomials in a formal parameter ``q``.

Scalars live in Q[q, q^-1], or in the quotient Q[q]/(q^M - 1) when a
modular :class:`ScalarMode` is selected.  Coefficients are Python ints
whenever possible and :class:`fractions.Fraction` otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import DomainError, InvalidPermutationError, ModeError

__all__ = [
    "ScalarMode",
    "EXACT",
    "LaurentScalar",
    "scalar_arith",
    "inversion_count",
    "q_factorial_factor",
    "neg_q_power",
]


@dataclass(frozen=True)
class ScalarMode:
    """Exact arithmetic (``modulus == 0``) or arithmetic modulo ``q^modulus - 1``."""

    modulus: int = 0

    def __post_init__(self):
        if not isinstance(self.modulus, int) or self.modulus < 0:
            raise ModeError(f"modulus must be a nonnegative integer, got {self.modulus!r}")

    @classmethod
    def exact(cls) -> ScalarMode:
        return cls(0)

    @classmethod
    def modular(cls, modulus: int) -> ScalarMode:
        # q^0 = 1 is vacuous, so M = 0 collapses to exact mode
        return cls(modulus)

    @property
    def is_exact(self) -> bool:
        return self.modulus == 0

    def fold(self, exp: int) -> int:
        return exp % self.modulus if self.modulus else exp

    def __str__(self):
        return "exact" if self.is_exact else f"mod q^{self.modulus}-1"


EXACT = ScalarMode(0)


def _canon_coeff(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        return _canon_coeff(Fraction(c.numerator, c.denominator))
    raise TypeError(f"coefficients must be rational, got {type(c).__name__}")


def _as_mode(mode) -> ScalarMode:
    if mode is None:
        return EXACT
    if isinstance(mode, ScalarMode):
        return mode
    if isinstance(mode, int):
        return ScalarMode(mode)
    raise ModeError(f"not a scalar mode: {mode!r}")


class LaurentScalar:
    """An immutable element of Q[q, q^-1] (or of its modular quotient).

    >>> q = LaurentScalar.q()
    >>> str((1 + q) * (1 - q))
    '1 - q^2'
    """

    __slots__ = ("_terms", "mode")

    def __init__(self, terms=None, mode=EXACT):
        mode = _as_mode(mode)
        acc = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                e = mode.fold(int(e))
                acc[e] = acc.get(e, 0) + _canon_coeff(c)
        object.__setattr__(self, "mode", mode)
        object.__setattr__(
            self, "_terms", {e: _canon_coeff(acc[e]) for e in sorted(acc) if acc[e] != 0}
        )

    def __setattr__(self, name, value):
        raise AttributeError("LaurentScalar is immutable")

    @classmethod
    def _raw(cls, terms, mode):
        # trusted constructor: terms already folded, sorted and nonzero
        obj = object.__new__(cls)
        object.__setattr__(obj, "mode", mode)
        object.__setattr__(obj, "_terms", terms)
        return obj

    @classmethod
    def const(cls, c, mode=EXACT) -> LaurentScalar:
        return cls({0: c}, mode)

    @classmethod
    def monomial(cls, exp: int, coeff=1, mode=EXACT) -> LaurentScalar:
        return cls({exp: coeff}, mode)

    @classmethod
    def q(cls, mode=EXACT) -> LaurentScalar:
        return cls({1: 1}, mode)

    @classmethod
    def zero(cls, mode=EXACT) -> LaurentScalar:
        return cls(None, mode)

    @classmethod
    def one(cls, mode=EXACT) -> LaurentScalar:
        return cls({0: 1}, mode)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_exp(self) -> int:
        return min(self._terms) if self._terms else 0

    def max_exp(self) -> int:
        return max(self._terms) if self._terms else 0

    def reduce(self, mode) -> LaurentScalar:
        """Image under the quotient map into ``mode`` (exact scalars only)."""
        mode = _as_mode(mode)
        if mode == self.mode:
            return self
        if not self.mode.is_exact:
            raise ModeError(f"cannot reinterpret a {self.mode} scalar in {mode}")
        return LaurentScalar(self._terms, mode)

    def _coerce(self, other):
        if isinstance(other, LaurentScalar):
            if other.mode != self.mode:
                raise ModeError(f"mode mismatch: {self.mode} vs {other.mode}")
            return other
        if isinstance(other, (int, Rational)):
            return LaurentScalar({0: other}, self.mode)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentScalar(acc, self.mode)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar._raw({e: -c for e, c in self._terms.items()}, self.mode)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentScalar(acc, self.mode)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise DomainError("only monomials are invertible in the Laurent ring")
            (e, c), = self._terms.items()
            return LaurentScalar({e * k: Fraction(1, 1) / Fraction(c) ** (-k)}, self.mode)
        result = LaurentScalar.one(self.mode)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentScalar):
            return self.mode == other.mode and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            c = _canon_coeff(other)
            return self._terms == ({0: c} if c else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.mode, tuple(self._terms.items())))

    def __repr__(self):
        return f"LaurentScalar({self}, mode={self.mode})"

    def __str__(self):
        return format_scalar(self._terms)

    def to_json(self) -> dict:
        return {str(e): str(Fraction(c)) for e, c in self._terms.items()}

    @classmethod
    def from_json(cls, data: dict, mode=EXACT) -> LaurentScalar:
        return cls({int(e): Fraction(c) for e, c in data.items()}, mode)


def _monomial_text(e, c):
    if e == 0:
        return str(c)
    base = "q" if e == 1 else f"q^{e}"
    return base if c == 1 else f"{c}*{base}"


def format_scalar(terms: dict) -> str:
    """Render ``{exp: coeff}`` with ascending exponents, e.g. ``q^-2 + 3 - q^4``."""
    if not terms:
        return "0"
    out = []
    for e in sorted(terms):
        c = terms[e]
        if not out:
            out.append(("-" if c < 0 else "") + _monomial_text(e, abs(c)))
        else:
            out.append((" - " if c < 0 else " + ") + _monomial_text(e, abs(c)))
    return "".join(out)


def scalar_arith(a: LaurentScalar, b: LaurentScalar, op: str, mode=None) -> LaurentScalar:
    """Add or multiply two scalars and return the result canonical under ``mode``."""
    mode = _as_mode(mode if mode is not None else a.mode)
    a, b = a.reduce(mode), b.reduce(mode)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise DomainError(f"unknown scalar operation {op!r}")


def neg_q_power(k: int, mode=EXACT) -> LaurentScalar:
    """(-q)^k for any integer k."""
    return LaurentScalar({k: -1 if k % 2 else 1}, mode)


def inversion_count(seq) -> int:
    """Number of pairs s < t with seq[s] > seq[t]; entries must be distinct."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        raise InvalidPermutationError(f"repeated entry in {seq}")
    n = len(seq)
    return sum(1 for s in range(n) for t in range(s + 1, n) if seq[s] > seq[t])


def q_factorial_factor(n: int, e: int, mode=EXACT) -> LaurentScalar:
    """Sum of q^(e*l(sigma)) over S_n, via prod_{k=1}^{n} (1 + q^e + ... + q^(e(k-1))).

    ``e`` must be even so that (-q)^(e*l) and q^(e*l) agree.
    """
    mode = _as_mode(mode)
    if n < 0:
        raise DomainError("n must be nonnegative")
    if e <= 0 or e % 2:
        raise DomainError(f"exponent weight must be even and positive, got {e}")
    result = LaurentScalar.one(mode)
    for k in range(1, n + 1):
        result = result * LaurentScalar({e * i: 1 for i in range(k)}, mode)
    return result

