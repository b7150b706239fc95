"""Sparse word polynomials with Laurent coefficients.

Terms are stored flattened as ``{(word, exp): coeff}`` so that scaling by a
power of q is an exponent shift.  Subclasses decide how two words multiply.
"""

from __future__ import annotations

from .errors import ModeError
from .qscalar import EXACT, LaurentScalar, ScalarMode, _as_mode, _canon_coeff, format_scalar


def add_into(acc: dict, items, mode: ScalarMode, scale_exp=0, scale_coeff=1):
    """Accumulate ``(word, exp, coeff)`` triples into a flattened term dict."""
    m = mode.modulus
    for w, e, c in items:
        e += scale_exp
        if m:
            e %= m
        key = (w, e)
        v = acc.get(key, 0) + c * scale_coeff
        if v:
            acc[key] = v
        else:
            acc.pop(key, None)


def _word_order(item):
    w = item[0]
    return (len(w), w)


class WordPoly:
    """Base for immutable polynomials over words with Laurent coefficients."""

    __slots__ = ("mode", "_data")

    def __init__(self, data=None, mode=EXACT):
        self.mode = _as_mode(mode)
        acc = {}
        if data:
            add_into(acc, ((w, e, _canon_coeff(c)) for (w, e), c in data.items()), self.mode)
        self._data = acc

    # subclass hooks -------------------------------------------------------
    def _like(self, data: dict):
        """New instance sharing this one's ambient parameters (data trusted)."""
        raise NotImplementedError

    def _check_compatible(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.mode != self.mode:
            raise ModeError(f"mode mismatch: {self.mode} vs {other.mode}")

    def _mul_words(self, u, v):
        raise NotImplementedError

    def _word_text(self, w) -> str:
        raise NotImplementedError

    # queries --------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self._data

    def __bool__(self):
        return bool(self._data)

    def items(self):
        """Flattened ``(word, exp, coeff)`` triples."""
        return ((w, e, c) for (w, e), c in self._data.items())

    def _grouped(self) -> dict:
        grouped = {}
        for (w, e), c in self._data.items():
            grouped.setdefault(w, {})[e] = c
        return {w: LaurentScalar(t, self.mode) for w, t in sorted(grouped.items(), key=_word_order)}

    @property
    def terms(self) -> dict:
        """Map each word to its :class:`LaurentScalar` coefficient."""
        return {self._public_word(w): s for w, s in self._grouped().items()}

    def _public_word(self, w):
        return w

    def _private_word(self, word):
        return tuple(word)

    def words(self):
        return [self._public_word(w) for w in sorted({w for w, _ in self._data}, key=lambda w: (len(w), w))]

    def coefficient(self, word) -> LaurentScalar:
        word = self._private_word(word)
        return LaurentScalar(
            {e: c for (w, e), c in self._data.items() if w == word}, self.mode
        )

    def __len__(self):
        return len({w for w, _ in self._data})

    def degrees(self) -> set:
        return {len(w) for w, _ in self._data}

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, LaurentScalar)) and not other:
            return self
        if not isinstance(other, WordPoly):
            return NotImplemented
        self._check_compatible(other)
        acc = dict(self._data)
        add_into(acc, other.items(), self.mode)
        return self._like(acc)

    def __radd__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        return NotImplemented

    def __neg__(self):
        return self._like({k: -c for k, c in self._data.items()})

    def __sub__(self, other):
        if not isinstance(other, WordPoly):
            return NotImplemented
        self._check_compatible(other)
        acc = dict(self._data)
        add_into(acc, other.items(), self.mode, scale_coeff=-1)
        return self._like(acc)

    def scale(self, s) -> WordPoly:
        """Multiply by a scalar (LaurentScalar or rational)."""
        if not isinstance(s, LaurentScalar):
            s = LaurentScalar.const(s, self.mode)
        elif s.mode != self.mode:
            s = s.reduce(self.mode)
        acc = {}
        for e0, c0 in s.items():
            add_into(acc, self.items(), self.mode, e0, c0)
        return self._like(acc)

    def shift(self, exp: int, coeff=1) -> WordPoly:
        """Multiply by ``coeff * q**exp``."""
        acc = {}
        add_into(acc, self.items(), self.mode, exp, coeff)
        return self._like(acc)

    def __mul__(self, other):
        if isinstance(other, WordPoly):
            self._check_compatible(other)
            acc = {}
            mode = self.mode
            for (u, e1), c1 in self._data.items():
                for (v, e2), c2 in other._data.items():
                    add_into(acc, self._mul_words(u, v), mode, e1 + e2, c1 * c2)
            return self._like(acc)
        if isinstance(other, (int, LaurentScalar)) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentScalar)) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._data
        if type(other) is not type(self):
            return NotImplemented
        return self._key() == other._key() and self._data == other._data

    def _key(self):
        return (self.mode,)

    def __hash__(self):
        return hash((self._key(), frozenset(self._data.items())))

    # rendering ------------------------------------------------------------
    def __str__(self):
        if not self._data:
            return "0"
        parts = []
        for w, s in self._grouped().items():
            body = self._word_text(w)
            t = s._terms
            if len(t) == 1:
                (e, c), = t.items()
                neg = c < 0
                mag = {e: -c} if neg else t
                text = body if mag == {0: 1} else f"({format_scalar(mag)})·{body}"
            else:
                neg = False
                text = f"({format_scalar(t)})·{body}"
            if not parts:
                parts.append(("-" if neg else "") + text)
            else:
                parts.append((" - " if neg else " + ") + text)
        return "".join(parts)

    def __repr__(self):
        return f"{type(self).__name__}({self})"

    def _terms_json(self):
        return [
            {"coeff": s.to_json(), "word": [list(g) for g in self._public_word(w)]}
            for w, s in self._grouped().items()
        ]
