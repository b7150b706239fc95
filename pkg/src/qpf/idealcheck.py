"""Membership in the two-sided ideal generated by the Pfaffian relations.

Every relation is homogeneous in word length and in the multiset of indices
it uses, so a homogeneous polynomial splits into index-content blocks and
each block is decided separately against the spanning elements u*r*v with
matching content.  The linear systems are solved over Q(q) by fraction-free
row elimination with content stripping; the returned certificate is checked
by re-expanding it in the free algebra before anything is reported.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from sympy import QQ
from sympy.polys.fields import field as frac_field
from sympy.polys.rings import ring

from ._poly import add_into
from .errors import DomainError
from .qpfaff import BPoly
from .qscalar import LaurentScalar, _as_mode

__all__ = [
    "RelationSet",
    "CertificateTerm",
    "MembershipResult",
    "relation_generators",
    "membership",
    "verify_in_B",
    "check_certificate",
    "certificate_to_json",
    "certificate_from_json",
]

_R, _q = ring("q", QQ)
_K, _ = frac_field("q", QQ)


@dataclass(frozen=True)
class RelationSet:
    N: int
    m: int
    subsets: tuple
    relations: tuple

    @property
    def mode(self):
        return self.relations[0].mode

    def __len__(self):
        return len(self.relations)


@dataclass(frozen=True)
class CertificateTerm:
    left: tuple
    relation: int
    right: tuple
    num: LaurentScalar
    den: LaurentScalar


@dataclass
class MembershipResult:
    member: bool
    certificate: list = field(default_factory=list)
    degree: int = 0
    blocks: int = 0

    def __bool__(self):
        return self.member


def relation_generators(N: int, m: int = 2, mode=None) -> RelationSet:
    """One relation (LHS - RHS) per 2m-subset of 1..N."""
    from .qhyper import hyper_relation, mode_for

    mode = mode_for(m) if mode is None else _as_mode(mode)
    if N < 2 * m:
        raise DomainError(f"need N >= {2 * m} for block size {m}, got N={N}")
    subsets = tuple(combinations(range(1, N + 1), 2 * m))
    return RelationSet(N, m, subsets, tuple(hyper_relation(S, m, mode) for S in subsets))


# ---------------------------------------------------------------------------
# conversion between Laurent scalars and sympy polynomials

def _to_poly(terms: dict, shift: int):
    return _R.from_dict({(e + shift,): QQ(c.numerator, c.denominator) if isinstance(c, Fraction)
                         else QQ(c) for e, c in terms.items()})


def _to_laurent(poly, mode, shift: int = 0) -> LaurentScalar:
    return LaurentScalar(
        {e - shift: Fraction(int(c.numerator), int(c.denominator)) for (e,), c in poly.terms()},
        mode,
    )


def _content(word) -> Counter:
    return Counter(i for b in word for i in b)


def _words_with_content(content: Counter, length: int, m: int):
    """All words of ``length`` increasing m-blocks whose indices make up ``content``."""
    if length == 0:
        if not +content:
            yield ()
        return
    support = sorted(i for i, k in content.items() if k > 0)
    for block in combinations(support, m):
        rest = content.copy()
        rest.subtract(block)
        for tail in _words_with_content(rest, length - 1, m):
            yield (block,) + tail


def _spanning(content: Counter, degree: int, rels: RelationSet):
    """(left, relation index, right) triples whose product has this content."""
    out = []
    for idx, S in enumerate(rels.subsets):
        rest = content.copy()
        rest.subtract(S)
        if any(v < 0 for v in rest.values()):
            continue
        for a in range(degree - 1):
            for word in _words_with_content(rest, degree - 2, rels.m):
                out.append((word[:a], idx, word[a:]))
    return sorted(set(out))


def _expand(left, rel: BPoly, right) -> BPoly:
    acc = {}
    add_into(acc, ((left + w + right, e, c) for w, e, c in rel.items()), rel.mode)
    return BPoly._new(rel.mode, acc)


# ---------------------------------------------------------------------------
# exact linear algebra

def _primitive(row):
    g = None
    for x in row:
        if x:
            g = x if g is None else g.gcd(x)
            if g == 1:
                return row
    if g is None or g == 1:
        return row
    return [x.exquo(g) if x else x for x in row]


def _solve(matrix, rhs):
    """Solve matrix * x = rhs over Q(q); None when inconsistent.

    Fraction-free elimination: each update is a cross-multiplication divided
    through by the row content, so entries stay polynomial throughout.
    """
    ncols = len(matrix[0]) if matrix else 0
    rows = [_primitive(list(r) + [b]) for r, b in zip(matrix, rhs)]
    pivots = []
    top = 0
    for col in range(ncols):
        cands = [i for i in range(top, len(rows)) if rows[i][col]]
        if not cands:
            continue
        best = min(cands, key=lambda i: (rows[i][col].degree(), len(rows[i][col].terms())))
        rows[top], rows[best] = rows[best], rows[top]
        prow = rows[top]
        p = prow[col]
        for i in range(top + 1, len(rows)):
            f = rows[i][col]
            if not f:
                continue
            g = p.gcd(f)
            a, b = p.exquo(g), f.exquo(g)
            rows[i] = _primitive([a * x - b * y for x, y in zip(rows[i], prow)])
        pivots.append(col)
        top += 1
    if any(r[-1] for r in rows[top:]):
        return None
    x = [_K(0)] * ncols
    for k in range(len(pivots) - 1, -1, -1):
        col = pivots[k]
        row = rows[k]
        acc = _K(row[-1])
        for j in range(col + 1, ncols):
            if row[j]:
                acc -= _K(row[j]) * x[j]
        x[col] = acc / _K(row[col])
    return x


def _coefficient(value, mode):
    """Certificate coefficient as (numerator, denominator) Laurent scalars."""
    num, den = value.numer, value.denom
    if mode.is_exact:
        lead = den.LC
        return _to_laurent(num.quo_ground(lead), mode), _to_laurent(den.quo_ground(lead), mode)
    # in Q[q]/(q^M - 1) the denominator must be a unit
    s, _, h = den.gcdex(_q ** mode.modulus - 1)
    if h != 1:
        raise ArithmeticError("certificate denominator is a zero divisor modulo q^M - 1")
    return _to_laurent(num * s, mode), LaurentScalar.one(mode)


def membership(p: BPoly, rels: RelationSet) -> MembershipResult:
    """Decide p in the two-sided ideal generated by ``rels``; certify when it is."""
    if p.mode != rels.mode:
        p = p.reduce(rels.mode)
    mode = p.mode
    if p.is_zero():
        return MembershipResult(True, [], 0, 0)
    degrees = p.degrees()
    if len(degrees) != 1:
        raise DomainError(f"polynomial is not homogeneous: word lengths {sorted(degrees)}")
    d = degrees.pop()
    if d < 2:
        return MembershipResult(False, [], d, 0)

    blocks = {}
    for w, e, c in p.items():
        key = tuple(sorted(_content(w).items()))
        blocks.setdefault(key, []).append((w, e, c))

    certificate = []
    for key, items in sorted(blocks.items()):
        spans = _spanning(Counter(dict(key)), d, rels)
        if not spans:
            return MembershipResult(False, [], d, len(blocks))
        images = [_expand(u, rels.relations[i], v) for u, i, v in spans]
        target = {}
        for w, e, c in items:
            target.setdefault(w, {})[e] = c
        monos = sorted({w for img in images for w, _, _ in img.items()} | set(target))
        cols = [{} for _ in images]
        for j, img in enumerate(images):
            for w, e, c in img.items():
                cols[j].setdefault(w, {})[e] = c
        exps = [e for col in cols for t in col.values() for e in t]
        exps += [e for t in target.values() for e in t]
        shift = -min(exps)
        matrix = [[_to_poly(col.get(w, {}), shift) for col in cols] for w in monos]
        rhs = [_to_poly(target.get(w, {}), shift) for w in monos]
        x = _solve(matrix, rhs)
        if x is None:
            return MembershipResult(False, [], d, len(blocks))
        for (u, i, v), val in zip(spans, x):
            if val:
                num, den = _coefficient(val, mode)
                certificate.append(CertificateTerm(u, i, v, num, den))

    result = MembershipResult(True, certificate, d, len(blocks))
    if not check_certificate(p, result.certificate, rels):
        raise ArithmeticError("membership certificate failed its round-trip check")
    return result


def check_certificate(p: BPoly, certificate, rels: RelationSet) -> bool:
    """Re-expand sum (num/den) u r v with denominators cleared and compare with p."""
    mode = rels.mode
    if p.mode != mode:
        p = p.reduce(mode)
    if not certificate:
        return p.is_zero()
    # q^s is a unit, so each fraction is first rewritten over a polynomial denominator
    fracs = []
    for t in certificate:
        s = -min(t.den.terms)
        fracs.append((t, t.num * LaurentScalar.monomial(s, 1, mode), _to_poly(t.den.terms, s)))
    common = fracs[0][2]
    for _, _, d in fracs[1:]:
        common = common.lcm(d)
    total = BPoly.zero(mode)
    for t, num, d in fracs:
        factor = _to_laurent(common.exquo(d), mode)
        total = total + _expand(t.left, rels.relations[t.relation], t.right).scale(num * factor)
    return total == p.scale(_to_laurent(common, mode))


def verify_in_B(lhs: BPoly, rhs: BPoly, rels: RelationSet) -> MembershipResult:
    """Is lhs = rhs in the quotient by the relations?"""
    return membership(lhs - rhs, rels)


def certificate_to_json(result: MembershipResult) -> dict:
    return {
        "member": result.member,
        "terms": [
            {
                "left": [list(b) for b in t.left],
                "relation": t.relation,
                "right": [list(b) for b in t.right],
                "coeff": {"num": t.num.to_json(), "den": t.den.to_json()},
            }
            for t in result.certificate
        ],
    }


def certificate_from_json(data: dict, mode=None) -> MembershipResult:
    mode = _as_mode(mode)
    terms = [
        CertificateTerm(
            tuple(tuple(b) for b in t["left"]),
            t["relation"],
            tuple(tuple(b) for b in t["right"]),
            LaurentScalar.from_json(t["coeff"]["num"], mode),
            LaurentScalar.from_json(t["coeff"]["den"], mode),
        )
        for t in data["terms"]
    ]
    return MembershipResult(bool(data["member"]), terms)
