"""Command line front end: ``qpf <verb> [options]``.

Exit status is 0 when everything was computed or verified, 1 when an
identity check failed (the difference is printed) and 2 for usage or
domain errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from itertools import combinations, product

from . import idealcheck, qforms, qhyper, qmatrix, qpfaff
from .errors import DomainError
from .qscalar import EXACT, LaurentScalar, ScalarMode, q_factorial_factor

VERBS = ("det", "minor", "pf", "hyperpf", "verify", "cert")
SUITES = ("det", "laplace", "pluecker", "pfaffian", "hyper", "ideal")

# desk-scale limits for the verification suites
CAPS = {
    "det": 6,
    "laplace": 4,
    "pluecker": 3,
    "pfaffian": 3,
    "hyper": 8,  # matrix size m * n (m * (n + 1) when padding)
    "ideal": 3,
}

DIFF_LIMIT = 400


class UsageError(Exception):
    pass


@dataclass
class CheckResult:
    name: str
    passed: bool
    elapsed: float
    difference: str = ""

    def to_json(self):
        out = {"name": self.name, "passed": self.passed, "elapsed": round(self.elapsed, 4)}
        if not self.passed:
            out["difference"] = self.difference
        return out


@dataclass
class VerificationReport:
    suite: str
    params: dict
    checks: list = field(default_factory=list)
    artifacts: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "artifacts": self.artifacts,
        }

    def to_text(self) -> str:
        lines = [f"suite {self.suite} {json.dumps(self.params, sort_keys=True)}"]
        for c in self.checks:
            lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.name}  ({c.elapsed:.3f}s)")
            if not c.passed:
                lines.append(f"    difference: {c.difference}")
        for k, v in self.artifacts.items():
            lines.append(f"{k}: {v}")
        total = len(self.checks)
        good = sum(c.passed for c in self.checks)
        lines.append(f"{'PASS' if self.passed else 'FAIL'} {good}/{total}")
        return "\n".join(lines)


def _truncate(text: str) -> str:
    return text if len(text) <= DIFF_LIMIT else text[:DIFF_LIMIT] + " ..."


def _perturbed(p):
    """Flip the sign of one coefficient (or add a unit term to zero)."""
    items = sorted(p._data.items())
    if not items:
        if isinstance(p, qmatrix.MatPoly):
            return qmatrix.MatPoly.one(p.n, p.mode)
        return qpfaff.BPoly.one(p.mode)
    data = dict(p._data)
    key, c = items[0]
    data[key] = -c
    return p._like(data)


def _run_checks(report: VerificationReport, checks, perturb: bool):
    """``checks`` yields (name, thunk) with thunk() -> (lhs, rhs)."""
    first = True
    for name, thunk in checks:
        start = time.perf_counter()
        lhs, rhs = thunk()
        if perturb and first:
            lhs = _perturbed(lhs)
            first = False
        ok = lhs == rhs
        diff = "" if ok else _truncate(str(lhs - rhs))
        report.checks.append(CheckResult(name, ok, time.perf_counter() - start, diff))


def _zero_like(p):
    return p.scale(0)


def _mode_from(args, m=None) -> ScalarMode:
    if args.mod == "auto":
        return qhyper.mode_for(m) if m else EXACT
    if args.mod == "exact":
        return EXACT
    try:
        value = int(args.mod)
    except ValueError:
        raise UsageError(f"--mod must be auto, exact or a nonnegative integer, got {args.mod!r}")
    if value < 0:
        raise UsageError("--mod must be nonnegative")
    return ScalarMode(value)


def _need(args, name, lo=1):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name} is required")
    if value < lo:
        raise UsageError(f"--{name} must be at least {lo}, got {value}")
    return value


def _cap(suite, size):
    if size > CAPS[suite]:
        raise UsageError(f"{suite} suite is capped at size {CAPS[suite]}, got {size}")


def _variants(args):
    return (args.variant,) if args.variant else ("row", "col")


# ---------------------------------------------------------------------------
# suites

def suite_det(args, mode):
    n = args.n or 4
    _cap("det", n)
    for k in range(1, n + 1):
        base = lambda k=k: qmatrix.quantum_det(k, "row", mode)  # noqa: E731
        yield f"det_row=det_col n={k}", lambda k=k, b=base: (b(), qmatrix.quantum_det(k, "col", mode))
        for o in ("row", "col"):
            yield (f"wedge_{o}=det n={k}",
                   lambda k=k, o=o, b=base: (qforms.det_via_wedge(k, o, mode), b()))


def suite_laplace(args, mode):
    n = args.n or 3
    _cap("laplace", n)
    if n < 2:
        raise UsageError("laplace suite needs --n >= 2")
    for side in _variants(args):
        for r in range(1, n):
            for rows in combinations(range(1, n + 1), r):
                yield (f"laplace {side} I={list(rows)}",
                       lambda rows=rows, side=side: qmatrix.laplace_sides(n, rows, side, mode))
        for i, k in product(range(1, n + 1), repeat=2):
            yield (f"orthogonality {side} i={i} k={k}",
                   lambda i=i, k=k, side=side: qmatrix.orthogonality_sides(n, i, k, side, mode))
        for seq in product(range(1, n + 1), repeat=n):
            yield (f"expansion {side} seq={list(seq)}",
                   lambda seq=seq, side=side: qmatrix.generalized_expansion_sides(n, seq, side, mode))


def suite_pluecker(args, mode):
    n = args.n or 2
    _cap("pluecker", n)
    if n < 2:
        raise UsageError("pluecker suite needs --n >= 2")
    for r in range(n):
        for variant in ("plus", "minus"):
            for tr in (False, True):
                def thunk(r=r, variant=variant, tr=tr):
                    s = qforms.pluecker_vanishing_sum(n, r, variant=variant, transposed=tr, mode=mode)
                    return s, _zero_like(s)
                yield f"vanishing r={r} {variant}{' transposed' if tr else ''}", thunk
        for tr in (False, True):
            yield (f"exchange r={r}{' transposed' if tr else ''}",
                   lambda r=r, tr=tr: qforms.pluecker_exchange_sides(n, r, tr, mode))


def suite_pfaffian(args, mode):
    n = args.n or 2
    _cap("pfaffian", n)
    S = tuple(range(1, 2 * n + 1))
    yield ("recursion=matchings",
           lambda: (qpfaff.pf_recursive(S, mode), qpfaff.pf_matchings(S, True, mode)))
    for variant in _variants(args):
        if n >= 2:
            for quad in combinations(S, 4):
                def thunk(quad=quad, variant=variant):
                    img = qpfaff.substitute_b(qpfaff.b_relation(*quad, mode=mode), n, variant)
                    return img, _zero_like(img)
                yield f"b-relation {variant} {list(quad)}", thunk
        yield f"pf=det {variant} 2n={2 * n}", lambda v=variant: qpfaff.pf_det_sides(n, v, mode)
        yield (f"odd pf=det {variant} size={2 * n + 1}",
               lambda v=variant: qpfaff.odd_pf_det_sides(n, v, mode))


def suite_hyper(args, mode):
    m = args.m or 4
    n = args.n or 2
    if m % 2 or m < 2:
        raise UsageError(f"--m must be a positive even integer, got {m}")
    _cap("hyper", m * (n + 1) if args.l else m * n)
    workers = args.threads
    S = tuple(range(1, m * n + 1))
    generic = not mode == qhyper.mode_for(m)
    yield ("recursion=matchings",
           lambda: (qhyper.hyperpf_recursive(S, m, mode), qhyper.hyperpf_matchings(S, m, True, mode)))
    for variant in _variants(args):
        if n >= 2:
            for T in combinations(S, 2 * m):
                def thunk(T=T, variant=variant):
                    img = qhyper.hyper_substitute(qhyper.hyper_relation(T, m, mode), m, n, variant,
                                                  allow_generic=generic, workers=workers)
                    return img, _zero_like(img)
                yield f"relation {variant} S={list(T)}", thunk
        yield (f"hyperpf=det {variant} m={m} n={n}",
               lambda v=variant: qhyper.hyper_det_sides(m, n, v, mode, generic, workers))
        if args.l:
            yield (f"padding {variant} m={m} n={n} l={args.l}",
                   lambda v=variant: qhyper.hyper_padding_sides(m, n, args.l, v, mode, workers))


def _ideal_targets(n, mode):
    S = tuple(range(1, 2 * n + 1))
    pf = qpfaff.pf_recursive(S, mode)
    factor = q_factorial_factor(n, 4, mode)
    yield "ordered matchings = factor * Pf", qpfaff.pf_matchings(S, False, mode), pf.scale(factor)
    geom = LaurentScalar({4 * i: 1 for i in range(n)}, mode)
    yield "first-pair expansion = factor * Pf", qpfaff.pf_lemma_sum(S, mode), pf.scale(geom)


def ideal_certificates(n, mode=EXACT):
    """Membership results for the two B-identities at 2n indices."""
    if n < 2:
        raise DomainError("ideal suite needs n >= 2")
    rels = idealcheck.relation_generators(2 * n, 2, mode)
    return [(name, idealcheck.verify_in_B(lhs, rhs, rels), lhs, rhs)
            for name, lhs, rhs in _ideal_targets(n, mode)], rels


def run_ideal(args, mode, report, perturb):
    n = args.n or 2
    _cap("ideal", n)
    if n < 2:
        raise UsageError("ideal suite needs --n >= 2")
    rels = idealcheck.relation_generators(2 * n, 2, mode)
    certs = {}
    first = True
    for name, lhs, rhs in _ideal_targets(n, mode):
        start = time.perf_counter()
        if perturb and first:
            lhs = _perturbed(lhs)
            first = False
        result = idealcheck.verify_in_B(lhs, rhs, rels)
        diff = "" if result.member else _truncate(str(lhs - rhs))
        report.checks.append(CheckResult(name, result.member, time.perf_counter() - start, diff))
        certs[name] = idealcheck.certificate_to_json(result)
    path = args.cert_out or f"certificate-ideal-n{n}.json"
    with open(path, "w") as fh:
        json.dump({"N": 2 * n, "m": 2, "modulus": mode.modulus, "certificates": certs}, fh, indent=1)
    report.artifacts["certificate"] = path


def verify_suite(name, args, perturb=False) -> VerificationReport:
    m = (args.m or 4) if name == "hyper" else None
    mode = _mode_from(args, m)
    params = {k: getattr(args, k) for k in ("n", "m", "l", "variant") if getattr(args, k)}
    params["modulus"] = mode.modulus
    report = VerificationReport(name, params)
    if name == "ideal":
        run_ideal(args, mode, report, perturb)
        return report
    suites = {
        "det": suite_det,
        "laplace": suite_laplace,
        "pluecker": suite_pluecker,
        "pfaffian": suite_pfaffian,
        "hyper": suite_hyper,
    }
    checks = list(suites[name](args, mode))
    _run_checks(report, checks, perturb)
    return report


# ---------------------------------------------------------------------------
# object verbs

def _parse_tuple(text, what):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"{what} must be a comma-separated list of integers, got {text!r}")


def compute(args):
    if args.verb == "det":
        n = _need(args, "n")
        return qmatrix.quantum_det(n, args.variant or "row", _mode_from(args))
    if args.verb == "minor":
        n = _need(args, "n")
        r = args.r or n
        rows = _parse_tuple(args.rows, "--rows") if args.rows else tuple(range(1, r + 1))
        cols = _parse_tuple(args.cols, "--cols") if args.cols else tuple(range(1, r + 1))
        return qmatrix.quantum_minor(rows, cols, n, _mode_from(args))
    if args.verb == "pf":
        n = _need(args, "n")
        pf = qpfaff.pf_recursive(tuple(range(1, 2 * n + 1)), _mode_from(args))
        if args.variant:
            return qpfaff.substitute_b(pf, n, args.variant)
        return pf
    if args.verb == "hyperpf":
        n = _need(args, "n")
        m = _need(args, "m", 2)
        if m % 2:
            raise UsageError(f"--m must be even, got {m}")
        mode = _mode_from(args, m)
        pf = qhyper.hyperpf_recursive(tuple(range(1, m * n + 1)), m, mode)
        if args.variant:
            return qhyper.hyper_substitute(pf, m, n, args.variant, workers=args.threads)
        return pf
    raise UsageError(f"unknown verb {args.verb!r}")


def _render(obj, fmt):
    if fmt == "json":
        return json.dumps(obj.to_json(), indent=1)
    return str(obj)


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def build_parser():
    p = argparse.ArgumentParser(prog="qpf", description="Exact quantum determinant and Pfaffian computations.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("suite", nargs="?", choices=SUITES, help="suite name for 'verify'")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--rows", help="row tuple for 'minor', e.g. 1,3")
    p.add_argument("--cols", help="column tuple for 'minor'")
    p.add_argument("--variant", choices=("row", "col"))
    p.add_argument("--mod", default="auto", help="auto, exact, or a modulus M for q^M = 1")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--out")
    p.add_argument("--cert-out", help="where 'verify ideal' and 'cert' write certificates")
    p.add_argument("--perturb", action="store_true", help=argparse.SUPPRESS)
    return p


def _threads(args):
    if args.threads is None:
        env = os.environ.get("QPF_THREADS")
        if env:
            try:
                args.threads = int(env)
            except ValueError:
                raise UsageError(f"QPF_THREADS must be an integer, got {env!r}")
        else:
            args.threads = os.cpu_count() or 1
    if args.threads < 1:
        raise UsageError("--threads must be positive")


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        _threads(args)
        if args.verb == "verify":
            if not args.suite:
                raise UsageError("verify needs a suite: " + "|".join(SUITES))
            report = verify_suite(args.suite, args, args.perturb)
            text = json.dumps(report.to_json(), indent=1) if args.format == "json" else report.to_text()
            _emit(text, args.out)
            return 0 if report.passed else 1
        if args.verb == "cert":
            n = _need(args, "n", 2)
            _cap("ideal", n)
            mode = _mode_from(args)
            results, _ = ideal_certificates(n, mode)
            payload = {
                "N": 2 * n,
                "m": 2,
                "modulus": mode.modulus,
                "certificates": {name: idealcheck.certificate_to_json(r) for name, r, _, _ in results},
            }
            _emit(json.dumps(payload, indent=1), args.out or args.cert_out)
            return 0 if all(r.member for _, r, _, _ in results) else 1
        obj = compute(args)
        if args.perturb:
            obj = _perturbed(obj)
        _emit(_render(obj, args.format), args.out)
        return 0
    except (UsageError, DomainError) as exc:
        parser.print_usage(sys.stderr)
        print(f"qpf: error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
