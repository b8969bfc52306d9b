"""Command-line front end: validate, indicator tables, theorem checks,
gauge-invariance trials, and spec generators.

Exit codes: 0 success, 1 semantic failure (axioms, theorem checks, missing
pivotal data), 2 I/O or parse failure.  All randomness flows from one seed
through SplitMix64 (Steele-Lea-Flood constants, 64-bit), so gauge trials
reproduce across implementations.  Identical invocations produce
byte-identical json and csv output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .category import (Category, ObjectExpr, gauge_transform, validate)
from .cyclo import Cyc, root_of_unity
from .indicators import (DimensionGuardError, check_fs_theorems,
                         check_power_identity, check_reversal_symmetry,
                         e_map, indicator, indicator_report,
                         rotation_operator)
from .pivotal import attach_pivotal, is_pseudo_unitary
from .specio import SpecFormatError, load_category, save_category


class _Semantic(Exception):
    pass


_M64 = (1 << 64) - 1


class SplitMix64:
    """Deterministic 64-bit generator; named so trials reproduce anywhere."""

    def __init__(self, seed: int):
        self.state = seed & _M64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _M64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
        return (z ^ (z >> 31)) & _M64


def _parse_range(text: str):
    if ".." in text:
        lo, _, hi = text.partition("..")
        lo, hi = int(lo), int(hi)
    else:
        lo = hi = int(text)
    if lo > hi or lo < 0:
        raise ValueError(f"bad range {text!r}")
    return tuple(range(lo, hi + 1))


def _load(path) -> Category:
    return load_category(path)


def _ensure_pivotal(cat: Category, choice) -> Category:
    if cat.pivotal is not None and choice is None:
        return cat
    if choice is None:
        choice = "canonical"
    try:
        if choice == "canonical":
            return attach_pivotal(cat, "canonical")
        if choice.startswith("index"):
            return attach_pivotal(cat, int(choice.split()[-1].replace("index", "") or 0))
        return attach_pivotal(cat, choice)
    except (ValueError, IndexError) as exc:
        raise _Semantic(f"pivotal data absent and not derivable: {exc}") from None


def _value_csv(value: Cyc) -> str:
    enc = value.encode()
    return f"{enc['N']}:" + ";".join(enc["c"])


def cmd_validate(args) -> int:
    cat = _load(args.spec)
    report = validate(cat)
    for line in report.lines():
        print(line)
    return 0 if report.valid else 1


def cmd_ind(args) -> int:
    cat = _load(args.spec)
    report_v = validate(cat)
    if not report_v.valid:
        raise _Semantic(f"spec invalid: {report_v.first_failure()}")
    cat = _ensure_pivotal(cat, args.pivotal)
    n_values = _parse_range(args.n)
    r_values = _parse_range(args.r) if args.r else (1,)
    obj = ObjectExpr.parse(args.object, cat.labels)
    rep = indicator_report(cat, obj, n_values, r_values)
    if args.dump:
        for n in n_values:
            op = rotation_operator(cat, obj, n)
            for w in op.words:
                if len(w) > 1:
                    print(e_map(cat, w, 1).render())
    if args.format == "json":
        cells = []
        for n, r, val in rep.cells():
            emb = val.embed()
            cells.append({
                "n": n, "r": r, "value": val.encode(),
                "re": emb.real, "im": emb.imag,
                "qn_distance": rep.qn[(n, r)],
                "conjugation_symmetric": rep.conjugation[(n, r)],
            })
        doc = {
            "schema": 1,
            "category": rep.category,
            "object": rep.object_expr,
            "cells": cells,
            "power_identity": {str(n): rep.power_identity[n]
                               for n in rep.n_values},
        }
        print(json.dumps(doc, sort_keys=True))
    elif args.format == "csv":
        print("n,r,value,re,im,qn_distance,power_identity,conjugation")
        for n, r, val in rep.cells():
            emb = val.embed()
            print(f"{n},{r},{_value_csv(val)},{emb.real!r},{emb.imag!r},"
                  f"{rep.qn[(n, r)]!r},{rep.power_identity[n]},"
                  f"{rep.conjugation[(n, r)]}")
    else:
        print(f"category {rep.category}, object {rep.object_expr}")
        for n, r, val in rep.cells():
            emb = val.embed()
            flags = []
            if rep.power_identity[n]:
                flags.append("E^n=id")
            if rep.conjugation[(n, r)]:
                flags.append("conj")
            print(f"nu({n},{r}) = {val!r}  ~ {emb.real:+.12f}{emb.imag:+.12f}i "
                  f"[{' '.join(flags)}]")
    bad = [k for k, ok in rep.conjugation.items() if not ok]
    bad += [n for n, ok in rep.power_identity.items() if not ok]
    return 1 if bad else 0


def cmd_check(args) -> int:
    cat = _load(args.spec)
    report_v = validate(cat)
    if not report_v.valid:
        print(f"FAIL validate: {report_v.first_failure()}")
        return 1
    if cat.pivotal is None:
        raise _Semantic("spec has no pivotal data; attach one first")
    n_max = args.nmax
    lines = []
    all_ok = True

    def record(name, ok, skipped=False, detail=""):
        nonlocal all_ok
        mark = "SKIP" if skipped else ("PASS" if ok else "FAIL")
        suffix = f"  [{detail}]" if detail and not ok else \
            (f"  ({detail})" if detail and skipped else "")
        lines.append(f"{mark} {name}{suffix}")
        if not skipped and not ok:
            all_ok = False

    ok = True
    for a in cat.labels:
        for n in range(1, n_max + 1):
            if not check_power_identity(cat, a, n):
                ok = False
    record(f"power identity (E^n)^n = id, n <= {n_max}", ok)

    ok = True
    from .cyclo import galois_conjugate
    for a in cat.labels:
        for n in range(1, n_max + 1):
            for r in range(n + 1):
                if galois_conjugate(indicator(cat, a, n, r)) != \
                        indicator(cat, a, n, n - r):
                    ok = False
    record("conjugation symmetry nu(n,n-r) = conj nu(n,r)", ok)

    for item in check_fs_theorems(cat, n_max=n_max):
        record(item.name, item.ok, skipped=item.skipped, detail=item.detail)

    record("reversal symmetry nu(n,k)(reverse) = nu(n,n-k)",
           check_reversal_symmetry(cat, n_max=min(n_max, 4)))

    pu, gap = is_pseudo_unitary(cat)
    if pu:
        ok = True
        for a in cat.labels:
            v = indicator(cat, a, 2, 1)
            if v not in (Cyc.rational(0), Cyc.rational(1), Cyc.rational(-1)):
                ok = False
        record("nu_2 takes values in {0, +1, -1}", ok)
    else:
        record("nu_2 takes values in {0, +1, -1}", True, skipped=True,
               detail=f"not pseudo-unitary, gap {gap:.3g}")

    for line in lines:
        print(line)
    print("all checks pass" if all_ok else "CHECK FAILURES")
    return 0 if all_ok else 1


def _random_gauge(cat: Category, rng: SplitMix64):
    u = {}
    for (a, b, c) in cat.ring.admissible_triples():
        if a == cat.unit or b == cat.unit:
            continue
        u[(a, b, c)] = root_of_unity(cat.conductor,
                                     rng.next() % cat.conductor)
    return u


def cmd_gauge_check(args) -> int:
    cat = _load(args.spec)
    report_v = validate(cat)
    if not report_v.valid:
        raise _Semantic(f"spec invalid: {report_v.first_failure()}")
    if cat.pivotal is None:
        raise _Semantic("spec has no pivotal data; attach one first")
    rng = SplitMix64(args.seed)
    base = {}
    for a in cat.labels:
        for n in range(1, 5):
            for r in range(1, n + 1):
                base[(a, n, r)] = indicator(cat, a, n, r)
    for trial in range(args.trials):
        u = _random_gauge(cat, rng)
        gauged = gauge_transform(cat, u)
        for (a, n, r), want in base.items():
            got = indicator(gauged, a, n, r)
            if got != want:
                bad = {f"{k}": v.encode() for k, v in u.items()}
                print(f"FAIL trial {trial}: nu({n},{r})({a}) changed")
                print(json.dumps({"trial": trial, "gauge": bad}, sort_keys=True))
                return 1
    print(f"PASS {args.trials} gauge trials leave all nu(n,r) fixed (n <= 4)")
    return 0


def cmd_emit(args) -> int:
    from .oracles import (build_pointed, build_tambara_yamagami, sqrt_int,
                          standard_bicharacter, standard_cocycle,
                          solve_pentagon_rank2)

    if args.family == "pointed":
        cat = build_pointed(args.order, standard_cocycle(args.order, args.level),
                            conductor=args.conductor)
    elif args.family == "ty":
        orders = tuple(int(x) for x in args.orders.split(","))
        size = math.prod(orders)
        tau = Cyc.rational(args.sign) / sqrt_int(size)
        cat = build_tambara_yamagami(orders, standard_bicharacter(orders), tau,
                                     conductor=args.conductor)
    elif args.family == "rank2":
        cat = solve_pentagon_rank2()[args.index]
    else:
        raise _Semantic(f"unknown family {args.family!r}")
    if args.pivotal != "none":
        cat = attach_pivotal(cat, args.pivotal)
    report = validate(cat)
    if not report.valid:
        raise _Semantic(f"generated spec invalid: {report.first_failure()}")
    save_category(cat, args.output)
    print(f"wrote {args.output}")
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="fscat", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="validate a category spec file")
    v.add_argument("spec")
    v.set_defaults(fn=cmd_validate)

    i = sub.add_parser("ind", help="compute an indicator table")
    i.add_argument("spec")
    i.add_argument("--object", required=True)
    i.add_argument("--n", required=True, help="range A..B or single value")
    i.add_argument("--r", default=None, help="range A..B (default r = 1)")
    i.add_argument("--format", choices=("json", "csv", "text"), default="text")
    i.add_argument("--pivotal", default=None,
                   help="canonical | first | index (when absent in the spec)")
    i.add_argument("--dump", action="store_true",
                   help="render the rotation block matrices")
    i.set_defaults(fn=cmd_ind)

    c = sub.add_parser("check", help="run the theorem suite")
    c.add_argument("spec")
    c.add_argument("--nmax", type=int, default=5)
    c.set_defaults(fn=cmd_check)

    g = sub.add_parser("gauge-check", help="seeded random gauge trials")
    g.add_argument("spec")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--trials", type=int, default=20)
    g.set_defaults(fn=cmd_gauge_check)

    e = sub.add_parser("emit", help="write a generated spec file")
    e.add_argument("family", choices=("pointed", "ty", "rank2"))
    e.add_argument("-o", "--output", required=True)
    e.add_argument("--order", type=int, default=2, help="pointed: group order")
    e.add_argument("--level", type=int, default=0, help="pointed: cocycle level")
    e.add_argument("--orders", default="2", help="ty: cyclic orders, comma-separated")
    e.add_argument("--sign", type=int, choices=(1, -1), default=1,
                   help="ty: sign of tau = sign/sqrt(|A|)")
    e.add_argument("--index", type=int, default=0, help="rank2: solution index")
    e.add_argument("--conductor", type=int, default=None)
    e.add_argument("--pivotal", default="canonical",
                   help="canonical | first | index K | none")
    e.set_defaults(fn=cmd_emit)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (SpecFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (_Semantic, DimensionGuardError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
