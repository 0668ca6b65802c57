"""Command-line front end.

Every command prints a JSON envelope ``{command, version, inputs, result,
checks}``. Exit status: 0 when all checks pass, 1 when one fails, 2 on usage
errors or an exhausted budget.

Field-element literals: integers (reduced mod p), ``@k`` for the element with
code k in F_{p^n}, fractions such as ``-3/4`` over QQ. Extension elements are
written ``u`` or ``u+v*w`` with w^2 = t.
"""

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import __version__, linalg
from . import algebra as alg
from .algebra import AlgebraSpec, Triple
from .budget import BudgetExceeded, default_budget
from .classification import (
    OrderedSetPredicates,
    fq_classify,
    is_admissible_via_b,
    ordered_grid_check,
    square_ordered_report,
    standard_extension,
)
from .fields import QQ, FieldError
from .finite_field import PrimePowerField, fq
from .groupoid import check_description, describe, functor_laws_hold
from .morphisms import (
    aut_group,
    brute_force_morphisms,
    constructed_morphisms,
    ell_star_set,
    klein_relations,
)
from .quad_ext import gaussian_rationals
from .suites import admissible_triples, run_suite


class UsageError(Exception):
    pass


# -- literals -------------------------------------------------------------

def parse_elem(F, text):
    text = text.strip()
    try:
        if F is QQ:
            return Fraction(text)
        if text.startswith("@"):
            return F.from_code(int(text[1:]))
        return F(int(text))
    except (ValueError, ZeroDivisionError, FieldError) as exc:
        raise UsageError(f"bad field literal {text!r}: {exc}") from None


def parse_triple(F, text):
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"expected three comma-separated entries, got {text!r}")
    return Triple(*(parse_elem(F, p) for p in parts))


def lit(x):
    """JSON literal of a base element: its code over F_q, a string over QQ."""
    if isinstance(x, Fraction):
        return str(x)
    return int(x)


def ext_lit(a):
    u, v = lit(a.u), lit(a.v)
    return f"{u}" if a.v == 0 else f"{u}+{v}*w"


def triple_lit(c):
    return [lit(x) for x in c]


# -- field selection ----------------------------------------------------------

def field_from_args(args):
    try:
        if args.q is not None:
            if args.p is not None:
                raise UsageError("give either --q or --p/--n, not both")
            return fq(args.q)
        if args.p is not None:
            return PrimePowerField(args.p, args.n or 1)
    except FieldError as exc:
        raise UsageError(str(exc)) from None
    raise UsageError("a field is required: --q Q or --p P [--n N]")


def extension_from_args(F, args):
    t = None if args.t is None else parse_elem(F, args.t)
    try:
        return standard_extension(F, t)
    except FieldError as exc:
        raise UsageError(str(exc)) from None


def check(name, ok, detail=""):
    return {"name": name, "pass": bool(ok), "detail": detail}


# -- commands -----------------------------------------------------------------

def cmd_classify(args, budget):
    F = field_from_args(args)
    ext = extension_from_args(F, args)
    report = fq_classify(F, ext.t, budget)
    checks = [check(k, v) for k, v in report.cross_checks.items()]
    rows = [[F.q, lit(ext.t), *triple_lit(c)] for c in report.transversal]
    return report.to_dict(), checks, (["q", "t", "c1", "c2", "c3"], rows)


def closed_form_reason(F, c):
    c1, c2, c3 = c
    if (1 - c1) * c2 == 0:
        return "(1-c1)c2 = 0"
    if F.is_square(1 - 2 * c1):
        return "1-2c1 is a square"
    if c3 != -c1 * alg.square_abs(F, c2) / alg.square_abs(F, 1 - c1):
        return "c3 != -c1|c2|/|1-c1|"
    return "closed form satisfied"


def cmd_admissible(args, budget):
    F = field_from_args(args)
    ext = extension_from_args(F, args)
    c = parse_triple(F, need(args, "c"))
    A = AlgebraSpec(ext, c)
    witness = alg.isotropy_witness(A, budget)
    brute = witness is None
    closed = alg.is_admissible_closed_form_fq(A)
    via_b = is_admissible_via_b(F, c)
    result = {
        "c": triple_lit(c),
        "admissible": brute,
        "reason": closed_form_reason(F, c),
        "deciders": {"bruteforce": brute, "closed_form": closed, "via_b": via_b},
        "witness": None if brute else [ext_lit(witness[0]), ext_lit(witness[1])],
    }
    checks = [check("deciders_agree", brute == closed == via_b)]
    return result, checks, None


def cmd_iso(args, budget):
    F = field_from_args(args)
    ext = extension_from_args(F, args)
    c = parse_triple(F, need(args, "c"))
    d = parse_triple(F, need(args, "d"))
    A, B = AlgebraSpec(ext, c), AlgebraSpec(ext, d)
    star = ell_star_set(ext, c, d)
    result = {
        "c": triple_lit(c),
        "d": triple_lit(d),
        "isomorphic": bool(star),
        "ell_star": [ext_lit(a) for a in star],
        "morphisms": [{"kind": w.kind, "a": ext_lit(w.a)} for w in constructed_morphisms(A, B)],
    }
    checks = []
    if F.q <= budget.morphism_q:
        brute = {m.matrix for m in brute_force_morphisms(A, B, budget)}
        built = {w.matrix() for w in constructed_morphisms(A, B)}
        checks.append(check("bruteforce_eq_constructed", brute == built, f"{len(brute)} morphisms"))
    else:
        result["note"] = f"brute-force oracle skipped: q > morphism cap {budget.morphism_q}"
    return result, checks, None


def cmd_aut(args, budget):
    F = field_from_args(args)
    ext = extension_from_args(F, args)
    c = parse_triple(F, need(args, "c"))
    A = AlgebraSpec(ext, c)
    admissible = alg.is_admissible_closed_form_fq(A)
    G = aut_group(A)
    result = {
        "c": triple_lit(c),
        "admissible": admissible,
        "tag": G.tag,
        "order": G.order,
        "elements": G.elements,
        "table": [[a, b, ab] for (a, b), ab in G.table.items()],
        "description": G.description,
    }
    checks = [check("admissible", admissible)]
    mats = [w.matrix() for w in constructed_morphisms(A, A)]
    identity = tuple(tuple(r) for r in linalg.identity(4, F))
    checks.append(check("klein_relations", klein_relations(mats, identity)))
    if F.q <= budget.morphism_q:
        n = len(brute_force_morphisms(A, A, budget))
        checks.append(check("bruteforce_order_4", n == 4, f"|Aut| = {n}"))
    return result, checks, None


def cmd_orbits(args, budget):
    F = field_from_args(args)
    ext = extension_from_args(F, args)
    desc = describe(ext, args.nu, admissible_triples(ext, budget))
    checks = []
    if F.q <= budget.morphism_q:
        for name, ok in check_description(desc, budget).items():
            checks.append(check(name, ok))
        checks.append(check("functor_laws", functor_laws_hold(desc)))
    rows = [[i, *triple_lit(c)] for i, orb in enumerate(desc.orbits) for c in orb]
    return desc.to_dict(), checks, (["orbit", "c1", "c2", "c3"], rows), desc


def cmd_verify(args, budget):
    F = field_from_args(args)
    threads = args.threads or os.cpu_count() or 1
    try:
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = run_suite(F, args.suite, budget, pool)
        else:
            results = run_suite(F, args.suite, budget)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    checks = [r.to_dict() for r in results]
    return {"q": F.q, "suite": args.suite, "count": len(checks)}, checks, None


def cmd_ordered(args, budget):
    if args.action == "report":
        return square_ordered_report(), [], None
    if args.action == "grid":
        counts, failures = ordered_grid_check()
        checks = [check(k, not v, f"{len(v)} failures") for k, v in failures.items()]
        return {"counts": counts}, checks, None
    c = parse_triple(QQ, need(args, "c"))
    A = AlgebraSpec(gaussian_rationals(), c)
    P = OrderedSetPredicates
    w = alg.real_isotropy_witness(A)
    result = {
        "c": triple_lit(c),
        "in_C": P.in_C(c),
        "in_CN0": P.in_CN0(c),
        "in_CN1": P.in_CN1(c),
        "in_TN0": P.in_TN0(c),
        "in_TN1": P.in_TN1(c),
        "certificate": alg.is_admissible_positivity_cert(A),
        "witness": None if w is None else {"r": str(w.r), "coords": [str(x) for x in w.coords]},
    }
    checks = [check("certificate_and_witness_consistent", not (result["certificate"] == "certified" and w))]
    return result, checks, None


def need(args, name):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name} is required")
    return value


COMMANDS = {
    "classify": cmd_classify,
    "admissible": cmd_admissible,
    "iso": cmd_iso,
    "aut": cmd_aut,
    "orbits": cmd_orbits,
    "verify": cmd_verify,
    "ordered": cmd_ordered,
}


# -- argument parsing ---------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, help="field order (odd prime power)")
    common.add_argument("--p", type=int, help="characteristic")
    common.add_argument("--n", type=int, help="degree over the prime field")
    common.add_argument("--t", help="non-square defining l = k(sqrt t); default: least non-square")
    common.add_argument("--format", choices=["json", "csv", "dot"], default="json")
    common.add_argument("--out", help="write to this file instead of stdout")
    common.add_argument("--threads", type=int, help="worker threads (default: all cores)")
    common.add_argument("--budget", type=int, help="cap every exhaustive oracle at this q")

    parser = argparse.ArgumentParser(prog="kleinfour", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common], help="transversal of the isoclasses over F_q")
    p = sub.add_parser("admissible", parents=[common], help="decide whether A(l, c) is a division algebra")
    p.add_argument("--c", required=True)
    p = sub.add_parser("iso", parents=[common], help="isomorphisms A(l, c) -> A(l, d)")
    p.add_argument("--c", required=True)
    p.add_argument("--d", required=True)
    p = sub.add_parser("aut", parents=[common], help="automorphism group of A(l, c)")
    p.add_argument("--c", required=True)
    p = sub.add_parser("orbits", parents=[common], help="orbit partition of the action groupoid")
    p.add_argument("--nu", type=int, choices=[0, 1, 2, 3], default=1)
    p = sub.add_parser("verify", parents=[common], help="run an invariant battery")
    p.add_argument("--suite", default="all")
    p = sub.add_parser("ordered", parents=[common], help="square-ordered predicates over QQ(sqrt -1)")
    p.add_argument("action", choices=["check", "report", "grid"], nargs="?", default="report")
    p.add_argument("--c")
    return parser


def inputs_echo(args):
    return {k: v for k, v in vars(args).items() if k not in ("out",)}


def render(args, envelope, table, extra):
    if args.format == "csv":
        if table is None:
            raise UsageError(f"{args.command} has no tabular output")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(table[0])
        writer.writerows(table[1])
        return buf.getvalue()
    if args.format == "dot":
        if extra is None:
            raise UsageError(f"{args.command} has no DOT output")
        return extra.to_dot() + "\n"
    return json.dumps(envelope, indent=2) + "\n"


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    budget = default_budget() if args.budget is None else default_budget().uniform(args.budget)
    try:
        out = COMMANDS[args.command](args, budget)
        result, checks, table = out[:3]
        extra = out[3] if len(out) > 3 else None
        envelope = {
            "command": args.command,
            "version": __version__,
            "inputs": inputs_echo(args),
            "result": result,
            "checks": checks,
        }
        text = render(args, envelope, table, extra)
    except BudgetExceeded as exc:
        print(f"kleinfour: {exc}", file=sys.stderr)
        return 2
    except UsageError as exc:
        print(f"kleinfour: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(c["pass"] for c in checks) else 1


if __name__ == "__main__":
    sys.exit(main())
