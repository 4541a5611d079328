"""Command-line front end: compute, sweep, pell."""

import argparse
import json
import sys

from .arith import is_prime, primes_up_to
from .errors import DispatchInconsistency, InvalidInput, QuarticGenusError, UnhandledCase
from .field_model import FieldContext, build_field, discriminant, validate_input
from .genus import (
    GeneratorSet,
    QuadInt,
    Rational,
    UnitMonomial,
    format_quad,
    genus_field,
    genus_matches_narrow_product,
)
from .hilbert import hilbert_genus_field
from .norm_eq import (
    PellSolution,
    check_two_adic_valuation,
    check_quartic_criterion,
    classify_form,
    solve_norm_equation,
    solve_split_prime_p2,
)
from .verify import (
    ambiguous_rank_check,
    genus_contained,
    independence_mod_squares,
    is_unramified_generator,
    unit_norm_index,
    verify_all,
)

CHECKS = ("pell", "valuation", "quartic", "unramified", "independence", "rank", "genus")


def _s(x):
    return None if x is None else str(x)


def quad_json(x) -> dict:
    return {"u": str(x.u), "v": str(x.v), "den": str(x.den)}


def radicand_json(r) -> dict:
    if isinstance(r, Rational):
        return {"type": "rational", "value": str(r.r)}
    if isinstance(r, QuadInt):
        return {"type": "quadratic", **quad_json(r.alpha)}
    if isinstance(r, UnitMonomial):
        return {"type": "unit", "c": str(r.c), "eps": str(r.s), "sqrtp": str(r.t)}
    raise TypeError(f"not a radicand: {r!r}")


def trace_json(trace) -> dict:
    return {
        "case": trace.case,
        "row": trace.row,
        "conditions": [[name, value] for name, value in trace.conditions],
        "chosen_pell": [[str(q), [str(x), str(y)]] for q, (x, y) in trace.chosen_pell],
        "flags": list(trace.flags),
    }


def generators_json(gens: GeneratorSet, p: int) -> dict:
    return {
        "labels": gens.labels(p),
        "radicands": [radicand_json(r) for r in gens.radicands],
        "trace": trace_json(gens.trace),
    }


def pell_json(sol: PellSolution) -> dict:
    return {
        "p": str(sol.p),
        "q": str(sol.q),
        "x": str(sol.x),
        "y": str(sol.y),
        "exponent": str(sol.exponent),
        "form": sol.form.name if sol.form else None,
        "two_adic_valuation": _s(sol.e),
    }


def compute_document(ctx: FieldContext) -> dict:
    p = ctx.p
    info = discriminant(ctx)
    gen = genus_field(ctx)
    hil = hilbert_genus_field(ctx)
    verdict = verify_all(ctx)
    return {
        "input": {"p": str(p), "a": str(ctx.a)},
        "field": {
            "primes": [
                {"q": str(d.q), "splits": d.splits, "mod4": str(d.mod4)} for d in ctx.primes
            ],
            "n": str(ctx.n),
            "m": str(ctx.m),
            "i0": _s(ctx.i0),
            "j0": _s(ctx.j0),
            "class_number": str(ctx.h),
            "lambda": str(ctx.lam),
            "b": str(ctx.b),
            "c": str(ctx.c),
            "eps": quad_json(ctx.eps),
            "alphas": [format_quad(al) for al in ctx.alphas],
            "pell": [pell_json(s) for s in ctx.pell],
        },
        "discriminant": {
            "value": str(info.value),
            "factors": {str(ell): str(k) for ell, k in info.abs_disc.items()},
            "relative": info.rel_disc_str(p),
            "t": str(info.t),
            "infinite_ramified": str(info.infinite_ramified),
        },
        "genus": generators_json(gen, p),
        "hilbert": generators_json(hil, p),
        "hilbert_generators": hil.labels(p),
        "rank": str(len(hil)),
        "verification": {
            "unramified": [[label, ok] for label, ok in verdict.unramified],
            "totally_positive": [[label, ok] for label, ok in verdict.infinite_ok],
            "independent": verdict.independent,
            "genus_contained": verdict.genus_contained,
            "genus_matches_narrow_product": genus_matches_narrow_product(ctx, gen),
            "unit_index": {"lo": str(verdict.e.lo), "hi": str(verdict.e.hi)},
            "rank_ok": verdict.rank_ok,
        },
    }


def render_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


def _field_line(labels) -> str:
    return "K(" + ", ".join(labels) + ")" if labels else "K"


def render_compute_text(doc: dict) -> str:
    f = doc["field"]
    d = doc["discriminant"]
    v = doc["verification"]
    lines = [
        f"K = Q(sqrt({doc['input']['a']}*eps_{doc['input']['p']}*sqrt({doc['input']['p']})))",
        "primes of a: "
        + (", ".join(f"{x['q']} ({'split' if x['splits'] else 'inert'})" for x in f["primes"]) or "none"),
        f"n = {f['n']}, m = {f['m']}, i0 = {f['i0']}, j0 = {f['j0']}, h = {f['class_number']}",
        "alpha: " + (", ".join(f["alphas"]) or "none"),
        f"discriminant = {d['value']}, relative discriminant = {d['relative']}, t = {d['t']}",
        f"genus case: {doc['genus']['trace']['case']} [{doc['genus']['trace']['row']}]",
        f"K^(*) = {_field_line(doc['genus']['labels'])}",
        f"hilbert case: {doc['hilbert']['trace']['case']} [{doc['hilbert']['trace']['row']}]",
    ]
    for name, value in doc["hilbert"]["trace"]["conditions"]:
        lines.append(f"  {name} = {value}")
    for flag in doc["hilbert"]["trace"]["flags"]:
        lines.append(f"  note: {flag}")
    e = v["unit_index"]
    e_str = e["lo"] if e["lo"] == e["hi"] else f"[{e['lo']}, {e['hi']}]"
    lines += [
        f"rank = {doc['rank']}, unit index e = {e_str}, rank check {'ok' if v['rank_ok'] else 'FAILED'}",
        "unramified: " + (", ".join(f"{lab} {'ok' if ok else 'FAILED'}" for lab, ok in v["unramified"]) or "-"),
        f"independent: {v['independent']}, genus contained: {v['genus_contained']}",
        f"E(K) = {_field_line(doc['hilbert_generators'])}",
    ]
    return "\n".join(lines)


def pell_solution(p: int, q: int) -> PellSolution:
    if p == 2 and q % 8 == 7:
        return solve_split_prime_p2(q)
    return solve_norm_equation(p, q)


def admissible_pell_pairs(p_max: int, q_max: int):
    for p in primes_up_to(p_max):
        if p != 2 and p % 4 != 1:
            continue
        for q in primes_up_to(q_max):
            if q != p and q != 2 and classify_form(p, q) is not None:
                yield p, q


def valid_cases(p_max: int, a_max: int):
    for p in primes_up_to(p_max):
        if p != 2 and p % 4 != 1:
            continue
        for a in range(1, a_max + 1):
            if not validate_input(p, a):
                yield p, a


def _pell_failures(p_max, q_max, checks):
    cases = 0
    failures = []
    for p, q in admissible_pell_pairs(p_max, q_max):
        cases += 1
        try:
            sol = solve_norm_equation(p, q)
        except QuarticGenusError as exc:
            failures.append(f"pell p={p} q={q}: {exc}")
            continue
        if "pell" in checks and not (sol.holds() and sol.parity_ok()):
            failures.append(f"pell p={p} q={q}: ({sol.x}, {sol.y}) fails the equation or parity")
        if "valuation" in checks and p != 2 and not check_two_adic_valuation(sol):
            failures.append(f"valuation p={p} q={q}: ({sol.x}, {sol.y})")
        if "quartic" in checks and not check_quartic_criterion(sol):
            failures.append(f"quartic p={p} q={q}: ({sol.x}, {sol.y})")
    return cases, failures


def _field_failures(p: int, a: int, checks) -> list:
    tag = f"p={p} a={a}"
    try:
        ctx = build_field(p, a)
        hil = hilbert_genus_field(ctx)
        out = []
        if "unramified" in checks:
            bad = [r.label(p) for r in hil.radicands if not is_unramified_generator(ctx, r)]
            if bad:
                out.append(f"unramified {tag}: {', '.join(bad)}")
        if "independence" in checks and not independence_mod_squares(ctx, hil):
            out.append(f"independence {tag}: {', '.join(hil.labels(p))}")
        if "rank" in checks:
            e = unit_norm_index(ctx)
            if not ambiguous_rank_check(ctx, e, len(hil)):
                out.append(
                    f"rank {tag}: rank {len(hil)}, t = {discriminant(ctx).t}, e in [{e.lo}, {e.hi}]"
                    f" ({hil.trace.case} [{hil.trace.row}])"
                )
        if "genus" in checks:
            gen = genus_field(ctx)
            if not (genus_contained(ctx, gen, hil) and genus_matches_narrow_product(ctx, gen)):
                out.append(f"genus {tag}: {', '.join(gen.labels(p))}")
        return out
    except (UnhandledCase, DispatchInconsistency) as exc:
        return [f"dispatch {tag}: {exc}"]


def run_sweep(p_max: int, a_max: int, checks, q_max=None) -> tuple:
    """(number of cases, failure lines); cases count (p, q) pairs and (p, a) fields."""
    checks = set(checks)
    cases = 0
    failures = []
    if checks & {"pell", "valuation", "quartic"}:
        n, f = _pell_failures(p_max, p_max if q_max is None else q_max, checks)
        cases += n
        failures += f
    if checks & {"unramified", "independence", "rank", "genus"}:
        for p, a in valid_cases(p_max, a_max):
            cases += 1
            failures += _field_failures(p, a, checks)
    return cases, failures


def _parse_checks(text: str) -> tuple:
    names = [s.strip() for s in text.split(",") if s.strip()]
    if "all" in names:
        return CHECKS
    unknown = [s for s in names if s not in CHECKS]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown check(s): {', '.join(unknown)}")
    return tuple(names)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quarticgenus", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="genus field and Hilbert genus field of one K")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--a", type=int, required=True)
    c.add_argument("--format", choices=("text", "json"), default="text")

    s = sub.add_parser("sweep", help="run check families over a range")
    s.add_argument("--p-max", type=int, required=True)
    s.add_argument("--a-max", type=int, required=True)
    s.add_argument("--q-max", type=int, default=None, help="bound on q for the Pell checks (default: p-max)")
    s.add_argument("--checks", type=_parse_checks, default=CHECKS, help=f"comma list of {', '.join(CHECKS)} or all")
    s.add_argument("--format", choices=("text", "json"), default="text")

    e = sub.add_parser("pell", help="minimal solution of the norm equation for (p, q)")
    e.add_argument("--p", type=int, required=True)
    e.add_argument("--q", type=int, required=True)
    e.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def cmd_compute(args, out) -> int:
    try:
        ctx = build_field(args.p, args.a)
        doc = compute_document(ctx)
    except InvalidInput as exc:
        for problem in exc.problems:
            print(f"error: {problem}", file=sys.stderr)
        return 2
    except (UnhandledCase, DispatchInconsistency) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    print(render_json(doc) if args.format == "json" else render_compute_text(doc), file=out)
    return 0


def cmd_sweep(args, out) -> int:
    if args.p_max < 0 or args.a_max < 0:
        print("error: bounds must be nonnegative", file=sys.stderr)
        return 2
    cases, failures = run_sweep(args.p_max, args.a_max, args.checks, args.q_max)
    if args.format == "json":
        doc = {"cases": str(cases), "failures": failures, "checks": list(args.checks)}
        print(render_json(doc), file=out)
    else:
        for line in failures:
            print(line, file=out)
        print(f"{cases} cases, {len(failures)} failures", file=out)
    return 1 if failures else 0


def cmd_pell(args, out) -> int:
    p, q = args.p, args.q
    problems = []
    if not (p == 2 or (is_prime(p) and p % 4 == 1)):
        problems.append(f"p must be 2 or a prime = 1 mod 4, got {p}")
    if not is_prime(q) or q == 2 or q == p:
        problems.append(f"q must be an odd prime different from p, got {q}")
    if problems:
        for problem in problems:
            print(f"error: {problem}", file=sys.stderr)
        return 2
    try:
        sol = pell_solution(p, q)
    except QuarticGenusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    doc = pell_json(sol)
    if sol.form is not None:
        if p != 2:
            doc["valuation"] = check_two_adic_valuation(sol)
        doc["quartic"] = check_quartic_criterion(sol)
    if args.format == "json":
        print(render_json(doc), file=out)
    else:
        form = f" ({sol.form.value})" if sol.form else ""
        print(f"{sol.x}^2 - {p}*{sol.y}^2 = {q}^{sol.exponent}{form}", file=out)
        for key in ("valuation", "quartic"):
            if key in doc:
                print(f"{key}: {'ok' if doc[key] else 'FAILED'}", file=out)
    return 0


def main(argv=None, out=None) -> int:
    args = build_parser().parse_args(argv)
    out = out or sys.stdout
    handler = {"compute": cmd_compute, "sweep": cmd_sweep, "pell": cmd_pell}[args.command]
    return handler(args, out)


if __name__ == "__main__":
    sys.exit(main())
