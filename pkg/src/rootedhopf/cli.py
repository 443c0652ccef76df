"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 witness or mismatch found,
3 resource bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from rootedhopf import duality, enumeration, expr, hopf, structure
from rootedhopf import double as double_mod
from rootedhopf.errors import ParseError, ResourceBoundError, RootedHopfError
from rootedhopf.hopf import HElem, Tensor, forest_text
from rootedhopf.trees import Forest, forest_to_dot, generate_forests, generate_trees

EXIT_OK, EXIT_USAGE, EXIT_WITNESS, EXIT_BOUND = 0, 1, 2, 3

REPORT_KINDS = ("primitives", "generated-by-primitives", "integrals", "pairing", "double")
CHECK_SUITES = ("hopf", "coproduct-oracle", "enumeration", "structure", "pairing",
                "double", "random", "all")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _resolve(kind: str, choices: tuple[str, ...], what: str) -> str:
    hits = [c for c in choices if c.startswith(kind)]
    if kind in choices:
        return kind
    if len(hits) == 1:
        return hits[0]
    if not hits:
        raise UsageError(f"unknown {what} {kind!r}; expected one of {', '.join(choices)}")
    raise UsageError(f"ambiguous {what} {kind!r}: {', '.join(hits)}")


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--format", choices=("text", "json", "dot"), default=d("text"))
    p.add_argument("--bound", type=int, default=d(expr.DEFAULT_BOUND))
    p.add_argument("--seed", type=int, default=d(0))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rootedhopf", description="Exact computations in the Hopf algebra of rooted trees.")
    _global_flags(parser, suppress=False)
    common = _Parser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", parents=[common], help="tree counts from the recurrence")
    p.add_argument("--nmax", type=int, default=None, help="defaults to --bound")
    p.add_argument("--r", type=int, default=None, help="bound on fertility")
    p.add_argument("--mode", choices=enumeration.MODES, default=None,
                   help="fertility constraint reading (default corrected)")
    p.add_argument("--verify", action="store_true", help="compare with brute-force counts")

    p = sub.add_parser("list", parents=[common], help="canonical trees of weight n")
    p.add_argument("n", type=int)

    p = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    p.add_argument("expression")

    p = sub.add_parser("report", parents=[common], help="analysis reports (JSON)")
    p.add_argument("kind")
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--variant", choices=structure.VARIANTS, default="full")
    p.add_argument("--level", type=int, default=3)
    p.add_argument("--check", action="append", default=None,
                   help="double check to run (repeatable); default all")
    p.add_argument("--model", choices=("ck", "gl"), default="ck")

    p = sub.add_parser("check", parents=[common], help="run verification suites")
    p.add_argument("suite", nargs="?", default="all")
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--samples", type=int, default=20)
    return parser


def _need_bound(n: int, bound: int, what: str) -> None:
    if n > bound:
        raise ResourceBoundError(f"{what} {n} exceeds bound {bound}")


# --- subcommands; each returns (exit code, output text)

def run_count(args) -> tuple[int, str]:
    if args.nmax is None:
        args.nmax = args.bound
    _need_bound(args.nmax, args.bound, "nmax")
    if args.nmax < 1:
        raise UsageError("nmax must be >= 1")
    if args.r is not None and args.r < 1:
        raise UsageError("r must be >= 1")
    if args.mode is None:
        args.mode = "corrected"
        if args.r is not None:
            args.notices.append("note: using the corrected fertility constraint; "
                                "pass --mode paper-literal for the literal reading")
    rows = enumeration.count_table(args.nmax, args.r, args.mode, args.verify)
    mismatch = any(not row.get("match", True) for row in rows)
    code = EXIT_WITNESS if args.verify and mismatch else EXIT_OK
    if args.format == "json":
        out = {"nmax": args.nmax, "r": args.r, "mode": args.mode, "rows": rows}
        if args.r is not None:
            out["first_divergence"] = next(
                ({"n": row["n"], "value": row["a"], "oracle": row["oracle"]}
                 for row in rows if not row.get("match", True)), None)
        return code, json.dumps(out, indent=2)
    if args.format == "dot":
        raise UsageError("--format dot is only available for list")
    label = "a(n)" if args.r is None else f"a_{args.r}(n)"
    with_oracle = any("oracle" in row for row in rows)
    lines = [f"n {label}" + (" oracle match" if with_oracle else "")]
    for row in rows:
        line = f"{row['n']} {row['a']}"
        if "oracle" in row:
            line += f" {row['oracle']} " + ("ok" if row["match"] else "DIVERGES")
        lines.append(line)
    return code, "\n".join(lines)


def run_list(args) -> tuple[int, str]:
    _need_bound(args.n, args.bound, "n")
    if args.n < 1:
        raise UsageError("n must be >= 1")
    trees = generate_trees(args.n)
    if args.format == "json":
        return EXIT_OK, json.dumps({"n": args.n, "count": len(trees),
                                    "trees": [t.canon for t in trees]}, indent=2)
    if args.format == "dot":
        return EXIT_OK, "\n".join(forest_to_dot(Forest((t,)), f"T{i}") for i, t in enumerate(trees))
    return EXIT_OK, "\n".join(t.canon for t in trees)


def _json_value(v) -> dict:
    if isinstance(v, Tensor):
        return {"kind": "tensor", "text": str(v),
                "terms": [{"coeff": str(c), "legs": [forest_text(f) for f in k]}
                          for k, c in v.sorted_terms()]}
    return {"kind": "element", "text": str(v),
            "terms": [{"coeff": str(c), "forest": forest_text(f)} for f, c in v.sorted_terms()]}


def run_eval(args) -> tuple[int, str]:
    value = expr.evaluate(expr.parse(args.expression), args.bound)
    if args.format == "json":
        out = {"expression": args.expression}
        out.update(_json_value(value))
        return EXIT_OK, json.dumps(out, indent=2, ensure_ascii=False)
    if args.format == "dot":
        raise UsageError("--format dot is only available for list")
    return EXIT_OK, expr.render(value)


def _primitives_report(nmax: int, variant: str) -> dict:
    degrees = []
    for n in range(1, nmax + 1):
        pb = structure.primitive_basis(n, variant)
        degrees.append({"degree": n, "dim": len(pb.elements),
                        "basis": [str(x) for x in pb.elements]})
    return {"report": "primitives", "variant": variant, "nmax": nmax,
            "dims": [d["dim"] for d in degrees], "degrees": degrees}


def run_report(args) -> tuple[int, str]:
    kind = _resolve(args.kind, REPORT_KINDS, "report kind")
    code = EXIT_OK
    if kind == "primitives":
        nmax = args.nmax or 5
        _need_bound(nmax, args.bound, "nmax")
        out = _primitives_report(nmax, args.variant)
    elif kind == "generated-by-primitives":
        nmax = args.nmax or 5
        _need_bound(nmax, args.bound, "nmax")
        rows = structure.primitively_generated_report(args.variant, nmax)
        out = {"report": "generated-by-primitives", "variant": args.variant, "nmax": nmax,
               "rows": rows, "defects": [r["defect"] for r in rows]}
    elif kind == "integrals":
        nmax = args.nmax or 6
        _need_bound(nmax, args.bound, "nmax")
        out = structure.integrals_report(nmax)
    elif kind == "pairing":
        nmax = args.nmax or 4
        _need_bound(nmax, min(args.bound, duality.PAIRING_BOUND), "nmax")
        out = duality.pairing_report(nmax)
    else:
        level = args.level
        _need_bound(level, min(args.bound, double_mod.DOUBLE_BOUND), "level")
        checks = args.check or ["all"]
        names = []
        for c in checks:
            name = _resolve(c, double_mod.CHECKS + ("all",), "double check")
            names.extend(double_mod.CHECKS if name == "all" else [name])
        out = double_mod.double_report(level, tuple(dict.fromkeys(names)), args.model)
        code = EXIT_OK if out["pass"] else EXIT_WITNESS
    if args.format == "dot":
        raise UsageError("--format dot is only available for list")
    return code, json.dumps(out, indent=2, ensure_ascii=False)


def _random_suite(seed: int, samples: int, bound: int) -> dict:
    """Coproduct multiplicativity and antipode identities on random products of forests."""
    rng = random.Random(seed)
    top = min(bound, 6)
    failures = []
    for _ in range(samples):
        a = rng.choice(generate_forests(rng.randint(0, top // 2)))
        b = rng.choice(generate_forests(rng.randint(0, top - a.weight)))
        x = HElem.of(a) * rng.randint(-3, 3) + HElem.of(b)
        y = HElem.of(b)
        if hopf.coproduct(x * y) != hopf.coproduct(x) * hopf.coproduct(y):
            failures.append(f"multiplicativity {a} {b}")
        if hopf.antipode(x * y) != hopf.antipode(x) * hopf.antipode(y):
            failures.append(f"antipode {a} {b}")
    return {"pass": not failures, "seed": seed, "samples": samples, "failures": failures[:5]}


def _suite(name: str, nmax: int | None, args) -> dict:
    if name == "hopf":
        r = hopf.check_hopf_axioms(nmax or 5)
    elif name == "coproduct-oracle":
        r = hopf.check_coproduct_oracle(nmax or 6)
    elif name == "enumeration":
        n = nmax or 10
        rows = enumeration.count_table(n, verify=True)
        branch = [row for rr in (1, 2, 3) for row in enumeration.count_table(n, rr, "corrected", True)]
        bad = [row for row in rows + branch if not row["match"]]
        r = {"nmax": n, "pass": not bad, "mismatches": bad[:5]}
    elif name == "structure":
        n = nmax or 5
        dims = [len(structure.primitive_basis(k).elements) for k in range(1, n + 1)]
        bases = {m: all(structure.top_monomial_basis(k, m).is_basis for k in range(1, n + 1))
                 for m in structure.NESTINGS}
        r = {"nmax": n, "primitive_dims": dims, "grafting_bases": bases,
             "pass": any(bases.values())}
    elif name == "pairing":
        n = nmax or 4
        rec = duality.check_pairing_recursion(n)
        ok, w = duality.check_psi_multiplicative(n)
        ranks = all(duality.psi_rank(k) == len(generate_forests(k)) for k in range(n + 1))
        r = {"nmax": n, "recursion": rec["pass"], "psi_multiplicative": ok,
             "psi_full_rank": ranks, "pass": rec["pass"] and ok and ranks}
    elif name == "double":
        rep = double_mod.double_report(nmax or 3)
        r = {"level": rep["level"], "legs_mode": rep["legs_mode"], "pass": rep["pass"],
             "failed": [x for x in rep["results"] if x["status"] != "pass"]}
    else:
        r = _random_suite(args.seed, args.samples, args.bound)
    r = dict(r)
    r["suite"] = name
    return r


def run_check(args) -> tuple[int, str]:
    name = _resolve(args.suite, CHECK_SUITES, "check suite")
    if args.nmax is not None:
        _need_bound(args.nmax, args.bound, "nmax")
    names = CHECK_SUITES[:-1] if name == "all" else (name,)
    results = [_suite(n, args.nmax, args) for n in names]
    code = EXIT_OK if all(r["pass"] for r in results) else EXIT_WITNESS
    if args.format == "json":
        return code, json.dumps(results, indent=2, ensure_ascii=False)
    if args.format == "dot":
        raise UsageError("--format dot is only available for list")
    return code, "\n".join(f"{'PASS' if r['pass'] else 'FAIL'} {r['suite']}" for r in results)


COMMANDS = {"count": run_count, "list": run_list, "eval": run_eval,
            "report": run_report, "check": run_check}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.bound > expr.HARD_CAP:
            raise ResourceBoundError(f"--bound {args.bound} exceeds hard cap {expr.HARD_CAP}")
        if args.bound < 0:
            raise UsageError("--bound must be >= 0")
        args.notices = []
        code, text = COMMANDS[args.command](args)
        for note in args.notices:
            print(note, file=stderr)
    except UsageError as e:
        print(f"error: {e}", file=stderr)
        return EXIT_USAGE
    except ParseError as e:
        print(f"parse error: {e}", file=stderr)
        return EXIT_USAGE
    except ResourceBoundError as e:
        print(f"bound exceeded: {e}", file=stderr)
        return EXIT_BOUND
    except RootedHopfError as e:
        print(f"error: {e}", file=stderr)
        return EXIT_USAGE
    print(text, file=stdout)
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
