"""Command-line front end.

Subcommands: solve, decide, closed-form, matching-cut, bound, generate,
verify.  Graphs come from a file in the ``p/e`` text format (``-`` for
stdin) or from ``--named <id>``.  Exit codes: 0 ok, 1 usage or parse
failure, 2 precondition violation or no applicable rule, 3 budget
exhausted (inconclusive), 4 property falsified.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import asdict
from fractions import Fraction

from .construct import lower_bound_witness
from .errors import (BudgetExceededError, DegratioError, GraphParseError,
                     NoApplicableRule, ParameterError, PreconditionError)
from .formulas import class_lower_bound, closed_form, edge_upper_bound
from .graph import (Graph, bipartition_classes, build_named, emit_graph,
                    parse_graph, regularity)
from .ratios import format_ratio, parse_ratio, partition_quality
from .reductions import (bipartite_double_cover, cover_plus_matching,
                         product_with_fixed, twin_expand_then_K2,
                         verify_equivalence)
from .solver import DEFAULT_BUDGET, decide, find_matching_cut, solve_q
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_BUDGET = 3
EXIT_FALSIFIED = 4


def _load_graph(args) -> Graph:
    if getattr(args, "named", None):
        if getattr(args, "input", None):
            raise ParameterError("give either an input file or --named, not both")
        return build_named(args.named)
    if not getattr(args, "input", None):
        raise ParameterError("an input file (or -) or --named is required")
    if args.input == "-":
        return parse_graph(sys.stdin.read())
    with open(args.input) as fh:
        return parse_graph(fh.read())


def _budget(args) -> int:
    if getattr(args, "budget", None):
        return args.budget
    env = os.environ.get("DEGRATIO_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ParameterError(f"bad DEGRATIO_BUDGET value {env!r}")
    return DEFAULT_BUDGET


def _graph_summary(G: Graph) -> dict:
    return {
        "n": G.n,
        "m": G.num_edges,
        "min_degree": G.min_degree,
        "max_degree": G.max_degree,
        "regularity": regularity(G),
        "bipartite": bipartition_classes(G) is not None,
        "name": G.name,
    }


def _report(args, command: str, G: Graph | None, payload: dict,
            exact: bool, started: float, lines: list[str]) -> int:
    if args.json:
        doc = {
            "command": command,
            "graph": _graph_summary(G) if G is not None else None,
            "result": payload,
            "exact": exact,
            "wall_time": round(time.monotonic() - started, 6),
        }
        print(json.dumps(doc, indent=2))
    else:
        for line in lines:
            print(line)
    return EXIT_OK


def cmd_solve(args) -> int:
    started = time.monotonic()
    G = _load_graph(args)
    res = solve_q(G, budget=_budget(args), jobs=args.jobs)
    part = res.optimal_partition.to_string()
    payload = {"q": format_ratio(res.q), "partition": part,
               "explored": res.explored, "method": res.method}
    return _report(args, "solve", G, payload, True, started,
                   [f"q = {format_ratio(res.q)}", f"partition = {part}"])


def cmd_decide(args) -> int:
    started = time.monotonic()
    G = _load_graph(args)
    q = parse_ratio(args.q)
    res = decide(G, q, budget=_budget(args))
    payload = {"q": format_ratio(q), "satisfied": bool(res)}
    lines = [f"q(G) >= {format_ratio(q)}: {'yes' if res else 'no'}"]
    if res:
        payload["witness"] = res.witness.to_string()
        lines.append(f"witness = {res.witness.to_string()}")
    return _report(args, "decide", G, payload, True, started, lines)


def cmd_closed_form(args) -> int:
    started = time.monotonic()
    G = _load_graph(args)
    verdict = closed_form(G, budget=_budget(args))
    payload = {"value": format_ratio(verdict.value), "rule": verdict.rule}
    lines = [f"q = {format_ratio(verdict.value)} (rule: {verdict.rule})"]
    if verdict.witness is not None:
        quality = partition_quality(G, verdict.witness).quality
        assert quality == verdict.value or quality >= verdict.value
        payload["witness"] = verdict.witness.to_string()
        lines.append(f"witness = {verdict.witness.to_string()}")
    return _report(args, "closed-form", G, payload, True, started, lines)


def cmd_matching_cut(args) -> int:
    started = time.monotonic()
    G = _load_graph(args)
    cert = find_matching_cut(G, budget=_budget(args))
    payload = {"has_cut": cert.has_cut, "exhaustive": cert.exhaustive}
    lines = [f"matching-cut: {'yes' if cert.has_cut else 'no'}"]
    if cert.has_cut:
        payload["partition"] = cert.partition.to_string()
        payload["crossing"] = [list(e) for e in cert.crossing]
        lines.append(f"partition = {cert.partition.to_string()}")
        lines.append("crossing = " + " ".join(f"{u}-{v}" for u, v in cert.crossing))
    return _report(args, "matching-cut", G, payload, cert.exhaustive,
                   started, lines)


def cmd_bound(args) -> int:
    started = time.monotonic()
    G = _load_graph(args)
    lb = class_lower_bound(G, budget=_budget(args))
    ub = edge_upper_bound(G)
    rel = "<" if lb.strict else "<="
    payload = {"lower": format_ratio(lb.value), "strict": lb.strict,
               "rules": list(lb.rules), "upper": format_ratio(ub)}
    lines = [f"{format_ratio(lb.value)} {rel} q(G) <= {format_ratio(ub)}",
             f"lower-bound rules: {', '.join(lb.rules)}"]
    try:
        w = lower_bound_witness(G)
        payload["witness"] = {"partition": w.partition.to_string(),
                              "quality": format_ratio(w.quality),
                              "rule": w.rule}
        lines.append(f"witness = {w.partition.to_string()} "
                     f"(quality {format_ratio(w.quality)}, rule {w.rule})")
    except (PreconditionError, BudgetExceededError):
        pass
    return _report(args, "bound", G, payload, True, started, lines)


_CONSTRUCTIONS = {
    "double_cover": lambda G, args, budget: bipartite_double_cover(
        G, strict=args.strict),
    "cover_plus_matching": lambda G, args, budget: cover_plus_matching(
        G, strict=args.strict),
    "twin_expand_K2": lambda G, args, budget: twin_expand_then_K2(
        G, strict=args.strict),
    "product_fixed_H": lambda G, args, budget: product_with_fixed(
        G, build_named(args.fixed), strict=args.strict, budget=budget),
}


def cmd_generate(args) -> int:
    started = time.monotonic()
    G = _load_graph(args)
    if args.construction == "product_fixed_H" and not args.fixed:
        raise ParameterError("product_fixed_H needs --fixed <named graph>")
    inst = _CONSTRUCTIONS[args.construction](G, args, _budget(args))
    text = emit_graph(inst.graph)
    sidecar = {
        "construction": inst.construction,
        "source_hash": hashlib.sha256(emit_graph(inst.source).encode()).hexdigest(),
        "claim": {
            "kind": inst.claim.kind,
            "threshold": (format_ratio(inst.claim.threshold)
                          if inst.claim.threshold is not None else None),
        },
        "provenance": {str(v): list(vs) for v, vs in inst.provenance},
    }
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        with open(args.out + ".json", "w") as fh:
            json.dump(sidecar, fh, indent=2)
            fh.write("\n")
        lines = [f"wrote {args.out} and {args.out}.json"]
    else:
        lines = [text.rstrip("\n"), json.dumps(sidecar)]
    payload = {"graph": text, "sidecar": sidecar}
    return _report(args, "generate", inst.graph, payload, True, started, lines)


def cmd_verify(args) -> int:
    started = time.monotonic()
    results = run_suite(args.suite, max_n=args.max_n, seed=args.seed,
                        budget=_budget(args))
    failed = [r for r in results if not r.passed]
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"[{status}] {r.suite}/{r.prop} on {r.subject}: {r.detail}")
        if not r.passed and r.counterexample:
            lines.append(r.counterexample.rstrip("\n"))
    lines.append(f"{len(results) - len(failed)}/{len(results)} properties passed")
    payload = {"suite": args.suite,
               "results": [asdict(r) for r in results],
               "failed": len(failed)}
    _report(args, "verify", None, payload, True, started, lines)
    return EXIT_FALSIFIED if failed else EXIT_OK


def _add_common(p, with_input=True):
    if with_input:
        p.add_argument("input", nargs="?", help="graph file in p/e format, or -")
        p.add_argument("--named", help="built-in graph id (e.g. K5, C6, prod:K4,K4)")
    p.add_argument("--budget", type=int, help="search budget (assignments)")
    p.add_argument("--json", action="store_true", help="emit a JSON run report")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="degratio",
        description="Exact degree-ratio partitions, matching-cuts, and "
                    "hardness gadgets.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute q(G) exactly with a witness")
    _add_common(p)
    p.add_argument("--jobs", type=int, default=1, help="parallel workers")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("decide", help="decide q(G) >= q")
    _add_common(p)
    p.add_argument("--q", required=True, help="threshold ratio, e.g. 3/4")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("closed-form", help="exact value by class formula")
    _add_common(p)
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("matching-cut", help="decide matching-cut existence")
    _add_common(p)
    p.set_defaults(func=cmd_matching_cut)

    p = sub.add_parser("bound", help="class lower bound and edge upper bound")
    _add_common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("generate", help="emit a hardness-reduction gadget")
    p.add_argument("construction", choices=sorted(_CONSTRUCTIONS))
    _add_common(p)
    p.add_argument("--fixed", help="named fixed factor for product_fixed_H")
    p.add_argument("--strict", action="store_true",
                   help="enforce the hardness-claim degree bounds")
    p.add_argument("--out", help="write gadget here and sidecar to <out>.json")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--max-n", type=int, default=None, help="size cap")
    p.add_argument("--seed", type=int, default=1, help="sampling seed")
    _add_common(p, with_input=False)
    p.set_defaults(func=cmd_verify)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except GraphParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PreconditionError, NoApplicableRule) as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except BudgetExceededError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DegratioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
