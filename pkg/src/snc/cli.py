"""Command-line front door.

Every command prints one canonical JSON document (sorted keys, fixed
indentation) so identical inputs, flags, and seeds produce byte-identical
output.  Exit codes: 0 success, 1 usage or input errors, 2 when a
guaranteed assertion failed and a counterexample report was emitted.
Timing and progress go to stderr only.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import formats, generators, good_edges, median_order, oracle, stars
from .digraph import WeightedDigraph, WeightMap, has_weighted_snp
from .errors import (
    BadProfile,
    DigonRejected,
    DuplicateArc,
    InternalTheoremViolation,
    LoopRejected,
    MoveLimitExceeded,
    NegativeWeight,
    NoWitnessFound,
    NotAllGood,
    NotATournament,
    NotAViolation,
    NotMissing,
    ParseError,
    TooLarge,
)

_USAGE_ERRORS = (
    ParseError,
    LoopRejected,
    DigonRejected,
    DuplicateArc,
    NotATournament,
    NegativeWeight,
    TooLarge,
    NotMissing,
    NotAllGood,
    NotAViolation,
    BadProfile,
    MoveLimitExceeded,
    ValueError,
    OSError,
)


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(args, payload) -> None:
    text = _dumps(payload) if not isinstance(payload, str) else payload
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_error(kind: str, message: str, extra: dict | None = None) -> None:
    doc = {"error": kind, "message": message}
    if extra:
        doc.update(extra)
    sys.stderr.write(_dumps(doc))


def _read_input(args) -> str:
    if args.input == "-":
        return sys.stdin.read()
    return Path(args.input).read_text(encoding="utf-8")


def _load_any(text: str):
    head = text.lstrip()
    if head.startswith("{"):
        doc = json.loads(head)
        kind = doc.get("kind")
        if kind == "digraph":
            wd, labels = formats.digraph_from_instance_dict(doc)
            return "digraph", wd, labels
        if kind == "graph":
            g, labels = formats.graph_from_instance_dict(doc)
            return "graph", g, labels
        raise ParseError(f"unknown instance kind {kind!r}")
    first = head.split(None, 1)[0] if head else ""
    if first == "digraph":
        wd, labels = formats.parse_digraph(text)
        return "digraph", wd, labels
    if first == "graph":
        g, labels = formats.parse_graph(text)
        return "graph", g, labels
    raise ParseError("input is neither a digraph nor a graph document")


# ---- commands ---------------------------------------------------------


def cmd_witness(args) -> int:
    wd, labels = formats.load_digraph(_read_input(args))
    result = good_edges.find_witness(wd, move_limit=args.move_limit)
    doc = result.to_dict()
    doc["instance"] = formats.digraph_instance_dict(wd, labels)
    _emit(args, doc)
    return 0


def cmd_check_good(args) -> int:
    wd, labels = formats.load_digraph(_read_input(args))
    ok, statuses = good_edges.all_missing_edges_good(wd.digraph)
    _emit(
        args,
        {
            "kind": "edge_statuses",
            "all_good": ok,
            "edges": [s.to_dict() for s in statuses],
            "instance": formats.digraph_instance_dict(wd, labels),
        },
    )
    return 0


def cmd_median_order(args) -> int:
    wd, labels = formats.load_digraph(_read_input(args))
    if args.exact:
        co = median_order.exact_median_order(wd.digraph, wd.weights)
    else:
        co = median_order.local_median_order(
            wd.digraph, wd.weights, move_limit=args.move_limit, seed=args.seed
        )
    doc = co.to_dict()
    doc.update(
        {
            "kind": "certified_order",
            "exact": bool(args.exact),
            "feed_vertex": median_order.feed_vertex(co) if co.order else None,
            "instance": formats.digraph_instance_dict(wd, labels),
        }
    )
    _emit(args, doc)
    return 0


def cmd_recognize(args) -> int:
    g, labels = formats.load_graph(_read_input(args))
    report = stars.recognize(g)
    doc = report.to_dict()
    doc["instance"] = formats.graph_instance_dict(g, labels)
    _emit(args, doc)
    return 0


def cmd_adversary(args) -> int:
    g, labels = formats.load_graph(_read_input(args))
    viol = stars.check_condition_B(g)
    if viol is None:
        raise NotAViolation(
            "every pair of disjoint edges is covered; the graph is a generalized star"
        )
    witness = stars.adversarial_digraph(g, viol)
    x, y = witness.designated_edge
    status = good_edges.classify_missing_edge(witness.digraph, x, y)
    doc = witness.to_dict()
    doc.update(
        {
            "kind": "adversarial_witness",
            "square_violation": viol.to_dict(),
            "designated_edge_status": status.to_dict(),
            "instance": formats.graph_instance_dict(g, labels),
        }
    )
    _emit(args, doc)
    return 0


def cmd_sweep(args) -> int:
    if args.target == "theorem1":
        report = oracle.sweep_theorem1(args.n, cumulative=args.cumulative, jobs=args.jobs)
    elif args.target == "prop1":
        report = oracle.sweep_proposition1(
            args.samples, args.max_n, args.seed, max_weight=args.max_weight, jobs=args.jobs
        )
    elif args.target == "theorem2":
        report = oracle.sweep_theorem2(args.samples, args.max_n, args.seed, jobs=args.jobs)
    elif args.target == "theorem3":
        report = oracle.sweep_theorem3(
            args.n,
            random_samples=args.samples,
            random_min_n=args.min_n,
            random_max_n=args.max_n,
            seed=args.seed,
            jobs=args.jobs,
        )
    elif args.target == "gamma":
        report = oracle.sweep_gamma(args.samples, args.max_n, args.seed, jobs=args.jobs)
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown sweep {args.target!r}")
    sys.stderr.write(
        f"[snc] sweep {report.sweep}: {report.instances} instances, "
        f"{len(report.failures)} failures, {report.elapsed_seconds:.1f}s\n"
    )
    _emit(args, report.to_dict())
    return 2 if report.failures else 0


def _maybe_weights(args, n: int):
    if args.weights_max is None:
        return None
    seed = args.weights_seed if args.weights_seed is not None else args.seed
    return generators.random_weights(n, seed, args.weights_max)


def cmd_gen(args) -> int:
    if args.what == "tournament":
        d = generators.random_tournament(args.n, args.seed)
        w = _maybe_weights(args, args.n)
        wd = WeightedDigraph(d, w if w is not None else WeightMap.uniform(args.n))
        doc = formats.digraph_instance_dict(wd)
        text = formats.serialize_digraph(wd)
    elif args.what == "digraph-missing":
        g, _labels = formats.load_graph(_read_input(args))
        d = generators.random_digraph_missing(g, args.seed)
        w = _maybe_weights(args, g.n)
        wd = WeightedDigraph(d, w if w is not None else WeightMap.uniform(g.n))
        doc = formats.digraph_instance_dict(wd)
        text = formats.serialize_digraph(wd)
    elif args.what == "weights":
        w = generators.random_weights(args.n, args.seed, args.weights_max or 10)
        doc = {"kind": "weights", "n": args.n, "weights": w.to_dicts()}
        text = None
    else:
        if args.what == "star":
            g, dec = generators.gen_star(args.rays_count)
        elif args.what == "sun":
            g, dec = generators.gen_sun(args.core, args.rays_count)
        elif args.what == "complete":
            g, dec = generators.gen_complete(args.k)
        else:  # gstar
            if args.spec:
                spec = generators.GenSpec.from_dict(
                    json.loads(Path(args.spec).read_text(encoding="utf-8"))
                )
            else:
                spec = generators.GenSpec(
                    a0=args.a0,
                    a_profile=_int_list(args.rays),
                    x_profile=_int_list(args.cores),
                )
            g, dec = generators.gen_generalized_star(spec=spec)
        doc = formats.graph_instance_dict(g)
        doc["decomposition"] = dec.to_dict()
        doc["classification"] = stars.classify_special(dec).to_dict()
        text = formats.serialize_graph(g)
    if args.json or text is None:
        _emit(args, doc)
    else:
        _emit(args, text)
    return 0


def _int_list(raw: str) -> tuple[int, ...]:
    raw = (raw or "").strip()
    if not raw:
        return ()
    try:
        return tuple(int(tok) for tok in raw.split(","))
    except ValueError:
        raise BadProfile(f"bad size list {raw!r}; expected comma-separated integers") from None


def cmd_verify(args) -> int:
    doc = json.loads(_read_input(args))
    kind = doc.get("kind")
    if kind == "witness_certificate":
        wd, _labels = formats.digraph_from_instance_dict(doc["instance"])
        cert = good_edges.certificate_from_dict(doc)
        checks = good_edges.verify_certificate(wd, cert)
    elif kind == "witness_fallback":
        wd, _labels = formats.digraph_from_instance_dict(doc["instance"])
        v = int(doc["witness"])
        check = has_weighted_snp(wd, v)
        checks = [
            ("witness_inequality", check.holds),
            ("lhs_matches", check.first_weight == formats._rational_from_dict(doc["lhs"], "lhs")),
            ("rhs_matches", check.second_weight == formats._rational_from_dict(doc["rhs"], "rhs")),
        ]
    elif kind == "certified_order":
        wd, _labels = formats.digraph_from_instance_dict(doc["instance"])
        order = tuple(int(v) for v in doc["order"])
        wt = median_order.perturb_weights(wd.weights)
        violations = median_order.feedback_check(wd.digraph, wt, order)
        objective = median_order.order_objective(wd.digraph, wt, order)
        checks = [
            ("order_feedback", not violations),
            ("objective_matches", objective == median_order.perturbed_from_dict(doc["objective"])),
            ("conditions_counted", int(doc["violations_checked"]) == wd.digraph.n ** 2),
        ]
    else:
        raise ParseError(f"cannot verify documents of kind {kind!r}")
    verified = all(ok for _name, ok in checks)
    _emit(
        args,
        {
            "kind": "verification",
            "verified": verified,
            "checks": [{"name": name, "ok": ok} for name, ok in checks],
        },
    )
    return 0 if verified else 1


def cmd_dot(args) -> int:
    kind, obj, labels = _load_any(_read_input(args))
    if kind == "digraph":
        _emit(args, formats.digraph_to_dot(obj, labels))
    else:
        _emit(args, formats.graph_to_dot(obj, labels))
    return 0


# ---- parser -----------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _emit_error("UsageError", message)
        raise SystemExit(1)


def _add_io(p, needs_input=True):
    if needs_input:
        p.add_argument("-i", "--input", required=True, help="input file, or - for stdin")
    p.add_argument("-o", "--output", help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="snc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("witness", help="find a vertex with the weighted SNP, certified when possible")
    _add_io(p)
    p.add_argument("--move-limit", type=int, default=None)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("check-good", help="classify every missing edge")
    _add_io(p)
    p.set_defaults(func=cmd_check_good)

    p = sub.add_parser("median-order", help="compute a certified order of a tournament")
    _add_io(p)
    p.add_argument("--exact", action="store_true", help="subset DP instead of local search")
    p.add_argument("--seed", type=int, default=None, help="shuffle the start order")
    p.add_argument("--move-limit", type=int, default=None)
    p.set_defaults(func=cmd_median_order)

    p = sub.add_parser("recognize", help="recognize and decompose a generalized star")
    _add_io(p)
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("adversary", help="orient the complement so a chosen missing edge is not good")
    _add_io(p)
    p.set_defaults(func=cmd_adversary)

    p = sub.add_parser("sweep", help="run a verification sweep")
    p.add_argument("target", choices=["theorem1", "prop1", "theorem2", "theorem3", "gamma"])
    _add_io(p, needs_input=False)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--cumulative", action="store_true", help="theorem1: all sizes 1..n")
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--min-n", type=int, default=6)
    p.add_argument("--max-n", type=int, default=9)
    p.add_argument("--max-weight", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("gen", help="generate instances")
    p.add_argument(
        "what",
        choices=["tournament", "star", "sun", "complete", "gstar", "digraph-missing", "weights"],
    )
    p.add_argument("-i", "--input", help="graph input for digraph-missing")
    p.add_argument("-o", "--output")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--k", type=int, default=3, help="complete: vertex count")
    p.add_argument("--core", type=int, default=2, help="sun: core size")
    p.add_argument("--rays-count", type=int, default=2, help="star/sun: number of rays")
    p.add_argument("--a0", type=int, default=0, help="gstar: isolated vertices")
    p.add_argument("--rays", default="", help="gstar: ray class sizes, comma separated")
    p.add_argument("--cores", default="", help="gstar: core layer sizes, comma separated")
    p.add_argument("--spec", help="gstar: JSON spec file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weights-max", type=int, default=None)
    p.add_argument("--weights-seed", type=int, default=None)
    p.add_argument("--json", action="store_true", help="emit a JSON instance instead of text")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="re-verify an emitted certificate")
    _add_io(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dot", help="DOT export for human inspection (lossy)")
    _add_io(p)
    p.set_defaults(func=cmd_dot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 1
    try:
        return args.func(args)
    except InternalTheoremViolation as exc:
        _emit_error(
            "InternalTheoremViolation", str(exc), {"counterexample": exc.report.to_dict()}
        )
        return 2
    except NoWitnessFound as exc:
        _emit_error("NoWitnessFound", str(exc), {"counterexample": exc.report.to_dict()})
        return 2
    except MoveLimitExceeded as exc:
        _emit_error(
            "MoveLimitExceeded",
            str(exc),
            {"last_order": list(exc.order), "remaining_violations": len(exc.violations)},
        )
        return 1
    except json.JSONDecodeError as exc:
        _emit_error("ParseError", f"bad JSON: {exc}")
        return 1
    except _USAGE_ERRORS as exc:
        _emit_error(type(exc).__name__, str(exc))
        return 1


if __name__ == "__main__":
    sys.exit(main())
