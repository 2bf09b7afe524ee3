"""Command-line interface.

Exit codes: 0 success, 1 witness/violation found where cleanliness was
required (or generation failure), 2 parse/usage errors, 3 class rejection
under --require-class.  Diagnostics go to stderr; results go to stdout.
"""

import argparse
import sys
from pathlib import Path

from .graph import Graph, GraphError
from . import decomposition as dec
from .patterns import (
    PatternUnavailableError,
    PatternUnknownError,
    default_catalog,
    find_induced,
    recognize_input_class,
)
from .solver import (
    BaseSolverRegistry,
    ClassRejection,
    SizeLimitError,
    SolveConfig,
    mwis_enumerate,
    solve,
)
from .lab import SUITES, run_suite
from .toolkit import (
    GenSpec,
    GenerationError,
    ParseError,
    format_graph,
    generate,
    load_patterns_into,
    read_graph,
    write_graph,
)


def _ids(vertices) -> str:
    return " ".join(str(v + 1) for v in sorted(vertices))


def _load(path: str) -> Graph:
    return read_graph(path)


def _cmd_solve(args) -> int:
    g = _load(args.file)
    registry = BaseSolverRegistry()  # --base exact: the only shipped base
    config = SolveConfig(require_class=args.require_class, strict=args.strict, registry=registry)
    try:
        result = solve(g, config)
    except ClassRejection as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        print(f"witness {exc.pattern.name} {_ids(exc.embedding)}")
        return 3
    if args.trace:
        for depth, rule, size in result.trace:
            print(f"trace {depth} {rule} {size}")
    print(f"weight {result.weight}")
    print(f"set {_ids(result.vertices)}".rstrip())
    if result.diagnostics:
        for d in result.diagnostics:
            print(d, file=sys.stderr)
        return 1
    return 0


def _cmd_oracle(args) -> int:
    g = _load(args.file)
    result = mwis_enumerate(g)
    print(f"weight {result.weight}")
    print(f"set {_ids(result.vertices)}".rstrip())
    return 0


def _cmd_recognize(args) -> int:
    g = _load(args.file)
    ok, witness = recognize_input_class(g)
    if ok:
        print("in-class")
        return 0
    pdef, emb = witness
    print(f"witness {pdef.name} {_ids(emb)}")
    return 1


def _cmd_detect(args) -> int:
    cat = default_catalog()
    if args.patterns:
        load_patterns_into(cat, args.patterns)
    pdef = cat.get(args.pattern)
    g = _load(args.file)
    emb = find_induced(pdef, g)
    if emb is None:
        print("absent")
    else:
        print(f"found {_ids(emb)}")
    return 0


def _cmd_decompose(args) -> int:
    g = _load(args.file)
    if args.mode == "modular":
        print(dec.format_md_tree(dec.modular_decomposition(g)))
    else:
        print(dec.format_atom_tree(dec.clique_cutset_decompose(g)))
    return 0


def _cmd_gen(args) -> int:
    spec = GenSpec(
        n=args.n,
        level=None if args.level == "any" else int(args.level),
        density=args.density,
        seed=args.seed,
        connected=args.connected,
        prime=args.prime,
        repair_budget=args.budget,
    )
    try:
        g = generate(spec)
    except GenerationError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    if args.out == "-":
        sys.stdout.write(format_graph(g))
    else:
        write_graph(g, args.out)
    return 0


def _cmd_verify(args) -> int:
    if args.patterns:
        load_patterns_into(default_catalog(), args.patterns)
    report = run_suite(
        args.suite,
        samples=args.samples,
        seed=args.seed,
        max_n=args.n,
        exhaustive_n=args.exhaustive,
        workers=args.workers,
    )
    refs = None
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        refs = []
        for i, v in enumerate(report.violations):
            name = f"{report.suite}.cex{i}.g"
            write_graph(v.graph, out / name)
            refs.append(name)
        from .render import save_samples_figure, save_violation_figure

        for i, v in enumerate(report.violations):
            save_violation_figure(v, out / f"{report.suite}.cex{i}.png")
        save_samples_figure(report, out / f"{report.suite}.samples.png")
        (out / f"{report.suite}.report.txt").write_text(report.to_text(refs), encoding="utf-8")
    sys.stdout.write(report.to_text(refs))
    print(f"runtime {report.runtime:.2f}s", file=sys.stderr)
    return 1 if report.violations else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gmwis",
        description="Exact maximum weight independent set solving with decomposition tooling",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a graph file exactly")
    p.add_argument("file")
    p.add_argument("--require-class", action="store_true", help="reject inputs outside the solver's class")
    p.add_argument("--strict", action="store_true", help="re-check structure guarantees while solving")
    p.add_argument("--base", choices=["exact"], default="exact", help="base solver for terminal classes")
    p.add_argument("--trace", action="store_true", help="print one line per decomposition step")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("oracle", help="solve by plain enumeration (ground truth, small graphs)")
    p.add_argument("file")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("recognize", help="test membership in the solver's input class")
    p.add_argument("file")
    p.set_defaults(func=_cmd_recognize)

    p = sub.add_parser("detect", help="search for one induced pattern")
    p.add_argument("pattern")
    p.add_argument("file")
    p.add_argument("--patterns", help="pattern file with extra definitions")
    p.set_defaults(func=_cmd_detect)

    p = sub.add_parser("decompose", help="print a decomposition tree")
    p.add_argument("file")
    p.add_argument("--mode", choices=["modular", "atoms"], required=True)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("gen", help="generate a random class instance")
    p.add_argument("--level", default="0", choices=["0", "1", "2", "3", "4", "5", "any"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--connected", action="store_true")
    p.add_argument("--prime", action="store_true")
    p.add_argument("--budget", type=int, default=64)
    p.add_argument("--out", required=True, help="output file, or - for stdout")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("verify", help="run a structural verification suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--n", type=int, default=12, help="largest sample size")
    p.add_argument("--samples", type=int, default=300)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive", type=int, default=None, help="enumerate all graphs up to this size instead of sampling")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--patterns", help="pattern file with extra definitions (e.g. the H slots)")
    p.add_argument("--out", help="directory for the report, counterexamples and figures")
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, GraphError, SizeLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PatternUnknownError, PatternUnavailableError) as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
