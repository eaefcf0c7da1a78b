"""Command-line interface.

Subcommands mirror the library: solve-clique, reduce, find-ess, verify,
transform, audit-ubr, roundtrip, gen-corpus.  Exit codes are uniform:
0 for a positive answer, 1 for a negative one, 2 for any usage or data
error.  All file numerics are exact rational strings; floats are
rejected at parse time.
"""

from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import certificates, corpus, formats, report
from .clique import solve as clique_solve
from .errors import EsskitError, UsageError
from .ess import find_ess, verify_ess
from .game import MixedStrategy, strategy_payoffs, unique_best_response_witness
from .gadgets import duplicate_transform, rps_transform
from .rational import format_rational, parse_rational
from .reduction import reduce_instance

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2


def _print_strategy(game, sigma) -> str:
    parts = [
        f"{game.strategy_names[i]}={format_rational(sigma.probs[i])}"
        for i in sorted(sigma.support())
    ]
    return ", ".join(parts)


def _parse_strategy(game, text: str) -> MixedStrategy:
    """Accept '1/2,1/2' (full vector) or 's11=1/2,s21=1/2' (sparse)."""
    entries = [e.strip() for e in text.split(",") if e.strip()]
    if not entries:
        raise UsageError("empty strategy vector")
    if any("=" in e for e in entries):
        probs = [Fraction(0)] * game.size
        for e in entries:
            name, _, value = e.partition("=")
            probs[game.index(name.strip())] = parse_rational(value.strip())
        return MixedStrategy(tuple(probs))
    if len(entries) != game.size:
        raise UsageError(
            f"strategy vector has {len(entries)} entries, game has {game.size} strategies"
        )
    return MixedStrategy(tuple(parse_rational(e) for e in entries))


# -- subcommands ---------------------------------------------------------

def cmd_solve_clique(args) -> int:
    instance = formats.load_instance(args.input)
    result = clique_solve(instance)
    if result.answer:
        print("yes: every selector keeps a clique of size >= " f"{instance.k}")
        for selector, clique in result.cliques:
            choice = ", ".join(
                f"{i}->{j}" for i, j in zip(instance.i_labels, selector.choices)
            )
            print(f"  t({choice})  clique: {' '.join(clique)}")
        return EXIT_YES
    choice = ", ".join(
        f"{i}->{j}" for i, j in zip(instance.i_labels, result.failing_selector.choices)
    )
    print(f"no: selector {choice} leaves no clique of size {instance.k}")
    return EXIT_NO


def cmd_reduce(args) -> int:
    instance = formats.load_instance(args.input)
    out = reduce_instance(instance)
    formats.save_game(args.output, out.game)
    target_path = args.target_out or _sibling(args.output, ".target.json")
    formats.dump_json(target_path, formats.target_to_dict(out.game, out.target))
    print(
        f"reduced: {out.game.size} strategies "
        f"({len(out.target)} target), game -> {args.output}, target -> {target_path}"
    )
    return EXIT_YES


def cmd_find_ess(args) -> int:
    game = formats.load_game(args.input)
    restriction = None
    if args.restrict:
        names = [s.strip() for s in args.restrict.split(",") if s.strip()]
        restriction = frozenset(game.index(name) for name in names)
    results = find_ess(
        game,
        restriction,
        stop_after=1 if args.first_only else None,
        max_support=args.max_support,
    )
    for sigma, verdict in results:
        print(f"ESS: {_print_strategy(game, sigma)}  "
              f"[u(s,s)={format_rational(verdict.nash_value)}]")
    if args.certificate_out:
        docs = [
            certificates.certificate_document(game, sigma, verdict)
            for sigma, verdict in results
        ]
        formats.dump_json(args.certificate_out, {"certificates": docs})
        print(f"certificates -> {args.certificate_out}")
    if results:
        return EXIT_YES
    print("no ESS")
    return EXIT_NO


def cmd_verify(args) -> int:
    game = formats.load_game(args.input)
    sigma = _parse_strategy(game, args.strategy)
    verdict = verify_ess(game, sigma)
    print(f"status: {verdict.status}")
    print(f"u(sigma, sigma) = {format_rational(verdict.nash_value)}")
    if verdict.status == "NOT_NASH":
        name = game.strategy_names[verdict.not_nash_witness]
        better = verdict.pure_payoffs[verdict.not_nash_witness]
        print(f"violator: {name} earns {format_rational(better)} against sigma")
    elif verdict.status == "INVADED":
        print(f"invader: {_print_strategy(game, verdict.invasion_witness)}")
    if args.certificate_out:
        doc = certificates.certificate_document(game, sigma, verdict)
        formats.dump_json(args.certificate_out, doc)
        print(f"certificate -> {args.certificate_out}")
    return EXIT_YES if verdict.is_ess() else EXIT_NO


def cmd_transform(args) -> int:
    game = formats.load_game(args.input)
    target = formats.target_from_dict(formats.load_json(args.target), game)
    transform = duplicate_transform if args.mode == "duplicate" else rps_transform
    out = transform(game, target)
    formats.save_game(args.output, out.game)
    target_path = args.target_out or _sibling(args.output, ".target.json")
    formats.dump_json(target_path, formats.target_to_dict(out.game, out.preserved_target))
    origins_path = args.origins_out or _sibling(args.output, ".origins.json")
    formats.dump_json(origins_path, formats.origins_to_dict(out.game, out.origins, game))
    print(
        f"{args.mode}: {game.size} -> {out.game.size} strategies; "
        f"game -> {args.output}, target -> {target_path}, origins -> {origins_path}"
    )
    return EXIT_YES


def cmd_audit_ubr(args) -> int:
    game = formats.load_game(args.input)
    rows = []
    all_unique = True
    for s in range(game.size):
        witness = unique_best_response_witness(game, s)
        if witness is None:
            rows.append((game.strategy_names[s], None, None))
            all_unique = False
        else:
            against = strategy_payoffs(game, witness)
            margin = min(against[s] - against[t] for t in range(game.size) if t != s) \
                if game.size > 1 else Fraction(1)
            rows.append((game.strategy_names[s], witness, margin))
    for name, witness, margin in rows:
        if witness is None:
            print(f"{name}\tNOT-UNIQUE-BEST-RESPONSE")
        else:
            print(f"{name}\tok\tmargin={format_rational(margin)}")
    if args.report_out:
        import csv

        with open(args.report_out, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["strategy", "unique_best_response", "margin", "witness"])
            for name, witness, margin in rows:
                writer.writerow(
                    [
                        name,
                        "yes" if witness is not None else "no",
                        format_rational(margin) if margin is not None else "",
                        ",".join(format_rational(p) for p in witness.probs)
                        if witness is not None
                        else "",
                    ]
                )
        figure = Path(args.report_out).with_suffix(".png")
        report.render_margin_figure(
            figure,
            [name for name, _w, _m in rows],
            [margin for _n, _w, margin in rows],
            title=f"unique-best-response margins ({Path(args.input).name})",
        )
        print(f"report -> {args.report_out}, figure -> {figure}")
    return EXIT_YES if all_unique else EXIT_NO


def _roundtrip_one(payload):
    """Worker: one instance through the selected equivalence check."""
    name, doc, mode = payload
    instance = formats.instance_from_dict(doc)
    start = time.perf_counter()
    answer = clique_solve(instance, collect_cliques=False).answer
    reduced = reduce_instance(instance)
    detail = ""
    if mode == "restricted":
        ess_exists = bool(
            find_ess(reduced.game, reduced.target, proofs=False, stop_after=1)
        )
        consistent = (not answer) == ess_exists
    elif mode == "duplicate":
        out = duplicate_transform(reduced.game, reduced.target)
        found = find_ess(out.game, proofs=False)
        ess_exists = bool(found)
        consistent = (not answer) == ess_exists
        touched = [
            sigma for sigma, _v in found if not sigma.support() <= out.preserved_target
        ]
        if touched:
            consistent = False
            detail = "ESS-places-mass-on-duplicate"
    elif mode == "rps":
        out = rps_transform(reduced.game, reduced.target)
        ess_exists = bool(find_ess(out.game, proofs=False, stop_after=1))
        consistent = (not answer) == ess_exists
        if corpus.satisfies_appendix_restrictions(instance):
            bad = [
                out.game.strategy_names[s]
                for s in range(out.game.size)
                if unique_best_response_witness(out.game, s) is None
            ]
            if bad:
                consistent = False
                detail = "not-unique-best-response:" + ",".join(bad)
            else:
                detail = "ubr=ok"
        else:
            detail = "ubr=skipped"
    else:
        raise UsageError(f"unknown roundtrip mode {mode!r}")
    elapsed = time.perf_counter() - start
    return report.RoundtripRow(
        name,
        mode,
        len(instance.vertices),
        len(instance.edges),
        instance.k,
        answer,
        ess_exists,
        consistent,
        elapsed,
        detail,
    )


def cmd_roundtrip(args) -> int:
    directory = Path(args.input)
    if not directory.is_dir():
        raise UsageError(f"{directory} is not a corpus directory")
    named = list(corpus.iter_corpus_dir(directory))
    if not named:
        raise UsageError(f"no instance files in {directory}")
    payloads = [
        (name, formats.instance_to_dict(instance), args.mode)
        for name, instance in named
    ]
    if args.jobs and args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_roundtrip_one, payloads))
    else:
        rows = [_roundtrip_one(p) for p in payloads]

    header = f"{'instance':28s} {'|V|':>3s} {'k':>2s} {'clique':>6s} {'ess':>4s} {'ok':>2s} {'sec':>8s}"
    print(header)
    for r in rows:
        print(
            f"{r.name:28s} {r.vertices:3d} {r.k:2d} "
            f"{'yes' if r.clique_answer else 'no':>6s} "
            f"{'yes' if r.ess_exists else 'no':>4s} "
            f"{'ok' if r.consistent else 'XX':>2s} {r.seconds:8.3f}"
        )
    bad = [r for r in rows if not r.consistent]
    print(f"{len(rows)} instances, {len(bad)} violations, mode={args.mode}")

    if args.report_out:
        path = report.write_report_csv(args.report_out, rows)
        print(f"report -> {path}")
        if not args.no_figures:
            figure = Path(args.report_out).with_suffix(".png")
            report.render_roundtrip_figure(
                figure, rows, title=f"roundtrip mode={args.mode}"
            )
            print(f"figure -> {figure}")

    if bad:
        triage = Path(args.triage_dir)
        triage.mkdir(parents=True, exist_ok=True)
        smallest = min(
            bad, key=lambda r: (r.vertices, r.edge_count, r.name)
        )
        doc = dict(payloads[[r.name for r in rows].index(smallest.name)][1])
        path = triage / f"{smallest.name}.json"
        formats.dump_json(path, doc)
        print(f"violation: smallest failing instance dumped to {path}", file=sys.stderr)
        return EXIT_NO
    return EXIT_YES


def cmd_gen_corpus(args) -> int:
    if args.kind == "exhaustive":
        stream = corpus.exhaustive_corpus(max_vertices=args.max_vertices)
    elif args.kind == "random":
        stream = corpus.random_corpus(args.count, args.seed, max_vertices=args.max_vertices)
    else:
        stream = _take(corpus.appendix_corpus(max_vertices=args.max_vertices), args.count)
    paths = corpus.write_corpus(args.out, stream)
    print(f"wrote {len(paths)} instances to {args.out}")
    return EXIT_YES


def _take(stream, count):
    for idx, item in enumerate(stream):
        if count is not None and idx >= count:
            return
        yield item


def _sibling(path, suffix: str) -> str:
    p = Path(path)
    return str(p.with_name(p.stem + suffix))


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="esskit",
        description="Exact decision and certification of evolutionarily stable strategies.",
    )
    from importlib import metadata

    try:
        version = metadata.version("esskit")
    except metadata.PackageNotFoundError:
        version = "unknown"
    parser.add_argument("--version", action="version", version=f"esskit {version}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve-clique", help="decide a MINMAX-CLIQUE instance")
    p.add_argument("--input", "-i", required=True)
    p.set_defaults(func=cmd_solve_clique)

    p = sub.add_parser("reduce", help="build the reduced game from an instance")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--output", "-o", required=True)
    p.add_argument("--target-out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("find-ess", help="enumerate all ESS of a game")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--restrict", help="comma-separated strategy names the support may use")
    p.add_argument("--certificate-out")
    p.add_argument("--max-support", type=int)
    p.add_argument("--first-only", action="store_true",
                   help="stop after the first ESS (existence check)")
    p.set_defaults(func=cmd_find_ess)

    p = sub.add_parser("verify", help="verdict for one strategy vector")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("strategy", help="'1/2,1/2' or 's11=1/2,s21=1/2'")
    p.add_argument("--certificate-out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("transform", help="apply a support-restriction-removal gadget")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--target", required=True, help="target-set JSON file")
    p.add_argument("--mode", choices=("duplicate", "rps"), required=True)
    p.add_argument("--output", "-o", required=True)
    p.add_argument("--target-out")
    p.add_argument("--origins-out")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("audit-ubr", help="is every pure strategy a unique best response?")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--report-out", help="CSV report path; a PNG figure lands beside it")
    p.set_defaults(func=cmd_audit_ubr)

    p = sub.add_parser("roundtrip", help="batch equivalence checks over an instance corpus")
    p.add_argument("--input", "-i", required=True, help="directory of instance JSON files")
    p.add_argument("--mode", choices=("restricted", "duplicate", "rps"), required=True)
    p.add_argument("--report-out", help="CSV report path; a PNG figure lands beside it")
    p.add_argument("--no-figures", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--triage-dir", default="roundtrip-failures")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("gen-corpus", help="emit bundled instance corpora")
    p.add_argument("--kind", choices=("exhaustive", "random", "appendix"), required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--max-vertices", type=int, default=4)
    p.set_defaults(func=cmd_gen_corpus)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EsskitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
