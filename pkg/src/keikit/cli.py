"""Command line interface.

Every command reads plain text files (operation tables, edge lists,
witnesses), never mutates its inputs, and communicates through exit
codes: 0 when the request succeeds or the tested property holds, 1 when
the property fails or a semantic check rejects the input, 2 when the
input is malformed or outside supported limits.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import digraph as dg
from . import folding, iso, magma, sigma
from .errors import InputError, KeikitError, MalformedLine, TooLarge
from .groups import FiniteGroup
from .magma import VIOLATION_ITERATORS
from .textio import is_blank, is_comment, read_header_int

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_BAD_INPUT = 2

LADDER_LEVELS = ("ld", "rack", "quandle", "kei")


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _write_out(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_check(args: argparse.Namespace) -> int:
    m = magma.Magma.from_text(_read(args.table))
    ladder = magma.classify(m)
    print(f"n: {m.n}")
    print(f"is_ld: {str(ladder.is_ld).lower()}")
    print(f"is_rack: {str(ladder.is_rack).lower()}")
    print(f"is_quandle: {str(ladder.is_quandle).lower()}")
    print(f"is_kei: {str(ladder.is_kei).lower()}")
    for report in ladder.reports:
        if not report.holds:
            print(f"{report.axiom}: fails at {report.witness}")
            if args.verbose:
                for witness in VIOLATION_ITERATORS[report.axiom](m):
                    print(f"  violation {witness}")
    if args.expect is not None:
        reached = {
            "ld": ladder.is_ld,
            "rack": ladder.is_rack,
            "quandle": ladder.is_quandle,
            "kei": ladder.is_kei,
        }[args.expect]
        print(f"expect {args.expect}: {'satisfied' if reached else 'not satisfied'}")
        return EXIT_OK if reached else EXIT_FAIL
    return EXIT_OK


def cmd_encode(args: argparse.Namespace) -> int:
    graph = dg.parse_edge_list(_read(args.graph))
    encoded = folding.encode_kei(graph)
    _write_out(encoded.to_text(), args.output)
    return EXIT_OK


def cmd_decode(args: argparse.Namespace) -> int:
    m = magma.Magma.from_text(_read(args.table))
    if args.witness is not None:
        witness = folding.FoldedWitness.from_text(_read(args.witness))
    else:
        witness = folding.detect_folded(m)
        if witness is None:
            print("not folded", file=sys.stderr)
            return EXIT_FAIL
    graph, mapping = folding.decode_graph(m, witness)
    iso_line = "isomorphism from re-encoded kei onto input: " + " ".join(
        str(x) for x in mapping.map
    )
    text = f"# {iso_line}\n" + graph.to_edge_list()
    _write_out(text, args.output)
    if args.output is not None:
        print(iso_line)
    return EXIT_OK


def cmd_detect(args: argparse.Namespace) -> int:
    m = magma.Magma.from_text(_read(args.table))
    if args.all:
        found = list(folding.detect_folded_all(m))
        if not found:
            print("not folded")
            return EXIT_FAIL
        _write_out("\n".join(w.to_text() for w in found), args.output)
        return EXIT_OK
    witness = folding.detect_folded(m)
    if witness is None:
        print("not folded")
        return EXIT_FAIL
    _write_out(witness.to_text(), args.output)
    return EXIT_OK


def cmd_iso(args: argparse.Namespace) -> int:
    if args.kind == "graph":
        g = dg.parse_edge_list(_read(args.left))
        h = dg.parse_edge_list(_read(args.right))
        found = dg.find_graph_isomorphism(g, h)
        if found is None:
            print("not isomorphic")
            return EXIT_FAIL
        print("isomorphic: " + " ".join(str(x) for x in found.map))
        return EXIT_OK
    m = magma.Magma.from_text(_read(args.left))
    n_ = magma.Magma.from_text(_read(args.right))
    if args.all:
        count = 0
        for found in iso.magma_iso_bruteforce_all(m, n_):
            print("isomorphic: " + " ".join(str(x) for x in found.map))
            count += 1
        if count == 0:
            print("not isomorphic")
            return EXIT_FAIL
        print(f"count: {count}")
        return EXIT_OK
    found = iso.magma_iso_bruteforce(m, n_) if args.brute else iso.magma_iso_search(m, n_)
    if found is None:
        print("not isomorphic")
        return EXIT_FAIL
    print("isomorphic: " + " ".join(str(x) for x in found.map))
    return EXIT_OK


def _reduce_exhaustive(n: int, dedupe: bool) -> list[dg.Digraph]:
    if n > 4:
        raise TooLarge("exhaustive mode runs at n <= 4 (use dedupe above 3)")
    return list(dg.enumerate_digraphs(n, dedupe=dedupe))


def cmd_reduce_test(args: argparse.Namespace) -> int:
    lines: list[str] = []
    disagreements = 0
    pairs = 0
    if args.mode == "exhaustive":
        dedupe = args.n_max >= 4
        graphs = _reduce_exhaustive(args.n_max, dedupe)
        ids = [f"n{args.n_max}p{dg.pattern_of(g)}" for g in graphs]
        note = " (one representative per isomorphism class)" if dedupe else ""
        print(f"graphs: {len(graphs)}{note}")
        for i, g in enumerate(graphs):
            for j, h in enumerate(graphs):
                verdict = iso.reduction_check(g, h, oracle_limit=args.oracle_limit)
                lines.append(iso.format_verdict_line(ids[i], ids[j], verdict))
                pairs += 1
                disagreements += 0 if verdict.agree else 1
    else:
        rng = random.Random(args.seed)
        n = args.n_max
        print(f"graphs: sampled at n={n}")
        for _ in range(args.pairs):
            g = dg.random_digraph(n, rng.random(), rng.randrange(2 ** 30))
            if rng.random() < 0.5:
                perm = list(range(n))
                rng.shuffle(perm)
                h = g.relabel(dg.Bijection(tuple(perm)))
            else:
                h = dg.random_digraph(n, rng.random(), rng.randrange(2 ** 30))
            verdict = iso.reduction_check(g, h, oracle_limit=args.oracle_limit)
            lines.append(
                iso.format_verdict_line(
                    f"n{n}p{dg.pattern_of(g)}", f"n{n}p{dg.pattern_of(h)}", verdict
                )
            )
            pairs += 1
            disagreements += 0 if verdict.agree else 1
    if args.log is not None:
        Path(args.log).write_text("\n".join(lines) + "\n", encoding="utf-8")
    else:
        for line in lines:
            print(line)
    print(f"pairs: {pairs}")
    print(f"agreements: {pairs - disagreements}")
    print(f"disagreements: {disagreements}")
    return EXIT_OK if disagreements == 0 else EXIT_FAIL


def _detect_sigma_kind(text: str) -> str:
    lines = text.splitlines()
    n, i = read_header_int(lines, 0)
    significant = sum(
        1 for line in lines[i:] if not (is_blank(line) or is_comment(line))
    )
    if significant == 2 * n:
        return "sigma"
    if significant == n:
        return "group"
    raise MalformedLine(i, lines[i - 1] if lines else "", f"cannot tell sigma from group input with {significant} rows for n={n}")


def cmd_sigma_check(args: argparse.Namespace) -> int:
    text = _read(args.input)
    kind = args.kind
    if kind == "auto":
        kind = _detect_sigma_kind(text)
    if kind == "group":
        group = FiniteGroup(magma.Magma.from_text(text).table)
        algebra = sigma.group_to_sigma(group)
        print(f"group of order {group.n} with star as conjugation")
    else:
        algebra = sigma.SigmaAlgebra.from_text(text)
    reports = sigma.check_sigma_identities(algebra)
    all_hold = True
    for report in reports:
        equation = sigma.SIGMA_EQUATIONS[report.axiom]
        if report.holds:
            print(f"{report.axiom} ({equation}): holds")
        else:
            print(f"{report.axiom} ({equation}): fails at {report.witness}")
            all_hold = False
    if not all_hold:
        return EXIT_FAIL
    derived = sigma.check_sigma_implies_ld(algebra)
    if derived.holds:
        print("left distributivity of star, derived through the identities: holds")
        return EXIT_OK
    print(f"left distributivity derivation breaks at {derived.witness}")
    return EXIT_FAIL


def cmd_enumerate(args: argparse.Namespace) -> int:
    graphs = list(dg.enumerate_digraphs(args.n, dedupe=args.dedupe))
    _write_out(dg.digraphs_to_catalog(graphs), args.output)
    if args.keis is not None:
        records = [folding.encode_kei(g).to_text() for g in graphs]
        Path(args.keis).write_text("\n".join(records), encoding="utf-8")
    count_stream = sys.stderr if args.output is None else sys.stdout
    print(f"graphs: {len(graphs)}", file=count_stream)
    return EXIT_OK


def cmd_apex(args: argparse.Namespace) -> int:
    graph = dg.parse_edge_list(_read(args.graph))
    subset = _parse_subset(args.subset)
    extended = folding.apex_extension(graph, subset)
    auto = folding.twin_involution(graph, subset)
    base = folding.encode_kei(graph).magma
    if not iso.is_magma_isomorphism(base, base, auto):
        raise KeikitError("twin involution failed to be an automorphism")
    big = folding.encode_kei(extended).magma
    apex_element = 2 * graph.n
    realized = tuple(int(big.table[apex_element, x]) for x in range(2 * graph.n))
    if realized != auto.map:
        raise KeikitError("apex row does not realize the twin involution")
    lines = [
        f"# apex vertex {graph.n} points at {sorted(set(subset))}",
        "# left multiplication by the apex realizes the twin involution: "
        + " ".join(str(x) for x in auto.map),
    ]
    _write_out("\n".join(lines) + "\n" + extended.to_edge_list(), args.output)
    return EXIT_OK


def _parse_subset(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise MalformedLine(1, text, "subset must be comma separated integers") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="keikit",
        description="Finite keis and quandles, and the digraph-to-kei correspondence.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="classify an operation table along the axiom ladder")
    p.add_argument("table")
    p.add_argument("-v", "--verbose", action="store_true", help="list every violating tuple")
    p.add_argument("--expect", choices=LADDER_LEVELS, help="exit 1 unless the table reaches this level")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("encode", help="build the kei of a digraph")
    p.add_argument("graph")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="recover a digraph from a folded kei")
    p.add_argument("table")
    p.add_argument("--witness", help="folding witness file; detected when omitted")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("detect", help="find a folding witness for a kei table")
    p.add_argument("table")
    p.add_argument("--all", action="store_true", help="print every witness")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("iso", help="search for an isomorphism")
    p.add_argument("kind", choices=("graph", "magma"))
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--brute", action="store_true", help="use the brute-force scan (magma only)")
    p.add_argument("--all", action="store_true", help="list every isomorphism by brute force (magma only)")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("reduce-test", help="compare graph isomorphism with kei isomorphism over many pairs")
    p.add_argument("--n-max", type=int, default=3, dest="n_max")
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--pairs", type=int, default=200, help="pair count in sampled mode")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle-limit", type=int, default=6, dest="oracle_limit",
                   help="cross-check kei search with brute force up to this kei order")
    p.add_argument("--log", help="write one verdict line per pair to this file")
    p.set_defaults(func=cmd_reduce_test)

    p = sub.add_parser("sigma-check", help="verify the two-operation identities")
    p.add_argument("input")
    p.add_argument("--kind", choices=("auto", "group", "sigma"), default="auto")
    p.set_defaults(func=cmd_sigma_check)

    p = sub.add_parser("enumerate", help="list all digraphs at a small order")
    p.add_argument("n", type=int)
    p.add_argument("--dedupe", action="store_true", help="one representative per isomorphism class")
    p.add_argument("-o", "--output")
    p.add_argument("--keis", help="also write the kei of every listed graph to this file")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("apex", help="extend a digraph by one vertex aimed at a subset")
    p.add_argument("graph")
    p.add_argument("--subset", default="", help="comma separated vertices the apex points at")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_apex)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except KeikitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
