"""
bookram command line interface.

Every capability of the package as a ``bookram <command>`` subcommand. Graphs are
read as graph6 files ("-" reads standard input); ``--json`` prints exactly one
JSON document on stdout.

Exit codes: 0 success, 1 negative or undecided answer (does not arrow, unknown, not
found, not strongly regular, ...), 2 usage error or invalid value, 3 unreadable input.

:copyright: 2024 by the bookram developers
:license: LGPL, see LICENSE for more details.

"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import TYPE_CHECKING

from monty.json import MontyEncoder

from bookram import __version__
from bookram.bounds import best_bounds
from bookram.extract import aes_check, claim1_scan, extract
from bookram.graph import Graph, Graph6Error, complement, from_graph6, read_graph6_file, to_graph6
from bookram.metrics import book_size, census, census_bruteforce, lemma1_check
from bookram.search import Coloring, arrows, find_witness, ramsey_number
from bookram.srg import certificate_from_file, certify, corollary_rows, load_witness, paley, verify_srg
from bookram.utils import as_fraction

if TYPE_CHECKING:
    from collections.abc import Sequence

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_INPUT = 3

BRUTEFORCE_ORDER_CAP = 12
REPRO_PALEY_ORDERS = (5, 9, 13, 17, 25, 29)
REPRO_SEARCH_VALUES = {(1, 1): 6, (1, 2): 7, (1, 3): 9}


def setup_logging(level: str = "WARNING") -> None:
    """Send bookram log records of ``level`` or above to stderr, through rich when it is installed."""
    pkg_logger = logging.getLogger("bookram")
    pkg_logger.setLevel(level.upper())
    # clear handlers and add a single stderr handler
    pkg_logger.handlers.clear()
    try:
        from rich.console import Console
        from rich.logging import RichHandler

        handler: logging.Handler = RichHandler(console=Console(stderr=True), rich_tracebacks=True)
    except ImportError:
        handler = logging.StreamHandler(sys.stderr)
    formatter = logging.Formatter("[%(asctime)s] [%(levelname)8s] --- %(message)s (%(filename)s:%(lineno)d)")
    handler.setFormatter(formatter)
    pkg_logger.addHandler(handler)


def read_graph(filename: str, index: int = 0) -> Graph:
    """Read graph number ``index`` from a graph6 file, or from standard input when ``filename`` is "-"."""
    if filename != "-":
        return read_graph6_file(filename, index=index)
    lines = [line for line in sys.stdin.read().splitlines() if line.strip()]
    if not 0 <= index < len(lines):
        raise ValueError(f"Standard input has {len(lines)} graphs, cannot read graph {index}")
    return from_graph6(lines[index])


def _emit(args: argparse.Namespace, record: dict | list, text: str) -> None:
    if args.json:
        print(json.dumps(record, cls=MontyEncoder, indent=2))
    else:
        print(text)


def _positive(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return number


def cmd_bounds(args: argparse.Namespace) -> int:
    certificates = [certificate_from_file(path) for path in args.cert]
    interval = best_bounds(args.m, args.n, certificates)
    lines = [str(interval)]
    for entry in interval.provenance:
        mark = "*" if entry["applicable"] else " "
        lines.append(f"  {mark} {entry['rule']:<40} {entry['value'] if entry['value'] is not None else '-'}")
    _emit(args, interval.as_record(), "\n".join(lines))
    return EXIT_OK


def cmd_bs(args: argparse.Namespace) -> int:
    g = read_graph(args.file, args.index)
    if args.complement:
        g = complement(g)
    value = book_size(g)
    _emit(args, {"order": g.order, "complement": args.complement, "bs": value}, "none" if value is None else str(value))
    return EXIT_OK


def cmd_counts(args: argparse.Namespace) -> int:
    g = read_graph(args.file, args.index)
    counts = census(g)
    record = counts.as_record()
    record["identity_residuals"] = counts.identity_residuals()
    if args.bruteforce:
        if g.order > BRUTEFORCE_ORDER_CAP:
            raise ValueError(f"--bruteforce is limited to order {BRUTEFORCE_ORDER_CAP}, got {g.order}")
        record["bruteforce_agrees"] = census_bruteforce(g) == counts
    text = "\n".join(f"{key:<20} {value}" for key, value in record.items())
    _emit(args, record, text)
    return EXIT_OK


def cmd_srg_verify(args: argparse.Namespace) -> int:
    params = verify_srg(read_graph(args.file, args.index))
    if params is None:
        _emit(args, {"srg_params": None}, "not strongly regular")
        return EXIT_NEGATIVE
    _emit(args, {"srg_params": params.as_record()}, str(params))
    return EXIT_OK


def cmd_srg_paley(args: argparse.Namespace) -> int:
    g = paley(args.q)
    text = to_graph6(g)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="ascii")
    params = verify_srg(g)
    _emit(args, {"q": args.q, "graph6": text, "srg_params": params.as_record() if params else None}, text)
    return EXIT_OK


def cmd_srg_certify(args: argparse.Namespace) -> int:
    cert = certify(read_graph(args.file, args.index)) if args.file == "-" else certificate_from_file(args.file)
    text = str(cert)
    if cert.srg_params is not None:
        text += f"  (SRG {cert.srg_params})"
    if cert.degenerate:
        text += "  [degenerate]"
    _emit(args, cert.as_record(), text)
    return EXIT_OK


def cmd_search_arrows(args: argparse.Namespace) -> int:
    report = arrows(
        args.N, args.m, args.n, engine=args.engine, threads=args.threads, force=args.force, max_nodes=args.max_nodes
    )
    if report.witness is not None and args.output:
        report.witness.to_file(args.output, args.m, args.n)
    text = f"K_{args.N} -> (B_{args.m}, B_{args.n}): {report.answer}"
    if report.witness is not None:
        text += f"\nwitness (red graph6): {to_graph6(report.witness.red)}"
    _emit(args, report.as_record(), text)
    return EXIT_OK if report.answer == "arrows" else EXIT_NEGATIVE


def cmd_search_witness(args: argparse.Namespace) -> int:
    coloring = find_witness(args.N, args.m, args.n, budget=args.budget, seed=args.seed)
    if coloring is None:
        _emit(args, {"N": args.N, "m": args.m, "n": args.n, "red_graph6": None}, "not found")
        return EXIT_NEGATIVE
    if args.output:
        coloring.to_file(args.output, args.m, args.n)
    red6 = to_graph6(coloring.red)
    _emit(args, {"N": args.N, "m": args.m, "n": args.n, "red_graph6": red6}, red6)
    return EXIT_OK


def cmd_search_number(args: argparse.Namespace) -> int:
    value, reports = ramsey_number(args.m, args.n, max_order=args.max_order, threads=args.threads, force=args.force)
    record = {"m": args.m, "n": args.n, "r": value, "reports": [r.as_record() for r in reports]}
    text = "\n".join(f"K_{r.N}: {r.answer}" for r in reports)
    relation = f"= {value}" if value is not None else f"> {args.max_order}"
    text += f"\nr(B_{args.m}, B_{args.n}) {relation}"
    _emit(args, record, text)
    return EXIT_OK if value is not None else EXIT_NEGATIVE


def cmd_extract(args: argparse.Namespace) -> int:
    coloring = Coloring(read_graph(args.file, args.index)) if args.file == "-" else Coloring.from_file(args.file)
    outcome = extract(coloring, args.m)
    lines = [f"{step.step:<22} {step.status}" for step in outcome.trace.steps]
    if outcome.witness is not None:
        w = outcome.witness
        lines.append(f"{outcome.result}: spine {w.spine}, {w.page_count} pages")
    else:
        lines.append(f"{outcome.result}: {outcome.failed_step}")
    _emit(args, outcome.as_record(), "\n".join(lines))
    return EXIT_OK if outcome.witness is not None else EXIT_NEGATIVE


def cmd_aes(args: argparse.Namespace) -> int:
    verdict = aes_check(read_graph(args.file, args.index), args.r)
    i, ii, iii = verdict.as_tuple()
    _emit(args, verdict.as_record(), f"(i) no K_{args.r}: {i}\n(ii) min degree: {ii}\n(iii) chromatic: {iii}")
    return EXIT_OK


def cmd_lemma1(args: argparse.Namespace) -> int:
    verdict = lemma1_check(read_graph(args.file, args.index), as_fraction(args.lam))
    if not verdict.hypotheses_met:
        text = f"hypotheses unmet: {verdict.failed_hypothesis}"
    else:
        text = f"M(C4) = {verdict.c4} > {verdict.bound}: {verdict.holds}"
    _emit(args, verdict.as_record(), text)
    return EXIT_OK if verdict.holds else EXIT_NEGATIVE


def cmd_claim1(args: argparse.Namespace) -> int:
    coloring = Coloring(read_graph(args.file, args.index)) if args.file == "-" else Coloring.from_file(args.file)
    result = claim1_scan(coloring, args.m)
    if result is None:
        _emit(args, {"found": False}, "no induced red C4 with enough common blue neighbours")
        return EXIT_NEGATIVE
    text = (
        f"cycle {result.cycle}, {len(result.common_blue)} common blue neighbours, "
        f"edge {result.edge} with {result.edge_pages} red pages"
    )
    _emit(args, {"found": True, **result.as_record()}, text)
    return EXIT_OK


def _repro_corollary() -> list[dict]:
    rows = []
    for row in corollary_rows():
        witness = load_witness(row)
        certificates = [certify(witness)] if witness is not None else []
        interval = best_bounds(row.m, row.n, certificates)
        if witness is None:
            status = "certificate-missing"
            ok = not interval.exact or interval.lower == row.r
        else:
            status = "pass" if interval.exact and interval.lower == row.r else "FAIL"
            ok = status == "pass"
        rows.append(
            {
                "kind": "corollary",
                "params": str(row.params),
                "m": row.m,
                "n": row.n,
                "expected": row.r,
                "lower": interval.lower,
                "upper": interval.upper,
                "status": status if ok else "FAIL",
            }
        )
    return rows


def _repro_paley() -> list[dict]:
    rows = []
    for q in REPRO_PALEY_ORDERS:
        n = (q - 1) // 4
        cert = certify(paley(q))
        interval = best_bounds(n, n, [cert])
        params = cert.srg_params.as_tuple() if cert.srg_params else None
        ok = params == (q, (q - 1) // 2, (q - 5) // 4, (q - 1) // 4) and interval.exact and interval.lower == 4 * n + 2
        rows.append(
            {
                "kind": "paley",
                "params": f"paley({q})",
                "m": n,
                "n": n,
                "expected": 4 * n + 2,
                "lower": interval.lower,
                "upper": interval.upper,
                "status": "pass" if ok else "FAIL",
            }
        )
    return rows


def _repro_search(threads: int) -> list[dict]:
    rows = []
    for (m, n), expected in REPRO_SEARCH_VALUES.items():
        value, _ = ramsey_number(m, n, threads=threads)
        rows.append(
            {
                "kind": "search",
                "params": "exhaustive",
                "m": m,
                "n": n,
                "expected": expected,
                "lower": value,
                "upper": value,
                "status": "pass" if value == expected else "FAIL",
            }
        )
    return rows


def _pair(row: dict) -> str:
    return f"({row['m']},{row['n']})"


def cmd_repro(args: argparse.Namespace) -> int:
    rows = _repro_corollary() + _repro_paley()
    if args.search:
        rows += _repro_search(args.threads)
    header = f"{'kind':<10} {'params':<20} {'(m,n)':<10} {'r':>5} {'lower':>6} {'upper':>6}  status"
    lines = [header] + [
        f"{r['kind']:<10} {r['params']:<20} {_pair(r):<10} {r['expected']:>5} "
        f"{r['lower']:>6} {r['upper']:>6}  {r['status']}"
        for r in rows
    ]
    _emit(args, rows, "\n".join(lines))
    return EXIT_NEGATIVE if any(r["status"] == "FAIL" for r in rows) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON document on stdout")
    common.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        type=str.upper,
        help="log messages of this or higher severity go to stderr",
    )
    common.add_argument("--threads", type=_positive, default=1, help="worker processes for exhaustive search")

    graph_input = argparse.ArgumentParser(add_help=False)
    graph_input.add_argument("file", help="graph6 file, or - for standard input")
    graph_input.add_argument("--index", type=int, default=0, help="which graph of the file to read")

    parser = argparse.ArgumentParser(prog="bookram", description="Book Ramsey numbers r(B_m, B_n).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", parents=[common], help="best known interval for r(B_m, B_n)")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--cert", action="append", default=[], help="graph6 witness or certificate JSON (repeatable)")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("bs", parents=[common, graph_input], help="book size of a graph")
    p.add_argument("--complement", action="store_true", help="measure the complement instead")
    p.set_defaults(func=cmd_bs)

    p = sub.add_parser("counts", parents=[common, graph_input], help="induced C4, K4, diamond and C4+K1 counts")
    p.add_argument("--bruteforce", action="store_true", help="compare with the subset classifier")
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("srg", help="strongly regular graphs")
    srg = p.add_subparsers(dest="srg_command", required=True)
    q = srg.add_parser("verify", parents=[common, graph_input], help="strongly regular parameters of a graph")
    q.set_defaults(func=cmd_srg_verify)
    q = srg.add_parser("paley", parents=[common], help="Paley graph on GF(q) as graph6")
    q.add_argument("q", type=int)
    q.add_argument("-o", "--output", help="also write the graph6 line to this file")
    q.set_defaults(func=cmd_srg_paley)
    q = srg.add_parser("certify", parents=[common, graph_input], help="lower-bound certificate from a red graph")
    q.set_defaults(func=cmd_srg_certify)

    p = sub.add_parser("search", help="exhaustive and stochastic search")
    search = p.add_subparsers(dest="search_command", required=True)
    q = search.add_parser("arrows", parents=[common], help="decide whether K_N arrows (B_m, B_n)")
    q.add_argument("N", type=int)
    q.add_argument("m", type=int)
    q.add_argument("n", type=int)
    q.add_argument("--engine", choices=["dfs", "enumerate"], default="dfs")
    q.add_argument("--force", action="store_true", help="allow orders above the default cap")
    q.add_argument("-o", "--output", help="write an avoiding colouring to OUTPUT.g6 and OUTPUT.json")
    q.add_argument("--max-nodes", type=_positive, default=None, help="stop with answer 'unknown' after this many nodes")
    q.set_defaults(func=cmd_search_arrows)
    q = search.add_parser("witness", parents=[common], help="simulated annealing for an avoiding colouring")
    q.add_argument("N", type=int)
    q.add_argument("m", type=int)
    q.add_argument("n", type=int)
    q.add_argument("--seed", type=int, default=None)
    q.add_argument("--budget", type=_positive, default=10**6)
    q.add_argument("-o", "--output", help="write the colouring to OUTPUT.g6 and OUTPUT.json")
    q.set_defaults(func=cmd_search_witness)
    q = search.add_parser("number", parents=[common], help="r(B_m, B_n) by exhaustive search")
    q.add_argument("m", type=int)
    q.add_argument("n", type=int)
    q.add_argument("--max-order", type=int, default=10)
    q.add_argument("--force", action="store_true", help="allow orders above the default cap")
    q.set_defaults(func=cmd_search_number)

    p = sub.add_parser("extract", parents=[common, graph_input], help="extract a book from a red graph")
    p.add_argument("-m", type=int, required=True, help="red page bound")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("aes", parents=[common, graph_input], help="Andrásfai–Erdős–Sós properties")
    p.add_argument("-r", type=int, default=3, help="clique order")
    p.set_defaults(func=cmd_aes)

    p = sub.add_parser("lemma1", parents=[common, graph_input], help="check the induced C4 counting lemma")
    p.add_argument("--lam", default="1/2", type=Fraction, help="minimum degree ratio as p/q")
    p.set_defaults(func=cmd_lemma1)

    p = sub.add_parser("claim1", parents=[common, graph_input], help="induced red C4 with many common blue neighbours")
    p.add_argument("-m", type=int, required=True, help="red page bound")
    p.set_defaults(func=cmd_claim1)

    p = sub.add_parser("repro", parents=[common], help="reproduce the table of exact values")
    p.add_argument("--search", action="store_true", help="also compute the small values by exhaustive search")
    p.set_defaults(func=cmd_repro)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    setup_logging(args.log_level)
    try:
        return args.func(args)
    except (Graph6Error, FileNotFoundError, json.JSONDecodeError, UnicodeDecodeError, KeyError) as exc:
        print(f"bookram: cannot read input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"bookram: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
