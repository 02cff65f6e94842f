"""
Command-line front end for syncword.

    syncword check SOURCE
    syncword sync SOURCE --algo {eppstein,cycle,semigroup}
    syncword exact SOURCE
    syncword semigroup SOURCE --cap N
    syncword enumerate N Q [--threshold L] [--shards K] [--workers W] [--checkpoint [URL]]
    syncword catalog [NAME] [--list]

SOURCE is a DFA file or a catalog name (cerny:<n>, cpr, ...). Every command
accepts --json. Exit status is 0 on success, 1 when the automaton has no
answer (it does not synchronize), 2 on bad input or exceeded limits.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ValidationError

from syncword import __version__
from syncword.algorithms import ALGORITHMS, cubic_bound, run_algorithm
from syncword.catalog import catalog, list_catalog, load_input, parse_cerny_name
from syncword.database import DATABASE_URL, get_db
from syncword.dfa import format_word, serialize
from syncword.enumeration import enumerate_automata, extremal_dfa
from syncword.errors import DomainError, SyncwordError
from syncword.exact import minimal_sync_word
from syncword.pairs import SECOND_ORDERS
from syncword.reachability import is_synchronizing, scc
from syncword.schemas import (
    CatalogListing,
    CheckReport,
    DfaDocument,
    EnumerationReport,
    ErrorReport,
    ExactReport,
    SearchSpec,
    SemigroupReport,
    SyncReport,
    TraceEntry,
)
from syncword.semigroup import semigroup_closure
from syncword.utils import ENUMERATION_LIMIT, LOG_LEVEL, SEMIGROUP_CAP

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


class CommandFailed(Exception):
    """A finished command whose answer is negative; carries the report to print."""

    def __init__(self, report: BaseModel, text: str):
        super().__init__(text)
        self.report = report
        self.text = text


def emit(args, report: BaseModel, text: str) -> None:
    print(report.model_dump_json(indent=2) if args.json else text)


def cmd_check(args) -> None:
    d = load_input(args.source)
    decomposition = scc(d)
    report = CheckReport(
        n=d.n,
        q=d.q,
        synchronizing=is_synchronizing(d),
        strongly_connected=decomposition.is_strongly_connected(),
        sink_components=len(decomposition.sink_components),
    )
    if not report.synchronizing:
        raise CommandFailed(report, "not synchronizing")
    emit(args, report, "synchronizing")


def cmd_sync(args) -> None:
    d = load_input(args.source)
    result = run_algorithm(d, args.algo, args.order)
    n = None if Path(args.source).is_file() else parse_cerny_name(args.source)
    expected = (n - 1) ** 2 if n is not None else None
    report = SyncReport(
        algorithm=result.algorithm,
        n=d.n,
        q=d.q,
        length=result.length,
        word=format_word(result.word),
        cubic_bound=cubic_bound(d.n),
        exceeds_quadratic=result.exceeds_quadratic,
        expected_length=expected,
        deviation=None if expected is None else result.length - expected,
        trace=[
            TraceEntry(
                size_before=step.size_before,
                size_after=step.size_after,
                segment=format_word(step.segment),
                source=step.source,
            )
            for step in result.trace
        ],
    )
    lines = [f"length {report.length}", report.word]
    if report.deviation:
        lines.append(f"expected {expected}, deviation {report.deviation:+d}")
    if args.trace or report.deviation:
        lines += [step.describe() for step in result.trace]
    emit(args, report, "\n".join(lines))


def cmd_exact(args) -> None:
    d = load_input(args.source)
    result = minimal_sync_word(d)
    report = ExactReport(
        n=d.n,
        q=d.q,
        synchronizing=result.word is not None,
        length=result.length,
        word=None if result.word is None else format_word(result.word),
        visited_count=result.visited_count,
    )
    if result.word is None:
        raise CommandFailed(report, f"not synchronizing ({result.visited_count} image sets visited)")
    emit(args, report, f"length {report.length}\n{report.word}\nvisited {report.visited_count}")


def cmd_semigroup(args) -> None:
    d = load_input(args.source)
    closure = semigroup_closure(d, args.cap)
    report = SemigroupReport(
        n=d.n,
        q=d.q,
        size=closure.size,
        cap=args.cap,
        complete=closure.complete,
        contains_constant=closure.contains_constant(),
    )
    emit(args, report, str(closure.size) if closure.complete else f"over cap({args.cap})")


def format_enumeration(report: EnumerationReport) -> str:
    spec = report.spec
    lines = [f"n={spec.n} q={spec.q} threshold={spec.threshold} shards={report.shards}"]
    lines += [f"  {name}: {value}" for name, value in report.counts.model_dump().items()]
    lines.append("minimal lengths: " + ", ".join(f"{k}:{v}" for k, v in report.histogram.items()))
    if report.bounded:
        lines.append("below the exact gate: " + ", ".join(f"<={k}:{v}" for k, v in report.bounded.items()))
    lines.append(f"max length {report.max_length}, max below (n-1)^2 {report.max_below_bound}")
    for e in report.extremal:
        comment = f"length {e.length} word {e.word} semigroup {e.semigroup_size} letter variants {e.letter_variants}"
        if e.redundant_letters:
            comment += " (a letter is redundant)"
        lines.append(serialize(extremal_dfa(e), [comment]).rstrip("\n"))
    return "\n".join(lines)


def cmd_enumerate(args) -> None:
    spec = SearchSpec(
        n=args.n,
        q=args.q,
        threshold=args.threshold,
        exact_cutoff=args.exact_cutoff,
        require_strongly_connected=not args.all_graphs,
        prune_redundant_letters=not args.keep_redundant,
        dedup_isomorphic=not args.no_dedup,
        permute_letters=not args.fixed_letters,
    )
    if args.checkpoint:
        with get_db(args.checkpoint) as db:
            report = enumerate_automata(spec, args.shards, args.workers, db, args.limit)
    else:
        report = enumerate_automata(spec, args.shards, args.workers, None, args.limit)
    emit(args, report, format_enumeration(report))


def cmd_catalog(args) -> None:
    if args.list or args.name is None:
        listing = CatalogListing(entries=list_catalog())
        lines = ["cerny:<n>  generated, minimal length (n-1)^2"]
        for e in listing.entries:
            status = "present" if e.present else ("missing, extended run" if e.extended else "missing")
            lines.append(f"{e.name:<10} n={e.n} q={e.q} length {e.minimal_length} semigroup {e.semigroup_size}  {status}")
        emit(args, listing, "\n".join(lines))
        return
    d = catalog(args.name)
    document = DfaDocument(name=args.name, n=d.n, q=d.q, table=[list(row) for row in d.table])
    emit(args, document, serialize(d).rstrip("\n"))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="syncword", description="Synchronizing words of finite automata.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="decide whether the automaton synchronizes")
    p.add_argument("source")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sync", parents=[common], help="reset word by a greedy algorithm")
    p.add_argument("source")
    p.add_argument("--algo", choices=sorted(ALGORITHMS), default="eppstein")
    p.add_argument("--order", choices=SECOND_ORDERS, default="length", help="second pair order of the semigroup algorithm")
    p.add_argument("--trace", action="store_true", help="print every rank-reducing step")
    p.set_defaults(func=cmd_sync)

    p = sub.add_parser("exact", parents=[common], help="shortest reset word")
    p.add_argument("source")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("semigroup", parents=[common], help="size of the transition semigroup")
    p.add_argument("source")
    p.add_argument("--cap", type=int, default=SEMIGROUP_CAP)
    p.set_defaults(func=cmd_semigroup)

    p = sub.add_parser("enumerate", parents=[common], help="exhaustive search over small automata")
    p.add_argument("n", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--threshold", type=int, help="record automata with at least this minimal length (default (n-1)^2)")
    p.add_argument("--exact-cutoff", type=float, default=0.6)
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--checkpoint", nargs="?", const=DATABASE_URL, help="store finished shards (default store: SYNCWORD_DATABASE_URL)")
    p.add_argument("--limit", type=int, default=ENUMERATION_LIMIT, help="largest admissible number of tables")
    p.add_argument("--all-graphs", action="store_true", help="do not require strong connectivity")
    p.add_argument("--keep-redundant", action="store_true", help="keep automata with a synchronizing sub-alphabet")
    p.add_argument("--no-dedup", action="store_true", help="count isomorphic automata separately")
    p.add_argument("--fixed-letters", action="store_true", help="isomorphism without renaming letters")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("catalog", parents=[common], help="print a named automaton or list the catalog")
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=LOG_LEVEL, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    try:
        args.func(args)
        return EXIT_OK
    except CommandFailed as e:
        emit(args, e.report, e.text)
        return EXIT_DOMAIN
    except DomainError as e:
        report_error(args, e, e.error_code)
        return EXIT_DOMAIN
    except ValidationError as e:
        report_error(args, e, "usage")
        return EXIT_USAGE
    except SyncwordError as e:
        report_error(args, e, e.error_code)
        return EXIT_USAGE


def report_error(args, error: Exception, code: str) -> None:
    logger.info(f"{args.command} failed: {code}")
    if args.json:
        print(ErrorReport(detail=str(error), error_code=code).model_dump_json(indent=2))
    else:
        print(f"error: {error}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
