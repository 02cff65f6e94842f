"""
Fixture generation script for the catalog.
Runs the exhaustive enumerations that rediscover the published extremal
automata and writes them under fixtures/, validated against the manifest.

    python generate_fixtures.py                 all fixtures within desk scale
    python generate_fixtures.py new4-1 new4-2   selected fixtures
    python generate_fixtures.py kari --from kari.dfa
"""

import argparse
import logging
import sys
from collections import defaultdict
from pathlib import Path

from syncword.catalog import fixture_path, install_fixture, load_manifest, select_fixtures
from syncword.dfa import Dfa, load_dfa
from syncword.enumeration import enumerate_automata
from syncword.errors import SyncwordError
from syncword.schemas import SearchSpec
from syncword.utils import FIXTURES_DIR, LOG_LEVEL, report_timestamp


def generate(names, fixtures_dir: Path, workers: int, shards: int, include_extended: bool, force: bool) -> int:
    """Enumerate once per (n, q) and install every matched fixture; returns the number written."""
    manifest = load_manifest(fixtures_dir)
    entries = [e for e in manifest.fixtures if not names or e.name in names]
    unknown = set(names) - {e.name for e in entries}
    if unknown:
        raise SyncwordError(f"unknown fixture names: {', '.join(sorted(unknown))}")

    groups = defaultdict(list)
    for entry in entries:
        if fixture_path(entry, fixtures_dir).exists() and not force:
            print(f"{entry.name}: already present, skipping")
            continue
        if entry.extended and not (include_extended or names):
            print(f"{entry.name}: needs an extended n={entry.n}, q={entry.q} run, skipping")
            continue
        groups[(entry.n, entry.q)].append(entry)

    written = 0
    for (n, q), group in sorted(groups.items()):
        threshold = min(e.minimal_length for e in group)
        spec = SearchSpec(n=n, q=q, threshold=threshold)
        print(f"Enumerating n={n}, q={q} (threshold {threshold})...")
        report = enumerate_automata(spec, shards=shards, workers=workers, limit=sys.maxsize)
        chosen = select_fixtures(group, report)
        for entry in group:
            found = chosen.get(entry.name)
            if found is None:
                print(f"{entry.name}: no matching automaton found")
                continue
            d = Dfa(tuple(tuple(row) for row in found.table))
            provenance = [
                f"found by enumerate n={n} q={q} threshold={threshold} at {report_timestamp()}",
                f"minimal word {found.word}",
            ]
            path = install_fixture(entry, d, provenance, fixtures_dir)
            print(f"{entry.name}: minimal length {found.length}, semigroup {found.semigroup_size} -> {path}")
            written += 1
    return written


def install_from_file(name: str, source: Path, fixtures_dir: Path) -> Path:
    """Validate a supplied table against the manifest and install it."""
    entry = load_manifest(fixtures_dir).get(name)
    if entry is None:
        raise SyncwordError(f"unknown fixture name '{name}'")
    provenance = [f"installed from {source.name} at {report_timestamp()}"]
    return install_fixture(entry, load_dfa(source), provenance, fixtures_dir)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Generate catalog fixtures by exhaustive enumeration.")
    parser.add_argument("names", nargs="*", help="fixture names (default: all within desk scale)")
    parser.add_argument("--from", dest="source", type=Path, help="install NAME from this DFA file instead of enumerating")
    parser.add_argument("--fixtures-dir", type=Path, default=FIXTURES_DIR)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--shards", type=int, default=1)
    parser.add_argument("--extended", action="store_true", help="also run the extended enumerations")
    parser.add_argument("--force", action="store_true", help="regenerate fixtures that already exist")
    args = parser.parse_args(argv)
    logging.basicConfig(level=LOG_LEVEL, stream=sys.stderr)

    try:
        if args.source is not None:
            if len(args.names) != 1:
                parser.error("--from needs exactly one fixture name")
            path = install_from_file(args.names[0], args.source, args.fixtures_dir)
            print(f"Installed {args.names[0]} -> {path}")
            return 0
        print("Generating catalog fixtures...")
        written = generate(args.names, args.fixtures_dir, args.workers, args.shards, args.extended, args.force)
        print(f"Fixture generation completed: {written} written.")
        return 0
    except SyncwordError as e:
        print(f"Error generating fixtures: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
