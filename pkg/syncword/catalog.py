"""
Named automata: the generated Černý family and the published extremal
automata kept as fixture files.

Fixtures are produced by exhaustive enumeration (generate_fixtures.py) and
checked against the manifest every time they are loaded, so a wrong table
can never pass as a published example.
"""

import logging
from itertools import permutations
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from syncword.dfa import Dfa, canonical_form, cerny, load_dfa, parse_word, serialize
from syncword.errors import CatalogError, FixtureMissingError, UsageError
from syncword.exact import minimal_sync_word
from syncword.schemas import CatalogEntry, EnumerationReport, ExtremalAutomaton, FixtureEntry, FixtureManifest
from syncword.semigroup import semigroup_size
from syncword.utils import FIXTURES_DIR, SEMIGROUP_CAP

logger = logging.getLogger(__name__)

CERNY_PREFIX = "cerny:"
MANIFEST_NAME = "manifest.json"


def parse_cerny_name(name: str) -> Optional[int]:
    """n for names of the form cerny:<n>, None for any other name."""
    if not name.startswith(CERNY_PREFIX):
        return None
    text = name[len(CERNY_PREFIX):]
    if not text.isdigit() or int(text) < 2:
        raise CatalogError(f"'{name}' is not a Černý automaton name; use cerny:<n> with n >= 2")
    return int(text)


def load_manifest(fixtures_dir: Optional[Path] = None) -> FixtureManifest:
    path = Path(fixtures_dir or FIXTURES_DIR) / MANIFEST_NAME
    try:
        return FixtureManifest.model_validate_json(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise CatalogError(f"cannot read fixture manifest {path}: {e.strerror}")


def fixture_path(entry: FixtureEntry, fixtures_dir: Optional[Path] = None) -> Path:
    return Path(fixtures_dir or FIXTURES_DIR) / entry.file


def _entry(name: str, manifest: FixtureManifest) -> FixtureEntry:
    entry = manifest.get(name)
    if entry is None:
        known = ", ".join([f"{CERNY_PREFIX}<n>"] + [f.name for f in manifest.fixtures])
        raise CatalogError(f"unknown catalog name '{name}'; known names: {known}")
    return entry


def validate_fixture(d: Dfa, entry: FixtureEntry, size_cap: int = SEMIGROUP_CAP) -> None:
    """
    Check a fixture against its manifest entry.

    Raises:
        CatalogError: If n, q, the minimal reset length or the semigroup size differ
    """
    problems = []
    if (d.n, d.q) != (entry.n, entry.q):
        problems.append(f"has n={d.n}, q={d.q}, expected n={entry.n}, q={entry.q}")
    else:
        word = minimal_sync_word(d).word
        if word is None or len(word) != entry.minimal_length:
            found = "no reset word" if word is None else f"minimal length {len(word)}"
            problems.append(f"has {found}, expected {entry.minimal_length}")
        size = semigroup_size(d, size_cap)
        if size != entry.semigroup_size:
            problems.append(f"has semigroup size {size}, expected {entry.semigroup_size}")
    if problems:
        logger.warning(f"fixture {entry.name} failed validation: {'; '.join(problems)}")
        raise CatalogError(f"fixture '{entry.name}' " + "; ".join(problems))


def catalog(name: str, fixtures_dir: Optional[Path] = None, validate: bool = True) -> Dfa:
    """
    Look up a named automaton.

    Args:
        name: cerny:<n> or a manifest name such as cpr
        fixtures_dir: Directory holding manifest.json and the fixture files
        validate: Check the fixture against the manifest

    Returns:
        The automaton
    """
    n = parse_cerny_name(name)
    if n is not None:
        return cerny(n)

    entry = _entry(name, load_manifest(fixtures_dir))
    path = fixture_path(entry, fixtures_dir)
    if not path.exists():
        hint = f"python generate_fixtures.py {name}"
        if entry.extended:
            hint += f" (an extended n={entry.n}, q={entry.q} enumeration) or python generate_fixtures.py {name} --from FILE"
        raise FixtureMissingError(f"fixture '{name}' not yet generated; run {hint}")
    d = load_dfa(path)
    if validate:
        validate_fixture(d, entry)
    logger.info(f"loaded fixture {name} from {path}")
    return d


def list_catalog(fixtures_dir: Optional[Path] = None) -> List[CatalogEntry]:
    return [
        CatalogEntry(
            name=entry.name,
            n=entry.n,
            q=entry.q,
            minimal_length=entry.minimal_length,
            semigroup_size=entry.semigroup_size,
            present=fixture_path(entry, fixtures_dir).exists(),
            extended=entry.extended,
        )
        for entry in load_manifest(fixtures_dir).fixtures
    ]


def load_input(source: str, fixtures_dir: Optional[Path] = None) -> Dfa:
    """A DFA file path or a catalog name."""
    if Path(source).is_file():
        return load_dfa(Path(source))
    if source.startswith(CERNY_PREFIX):
        return catalog(source, fixtures_dir)
    manifest = load_manifest(fixtures_dir)
    if manifest.get(source) is None:
        raise UsageError(f"'{source}' is neither a readable file nor a catalog name")
    return catalog(source, fixtures_dir)


def resets_up_to_renaming(d: Dfa, word_text: str) -> bool:
    """True when some renaming of the letters in word_text gives a reset word of d."""
    word = parse_word(word_text)
    q = max(word, default=-1) + 1
    if q > d.q:
        return False
    return any(d.resets(tuple(order[a] for a in word)) for order in permutations(range(d.q), q))


def select_fixtures(entries: Sequence[FixtureEntry], report: EnumerationReport) -> Dict[str, ExtremalAutomaton]:
    """
    Match manifest entries to automata found by one enumeration.

    An automaton matches an entry when its minimal length and semigroup size
    agree; the Černý automaton itself is never a match. Entries with a
    published word prefer automata reset by a renaming of it, remaining
    ties go in canonical table order.
    """
    excluded = {canonical_form(cerny(report.spec.n), report.spec.permute_letters).table}
    taken = set()
    chosen: Dict[str, ExtremalAutomaton] = {}
    for entry in sorted(entries, key=lambda e: e.name):
        candidates = [
            e for e in sorted(report.extremal, key=lambda e: e.table)
            if e.length == entry.minimal_length
            and e.semigroup_size == entry.semigroup_size
            and tuple(tuple(row) for row in e.table) not in excluded
            and tuple(tuple(row) for row in e.table) not in taken
        ]
        if entry.published_word:
            matching = [
                e for e in candidates
                if resets_up_to_renaming(Dfa(tuple(tuple(row) for row in e.table)), entry.published_word)
            ]
            candidates = matching or candidates
        if not candidates:
            logger.warning(f"no enumerated automaton matches fixture {entry.name}")
            continue
        chosen[entry.name] = candidates[0]
        taken.add(tuple(tuple(row) for row in candidates[0].table))
    return chosen


def install_fixture(entry: FixtureEntry, d: Dfa, provenance: Sequence[str] = (), fixtures_dir: Optional[Path] = None) -> Path:
    """Validate d against entry and write it as the fixture file."""
    validate_fixture(d, entry)
    path = fixture_path(entry, fixtures_dir)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(serialize(d, [entry.name, *provenance]), encoding="utf-8")
    logger.info(f"wrote fixture {entry.name} to {path}")
    return path
