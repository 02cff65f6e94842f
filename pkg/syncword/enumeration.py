"""
Exhaustive search over complete automata with n states and q letters.

Tables are generated letter by letter in lexicographic order and pass a
chain of filters:

    strongly connected -> one representative per isomorphism class
    -> synchronizing -> no synchronizing proper sub-alphabet
    -> greedy upper bound -> exact minimal length (only near the bound)

Automata with a synchronizing proper sub-alphabet leave the census after
the synchronizing filter, but they are still checked against the threshold
and reported as extremal, flagged with redundant_letters.

The space is split into shards by the first letter's table. Shards are
independent, their reports merge associatively, and finished shards can be
checkpointed so a long run resumes where it stopped.
"""

import logging
import multiprocessing
from itertools import permutations, product
from typing import Dict, Iterator, List, Optional, Tuple

from sqlalchemy.orm import Session

from syncword import crud
from syncword.algorithms import semigroup_greedy
from syncword.dfa import (
    Dfa,
    Rows,
    canonical_form,
    connected_canonical_key,
    format_word,
    is_bfs_normal,
    parse_word,
    restrict_alphabet,
)
from syncword.errors import CapacityError, SyncwordError, UsageError
from syncword.exact import minimal_sync_word
from syncword.reachability import is_strongly_connected, is_synchronizing
from syncword.schemas import EnumerationReport, ExtremalAutomaton, FilterCounts, SearchSpec
from syncword.semigroup import semigroup_size
from syncword.utils import ENUMERATION_LIMIT, SEMIGROUP_CAP, report_timestamp

logger = logging.getLogger(__name__)


def space_size(n: int, q: int) -> int:
    """Number of complete transition tables with n states and q letters."""
    return n ** (n * q)


def check_envelope(spec: SearchSpec, limit: int = ENUMERATION_LIMIT) -> None:
    size = space_size(spec.n, spec.q)
    if size > limit:
        raise CapacityError(
            f"n={spec.n}, q={spec.q} spans {size:,} transition tables, over the limit of {limit:,}; "
            f"raise SYNCWORD_ENUMERATION_LIMIT to run it anyway"
        )


def shard_ranges(n: int, shards: int) -> List[range]:
    """Contiguous ranges of first-letter table indices, one per shard."""
    rows = n ** n
    if not 1 <= shards <= rows:
        raise UsageError(f"shard count must lie in [1, {rows}], got {shards}")
    size, extra = divmod(rows, shards)
    ranges = []
    start = 0
    for i in range(shards):
        stop = start + size + (1 if i < extra else 0)
        ranges.append(range(start, stop))
        start = stop
    return ranges


def iterate_tables(n: int, q: int, first: Optional[range] = None) -> Iterator[Rows]:
    letter_rows = list(product(range(n), repeat=n))
    first = range(len(letter_rows)) if first is None else first
    for i in first:
        head = letter_rows[i]
        for rest in product(letter_rows, repeat=q - 1):
            yield (head,) + rest


def is_representative(rows: Rows, spec: SearchSpec) -> bool:
    """
    True for exactly one table per isomorphism class (letter renamings
    included when spec.permute_letters): the one equal to its canonical key.
    """
    if spec.require_strongly_connected:
        if not is_bfs_normal(rows):
            return False
        return connected_canonical_key(rows, spec.permute_letters) == rows
    return canonical_form(Dfa(rows), spec.permute_letters).table == rows


def has_synchronizing_subalphabet(d: Dfa) -> bool:
    """
    True when dropping one letter leaves a strongly connected synchronizing
    automaton, i.e. one already counted among the automata with q-1 letters.
    Restrictions that fall apart into several components are kept out of
    that census and do not prune.
    """
    if d.q == 1:
        return False
    for a in range(d.q):
        sub = restrict_alphabet(d, [b for b in range(d.q) if b != a])
        if is_strongly_connected(sub.table) and is_synchronizing(sub):
            return True
    return False


def letter_variants(d: Dfa) -> int:
    """Distinct isomorphism classes, state renamings only, among the letter renamings of d."""
    return len({canonical_form(Dfa(tuple(d.table[a] for a in order))).table for order in permutations(range(d.q))})


def extremal_record(
    d: Dfa, spec: SearchSpec, semigroup_cap: int = SEMIGROUP_CAP, redundant_letters: bool = False
) -> ExtremalAutomaton:
    canon = canonical_form(d, spec.permute_letters)
    word = minimal_sync_word(canon).word
    return ExtremalAutomaton(
        table=[list(row) for row in canon.table],
        word=format_word(word),
        length=len(word),
        semigroup_size=semigroup_size(canon, semigroup_cap),
        letter_variants=letter_variants(canon),
        redundant_letters=redundant_letters,
    )


def enumerate_shard(spec: SearchSpec, first: Optional[range] = None) -> EnumerationReport:
    """Run the filter chain over the tables whose first letter index lies in first."""
    counts = dict.fromkeys(FilterCounts.model_fields, 0)
    histogram: Dict[int, int] = {}
    bounded: Dict[int, int] = {}
    extremal: List[ExtremalAutomaton] = []
    gate = spec.exact_gate

    for rows in iterate_tables(spec.n, spec.q, first):
        counts["generated"] += 1
        if spec.require_strongly_connected and not is_strongly_connected(rows):
            continue
        counts["strongly_connected"] += 1
        if spec.dedup_isomorphic and not is_representative(rows, spec):
            continue
        counts["canonical"] += 1
        d = Dfa(rows)
        if not is_synchronizing(d):
            continue
        counts["synchronizing"] += 1
        if spec.prune_redundant_letters and has_synchronizing_subalphabet(d):
            # out of the census, but still a candidate extremal automaton
            if semigroup_greedy(d).length >= spec.threshold and len(minimal_sync_word(d).word) >= spec.threshold:
                extremal.append(extremal_record(d, spec, redundant_letters=True))
            continue
        counts["minimal_alphabet"] += 1

        bound = semigroup_greedy(d).length
        if bound < gate:
            bounded[bound] = bounded.get(bound, 0) + 1
            continue
        counts["exact_runs"] += 1
        length = len(minimal_sync_word(d).word)
        histogram[length] = histogram.get(length, 0) + 1
        if length >= spec.threshold:
            extremal.append(extremal_record(d, spec))

    return EnumerationReport(
        spec=spec,
        counts=FilterCounts(**counts),
        histogram=dict(sorted(histogram.items())),
        bounded=dict(sorted(bounded.items())),
        extremal=sorted(extremal, key=lambda e: e.table),
    )


def _shard_job(job: Tuple[str, int, int]) -> Tuple[int, str]:
    spec_json, start, stop = job
    report = enumerate_shard(SearchSpec.model_validate_json(spec_json), range(start, stop))
    return start, report.model_dump_json()


def enumerate_automata(
    spec: SearchSpec,
    shards: int = 1,
    workers: int = 1,
    db: Optional[Session] = None,
    limit: int = ENUMERATION_LIMIT,
) -> EnumerationReport:
    """
    Run the whole search, optionally in parallel and checkpointed.

    Args:
        spec: What to enumerate
        shards: Number of first-letter ranges
        workers: Worker processes; 1 runs in this process
        db: Checkpoint store session; finished shards found there are skipped
        limit: Largest admissible space size

    Returns:
        The merged report of all shards
    """
    check_envelope(spec, limit)
    ranges = shard_ranges(spec.n, shards)
    done: Dict[int, EnumerationReport] = {}
    run = None
    if db is not None:
        run = crud.get_or_create_run(db, spec, shards)
        done = crud.completed_shards(db, run)

    pending = [i for i in range(shards) if i not in done]
    index_of = {ranges[i].start: i for i in pending}
    jobs = [(spec.model_dump_json(), ranges[i].start, ranges[i].stop) for i in pending]
    logger.info(f"enumerating n={spec.n} q={spec.q}: {len(pending)} of {shards} shards pending")

    def finish(start: int, report: EnumerationReport) -> None:
        i = index_of[start]
        report = report.model_copy(update={"shards": shards})
        done[i] = report
        if run is not None:
            crud.save_shard(db, run, i, report)
        logger.info(f"shard {i} finished: {report.counts.generated} tables")

    if workers > 1 and len(jobs) > 1:
        with multiprocessing.Pool(workers) as pool:
            for start, payload in pool.imap_unordered(_shard_job, jobs):
                finish(start, EnumerationReport.model_validate_json(payload))
    else:
        for job in jobs:
            start, payload = _shard_job(job)
            finish(start, EnumerationReport.model_validate_json(payload))

    report = done[0]
    for i in range(1, shards):
        report = report.merge(done[i])
    return report.model_copy(update={"generated_at": report_timestamp(), "shards": shards})


def extremal_dfa(e: ExtremalAutomaton) -> Dfa:
    return Dfa(tuple(tuple(row) for row in e.table))


def find_extremal(spec: SearchSpec, target_length: int, **kwargs) -> List[Dfa]:
    """Canonical tables of the automata whose minimal reset length is at least target_length."""
    spec = SearchSpec(**{**spec.model_dump(), "threshold": target_length})
    report = enumerate_automata(spec, **kwargs)
    return [extremal_dfa(e) for e in report.extremal]


def verify_report(report: EnumerationReport) -> None:
    """Re-run the exact search on every recorded extremal automaton."""
    if report.survivors != report.counts.minimal_alphabet:
        raise SyncwordError("histogram does not cover the surviving automata")
    for e in report.extremal:
        d = extremal_dfa(e)
        found = minimal_sync_word(d).word
        if found is None or len(found) != e.length:
            raise SyncwordError(f"extremal automaton {e.table} does not have minimal length {e.length}")
        if len(e.word) != e.length or not d.resets(parse_word(e.word, d.q)):
            raise SyncwordError(f"recorded word '{e.word}' does not reset {e.table}")
