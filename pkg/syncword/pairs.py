"""
Shortest 2-reset words for every pair of states.

For each unordered pair {p, q} we keep the first letter of a shortest word
merging it and that word's length; the whole word is rebuilt on demand by
following first letters. The table comes from one breadth-first search on
the reverse of the pair automaton, started from all diagonal pairs.

This module also holds the orbit analysis of a word's powers (tail length,
period, stabilized rank, basin sizes) used to rank pair words.
"""

import logging
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple

from syncword.dfa import Dfa, Mapping, Word
from syncword.errors import DomainError, UsageError
from syncword.reachability import shortest_path

logger = logging.getLogger(__name__)

UNREACHABLE = -1
SECOND_ORDERS = ("length", "preimage")


@dataclass(frozen=True)
class PairTable:
    """
    Arrays are indexed by p * n + q with p <= q; the diagonal entries hold
    distance 0 and merge state p.
    """

    dfa: Dfa
    distances: Tuple[int, ...]
    first_letters: Tuple[int, ...]
    merge_states: Tuple[int, ...]

    @property
    def n(self) -> int:
        return self.dfa.n

    def index(self, p: int, q: int) -> int:
        self.dfa.check_state(p)
        self.dfa.check_state(q)
        return p * self.n + q if p <= q else q * self.n + p

    def distance(self, p: int, q: int) -> Optional[int]:
        d = self.distances[self.index(p, q)]
        return None if d == UNREACHABLE else d

    def first_letter(self, p: int, q: int) -> Optional[int]:
        a = self.first_letters[self.index(p, q)]
        return None if a == UNREACHABLE else a

    def merge_state(self, p: int, q: int) -> Optional[int]:
        s = self.merge_states[self.index(p, q)]
        return None if s == UNREACHABLE else s

    def pairs(self) -> Iterator[Tuple[int, int]]:
        return combinations(range(self.n), 2)

    def is_complete(self) -> bool:
        """Every pair can be merged; holds exactly for synchronizing automata."""
        n = self.n
        return all(self.distances[p * n + q] != UNREACHABLE for p, q in self.pairs())

    @cached_property
    def ordered(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(order_pairs_by_length(self))


class MergeStats(NamedTuple):
    stabilized_rank: int
    preimage_count: int
    tail: int
    period: int


@dataclass(frozen=True)
class Orbits:
    """Functional-graph view of a mapping: every state runs down a tail into a cycle."""

    tails: Tuple[int, ...]
    entries: Tuple[int, ...]
    cycle_of: Tuple[int, ...]
    positions: Tuple[int, ...]
    cycles: Tuple[Tuple[int, ...], ...]

    @property
    def max_tail(self) -> int:
        return max(self.tails)

    @property
    def period(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles))

    @property
    def cyclic_points(self) -> int:
        return sum(len(c) for c in self.cycles)

    @property
    def stable_exponent(self) -> int:
        """Least K >= max(tail, 1) that is a multiple of the period; w^K is idempotent."""
        period = self.period
        return period * -(-max(self.max_tail, 1) // period)

    def power_image(self, s: int, k: int) -> int:
        """Image of s under the k-th power, for k >= tails[s]."""
        entry = self.entries[s]
        cycle = self.cycles[self.cycle_of[s]]
        return cycle[(self.positions[entry] + k - self.tails[s]) % len(cycle)]


def orbits(mapping: Mapping) -> Orbits:
    images = mapping.images
    n = len(images)
    tails = [-1] * n
    entries = [-1] * n
    cycle_of = [-1] * n
    positions = [-1] * n
    cycles: List[Tuple[int, ...]] = []
    for start in range(n):
        if tails[start] >= 0:
            continue
        path: List[int] = []
        on_path = {}
        s = start
        while tails[s] < 0 and s not in on_path:
            on_path[s] = len(path)
            path.append(s)
            s = images[s]
        if tails[s] < 0:
            cycle = tuple(path[on_path[s]:])
            for i, c in enumerate(cycle):
                tails[c] = 0
                entries[c] = c
                cycle_of[c] = len(cycles)
                positions[c] = i
            cycles.append(cycle)
            path = path[:on_path[s]]
        for u in reversed(path):
            nxt = images[u]
            tails[u] = tails[nxt] + 1
            entries[u] = entries[nxt]
            cycle_of[u] = cycle_of[nxt]
    return Orbits(tuple(tails), tuple(entries), tuple(cycle_of), tuple(positions), tuple(cycles))


def orbit_profile(mapping: Mapping, p: int) -> Tuple[int, int]:
    """Minimal k and r with p·w^k = p·w^(k+r)."""
    o = orbits(mapping)
    return o.tails[p], len(o.cycles[o.cycle_of[p]])


def stable_power_exponent(mapping: Mapping) -> int:
    return orbits(mapping).stable_exponent


def build_pair_table(d: Dfa) -> PairTable:
    n = d.n
    distances = [UNREACHABLE] * (n * n)
    queue = deque()
    for r in range(n):
        distances[r * n + r] = 0
        queue.append((r, r))
    discovered: List[Tuple[int, int]] = []
    preimages = d.preimages

    while queue:
        x, y = queue.popleft()
        step = distances[x * n + y] + 1
        for pre in preimages:
            for u in pre[x]:
                for v in pre[y]:
                    if u == v:
                        continue
                    p, q = (u, v) if u < v else (v, u)
                    key = p * n + q
                    if distances[key] == UNREACHABLE:
                        distances[key] = step
                        queue.append((p, q))
                        discovered.append((p, q))

    # Smallest letter that decreases the distance by one; discovery order is
    # nondecreasing in distance, so successors are resolved first.
    first_letters = [UNREACHABLE] * (n * n)
    merge_states = [UNREACHABLE] * (n * n)
    for r in range(n):
        merge_states[r * n + r] = r
    for p, q in discovered:
        key = p * n + q
        want = distances[key] - 1
        for a, row in enumerate(d.table):
            x, y = row[p], row[q]
            if x > y:
                x, y = y, x
            if distances[x * n + y] == want:
                first_letters[key] = a
                merge_states[key] = merge_states[x * n + y]
                break

    logger.info(f"pair table: {len(discovered)} of {n * (n - 1) // 2} pairs mergeable")
    return PairTable(d, tuple(distances), tuple(first_letters), tuple(merge_states))


def pair_word(t: PairTable, p: int, q: int) -> Word:
    """Rebuild the shortest 2-reset word of {p, q} from first letters."""
    if t.distance(p, q) is None:
        raise DomainError(f"no word merges states {p} and {q}")
    table = t.dfa.table
    n = t.n
    word = []
    while p != q:
        key = p * n + q if p < q else q * n + p
        a = t.first_letters[key]
        word.append(a)
        p, q = table[a][p], table[a][q]
    return tuple(word)


def order_pairs_by_length(t: PairTable) -> List[Tuple[int, int]]:
    """Counting sort of the mergeable pairs by distance, stable in (p, q) order."""
    n = t.n
    longest = max(t.distances)
    buckets: List[List[Tuple[int, int]]] = [[] for _ in range(longest + 1)]
    for p, q in t.pairs():
        d = t.distances[p * n + q]
        if d != UNREACHABLE:
            buckets[d].append((p, q))
    return [pair for bucket in buckets for pair in bucket]


def stats_of_mapping(mapping: Mapping, p: int) -> MergeStats:
    o = orbits(mapping)
    k = o.stable_exponent
    target = o.power_image(p, k)
    basin = sum(1 for s in range(len(mapping)) if o.power_image(s, k) == target)
    return MergeStats(o.cyclic_points, basin, o.max_tail, o.period)


def merge_stats(d: Dfa, pair: Tuple[int, int], word: Sequence[int]) -> MergeStats:
    """
    Power statistics of a word merging pair: the rank where the powers of
    the word stop shrinking the image, and the size of the basin that the
    merged state falls into under the stable power.
    """
    p, q = pair
    mapping = d.mapping(word)
    if not mapping.merges(p, q):
        raise DomainError(f"word does not merge states {p} and {q}")
    return stats_of_mapping(mapping, p)


class RankedPair(NamedTuple):
    pair: Tuple[int, int]
    word: Word
    mapping: Mapping
    stats: MergeStats


def order_pairs_second(t: PairTable, primary: str = "length", limit: Optional[int] = None) -> List[RankedPair]:
    """
    The second order over a linear prefix (default 2n) of the pairs sorted
    by distance. primary='length' sorts by (distance, -basin), primary
    'preimage' by (-basin, distance); remaining ties keep distance order.
    """
    if primary not in SECOND_ORDERS:
        raise UsageError(f"unknown pair order '{primary}', expected one of {', '.join(SECOND_ORDERS)}")
    limit = 2 * t.n if limit is None else limit
    ranked = []
    for pair in t.ordered[:limit]:
        word = pair_word(t, *pair)
        mapping = t.dfa.mapping(word)
        ranked.append(RankedPair(pair, word, mapping, stats_of_mapping(mapping, pair[0])))

    if primary == "length":
        ranked.sort(key=lambda r: (len(r.word), -r.stats.preimage_count))
    else:
        ranked.sort(key=lambda r: (-r.stats.preimage_count, len(r.word)))
    return ranked


def collision_cycle_word(d: Dfa, r: int, a: int) -> Optional[Word]:
    """
    When letter a merges r with some other state and r·a leads back to r,
    return the word a·u closing that cycle: r·s = r and rank(s) < n.
    """
    row = d.table[a]
    target = row[r]
    if not any(row[t] == target for t in range(d.n) if t != r):
        return None
    back = shortest_path(d, target, 1 << r)
    if back is None:
        return None
    return (a,) + back


def resets_pair_automaton(d: Dfa, word: Sequence[int]) -> bool:
    """Run word on the symmetrized square; true when every pair lands on the diagonal."""
    live = set(combinations(range(d.n), 2))
    for a in d.check_word(word):
        row = d.table[a]
        moved = set()
        for p, q in live:
            x, y = row[p], row[q]
            if x != y:
                moved.add((x, y) if x < y else (y, x))
        live = moved
    return not live
