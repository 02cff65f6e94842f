"""
Polynomial greedy algorithms for synchronizing words.

All three keep the current image S of the state set and shrink it by
appending words that merge a pair of states inside S:

    eppstein   the shortest 2-reset word of the closest pair in S
    cycle      the same word, repeated while its powers keep shrinking S
    semigroup  marked generator words, their powers and products, falling
               back to a new generator built from the closest pair

Every appended segment that reduces an m-element image is at most
C(n-m+2, 2) letters long, so every output has length at most (n^3-n)/6.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from syncword.dfa import Dfa, Mapping, Word, format_word
from syncword.errors import DomainError, UsageError
from syncword.pairs import PairTable, build_pair_table, order_pairs_second, orbits, pair_word

logger = logging.getLogger(__name__)


def cubic_bound(n: int) -> int:
    """(n^3 - n) / 6, the proven bound on every greedy output."""
    return (n ** 3 - n) // 6


def frankl_budget(n: int, m: int) -> int:
    """Longest word needed to shrink an m-element image of an n-state automaton."""
    return math.comb(n - m + 2, 2)


@dataclass(frozen=True)
class TraceStep:
    size_before: int
    size_after: int
    segment: Word
    source: str
    states_before: int

    def describe(self) -> str:
        return f"{self.size_before} -> {self.size_after} by {self.source} '{format_word(self.segment)}'"


@dataclass(frozen=True)
class SyncResult:
    algorithm: str
    n: int
    word: Word
    trace: Tuple[TraceStep, ...] = ()

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def exceeds_quadratic(self) -> bool:
        return self.length > self.n ** 2

    @property
    def within_cubic_bound(self) -> bool:
        return self.length <= cubic_bound(self.n)


class _Image:
    """The shrinking image S together with the word and trace that produced it."""

    def __init__(self, d: Dfa):
        self.dfa = d
        self.mask = d.full_mask
        self.word: List[int] = []
        self.trace: List[TraceStep] = []

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def contains(self, p: int, q: int) -> bool:
        return bool(self.mask >> p & 1 and self.mask >> q & 1)

    def apply(self, segment: Word, image: int, source: str) -> None:
        self.trace.append(TraceStep(self.size, image.bit_count(), segment, source, self.mask))
        self.word.extend(segment)
        self.mask = image

    def result(self, algorithm: str) -> SyncResult:
        result = SyncResult(algorithm, self.dfa.n, tuple(self.word), tuple(self.trace))
        if result.exceeds_quadratic:
            logger.warning(f"{algorithm}: word of length {result.length} exceeds n^2 = {result.n ** 2}")
        logger.info(f"{algorithm}: reset word of length {result.length} in {len(self.trace)} steps")
        return result


def _synchronizing_table(d: Dfa) -> PairTable:
    t = build_pair_table(d)
    if not t.is_complete():
        raise DomainError("automaton is not synchronizing")
    return t


def _closest_pair(t: PairTable, image: _Image) -> Tuple[int, int]:
    for p, q in t.ordered:
        if image.contains(p, q):
            return p, q
    raise DomainError(f"no mergeable pair inside an image of size {image.size}")


def eppstein_greedy(d: Dfa) -> SyncResult:
    t = _synchronizing_table(d)
    image = _Image(d)
    while image.size > 1:
        p, q = _closest_pair(t, image)
        w = pair_word(t, p, q)
        image.apply(w, d.image_mask_word(image.mask, w), f"pair {{{p},{q}}}")
    return image.result("eppstein")


def cycle_greedy(d: Dfa) -> SyncResult:
    """Eppstein's choice of word, applied as the highest power that still shrinks the image."""
    t = _synchronizing_table(d)
    image = _Image(d)
    while image.size > 1:
        p, q = _closest_pair(t, image)
        w = pair_word(t, p, q)
        current = d.image_mask_word(image.mask, w)
        power = 1
        while current.bit_count() > 1:
            following = d.image_mask_word(current, w)
            if following.bit_count() >= current.bit_count():
                break
            current = following
            power += 1
        image.apply(w * power, current, f"pair {{{p},{q}}} power {power}")
    return image.result("cycle")


@dataclass(frozen=True)
class Marked:
    word: Word
    mapping: Mapping
    stabilized_rank: int

    @classmethod
    def of(cls, word: Word, mapping: Mapping) -> "Marked":
        return cls(word, mapping, orbits(mapping).cyclic_points)

    @property
    def key(self) -> Tuple[int, int, Word]:
        return self.stabilized_rank, len(self.word), self.word


@dataclass
class MarkedWords:
    """Marked words with cached mappings, looked up by word for suffix factoring."""

    by_word: Dict[Word, Marked] = field(default_factory=dict)
    lengths: List[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.by_word)

    def mark(self, word: Word, mapping: Mapping) -> Marked:
        if word in self.by_word:
            return self.by_word[word]
        marked = Marked.of(word, mapping)
        self.by_word[word] = marked
        if len(word) not in self.lengths:
            self.lengths.append(len(word))
            self.lengths.sort(reverse=True)
        return marked

    def ranked(self, budget: int) -> List[Marked]:
        return sorted((m for m in self.by_word.values() if len(m.word) <= budget), key=lambda m: m.key)

    def longest_suffix(self, word: Word) -> Optional[Marked]:
        for length in self.lengths:
            if length <= len(word):
                found = self.by_word.get(word[len(word) - length:])
                if found is not None:
                    return found
        return None


def _shrink_by_power(image: _Image, marked: Marked, first: int) -> Tuple[int, int]:
    """Apply marked once (image first), then again while it shrinks; returns (image, power)."""
    current, power = first, 1
    while current.bit_count() > 1:
        following = marked.mapping.image_mask(current)
        if following.bit_count() >= current.bit_count():
            break
        current = following
        power += 1
    return current, power


def _try_marked(d: Dfa, image: _Image, marks: MarkedWords, budget: int) -> bool:
    candidates = marks.ranked(budget)
    size = image.size
    for marked in candidates:
        first = marked.mapping.image_mask(image.mask)
        if first.bit_count() < size:
            current, power = _shrink_by_power(image, marked, first)
            if power > 1:
                marks.mark(marked.word * power, marked.mapping.power(power))
            image.apply(marked.word * power, current, f"marked power {power}" if power > 1 else "marked")
            return True

    tried = 0
    limit = 2 * d.n
    for u in candidates:
        for v in candidates:
            if tried >= limit:
                return False
            if len(u.word) + len(v.word) > budget:
                continue
            tried += 1
            product = u.mapping.then(v.mapping)
            after = product.image_mask(image.mask)
            if after.bit_count() < size:
                word = u.word + v.word
                marks.mark(word, product)
                image.apply(word, after, "product")
                return True
    return False


def semigroup_greedy(d: Dfa, order: str = "length") -> SyncResult:
    """
    Greedy over a marked set of generator words.

    Seeds the marked set with the shortest 2-reset words of the first n
    pairs in the second order (see pairs.order_pairs_second). Each round
    first tries marked words and their products within the per-step budget;
    when none shrinks the image, the closest pair inside it supplies a new
    generator w = u v, where v is the longest marked suffix of w and only
    u is evaluated letter by letter.
    """
    t = _synchronizing_table(d)
    n = d.n
    marks = MarkedWords()
    for ranked in order_pairs_second(t, order)[:n]:
        marks.mark(ranked.word, ranked.mapping)

    image = _Image(d)
    while image.size > 1:
        budget = frankl_budget(n, image.size)
        if _try_marked(d, image, marks, budget):
            continue

        p, q = _closest_pair(t, image)
        w = pair_word(t, p, q)
        suffix = marks.longest_suffix(w)
        if suffix is None:
            mapping = d.mapping(w)
        else:
            mapping = d.mapping(w[:len(w) - len(suffix.word)]).then(suffix.mapping)
        marks.mark(w, mapping)
        image.apply(w, mapping.image_mask(image.mask), f"generator {{{p},{q}}}")

    logger.info(f"semigroup: {len(marks)} marked words")
    return image.result("semigroup")


ALGORITHMS: Dict[str, Callable[[Dfa], SyncResult]] = {
    "eppstein": eppstein_greedy,
    "cycle": cycle_greedy,
    "semigroup": semigroup_greedy,
}


def run_algorithm(d: Dfa, name: str, order: str = "length") -> SyncResult:
    if name not in ALGORITHMS:
        raise UsageError(f"unknown algorithm '{name}', expected one of {', '.join(ALGORITHMS)}")
    if name == "semigroup":
        return semigroup_greedy(d, order)
    return ALGORITHMS[name](d)
