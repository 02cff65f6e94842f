"""
Core automaton representation for syncword.
Complete deterministic automata, words over letter indices, state sets as
bit masks, transformations of the state set, canonical forms and the text
format used for fixtures and CLI input.
"""

import logging
import string
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence, Tuple

from syncword.errors import CapacityError, ParseError, UsageError

logger = logging.getLogger(__name__)

# Mappings are byte strings, so states must fit in one byte.
MAX_STATES = 256
# Exhaustive subset searches (exact-sync) stop here.
SUBSET_CAP = 28
LETTERS = string.ascii_lowercase
MAX_LETTERS = len(LETTERS)

Word = Tuple[int, ...]
Rows = Tuple[Tuple[int, ...], ...]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def format_word(word: Iterable[int]) -> str:
    """Render a word with letter names a, b, c, ..."""
    return "".join(LETTERS[a] for a in word)


def parse_word(text: str, q: Optional[int] = None) -> Word:
    """
    Parse a word written with letter names.

    Args:
        text: Letters such as 'baab'
        q: Alphabet size the word must fit, if known

    Returns:
        Tuple of letter indices
    """
    word = []
    for ch in text.strip():
        a = LETTERS.find(ch)
        if a < 0 or (q is not None and a >= q):
            raise UsageError(f"'{ch}' is not a letter of the alphabet")
        word.append(a)
    return tuple(word)


@dataclass(frozen=True)
class StateSet:
    """A subset of the states, stored as a bit mask."""

    mask: int = 0

    @classmethod
    def of(cls, states: Iterable[int]) -> "StateSet":
        mask = 0
        for s in states:
            if s < 0:
                raise UsageError(f"state {s} is negative")
            mask |= 1 << s
        return cls(mask)

    @classmethod
    def full(cls, n: int) -> "StateSet":
        return cls((1 << n) - 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __contains__(self, s: int) -> bool:
        return s >= 0 and bool(self.mask >> s & 1)

    def __repr__(self) -> str:
        return f"StateSet({sorted(self)})"

    def defect(self, n: int) -> int:
        return n - len(self)

    def is_singleton(self) -> bool:
        return len(self) == 1


@dataclass(frozen=True)
class Mapping:
    """
    A transformation of the state set, images[s] being the image of s.
    Composition goes left to right: a.then(b) applies a first.
    """

    images: bytes

    @classmethod
    def of(cls, images: Sequence[int]) -> "Mapping":
        return cls(bytes(images))

    @classmethod
    def identity(cls, n: int) -> "Mapping":
        return cls(bytes(range(n)))

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, s: int) -> int:
        return self.images[s]

    def __iter__(self) -> Iterator[int]:
        return iter(self.images)

    def __repr__(self) -> str:
        return f"Mapping({list(self.images)})"

    @cached_property
    def _translation(self) -> bytes:
        return self.images + bytes(256 - len(self.images))

    def then(self, other: "Mapping") -> "Mapping":
        return Mapping(self.images.translate(other._translation))

    def power(self, k: int) -> "Mapping":
        result = Mapping.identity(len(self))
        base = self
        while k:
            if k & 1:
                result = result.then(base)
            base = base.then(base)
            k >>= 1
        return result

    @property
    def rank(self) -> int:
        return len(set(self.images))

    def is_constant(self) -> bool:
        return self.rank == 1

    def fixed_points(self) -> Tuple[int, ...]:
        return tuple(s for s, t in enumerate(self.images) if s == t)

    def image_mask(self, mask: int) -> int:
        image = 0
        images = self.images
        for s in iter_bits(mask):
            image |= 1 << images[s]
        return image

    def merges(self, p: int, q: int) -> bool:
        return self.images[p] == self.images[q]


@dataclass(frozen=True)
class Dfa:
    """
    Complete deterministic automaton on states 0..n-1 and letters 0..q-1.
    table[a][s] is the state reached from s by letter a (one row per letter,
    the same layout as the text format).
    """

    table: Rows

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.table)
        if not rows:
            raise UsageError("an automaton needs at least one letter")
        n = len(rows[0])
        if n < 1:
            raise UsageError("an automaton needs at least one state")
        if n > MAX_STATES:
            raise CapacityError(f"{n} states exceed the limit of {MAX_STATES}")
        if len(rows) > MAX_LETTERS:
            raise CapacityError(f"{len(rows)} letters exceed the limit of {MAX_LETTERS}")
        for a, row in enumerate(rows):
            if len(row) != n:
                raise UsageError(f"letter {LETTERS[a]} has {len(row)} transitions, expected {n}")
            for s, t in enumerate(row):
                if not isinstance(t, int) or not 0 <= t < n:
                    raise UsageError(f"transition {s}·{LETTERS[a]} = {t} is not a state in [0, {n})")
        object.__setattr__(self, "table", rows)

    @classmethod
    def from_delta(cls, delta: Sequence[Sequence[int]]) -> "Dfa":
        """Build from a state-major table, delta[s][a]."""
        return cls(tuple(zip(*delta)))

    @property
    def n(self) -> int:
        return len(self.table[0])

    @property
    def q(self) -> int:
        return len(self.table)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def check_state(self, s: int) -> None:
        if not 0 <= s < self.n:
            raise UsageError(f"state {s} is not in [0, {self.n})")

    def check_word(self, word: Iterable[int]) -> Word:
        word = tuple(word)
        for a in word:
            if not 0 <= a < self.q:
                raise UsageError(f"letter {a} is not in [0, {self.q})")
        return word

    def apply_letter(self, s: int, a: int) -> int:
        self.check_state(s)
        self.check_word((a,))
        return self.table[a][s]

    def apply_word(self, s: int, word: Iterable[int]) -> int:
        self.check_state(s)
        for a in self.check_word(word):
            s = self.table[a][s]
        return s

    @cached_property
    def letter_mappings(self) -> Tuple[Mapping, ...]:
        return tuple(Mapping.of(row) for row in self.table)

    @cached_property
    def preimages(self) -> Tuple[Tuple[Tuple[int, ...], ...], ...]:
        """preimages[a][t] lists the states s with s·a = t."""
        result = []
        for row in self.table:
            buckets = [[] for _ in range(self.n)]
            for s, t in enumerate(row):
                buckets[t].append(s)
            result.append(tuple(tuple(b) for b in buckets))
        return tuple(result)

    @cached_property
    def _chunk_tables(self) -> Tuple[Tuple[Tuple[int, ...], ...], ...]:
        # Per letter and per byte of the mask: image of that byte's states.
        tables = []
        for row in self.table:
            chunks = []
            for base in range(0, self.n, 8):
                targets = [1 << row[s] for s in range(base, min(base + 8, self.n))]
                targets += [0] * (8 - len(targets))
                chunk = [0] * 256
                for byte in range(1, 256):
                    low = byte & -byte
                    chunk[byte] = chunk[byte ^ low] | targets[low.bit_length() - 1]
                chunks.append(tuple(chunk))
            tables.append(tuple(chunks))
        return tuple(tables)

    def image_mask(self, mask: int, a: int) -> int:
        image = 0
        for chunk in self._chunk_tables[a]:
            if not mask:
                break
            image |= chunk[mask & 0xFF]
            mask >>= 8
        return image

    def image_mask_word(self, mask: int, word: Iterable[int]) -> int:
        for a in word:
            mask = self.image_mask(mask, a)
        return mask

    def image(self, states: StateSet, word: Iterable[int] = ()) -> StateSet:
        if states.mask >> self.n:
            raise UsageError(f"{states} is not a subset of [0, {self.n})")
        return StateSet(self.image_mask_word(states.mask, self.check_word(word)))

    def mapping(self, word: Iterable[int]) -> Mapping:
        result = Mapping.identity(self.n)
        letters = self.letter_mappings
        for a in self.check_word(word):
            result = result.then(letters[a])
        return result

    def rank(self, word: Iterable[int] = ()) -> int:
        return len(self.image(StateSet.full(self.n), word))

    def defect(self, word: Iterable[int] = ()) -> int:
        return self.n - self.rank(word)

    def resets(self, word: Iterable[int]) -> bool:
        return self.rank(word) == 1


def apply_letter(d: Dfa, s: int, a: int) -> int:
    return d.apply_letter(s, a)


def image_of_set(d: Dfa, states: StateSet, word: Iterable[int]) -> StateSet:
    return d.image(states, word)


def rank(d: Dfa, word: Iterable[int]) -> int:
    return d.rank(word)


def defect(d: Dfa, word: Iterable[int]) -> int:
    return d.defect(word)


def mapping_of_word(d: Dfa, word: Iterable[int]) -> Mapping:
    return d.mapping(word)


def cerny(n: int) -> Dfa:
    """
    The Černý automaton C_n: letter a is the cycle i -> i+1 (mod n), letter b
    sends 0 to 1 and fixes every other state. Its shortest reset word has
    length (n-1)^2.
    """
    if n < 2:
        raise UsageError(f"the Černý automaton needs n >= 2, got {n}")
    shift = tuple((i + 1) % n for i in range(n))
    merge = (1,) + tuple(range(1, n))
    return Dfa((shift, merge))


def _relabel_rows(rows: Rows, perm: Sequence[int]) -> Rows:
    relabeled = []
    for row in rows:
        new = [0] * len(row)
        for s, t in enumerate(row):
            new[perm[s]] = perm[t]
        relabeled.append(tuple(new))
    return tuple(relabeled)


def relabel(d: Dfa, perm: Sequence[int]) -> Dfa:
    """Rename every state s to perm[s]."""
    if sorted(perm) != list(range(d.n)):
        raise UsageError(f"{list(perm)} is not a permutation of the states")
    return Dfa(_relabel_rows(d.table, perm))


def canonical_form(d: Dfa, permute_letters: bool = False) -> Dfa:
    """
    Lexicographically least transition table over all state relabelings,
    and over all letter orders when permute_letters is set. Two automata
    are isomorphic exactly when their canonical forms are equal.
    """
    best = None
    for perm in permutations(range(d.n)):
        rows = _relabel_rows(d.table, perm)
        if permute_letters:
            rows = tuple(sorted(rows))
        if best is None or rows < best:
            best = rows
    return Dfa(best)


def connected_canonical_key(rows: Rows, permute_letters: bool = False) -> Optional[Rows]:
    """
    Canonical key for strongly connected automata: the least table among the
    breadth-first numberings from every start state (and every letter order
    when permute_letters is set). Costs n * q! numberings instead of n!.

    Returns None when no start state reaches all states.
    """
    n = len(rows[0])
    q = len(rows)
    orders = permutations(range(q)) if permute_letters else (tuple(range(q)),)
    best = None
    for order in orders:
        ordered = [rows[a] for a in order]
        for start in range(n):
            label = [-1] * n
            label[start] = 0
            visit = [start]
            for s in visit:
                for row in ordered:
                    t = row[s]
                    if label[t] < 0:
                        label[t] = len(visit)
                        visit.append(t)
            if len(visit) < n:
                continue
            key = tuple(tuple(label[row[s]] for s in visit) for row in ordered)
            if best is None or key < best:
                best = key
    return best


def is_bfs_normal(rows: Rows) -> bool:
    """True when breadth-first search from state 0 discovers the states in order 0, 1, ..., n-1."""
    n = len(rows[0])
    discovered = 1
    for s in range(n):
        if s >= discovered:
            return False
        for row in rows:
            t = row[s]
            if t >= discovered:
                if t != discovered:
                    return False
                discovered += 1
    return discovered == n


def restrict_alphabet(d: Dfa, letters: Iterable[int]) -> Dfa:
    """Sub-automaton on the same states keeping only the given letters (in index order)."""
    kept = sorted(set(letters))
    if not kept:
        raise UsageError("cannot restrict to an empty alphabet")
    d.check_word(kept)
    return Dfa(tuple(d.table[a] for a in kept))


def is_permutation_automaton(d: Dfa) -> bool:
    return all(len(set(row)) == d.n for row in d.table)


def parse(text: str) -> Dfa:
    """
    Parse the DFA text format: a header line 'n q', then q lines of n
    targets (line a lists s·a for s = 0..n-1), then optional comment lines
    starting with '#'.
    """
    lines = text.split("\n")
    header = lines[0].split() if lines else []
    if len(header) != 2:
        raise ParseError("line 1: expected header 'n q'")
    try:
        n, q = int(header[0]), int(header[1])
    except ValueError:
        raise ParseError(f"line 1: header '{lines[0].strip()}' is not two integers")
    if n < 1 or q < 1:
        raise ParseError(f"line 1: n and q must be positive, got {n} {q}")
    if n > MAX_STATES:
        raise CapacityError(f"{n} states exceed the limit of {MAX_STATES}")
    if q > MAX_LETTERS:
        raise CapacityError(f"{q} letters exceed the limit of {MAX_LETTERS}")

    rows = []
    for a in range(q):
        lineno = a + 2
        if a + 1 >= len(lines):
            raise ParseError(f"expected {q} transition lines, found {a}")
        fields = lines[a + 1].split()
        if len(fields) != n:
            raise ParseError(f"line {lineno}: expected {n} entries, found {len(fields)}")
        row = []
        for field in fields:
            try:
                t = int(field)
            except ValueError:
                raise ParseError(f"line {lineno}: '{field}' is not an integer")
            if not 0 <= t < n:
                raise ParseError(f"line {lineno}: entry {t} is not a state in [0, {n})")
            row.append(t)
        rows.append(tuple(row))

    for offset, line in enumerate(lines[q + 1:], start=q + 2):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            raise ParseError(f"line {offset}: unexpected content after the transition table")
    return Dfa(tuple(rows))


def serialize(d: Dfa, comments: Sequence[str] = ()) -> str:
    """Render d in the text format, with optional trailing comment lines."""
    lines = [f"{d.n} {d.q}"]
    lines += [" ".join(str(t) for t in row) for row in d.table]
    lines += [f"# {comment}" for comment in comments]
    return "\n".join(lines) + "\n"


def load_dfa(path: Path) -> Dfa:
    """Read and parse a DFA file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")
    try:
        return parse(text)
    except ParseError as e:
        raise ParseError(f"{path}: {e}")
