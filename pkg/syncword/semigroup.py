"""
Transition semigroup of an automaton: the distinct transformations induced by
nonempty words, found by breadth-first closure under the letters.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from syncword.dfa import Dfa, Mapping, Word
from syncword.errors import UsageError
from syncword.utils import SEMIGROUP_CAP

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SemigroupClosure:
    dfa: Dfa
    elements: Tuple[Mapping, ...]
    witnesses: Tuple[Tuple[int, int], ...]
    complete: bool
    size_cap: int

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def generators(self) -> Tuple[Mapping, ...]:
        return self.dfa.letter_mappings

    def word_of(self, i: int) -> Word:
        """A shortest word inducing elements[i]; parent -1 marks a single letter."""
        if not 0 <= i < self.size:
            raise UsageError(f"element {i} is not in [0, {self.size})")
        word = []
        while i >= 0:
            i, a = self.witnesses[i]
            word.append(a)
        return tuple(reversed(word))

    def constant_index(self) -> Optional[int]:
        for i, mapping in enumerate(self.elements):
            if mapping.is_constant():
                return i
        return None

    def contains_constant(self) -> bool:
        return self.constant_index() is not None

    def constant_word(self) -> Optional[Word]:
        i = self.constant_index()
        return None if i is None else self.word_of(i)


def semigroup_closure(d: Dfa, size_cap: int = SEMIGROUP_CAP) -> SemigroupClosure:
    if size_cap < 1:
        raise UsageError(f"size cap must be positive, got {size_cap}")
    elements: List[Mapping] = []
    witnesses: List[Tuple[int, int]] = []
    index: Dict[bytes, int] = {}
    complete = True

    def add(mapping: Mapping, parent: int, a: int) -> bool:
        if mapping.images in index:
            return True
        if len(elements) >= size_cap:
            return False
        index[mapping.images] = len(elements)
        elements.append(mapping)
        witnesses.append((parent, a))
        return True

    letters = d.letter_mappings
    for a, mapping in enumerate(letters):
        if not add(mapping, -1, a):
            complete = False
            break

    i = 0
    while complete and i < len(elements):
        current = elements[i]
        for a, letter in enumerate(letters):
            if not add(current.then(letter), i, a):
                complete = False
                break
        i += 1

    if complete:
        logger.info(f"semigroup closure: {len(elements)} elements")
    else:
        logger.warning(f"semigroup closure stopped at the cap of {size_cap} elements")
    return SemigroupClosure(d, tuple(elements), tuple(witnesses), complete, size_cap)


def semigroup_size(d: Dfa, size_cap: int = SEMIGROUP_CAP) -> Optional[int]:
    """Size of the transition semigroup, or None when it exceeds size_cap."""
    closure = semigroup_closure(d, size_cap)
    return closure.size if closure.complete else None
