"""
Exact shortest synchronizing words.

Breadth-first search over the image sets reachable from the full state set.
Words reaching the same set are identified, so each set is expanded once and
the first singleton found closes a word of minimal length.
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, NamedTuple, Optional, Tuple

from syncword.dfa import SUBSET_CAP, Dfa, Word
from syncword.errors import CapacityError, UsageError

logger = logging.getLogger(__name__)


class ExactResult(NamedTuple):
    word: Optional[Word]
    visited_count: int

    @property
    def length(self) -> Optional[int]:
        return None if self.word is None else len(self.word)


@dataclass
class ImageSearch:
    """
    visited maps each image set (as a mask) to its predecessor set and the
    letter leading from it; the full set has no predecessor. layers[L] is
    the number of sets first reached by words of length L.
    """

    dfa: Dfa
    visited: Dict[int, Optional[Tuple[int, int]]] = field(default_factory=dict)
    layers: List[int] = field(default_factory=list)
    singleton: Optional[int] = None

    @property
    def visited_count(self) -> int:
        return len(self.visited)

    def word_to(self, mask: int) -> Word:
        if mask not in self.visited:
            raise UsageError(f"image set {mask:#x} was not reached by the search")
        word = []
        step = self.visited[mask]
        while step is not None:
            mask, a = step
            word.append(a)
            step = self.visited[mask]
        return tuple(reversed(word))

    def run(self) -> "ImageSearch":
        d = self.dfa
        start = d.full_mask
        self.visited[start] = None
        self.layers.append(1)
        if start & (start - 1) == 0:
            self.singleton = start
            return self

        visited = self.visited
        image_mask = d.image_mask
        letters = range(d.q)
        frontier = [start]
        while frontier:
            following = []
            for mask in frontier:
                for a in letters:
                    image = image_mask(mask, a)
                    if image in visited:
                        continue
                    visited[image] = (mask, a)
                    following.append(image)
                    if image & (image - 1) == 0:
                        self.layers.append(len(following))
                        self.singleton = image
                        return self
            if following:
                self.layers.append(len(following))
            frontier = following
        return self


def search_images(d: Dfa) -> ImageSearch:
    if d.n > SUBSET_CAP:
        raise CapacityError(f"exact search is limited to {SUBSET_CAP} states, got {d.n}")
    search = ImageSearch(d).run()
    logger.info(f"exact search: {search.visited_count} image sets over {len(search.layers)} layers")
    return search


def minimal_sync_word(d: Dfa) -> ExactResult:
    """Shortest reset word and the number of image sets visited; word is None if d does not synchronize."""
    search = search_images(d)
    if search.singleton is None:
        return ExactResult(None, search.visited_count)
    return ExactResult(search.word_to(search.singleton), search.visited_count)


def minimal_sync_length_bruteforce(d: Dfa, max_len: int) -> Optional[int]:
    """Try every word in lexicographic order, shortest first, up to max_len letters."""
    full = d.full_mask
    for length in range(max_len + 1):
        for word in product(range(d.q), repeat=length):
            if d.image_mask_word(full, word).bit_count() == 1:
                return length
    return None
