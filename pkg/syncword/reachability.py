"""
Strongly connected components of the transition graph, sink detection and
the synchronizability decision.

A complete automaton is synchronizing iff it has a single sink component and
the pair graph of that component has every pair reaching the diagonal.
"""

import logging
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from syncword.dfa import Dfa, Word, iter_bits
from syncword.errors import DomainError

logger = logging.getLogger(__name__)

# All diagonal pairs (r, r) are collapsed into this node; real pairs have p < q.
DIAGONAL = (0, 0)


@dataclass(frozen=True)
class SccDecomposition:
    component_of: Tuple[int, ...]
    components: Tuple[FrozenSet[int], ...]
    edges: FrozenSet[Tuple[int, int]]
    is_sink: Tuple[bool, ...]

    @property
    def sink_components(self) -> Tuple[FrozenSet[int], ...]:
        return tuple(c for c, sink in zip(self.components, self.is_sink) if sink)

    def is_strongly_connected(self) -> bool:
        return len(self.components) == 1


def transition_graph(d: Dfa) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(d.n))
    graph.add_edges_from((s, t) for row in d.table for s, t in enumerate(row))
    return graph


def scc(d: Dfa) -> SccDecomposition:
    """Tarjan decomposition of the transition graph and its condensation."""
    condensed = nx.condensation(transition_graph(d))
    mapping = condensed.graph["mapping"]
    count = condensed.number_of_nodes()
    return SccDecomposition(
        component_of=tuple(mapping[s] for s in range(d.n)),
        components=tuple(frozenset(condensed.nodes[c]["members"]) for c in range(count)),
        edges=frozenset(condensed.edges()),
        is_sink=tuple(condensed.out_degree(c) == 0 for c in range(count)),
    )


def _closure(adjacency: Sequence[int], seen: int) -> int:
    frontier = seen
    while frontier:
        reached = 0
        for s in iter_bits(frontier):
            reached |= adjacency[s]
        frontier = reached & ~seen
        seen |= reached
    return seen


def is_strongly_connected(rows: Sequence[Sequence[int]]) -> bool:
    """Forward and backward closure of state 0 over raw rows; the cheap first enumeration filter."""
    n = len(rows[0])
    successors = [0] * n
    predecessors = [0] * n
    for row in rows:
        for s, t in enumerate(row):
            successors[s] |= 1 << t
            predecessors[t] |= 1 << s
    full = (1 << n) - 1
    return _closure(successors, 1) == full and _closure(predecessors, 1) == full


def pair_graph(d: Dfa, states: Sequence[int]) -> nx.DiGraph:
    """
    Symmetrized square of d restricted to a closed set of states: nodes are
    pairs (p, q) with p < q plus DIAGONAL, edges follow every letter.
    """
    graph = nx.DiGraph()
    graph.add_node(DIAGONAL)
    for p, q in combinations(sorted(states), 2):
        graph.add_node((p, q))
        for row in d.table:
            x, y = row[p], row[q]
            if x == y:
                target = DIAGONAL
            else:
                target = (x, y) if x < y else (y, x)
            graph.add_edge((p, q), target)
    return graph


def is_synchronizing(d: Dfa) -> bool:
    decomposition = scc(d)
    sinks = decomposition.sink_components
    if len(sinks) > 1:
        logger.info(f"{len(sinks)} sink components, not synchronizing")
        return False
    sink = sinks[0]
    if len(sink) == 1:
        return True
    graph = pair_graph(d, sink)
    marked = nx.ancestors(graph, DIAGONAL)
    return len(marked) == graph.number_of_nodes() - 1


def shortest_path(d: Dfa, source: int, target_mask: int) -> Optional[Word]:
    """Shortest word leading source into target_mask (letters tried in index order), or None."""
    parent = {source: None}
    queue = deque([source])
    while queue:
        s = queue.popleft()
        if target_mask >> s & 1:
            word: List[int] = []
            while parent[s] is not None:
                s, a = parent[s]
                word.append(a)
            return tuple(reversed(word))
        for a, row in enumerate(d.table):
            t = row[s]
            if t not in parent:
                parent[t] = (s, a)
                queue.append(t)
    return None


def word_into_sink_scc(d: Dfa) -> Word:
    """
    A word mapping every state into the unique sink component: repeatedly
    drive the least outside state in by a shortest path. With k outside
    states each step costs at most k letters.
    """
    sinks = scc(d).sink_components
    if len(sinks) != 1:
        raise DomainError(f"{len(sinks)} sink components; no word maps all states into one")
    sink_mask = sum(1 << s for s in sinks[0])
    current = d.full_mask
    word: List[int] = []
    while current & ~sink_mask:
        outside = next(iter_bits(current & ~sink_mask))
        step = shortest_path(d, outside, sink_mask)
        if step is None:
            raise DomainError(f"state {outside} cannot reach the sink component")
        word.extend(step)
        current = d.image_mask_word(current, step)
    return tuple(word)
