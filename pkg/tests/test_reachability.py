"""
Unit tests for strongly connected components, sink detection and the
synchronizability decision.
"""

import pytest
from hypothesis import given

from syncword.dfa import Dfa, cerny
from syncword.errors import DomainError
from syncword.exact import minimal_sync_word
from syncword.reachability import (
    DIAGONAL,
    is_strongly_connected,
    is_synchronizing,
    pair_graph,
    scc,
    shortest_path,
    word_into_sink_scc,
)
from tests.strategies import dfas, tiny_dfas

# State 1 flows into the absorbing state 0 under both letters.
ABSORBING = Dfa.from_delta([[0, 0], [0, 0]])
# Two fixed states: two sink components.
TWO_SINKS = Dfa(((0, 1), (0, 1)))


def test_scc_of_cerny(c4):
    decomposition = scc(c4)
    assert decomposition.is_strongly_connected()
    assert decomposition.sink_components == (frozenset(range(4)),)


def test_scc_with_absorbing_state():
    decomposition = scc(ABSORBING)
    assert len(decomposition.components) == 2
    assert decomposition.sink_components == (frozenset({0}),)
    assert decomposition.component_of[0] != decomposition.component_of[1]
    assert (decomposition.component_of[1], decomposition.component_of[0]) in decomposition.edges


def test_two_sinks_do_not_synchronize():
    assert len(scc(TWO_SINKS).sink_components) == 2
    assert not is_synchronizing(TWO_SINKS)


def test_is_synchronizing(c3, rotation):
    assert is_synchronizing(c3)
    assert is_synchronizing(ABSORBING)
    assert not is_synchronizing(rotation)
    assert is_synchronizing(Dfa(((0,),)))


def test_synchronizing_matches_exact_search_on_tiny_automata():
    for d in tiny_dfas():
        assert is_synchronizing(d) == (minimal_sync_word(d).word is not None)


@given(dfas(max_states=8))
def test_bitmask_connectivity_matches_components(d):
    assert is_strongly_connected(d.table) == scc(d).is_strongly_connected()


def test_pair_graph(c3):
    graph = pair_graph(c3, range(3))
    assert graph.number_of_nodes() == 4
    assert graph.has_edge((0, 1), DIAGONAL)
    assert graph.has_edge((1, 2), (0, 2))


def test_shortest_path(c3):
    assert shortest_path(c3, 1, 1 << 0) == (0, 0)
    assert shortest_path(c3, 2, 1 << 2) == ()
    assert shortest_path(ABSORBING, 0, 1 << 1) is None


def test_word_into_sink_scc():
    word = word_into_sink_scc(ABSORBING)
    assert word == (0,)
    assert ABSORBING.image_mask_word(ABSORBING.full_mask, word) == 1


def test_word_into_sink_scc_of_strongly_connected_automaton(c3):
    assert word_into_sink_scc(c3) == ()


def test_word_into_sink_scc_needs_one_sink():
    with pytest.raises(DomainError):
        word_into_sink_scc(TWO_SINKS)


@given(dfas(max_states=7))
def test_word_into_sink_scc_lands_in_the_sink(d):
    sinks = scc(d).sink_components
    if len(sinks) != 1:
        return
    mask = sum(1 << s for s in sinks[0])
    image = d.image_mask_word(d.full_mask, word_into_sink_scc(d))
    assert image & ~mask == 0


def test_cerny_family_is_synchronizing():
    assert all(is_synchronizing(cerny(n)) for n in range(2, 12))
