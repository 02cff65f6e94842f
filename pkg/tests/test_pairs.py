"""
Unit tests for the pair table, pair word reconstruction, the pair orders
and power statistics.
"""

from itertools import product

import pytest
from hypothesis import given, settings

from syncword.dfa import Dfa, Mapping, parse_word
from syncword.errors import DomainError, UsageError
from syncword.pairs import (
    MergeStats,
    build_pair_table,
    collision_cycle_word,
    merge_stats,
    orbit_profile,
    orbits,
    order_pairs_by_length,
    order_pairs_second,
    pair_word,
    resets_pair_automaton,
)
from tests.strategies import dfas


def test_cerny3_distances(c3):
    t = build_pair_table(c3)
    assert t.distance(0, 1) == 1
    assert t.first_letter(0, 1) == 1
    assert t.distance(0, 2) == 2
    assert t.distance(2, 1) == 3
    assert t.distance(1, 1) == 0
    assert t.is_complete()


def test_cerny3_merge_states(c3):
    t = build_pair_table(c3)
    assert [t.merge_state(p, q) for p, q in t.pairs()] == [1, 1, 1]
    assert t.merge_state(2, 2) == 2


def test_cerny3_pair_words(c3):
    t = build_pair_table(c3)
    assert pair_word(t, 0, 1) == parse_word("b")
    assert pair_word(t, 0, 2) == parse_word("ab")
    assert pair_word(t, 1, 2) == parse_word("aab")
    assert pair_word(t, 2, 1) == parse_word("aab")
    assert pair_word(t, 2, 2) == ()


def test_order_by_length(c3):
    assert order_pairs_by_length(build_pair_table(c3)) == [(0, 1), (0, 2), (1, 2)]


def test_equal_distances_keep_index_order():
    # Letter a sends every state to 0, so every pair has distance 1.
    d = Dfa(((0, 0, 0, 0),))
    assert order_pairs_by_length(build_pair_table(d)) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def test_permutation_automaton_has_no_pair_words(rotation):
    t = build_pair_table(rotation)
    assert all(t.distance(p, q) is None for p, q in t.pairs())
    assert t.first_letter(0, 1) is None
    assert not t.is_complete()
    assert order_pairs_by_length(t) == []
    with pytest.raises(DomainError):
        pair_word(t, 0, 1)


def test_pair_table_checks_states(c3):
    with pytest.raises(UsageError):
        build_pair_table(c3).distance(0, 3)


@given(dfas(max_states=6))
def test_pair_words_merge_and_decrease_distance(d):
    t = build_pair_table(d)
    for p, q in t.pairs():
        dist = t.distance(p, q)
        if dist is None:
            continue
        word = pair_word(t, p, q)
        assert len(word) == dist >= 1
        assert d.mapping(word).merges(p, q)
        assert d.apply_word(p, word) == t.merge_state(p, q)
        a = word[0]
        assert t.distance(d.table[a][p], d.table[a][q]) == dist - 1


@settings(max_examples=30)
@given(dfas(max_states=4, max_letters=3))
def test_no_shorter_word_merges_a_pair(d):
    t = build_pair_table(d)
    for p, q in t.pairs():
        dist = t.distance(p, q)
        if dist is None or dist > 6:
            continue
        for length in range(dist):
            for word in product(range(d.q), repeat=length):
                assert d.apply_word(p, word) != d.apply_word(q, word)


def test_merge_stats_of_cerny_letter(c3):
    stats = merge_stats(c3, (0, 1), parse_word("b"))
    assert stats == MergeStats(stabilized_rank=2, preimage_count=2, tail=1, period=1)


def test_merge_stats_needs_a_merging_word(c3):
    with pytest.raises(DomainError):
        merge_stats(c3, (0, 1), parse_word("a"))


def test_orbits():
    o = orbits(Mapping.of([1, 2, 3, 1]))
    assert o.tails == (1, 0, 0, 0)
    assert o.cycles == ((1, 2, 3),)
    assert o.period == 3
    assert o.stable_exponent == 3
    assert orbit_profile(Mapping.of([1, 2, 3, 1]), 0) == (1, 3)


def test_stable_exponent_waits_for_the_longest_tail():
    # 0 -> 1 -> 2 -> 3 <-> 4: tail 3, period 2.
    o = orbits(Mapping.of([1, 2, 3, 4, 3]))
    assert o.max_tail == 3
    assert o.stable_exponent == 4


def test_second_order_by_length(c3):
    ranked = order_pairs_second(build_pair_table(c3), "length")
    assert [r.pair for r in ranked] == [(0, 1), (0, 2), (1, 2)]
    assert [r.stats.preimage_count for r in ranked] == [2, 2, 3]


def test_second_order_by_preimage(c3):
    ranked = order_pairs_second(build_pair_table(c3), "preimage")
    assert [r.pair for r in ranked] == [(1, 2), (0, 1), (0, 2)]


def test_second_order_limit_and_strategy(c3):
    t = build_pair_table(c3)
    assert len(order_pairs_second(t, limit=1)) == 1
    with pytest.raises(UsageError):
        order_pairs_second(t, "rank")


def test_collision_cycle_word(c3):
    word = collision_cycle_word(c3, 0, 1)
    assert word == parse_word("baa")
    assert c3.apply_word(0, word) == 0
    assert c3.rank(word) < 3
    assert collision_cycle_word(c3, 0, 0) is None


def test_resets_pair_automaton(c3):
    assert resets_pair_automaton(c3, parse_word("baab"))
    assert not resets_pair_automaton(c3, parse_word("aab"))
