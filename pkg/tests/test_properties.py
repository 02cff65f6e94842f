"""
Randomized checks of the structural facts the greedy algorithms rely on:
pair-automaton simulation, orbits of powers, fixed points of stable powers
and collision cycles.
"""

from hypothesis import given
from hypothesis import strategies as st

from syncword.pairs import (
    build_pair_table,
    collision_cycle_word,
    orbit_profile,
    orbits,
    resets_pair_automaton,
    stable_power_exponent,
)
from syncword.reachability import is_synchronizing
from tests.strategies import dfas, dfas_with_word, mappings


@given(dfas_with_word())
def test_reset_words_coincide_on_the_pair_automaton(case):
    d, word = case
    assert d.resets(word) == resets_pair_automaton(d, word)


@given(dfas(max_states=7))
def test_synchronizing_iff_every_pair_merges(d):
    assert is_synchronizing(d) == build_pair_table(d).is_complete()


@given(mappings(), st.data())
def test_orbit_profile_is_minimal(mapping, data):
    p = data.draw(st.integers(0, len(mapping) - 1))
    k, r = orbit_profile(mapping, p)
    assert r >= 1
    assert mapping.power(k)(p) == mapping.power(k + r)(p)
    for shorter in range(k):
        assert mapping.power(shorter)(p) != mapping.power(shorter + r)(p)
    for period in range(1, r):
        assert mapping.power(k)(p) != mapping.power(k + period)(p)


@given(mappings())
def test_stable_power_is_idempotent(mapping):
    stable = mapping.power(stable_power_exponent(mapping))
    assert stable.then(stable) == stable


@given(mappings())
def test_stable_power_rank_is_the_number_of_cyclic_points(mapping):
    o = orbits(mapping)
    assert mapping.power(o.stable_exponent).rank == o.cyclic_points


@given(mappings())
def test_stable_image_of_a_cycle_free_power_is_the_fixed_points(mapping):
    # When every cycle is a fixed point, s^k = s^(k+1) and the image is exactly those m points.
    o = orbits(mapping)
    if o.period != 1:
        return
    stable = mapping.power(o.max_tail)
    assert stable == stable.then(mapping)
    assert stable.rank == len(mapping.fixed_points())


@given(mappings())
def test_power_merges_at_least_as_many_pairs_as_its_tail(mapping):
    # The points of the longest tail all lie off the cycles.
    o = orbits(mapping)
    stable = mapping.power(o.stable_exponent)
    assert len(mapping) - stable.rank >= o.max_tail


@given(dfas(max_states=7, min_letters=1), st.data())
def test_collision_cycle_word_returns_to_its_state(d, data):
    r = data.draw(st.integers(0, d.n - 1))
    a = data.draw(st.integers(0, d.q - 1))
    word = collision_cycle_word(d, r, a)
    if word is None:
        return
    assert word[0] == a
    assert d.apply_word(r, word) == r
    assert d.rank(word) < d.n
