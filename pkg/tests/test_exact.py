"""
Unit tests for the exact shortest reset word search and its brute-force oracle.
"""

from itertools import product

import pytest
from hypothesis import given

from syncword.dfa import SUBSET_CAP, Dfa, cerny, format_word
from syncword.errors import CapacityError, UsageError
from syncword.exact import minimal_sync_length_bruteforce, minimal_sync_word, search_images
from syncword.reachability import is_synchronizing
from syncword.semigroup import semigroup_closure
from tests.strategies import dfas, tiny_dfas


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 17])
def test_cerny_exact_length(n):
    result = minimal_sync_word(cerny(n))
    assert result.length == (n - 1) ** 2
    assert cerny(n).resets(result.word)


def test_cerny3_word(c3):
    result = minimal_sync_word(c3)
    assert format_word(result.word) == "baab"
    assert result.visited_count >= 5


def test_permutation_automaton(rotation):
    result = minimal_sync_word(rotation)
    assert result.word is None
    assert result.length is None
    assert result.visited_count == 1


def test_single_state():
    assert minimal_sync_word(Dfa(((0,),))) == ((), 1)


def test_capacity():
    d = Dfa((tuple((s + 1) % (SUBSET_CAP + 1) for s in range(SUBSET_CAP + 1)),))
    with pytest.raises(CapacityError):
        minimal_sync_word(d)


def test_bruteforce(c3, rotation):
    assert minimal_sync_length_bruteforce(c3, 4) == 4
    assert minimal_sync_length_bruteforce(c3, 3) is None
    assert minimal_sync_length_bruteforce(Dfa(((0,),)), 5) == 0
    assert minimal_sync_length_bruteforce(rotation, 6) is None


def test_oracles_agree_on_tiny_automata():
    for d in tiny_dfas():
        exact = minimal_sync_word(d).length
        assert exact == minimal_sync_length_bruteforce(d, 4)
        synchronizing = is_synchronizing(d)
        assert synchronizing == (exact is not None)
        assert synchronizing == semigroup_closure(d).contains_constant()


@given(dfas(max_states=5, max_letters=2))
def test_exact_matches_bruteforce_on_random_automata(d):
    result = minimal_sync_word(d)
    assert (result.word is not None) == is_synchronizing(d)
    if result.word is not None and result.length <= 10:
        assert minimal_sync_length_bruteforce(d, result.length) == result.length
        assert d.resets(result.word)


def test_layers_are_shortest(c3):
    search = search_images(c3)
    assert sum(search.layers) == search.visited_count
    shortest = {}
    for length in range(5):
        for word in product(range(2), repeat=length):
            shortest.setdefault(c3.image_mask_word(c3.full_mask, word), length)
    for mask in search.visited:
        assert len(search.word_to(mask)) == shortest[mask]
        assert c3.image_mask_word(c3.full_mask, search.word_to(mask)) == mask


def test_word_to_unknown_set(c3):
    with pytest.raises(UsageError):
        search_images(c3).word_to(0)
