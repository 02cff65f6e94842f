"""
Hypothesis strategies for automata, words and mappings, plus exhaustive
iteration over tiny automata.
"""

from itertools import product

from hypothesis import strategies as st

from syncword.dfa import Dfa, Mapping
from syncword.reachability import is_synchronizing


@st.composite
def dfas(draw, min_states=1, max_states=6, min_letters=1, max_letters=3):
    n = draw(st.integers(min_states, max_states))
    q = draw(st.integers(min_letters, max_letters))
    row = st.lists(st.integers(0, n - 1), min_size=n, max_size=n).map(tuple)
    return Dfa(tuple(draw(st.lists(row, min_size=q, max_size=q))))


def synchronizing_dfas(max_states=8, max_letters=3):
    return dfas(min_states=1, max_states=max_states, min_letters=2, max_letters=max_letters).filter(is_synchronizing)


@st.composite
def dfas_with_word(draw, max_states=6, max_letters=3, max_length=12):
    d = draw(dfas(max_states=max_states, max_letters=max_letters))
    word = draw(st.lists(st.integers(0, d.q - 1), max_size=max_length).map(tuple))
    return d, word


@st.composite
def mappings(draw, max_states=10):
    n = draw(st.integers(1, max_states))
    return Mapping.of(draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n)))


def all_dfas(n, q):
    """Every complete automaton with n states and q letters."""
    letter_rows = list(product(range(n), repeat=n))
    for rows in product(letter_rows, repeat=q):
        yield Dfa(rows)


def tiny_dfas():
    """All automata with n <= 3 states and q <= 2 letters."""
    for n in range(1, 4):
        for q in range(1, 3):
            yield from all_dfas(n, q)
