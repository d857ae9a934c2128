import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cflsep.nfa import (
    Nfa,
    accepts,
    complement,
    difference,
    eliminate_epsilon,
    enumerate_accepted,
    equivalent,
    intersect,
    is_empty,
    shortest_witness,
    to_dot,
    trim,
    union,
    word_automaton,
)
from cflsep.oracles import cat, lit, regex_to_nfa, star

from support import hand_nfa, random_nfa, words_upto

SIGMA_STAR = hand_nfa(1, ("a", "b"), {(0, "a", 0), (0, "b", 0)}, 0, {0})

# a* b*
A_STAR_B_STAR = hand_nfa(
    2, ("a", "b"), {(0, "a", 0), (0, "b", 1), (1, "b", 1)}, 0, {0, 1}
)

# (a*(ab)*)*: the star-generalization language of the running example
GEN_AAB = regex_to_nfa(star(cat(star(lit("a")), star(cat(lit("a"), lit("b"))))))

# bb* | aa*bbb*  (b at least once, or a's then two or more b's)
BPLUS_OR_AB2 = hand_nfa(
    5,
    ("a", "b"),
    {
        (0, "b", 1),
        (1, "b", 1),
        (0, "a", 2),
        (2, "a", 2),
        (2, "b", 3),
        (3, "b", 4),
        (4, "b", 4),
    },
    0,
    {1, 4},
)


def test_word_automaton_chain():
    a = word_automaton(("a", "a", "b"))
    assert a.num_states == 4
    assert a.transitions == frozenset({(0, "a", 1), (1, "a", 2), (2, "b", 3)})
    assert a.accepting == frozenset({3})
    assert accepts(a, ("a", "a", "b"))
    assert not accepts(a, ("a", "b"))


def test_word_automaton_empty_word():
    a = word_automaton(())
    assert a.num_states == 1
    assert a.transitions == frozenset()
    assert accepts(a, ())


def test_word_automaton_transition_count():
    for w in [("a",), ("a", "b", "a", "b"), ("x", "y")]:
        assert len(word_automaton(w).transitions) == len(w)


def test_intersect_with_sigma_star_is_identity():
    a = word_automaton(("a", "b"))
    assert equivalent(intersect(SIGMA_STAR, a), a)


def test_intersect_a_star_b_star():
    a_star = hand_nfa(1, ("a",), {(0, "a", 0)}, 0, {0})
    b_star = hand_nfa(1, ("b",), {(0, "b", 0)}, 0, {0})
    product = intersect(a_star, b_star)
    assert enumerate_accepted(product, 3) == frozenset({()})


def test_intersect_refinement_example():
    # a*b* minus the generalization: via intersection with its complement
    got = intersect(A_STAR_B_STAR, complement(GEN_AAB, ("a", "b")))
    assert equivalent(got, BPLUS_OR_AB2)


def test_complement_of_sigma_star_is_empty():
    assert is_empty(complement(SIGMA_STAR))


def test_complement_of_generalization():
    comp = complement(GEN_AAB, ("a", "b"))
    assert not accepts(comp, ("a", "a", "b"))
    assert accepts(comp, ("b",))


def test_complement_involution_bounded():
    rng = random.Random(13)
    for _ in range(30):
        a = random_nfa(rng)
        back = complement(complement(a, ("a", "b")), ("a", "b"))
        assert equivalent(a, back)


def test_difference_example_languages():
    got = difference(A_STAR_B_STAR, GEN_AAB)
    assert equivalent(got, BPLUS_OR_AB2)


def test_difference_with_self_is_empty():
    rng = random.Random(5)
    for _ in range(20):
        a = random_nfa(rng)
        assert is_empty(difference(a, a))


def test_difference_sigma_star_minus_epsilon():
    eps_only = word_automaton(())
    rest = difference(SIGMA_STAR, eps_only)
    w = shortest_witness(rest)
    assert w == ("a",)
    assert not accepts(rest, ())


def test_shortest_witness_of_sigma_star_product():
    assert shortest_witness(intersect(SIGMA_STAR, SIGMA_STAR)) == ()


def test_shortest_witness_empty_language():
    dead = hand_nfa(1, ("a",), set(), 0, set())
    assert shortest_witness(dead) is None


def test_shortest_witness_prefers_alphabet_order():
    # both length-1 words accepted; declared order a < b picks "a"
    both = hand_nfa(2, ("a", "b"), {(0, "a", 1), (0, "b", 1)}, 0, {1})
    assert shortest_witness(both) == ("a",)
    flipped = hand_nfa(2, ("b", "a"), {(0, "a", 1), (0, "b", 1)}, 0, {1})
    assert shortest_witness(flipped) == ("b",)


def test_shortest_witness_minimality():
    rng = random.Random(99)
    for _ in range(60):
        a = random_nfa(rng)
        w = shortest_witness(a)
        accepted = enumerate_accepted(a, 6)
        if w is None:
            assert accepted == frozenset()
        elif len(w) <= 6:
            assert w in accepted
            assert all(len(v) >= len(w) for v in accepted)
            same_length = sorted(v for v in accepted if len(v) == len(w))
            assert w == same_length[0]  # ("a","b") order is lexicographic


def test_is_empty():
    assert not is_empty(word_automaton(("a", "a", "b")))
    assert is_empty(hand_nfa(2, ("a",), {(1, "a", 1)}, 0, {1}))


def test_equivalent_basic():
    a_star = hand_nfa(1, ("a",), {(0, "a", 0)}, 0, {0})
    a_star_a = hand_nfa(2, ("a",), {(0, "a", 0), (0, "a", 1)}, 0, {1})
    assert equivalent(a_star, a_star)
    assert not equivalent(a_star, a_star_a)  # epsilon distinguishes


def test_equivalent_reflexive_symmetric():
    rng = random.Random(3)
    for _ in range(20):
        a, b = random_nfa(rng), random_nfa(rng)
        assert equivalent(a, a)
        assert equivalent(a, b) == equivalent(b, a)


def test_union_language():
    a = word_automaton(("a",))
    b = word_automaton(("b", "b"))
    u = union(a, b)
    assert enumerate_accepted(u, 3) == frozenset({("a",), ("b", "b")})


def test_trim_preserves_language():
    rng = random.Random(21)
    for _ in range(30):
        a = random_nfa(rng)
        assert enumerate_accepted(trim(a), 5) == enumerate_accepted(a, 5)


def test_eliminate_epsilon_preserves_language():
    rng = random.Random(22)
    for _ in range(30):
        a = random_nfa(rng)
        b = eliminate_epsilon(a)
        assert not b.has_epsilon()
        assert enumerate_accepted(b, 5) == enumerate_accepted(a, 5)


def test_to_dot_shape():
    dot = to_dot(word_automaton(("a",)))
    assert "doublecircle" in dot
    assert 'q0 -> q1 [label="a"]' in dot
    assert dot.startswith("digraph")


def test_nfa_validation():
    with pytest.raises(ValueError):
        Nfa(1, ("a",), frozenset({(0, "b", 0)}), 0, frozenset())
    with pytest.raises(ValueError):
        Nfa(1, ("a",), frozenset(), 2, frozenset())


@st.composite
def nfa_pairs(draw):
    seed = draw(st.integers(min_value=0, max_value=10**9))
    rng = random.Random(seed)
    return random_nfa(rng), random_nfa(rng)


@given(nfa_pairs())
@settings(max_examples=60, deadline=None)
def test_boolean_structure(pair):
    a, b = pair
    inter = intersect(a, b)
    comp = complement(a, ("a", "b"))
    for w in words_upto(("a", "b"), 6):
        in_a, in_b = accepts(a, w), accepts(b, w)
        assert accepts(inter, w) == (in_a and in_b)
        assert accepts(comp, w) == (not in_a)
