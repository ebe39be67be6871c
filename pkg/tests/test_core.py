import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diamondlab.core import (
    Tournament,
    TournamentError,
    degree_profile,
    gram_square,
    m_from_gamma,
    num_pairs,
    pair_list,
    random_tournament,
    seidel,
    transitive,
    validate_seidel,
)


@st.composite
def tournaments(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.lists(st.integers(0, 1), min_size=num_pairs(n), max_size=num_pairs(n)))
    return Tournament.from_bits(n, bits)


def test_pair_order():
    assert pair_list(4) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def test_from_bits_orientation():
    T = Tournament.from_bits(3, "101")
    assert T.beats(0, 1) and T.beats(2, 0) and T.beats(1, 2)
    assert T.bits() == "101"


def test_transitive():
    T = transitive(5)
    assert T.out_degrees == (4, 3, 2, 1, 0)


@pytest.mark.parametrize("bits", ["10", "1012", "abc"])
def test_from_bits_rejects(bits):
    with pytest.raises(TournamentError):
        Tournament.from_bits(3, bits)


def test_order_limits():
    with pytest.raises(TournamentError):
        Tournament.from_bits(0, "")
    with pytest.raises(TournamentError):
        transitive(65)
    assert transitive(64).n == 64


def test_invalid_masks():
    with pytest.raises(TournamentError):
        Tournament(2, (0b10, 0b01))  # both arcs
    with pytest.raises(TournamentError):
        Tournament(2, (0, 0))  # no arc
    with pytest.raises(TournamentError):
        Tournament(2, (0b01, 0b01))  # loop


@given(tournaments())
def test_encodings_round_trip(T):
    assert Tournament.from_bits(T.n, T.bits()) == T
    assert Tournament.from_index(T.n, T.index()) == T
    assert Tournament.from_arcs(T.n, T.arcs()) == T
    assert Tournament.from_adjacency(T.adjacency) == T
    assert Tournament.from_seidel(seidel(T)) == T


@given(tournaments())
def test_seidel_structure(T):
    S = seidel(T)
    validate_seidel(S)
    assert np.array_equal(S, -S.T)
    M = gram_square(S)
    assert np.all(np.diag(M) == 1 - T.n)
    assert sum(T.out_degrees) == num_pairs(T.n)


@given(tournaments(min_n=2))
def test_gram_entries_from_two_paths(T):
    M = gram_square(seidel(T))
    prof = degree_profile(T)
    for i, j in pair_list(T.n):
        assert M[i, j] == m_from_gamma(i, j, int(prof.gamma[i, j]), T.n)


def test_degree_profile_counts():
    T = Tournament.from_bits(4, "111011")  # 0 beats all; 2->1, 1->3, 2->3
    p = degree_profile(T)
    assert tuple(p.out_degrees) == T.out_degrees
    assert tuple(p.in_degrees) == tuple(3 - d for d in T.out_degrees)
    for i in range(4):
        for j in range(4):
            if i != j:
                both = T.out_neighbours(i) & T.out_neighbours(j)
                assert p.pair_out[i, j] == len(both)
                assert p.pair_in[i, j] == len(T.in_neighbours(i) & T.in_neighbours(j))


def test_m_from_gamma_errors():
    with pytest.raises(ValueError):
        m_from_gamma(1, 1, 0, 5)
    with pytest.raises(ValueError):
        m_from_gamma(0, 1, 4, 5)
    assert m_from_gamma(0, 1, 3, 5) == 3


def test_validate_seidel_rejects():
    with pytest.raises(TournamentError):
        validate_seidel(np.array([[0, 1], [1, 0]]))
    with pytest.raises(TournamentError):
        validate_seidel(np.array([[1, 1], [-1, 0]]))
    with pytest.raises(TournamentError):
        validate_seidel(np.array([[0, 2], [-2, 0]]))


def test_arrays_are_read_only():
    S = seidel(transitive(3))
    with pytest.raises(ValueError):
        S[0, 1] = 5


def test_induced_and_relabel():
    T = random_tournament(7, np.random.default_rng(1))
    sub = T.induced([4, 2, 6])
    assert sub.beats(0, 1) == T.beats(4, 2)
    assert sub.beats(2, 1) == T.beats(6, 2)
    perm = [3, 0, 6, 1, 5, 2, 4]
    R = T.relabel(perm)
    for u, v in T.arcs():
        assert R.beats(perm[u], perm[v])
    with pytest.raises(TournamentError):
        T.induced([1, 1])
    with pytest.raises(TournamentError):
        T.relabel([0] * 7)


def test_random_is_seeded():
    a = random_tournament(9, np.random.default_rng(5))
    b = random_tournament(9, np.random.default_rng(5))
    assert a == b
