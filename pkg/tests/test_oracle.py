from fractions import Fraction

import pytest
from hypothesis import given, settings

from cycletrim import (
    TooLarge,
    enumerate_tours,
    is_hamiltonian,
    min_tour,
    min_tour_by_enumeration,
    tour_weight,
)

from helpers import (
    cycle_graph,
    k4_golden,
    make_graph,
    path_graph,
    petersen,
    star_graph,
    theta,
    triangle,
)
from strategies import connected_graphs


def test_is_hamiltonian_basics():
    assert is_hamiltonian(triangle())
    assert is_hamiltonian(theta())
    assert is_hamiltonian(k4_golden())
    assert not is_hamiltonian(path_graph(4))
    assert not is_hamiltonian(star_graph(3))
    assert not is_hamiltonian(petersen())
    assert not is_hamiltonian(make_graph(2, [(0, 1, 1)]))


def test_min_tour_triangle():
    answer = min_tour(triangle(1, 3, 2))
    assert answer.hamiltonian
    assert answer.optimum_weight == 6
    assert answer.optimum_tour == (0, 1, 2)


def test_min_tour_k4():
    answer = min_tour(k4_golden())
    assert answer.optimum_weight == 14
    assert answer.optimum_tour == (0, 2, 1, 3)


def test_min_tour_theta():
    answer = min_tour(theta())
    assert answer.optimum_weight == 4
    assert answer.optimum_tour == (0, 2, 1, 3)


def test_min_tour_non_hamiltonian():
    answer = min_tour(petersen())
    assert not answer.hamiltonian
    assert answer.optimum_weight is None
    assert answer.optimum_tour is None


def test_min_tour_fractional_weights():
    g = make_graph(3, [(0, 1, "0.5"), (0, 2, "1.25"), (1, 2, 2)])
    assert min_tour(g).optimum_weight == Fraction(15, 4)


def test_enumerate_k4():
    tours = enumerate_tours(k4_golden(), 100)
    assert len(tours) == 3
    assert sorted(w for _, w in tours) == [14, 15, 15]


def test_enumerate_theta_unique_tour():
    tours = enumerate_tours(theta(), 100)
    assert len(tours) == 1
    assert tours[0] == ((0, 2, 1, 3), 4)


def test_enumerate_four_cycle():
    assert len(enumerate_tours(cycle_graph(4), 100)) == 1


def test_enumerate_respects_limit():
    assert len(enumerate_tours(k4_golden(), 2)) == 2


def test_size_caps():
    big_ring = cycle_graph(25)
    with pytest.raises(TooLarge):
        min_tour(big_ring)
    with pytest.raises(TooLarge):
        enumerate_tours(cycle_graph(11), 10)


@given(connected_graphs(max_vertices=7))
@settings(max_examples=40)
def test_held_karp_agrees_with_enumeration(g):
    dp = min_tour(g)
    brute = min_tour_by_enumeration(g)
    assert dp.hamiltonian == brute.hamiltonian == is_hamiltonian(g)
    if dp.hamiltonian:
        assert dp.optimum_weight == brute.optimum_weight
        assert dp.optimum_tour is not None
        assert tour_weight(g, dp.optimum_tour) == dp.optimum_weight


@given(connected_graphs(max_vertices=7))
@settings(max_examples=25)
def test_held_karp_never_beats_a_real_tour(g):
    dp = min_tour(g)
    if not dp.hamiltonian:
        return
    for tour, weight in enumerate_tours(g, 500):
        assert dp.optimum_weight <= weight
        assert tour_weight(g, tour) == weight
