from fractions import Fraction

import pytest

from sumbox.capacity import (beta_star, capacity_fullent, capacity_lp,
                             capacity_symmetric, capacity_unent, dsc_gain,
                             feasible, maximal_dsc_gain)
from sumbox.model import (Problem, ProblemError, beta_cliques, full_clique,
                          symmetric_problem)
from sumbox.scheme import reference_problem


def F(a, b=1):
    return Fraction(a, b)


def test_reference_fullent():
    res = capacity_fullent(reference_problem())
    assert res.capacity == F(4, 5)
    assert res.optimal_cost == F(5, 4)
    assert res.witness == (F(1, 4), F(1, 4), F(1, 4), F(1, 2))


def test_reference_lp_matches_fullent():
    P = reference_problem()
    assert capacity_lp(P).capacity == F(4, 5)


def test_reference_unent():
    assert capacity_unent(reference_problem()).capacity == F(2, 5)


def test_reference_two_cliques():
    P = reference_problem().with_cliques((frozenset({1, 2}), frozenset({2, 3, 4})))
    assert capacity_lp(P).capacity == F(2, 3)


def test_witness_is_feasible():
    for cliques in (full_clique(4), beta_cliques(4, 2),
                    (frozenset({1}), frozenset({2, 3, 4}))):
        P = reference_problem().with_cliques(cliques)
        res = capacity_lp(P)
        assert feasible(P, res.witness)
        assert res.capacity * res.optimal_cost == 1


def test_feasible_rejects_negative_and_short():
    P = reference_problem()
    assert not feasible(P, (F(-1), F(1), F(1), F(1)))
    with pytest.raises(ValueError):
        feasible(P, (F(1),))


def test_capacity_single_stream_single_server():
    P = Problem(1, (frozenset({1}),), full_clique(1))
    res = capacity_lp(P)
    assert res.capacity == 1
    assert res.optimal_cost == 1


def test_uncovered_stream_raises():
    P = Problem(2, (frozenset({2}),), (frozenset({1}),))
    with pytest.raises(ProblemError):
        capacity_lp(P)


def test_dsc_gain_reference():
    P = reference_problem()
    assert dsc_gain(P) == F(4, 5) / F(2, 5)
    assert maximal_dsc_gain(P) == 2


def test_maximal_gain_when_unent_is_already_one():
    # single stream on a single server: unentangled capacity is already 1,
    # so entanglement buys nothing: gain = min(2, 1/1) = 1
    P = Problem(1, (frozenset({1}),), full_clique(1))
    assert maximal_dsc_gain(P) == 1


def test_maximal_gain_two_for_disjoint_streams():
    P = Problem(2, (frozenset({1}), frozenset({2})), full_clique(2))
    assert maximal_dsc_gain(P) == 2


def test_symmetric_closed_form_known_cells():
    assert capacity_symmetric(8, 2, 2) == F(13, 28)
    assert capacity_symmetric(8, 4, 4) == F(61, 70)
    assert capacity_symmetric(8, 1, 1) == F(1, 8)
    assert capacity_symmetric(8, 5, 4) == F(27, 28)


def test_symmetric_matches_lp_small():
    for S in range(1, 5):
        for alpha in range(1, S + 1):
            for beta in range(1, S + 1):
                lp = capacity_lp(symmetric_problem(S, alpha, beta)).capacity
                assert lp == capacity_symmetric(S, alpha, beta), (S, alpha, beta)


def test_beta_star_formula():
    assert beta_star(5, 1) == 2
    assert beta_star(5, 2) == 4
    assert beta_star(5, 3) == 4
    assert beta_star(5, 4) == 2
    assert beta_star(5, 5) == 1


def test_beta_star_definitional_small():
    for S in range(1, 7):
        for alpha in range(1, S + 1):
            full = capacity_symmetric(S, alpha, S)
            scanned = next(b for b in range(1, S + 1)
                           if capacity_symmetric(S, alpha, b) == full)
            assert scanned == beta_star(S, alpha), (S, alpha)


def test_monotone_in_beta():
    for alpha in range(1, 7):
        vals = [capacity_symmetric(6, alpha, b) for b in range(1, 7)]
        assert vals == sorted(vals)
