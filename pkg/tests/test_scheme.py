import random
from fractions import Fraction

import numpy as np
import pytest

from sumbox.capacity import capacity_lp
from sumbox.field import field_construct
from sumbox.matrix import Mat
from sumbox.model import Problem, full_clique, symmetric_problem
from sumbox.nsumbox import is_half_mds, is_valid_box
from sumbox.scheme import (Allocation, SchemeError, allocation_from_lp,
                           build_scheme, worked_reference_scheme, parse_scheme,
                           rate_of_allocation, reference_problem,
                           render_scheme, simulate, simulate_batch, true_sum)


def random_data(sch, rng):
    q = sch.ext.big.order
    return [Mat(sch.ext.big, [[rng.randrange(q)] for _ in range(sch.R)])
            for _ in range(sch.problem.K)]


def test_allocation_from_lp_reference():
    P = reference_problem()
    res = capacity_lp(P)
    a = allocation_from_lp(P, res.witness)
    # witness (1/4, 1/4, 1/4, 1/2) scaled by lcm 4 -> (1, 1, 1, 2)
    assert tuple(n for _, _, n in a.entries) == (1, 1, 1, 2)
    assert rate_of_allocation(P, a) == res.capacity


def test_allocation_validation():
    P = reference_problem()
    bad = Allocation(((0, 1, 1),))  # wrong arity for this problem
    with pytest.raises(SchemeError):
        rate_of_allocation(P, bad)


def test_worked_reference_scheme_properties():
    sch = worked_reference_scheme()
    assert sch.rate == Fraction(4, 5)
    assert sch.certificate_ok()
    for _, box in sch.channel.boxes:
        assert is_valid_box(box.M)


def test_reference_scheme_simulation():
    sch = worked_reference_scheme()
    rng = random.Random(123)
    for _ in range(200):
        data = random_data(sch, rng)
        assert simulate(sch, data) == true_sum(sch, data)


def test_reference_determinants_over_f3():
    # the decoder times each stream's column bundle has determinant
    # alternating +1/-1 in stream order (1, 2, 1, 2 over F_3)
    f3 = field_construct(3)
    sch = worked_reference_scheme(f3)
    dets = []
    for k in range(sch.problem.K):
        m = sch.decoder * sch.channel.mbar[k]
        dets.append(m.det())
    assert dets == [1, 2, 1, 2]


def test_build_scheme_reference_rate():
    P = reference_problem()
    sch = build_scheme(P)
    assert sch.rate == capacity_lp(P).capacity
    assert sch.certificate_ok()
    for _, box in sch.channel.boxes:
        assert is_valid_box(box.M)
        ok, _ = is_half_mds(box.M)
        assert ok


def test_build_scheme_simulates_correctly():
    sch = build_scheme(reference_problem())
    rng = random.Random(77)
    for _ in range(100):
        data = random_data(sch, rng)
        assert simulate(sch, data) == true_sum(sch, data)


def test_build_scheme_symmetric_instance():
    P = symmetric_problem(3, 2, 2)
    sch = build_scheme(P)
    assert sch.rate == capacity_lp(P).capacity
    rng = random.Random(5)
    for _ in range(50):
        data = random_data(sch, rng)
        assert simulate(sch, data) == true_sum(sch, data)


def test_build_scheme_single_stream():
    P = Problem(1, (frozenset({1}),), full_clique(1))
    sch = build_scheme(P)
    assert sch.rate == 1
    rng = random.Random(1)
    data = random_data(sch, rng)
    assert simulate(sch, data) == true_sum(sch, data)


def test_build_scheme_disjoint_data_rate_one():
    P = Problem(2, (frozenset({1}), frozenset({2})), full_clique(2))
    sch = build_scheme(P, d_field=field_construct(3))
    assert sch.rate == 1
    assert len(sch.channel.boxes) == 1


def test_build_scheme_symmetric_4_1_2():
    P = symmetric_problem(4, 1, 2)
    sch = build_scheme(P)
    assert sch.rate == Fraction(1, 2)


def test_build_scheme_odd_characteristic():
    P = reference_problem()
    sch = build_scheme(P, d_field=field_construct(3))
    assert sch.rate == Fraction(4, 5)
    rng = random.Random(9)
    for _ in range(50):
        data = random_data(sch, rng)
        assert simulate(sch, data) == true_sum(sch, data)


def test_simulate_batch_matches_simulate():
    sch = build_scheme(reference_problem())
    q = sch.ext.big.order
    rng = random.Random(31)
    B = 40
    data = np.array([[[rng.randrange(q) for _ in range(B)]
                      for _ in range(sch.R)] for _ in range(sch.problem.K)],
                    dtype=np.int64)
    out = simulate_batch(sch, data)
    for b in range(B):
        cols = [Mat(sch.ext.big, [[int(data[k, i, b])] for i in range(sch.R)])
                for k in range(sch.problem.K)]
        assert [row[0] for row in simulate(sch, cols).data] == out[:, b].tolist()


def test_two_sum_reduction_fixture():
    # pairwise entanglement map from the tabled example: four 2-sum boxes,
    # 6 decoded sums per 8 downloaded qudits, rate 3/4
    P = reference_problem().with_cliques(
        (frozenset({1, 2}), frozenset({1, 4}), frozenset({2, 4}), frozenset({3, 4})))
    res = capacity_lp(P)
    assert res.capacity == Fraction(3, 4)
    a = allocation_from_lp(P, res.witness)
    assert a.total == 8
    sch = build_scheme(P, allocation=a)
    assert sch.R == 6
    assert all(box.N == 2 for _, box in sch.channel.boxes)
    assert sch.rate == Fraction(3, 4)
    rng = random.Random(64)
    for _ in range(50):
        data = random_data(sch, rng)
        assert simulate(sch, data) == true_sum(sch, data)


def test_scheme_serialization_roundtrip():
    for sch in (worked_reference_scheme(), build_scheme(reference_problem())):
        text = render_scheme(sch)
        again = parse_scheme(text)
        assert again.problem == sch.problem
        assert again.R == sch.R
        assert again.decoder == sch.decoder
        assert again.precoders == sch.precoders
        assert again.certificate_ok()
        assert render_scheme(again) == text


def test_seed_determinism():
    a = build_scheme(reference_problem(), seed=4)
    b = build_scheme(reference_problem(), seed=4)
    assert render_scheme(a) == render_scheme(b)
