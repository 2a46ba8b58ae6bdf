import dataclasses
import random
from fractions import Fraction

import pytest

from sumbox.capacity import capacity_lp
from sumbox.matrix import Mat
from sumbox.model import Problem, full_clique
from sumbox.oracle import (GuardExceeded, OracleReport, check_identities,
                           check_lp_oracle, exhaustive_decode_check,
                           lp_vertex_enum, named_instances,
                           random_small_problem, tap_lines)
from sumbox.scheme import (build_scheme, worked_reference_scheme,
                           reference_problem)


def test_vertex_enum_reference():
    assert lp_vertex_enum(reference_problem()) == Fraction(5, 4)


def test_vertex_enum_single_server():
    P = Problem(1, (frozenset({1}),), full_clique(1))
    assert lp_vertex_enum(P) == 1


def test_vertex_enum_agrees_with_simplex():
    reports = check_lp_oracle(seed=42, cases=25)
    assert all(r.agree for r in reports)


def test_vertex_enum_guard():
    # 6 servers, 4 streams, 3 full cliques: gamma + K*T = 18 + 12 > 14
    W = tuple(frozenset({s}) for s in range(1, 5))
    P = Problem(6, W, full_clique(6) * 3)
    with pytest.raises(GuardExceeded):
        lp_vertex_enum(P)


def test_vertex_enum_sensitive_to_dropped_constraint():
    # dropping the coverage constraint of one stream must lower the optimum
    # (the all-zero point becomes reachable for that stream's cost share)
    P = reference_problem()
    P_dropped = Problem(P.S, P.W[:3], P.E, P.stream_names[:3])
    assert lp_vertex_enum(P_dropped) < lp_vertex_enum(P)


def test_exhaustive_decode_reference():
    rep = exhaustive_decode_check(worked_reference_scheme())
    assert rep.agree
    assert rep.counterexample is None


def test_exhaustive_decode_trivial_scheme():
    P = Problem(1, (frozenset({1}),), full_clique(1))
    rep = exhaustive_decode_check(build_scheme(P))
    assert rep.agree


def test_exhaustive_decode_guard():
    sch = build_scheme(reference_problem())  # q = 128, K*R = 16
    with pytest.raises(GuardExceeded):
        exhaustive_decode_check(sch)


def test_exhaustive_decode_detects_corrupted_decoder():
    sch = worked_reference_scheme()
    f = sch.ext.big
    rows = [list(r) for r in sch.decoder.data]
    rows[0][0] = f.add(rows[0][0], 1)  # flip one decoder entry
    bad = dataclasses.replace(sch, decoder=Mat(f, rows))
    rep = exhaustive_decode_check(bad)
    assert not rep.agree
    assert rep.counterexample is not None


def test_exhaustive_decode_detects_corrupted_precoder():
    sch = worked_reference_scheme()
    f = sch.ext.big
    rows = [list(r) for r in sch.precoders[1].data]
    rows[0][0] = f.add(rows[0][0], 1)
    bad = dataclasses.replace(
        sch, precoders=(sch.precoders[0], Mat(f, rows)) + sch.precoders[2:])
    rep = exhaustive_decode_check(bad)
    assert not rep.agree


def test_named_instances_all_agree():
    assert all(r.agree for r in named_instances())


def test_identity_suite_small():
    reports = check_identities(seed=1, cases=10, max_s=4)
    assert all(r.agree for r in reports)


def test_random_small_problem_within_guard():
    rng = random.Random(0)
    for _ in range(50):
        P = random_small_problem(rng)
        assert P.gamma + P.K * P.T <= 14
        capacity_lp(P)  # coverage holds, LP solvable


def test_tap_rendering():
    reports = [OracleReport("first", 1, 1, True),
               OracleReport("second", 2, 3, False, "w")]
    lines = tap_lines(reports)
    assert lines[0] == "ok 1 - first"
    assert lines[1].startswith("not ok 2 - second")
    assert "witness=w" in lines[1]
