import random
from fractions import Fraction

import pytest

from sumbox.lp import LpInfeasible, LpUnbounded, solve_min


def F(a, b=1):
    return Fraction(a, b)


def test_simple_2d():
    # min x + y s.t. -x - y <= -1 (i.e. x + y >= 1)
    val, x = solve_min([F(1), F(1)], [[F(-1), F(-1)]], [F(-1)])
    assert val == 1
    assert sum(x) == 1


def test_bounded_above():
    # min -x - 2y s.t. x <= 3, y <= 2, x + y <= 4
    val, x = solve_min([F(-1), F(-2)],
                       [[F(1), F(0)], [F(0), F(1)], [F(1), F(1)]],
                       [F(3), F(2), F(4)])
    assert val == -6
    assert x == [F(2), F(2)]


def test_fractional_optimum():
    # min x + y s.t. 2x + y >= 1, x + 3y >= 1
    val, _ = solve_min([F(1), F(1)],
                       [[F(-2), F(-1)], [F(-1), F(-3)]],
                       [F(-1), F(-1)])
    assert val == Fraction(3, 5)


def test_infeasible():
    # x >= 1 and x <= 0
    with pytest.raises(LpInfeasible):
        solve_min([F(1)], [[F(-1)], [F(1)]], [F(-1), F(0)])


def test_unbounded():
    with pytest.raises(LpUnbounded):
        solve_min([F(-1)], [[F(-1)]], [F(0)])


def test_degenerate_does_not_cycle():
    # classic degenerate instance: many redundant tight constraints at origin
    n = 6
    c = [F(-1)] * n
    A = []
    b = []
    for i in range(n):
        row = [F(0)] * n
        row[i] = F(1)
        A.append(row)
        b.append(F(1))
        A.append(list(row))
        b.append(F(1))
    A.append([F(1)] * n)
    b.append(F(3))
    val, _ = solve_min(c, A, b)
    assert val == -3


def test_exactness_with_awkward_rationals():
    # optimum forced to a vertex with large denominators
    val, x = solve_min([F(1), F(1)],
                       [[F(-7, 3), F(-2, 5)], [F(-1, 9), F(-11, 4)]],
                       [F(-1), F(-1)])
    # verify the returned point exactly satisfies both constraints with equality
    assert F(7, 3) * x[0] + F(2, 5) * x[1] == 1
    assert F(1, 9) * x[0] + F(11, 4) * x[1] == 1
    assert val == x[0] + x[1]


def test_random_lps_certified():
    # feasibility + complementary-slackness-free sanity: the reported optimum
    # is attained by the witness and no coordinate is negative
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randint(2, 4)
        m = rng.randint(2, 5)
        c = [F(rng.randint(1, 5)) for _ in range(n)]
        A = [[F(-rng.randint(0, 3)) for _ in range(n)] for _ in range(m)]
        b = [F(-rng.randint(1, 4)) for _ in range(m)]
        if any(all(v == 0 for v in row) for row in A):
            continue  # a zero row with negative rhs is trivially infeasible
        try:
            val, x = solve_min(c, A, b)
        except LpInfeasible:
            continue
        assert all(v >= 0 for v in x)
        assert sum(ci * xi for ci, xi in zip(c, x)) == val
        for row, bi in zip(A, b):
            assert sum(ai * xi for ai, xi in zip(row, x)) <= bi
