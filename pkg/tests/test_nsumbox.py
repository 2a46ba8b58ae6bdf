import random
from itertools import combinations

import pytest

from sumbox.field import field_construct
from sumbox.matrix import Mat, hstack
from sumbox.nsumbox import (BoxError, GrsSpec, NSumBox, box_eval,
                            build_half_mds_box, grs_dual_multipliers,
                            grs_matrix, is_half_mds, is_valid_box,
                            symplectic_form)

F2 = field_construct(2)
F3 = field_construct(3)
F8 = field_construct(2, 3)


def test_grs_row_of_multipliers():
    f = F3
    g = GrsSpec(3, 3, 1, (0, 1, 2), (1, 1, 1))
    assert grs_matrix(f, g).data == [[1, 1, 1]]


def test_grs_known_matrix():
    g = GrsSpec(3, 3, 2, (0, 1, 2), (1, 1, 1))
    assert grs_matrix(F3, g).data == [[1, 1, 1], [0, 1, 2]]


def test_grs_is_mds():
    # every k-column subset of a GRS generator is independent
    f = F8
    alpha = tuple(range(6))
    u = (1, 3, 1, 7, 2, 5)
    for k in range(1, 6):
        m = grs_matrix(f, GrsSpec(8, 6, k, alpha, u))
        for cols in combinations(range(1, 7), k):
            assert m.select_columns(cols).rank() == k


def test_grs_spec_validation():
    with pytest.raises(BoxError):
        GrsSpec(3, 4, 2, (0, 1, 2, 2), (1, 1, 1, 1))  # repeated point
    with pytest.raises(BoxError):
        GrsSpec(3, 2, 1, (0, 1), (1, 0))              # zero multiplier
    with pytest.raises(BoxError):
        GrsSpec(3, 4, 2, (0, 1, 2), (1, 1, 1))        # n > q


def test_dual_orthogonality_all_k():
    rng = random.Random(2)
    f = F8
    n = 5
    alpha = tuple(rng.sample(range(8), n))
    u = tuple(rng.choice(range(1, 8)) for _ in range(n))
    v = grs_dual_multipliers(f, alpha, u)
    assert all(x != 0 for x in v)
    for k in range(1, n):
        a = grs_matrix(f, GrsSpec(8, n, k, alpha, u))
        b = grs_matrix(f, GrsSpec(8, n, n - k, alpha, v))
        assert (a * b.transpose()).is_zero()


def test_identity_plus_symmetric_is_valid():
    rng = random.Random(4)
    for f in (F3, F8):
        n = 3
        s = Mat.zeros(f, n, n)
        for i in range(n):
            for j in range(i, n):
                val = rng.randrange(f.order)
                s.data[i][j] = val
                s.data[j][i] = val
        m = hstack(Mat.identity(f, n), s)
        assert is_valid_box(m)


def test_identity_plus_nonsymmetric_is_invalid():
    s = Mat(F3, [[0, 1], [2, 0]])
    m = hstack(Mat.identity(F3, 2), s)
    assert not is_valid_box(m)


def test_half_mds_discrimination_example():
    m1 = Mat(F2, [[1, 1, 0, 0], [0, 0, 1, 1]])
    m2 = Mat(F2, [[1, 0, 1, 0], [0, 1, 0, 0]])
    ok1, w1 = is_half_mds(m1)
    ok2, w2 = is_half_mds(m2)
    assert ok1 and w1 is None
    assert not ok2 and w2 is not None
    # the pair (column 2, column 4) of m2 spans only one dimension
    assert m2.select_columns([2, 4]).rank() == 1


def test_paired_identity_fails_half_mds():
    for n in (2, 3):
        m = hstack(Mat.identity(F3, n), Mat.identity(F3, n))
        ok, witness = is_half_mds(m)
        assert not ok
        assert witness == (1,)


def test_build_small_boxes_certified():
    for N in range(1, 7):
        for f in (field_construct(2, max(1, (N - 1).bit_length())), F8):
            if f.order < N:
                continue
            box = build_half_mds_box(N, f)
            assert is_valid_box(box.M)
            ok, _ = is_half_mds(box.M)
            assert ok


def test_build_rejects_small_field():
    with pytest.raises(BoxError):
        build_half_mds_box(3, F2)


def test_symplectic_form():
    J = symplectic_form(F3, 2)
    assert J.data == [[0, 0, 2, 0], [0, 0, 0, 2], [1, 0, 0, 0], [0, 1, 0, 0]]


def test_box_eval_linearity_and_zero():
    rng = random.Random(8)
    box = build_half_mds_box(4, F8)
    zero = Mat.zeros(F8, 8, 1)
    assert box_eval(box, zero).is_zero()
    for _ in range(10):
        x1 = Mat.random(F8, 8, 1, rng)
        x2 = Mat.random(F8, 8, 1, rng)
        assert box_eval(box, x1 + x2) == box_eval(box, x1) + box_eval(box, x2)


def test_box_serialization_roundtrip():
    box = build_half_mds_box(5, F8)
    again = NSumBox.from_text(box.to_text())
    assert again.N == 5
    assert again.M == box.M


def test_half_mds_size_guard():
    m = hstack(Mat.identity(F2, 13), Mat.identity(F2, 13))
    with pytest.raises(BoxError):
        is_half_mds(m)
    ok, _ = is_half_mds(m, sample_rng=random.Random(0))
    assert not ok
