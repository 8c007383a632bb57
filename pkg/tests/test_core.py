import numpy as np
import pytest

from negaspec.core import (
    GenFunction,
    QaryFunction,
    ZqPoint,
    add_points,
    all_points,
    carry_count,
    carry_count_table,
    concat,
    coord_table,
    index_of,
    lift,
    lift_sum,
    point_of,
    radix_weights,
    restrict,
    shifted_index_table,
)


def test_lift_values():
    assert lift(3, 5) == 3
    assert lift(-1, 5) == 4
    assert lift(7, 5) == 2
    assert lift(0, 2) == 0
    assert lift(-13, 4) == 3


def test_lift_rejects_bad_modulus():
    with pytest.raises(ValueError):
        lift(0, 1)


def test_point_validation():
    with pytest.raises(ValueError):
        ZqPoint((0, 3), 3)
    with pytest.raises(ValueError):
        ZqPoint((-1,), 3)
    p = ZqPoint.lifted([-1, 7], 3)
    assert p.coords == (2, 1)
    assert len(p) == 2 and p.n == 2
    assert ZqPoint((0, 0), 5).is_zero()
    assert not ZqPoint((0, 1), 5).is_zero()


def test_index_of_point_of():
    assert index_of(ZqPoint((1, 2), 3)) == 5
    assert point_of(0, 3, 2) == ZqPoint((0, 0), 3)
    assert index_of(ZqPoint((1, 0, 1), 2)) == 5
    with pytest.raises(ValueError):
        point_of(9, 3, 2)
    with pytest.raises(ValueError):
        point_of(-1, 3, 2)


@pytest.mark.parametrize("q,n", [(2, 1), (2, 4), (3, 3), (5, 4), (4, 2)])
def test_index_point_bijection(q, n):
    seen = []
    for i in range(q**n):
        p = point_of(i, q, n)
        assert index_of(p) == i
        seen.append(p)
    assert seen == list(all_points(q, n))


def test_carry_count():
    assert carry_count(ZqPoint((2, 2), 3), ZqPoint((1, 2), 3)) == 2
    assert carry_count(ZqPoint((0, 0), 4), ZqPoint((3, 3), 4)) == 0
    assert carry_count(ZqPoint((1, 1, 0), 2), ZqPoint((1, 0, 1), 2)) == 1
    with pytest.raises(ValueError):
        carry_count(ZqPoint((0,), 3), ZqPoint((0,), 4))
    with pytest.raises(ValueError):
        carry_count(ZqPoint((0,), 3), ZqPoint((0, 0), 3))


def test_add_points():
    assert add_points(ZqPoint((2, 2), 3), ZqPoint((1, 2), 3)) == ZqPoint(
        (0, 1), 3
    )
    assert add_points(ZqPoint((0, 0), 5), ZqPoint((4, 3), 5)) == ZqPoint(
        (4, 3), 5
    )
    assert add_points(ZqPoint((1, 1), 2), ZqPoint((1, 1), 2)) == ZqPoint(
        (0, 0), 2
    )


def test_lift_sum():
    assert lift_sum(ZqPoint((3, 2, 1), 4)) == 6
    assert lift_sum(ZqPoint((0, 0), 7)) == 0
    assert lift_sum(ZqPoint((1, 1, 1, 1), 2)) == 4


@pytest.mark.parametrize("q,n", [(2, 1), (2, 3), (3, 2), (5, 3), (4, 2)])
def test_carry_sum_identity(q, n):
    # sum of z coordinates = sum x + sum y - q * carries, z = x + y
    for x in all_points(q, n):
        for y in all_points(q, n):
            z = add_points(x, y)
            assert lift_sum(z) == lift_sum(x) + lift_sum(y) - q * carry_count(
                x, y
            )


def test_zero_shift_is_neutral():
    q, n = 4, 2
    zero = ZqPoint((0,) * n, q)
    for x in all_points(q, n):
        assert carry_count(x, zero) == 0
        assert add_points(x, zero) == x


def test_concat():
    u = ZqPoint((1, 2), 3)
    w = ZqPoint((0,), 3)
    assert concat(u, w) == ZqPoint((1, 2, 0), 3)
    empty = ZqPoint((), 3)
    assert concat(u, empty) == u
    assert concat(empty, u) == u
    for a in all_points(3, 2):
        for b in all_points(3, 2):
            assert index_of(concat(a, b)) == index_of(a) * 9 + index_of(b)
    with pytest.raises(ValueError):
        concat(u, ZqPoint((0,), 4))


def test_gen_function_validation():
    GenFunction(3, 1, (0, 5, 3))
    with pytest.raises(ValueError):
        GenFunction(3, 1, (0, 6, 3))  # value = 2q
    with pytest.raises(ValueError):
        GenFunction(3, 1, (0, -1, 3))
    with pytest.raises(ValueError):
        GenFunction(3, 1, (0, 0))  # wrong length
    with pytest.raises(ValueError):
        GenFunction(1, 1, (0,))
    with pytest.raises(ValueError):
        GenFunction(3, 0, (0,))


def test_gen_function_from_callable():
    f = GenFunction.from_callable(3, 2, lambda x1, x2: x1 - x2)
    assert f.values[index_of(ZqPoint((0, 2), 3))] == (0 - 2) % 6
    for p in all_points(3, 2):
        assert f.value_at(p) == (p.coords[0] - p.coords[1]) % 6


def test_gen_function_array_and_shift():
    f = GenFunction(2, 1, (1, 3))
    assert f.array.dtype == np.int64
    assert not f.array.flags.writeable
    g = f.plus_constant(3)
    assert g.values == ((1 + 3) % 4, (3 + 3) % 4)
    assert f.plus_constant(0) == f


def test_qary_function():
    g = QaryFunction(3, 1, (0, 1, 2))
    with pytest.raises(ValueError):
        QaryFunction(3, 1, (0, 3, 1))
    d = g.doubled()
    assert isinstance(d, GenFunction)
    assert d.values == (0, 2, 4)
    assert g.value_at(ZqPoint((2,), 3)) == 2


def test_restrict_prefix_slice():
    f = GenFunction(3, 2, tuple(i % 6 for i in range(9)))
    r = restrict(f, ZqPoint((1,), 3))
    assert r.q == 3 and r.n == 1
    assert r.values == f.values[3:6]
    for v in all_points(3, 1):
        sub = restrict(f, v)
        for w in all_points(3, 1):
            assert sub.value_at(w) == f.value_at(concat(v, w))
    with pytest.raises(ValueError):
        restrict(f, ZqPoint((1, 1), 3))  # r = n
    with pytest.raises(ValueError):
        restrict(f, ZqPoint((1,), 2))


def test_coord_table_matches_points():
    for q, n in ((2, 3), (3, 2), (5, 2)):
        t = coord_table(q, n)
        w = radix_weights(q, n)
        assert (t @ w == np.arange(q**n)).all()
        for i in range(q**n):
            assert tuple(int(c) for c in t[i]) == point_of(i, q, n).coords


def test_shift_tables_match_pointwise_ops():
    q, n = 3, 2
    for u in all_points(q, n):
        perm = shifted_index_table(q, n, u)
        carries = carry_count_table(q, n, u)
        for i in range(q**n):
            x = point_of(i, q, n)
            assert perm[i] == index_of(add_points(x, u))
            assert carries[i] == carry_count(x, u)
