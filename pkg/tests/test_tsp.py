from math import factorial

import numpy as np
import pytest

from permcirc.perms import all_perms, identity, unrank
from permcirc.tsp import (
    TooLarge,
    TourCost,
    TspInstance,
    load_instance,
    optimum,
    random_instance,
    save_instance,
    tour_cost,
)


def unit_instance(n):
    w = np.ones((n, n))
    np.fill_diagonal(w, 0.0)
    return TspInstance(w)


def asymmetric_3():
    w = np.full((3, 3), 9.0)
    w[0, 1], w[1, 2], w[2, 0] = 1.0, 2.0, 3.0
    np.fill_diagonal(w, 0.0)
    return TspInstance(w)


def test_unit_weights_identity():
    assert tour_cost(unit_instance(3), identity(3)) == 3.0


def test_asymmetric_hand_sum():
    assert tour_cost(asymmetric_3(), identity(3)) == 6.0


def test_reduced_formula_n3():
    inst = asymmetric_3()
    # effective degree 2; id visits city 1 then city 2, with city 3 as start
    expected = inst.w[2, 0] + inst.w[0, 1] + inst.w[1, 2]
    assert tour_cost(inst, identity(2), reduced=True) == expected


def test_degree_mismatch_with_reduced_flag():
    inst = unit_instance(4)
    with pytest.raises(ValueError):
        tour_cost(inst, identity(4), reduced=True)
    with pytest.raises(ValueError):
        tour_cost(inst, identity(3), reduced=False)


def test_optimum_all_equal_weights():
    inst = unit_instance(5)
    tour, cost = optimum(inst)
    assert cost == 5.0
    assert tour == identity(5)  # rank-0 witness on ties


def test_optimum_asymmetric():
    tour, cost = optimum(asymmetric_3())
    assert cost == 6.0
    assert tour == identity(3)


def test_optimum_bounds_random_tours():
    inst = random_instance(6, seed=2)
    _, best = optimum(inst)
    rng = np.random.default_rng(3)
    for _ in range(100):
        p = tuple(rng.permutation(6).tolist())
        assert best <= tour_cost(inst, p) + 1e-12


def test_optimum_matches_streaming_enumeration():
    inst = random_instance(5, seed=9)
    tour, cost = optimum(inst)
    brute = min((tour_cost(inst, p), p) for p in all_perms(5))
    assert brute == (cost, tour)


def test_optimum_cap():
    with pytest.raises(TooLarge):
        optimum(unit_instance(14), reduced=True)


def test_random_instance_reproducible():
    a = random_instance(9, seed=4)
    b = random_instance(9, seed=4)
    assert a.w.shape == (9, 9)
    assert np.array_equal(a.w, b.w)
    assert not np.array_equal(a.w, random_instance(9, seed=5).w)
    off = ~np.eye(9, dtype=bool)
    assert ((a.w[off] >= 1.0) & (a.w[off] <= 10.0)).all()


def test_random_instance_range_validation():
    with pytest.raises(ValueError):
        random_instance(4, seed=0, lo=0.0)
    with pytest.raises(ValueError):
        random_instance(4, seed=0, lo=5.0, hi=2.0)


def test_save_load_roundtrip_exact(tmp_path):
    inst = random_instance(9, seed=11)
    path = tmp_path / "inst.txt"
    save_instance(inst, path)
    back = load_instance(path)
    assert back.n == 9
    assert np.array_equal(back.w, inst.w)


def test_load_rejects_bad_weight(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("n 2\ndirected 1\n0.0 -1.0\n2.0 0.0\n")
    with pytest.raises(ValueError, match="positive"):
        load_instance(path)
    path.write_text("n 2\ndirected 1\n0.0 x\n2.0 0.0\n")
    with pytest.raises(ValueError, match="bad weight"):
        load_instance(path)
    path.write_text("n 3\ndirected 1\n0.0 1.0 1.0\n")
    with pytest.raises(ValueError, match="weight rows"):
        load_instance(path)


def test_instance_validation():
    with pytest.raises(ValueError):
        TspInstance(np.zeros((3, 3)))
    with pytest.raises(ValueError):
        TspInstance(np.ones((2, 3)))


def test_cost_vector_matches_scalar():
    for reduced in (False, True):
        inst = random_instance(6, seed=8)
        cost = TourCost(inst, reduced)
        vec = cost.vector()
        assert vec.shape == (factorial(cost.degree),)
        for r in range(0, len(vec), 7):
            assert vec[r] == cost(unrank(r, cost.degree))


def test_cyclic_rotation_invariance():
    inst = random_instance(5, seed=13)
    for p in all_perms(5):
        c = tour_cost(inst, p)
        for shift in range(1, 5):
            rotated = p[shift:] + p[:shift]
            assert tour_cost(inst, rotated) == pytest.approx(c, abs=1e-9)


@pytest.mark.parametrize("n", range(3, 8))
def test_reduced_equals_full_optimum(n):
    inst = random_instance(n, seed=n)
    assert optimum(inst, False)[1] == pytest.approx(optimum(inst, True)[1], abs=1e-9)
