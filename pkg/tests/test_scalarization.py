import numpy as np
import pytest

from paretolab import landscapes as L
from paretolab import scalarization as S
from paretolab.errors import CapacityError, DimensionError, DomainError


def test_phi_single_halfspace_is_coordinate():
    polyset = S.PolyhedralSet.create([((1.0, 0.0, 0.0), 0.0)])
    scal = S.GeneralScalarizer.create(polyset, np.zeros(3), (1.0, 0.0, 0.0))
    for y in ((0.3, 9, -4), (-2, 0, 0)):
        assert S.phi_general(scal, y) == pytest.approx(y[0], abs=1e-15)


def test_phi_unit_rows_is_max(rng):
    m = 4
    rows = [(np.eye(m)[i], 0.0) for i in range(m)]
    scal = S.GeneralScalarizer.create(S.PolyhedralSet.create(rows),
                                      np.zeros(m), np.ones(m))
    for y in rng.standard_normal((50, m)):
        assert S.phi_general(scal, y) == pytest.approx(float(y.max()), abs=1e-12)


def test_phi_translation_along_k(rng):
    m = 3
    rows = [(rng.random(m) + 0.1, float(rng.standard_normal())) for _ in range(5)]
    scal = S.GeneralScalarizer.create(S.PolyhedralSet.create(rows),
                                      rng.standard_normal(m), rng.random(m) + 0.2)
    for _ in range(200):
        y = rng.standard_normal(m) * 2
        t = float(rng.standard_normal())
        assert S.phi_general(scal, y + t * scal.k) == \
            pytest.approx(S.phi_general(scal, y) + t, abs=1e-10)


def test_phi_monotone_and_convex(rng):
    m = 4
    rows = [(rng.random(m) + 0.05, float(rng.standard_normal())) for _ in range(6)]
    scal = S.GeneralScalarizer.create(S.PolyhedralSet.create(rows),
                                      rng.standard_normal(m), rng.random(m) + 0.1)
    for _ in range(300):
        y = rng.standard_normal(m)
        up = y + rng.random(m)
        assert S.phi_general(scal, up) >= S.phi_general(scal, y) - 1e-12
        z = rng.standard_normal(m)
        theta = float(rng.random())
        mix = theta * y + (1 - theta) * z
        assert S.phi_general(scal, mix) <= \
            theta * S.phi_general(scal, y) + (1 - theta) * S.phi_general(scal, z) + 1e-12


def test_phi_level_set_membership(rng):
    m = 3
    rows = [(rng.random(m) + 0.1, float(rng.standard_normal())) for _ in range(5)]
    polyset = S.PolyhedralSet.create(rows)
    w = rng.standard_normal(m)
    scal = S.GeneralScalarizer.create(polyset, w, rng.random(m) + 0.2)
    for _ in range(300):
        y = rng.standard_normal(m) * 2
        inside = bool(np.all(polyset.a @ (y - w) <= polyset.alpha + 1e-12))
        assert (S.phi_general(scal, y) <= 1e-12) == inside


def test_phi_invariant_positive_denominator():
    polyset = S.PolyhedralSet.create([((1.0, 0.0), 0.0)])
    with pytest.raises(DomainError):
        S.GeneralScalarizer.create(polyset, np.zeros(2), (0.0, 1.0))
    with pytest.raises(DomainError):
        S.GeneralScalarizer.create(polyset, np.zeros(2), (-1.0, 0.0))


def test_polyhedral_set_validation():
    with pytest.raises(DomainError):
        S.PolyhedralSet.create([])
    with pytest.raises(DomainError):
        S.PolyhedralSet.create([((0.0, 0.0), 1.0)])
    with pytest.raises(DimensionError):
        S.PolyhedralSet.create([((1.0, 0.0), 0.0), ((1.0, 0.0, 0.0), 0.0)])


def test_chebyshev_examples():
    assert S.chebyshev((0.3, 0.7), (1, 1), (0, 0)) == pytest.approx(0.7)
    assert S.chebyshev((0.3, 0.7), (1, 1), (0.3, 0.7)) == pytest.approx(0.0)
    with pytest.raises(DomainError):
        S.chebyshev((1, 1), (1, 0), (0, 0))


def test_chebyshev_matches_general_encoding(rng):
    m = 5
    lam = rng.random(m) + 0.2
    w = rng.standard_normal(m)
    scal = S.chebyshev_scalarizer(lam, w)
    for y in rng.standard_normal((1000, m)) * 3:
        assert S.phi_general(scal, y) == pytest.approx(
            S.chebyshev(y, lam, w), abs=1e-12)


def test_weighted_sum_examples():
    assert S.weighted_sum((0.3, 0.7), (1, 0)) == pytest.approx(0.3)
    assert S.weighted_sum((1, 1), (0.5, 0.5)) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        S.weighted_sum((1, 1), (0, 0))
    with pytest.raises(DomainError):
        S.weighted_sum((1, 1), (-0.1, 1))


def test_weighted_sum_matches_general_encoding(rng):
    m = 4
    a = rng.random(m) + 0.1
    scal = S.weighted_sum_scalarizer(a)
    for y in rng.standard_normal((1000, m)):
        assert S.phi_general(scal, y) == pytest.approx(
            S.weighted_sum(y, a), abs=1e-12)


def test_epsilon_constraint_examples():
    assert S.epsilon_constraint((0.3, 0.4), 0, [0.5]) == pytest.approx(0.3)
    assert S.epsilon_constraint((0.3, 0.6), 0, [0.5]) is S.INFEASIBLE
    # the boundary is feasible
    assert S.epsilon_constraint((0.3, 0.5), 0, [0.5]) == pytest.approx(0.3)
    assert S.epsilon_constraint((0.1, 0.2, 0.3), 1, [0.1, 0.3]) == pytest.approx(0.2)
    with pytest.raises(DomainError):
        S.epsilon_constraint((0.1, 0.2), 2, [0.5])
    with pytest.raises(DimensionError):
        S.epsilon_constraint((0.1, 0.2), 0, [0.5, 0.6])


def test_pascoletti_serafini_examples(rng):
    y = rng.standard_normal(4)
    assert S.pascoletti_serafini(y, y, np.ones(4)) == pytest.approx(0.0, abs=1e-15)
    assert S.pascoletti_serafini((0.3, 0.9), (0, 0), (1, 1)) == pytest.approx(0.9)
    with pytest.raises(DomainError):
        S.pascoletti_serafini((1, 1), (0, 0), (1, 0))


def test_pascoletti_serafini_matches_general_encoding(rng):
    m = 3
    a = rng.standard_normal(m)
    k = rng.random(m) + 0.3
    scal = S.pascoletti_serafini_scalarizer(a, k)
    for y in rng.standard_normal((1000, m)) * 2:
        assert S.phi_general(scal, y) == pytest.approx(
            S.pascoletti_serafini(y, a, k), abs=1e-12)


def test_scalarize_landscape_m1_finds_global_max():
    inst = L.generate_instance(8, 0, 1, 5)
    bits, fx, value = S.scalarize_landscape(
        inst, lambda y: S.weighted_sum(y, [1.0]))
    assert fx[0] == pytest.approx(L.evaluate_all(inst).max(), abs=1e-15)
    assert value == pytest.approx(-fx[0], abs=1e-15)


def test_scalarize_landscape_chebyshev_weakly_optimal():
    inst = L.generate_instance(9, 1, 3, 12)
    bits, fx, _ = S.scalarize_landscape(
        inst, lambda y: S.chebyshev(y, np.ones(3), -np.ones(3)))
    values = L.evaluate_all(inst)
    # no solution strictly dominates the winner in every objective
    assert not np.any(np.all(values > fx, axis=1))


def test_scalarize_landscape_equal_functionals_equal_argmin():
    inst = L.generate_instance(8, 0, 3, 77)
    a = np.array([0.2, 0.5, 0.3])
    scal = S.weighted_sum_scalarizer(a)
    bits1, _, _ = S.scalarize_landscape(inst, lambda y: S.weighted_sum(y, a))
    bits2, _, _ = S.scalarize_landscape(inst, scal)
    assert bits1 == bits2


def test_scalarize_landscape_tie_break_lexicographic():
    inst = L.generate_instance(4, 0, 2, 3)
    bits, _, _ = S.scalarize_landscape(inst, lambda y: 0.0)
    assert bits == "0000"  # constant functional: lexicographically smallest wins


def test_scalarize_landscape_infeasible_everywhere():
    inst = L.generate_instance(4, 0, 2, 3)
    with pytest.raises(DomainError):
        S.scalarize_landscape(inst, lambda y: S.INFEASIBLE)


def test_scalarize_landscape_eps_skips_infeasible():
    inst = L.generate_instance(6, 0, 2, 9)
    values = L.evaluate_all(inst)
    bound = float(np.median(-values[:, 1]))
    bits, fx, value = S.scalarize_landscape(
        inst, lambda y: S.epsilon_constraint(y, 0, [bound]))
    # winner maximizes f_0 among solutions with -f_1 <= bound
    feasible = -values[:, 1] <= bound
    assert value == pytest.approx(float((-values[feasible, 0]).min()), abs=1e-15)


def test_scalarize_landscape_capacity_and_sense():
    inst = L.generate_instance(25, 0, 1, 3)
    with pytest.raises(CapacityError):
        S.scalarize_landscape(inst, lambda y: 0.0)
    small = L.generate_instance(5, 0, 1, 3)
    with pytest.raises(DomainError):
        S.scalarize_landscape(small, lambda y: 0.0, sense="upward")
    bits_min, fx_min, _ = S.scalarize_landscape(
        small, lambda y: S.weighted_sum(y, [1.0]), sense="min")
    bits_max, fx_max, _ = S.scalarize_landscape(
        small, lambda y: S.weighted_sum(y, [1.0]), sense="max")
    assert fx_max[0] == pytest.approx(L.evaluate_all(small).max())
    assert fx_min[0] == pytest.approx(fx_max[0])  # min of -f == max of f
