import math

import numpy as np
import pytest

from sphere_re.dynamics import meridian_re_residual
from sphere_re.errors import DegenerateDiscriminant, ExcludedAngle
from sphere_re.euler import (
    classify_meridian_shape,
    critical_angle_ac,
    critical_angle_ac_bisection,
    degenerate_shape_constraints,
    discriminant,
    ere_omega2,
    ere_scan,
    ere_shape_det,
    fg_pair,
    g_cyclic,
    g_equal_mass,
    iso_omega2_function,
    isosceles_ere_classify,
    reconstruct_meridian,
    repulsive_mirror,
    scalene_curve_y,
    scalene_shape,
    solve_ere,
)
from sphere_re.geometry import MeridianShape3, wrap_angle
from sphere_re.potential import COTANGENT, NEGATED_COTANGENT
from oracles import classical_cc_residual, classical_quintic_limit

ONES = np.ones(3)

# rate of the pole-middle family at spread 0.5, frozen from the
# equilibrium residual: meridian_re_residual((-0.5, 0.5, 0), ., om2) = 0
OM2_POLE_MIDDLE_HALF = 13.697366470914243


def test_discriminant_degenerate_shapes():
    assert discriminant(MeridianShape3(2 * math.pi / 3, -2 * math.pi / 3), ONES).D == pytest.approx(0.0, abs=1e-12)
    assert discriminant(MeridianShape3(2 * math.pi / 3, math.pi / 3), ONES).D == pytest.approx(0.0, abs=1e-12)
    assert discriminant(MeridianShape3(math.pi / 3, 2 * math.pi / 3), ONES).D == pytest.approx(0.0, abs=1e-12)
    assert discriminant(MeridianShape3(math.pi / 3, -math.pi / 3), ONES).D == pytest.approx(0.0, abs=1e-12)


def test_discriminant_equilateral_unequal_masses():
    # A^2 = sum of squared mass gaps / 2
    d = discriminant(MeridianShape3(2 * math.pi / 3, -2 * math.pi / 3), [1.0, 2.0, 3.0])
    assert d.D == pytest.approx(((1 - 2) ** 2 + (2 - 3) ** 2 + (1 - 3) ** 2) / 2.0, rel=1e-12)
    assert d.A == pytest.approx(math.sqrt(3.0), rel=1e-12)


def test_discriminant_equal_mass_formula(rng):
    # D = 3 + 2 (cos 2a + cos 2x + cos 2(x - a)) for unit masses
    for _ in range(30):
        a = rng.uniform(0.1, math.pi - 0.1)
        x = rng.uniform(-math.pi + 0.1, math.pi - 0.1)
        d = discriminant(MeridianShape3(a, x), ONES)
        expect = 3.0 + 2.0 * (math.cos(2 * a) + math.cos(2 * x) + math.cos(2 * (x - a)))
        assert d.D == pytest.approx(expect, abs=1e-12)


def test_degenerate_constraints_equal_masses():
    rep = degenerate_shape_constraints(ONES)
    assert rep.attainable
    # each base solution satisfies the two constraint equations
    for t12, t13 in rep.solutions:
        c1 = 1.0 + math.cos(2 * t12) + math.cos(2 * t13)
        c2 = math.sin(2 * t12) + math.sin(2 * t13)
        assert abs(c1) < 1e-12 and abs(c2) < 1e-12
    # the four degenerate equal-mass shapes satisfy D = 0
    for a, x in [
        (2 * math.pi / 3, -2 * math.pi / 3),
        (math.pi / 3, 2 * math.pi / 3),
        (math.pi / 3, -math.pi / 3),
        (2 * math.pi / 3, math.pi / 3),
    ]:
        assert discriminant(MeridianShape3(a, x), ONES).D == pytest.approx(0.0, abs=1e-12)


def test_degenerate_constraints_dominant_mass():
    assert not degenerate_shape_constraints([5.0, 1.0, 1.0]).attainable


def test_degenerate_constraints_boundary_masses():
    # m1 = m2 + m3: attainable only with the two bodies coincident
    rep = degenerate_shape_constraints([2.0, 1.0, 1.0])
    assert rep.attainable
    (t12a, t13a), (t12b, t13b) = rep.solutions
    assert t12a == pytest.approx(t13a, abs=1e-12)
    assert t12b == pytest.approx(t13b, abs=1e-12)


def test_reconstruct_meridian_isosceles_pole():
    # spread 0.5 about the middle: s = +1 puts the middle body at a pole
    th = reconstruct_meridian(MeridianShape3(1.0, 0.5), ONES, +1)
    assert th == pytest.approx([-0.5, 0.5, 0.0], abs=1e-12)
    # branch flip shifts every body by pi/2
    th2 = reconstruct_meridian(MeridianShape3(1.0, 0.5), ONES, -1)
    diff = np.array([wrap_angle(b - a) for a, b in zip(th, th2)])
    assert np.abs(diff) == pytest.approx([math.pi / 2] * 3, abs=1e-12)


def test_reconstruct_meridian_balance(rng):
    for _ in range(40):
        a = rng.uniform(0.1, math.pi - 0.1)
        x = rng.uniform(-math.pi + 0.1, math.pi - 0.1)
        m = rng.uniform(0.2, 5.0, 3)
        shape = MeridianShape3(a, x)
        if discriminant(shape, m).A < 1e-6:
            continue
        for s in (+1, -1):
            th = reconstruct_meridian(shape, m, s)
            assert abs(np.sum(m * np.sin(2 * th))) < 1e-10 * m.sum()


def test_reconstruct_meridian_degenerate_raises():
    with pytest.raises(DegenerateDiscriminant):
        reconstruct_meridian(MeridianShape3(2 * math.pi / 3, math.pi / 3), ONES, +1)


def test_fg_pair_antisymmetry(rng):
    for _ in range(20):
        th = rng.uniform(-1.5, 1.5, 3)
        if min(abs(math.sin(th[i] - th[j])) for i, j in ((0, 1), (1, 2), (2, 0))) < 0.05:
            continue
        m = rng.uniform(0.2, 5.0, 3)
        fg = fg_pair(th, m)
        fg_swapped = fg_pair(th[[1, 0, 2]], m[[1, 0, 2]])
        # swapping bodies 1 and 2 negates the (1,2) pair quantities
        assert fg_swapped.f12 == pytest.approx(-fg.f12, rel=1e-12)
        assert fg_swapped.g12 == pytest.approx(-fg.g12, rel=1e-12)


def test_ere_shape_det_isosceles_zero():
    det, _ = ere_shape_det(MeridianShape3(1.0, 0.5), ONES)
    assert abs(det) < 1e-14


def test_ere_shape_det_off_curve_nonzero():
    det, _ = ere_shape_det(MeridianShape3(1.0, 0.4), ONES)
    assert abs(det) > 1e-3


def test_ere_shape_det_scalene_curve_zero():
    shape = scalene_shape(1.7)
    det, _ = ere_shape_det(shape, ONES)
    assert abs(det) < 1e-10


def test_ere_omega2_isosceles_matches_family_rate():
    s, om2, fixed, undet = ere_omega2(MeridianShape3(1.0, 0.5), ONES)
    assert not fixed and not undet
    assert s == +1
    assert om2 == pytest.approx(OM2_POLE_MIDDLE_HALF, rel=1e-12)
    assert om2 == pytest.approx(iso_omega2_function(0.5), rel=1e-12)


def test_solve_ere_isosceles_half():
    sol = solve_ere(MeridianShape3(1.0, 0.5), ONES)
    assert sol.family == "isosceles-pole-middle"
    assert sol.thetas == pytest.approx([-0.5, 0.5, 0.0], abs=1e-12)
    assert sol.omega2 == pytest.approx(OM2_POLE_MIDDLE_HALF, rel=1e-12)
    assert sol.max_residual < 1e-12


def test_solve_ere_degenerate_isosceles():
    sol = solve_ere(MeridianShape3(2 * math.pi / 3, math.pi / 3), ONES)
    assert sol.family == "degenerate"
    assert sol.thetas == pytest.approx([-math.pi / 3, math.pi / 3, 0.0], abs=1e-12)
    assert sol.omega2 == pytest.approx(32.0 / (3.0 * math.sqrt(3.0)), rel=1e-12)
    assert sol.max_residual < 1e-12


def test_solve_ere_equilateral_fixed_point():
    sol = solve_ere(MeridianShape3(2 * math.pi / 3, -2 * math.pi / 3), ONES)
    assert sol.fixed_point
    assert sol.omega2 == 0.0
    assert sol.max_residual < 1e-12


def test_solve_ere_equilateral_unequal_masses():
    # any masses admit the equilateral meridian RE; for (1, 2, 3) the
    # branch ratio gives omega^2 = 2 A U'(-1/2) = 16/3 with s = -1
    sol = solve_ere(MeridianShape3(2 * math.pi / 3, -2 * math.pi / 3), [1.0, 2.0, 3.0])
    assert sol.s == -1
    assert sol.omega2 == pytest.approx(16.0 / 3.0, rel=1e-12)
    assert sol.max_residual < 1e-12
    assert abs(np.sum(np.array([1.0, 2.0, 3.0]) * np.sin(2 * sol.thetas))) < 1e-10


def test_scalene_curve_endpoints():
    ac = critical_angle_ac()
    assert scalene_curve_y(ac) == pytest.approx(1.0, abs=1e-9)
    # no curve below pi/2 or above a_c
    assert scalene_curve_y(1.3) is None
    assert scalene_curve_y(ac + 1e-3) is None


def test_scalene_curve_consistency():
    # points on the curve satisfy the shape condition
    for a in (1.6, 1.7, 1.75, 1.8):
        shape = scalene_shape(a)
        assert shape is not None
        assert abs(g_equal_mass(shape.a, shape.x)) < 1e-10


def test_critical_angle_value_and_oracle():
    ac = critical_angle_ac()
    assert math.cos(ac) == pytest.approx(-0.2393101465977, abs=1e-10)
    assert abs(ac - critical_angle_ac_bisection()) < 1e-9
    assert 1.8124 <= ac < 1.8125


def test_isosceles_classify_families():
    third = math.pi / 3
    cand = isosceles_ere_classify(third)
    assert cand.family == "pole-middle"
    assert cand.omega2 == pytest.approx(32.0 / (3.0 * math.sqrt(3.0)), rel=1e-12)

    cand = isosceles_ere_classify(2 * math.pi / 3)
    assert cand.family == "fixed-point"
    assert cand.omega2 == 0.0

    # equator-middle branch; the rate that zeroes the residual is 2
    cand = isosceles_ere_classify(3 * math.pi / 4)
    assert cand.family == "equator-middle"
    assert cand.omega2 == pytest.approx(2.0, rel=1e-12)
    assert np.max(np.abs(meridian_re_residual(cand.thetas, ONES, cand.omega2))) < 1e-12

    with pytest.raises(ExcludedAngle):
        isosceles_ere_classify(math.pi / 2)


def test_isosceles_family_rates_zero_residual():
    for theta in (0.3, 0.5, 1.0, 1.3, 1.9, 2.4, 2.9):
        cand = isosceles_ere_classify(theta)
        resid = np.max(np.abs(meridian_re_residual(cand.thetas, ONES, cand.omega2)))
        assert resid < 1e-11, f"family rate fails the equations at theta={theta}"


def test_repulsive_mirror_solves_negated_potential():
    sol = solve_ere(MeridianShape3(1.0, 0.5), ONES)
    mir = repulsive_mirror(sol)
    assert mir.potential_name == "negated-cotangent"
    assert mir.max_residual < 1e-10
    # involution up to a common half-turn
    back = repulsive_mirror(mir)
    diff = np.array([wrap_angle(b - a) for a, b in zip(sol.thetas, back.thetas)])
    assert np.allclose(np.abs(diff), math.pi, atol=1e-12) or np.allclose(diff, 0.0, atol=1e-12)


def test_repulsive_mirror_fixed_point_unchanged():
    sol = solve_ere(MeridianShape3(2 * math.pi / 3, -2 * math.pi / 3), ONES)
    assert repulsive_mirror(sol) is sol


def test_g_symmetries(rng):
    # the numerator is symmetric under body relabelings
    for _ in range(40):
        a = rng.uniform(0.2, 3.0)
        x = rng.uniform(-3.0, 3.0)
        v = g_equal_mass(a, x)
        assert g_equal_mass(x, a) == pytest.approx(v, rel=1e-10, abs=1e-12)
        assert g_equal_mass(-a, x - a) == pytest.approx(v, rel=1e-10, abs=1e-12)


def test_g_cyclic_matches_equal_mass_form(rng):
    for _ in range(40):
        a = rng.uniform(0.2, 3.0)
        x = rng.uniform(-3.0, 3.0)
        assert g_cyclic(a, x, ONES) == pytest.approx(g_equal_mass(a, x), rel=1e-12, abs=1e-14)


def test_isosceles_lines_in_zero_set(rng):
    for _ in range(20):
        a = rng.uniform(0.2, 3.0)
        assert abs(g_equal_mass(a, 0.5 * a)) < 1e-13
        assert abs(g_equal_mass(a, 0.5 * a - math.pi)) < 1e-13
        assert abs(g_equal_mass(a, -a)) < 1e-13


def test_necessity_perturbation_off_curve(rng):
    # shapes 1e-3 off the solved curve violate the condition
    for a in (1.6, 1.7, 1.8):
        shape = scalene_shape(a)
        base = abs(g_equal_mass(shape.a, shape.x))
        assert base < 1e-10
        assert abs(g_equal_mass(shape.a, shape.x + 1e-3)) > 1e2 * max(base, 1e-12)
        assert abs(g_equal_mass(shape.a + 1e-3, shape.x)) > 1e2 * max(base, 1e-12)


def test_euclidean_limit_of_shape_condition(rng):
    # g(eps * offsets)/eps^5 approaches the flat-space quintic value at
    # second order in eps
    for _ in range(25):
        m = rng.uniform(0.2, 5.0, 3)
        x = np.sort(rng.uniform(-1.5, 1.5, 3))[::-1]
        if min(abs(x[0] - x[1]), abs(x[1] - x[2])) < 0.2:
            continue
        target = classical_quintic_limit(x, m)
        # offsets (0, a, x) with a = x2 - x1, x = x3 - x1
        a_off = x[1] - x[0]
        x_off = x[2] - x[0]
        errs = []
        for eps in (1e-2, 5e-3):
            val = float(g_cyclic(eps * a_off, eps * x_off, m)) / eps**5
            errs.append(abs(val - target))
        order = math.log(errs[0] / errs[1]) / math.log(2.0)
        assert order > 1.8, f"observed order {order}"


def test_classical_oracle_is_a_central_configuration(rng):
    # certify the flat-space determinant oracle: its root is a genuine
    # central configuration of the classical collinear problem
    from oracles import classical_collinear_det
    from sphere_re.roots import bisect

    for _ in range(5):
        m = rng.uniform(0.3, 3.0, 3)

        def det_of(rho):
            return classical_collinear_det(np.array([1.0 + rho, rho, 0.0]), m)

        grid = np.geomspace(0.05, 20.0, 200)
        vals = [det_of(g) for g in grid]
        root = None
        for i in range(len(grid) - 1):
            if (vals[i] > 0) != (vals[i + 1] > 0):
                root = bisect(det_of, grid[i], grid[i + 1], tol=1e-13)
                break
        assert root is not None
        assert classical_cc_residual(np.array([1.0 + root, root, 0.0]), m) < 1e-10


def test_classify_meridian_shape():
    kind, _ = classify_meridian_shape(MeridianShape3(2 * math.pi / 3, -2 * math.pi / 3))
    assert kind == "equilateral"
    kind, iso = classify_meridian_shape(MeridianShape3(1.0, 0.5))
    assert kind == "isosceles" and iso[0] == 2
    kind, _ = classify_meridian_shape(MeridianShape3(1.0, 0.4))
    assert kind == "scalene"
    # the wrapped far-side family is still isosceles about body 3
    kind, iso = classify_meridian_shape(MeridianShape3(1.0, 0.5 - math.pi))
    assert kind == "isosceles" and iso[0] == 2


def test_ere_scan_small_grid_families_and_soundness():
    hits = ere_scan(ONES, na=120, nx=120)
    assert len(hits) > 100
    families = {h.solution.family for h in hits}
    assert "isosceles-pole-middle" in families
    assert "isosceles-equator-middle" in families
    assert "scalene" in families
    for h in hits:
        assert h.solution.max_residual < 1e-10
        assert h.min_sin_separation >= 0.03
    # scalene hits keep their largest separation beyond pi/2, which is
    # why this family has no flat-space counterpart
    for h in hits:
        if h.solution.family == "scalene":
            seps = np.abs(MeridianShape3(h.a, h.x).separations())
            assert seps.max() > math.pi / 2
            assert seps.max() < critical_angle_ac() + 1e-6


def test_ere_scan_negated_potential_same_zero_set():
    att = ere_scan(ONES, na=40, nx=40)
    rep = ere_scan(ONES, na=40, nx=40, pot=NEGATED_COTANGENT)
    assert len(att) == len(rep)
    for h1, h2 in zip(att, rep):
        assert h1.x == pytest.approx(h2.x, abs=1e-11)
        assert h2.solution.max_residual < 1e-10
