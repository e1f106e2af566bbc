import math

import numpy as np
import pytest

from sphere_re.errors import SingularSeparation
from sphere_re.potential import COTANGENT, NEGATED_COTANGENT, custom_potential, potential_by_name


def test_u_prime_equator():
    assert COTANGENT.u_prime(0.0) == 1.0


def test_u_prime_obtuse():
    # 1/sin^3(2 pi/3) = (2/sqrt(3))^3 = 8/(3 sqrt 3)
    assert COTANGENT.u_prime(-0.5) == pytest.approx(8.0 / (3.0 * math.sqrt(3.0)), rel=1e-15)


def test_u_prime_collision_raises():
    with pytest.raises(SingularSeparation):
        COTANGENT.u_prime(1.0)
    with pytest.raises(SingularSeparation):
        COTANGENT.u_prime(-1.0 + 1e-16)
    with pytest.raises(SingularSeparation):
        COTANGENT.u_prime(float("nan"))


def test_u_prime_meridian_values():
    assert COTANGENT.u_prime_meridian(math.pi / 2) == pytest.approx(1.0, rel=1e-15)
    expected = 8.0 / (3.0 * math.sqrt(3.0))
    assert COTANGENT.u_prime_meridian(-2 * math.pi / 3) == pytest.approx(expected, rel=1e-12)
    # even in the signed separation
    assert COTANGENT.u_prime_meridian(2 * math.pi / 3) == COTANGENT.u_prime_meridian(-2 * math.pi / 3)
    with pytest.raises(SingularSeparation):
        COTANGENT.u_prime_meridian(math.pi)


def test_u_value_examples():
    assert COTANGENT.u_value(0.0) == 0.0
    assert COTANGENT.u_value(1.0 / math.sqrt(2.0)) == pytest.approx(1.0, rel=1e-15)
    assert COTANGENT.u_value(-1.0 / math.sqrt(2.0)) == pytest.approx(-1.0, rel=1e-15)


def test_u_prime_is_derivative_of_u_value():
    # centered difference in cos(sigma), relative 1e-6
    h = 1e-6
    for sigma in np.linspace(0.1, math.pi - 0.1, 40):
        c = math.cos(sigma)
        fd = (COTANGENT.u_value(c + h) - COTANGENT.u_value(c - h)) / (2.0 * h)
        assert COTANGENT.u_prime(c) == pytest.approx(fd, rel=1e-6)


def test_definite_sign_on_open_interval():
    assert COTANGENT.sign_consistent()
    assert NEGATED_COTANGENT.sign_consistent()
    sig = np.linspace(0.05, math.pi - 0.05, 200)
    vals = [COTANGENT.u_prime(c) for c in np.cos(sig)]
    assert all(v > 0 for v in vals)
    vals = [NEGATED_COTANGENT.u_prime(c) for c in np.cos(sig)]
    assert all(v < 0 for v in vals)


def test_potential_by_name():
    assert potential_by_name("cotangent") is COTANGENT
    assert potential_by_name("negated-cotangent") is NEGATED_COTANGENT
    with pytest.raises(ValueError):
        potential_by_name("newton")


def test_custom_potential_sign_validation():
    pot = custom_potential(lambda c: c, lambda c: 1.0, attractive=True)
    assert pot.u_prime(0.3) == 1.0
    with pytest.raises(ValueError):
        custom_potential(lambda c: c, lambda c: 1.0, attractive=False)
