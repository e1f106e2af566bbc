"""Pairwise potentials parameterized by the cosine of the separation.

A potential is a pair of scalar functions U(c) and U'(c) of
c = cos(sigma) together with a declared force sign: U' > 0 on (0, pi)
is attractive, U' < 0 repulsive.  Working in cos(sigma) rather than
sigma keeps derivative bookkeeping out of the force expressions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import SingularSeparation

# Below this value of sin^2(sigma) the pair force is treated as singular:
# (1 - c^2)^(-3/2) overflows long before c reaches +-1.
SINGULAR_SIN2 = 1e-14


@dataclass(frozen=True)
class Potential:
    """A pairwise potential U(cos sigma) with derivative U'(cos sigma)."""

    name: str
    u: Callable[[float], float]
    du: Callable[[float], float]
    attractive: bool

    def u_value(self, cos_sigma):
        """U at the given cos(sigma); rejects coincident/antipodal pairs."""
        self._check(cos_sigma)
        return self.u(cos_sigma)

    def u_prime(self, cos_sigma):
        """U' at the given cos(sigma); rejects coincident/antipodal pairs."""
        self._check(cos_sigma)
        return self.du(cos_sigma)

    def u_prime_meridian(self, theta_diff):
        """U' for a signed meridian separation; even in theta_diff.

        The cotangent family is evaluated as 1/|sin theta|^3 straight
        from the separation: going through cos would lose half the
        digits to the 1 - cos^2 cancellation at small separations.
        """
        if self.name in ("cotangent", "negated-cotangent"):
            s = np.abs(np.sin(theta_diff))
            if not np.all(s * s >= SINGULAR_SIN2):
                raise SingularSeparation("pair at or numerically at theta_ij = 0 or pi")
            val = s**-3.0
            return val if self.name == "cotangent" else -val
        return self.u_prime(np.cos(theta_diff))

    @staticmethod
    def _check(cos_sigma) -> None:
        # the negated comparison also catches NaN separations
        if not np.all(1.0 - np.asarray(cos_sigma) ** 2 >= SINGULAR_SIN2):
            raise SingularSeparation("pair at or numerically at sigma = 0 or pi")

    def sign_consistent(self, n: int = 64) -> bool:
        """Sampled U' keeps one sign on (0, pi) and matches `attractive`."""
        sig = np.linspace(0.05, math.pi - 0.05, n)
        vals = np.array([self.du(c) for c in np.cos(sig)])
        if self.attractive:
            return bool(np.all(vals > 0.0))
        return bool(np.all(vals < 0.0))


def _cot_u(c):
    return c / np.sqrt(1.0 - c * c)


def _cot_du(c):
    return (1.0 - c * c) ** -1.5


COTANGENT = Potential("cotangent", _cot_u, _cot_du, attractive=True)

NEGATED_COTANGENT = Potential(
    "negated-cotangent",
    lambda c: -_cot_u(c),
    lambda c: -_cot_du(c),
    attractive=False,
)

_BY_NAME = {p.name: p for p in (COTANGENT, NEGATED_COTANGENT)}


def potential_by_name(name: str) -> Potential:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise ValueError(f"unknown potential {name!r}; choose from {sorted(_BY_NAME)}") from None


def custom_potential(u, du, attractive: bool, name: str = "custom") -> Potential:
    """Wrap user-supplied U and U' callables; the sign claim is sampled."""
    pot = Potential(name, u, du, attractive)
    if not pot.sign_consistent():
        raise ValueError("declared force sign does not match sampled U'")
    return pot
