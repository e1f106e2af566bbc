"""Small root-finding helpers used by the shape solvers."""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np


def bisect(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12, max_iter: int = 200) -> float:
    """Bisection on a bracketing interval; f(lo) and f(hi) must differ in sign."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0 or hi - lo < tol:
            return mid
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def newton_polish(f: Callable[[float], float], x0: float, tol: float = 1e-13, max_iter: int = 30, h: float = 1e-7) -> float:
    """A few Newton steps with a finite-difference slope, started at x0.

    Falls back to the starting point if the iteration wanders; intended
    to sharpen a bisection result, not to find roots from scratch.
    """
    x = x0
    for _ in range(max_iter):
        fx = f(x)
        if fx == 0.0:
            return x
        d = (f(x + h) - f(x - h)) / (2.0 * h)
        if d == 0.0 or not np.isfinite(d):
            break
        step = fx / d
        if not np.isfinite(step) or abs(step) > 0.1:
            break
        x -= step
        if abs(step) < tol:
            break
    return x if np.isfinite(f(x)) and abs(f(x)) <= abs(f(x0)) else x0


def bracket_roots(f: Callable[[np.ndarray], np.ndarray], grid: Sequence[float]) -> list[tuple[float, float]]:
    """Sign-change brackets of f on a grid; f is evaluated vectorized."""
    g = np.asarray(grid, dtype=float)
    vals = np.asarray(f(g))
    sign = np.sign(vals)
    out = []
    for i in range(len(g) - 1):
        if sign[i] == 0.0:
            out.append((g[i], g[i]))
        elif sign[i] * sign[i + 1] < 0.0:
            out.append((g[i], g[i + 1]))
    if sign[-1] == 0.0:
        out.append((g[-1], g[-1]))
    return out


def gauss_newton(
    residual: Callable[[np.ndarray], np.ndarray],
    x0: np.ndarray,
    tol: float = 1e-14,
    max_iter: int = 40,
    fd_step: float = 1e-7,
    rcond: float = 1e-8,
) -> np.ndarray:
    """Minimum-norm Gauss-Newton for a possibly underdetermined system.

    Steps are least-squares solutions of J dx = -r, so the iterate walks
    to the nearest point of the solution manifold.  The Jacobian comes
    from central differences, whose noise can turn an exact null
    direction of J into a tiny spurious singular value; `rcond` drops
    those so the step never wanders along the manifold.
    """
    x = np.asarray(x0, dtype=float).copy()
    r = np.asarray(residual(x))
    best_x, best_n = x.copy(), float(np.linalg.norm(r))
    for _ in range(max_iter):
        n = x.size
        J = np.empty((r.size, n))
        for i in range(n):
            xp = x.copy()
            xp[i] += fd_step
            xm = x.copy()
            xm[i] -= fd_step
            J[:, i] = (np.asarray(residual(xp)) - np.asarray(residual(xm))) / (2.0 * fd_step)
        dx, *_ = np.linalg.lstsq(J, -r, rcond=rcond)
        if not np.all(np.isfinite(dx)):
            break
        x = x + dx
        r = np.asarray(residual(x))
        nr = float(np.linalg.norm(r))
        if nr < best_n:
            best_x, best_n = x.copy(), nr
        if np.linalg.norm(dx) < tol * (1.0 + np.linalg.norm(x)):
            break
    return best_x
