"""Small dense linear systems for ray intersections.

Systems are n x 2 with n >= 2.  The square case is solved through the
explicit 2x2 inverse; overdetermined stacks go through the
normal-equations pseudo-inverse (A^T A)^-1 A^T b, written out directly
rather than delegated to an orthogonal-decomposition least-squares
routine, so the arithmetic path stays the documented one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import MixedSides, ParallelRays, SchemaError, SingularSystem
from .geometry import Ray

#: A determinant below this times the squared largest row norm counts as
#: singular (squared again for the normal-equations determinant, which
#: carries four powers of length).
SINGULARITY_RTOL = 1e-12


@dataclass(frozen=True)
class LinearSystem:
    """Stack of ray equations  -slope * z + y = intercept."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=np.float64)
        b = np.asarray(self.b, dtype=np.float64)
        if a.ndim != 2 or a.shape[1] != 2 or a.shape[0] < 2:
            raise SchemaError(f"coefficient matrix must be n x 2 with n >= 2, got {a.shape}")
        if b.shape != (a.shape[0],):
            raise SchemaError(f"right-hand side must have length {a.shape[0]}, got {b.shape}")
        if not (np.isfinite(a).all() and np.isfinite(b).all()):
            raise SchemaError("system entries must be finite")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


class SolveResult(NamedTuple):
    x: np.ndarray
    residual: float


@dataclass(frozen=True)
class IntersectionPoint:
    """Crossing of two rays: axial position z and transverse position y."""

    z: float
    y: float


def solve(system: LinearSystem) -> SolveResult:
    """Solve the stack for (z, y), reporting the max-norm residual.

    Raises SingularSystem when the (normal-equations) determinant falls
    under SINGULARITY_RTOL scaled by the squared largest row norm.
    """
    if system.a.shape[0] == 2:
        x = _solve_direct(system.a, system.b)
    else:
        x = _solve_normal_equations(system.a, system.b)
    residual = float(np.max(np.abs(system.a @ x - system.b)))
    return SolveResult(x, residual)


def _row_norm_sq(a: np.ndarray) -> float:
    return float(np.max(np.einsum("ij,ij->i", a, a)))


def _invert_2x2(m: np.ndarray, threshold: float) -> np.ndarray:
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(det) < threshold:
        raise SingularSystem(f"determinant {det} below conditioning threshold {threshold}")
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]]) / det

def _solve_direct(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    scale = SINGULARITY_RTOL * _row_norm_sq(a)
    return _invert_2x2(a, scale) @ b


def _solve_normal_equations(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # det(A^T A) scales as the 4th power of row magnitude: square the threshold
    scale = (SINGULARITY_RTOL * _row_norm_sq(a)) ** 2
    return _invert_2x2(a.T @ a, scale) @ (a.T @ b)


def intersect_rays(ray_a: Ray, ray_b: Ray) -> IntersectionPoint:
    """Intersection of two rays from the same side of the main lens.

    Raises MixedSides when the rays live in different reference frames
    and ParallelRays when their slopes coincide within conditioning.
    """
    if ray_a.side != ray_b.side:
        raise MixedSides(
            f"cannot intersect a {ray_a.side}-side ray with a {ray_b.side}-side ray"
        )
    system = LinearSystem(
        a=np.array([[-ray_a.slope, 1.0], [-ray_b.slope, 1.0]]),
        b=np.array([ray_a.intercept, ray_b.intercept]),
    )
    try:
        x, _ = solve(system)
    except SingularSystem as exc:
        raise ParallelRays(
            f"rays with slopes {ray_a.slope} and {ray_b.slope} do not intersect"
        ) from exc
    return IntersectionPoint(z=float(x[0]), y=float(x[1]))
