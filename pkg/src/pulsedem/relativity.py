"""Lorentz kinematics: events, four-vectors, boosts, and the field tensor.

Conventions used throughout the package:

  * metric signature (+, -, -, -)
  * boost(X, v) returns the components of X in a frame moving with
    velocity v relative to the frame of X (so t' = gamma (t - v.x/c^2));
    the inverse transformation is boost(X, -v)
  * F^{mu nu} carries E in the first column block, F^{i0} = E_i, and
    F^{12} = -B_z etc.; the Levi-Civita symbol is fixed by eps^{0123} = +1,
    which makes the pseudoscalar invariant equal to -8 E.B
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .errors import SuperluminalError

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

# eps^{0123} = +1, fully antisymmetric
_EPSILON = np.zeros((4, 4, 4, 4))
for _perm in permutations(range(4)):
    _sign = 1.0
    _p = list(_perm)
    for _i in range(4):
        for _j in range(_i + 1, 4):
            if _p[_i] > _p[_j]:
                _sign = -_sign
    _EPSILON[_perm] = _sign


@dataclass(frozen=True)
class Event:
    """A spacetime point (t, x) with x a length-3 array."""

    t: float
    x: np.ndarray

    @staticmethod
    def of(t: float, x: float, y: float = 0.0, z: float = 0.0) -> "Event":
        return Event(float(t), np.array([x, y, z], dtype=float))

    def shift_t(self, dt: float) -> "Event":
        return Event(self.t + dt, self.x)

    def shift_x(self, axis: int, dx: float) -> "Event":
        x = self.x.copy()
        x[axis] += dx
        return Event(self.t, x)

    @property
    def r(self) -> float:
        return float(np.linalg.norm(self.x))


@dataclass(frozen=True)
class FourVector:
    """Contravariant four-vector (v0, v) in the (+,-,-,-) signature."""

    v0: float
    v: np.ndarray

    @staticmethod
    def of(v0: float, vx: float = 0.0, vy: float = 0.0, vz: float = 0.0) -> "FourVector":
        return FourVector(float(v0), np.array([vx, vy, vz], dtype=float))

    def minkowski_norm2(self) -> float:
        """v.v with the (+,-,-,-) metric."""
        return float(self.v0 * self.v0 - np.dot(self.v, self.v))

    def as_array(self) -> np.ndarray:
        return np.concatenate(([self.v0], self.v))


@dataclass(frozen=True)
class FieldTensor:
    """Antisymmetric F^{mu nu} (4x4).  The invariant scalar q of the pulsed
    potential is carried alongside the tensor, not inside it."""

    f: np.ndarray
    q: float = 0.0

    def __post_init__(self) -> None:
        f = np.asarray(self.f, dtype=float)
        if f.shape != (4, 4):
            raise ValueError("field tensor must be 4x4")
        if not np.allclose(f, -f.T, atol=1e-12 * (1.0 + np.max(np.abs(f)))):
            raise ValueError("field tensor must be antisymmetric")
        object.__setattr__(self, "f", f)


def lorentz_gamma(v: np.ndarray, c: float = 1.0) -> float:
    """1/sqrt(1 - |v|^2/c^2); raises SuperluminalError at or above c."""
    beta2 = float(np.dot(v, v)) / (c * c)
    if beta2 >= 1.0:
        raise SuperluminalError(f"|v| >= c (beta^2 = {beta2})")
    return 1.0 / np.sqrt(1.0 - beta2)


def four_velocity(v: np.ndarray, c: float = 1.0) -> FourVector:
    """gamma (c, v); Minkowski norm is c^2 for any admissible v."""
    v = np.asarray(v, dtype=float)
    g = lorentz_gamma(v, c)
    return FourVector(g * c, g * v)


def boost_matrix(v: np.ndarray, c: float = 1.0) -> np.ndarray:
    """Matrix of the pure boost taking components into a frame moving at v."""
    v = np.asarray(v, dtype=float)
    g = lorentz_gamma(v, c)
    beta = v / c
    b2 = float(np.dot(beta, beta))
    lam = np.eye(4)
    if b2 == 0.0:
        return lam
    lam[0, 0] = g
    lam[0, 1:] = -g * beta
    lam[1:, 0] = -g * beta
    lam[1:, 1:] = np.eye(3) + (g - 1.0) * np.outer(beta, beta) / b2
    return lam


def boost_event(ev: Event, v: np.ndarray, c: float = 1.0) -> Event:
    """Coordinates of ev in a frame moving with velocity v."""
    lam = boost_matrix(v, c)
    ct_x = lam @ np.concatenate(([c * ev.t], ev.x))
    return Event(float(ct_x[0] / c), ct_x[1:])


def boost_four_vector(u: FourVector, v: np.ndarray, c: float = 1.0) -> FourVector:
    """Components of u in a frame moving with velocity v."""
    lam = boost_matrix(v, c)
    out = lam @ u.as_array()
    return FourVector(float(out[0]), out[1:])


def assemble_field_tensor(e: np.ndarray, b: np.ndarray, q: float = 0.0) -> FieldTensor:
    """Contravariant F^{mu nu} from E and B; q rides alongside."""
    e = np.asarray(e, dtype=float)
    b = np.asarray(b, dtype=float)
    f = np.zeros((4, 4))
    f[1:, 0] = e
    f[0, 1:] = -e
    f[1, 2] = -b[2]
    f[2, 1] = b[2]
    f[1, 3] = b[1]
    f[3, 1] = -b[1]
    f[2, 3] = -b[0]
    f[3, 2] = b[0]
    return FieldTensor(f, float(q))


def fields_from_tensor(tensor: FieldTensor) -> tuple[np.ndarray, np.ndarray]:
    """Inverse of assemble_field_tensor: (E, B)."""
    f = tensor.f
    e = f[1:, 0].copy()
    b = np.array([f[3, 2], f[1, 3], f[2, 1]])
    return e, b


def boost_field_tensor(tensor: FieldTensor, v: np.ndarray, c: float = 1.0) -> FieldTensor:
    """F in a frame moving with velocity v; the scalar q is frame-invariant."""
    lam = boost_matrix(v, c)
    return FieldTensor(lam @ tensor.f @ lam.T, tensor.q)


def tensor_invariants(tensor: FieldTensor) -> tuple[float, float]:
    """(F_munu F^munu, eps^{mu nu a b} F_munu F_ab).

    With this package's conventions the pair evaluates to
    (2 (|B|^2 - |E|^2), -8 E.B); both are unchanged by any boost.
    """
    f_up = tensor.f
    f_down = METRIC @ f_up @ METRIC
    i1 = float(np.einsum("mn,mn->", f_down, f_up))
    i2 = float(np.einsum("mnab,mn,ab->", _EPSILON, f_down, f_down))
    return i1, i2


def four_force(charge: float, tensor: FieldTensor, u: FourVector,
               c: float = 1.0) -> FourVector:
    """Minkowski force (charge/c) F^{mu nu} u_nu on a test charge with
    four-velocity u.  Orthogonal to u by antisymmetry of F."""
    u_down = METRIC @ u.as_array()
    out = (charge / c) * (tensor.f @ u_down)
    return FourVector(float(out[0]), out[1:])
