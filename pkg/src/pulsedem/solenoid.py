"""Retarded vector potential of a finite cylindrical current sheet.

The source is a cylinder of radius ``radius`` and length ``length`` whose
lateral surface carries an azimuthal current density

    K(t) = sigma * v_drift * m(t - t_on) * phi_hat,

zero before the switch-on time.  The modulation m is either the constant 1
(steady supply) or the calibrated pulse train, which has unit window mean,
so the time-averaged current is sigma * v_drift in both cases.

The potential is the retarded surface integral

    A(x, t) = (1/c) * surface_integral K(x_s, t - |x - x_s|/c) / |x - x_s| dS

with no scalar part (the sheet carries no net charge).  Axisymmetry reduces
A to a single scalar A_phi(R, z, t).  Fields follow by centered finite
differences: the wave field E_w = -(1/c) dA/dt and B_w = curl A.  Because
A = A_phi(R, z) phi_hat has no azimuthal dependence, div A vanishes, so the
sheet radiates pure E_w/B_w waves with no scalar-invariant component.

Evaluation cost is dominated by the surface quadrature, so the geometric
kernel (node distances and 1/rho weights) is cached per observation point;
each time sample then costs one vectorized modulation lookup.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .averaging import rest_window, time_average
from .constants import SimulationConstants
from .errors import AtSourceError, TooCloseToSourceError
from .pulse import PulseProfile, train_value
from .quadrature import fixed_panel_nodes
from .relativity import Event

_SURFACE_EPS = 1e-9


@dataclass(frozen=True)
class SolenoidSpec:
    """Finite cylindrical current sheet, axis along z, centered at the origin.

    modulation None means a steady (unmodulated) supply; t_on None means the
    current has been flowing forever.  n_phi, n_z_panels and z_order set the
    surface quadrature resolution; they are part of the spec so cached
    kernels stay consistent across calls.
    """

    radius: float
    length: float
    sigma: float
    v_drift: float
    constants: SimulationConstants
    modulation: PulseProfile | None = None
    t_on: float | None = None
    n_phi: int = 64
    n_z_panels: int = 100
    z_order: int = 12

    def __post_init__(self) -> None:
        if self.radius <= 0.0 or self.length <= 0.0:
            raise ValueError("radius and length must be positive")
        if not 0.0 < self.v_drift < self.constants.c:
            raise ValueError("drift speed must lie strictly between 0 and c")
        if self.n_phi < 4 or self.n_z_panels < 1 or self.z_order < 2:
            raise ValueError("quadrature resolution too coarse")

    @property
    def interior_field(self) -> float:
        """Steady interior B of the infinite-length idealization, 4 pi sigma v / c."""
        return 4.0 * math.pi * self.sigma * self.v_drift / self.constants.c

    def shell_distance(self, r_obs: float, z_obs: float) -> float:
        """Minimum distance from an observation point to the current sheet."""
        dz = max(0.0, abs(z_obs) - 0.5 * self.length)
        return math.hypot(r_obs - self.radius, dz)


def modulation_factor(spec: SolenoidSpec, t):
    """Supply factor m(t - t_on), zero before switch-on, window mean 1."""
    since_on = np.asarray(t, dtype=float) - (spec.t_on if spec.t_on is not None else 0.0)
    if spec.modulation is None:
        m = np.ones_like(since_on)
    else:
        m = np.asarray(
            train_value(spec.modulation, spec.constants.omega_prime * since_on),
            dtype=float)
    if spec.t_on is not None:
        m = np.where(since_on >= 0.0, m, 0.0)
    return float(m) if m.ndim == 0 else m


def surface_current(spec: SolenoidSpec, point: np.ndarray, t: float) -> np.ndarray:
    """Surface current density K at a point of the sheet (current per area)."""
    point = np.asarray(point, dtype=float)
    r = math.hypot(point[0], point[1])
    if abs(r - spec.radius) > 1e-9 * spec.radius or abs(point[2]) > 0.5 * spec.length:
        raise ValueError("point does not lie on the cylinder surface")
    phi_hat = np.array([-point[1] / r, point[0] / r, 0.0])
    return spec.sigma * spec.v_drift * float(modulation_factor(spec, t)) * phi_hat


@lru_cache(maxsize=256)
def _surface_kernel(spec: SolenoidSpec, r_obs: float, z_obs: float):
    """Distances rho_i and weights w_i of the (phi, z) product rule.

    The observer sits at azimuth 0 without loss of generality.  The phi rule
    is a uniform midpoint rule (the integrand is smooth and periodic in phi);
    the z rule is composite Gauss-Legendre.  With these cached, the retarded
    integral at any time t reduces to w @ m(t - rho/c).
    """
    dphi = 2.0 * math.pi / spec.n_phi
    phi = (np.arange(spec.n_phi) + 0.5) * dphi
    z_nodes, z_weights = fixed_panel_nodes(
        -0.5 * spec.length, 0.5 * spec.length, spec.n_z_panels, spec.z_order)

    cos_phi = np.cos(phi)
    dist2 = (r_obs ** 2 + spec.radius ** 2
             - 2.0 * r_obs * spec.radius * cos_phi[:, None]
             + (z_obs - z_nodes[None, :]) ** 2)
    rho = np.sqrt(dist2)
    # (R_S / c) cos(phi) dphi dz / rho; the cos projects K onto the
    # observer's phi_hat, odd components cancel by symmetry
    weights = (spec.radius / spec.constants.c) * (
        cos_phi[:, None] * dphi * z_weights[None, :]) / rho
    return rho.ravel(), weights.ravel()


def a_phi(spec: SolenoidSpec, r_obs: float, z_obs: float, t: float) -> float:
    """Azimuthal component of the retarded vector potential at (R, z, t)."""
    r_obs = float(r_obs)
    z_obs = float(z_obs)
    if spec.shell_distance(r_obs, z_obs) < _SURFACE_EPS:
        raise AtSourceError("observation point lies on the current sheet")
    rho, weights = _surface_kernel(spec, r_obs, z_obs)
    retarded = t - rho / spec.constants.c
    m = modulation_factor(spec, retarded)
    return spec.sigma * spec.v_drift * float(weights @ m)


def vector_potential(spec: SolenoidSpec, ev: Event) -> np.ndarray:
    """Cartesian vector potential at an observation event."""
    x, y, z = ev.x
    r_obs = math.hypot(x, y)
    value = a_phi(spec, r_obs, z, ev.t)
    if r_obs == 0.0:
        return np.zeros(3)
    phi_hat = np.array([-y / r_obs, x / r_obs, 0.0])
    return value * phi_hat


def solenoid_fields(spec: SolenoidSpec, ev: Event, h: float = 1e-3):
    """Wave fields (E_w, B_w) by centered differences of the potential.

    E_w = -(1/c) dA/dt and B_w = curl A, reduced to the axisymmetric
    component formulas B_R = -dA_phi/dz and B_z = (1/R) d(R A_phi)/dR.
    On the axis A_phi vanishes identically, so E_w = 0, B_R = 0 and B_z
    takes its limit value 2 A_phi(h)/h there.
    """
    x, y, z = ev.x
    r_obs = math.hypot(x, y)
    t = ev.t
    if spec.shell_distance(r_obs, z) < 10.0 * h:
        raise TooCloseToSourceError(
            f"stencil step {h} too large {spec.shell_distance(r_obs, z):.3e} "
            "from the sheet")
    c = spec.constants.c

    if r_obs < h:
        e_phi = 0.0
        b_r = 0.0
        b_z = 2.0 * a_phi(spec, h, z, t) / h
        phi_hat = np.zeros(3)
        r_hat = np.zeros(3)
    else:
        e_phi = -(a_phi(spec, r_obs, z, t + h)
                  - a_phi(spec, r_obs, z, t - h)) / (2.0 * h * c)
        b_r = -(a_phi(spec, r_obs, z + h, t)
                - a_phi(spec, r_obs, z - h, t)) / (2.0 * h)
        b_z = ((r_obs + h) * a_phi(spec, r_obs + h, z, t)
               - (r_obs - h) * a_phi(spec, r_obs - h, z, t)) / (2.0 * h * r_obs)
        phi_hat = np.array([-y / r_obs, x / r_obs, 0.0])
        r_hat = np.array([x / r_obs, y / r_obs, 0.0])

    e_w = e_phi * phi_hat
    b_w = b_r * r_hat + np.array([0.0, 0.0, b_z])
    return e_w, b_w


def field_sampler(spec: SolenoidSpec, h: float = 1e-3):
    """(Event) -> (E_w, B_w) closure for averaging and scans."""
    def sample(ev: Event):
        return solenoid_fields(spec, ev, h)
    return sample


def averaged_b(spec: SolenoidSpec, r_obs: float, z_obs: float,
               T: float = 0.0, h: float = 1e-3, tol: float = 1e-9) -> np.ndarray:
    """Window mean of B_w over one modulation period starting at T."""
    window = rest_window(T, spec.constants)

    def sample(ev: Event):
        return solenoid_fields(spec, ev, h)[1]

    x = np.array([r_obs, 0.0, z_obs])
    return time_average(sample, x, window, tol=tol)


def averaged_a_phi(spec: SolenoidSpec, r_obs: float, z_obs: float,
                   T: float = 0.0, tol: float = 1e-10) -> float:
    """Window mean of A_phi over one modulation period starting at T."""
    window = rest_window(T, spec.constants)

    def sample(ev: Event):
        return a_phi(spec, r_obs, z_obs, ev.t)

    x = np.array([r_obs, 0.0, z_obs])
    return float(time_average(sample, x, window, tol=tol))


@dataclass(frozen=True)
class LoopSpec:
    """Circular loop of radius R in the plane z, centered on the axis,
    oriented along +phi."""

    R: float
    z: float = 0.0

    def __post_init__(self) -> None:
        if self.R <= 0.0:
            raise ValueError("loop radius must be positive")


def circulation(spec: SolenoidSpec, loop: LoopSpec, *,
                t: float | None = None, T: float | None = None,
                tol: float = 1e-10) -> float:
    """Line integral of A (or of its window mean) around the loop.

    By axisymmetry the integral is 2 pi R A_phi(R, z, .).  Pass t for the
    instantaneous circulation or T for the averaged one (window [T, T+tau]).
    """
    if (t is None) == (T is None):
        raise ValueError("pass exactly one of t (instantaneous) or T (averaged)")
    if t is not None:
        value = a_phi(spec, loop.R, loop.z, t)
    else:
        value = averaged_a_phi(spec, loop.R, loop.z, T, tol=tol)
    return 2.0 * math.pi * loop.R * value


def flux_through_loop(spec: SolenoidSpec, loop: LoopSpec, t: float = 0.0,
                      *, h: float = 1e-3, n_r_panels: int = 8,
                      r_order: int = 12, sheet_margin: float = 0.04) -> float:
    """Magnetic flux through the loop by direct B_z quadrature over the disk.

    This is the independent counterpart of circulation(): Stokes makes the
    two agree, and tests check that without assuming it.  B_z jumps across
    the sheet and the surface quadrature cannot resolve points closer to it
    than a few node spacings, so a strip of half-width sheet_margin * radius
    around the sheet is bridged by one-sided constant extrapolation; for the
    default margin that contributes well under the percent level.  Each side
    of the strip uses a fixed composite rule (the integrand is smooth there).
    """
    def integrand(r: float) -> float:
        ev = Event(t, np.array([float(r), 0.0, loop.z]))
        return 2.0 * math.pi * float(r) * solenoid_fields(spec, ev, h)[1][2]

    def fixed_rule(a: float, b: float) -> float:
        nodes, weights = fixed_panel_nodes(a, b, n_r_panels, r_order)
        return float(sum(w * integrand(r) for r, w in zip(nodes, weights)))

    delta = sheet_margin * spec.radius
    if loop.R <= spec.radius - delta:
        return fixed_rule(0.0, loop.R)
    if loop.R < spec.radius + 2.0 * delta:
        raise ValueError("loop radius too close to the sheet for the disk rule")
    inner = fixed_rule(0.0, spec.radius - delta)
    outer = fixed_rule(spec.radius + delta, loop.R)
    strip = delta * (integrand(spec.radius - delta) + integrand(spec.radius + delta))
    return inner + outer + strip


def causality_front(spec: SolenoidSpec, r_obs: float, z_obs: float,
                    h: float = 1e-3, n_samples: int = 12):
    """Switch-on arrival time at a point and the largest field seen before it.

    arrival = t_on + (distance to the sheet)/c.  The pre-arrival scan stays
    2h clear of the front so the stencil itself cannot cross it.  Requires a
    finite switch-on time.
    """
    if spec.t_on is None:
        raise ValueError("causality front needs a finite switch-on time")
    dist = spec.shell_distance(float(r_obs), float(z_obs))
    arrival = spec.t_on + dist / spec.constants.c

    t_lo = spec.t_on - 0.5 * spec.constants.tau_prime
    t_hi = arrival - 2.0 * h
    worst = 0.0
    if t_hi > t_lo:
        for t in np.linspace(t_lo, t_hi, n_samples):
            e_w, b_w = solenoid_fields(spec, Event(float(t), np.array([r_obs, 0.0, z_obs])), h)
            worst = max(worst, float(np.linalg.norm(e_w) + np.linalg.norm(b_w)))
    return arrival, worst


def ampere_loop_average(spec: SolenoidSpec, r_inner: float, r_outer: float,
                        z_obs: float = 0.0, T: float = 0.0,
                        h: float = 1e-3, tol: float = 1e-9):
    """Both sides of the averaged circulation law on an axial rectangle.

    The rectangle lies in a plane through the axis, axial sides of length d
    at radii r_inner < r_outer.  The line integral of the averaged B reduces
    to d * (A[B_z](r_inner) - A[B_z](r_outer)); the enclosed averaged current
    is sigma v_drift d when the sheet threads the rectangle and zero when it
    does not.  Returns (lhs, rhs) with the common factor d divided out.
    """
    if not 0.0 <= r_inner < r_outer:
        raise ValueError("need 0 <= r_inner < r_outer")
    bz_in = averaged_b(spec, r_inner, z_obs, T, h=h, tol=tol)[2]
    bz_out = averaged_b(spec, r_outer, z_obs, T, h=h, tol=tol)[2]
    lhs = bz_in - bz_out
    spans = r_inner < spec.radius < r_outer
    rhs = spec.interior_field if spans else 0.0
    return lhs, rhs


def steady_axis_field(spec: SolenoidSpec, z_obs: float = 0.0) -> float:
    """Analytic on-axis B_z of the steady finite sheet (oracle, no quadrature).

    Superposition of current rings: B_z(z) = (2 pi sigma v / c) *
    [ (L/2 - z)/sqrt((L/2 - z)^2 + R^2) + (L/2 + z)/sqrt((L/2 + z)^2 + R^2) ].
    """
    half = 0.5 * spec.length
    pref = 2.0 * math.pi * spec.sigma * spec.v_drift / spec.constants.c
    up = (half - z_obs) / math.hypot(half - z_obs, spec.radius)
    dn = (half + z_obs) / math.hypot(half + z_obs, spec.radius)
    return pref * (up + dn)


def gauge_residual(spec: SolenoidSpec, ev: Event, h: float = 1e-3) -> float:
    """Divergence of A by centered differences.

    The scalar potential of the sheet is zero and A has no azimuthal
    dependence, so the four-divergence invariant reduces to div A, which
    vanishes identically; the returned value measures pure stencil noise.
    """
    total = 0.0
    for axis in range(3):
        step = np.zeros(3)
        step[axis] = h
        plus = vector_potential(spec, Event(ev.t, ev.x + step))[axis]
        minus = vector_potential(spec, Event(ev.t, ev.x - step))[axis]
        total += (plus - minus) / (2.0 * h)
    return total
