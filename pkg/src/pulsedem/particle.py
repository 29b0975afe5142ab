"""Fields of a point charge that emits its potential as a pulse train.

In the charge's rest frame the scalar potential is a spherical wave

    phi'(x', t') = Q0 * sum_j f0(omega' (t' - j tau') - k' |x'|) / |x'|

with no vector potential.  One pulse occupies exactly one period, so at any
event at most one train term is active.  The fields that follow are purely
radial, the magnetic field vanishes, and the potential divergence

    q' = Q0 k' * sum_j f0'(...) / |x'|

survives as a frame-invariant scalar.  Lab-frame quantities for a uniformly
moving charge are obtained by boosting events into the rest frame,
evaluating there, and boosting tensors back.

The module also solves two inverse problems from q samples alone: the pulse
period (smallest common zero of the windowed q integral across probe radii)
and the emission profile (radial charge integral of q up to a variable
time).  The same reconstruction with the upper limit pinned to t = 0 only
ever sees the causally dark region and returns zero; it is kept as a
separate routine because the contrast is physically meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import SimulationConstants
from .errors import (AtSourceError, DegenerateFieldError, PeriodNotFoundError,
                     SuperluminalError)
from .pulse import PulseProfile
from .quadrature import bisect, integrate
from .relativity import (Event, FourVector, assemble_field_tensor, boost_event,
                         boost_field_tensor, boost_four_vector,
                         fields_from_tensor)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ParticleSource:
    """A pulsed point charge.

    lifetime is the number of emitted pulses (born at rest-frame t' = 0), or
    None for an eternal train.  v_lab is the constant lab velocity; the rest
    frame coincides with the lab frame when it is zero.
    """

    q0: float
    pulse: PulseProfile
    constants: SimulationConstants
    lifetime: int | None = None
    v_lab: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self) -> None:
        v = np.asarray(self.v_lab, dtype=float)
        object.__setattr__(self, "v_lab", v)
        if float(np.dot(v, v)) >= self.constants.c ** 2:
            raise SuperluminalError("source speed must be below c")
        if self.lifetime is not None and self.lifetime < 1:
            raise ValueError("lifetime must be a positive pulse count or None")

    @property
    def moving(self) -> bool:
        return bool(np.any(self.v_lab != 0.0))


@dataclass(frozen=True)
class FieldSample:
    """E, B and the invariant scalar q at one event."""

    e: np.ndarray
    b: np.ndarray
    q: float
    at: Event


def _train_terms(src: ParticleSource, r, t, with_curvature: bool = False):
    """Active-pulse profile values at radius r and rest time t.

    Returns (f0, df0) or (f0, df0, d2f0) of the single train term whose
    support contains the retarded phase, masked by the source lifetime.
    """
    k = src.constants
    s = (k.omega_prime * np.asarray(t, dtype=float) - k.k_prime * np.asarray(r, dtype=float)) / TWO_PI
    j = np.floor(s)
    u = TWO_PI * (s - j)
    if src.lifetime is None:
        live = 1.0
    else:
        live = ((j >= 0.0) & (j <= src.lifetime - 1)).astype(float)
    f = src.pulse.value(u) * live
    df = src.pulse.derivative(u) * live
    if not with_curvature:
        return f, df
    return f, df, src.pulse.second_derivative(u) * live


def rest_radius(src: ParticleSource, ev: Event) -> float:
    """Distance from the source worldline, measured in its rest frame."""
    if not src.moving:
        return ev.r
    return boost_event(ev, src.v_lab, src.constants.c).r


def rest_potential(src: ParticleSource, ev: Event) -> FourVector:
    """(phi', 0) in the rest frame; raises AtSourceError on the worldline."""
    r = ev.r
    if r == 0.0:
        raise AtSourceError("potential evaluated at the source point")
    f, _ = _train_terms(src, r, ev.t)
    return FourVector(src.q0 * float(f) / r, np.zeros(3))


def rest_fields(src: ParticleSource, ev: Event) -> FieldSample:
    """Radial E', vanishing B', and the invariant q' in the rest frame.

    E' = Q0 [k' f0'(u)/r + f0(u)/r^2] e_r  and  q' = Q0 k' f0'(u)/r with
    u the retarded phase of the active pulse.
    """
    r = ev.r
    if r == 0.0:
        raise AtSourceError("field evaluated at the source point")
    k = src.constants
    f, df = _train_terms(src, r, ev.t)
    e_rad = src.q0 * (k.k_prime * float(df) / r + float(f) / (r * r))
    q = src.q0 * k.k_prime * float(df) / r
    return FieldSample(e_rad * ev.x / r, np.zeros(3), q, ev)


def rest_q_time_derivative(src: ParticleSource, ev: Event) -> float:
    """Closed-form d q'/d t' = Q0 k' omega' f0''(u) / r."""
    r = ev.r
    if r == 0.0:
        raise AtSourceError("field evaluated at the source point")
    k = src.constants
    _, _, d2 = _train_terms(src, r, ev.t, with_curvature=True)
    return src.q0 * k.k_prime * k.omega_prime * float(d2) / r


def lab_potential(src: ParticleSource, ev: Event) -> FourVector:
    """Four-potential in the lab frame of a uniformly moving source."""
    if not src.moving:
        return rest_potential(src, ev)
    c = src.constants.c
    rest_ev = boost_event(ev, src.v_lab, c)
    phi = rest_potential(src, rest_ev)
    return boost_four_vector(phi, -src.v_lab, c)


def lab_fields(src: ParticleSource, ev: Event) -> FieldSample:
    """E, B and the invariant q in the lab frame.

    The field tensor is assembled in the rest frame and boosted back; q is a
    scalar and rides along unchanged.
    """
    if not src.moving:
        return rest_fields(src, ev)
    c = src.constants.c
    rest_ev = boost_event(ev, src.v_lab, c)
    rest = rest_fields(src, rest_ev)
    tensor = assemble_field_tensor(rest.e, rest.b, rest.q)
    lab_tensor = boost_field_tensor(tensor, -src.v_lab, c)
    e, b = fields_from_tensor(lab_tensor)
    return FieldSample(e, b, rest.q, ev)


def effective_charge(src: ParticleSource, t: float) -> float:
    """Q0 * sum_j f0(omega' (t - j tau')), the instantaneous source strength.

    No retardation enters; this is the charge seen by the windowed Gauss
    law.  Its average over any full period is Q0.
    """
    k = src.constants
    s = k.omega_prime * t / TWO_PI
    j = math.floor(s)
    if src.lifetime is not None and not (0 <= j <= src.lifetime - 1):
        return 0.0
    return src.q0 * float(src.pulse.value(TWO_PI * (s - j)))


def rest_field_sampler(src: ParticleSource):
    """Uniform (Event -> FieldSample) sampler in the rest frame."""
    return lambda ev: rest_fields(src, ev)


def lab_field_sampler(src: ParticleSource):
    """Uniform (Event -> FieldSample) sampler in the lab frame."""
    return lambda ev: lab_fields(src, ev)


def rest_potential_sampler(src: ParticleSource):
    return lambda ev: rest_potential(src, ev)


def lab_potential_sampler(src: ParticleSource):
    return lambda ev: lab_potential(src, ev)


def rest_q_sampler(src: ParticleSource):
    """Scalar q' sampler used by the inverse problems."""
    return lambda ev: rest_fields(src, ev).q


def pulse_breakpoints(src: ParticleSource, x: np.ndarray, t_lo: float,
                      t_hi: float) -> list[float]:
    """Times in [t_lo, t_hi] where a pulse edge passes radius |x|.

    At these instants the retarded phase crosses a support boundary; feeding
    them to the quadrature keeps every panel smooth.
    """
    k = src.constants
    r = float(np.linalg.norm(np.asarray(x, dtype=float)))
    n_lo = math.ceil((k.omega_prime * t_lo - k.k_prime * r) / TWO_PI)
    n_hi = math.floor((k.omega_prime * t_hi - k.k_prime * r) / TWO_PI)
    return [(TWO_PI * n + k.k_prime * r) / k.omega_prime
            for n in range(n_lo, n_hi + 1)]


# ---------------------------------------------------------------------------
# inverse problems from q samples
# ---------------------------------------------------------------------------

# Probe-radius multipliers for the period search.  Irrational spacing keeps
# the retarded phases of the probes incommensurate, so the only zero of the
# windowed q integral shared by all probes is the true period.
_PROBE_FACTORS = (1.0, 0.5 * (1.0 + math.sqrt(5.0)) - 0.5, math.sqrt(2.0))

_DEGENERATE_FLOOR = 1e-13


def _window_integral_zeros(q_of_t, scan_upper: float, n_scan: int,
                           quad_tol: float) -> tuple[list[float], float]:
    """Sign-change zeros of G(tau) = int_0^tau q dt on (0, scan_upper].

    Returns (refined zeros, max |q| seen on the scan grid).
    """
    edges = np.linspace(0.0, scan_upper, n_scan + 1)
    partial = [integrate(q_of_t, a, b, tol=quad_tol)
               for a, b in zip(edges[:-1], edges[1:])]
    g = np.concatenate(([0.0], np.cumsum(partial)))
    peak = max(abs(q_of_t(t)) for t in edges)

    zeros = []
    for i in range(1, n_scan):
        g_lo, g_hi = g[i], g[i + 1]
        if g_lo == 0.0 or (g_lo < 0.0) == (g_hi < 0.0):
            continue

        def g_local(tau, _i=i, _g=g_lo):
            return _g + integrate(q_of_t, edges[_i], tau, tol=quad_tol)

        zeros.append(bisect(g_local, edges[i], edges[i + 1], tol=1e-13))
    return zeros, peak


def recover_tau(q_sampler, x_probe: np.ndarray, scan_upper: float,
                n_scan: int = 1024, quad_tol: float = 1e-12,
                match_tol: float = 1e-7) -> float:
    """Pulse period from q samples: the smallest tau > 0 at which the
    integral of q over [0, tau] vanishes at every probe radius.

    A single radius admits spurious zeros (the symmetric pulse revisits each
    potential value once per period), so the search intersects the zero sets
    of several incommensurate probe radii scaled from x_probe.  Raises
    DegenerateFieldError when q vanishes identically (every tau is a zero)
    and PeriodNotFoundError when no common zero lies in (0, scan_upper].
    """
    x_probe = np.asarray(x_probe, dtype=float)
    if float(np.dot(x_probe, x_probe)) == 0.0:
        raise AtSourceError("probe must sit away from the source")

    zero_sets = []
    peak = 0.0
    for fac in _PROBE_FACTORS:
        x = fac * x_probe

        def q_of_t(t, _x=x):
            return q_sampler(Event(float(t), _x))

        zeros, probe_peak = _window_integral_zeros(
            q_of_t, scan_upper, n_scan, quad_tol)
        peak = max(peak, probe_peak)
        if zeros:
            zero_sets.append(zeros)

    if peak < _DEGENERATE_FLOOR:
        raise DegenerateFieldError(
            "q vanishes identically; every candidate period integrates to "
            "zero and no period can be recovered")
    if len(zero_sets) < 2:
        raise PeriodNotFoundError(
            f"fewer than two probes produced zeros in (0, {scan_upper}]")

    for candidate in zero_sets[0]:
        matched = [candidate]
        for other in zero_sets[1:]:
            hits = [z for z in other if abs(z - candidate) < match_tol]
            if not hits:
                matched = None
                break
            matched.append(min(hits, key=lambda z: abs(z - candidate)))
        if matched is not None:
            return float(np.mean(matched))
    raise PeriodNotFoundError(
        f"no zero shared by all probes in (0, {scan_upper}]")


def recover_pulse(q_sampler, x_probe: np.ndarray,
                  constants: SimulationConstants, q0: float,
                  n: int = 256, quad_tol: float = 1e-12):
    """Reconstruct f0 over one full support from q samples at one radius.

    Uses  f0(omega' t0 - k' r) = (r c / Q0) * int_{t_b}^{t0} q dt  with the
    base time t_b = r/c, where the retarded phase vanishes.  Returns
    (phases, values) with phases spanning [0, 2 pi].
    """
    x_probe = np.asarray(x_probe, dtype=float)
    r = float(np.linalg.norm(x_probe))
    if r == 0.0:
        raise AtSourceError("probe must sit away from the source")
    k = constants
    t_base = r / k.c
    phases = np.linspace(0.0, TWO_PI, n)
    times = t_base + phases / k.omega_prime

    def q_of_t(t):
        return q_sampler(Event(float(t), x_probe))

    values = np.empty(n)
    values[0] = 0.0
    acc = 0.0
    for i in range(1, n):
        acc += integrate(q_of_t, times[i - 1], times[i], tol=quad_tol)
        values[i] = acc
    return phases, (r * k.c / q0) * values


def recover_pulse_fixed_origin(q_sampler, constants: SimulationConstants,
                               q0: float, n: int = 64,
                               t_floor: float | None = None,
                               quad_tol: float = 1e-12):
    """Literal reconstruction with the time integral capped at t = 0.

    For each phase r0 < 0 the probe radius is |r0|/k' and the value is
    -(c^2 tau' r0 / (2 pi Q0)) * int_{t_floor}^0 q dt.  For a source born at
    t = 0 the integrand is causally dark on the whole range, so the output
    is identically zero; the routine exists to document that contrast with
    the variable-limit reconstruction.
    """
    k = constants
    if t_floor is None:
        t_floor = -4.0 * k.tau_prime
    phases = np.linspace(-TWO_PI, -TWO_PI / n, n)
    values = np.empty(n)
    for i, r0 in enumerate(phases):
        x = np.array([abs(r0) / k.k_prime, 0.0, 0.0])

        def q_of_t(t, _x=x):
            return q_sampler(Event(float(t), _x))

        integral = integrate(q_of_t, t_floor, 0.0, tol=quad_tol)
        values[i] = -(k.c ** 2 * k.tau_prime * r0 / (TWO_PI * q0)) * integral
    return phases, values
