"""Covariant time averaging over one pulse period.

The operator is a plain window mean at a fixed spatial point,

    A[X](x, T) = (1/tau) * integral_T^{T+tau} X(x, t) dt,

with tau the pulse period measured in the averaging frame: tau' in the
source rest frame and gamma tau' in a lab frame where the source moves.
For a moving source the window follows the source, i.e. the average is
taken along the lab worldline of a fixed rest-frame point; the measure
dt sqrt(1 - v^2/c^2) along that worldline equals rest time, which is what
makes the averaged four-potential transform as a four-vector.

Averaging commutes with derivatives (fixed window), annihilates the
invariant q of the pulsed particle, and turns its potential into the
static Coulomb value.  It is not multiplicative: the average of q E_r is
the radiated flux even though the averages of q and of E x B vanish.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import SimulationConstants
from .fd import d_dt, d_dx
from .particle import (FieldSample, ParticleSource, pulse_breakpoints,
                       rest_field_sampler, rest_potential_sampler)
from .quadrature import integrate
from .relativity import Event, FourVector, boost_event, boost_four_vector, lorentz_gamma


@dataclass(frozen=True)
class AveragingWindow:
    """Window [T, T + tau]; tau = gamma * tau_rest ties the lab length of
    the window to one rest-frame pulse period."""

    T: float
    tau: float
    tau_rest: float
    gamma: float

    def __post_init__(self) -> None:
        if self.tau <= 0.0 or self.tau_rest <= 0.0:
            raise ValueError("window length must be positive")
        if abs(self.tau - self.gamma * self.tau_rest) > 1e-12 * self.tau:
            raise ValueError("tau must equal gamma * tau_rest")


def rest_window(T: float, constants: SimulationConstants) -> AveragingWindow:
    return AveragingWindow(T, constants.tau_prime, constants.tau_prime, 1.0)


def lab_window(T: float, constants: SimulationConstants,
               v: np.ndarray) -> AveragingWindow:
    g = lorentz_gamma(np.asarray(v, dtype=float), constants.c)
    return AveragingWindow(T, g * constants.tau_prime, constants.tau_prime, g)


def _pack(value):
    """Map supported sampler values onto flat arrays (and back via _unpack)."""
    if isinstance(value, FieldSample):
        return np.concatenate((value.e, value.b, [value.q])), "fieldsample"
    if isinstance(value, FourVector):
        return value.as_array(), "fourvector"
    arr = np.asarray(value, dtype=float)
    return arr, "array" if arr.ndim else "scalar"


def _unpack(arr, kind):
    if kind == "fieldsample":
        return FieldSample(arr[0:3], arr[3:6], float(arr[6]), None)
    if kind == "fourvector":
        return FourVector(float(arr[0]), arr[1:4])
    if kind == "scalar":
        return float(arr)
    return arr


def time_average(sampler, x: np.ndarray, window: AveragingWindow,
                 tol: float = 1e-12, breakpoints=None):
    """Window mean of sampler(Event(t, x)) over [T, T + tau].

    The integral is adaptive; breakpoints (e.g. pulse-edge times from
    pulse_breakpoints) seed panels so each stays smooth.  Values may be
    floats, arrays, FourVector or FieldSample; averaging is componentwise.
    """
    x = np.asarray(x, dtype=float)
    probe, kind = _pack(sampler(Event(window.T, x)))

    def fn(t):
        arr, _ = _pack(sampler(Event(float(t), x)))
        return arr

    scale = max(1.0, float(np.max(np.abs(probe))))
    total = integrate(fn, window.T, window.T + window.tau,
                      tol=tol * scale * window.tau, points=breakpoints)
    return _unpack(np.asarray(total) / window.tau, kind)


def comoving_time_average(sampler, x_rest: np.ndarray,
                          constants: SimulationConstants, v: np.ndarray,
                          t_rest_start: float, tol: float = 1e-12,
                          breakpoints=None):
    """Average a lab-frame sampler along the worldline of a fixed rest point.

    The window covers one rest period starting at rest time t_rest_start;
    lab events are the boosts of (t', x_rest), so the lab window length is
    gamma tau'.  This is the averaging a comoving observer performs.
    """
    x_rest = np.asarray(x_rest, dtype=float)
    v = np.asarray(v, dtype=float)
    c = constants.c

    def lab_event(t_rest: float) -> Event:
        return boost_event(Event(float(t_rest), x_rest), -v, c)

    probe, kind = _pack(sampler(lab_event(t_rest_start)))

    def fn(t_rest):
        arr, _ = _pack(sampler(lab_event(t_rest)))
        return arr

    scale = max(1.0, float(np.max(np.abs(probe))))
    total = integrate(fn, t_rest_start, t_rest_start + constants.tau_prime,
                      tol=tol * scale * constants.tau_prime, points=breakpoints)
    return _unpack(np.asarray(total) / constants.tau_prime, kind)


@dataclass(frozen=True)
class AveragedQuantities:
    """Window means of the rest-frame particle quantities."""

    aphi: float
    ae: np.ndarray
    ab: np.ndarray
    aq: float


def averaged_particle_quantities(src: ParticleSource, x: np.ndarray,
                                 method: str = "tiling",
                                 T: float | None = None,
                                 tol: float = 1e-12) -> AveragedQuantities:
    """A[phi'], A[E'], A[B'], A[q'] at a rest-frame point.

    method "tiling" uses the closed forms that follow from the unit-mean
    pulse train (Coulomb potential Q0/r, its gradient, and zero for B and
    q); method "quadrature" integrates the sampled fields honestly.  The
    two must agree, which the verification scenarios check explicitly.
    """
    x = np.asarray(x, dtype=float)
    r = float(np.linalg.norm(x))
    if r == 0.0:
        raise ValueError("averaging point must sit away from the source")
    if method == "tiling":
        aphi = src.q0 / r
        return AveragedQuantities(aphi, (src.q0 / r ** 3) * x, np.zeros(3), 0.0)
    if method != "quadrature":
        raise ValueError(f"unknown method {method!r}")

    window = rest_window(r / src.constants.c if T is None else T, src.constants)
    breaks = pulse_breakpoints(src, x, window.T, window.T + window.tau)
    aphi = time_average(lambda ev: rest_potential_sampler(src)(ev).v0,
                        x, window, tol=tol, breakpoints=breaks)
    fields = time_average(rest_field_sampler(src), x, window,
                          tol=tol, breakpoints=breaks)
    return AveragedQuantities(float(aphi), fields.e, fields.b, fields.q)


def commutation_residual(sampler, x: np.ndarray, window: AveragingWindow,
                         h: float, tol: float = 1e-12,
                         breakpoints=None) -> float:
    """max over the four coordinate directions of
    | d/dx_mu A[sampler] - A[d/dx_mu sampler] |.

    Scalar samplers only.  Both sides use the same centered stencil, so the
    residual isolates the (vanishing) commutator rather than truncation.
    """
    x = np.asarray(x, dtype=float)
    residuals = []

    # spatial directions
    for ax in range(3):
        outer_p = time_average(sampler, x + h * np.eye(3)[ax], window,
                               tol=tol, breakpoints=breakpoints)
        outer_m = time_average(sampler, x - h * np.eye(3)[ax], window,
                               tol=tol, breakpoints=breakpoints)
        outer = (outer_p - outer_m) / (2.0 * h)
        inner = time_average(lambda ev, _ax=ax: float(d_dx(sampler, ev, _ax, h)),
                             x, window, tol=tol, breakpoints=breakpoints)
        residuals.append(abs(outer - inner))

    # time direction: shift the window start
    w_p = AveragingWindow(window.T + h, window.tau, window.tau_rest, window.gamma)
    w_m = AveragingWindow(window.T - h, window.tau, window.tau_rest, window.gamma)
    outer_t = (time_average(sampler, x, w_p, tol=tol, breakpoints=breakpoints)
               - time_average(sampler, x, w_m, tol=tol, breakpoints=breakpoints)) / (2.0 * h)
    inner_t = time_average(lambda ev: float(d_dt(sampler, ev, h)), x, window,
                           tol=tol, breakpoints=breakpoints)
    residuals.append(abs(outer_t - inner_t))
    return max(residuals)


def window_endpoint_derivative(sampler, x: np.ndarray,
                               window: AveragingWindow) -> float:
    """The exact identity A[dg/dt](x, T) = (g(T+tau) - g(T)) / tau."""
    x = np.asarray(x, dtype=float)
    return (float(sampler(Event(window.T + window.tau, x)))
            - float(sampler(Event(window.T, x)))) / window.tau


def averaged_lab_potential(src: ParticleSource, ev: Event,
                           tol: float = 1e-12) -> FourVector:
    """The time-averaged four-potential of a moving source, as a lab field.

    Computed covariantly: average the rest-frame potential over one period
    at the boosted position, then boost the resulting four-vector back.
    The result is the classical potential of a uniformly moving charge and
    obeys the Lorenz condition, which the scenarios verify by finite
    differences.
    """
    c = src.constants.c
    rest_ev = boost_event(ev, src.v_lab, c) if src.moving else ev
    r = rest_ev.r
    if r == 0.0:
        raise ValueError("averaging point must sit on neither the worldline")
    window = rest_window(r / c, src.constants)
    breaks = pulse_breakpoints(src, rest_ev.x, window.T, window.T + window.tau)
    aphi = time_average(lambda e: rest_potential_sampler(src)(e).v0,
                        rest_ev.x, window, tol=tol, breakpoints=breaks)
    rest_avg = FourVector(float(aphi), np.zeros(3))
    if not src.moving:
        return rest_avg
    return boost_four_vector(rest_avg, -src.v_lab, c)
