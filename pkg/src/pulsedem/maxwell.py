"""Finite-difference residuals of the modified Maxwell system.

Away from sources the pulsed fields must satisfy

    div E + (1/c) dq/dt            = 0      (Gauss with q term)
    curl E + (1/c) dB/dt           = 0      (Faraday, unchanged)
    div B                          = 0
    curl B - (1/c) dE/dt - grad q  = 0      (Ampere with q term)

and the four-potential obeys the componentwise wave equation
lap A^mu - (1/c^2) d2 A^mu/dt2 = 0.  The two formulations are the same
system in different variables, so their residuals vanish together; both
are discretized with centered second-order stencils and must shrink like
h^2 when the step is halved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateResidualError, TooCloseToSourceError
from .relativity import Event

# Residuals below this floor are rounding noise; order estimates on them
# would be meaningless.
NOISE_FLOOR = 1e-11


@dataclass(frozen=True)
class ResidualReport:
    """Residuals of the four field equations at one event and step."""

    gauss: float
    faraday: np.ndarray
    div_b: float
    ampere: np.ndarray
    h: float

    @property
    def max_abs(self) -> float:
        return max(abs(self.gauss), float(np.max(np.abs(self.faraday))),
                   abs(self.div_b), float(np.max(np.abs(self.ampere))))

    def as_vector(self) -> np.ndarray:
        """All eight residual components in a fixed order."""
        return np.concatenate(([self.gauss], self.faraday,
                               [self.div_b], self.ampere))


def _stencil_samples(sampler, ev: Event, h: float):
    """Field samples at the nine points of the first-order stencil."""
    center = sampler(ev)
    t_p, t_m = sampler(ev.shift_t(h)), sampler(ev.shift_t(-h))
    x_p = [sampler(ev.shift_x(ax, h)) for ax in range(3)]
    x_m = [sampler(ev.shift_x(ax, -h)) for ax in range(3)]
    return center, t_p, t_m, x_p, x_m


def maxwell_residuals(sampler, ev: Event, h: float, c: float = 1.0,
                      clearance: float | None = None) -> ResidualReport:
    """Centered residuals of all four equations from a FieldSample sampler.

    clearance, when given, is the distance from the event to the nearest
    source; the stencil refuses to straddle it.
    """
    if clearance is not None and clearance < 10.0 * h:
        raise TooCloseToSourceError(
            f"clearance {clearance:.3e} < 10 h = {10 * h:.3e}")
    _, t_p, t_m, x_p, x_m = _stencil_samples(sampler, ev, h)

    de_dt = (t_p.e - t_m.e) / (2.0 * h)
    db_dt = (t_p.b - t_m.b) / (2.0 * h)
    dq_dt = (t_p.q - t_m.q) / (2.0 * h)
    de_dx = [(x_p[ax].e - x_m[ax].e) / (2.0 * h) for ax in range(3)]
    db_dx = [(x_p[ax].b - x_m[ax].b) / (2.0 * h) for ax in range(3)]
    grad_q = np.array([(x_p[ax].q - x_m[ax].q) / (2.0 * h) for ax in range(3)])

    div_e = sum(de_dx[ax][ax] for ax in range(3))
    div_b = sum(db_dx[ax][ax] for ax in range(3))
    curl_e = np.array([de_dx[1][2] - de_dx[2][1],
                       de_dx[2][0] - de_dx[0][2],
                       de_dx[0][1] - de_dx[1][0]])
    curl_b = np.array([db_dx[1][2] - db_dx[2][1],
                       db_dx[2][0] - db_dx[0][2],
                       db_dx[0][1] - db_dx[1][0]])

    return ResidualReport(
        gauss=float(div_e + dq_dt / c),
        faraday=curl_e + db_dt / c,
        div_b=float(div_b),
        ampere=curl_b - de_dt / c - grad_q,
        h=h,
    )


def wave_residual(potential_sampler, ev: Event, h: float, c: float = 1.0,
                  clearance: float | None = None) -> np.ndarray:
    """Componentwise lap A^mu - (1/c^2) d2A^mu/dt2 from a FourVector sampler."""
    if clearance is not None and clearance < 10.0 * h:
        raise TooCloseToSourceError(
            f"clearance {clearance:.3e} < 10 h = {10 * h:.3e}")

    def as_arr(e: Event) -> np.ndarray:
        return potential_sampler(e).as_array()

    center = as_arr(ev)
    lap = -6.0 * center
    for ax in range(3):
        lap = lap + as_arr(ev.shift_x(ax, h)) + as_arr(ev.shift_x(ax, -h))
    lap = lap / (h * h)
    d2t = (as_arr(ev.shift_t(h)) - 2.0 * center + as_arr(ev.shift_t(-h))) / (h * h)
    return lap - d2t / (c * c)


def convergence_order(residual_at, h: float,
                      noise_floor: float = NOISE_FLOOR) -> float:
    """log2 of the residual-norm ratio between steps h and h/2.

    residual_at maps a step size to a residual vector (or scalar).  Raises
    DegenerateResidualError when both norms sit at the rounding floor.
    """
    r_h = float(np.max(np.abs(np.atleast_1d(residual_at(h)))))
    r_h2 = float(np.max(np.abs(np.atleast_1d(residual_at(h / 2.0)))))
    if r_h < noise_floor and r_h2 < noise_floor:
        raise DegenerateResidualError(
            f"residuals {r_h:.3e}, {r_h2:.3e} below noise floor {noise_floor:.3e}")
    if r_h2 == 0.0:
        raise DegenerateResidualError("refined residual is exactly zero")
    return math.log2(r_h / r_h2)


def maxwell_convergence_order(sampler, ev: Event, h: float, c: float = 1.0,
                              clearance: float | None = None) -> float:
    """Order of the combined Maxwell residual norm under step halving."""
    return convergence_order(
        lambda step: maxwell_residuals(sampler, ev, step, c, clearance).as_vector(),
        h)
