"""Centered finite-difference stencils over event-valued callables.

Second-order stencils are the workhorse (their order is itself a test
subject); the fourth-order variants serve checks whose tolerances sit below
the second-order truncation error.
"""

from __future__ import annotations

import numpy as np

from .relativity import Event


def d_dt(fn, ev: Event, h: float, order: int = 2):
    """Time derivative of fn at ev."""
    if order == 2:
        return (np.asarray(fn(ev.shift_t(h))) - np.asarray(fn(ev.shift_t(-h)))) / (2.0 * h)
    if order == 4:
        return (-np.asarray(fn(ev.shift_t(2 * h))) + 8.0 * np.asarray(fn(ev.shift_t(h)))
                - 8.0 * np.asarray(fn(ev.shift_t(-h))) + np.asarray(fn(ev.shift_t(-2 * h)))) / (12.0 * h)
    raise ValueError("order must be 2 or 4")


def d_dx(fn, ev: Event, axis: int, h: float, order: int = 2):
    """Spatial derivative of fn along the given axis."""
    if order == 2:
        return (np.asarray(fn(ev.shift_x(axis, h)))
                - np.asarray(fn(ev.shift_x(axis, -h)))) / (2.0 * h)
    if order == 4:
        return (-np.asarray(fn(ev.shift_x(axis, 2 * h))) + 8.0 * np.asarray(fn(ev.shift_x(axis, h)))
                - 8.0 * np.asarray(fn(ev.shift_x(axis, -h)))
                + np.asarray(fn(ev.shift_x(axis, -2 * h)))) / (12.0 * h)
    raise ValueError("order must be 2 or 4")


def gradient(fn, ev: Event, h: float, order: int = 2) -> np.ndarray:
    """(d/dx, d/dy, d/dz) of a scalar-valued fn."""
    return np.array([float(d_dx(fn, ev, ax, h, order)) for ax in range(3)])


def divergence(fn_vec, ev: Event, h: float, order: int = 2) -> float:
    """div of a 3-vector-valued fn."""
    return float(sum(d_dx(fn_vec, ev, ax, h, order)[ax] for ax in range(3)))


def curl(fn_vec, ev: Event, h: float, order: int = 2) -> np.ndarray:
    """curl of a 3-vector-valued fn."""
    d = [d_dx(fn_vec, ev, ax, h, order) for ax in range(3)]
    return np.array([
        d[1][2] - d[2][1],
        d[2][0] - d[0][2],
        d[0][1] - d[1][0],
    ])


def second_t(fn, ev: Event, h: float):
    """Second time derivative (three-point stencil)."""
    return (np.asarray(fn(ev.shift_t(h))) - 2.0 * np.asarray(fn(ev))
            + np.asarray(fn(ev.shift_t(-h)))) / (h * h)


def laplacian(fn, ev: Event, h: float):
    """Spatial Laplacian (three-point stencil per axis), componentwise."""
    center = np.asarray(fn(ev), dtype=float)
    acc = -6.0 * center
    for ax in range(3):
        acc = acc + np.asarray(fn(ev.shift_x(ax, h))) + np.asarray(fn(ev.shift_x(ax, -h)))
    return acc / (h * h)
