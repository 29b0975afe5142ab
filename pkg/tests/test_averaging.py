"""The covariant time average and its correspondence with statics.

Averaging the pulsed potential over one emission period must reproduce the
Coulomb values exactly (closed-form tiling) or to quadrature accuracy, and
the operator must commute with coordinate derivatives.
"""

import math
from dataclasses import replace

import numpy as np
import pytest

from pulsedem.averaging import (averaged_lab_potential,
                                averaged_particle_quantities,
                                commutation_residual, comoving_time_average,
                                lab_window, rest_window, time_average,
                                window_endpoint_derivative)
from pulsedem.particle import (lab_potential_sampler, pulse_breakpoints,
                               rest_potential_sampler)
from pulsedem.relativity import (Event, FourVector, boost_event,
                                 boost_four_vector, lorentz_gamma)


def test_tiling_average_is_coulomb_exactly(source):
    for x in (np.array([1.0, 0.0, 0.0]), np.array([0.3, -2.0, 1.1])):
        r = float(np.linalg.norm(x))
        avg = averaged_particle_quantities(source, x, method="tiling")
        assert avg.aphi == source.q0 / r
        assert np.allclose(avg.ae, source.q0 * x / r ** 3, atol=0.0)
        assert np.all(avg.ab == 0.0)
        assert avg.aq == 0.0


def test_quadrature_average_agrees_with_tiling(source):
    for x in (np.array([0.8, 0.0, 0.0]), np.array([0.0, 2.5, -1.0])):
        tiled = averaged_particle_quantities(source, x, method="tiling")
        quad = averaged_particle_quantities(source, x, method="quadrature",
                                            tol=1e-11)
        assert abs(quad.aphi - tiled.aphi) < 1e-9 * tiled.aphi
        assert np.max(np.abs(quad.ae - tiled.ae)) < 1e-9 * np.max(np.abs(tiled.ae))
        assert np.max(np.abs(quad.ab)) < 1e-11
        assert abs(quad.aq) < 1e-9 * source.q0


def test_average_is_independent_of_window_start(source):
    x = np.array([1.4, 0.0, 0.0])
    base = averaged_particle_quantities(source, x, method="quadrature",
                                        T=1.4, tol=1e-11)
    for T in (0.0, 0.37, 2.9):
        shifted = averaged_particle_quantities(source, x, method="quadrature",
                                               T=T, tol=1e-11)
        assert abs(shifted.aphi - base.aphi) < 1e-9 * base.aphi


def test_scalar_time_average_of_known_signal(constants):
    # A[sin^2(w t)] = 1/2 for any window start, since the period matches
    window = rest_window(0.63, constants)
    got = time_average(lambda ev: math.sin(constants.omega_prime * ev.t) ** 2,
                       np.zeros(3), window, tol=1e-12)
    assert abs(got - 0.5) < 1e-11


def test_commutation_with_derivatives(source, constants):
    x = np.array([1.2, 0.4, 0.0])
    window = rest_window(float(np.linalg.norm(x)) / constants.c, constants)
    sampler = lambda ev: rest_potential_sampler(source)(ev).v0
    breaks = pulse_breakpoints(source, x, window.T, window.T + 3.0 * window.tau)
    res = commutation_residual(sampler, x, window, h=1e-3, tol=1e-11,
                               breakpoints=breaks)
    assert res < 1e-6


def test_window_endpoint_identity(source, constants):
    """A[dg/dt] telescopes to the window-endpoint difference, which vanishes
    for the periodic pulsed potential and equals the slope for a ramp."""
    x = np.array([1.7, 0.0, 0.0])
    sampler = lambda ev: rest_potential_sampler(source)(ev).v0
    window = rest_window(0.2, constants)
    assert abs(window_endpoint_derivative(sampler, x, window)) < 1e-12
    ramp = lambda ev: 3.0 * ev.t
    assert abs(window_endpoint_derivative(ramp, x, window) - 3.0) < 1e-12


def test_comoving_average_matches_rest_average(source, constants):
    """A comoving observer of a moving source measures the rest-frame
    average: the covariant construction, not a fixed-lab-point average."""
    v = 0.6 * constants.c * np.array([1.0, 0.0, 0.0])
    moving = replace(source, v_lab=v)
    x_rest = np.array([0.0, 1.5, 0.0])
    sampler = lab_potential_sampler(moving)
    got = comoving_time_average(lambda ev: sampler(ev).v0, x_rest, constants,
                                v, t_rest_start=1.5, tol=1e-11)
    g = lorentz_gamma(v, constants.c)
    want = g * source.q0 / 1.5  # boosted Coulomb potential
    assert abs(got - want) < 1e-8 * want


def test_averaged_lab_potential_is_boosted_coulomb(source, constants):
    v = 0.6 * constants.c * np.array([0.0, 0.0, 1.0])
    moving = replace(source, v_lab=v)
    ev = Event(0.8, np.array([1.1, 0.0, 0.9]))
    got = averaged_lab_potential(moving, ev, tol=1e-11)
    # oracle: boost the rest-frame Coulomb four-potential at the rest point
    rest_ev = boost_event(ev, v, constants.c)
    rest_pot = FourVector(source.q0 / rest_ev.r, np.zeros(3))
    want = boost_four_vector(rest_pot, -v, constants.c)
    assert abs(got.v0 - want.v0) < 1e-8 * want.v0
    assert np.max(np.abs(got.v - want.v)) < 1e-8 * want.v0


def test_window_shapes(constants):
    w_rest = rest_window(2.0, constants)
    assert w_rest.tau == constants.tau_prime
    v = np.array([0.8, 0.0, 0.0])
    w_lab = lab_window(2.0, constants, v)
    g = lorentz_gamma(v, constants.c)
    assert abs(w_lab.tau - g * constants.tau_prime) < 1e-14


def test_unknown_method_rejected(source):
    with pytest.raises(ValueError):
        averaged_particle_quantities(source, np.array([1.0, 0.0, 0.0]),
                                     method="simpson")
