"""Fields of a pulsed point source, in its rest frame and boosted.

The rest-frame oracle is written from scratch here: phi = Q0 f0(w t - k r)/r
with A = 0 gives E = -grad phi, B = 0, and q = (1/c^2) dphi/dt.  Everything
else (lab frames, samplers, masking) is checked against boosts of that.
"""

import math
from dataclasses import replace

import numpy as np
import pytest

from pulsedem.errors import AtSourceError, SuperluminalError
from pulsedem.fd import d_dt, divergence
from pulsedem.particle import (lab_fields, lab_potential,
                               lab_potential_sampler, pulse_breakpoints,
                               recover_pulse, recover_tau, rest_fields,
                               rest_potential, rest_q_sampler)
from pulsedem.pulse import train_value
from pulsedem.relativity import (Event, assemble_field_tensor,
                                 boost_event, boost_field_tensor,
                                 fields_from_tensor)


def _oracle_rest(src, ev):
    """Independent closed-form (phi, E, q) for the resting pulsed charge."""
    k = src.constants
    r = ev.r
    u = k.omega_prime * ev.t - k.k_prime * r
    f = train_value(src.pulse, u)
    df = train_value_derivative(src.pulse, u)
    phi = src.q0 * f / r
    # d/dr [f0(wt - kr)/r] = -(k f' r + f)/r^2
    e_r = src.q0 * (k.k_prime * df / r + f / r ** 2)
    q = src.q0 * k.omega_prime * df / (k.c ** 2 * r)
    return phi, e_r * ev.x / r, q


def train_value_derivative(pulse, u):
    return pulse.derivative(np.mod(u, 2.0 * math.pi))


ACTIVE_EVENTS = [
    Event.of(1.55, 1.2, 0.0, 0.0),
    Event.of(2.83, 0.0, -2.0, 1.0),
    Event.of(4.10, 1.5, 2.5, -0.5),
]


def test_rest_fields_match_closed_form(source):
    for ev in ACTIVE_EVENTS:
        phi, e, q = _oracle_rest(source, ev)
        fs = rest_fields(source, ev)
        pot = rest_potential(source, ev)
        scale = abs(phi) + 1e-12
        assert abs(pot.v0 - phi) < 1e-12 * scale
        assert np.max(np.abs(pot.v)) == 0.0
        assert np.max(np.abs(fs.e - e)) < 1e-10 * (np.max(np.abs(e)) + 1e-12)
        assert np.max(np.abs(fs.b)) == 0.0
        assert abs(fs.q - q) < 1e-10 * (abs(q) + 1e-12)


def test_q_matches_finite_difference_of_potential(source):
    # q = (1/c) d(phi/c)/dt + div A straight from the sampled potential
    pot = lab_potential_sampler(source)
    for ev in ACTIVE_EVENTS:
        q_fd = d_dt(lambda e: pot(e).v0, ev, 1e-4, order=4) \
            + divergence(lambda e: pot(e).v, ev, 1e-4, order=4)
        q = rest_fields(source, ev).q
        assert abs(q_fd - q) < 1e-8 * (abs(q) + 1e-10)


def test_lab_frame_at_zero_velocity_is_rest_frame(source):
    for ev in ACTIVE_EVENTS:
        rest = rest_fields(source, ev)
        lab = lab_fields(source, ev)
        assert np.allclose(rest.e, lab.e, atol=1e-14)
        assert np.allclose(rest.b, lab.b, atol=1e-14)
        assert abs(rest.q - lab.q) < 1e-14


def test_moving_source_fields_equal_boosted_tensor(source, constants):
    """Strong frame oracle: fields of a moving source from the closed-form
    lab evaluation must equal the tensor boost of the rest-frame fields."""
    u = 0.6 * constants.c * np.array([0.0, 0.0, 1.0])
    moving = replace(source, v_lab=-u)
    for rest_ev in ACTIVE_EVENTS:
        fs_rest = rest_fields(source, rest_ev)
        tensor = assemble_field_tensor(fs_rest.e, fs_rest.b, fs_rest.q)
        e_want, b_want = fields_from_tensor(boost_field_tensor(tensor, u))

        ev_lab = boost_event(rest_ev, u)
        fs_lab = lab_fields(moving, ev_lab)
        scale = np.max(np.abs(e_want)) + 1e-12
        assert np.max(np.abs(fs_lab.e - e_want)) < 1e-9 * scale
        assert np.max(np.abs(fs_lab.b - b_want)) < 1e-9 * scale
        assert abs(fs_lab.q - fs_rest.q) < 1e-9 * (abs(fs_rest.q) + 1e-12)


def test_boosted_potential_keeps_lorenz_gauge_structure(source, constants):
    u = 0.6 * constants.c * np.array([1.0, 0.0, 0.0])
    moving = replace(source, v_lab=-u)
    ev = boost_event(ACTIVE_EVENTS[0], u)
    pot = lab_potential(moving, ev)
    # A' = gamma phi v / c^2 along the motion, phi' = gamma phi
    assert abs(pot.v[0] / pot.v0 - (-u[0]) / constants.c ** 2) < 1e-12
    assert pot.v[1] == 0.0 and pot.v[2] == 0.0


def test_at_source_raises(source):
    with pytest.raises(AtSourceError):
        rest_fields(source, Event(1.0, np.zeros(3)))


def test_superluminal_source_rejected(source, constants):
    with pytest.raises(SuperluminalError):
        replace(source, v_lab=np.array([1.5 * constants.c, 0.0, 0.0]))


def test_finite_lifetime_masks_later_pulses(source, constants):
    """A source alive for one period emits exactly one pulse: the field at
    phase u repeats for the eternal source but vanishes for j >= 1."""
    one_pulse = replace(source, lifetime=1)
    r = 1.5
    x = np.array([r, 0.0, 0.0])
    t0 = (0.9 * math.pi + constants.k_prime * r) / constants.omega_prime
    live = rest_fields(one_pulse, Event(t0, x))
    assert np.max(np.abs(live.e)) > 1e-3  # pulse j = 0 present
    late = rest_fields(one_pulse, Event(t0 + 2.0 * constants.tau_prime, x))
    assert np.max(np.abs(late.e)) == 0.0
    assert late.q == 0.0
    # the eternal source repeats instead
    again = rest_fields(source, Event(t0 + 2.0 * constants.tau_prime, x))
    assert np.max(np.abs(again.e - live.e)) < 1e-12


def test_pulse_breakpoints_bracket_support(source, constants):
    x = np.array([2.0, 0.0, 0.0])
    pts = pulse_breakpoints(source, x, 0.0, 3.0 * constants.tau_prime)
    pts = np.asarray(pts)
    assert np.all(np.diff(pts) > 0.0)
    assert pts.min() >= 0.0 and pts.max() <= 3.0 * constants.tau_prime
    # edges land where the retarded phase crosses multiples of 2 pi
    for t in pts:
        u = constants.omega_prime * t - constants.k_prime * 2.0
        assert abs(u - 2.0 * math.pi * round(u / (2.0 * math.pi))) < 1e-9


def test_recover_tau(source, constants):
    tau_hat = recover_tau(rest_q_sampler(source), np.array([1.3, 0.0, 0.0]),
                          scan_upper=3.0 * constants.tau_prime)
    assert abs(tau_hat - constants.tau_prime) < 1e-8


def test_recover_pulse_shape(source, constants, profile):
    phases, values = recover_pulse(rest_q_sampler(source),
                                   np.array([0.0, 1.3, 0.0]), constants,
                                   source.q0, n=128)
    assert abs(values[0]) < 1e-10
    sup = float(np.max(np.abs(values - profile.value(phases))))
    assert sup < 1e-6 * profile.amplitude
