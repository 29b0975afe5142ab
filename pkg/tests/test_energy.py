"""Energy bookkeeping: local conservation, pulse quanta, averaged flux.

The headline identity is that one emitted pulse carries the energy
omega' hbar regardless of the measuring radius, while the time-averaged
fields (exactly Coulomb) carry no flux at all.
"""

from dataclasses import replace

import numpy as np

from pulsedem.energy import (averaged_radial_poynting, classical_comparison,
                             conservation_residual, expected_radial_poynting,
                             pulse_energy, pulse_train_total)
from pulsedem.maxwell import convergence_order
from pulsedem.particle import FieldSample, rest_field_sampler
from pulsedem.relativity import Event

ACTIVE_EVENT = Event.of(1.55, 1.2, 0.0, 0.0)


def test_conservation_residual_converges(source):
    sampler = rest_field_sampler(source)
    order = convergence_order(
        lambda h: conservation_residual(sampler, ACTIVE_EVENT, h), 1e-3)
    assert abs(order - 2.0) < 0.2
    res = conservation_residual(sampler, ACTIVE_EVENT, 1e-3)
    assert abs(res) < 1e-3


def test_doubled_field_breaks_conservation(source):
    """Mutation oracle: u and S built from inconsistent fields leave an O(1)
    residual that no step refinement removes."""
    honest = rest_field_sampler(source)

    def corrupted(ev):
        fs = honest(ev)
        return FieldSample(e=2.0 * fs.e, b=fs.b, q=fs.q, at=fs.at)

    res = conservation_residual(corrupted, ACTIVE_EVENT, 1e-3)
    assert abs(res) > 1e-2
    order = convergence_order(
        lambda h: conservation_residual(corrupted, ACTIVE_EVENT, h), 1e-3)
    assert order < 1.0


def test_pulse_energy_is_the_quantum(source, constants):
    quantum = constants.omega_prime * constants.hbar
    e0 = pulse_energy(source)
    assert abs(e0.value - quantum) < 1e-3 * quantum
    assert e0.direction_spread < 1e-8  # isotropic emission
    assert e0.radius == constants.c * constants.tau_prime


def test_pulse_energy_radius_independent(source, constants):
    e0 = pulse_energy(source)
    eh = pulse_energy(source, radius=0.5 * constants.c * constants.tau_prime)
    assert abs(eh.value - e0.value) < 1e-3 * e0.value


def test_every_pulse_carries_the_same_energy(source):
    e0 = pulse_energy(source)
    for j in (1, 2):
        ej = pulse_energy(source, pulse_index=j)
        assert abs(ej.value - e0.value) < 1e-10 * e0.value


def test_train_total_is_count_times_quantum(source):
    train = replace(source, lifetime=3)
    single = pulse_energy(train)
    total = pulse_train_total(train, single)
    assert total == 3.0 * single.value


def test_expected_flux_closed_form(source, constants):
    # omega' hbar / (4 pi tau' c r^2); spot values for the natural constants
    assert abs(expected_radial_poynting(source, 0.5) - 2.0) < 1e-12
    assert abs(expected_radial_poynting(source, 1.0) - 0.5) < 1e-12
    assert abs(expected_radial_poynting(source, 2.0) - 0.125) < 1e-12


def test_averaged_flux_matches_expected(source):
    for r in (0.7, 1.0, 2.0):
        got = averaged_radial_poynting(source, r)
        want = expected_radial_poynting(source, r)
        assert abs(got - want) < 1e-4 * want


def test_flux_is_direction_independent(source, rng):
    d1 = rng.normal(size=3)
    d1 /= np.linalg.norm(d1)
    got1 = averaged_radial_poynting(source, 1.3, direction=d1)
    got2 = averaged_radial_poynting(source, 1.3)
    assert abs(got1 - got2) < 1e-8 * got2


def test_classical_fields_carry_no_flux(source, constants):
    x = np.array([0.0, 0.0, 2.0])
    comp = classical_comparison(source, x)
    # averaged fields are exactly Coulomb: u_cl = E^2/2 = alpha/32 at r = 2
    want_u = constants.alpha / 32.0
    assert abs(comp.u_classical - want_u) < 1e-12 * want_u
    assert np.max(np.abs(comp.s_classical)) == 0.0
    # the pulsed fields carry strictly more energy density on average
    assert comp.u_avg > comp.u_classical
    # and a genuinely positive outward flux
    assert averaged_radial_poynting(source, 2.0) > 0.0
