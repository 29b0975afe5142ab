"""Residuals of the modified field equations and their convergence.

The field equations carry the scalar q = d_mu A^mu as a source term; the
residual stencil must converge at second order on the true fields and must
*fail loudly* when a term is deliberately removed, otherwise the check has
no teeth.
"""

from dataclasses import replace

import numpy as np
import pytest

from pulsedem.errors import DegenerateResidualError, TooCloseToSourceError
from pulsedem.maxwell import (convergence_order, maxwell_convergence_order,
                              maxwell_residuals, wave_residual)
from pulsedem.particle import (FieldSample, lab_field_sampler,
                               lab_potential_sampler, rest_field_sampler)
from pulsedem.relativity import Event, boost_event

ACTIVE_EVENT = Event.of(1.55, 1.2, 0.0, 0.0)


def test_residuals_converge_at_second_order(source):
    sampler = rest_field_sampler(source)
    order = maxwell_convergence_order(sampler, ACTIVE_EVENT, 1e-3,
                                      clearance=ACTIVE_EVENT.r)
    assert abs(order - 2.0) < 0.2


def test_residual_magnitude_shrinks_with_h(source):
    sampler = rest_field_sampler(source)
    r1 = maxwell_residuals(sampler, ACTIVE_EVENT, 2e-3).max_abs
    r2 = maxwell_residuals(sampler, ACTIVE_EVENT, 1e-3).max_abs
    assert 3.3 < r1 / r2 < 4.8


def test_boosted_frame_keeps_second_order(source, constants):
    u = 0.6 * constants.c * np.array([0.0, 1.0, 0.0])
    moving = replace(source, v_lab=-u)
    ev = boost_event(ACTIVE_EVENT, u, constants.c)
    sampler = lab_field_sampler(moving)
    order = maxwell_convergence_order(sampler, ev, 2e-4, clearance=0.3)
    assert abs(order - 2.0) < 0.2


def test_dropping_the_q_term_breaks_gauss(source):
    """Mutation oracle: zeroing q turns the modified Gauss law into the
    vacuum one, which the pulsed fields do not satisfy."""
    honest = rest_field_sampler(source)

    def corrupted(ev):
        fs = honest(ev)
        return FieldSample(e=fs.e, b=fs.b, q=0.0, at=fs.at)

    good = maxwell_residuals(honest, ACTIVE_EVENT, 1e-3).gauss
    bad = maxwell_residuals(corrupted, ACTIVE_EVENT, 1e-3).gauss
    assert abs(good) < 1e-4
    assert abs(bad) > 1e3 * max(abs(good), 1e-12)
    # and the corrupted residual no longer converges away
    order = convergence_order(
        lambda h: maxwell_residuals(corrupted, ACTIVE_EVENT, h).gauss, 1e-3)
    assert order < 1.0


def test_scaling_the_fields_breaks_ampere(source):
    honest = rest_field_sampler(source)

    def corrupted(ev):
        fs = honest(ev)
        return FieldSample(e=1.01 * fs.e, b=fs.b, q=fs.q, at=fs.at)

    bad = maxwell_residuals(corrupted, ACTIVE_EVENT, 1e-3)
    assert bad.max_abs > 1e-3


def test_wave_equation_residual(source):
    pot = lab_potential_sampler(source)
    res = wave_residual(pot, ACTIVE_EVENT, 1e-3, clearance=ACTIVE_EVENT.r)
    # the retarded potential solves the wave equation; FD truncation only
    assert np.max(np.abs(res)) < 1e-2
    order = convergence_order(
        lambda h: wave_residual(pot, ACTIVE_EVENT, h), 1e-3)
    assert abs(order - 2.0) < 0.2


def test_dead_region_raises_degenerate(source):
    # after a one-pulse source has passed, the stencil sees zero everywhere
    # and a convergence order would be 0/0; that must be an error, not a pass
    one_pulse = replace(source, lifetime=1)
    sampler = rest_field_sampler(one_pulse)
    ev = Event.of(4.2, 1.2, 0.0, 0.0)
    with pytest.raises(DegenerateResidualError):
        maxwell_convergence_order(sampler, ev, 1e-3)


def test_clearance_guard(source):
    sampler = rest_field_sampler(source)
    with pytest.raises(TooCloseToSourceError):
        maxwell_residuals(sampler, ACTIVE_EVENT, 1e-3, clearance=5e-3)
