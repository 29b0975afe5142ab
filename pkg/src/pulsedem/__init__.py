"""pulsedem: a numerical laboratory for pulsed-potential electrodynamics.

The package models point charges that emit their four-potential as a
periodic train of retarded pulses.  The potential divergence
q = d_mu A^mu survives as a frame-invariant scalar field, Gauss's and
Ampere's laws acquire q terms, and covariant time averaging over one
pulse period recovers the classical static results.  Modules cover the
calibrated emission profile, Lorentz kinematics, particle fields, the
averaging operator, modified-Maxwell residual checks, a causal solenoid
solver with Aharonov-Bohm loop diagnostics, field-energy bookkeeping,
and a scenario-driven verification CLI.
"""

from .constants import FINE_STRUCTURE_ALPHA, SimulationConstants
from .particle import ParticleSource
from .pulse import PulseProfile, calibrate_pulse, eval_pulse
from .relativity import Event, FourVector
from .report import VerificationReport, write_outputs
from .scenarios import run_scenario, scenario_names
from .solenoid import LoopSpec, SolenoidSpec

__all__ = [
    "FINE_STRUCTURE_ALPHA",
    "SimulationConstants",
    "ParticleSource",
    "PulseProfile",
    "calibrate_pulse",
    "eval_pulse",
    "Event",
    "FourVector",
    "VerificationReport",
    "write_outputs",
    "run_scenario",
    "scenario_names",
    "LoopSpec",
    "SolenoidSpec",
    "__version__",
]

__version__ = "0.1.0"
