"""Simulation constants and unit system.

All computations run in natural simulation units: the speed of light, the
reduced Planck constant, and the rest-frame pulse period are set to one.
The only dimensionless input is the fine-structure constant; the elementary
charge follows from alpha = e^2 / (hbar c).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError

# ---------------------------------------------------------------------------
# physical input
# ---------------------------------------------------------------------------

# CODATA 2018 fine-structure constant (dimensionless).
FINE_STRUCTURE_ALPHA = 7.2973525693e-3

# Consistency checks on derived members are held to this level.
_CONSISTENCY_TOL = 1e-12


@dataclass(frozen=True)
class SimulationConstants:
    """Frozen bundle of unit-system constants.

    omega_prime and k_prime are the angular frequency and wavenumber of the
    emitted pulse train in the source rest frame; one pulse occupies exactly
    one period, so omega_prime = 2 pi / tau_prime and k_prime = omega_prime / c.
    """

    c: float
    hbar: float
    alpha: float
    e: float
    tau_prime: float
    omega_prime: float
    k_prime: float

    def __post_init__(self) -> None:
        if self.c <= 0 or self.hbar <= 0 or self.tau_prime <= 0:
            raise ConfigError("c, hbar and tau_prime must be positive")
        if not (0.0 < self.alpha < 1.0):
            raise ConfigError(f"alpha must lie in (0, 1), got {self.alpha}")
        # e, omega_prime, k_prime are derived; reject inconsistent bundles
        if abs(self.e * self.e / (self.hbar * self.c) - self.alpha) > _CONSISTENCY_TOL:
            raise ConfigError("charge e inconsistent with alpha = e^2/(hbar c)")
        if abs(self.omega_prime * self.tau_prime - 2.0 * math.pi) > _CONSISTENCY_TOL:
            raise ConfigError("omega_prime inconsistent with 2 pi / tau_prime")
        if abs(self.k_prime * self.c - self.omega_prime) > _CONSISTENCY_TOL:
            raise ConfigError("k_prime inconsistent with omega_prime / c")

    @staticmethod
    def natural(alpha: float = FINE_STRUCTURE_ALPHA,
                tau_prime: float = 1.0) -> "SimulationConstants":
        """Build the standard bundle with c = hbar = 1."""
        omega = 2.0 * math.pi / tau_prime
        return SimulationConstants(
            c=1.0,
            hbar=1.0,
            alpha=alpha,
            e=math.sqrt(alpha),
            tau_prime=tau_prime,
            omega_prime=omega,
            k_prime=omega,
        )

    def as_dict(self) -> dict[str, float]:
        return {
            "c": self.c,
            "hbar": self.hbar,
            "alpha": self.alpha,
            "e": self.e,
            "tau_prime": self.tau_prime,
            "omega_prime": self.omega_prime,
            "k_prime": self.k_prime,
        }
