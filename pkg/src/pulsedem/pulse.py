"""Emission pulse profile and its two-constraint calibration.

The profile family is f0(r) = a * sin(r/2)^(2p) on the support [0, 2 pi],
zero outside.  It is nonnegative and symmetric about r = pi.  Calibration
fixes (a, p) by two normalizations:

    (1/2pi) * integral f0(r) dr          = 1   (unit mean over one period)
    4 pi alpha * integral f0'(r)^2 dr    = 1   (unit slope energy)

The amplitude follows from the first constraint in closed form through the
Wallis integral  int_0^pi sin^(2p) = sqrt(pi) Gamma(p+1/2) / Gamma(p+1),
so only the exponent is searched, by bracketing scan plus bisection on the
second constraint evaluated with adaptive quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoRootError
from .quadrature import bisect, integrate

SUPPORT = (0.0, 2.0 * math.pi)

# Exponent search bracket.  Below ~1 the slope energy is too small to reach
# the target; the upper end is generous.
_P_MIN = 1.01
_P_MAX = 10.0


def family_amplitude(exponent: float) -> float:
    """Amplitude a(p) that gives the sin^(2p) profile unit mean.

    From int_0^{2pi} a sin(r/2)^(2p) dr = 2pi:
        a = sqrt(pi) * Gamma(p+1) / Gamma(p+1/2).
    """
    return math.sqrt(math.pi) * math.exp(
        math.lgamma(exponent + 1.0) - math.lgamma(exponent + 0.5))


@dataclass(frozen=True)
class PulseProfile:
    """Calibrated emission profile.

    residual_mean and residual_slope_energy record how well the two
    normalizations are met; both should sit at the quadrature floor.
    """

    exponent: float
    amplitude: float
    residual_mean: float
    residual_slope_energy: float

    def value(self, r):
        """f0(r); accepts scalars or arrays, zero outside [0, 2 pi]."""
        r = np.asarray(r, dtype=float)
        inside = (r > 0.0) & (r < 2.0 * math.pi)
        s = np.sin(np.where(inside, r, 0.0) * 0.5)
        out = np.where(inside, self.amplitude * np.power(s, 2.0 * self.exponent), 0.0)
        return float(out) if out.ndim == 0 else out

    def derivative(self, r):
        """df0/dr; zero outside the support."""
        r = np.asarray(r, dtype=float)
        inside = (r > 0.0) & (r < 2.0 * math.pi)
        half = np.where(inside, r, math.pi) * 0.5
        s = np.sin(half)
        out = np.where(
            inside,
            self.amplitude * self.exponent
            * np.power(s, 2.0 * self.exponent - 1.0) * np.cos(half),
            0.0,
        )
        return float(out) if out.ndim == 0 else out

    def second_derivative(self, r):
        """d2f0/dr2; used for closed-form time derivatives of the invariant."""
        r = np.asarray(r, dtype=float)
        inside = (r > 0.0) & (r < 2.0 * math.pi)
        half = np.where(inside, r, math.pi) * 0.5
        s = np.sin(half)
        c = np.cos(half)
        p = self.exponent
        out = np.where(
            inside,
            0.5 * self.amplitude * p * (
                (2.0 * p - 1.0) * np.power(s, 2.0 * p - 2.0) * c * c
                - np.power(s, 2.0 * p)),
            0.0,
        )
        return float(out) if out.ndim == 0 else out

    @property
    def smoothness_class(self) -> int:
        """Number of continuous derivatives at the support edges.

        Near r = 0 the profile behaves like (r/2)^(2p), so derivatives up to
        order floor(2p) stay continuous for non-integer 2p.
        """
        return int(math.floor(2.0 * self.exponent))

    def to_record(self) -> dict:
        return {
            "exponent": self.exponent,
            "amplitude": self.amplitude,
            "residual_mean": self.residual_mean,
            "residual_slope_energy": self.residual_slope_energy,
            "smoothness_class": self.smoothness_class,
        }


def slope_energy(exponent: float, quad_tol: float = 1e-13) -> float:
    """integral over the support of (df0/dr)^2 for the unit-mean profile."""
    a = family_amplitude(exponent)
    p = exponent

    def integrand(r):
        half = 0.5 * r
        s = math.sin(half)
        d = a * p * s ** (2.0 * p - 1.0) * math.cos(half)
        return d * d

    return integrate(integrand, *SUPPORT, tol=quad_tol)


def eval_pulse(profile: PulseProfile, r):
    """Convenience pair (f0(r), df0/dr(r))."""
    return profile.value(r), profile.derivative(r)


def calibrate_pulse(alpha: float, tol: float = 1e-10,
                    quad_tol: float = 1e-13,
                    max_exponent: float = _P_MAX) -> PulseProfile:
    """Solve both normalizations for the sin^(2p) family.

    The amplitude is eliminated analytically; the exponent is found by a
    coarse bracketing scan over (1, max_exponent] followed by bisection on
    g(p) = 4 pi alpha * slope_energy(p) - 1.  Raises NoRootError when the
    scan finds no sign change (e.g. alpha too large for the family, or a
    scan ceiling below the root).
    """
    if max_exponent <= _P_MIN:
        raise NoRootError(f"scan ceiling {max_exponent} leaves an empty bracket")
    target = 4.0 * math.pi * alpha

    def g(p: float) -> float:
        return target * slope_energy(p, quad_tol) - 1.0

    scan = np.linspace(_P_MIN, max_exponent, 64)
    vals = [g(p) for p in scan]
    bracket = None
    for lo, hi, f_lo, f_hi in zip(scan[:-1], scan[1:], vals[:-1], vals[1:]):
        if f_lo == 0.0:
            bracket = (lo, lo)
            break
        if (f_lo < 0.0) != (f_hi < 0.0):
            bracket = (lo, hi)
            break
    if bracket is None:
        raise NoRootError(
            f"no exponent in ({_P_MIN}, {max_exponent}] meets the slope-energy "
            f"normalization for alpha={alpha}")

    p_star = float(bracket[0] if bracket[0] == bracket[1] else bisect(
        g, bracket[0], bracket[1], tol=1e-14))
    a_star = family_amplitude(p_star)

    profile = PulseProfile(
        exponent=p_star, amplitude=a_star,
        residual_mean=0.0, residual_slope_energy=0.0)
    res_mean = abs(
        integrate(profile.value, *SUPPORT, tol=quad_tol) / (2.0 * math.pi) - 1.0)
    res_energy = abs(
        target * integrate(lambda r: profile.derivative(r) ** 2,
                           *SUPPORT, tol=quad_tol) - 1.0)
    if max(res_mean, res_energy) > tol:
        raise NoRootError(
            f"calibration residuals ({res_mean:.3e}, {res_energy:.3e}) "
            f"exceed tol {tol:.3e}")
    return PulseProfile(
        exponent=p_star, amplitude=a_star,
        residual_mean=res_mean, residual_slope_energy=res_energy)


def train_value(profile: PulseProfile, phase):
    """Periodic tiling sum_j f0(phase - 2 pi j), evaluated via the fractional phase.

    Adjacent pulses meet only at the support edges where f0 vanishes, so a
    single wrapped evaluation covers the whole sum.
    """
    phase = np.asarray(phase, dtype=float)
    wrapped = np.mod(phase, 2.0 * math.pi)
    return profile.value(wrapped)


def train_derivative(profile: PulseProfile, phase):
    """d/dphase of the periodic tiling."""
    phase = np.asarray(phase, dtype=float)
    wrapped = np.mod(phase, 2.0 * math.pi)
    return profile.derivative(wrapped)
