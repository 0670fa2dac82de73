"""Two-wave dynamical diffraction in a single Laue-geometry crystal plate.

Everything here works with the reduced potential U = 2 m V / hbar^2, so the
only physical inputs are wavenumbers and lengths. Observables depend on the
plate only through the reduced thickness ``tau = pi d / Delta`` and the
detuning ``y``.
"""
from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .errors import DomainError, GeometryError


def fermi_fourier_coefficient(b_c: float, cell_volume: float) -> float:
    """Reduced Fourier coefficient of the Fermi pseudopotential.

    One nucleus per primitive cell, so the coefficient is the same for every
    reciprocal-lattice vector and serves as both U(0) and |U(g)|.
    """
    if not b_c > 0:
        raise DomainError(f"scattering length must be positive, got {b_c!r}")
    if not cell_volume > 0:
        raise DomainError(f"cell volume must be positive, got {cell_volume!r}")
    return 4.0 * math.pi * b_c / cell_volume


def _longitudinal_k(k0: float, g1: float) -> float:
    # sqrt(k0^2 - g1^2/4): the k3 component at exact Bragg incidence
    if not k0 > 0:
        raise DomainError(f"k0 must be positive, got {k0!r}")
    if g1 < 0:
        raise DomainError(f"g1 must be non-negative, got {g1!r}")
    if not g1 < 2.0 * k0:
        raise GeometryError(f"Laue geometry requires g1 < 2 k0 (g1={g1!r}, k0={k0!r})")
    return math.sqrt(k0 * k0 - 0.25 * g1 * g1)


def characteristic_length(k0: float, g1: float, ug_mag: float) -> float:
    """Pendelloesung length Delta = 2 pi sqrt(k0^2 - g1^2/4) / |U(g)|."""
    if not ug_mag > 0:
        raise DomainError(f"|U(g)| must be positive, got {ug_mag!r}")
    return 2.0 * math.pi * _longitudinal_k(k0, g1) / ug_mag


def detuning_parameter(k0_vec, g1: float, ug_mag: float) -> float:
    """Detuning y from the incident wavevector (k0_1, k0_3).

    ``(k0 + g/2) . g = y |U(g)|`` with g along x1, so only k0_1 enters.
    Exact Bragg incidence (k0_1 = -g1/2) gives y = 0.
    """
    if not ug_mag > 0:
        raise DomainError(f"|U(g)| must be positive, got {ug_mag!r}")
    k01 = k0_vec[0]
    return (k01 + 0.5 * g1) * g1 / ug_mag


@dataclass(frozen=True)
class PlateParams:
    """Inputs describing one crystal plate.

    ``delta`` and ``tau`` are derived on access, so they always agree with
    the stored fields.
    """

    k0: float
    g1: float
    u0: float
    ug_mag: float
    d: float
    ug_phase: float = 0.0

    def __post_init__(self):
        if not self.d >= 0:
            raise DomainError(f"plate thickness must be >= 0, got {self.d!r}")
        # validates k0, g1, ug_mag
        characteristic_length(self.k0, self.g1, self.ug_mag)

    @property
    def delta(self) -> float:
        return characteristic_length(self.k0, self.g1, self.ug_mag)

    @property
    def tau(self) -> float:
        return math.pi * self.d / self.delta

    @classmethod
    def from_pseudopotential(cls, k0, g1, b_c, cell_volume, d):
        u = fermi_fourier_coefficient(b_c, cell_volume)
        return cls(k0=k0, g1=g1, u0=u, ug_mag=u, d=d)


@dataclass(frozen=True)
class TwoWaveMode:
    branch: int
    k3: float
    x_ratio: complex
    u_amp: float


def branch_wavevectors(params: PlateParams, y: float) -> tuple[float, float]:
    """Longitudinal wavevectors (k_13, k_23) of the two crystal modes.

    Branch 1 carries the ``+`` sign inside the bracket and is therefore the
    smaller of the two; k_13 - k_23 = -(2 pi / Delta) sqrt(1 + y^2).
    """
    s = _longitudinal_k(params.k0, params.g1)
    root = math.sqrt(1.0 + y * y) * params.ug_mag
    scale = 0.5 / (s * s)
    k13 = s * (1.0 - scale * (params.u0 + root))
    k23 = s * (1.0 - scale * (params.u0 - root))
    return k13, k23


def mode_ratio(y: float, ug_phase: float = 0.0) -> tuple[complex, complex]:
    """Amplitude ratios X = u(g)/u(0) for both modes: e^{i phi}(y +/- sqrt(1+y^2))."""
    root = math.hypot(1.0, y)
    phase = complex(math.cos(ug_phase), math.sin(ug_phase))
    # (y + root)(y - root) = -1; take the small root from the large one to avoid cancellation
    if y >= 0:
        x1 = y + root
        x2 = -1.0 / x1
    else:
        x2 = y - root
        x1 = -1.0 / x2
    return phase * x1, phase * x2


def mode_amplitudes(y: float) -> tuple[float, float]:
    """First-order boundary-matched amplitudes (u1, u2) = (1/2)(1 -/+ y/sqrt(1+y^2)).

    The larger amplitude is formed first and the smaller one as its exact
    complement, so u1 + u2 == 1.0 holds in floating point.
    """
    t = 0.5 * y / math.hypot(1.0, y) if math.isfinite(y) else math.copysign(0.5, y)
    big = 0.5 + abs(t)
    small = 1.0 - big
    return (small, big) if y >= 0 else (big, small)


def two_wave_modes(params: PlateParams, y: float) -> tuple[TwoWaveMode, TwoWaveMode]:
    k13, k23 = branch_wavevectors(params, y)
    x1, x2 = mode_ratio(y, params.ug_phase)
    u1, u2 = mode_amplitudes(y)
    return TwoWaveMode(1, k13, x1, u1), TwoWaveMode(2, k23, x2, u2)


@dataclass(frozen=True)
class DiffractionAmplitudes:
    """Transmitted and refracted amplitudes for one plate traversal.

    Fields may be numpy arrays when produced by a vectorised sweep.
    """

    a_t: complex
    a_r: complex


def diffraction_amplitudes(tau, y=0.0) -> DiffractionAmplitudes:
    """A_t and A_r as functions of reduced thickness and detuning.

    Broadcasts over array-valued ``tau`` and ``y``.
    """
    tau = np.asarray(tau, dtype=float)
    y = np.asarray(y, dtype=float)
    root = np.sqrt(1.0 + y * y)
    arg = tau * root
    carrier = np.exp(-1j * tau * (1.0 + y))
    a_t = (np.cos(arg) + 1j * (y / root) * np.sin(arg)) * carrier
    a_r = -1j * (np.sin(arg) / root) * carrier
    if a_t.ndim == 0:
        return DiffractionAmplitudes(complex(a_t), complex(a_r))
    return DiffractionAmplitudes(a_t, a_r)


def plate_amplitudes(params: PlateParams, y: float = 0.0) -> DiffractionAmplitudes:
    return diffraction_amplitudes(params.tau, y)


def rocking_curve(tau, y):
    """Diffracted intensity |A_r|^2 = sin^2(tau sqrt(1+y^2)) / (1+y^2)."""
    y = np.asarray(y, dtype=float)
    return np.sin(tau * np.sqrt(1.0 + y * y)) ** 2 / (1.0 + y * y)
