"""Four outgoing beams of the three-plate (LLL) interferometer.

All three plates share the same (A_t, A_r). The magnetic region sits on the
northern path between the second and third plates; beams 1 and 4 leave the
device before reaching it. Intensities are relative to I0 = 1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .crystal_optics import DiffractionAmplitudes, diffraction_amplitudes
from .errors import DomainError
from .magnetic_region import (
    FieldProfile,
    NeutronKinematics,
    rotation_angle_exact,
    semiclassical_phase,
    weak_field_transmission,
)
from .spinor import Spinor

PHASE_MODES = ("weak", "exact", "semiclassical")


@dataclass(frozen=True)
class BeamOutputs:
    """Spinor amplitudes psi1..psi4 (shape (..., 2)) and their squared norms."""

    psi1: np.ndarray
    psi2: np.ndarray
    psi3: np.ndarray
    psi4: np.ndarray

    @staticmethod
    def _norm(psi):
        return np.sum(np.abs(psi) ** 2, axis=-1)

    @property
    def i1(self):
        return self._norm(self.psi1)

    @property
    def i2(self):
        return self._norm(self.psi2)

    @property
    def i3(self):
        return self._norm(self.psi3)

    @property
    def i4(self):
        return self._norm(self.psi4)

    @property
    def intensities(self):
        return self.i1, self.i2, self.i3, self.i4


def spin_phase_factors(alpha):
    """Diagonal of the field-region operator: (e^{-i alpha/2}, e^{+i alpha/2}), shape (..., 2)."""
    half = 0.5 * np.asarray(alpha, dtype=float)
    return np.stack([np.exp(-1j * half), np.exp(1j * half)], axis=-1)


def beam_amplitudes(amps: DiffractionAmplitudes, alpha, spin_in: Spinor) -> BeamOutputs:
    """Compose the plate amplitudes and the northern-path spin phase.

    psi1 = At At psi_in, psi4 = At Ar psi_in,
    psi2 = Ar Ar At psi_in + At Ar Ar U psi_in,
    psi3 = At Ar At psi_in + Ar Ar Ar U psi_in,
    with U = diag(e^{-i alpha/2}, e^{+i alpha/2}). Broadcasts over arrays
    in ``amps`` and ``alpha``.
    """
    a_t = np.asarray(amps.a_t, dtype=complex)[..., None]
    a_r = np.asarray(amps.a_r, dtype=complex)[..., None]
    xi = spin_in.as_array()
    rotated = spin_phase_factors(alpha) * xi
    psi1 = a_t * a_t * xi
    psi4 = a_t * a_r * xi
    psi2 = a_r * a_r * a_t * xi + a_t * a_r * a_r * rotated
    psi3 = a_t * a_r * a_t * xi + a_r * a_r * a_r * rotated
    shape = np.broadcast_shapes(psi1.shape, psi2.shape)
    return BeamOutputs(*(np.broadcast_to(p, shape) for p in (psi1, psi2, psi3, psi4)))


def beam_intensities_closed_form(tau, alpha):
    """(i2, i3) at exact Bragg incidence.

    i2 = (1/2) sin^2 tau sin^2 2tau (1 + cos(alpha/2))
    i3 = sin^2 tau (cos^4 tau + sin^4 tau - (1/2) sin^2 2tau cos(alpha/2))
    """
    tau = np.asarray(tau, dtype=float)
    c_half = np.cos(0.5 * np.asarray(alpha, dtype=float))
    s2 = np.sin(tau) ** 2
    c2 = np.cos(tau) ** 2
    s2t = np.sin(2.0 * tau) ** 2
    i2 = 0.5 * s2 * s2t * (1.0 + c_half)
    i3 = s2 * (c2 * c2 + s2 * s2 - 0.5 * s2t * c_half)
    return i2, i3


def interferometer_outputs(tau, alpha, spin_in: Spinor, y=0.0) -> BeamOutputs:
    """Beams for reduced thickness ``tau``; y != 0 applies the same products off-Bragg.

    Off-Bragg composition is an extension: the identical products do not in
    general conserve probability there.
    """
    return beam_amplitudes(diffraction_amplitudes(tau, y), alpha, spin_in)


def field_to_alpha(kin: NeutronKinematics, profile: FieldProfile, mode: str = "weak") -> float:
    """Spin rotation angle of the field region, by the selected model."""
    if mode == "weak":
        return weak_field_transmission(kin, profile).alpha
    if mode == "exact":
        return rotation_angle_exact(kin, profile)
    if mode == "semiclassical":
        return semiclassical_phase(kin, profile)
    raise DomainError(f"unknown phase mode {mode!r}; expected one of {PHASE_MODES}")
