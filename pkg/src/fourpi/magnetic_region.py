"""Spin-dependent transmission through a static longitudinal magnetic field.

Conventions (used everywhere in this module):

* ``omega = -mu B`` is the precession pulsation; for a neutron (mu < 0) a
  positive field gives omega > 0.
* The spin-up component sees a barrier of height ``hbar omega / 2`` and the
  spin-down component a well of the same depth, so
  ``k_pm = sqrt(k^2 -/+ m omega / hbar)`` and k_plus < k < k_minus.
* Transmission amplitudes keep the free-propagation factor ``exp(-2 i k a)``
  of the plane-wave convention psi = e^{ikx} + R e^{-ikx} (left),
  T e^{ikx} (right).
* The rotation angle is ``alpha = arg T_minus - arg T_plus``, positive for
  omega > 0.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
import cmath
import math
import warnings

import numpy as np
from scipy import integrate

from .errors import ChannelClosedError, DomainError, NumericalError, ThresholdError
from .spinor import Spinor

WEAK_FIELD_WARN_RATIO = 0.1
WEAK_FIELD_MAX_RATIO = 0.5
SEMICLASSICAL_MIN_KL = 10.0
GROUP_DELAY_REL_STEP = 1e-5


class WeakFieldWarning(UserWarning):
    pass


class SemiclassicalWarning(UserWarning):
    pass


@dataclass(frozen=True)
class NeutronKinematics:
    energy: float
    mass: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if not self.energy > 0:
            raise DomainError(f"kinetic energy must be positive, got {self.energy!r}")
        if not (self.mass > 0 and self.hbar > 0):
            raise DomainError("mass and hbar must be positive")

    @property
    def k(self) -> float:
        return math.sqrt(2.0 * self.mass * self.energy) / self.hbar

    @property
    def v(self) -> float:
        return self.hbar * self.k / self.mass

    @classmethod
    def from_wavenumber(cls, k: float, mass: float = 1.0, hbar: float = 1.0) -> "NeutronKinematics":
        return cls(energy=(hbar * k) ** 2 / (2.0 * mass), mass=mass, hbar=hbar)

    def with_energy(self, energy: float) -> "NeutronKinematics":
        return replace(self, energy=energy)


# Ramp functions g(s), s >= 0: smooth, g(0) = 1, 0 <= g <= 1, g(s) = 0 for s >= cut.
# Each entry: (g, cut, integral of g over [0, cut], max |g'|).
def _smoothstep(s):
    s = np.clip(s, 0.0, 1.0)
    return 1.0 - (3.0 * s * s - 2.0 * s * s * s)


def _cosine(s):
    s = np.clip(s, 0.0, 1.0)
    return 0.5 * (1.0 + np.cos(np.pi * s))


RAMP_SHAPES = {
    "smoothstep": (_smoothstep, 1.0, 0.5, 1.5),
    "cosine": (_cosine, 1.0, 0.5, 0.5 * math.pi),
}


@dataclass(frozen=True)
class FieldProfile:
    """Field region B(x) = B w(x): flat top on [-a, a], ramps of length scale l.

    ``ramp_length == 0`` is the ideal square profile.
    """

    omega: float
    half_width: float
    ramp_length: float = 0.0
    ramp_shape: str = "smoothstep"
    b_strength: float | None = None

    def __post_init__(self):
        if not self.half_width > 0:
            raise DomainError(f"half-width a must be positive, got {self.half_width!r}")
        if not self.ramp_length >= 0:
            raise DomainError(f"ramp length l must be >= 0, got {self.ramp_length!r}")
        if self.ramp_shape not in RAMP_SHAPES:
            raise DomainError(f"unknown ramp shape {self.ramp_shape!r}; known: {sorted(RAMP_SHAPES)}")
        if not math.isfinite(self.omega):
            raise DomainError("omega must be finite")

    @classmethod
    def from_field(cls, b_strength: float, magnetic_moment: float, half_width: float, **kw) -> "FieldProfile":
        return cls(omega=-magnetic_moment * b_strength, half_width=half_width, b_strength=b_strength, **kw)

    @property
    def is_square(self) -> bool:
        return self.ramp_length == 0

    @property
    def x_cut(self) -> float:
        return RAMP_SHAPES[self.ramp_shape][1]

    @property
    def support(self) -> tuple[float, float]:
        edge = self.half_width + self.ramp_length * self.x_cut
        return -edge, edge

    @property
    def field_length(self) -> float:
        """Integral of w(x) over the real line."""
        _, _, g_int, _ = RAMP_SHAPES[self.ramp_shape]
        return 2.0 * self.half_width + 2.0 * self.ramp_length * g_int

    @property
    def max_slope(self) -> float:
        if self.is_square:
            return math.inf
        return RAMP_SHAPES[self.ramp_shape][3] / self.ramp_length

    def w(self, x):
        """Field shape w(x) in [0, 1]; vectorised."""
        x = np.abs(np.asarray(x, dtype=float))
        a = self.half_width
        if self.is_square:
            out = np.where(x <= a, 1.0, 0.0)
        else:
            g = RAMP_SHAPES[self.ramp_shape][0]
            out = np.where(x <= a, 1.0, g((x - a) / self.ramp_length))
        return out if out.ndim else float(out)

    def with_omega(self, omega: float) -> "FieldProfile":
        return replace(self, omega=omega, b_strength=None)


@dataclass(frozen=True)
class SpinTransmission:
    t_plus: complex
    t_minus: complex
    r_plus: complex
    r_minus: complex
    alpha: float


def magnetic_energy(kin: NeutronKinematics, profile: FieldProfile) -> float:
    return 0.5 * kin.hbar * profile.omega


def _coupling(kin: NeutronKinematics, profile: FieldProfile) -> float:
    # m omega / hbar, the shift of k^2 in each channel
    return kin.mass * profile.omega / kin.hbar


def channel_wavenumbers(kin: NeutronKinematics, profile: FieldProfile) -> tuple[float, float]:
    """Real (k_plus, k_minus) inside the flat top; both channels must propagate."""
    k2 = kin.k ** 2
    c = _coupling(kin, profile)
    kp2, km2 = k2 - c, k2 + c
    if kp2 <= 0 or km2 <= 0:
        raise ChannelClosedError(
            f"spin channel closed: E={float(kin.energy):.6g} does not exceed the magnetic energy "
            f"{abs(float(magnetic_energy(kin, profile))):.6g}"
        )
    return math.sqrt(kp2), math.sqrt(km2)


def square_field_coefficients(kin: NeutronKinematics, profile: FieldProfile, spin_sign: int) -> tuple[complex, complex]:
    """Exact (T, R) for one spin channel of the square field region.

    ``spin_sign`` is +1 (barrier) or -1 (well). Below the barrier the
    channel wavenumber is imaginary and the result describes tunnelling.
    """
    if not profile.is_square:
        raise DomainError("square_field_coefficients needs a square profile (ramp_length == 0)")
    if spin_sign not in (1, -1):
        raise DomainError(f"spin_sign must be +1 or -1, got {spin_sign!r}")
    k = kin.k
    a = profile.half_width
    q2 = k * k - spin_sign * _coupling(kin, profile)
    if q2 == 0:
        raise ThresholdError("channel wavenumber is exactly zero (E equals the magnetic energy)")
    q = cmath.sqrt(complex(q2, 0.0))
    # Numerator and denominator multiplied by e^{2iqa}: stays finite for deep tunnelling.
    half = cmath.exp(2j * q * a)
    full = half * half
    den = (k + q) ** 2 - (k - q) ** 2 * full
    ref = cmath.exp(-2j * k * a)
    t = 4.0 * k * q * ref * half / den
    r = (k * k - q * q) * ref * (1.0 - full) / den
    return t, r


def rotation_angle_exact(kin: NeutronKinematics, profile: FieldProfile) -> float:
    """alpha = arg T_minus - arg T_plus for the square profile, unwrapped.

    Writing T = [4kq/(k+q)^2] e^{2i(q-k)a} / (1 - r^2 e^{4iqa}) with
    r = (k-q)/(k+q) splits the phase into 2a(k_minus - k_plus) plus the
    multiple-reflection correction. |r| < 1, so the correction stays in
    (-pi/2, pi/2) and the result is the branch continuous in omega from 0.
    """
    if not profile.is_square:
        raise DomainError("rotation_angle_exact needs a square profile (ramp_length == 0)")
    kp, km = channel_wavenumbers(kin, profile)
    k = kin.k
    a = profile.half_width
    # k_minus - k_plus without cancellation
    direct = 2.0 * a * (2.0 * _coupling(kin, profile)) / (km + kp)

    def multiple_reflection(q):
        r = (k - q) / (k + q)
        return cmath.phase(1.0 - r * r * cmath.exp(4j * q * a))

    return direct - multiple_reflection(km) + multiple_reflection(kp)


def square_field_transmission(kin: NeutronKinematics, profile: FieldProfile) -> SpinTransmission:
    t_p, r_p = square_field_coefficients(kin, profile, +1)
    t_m, r_m = square_field_coefficients(kin, profile, -1)
    return SpinTransmission(t_p, t_m, r_p, r_m, rotation_angle_exact(kin, profile))


def weak_field_transmission(kin: NeutronKinematics, profile: FieldProfile) -> SpinTransmission:
    """Larmor-limit transmission T_pm = exp(-/+ i omega T_cl / 2), no reflection.

    T_cl is the classical traversal time of the field, (integral of w) / v,
    which is 2a/v for the square profile.
    """
    ratio = abs(kin.hbar * profile.omega) / kin.energy
    if ratio >= WEAK_FIELD_MAX_RATIO:
        raise DomainError(f"weak-field approximation invalid: hbar*omega/E = {ratio:.3g} >= {WEAK_FIELD_MAX_RATIO}")
    if ratio >= WEAK_FIELD_WARN_RATIO:
        warnings.warn(f"hbar*omega/E = {ratio:.3g}; weak-field phase is inaccurate", WeakFieldWarning, stacklevel=2)
    alpha = profile.omega * profile.field_length / kin.v
    return SpinTransmission(
        t_plus=cmath.exp(-0.5j * alpha),
        t_minus=cmath.exp(0.5j * alpha),
        r_plus=0j,
        r_minus=0j,
        alpha=alpha,
    )


def semiclassical_phase(kin: NeutronKinematics, profile: FieldProfile, tol: float = 1e-10) -> float:
    """alpha = integral of k_minus(x) - k_plus(x) over the field region.

    The flat top is integrated analytically; each ramp by adaptive
    quadrature to absolute tolerance ``tol``.
    """
    kp, km = channel_wavenumbers(kin, profile)
    a = profile.half_width
    l = profile.ramp_length
    c = _coupling(kin, profile)
    alpha = 2.0 * a * 2.0 * c / (km + kp)
    if l == 0:
        return alpha
    if kin.k * l < SEMICLASSICAL_MIN_KL:
        warnings.warn(f"k*l = {kin.k * l:.3g} < {SEMICLASSICAL_MIN_KL}: semiclassical phase unreliable",
                      SemiclassicalWarning, stacklevel=2)
    g, cut, _, _ = RAMP_SHAPES[profile.ramp_shape]
    k2 = kin.k ** 2

    def integrand(s):
        gc = c * float(g(s))
        return 2.0 * gc / (math.sqrt(k2 + gc) + math.sqrt(k2 - gc))

    value, err, info, *msg = integrate.quad(integrand, 0.0, cut, epsabs=tol / l, epsrel=1e-13,
                                            limit=200, full_output=1)
    if msg:
        raise NumericalError(f"ramp quadrature did not converge: {msg[0].strip()} "
                             f"(estimate {value!r}, error {err!r}, {info['neval']} evaluations)")
    return alpha + 2.0 * l * value


def sojourn_time(kin: NeutronKinematics, profile: FieldProfile, spinor: Spinor) -> float:
    """Spin-weighted flat-top traversal time 2a/v_plus |xi_+|^2 + 2a/v_minus |xi_-|^2."""
    kp, km = channel_wavenumbers(kin, profile)
    length = 2.0 * profile.half_width
    scale = kin.mass / kin.hbar
    return length * scale * (spinor.p_up / kp + spinor.p_down / km)


def _quadrant_phase(theta: float) -> complex:
    # exp(i theta), exact when theta is a multiple of pi/2
    n = round(theta / (0.5 * math.pi))
    if n * (0.5 * math.pi) == theta:
        return (1.0, 1j, -1.0, -1j)[n % 4]
    return complex(math.cos(theta), math.sin(theta))


def apply_spin_phase(spinor: Spinor, alpha: float) -> Spinor:
    """Rotate about the field axis: (xi_+, xi_-) -> (e^{-i alpha/2} xi_+, e^{+i alpha/2} xi_-)."""
    return Spinor(_quadrant_phase(-0.5 * alpha) * spinor.xi_plus, _quadrant_phase(0.5 * alpha) * spinor.xi_minus)


def group_delays(kin: NeutronKinematics, profile: FieldProfile, rel_step: float = GROUP_DELAY_REL_STEP) -> tuple[float, float]:
    """Phase times hbar d(phase)/dE of both channels across the field region.

    The phase is that of T e^{2ika}, i.e. referenced to the entrance plane,
    so both delays tend to 2a/v as omega -> 0. Central differences with a
    relative energy step ``rel_step``.
    """
    h = rel_step * kin.energy
    lo, hi = kin.with_energy(kin.energy - h), kin.with_energy(kin.energy + h)
    channel_wavenumbers(lo, profile)
    a = profile.half_width

    def referenced(k_in, spin_sign):
        t, _ = square_field_coefficients(k_in, profile, spin_sign)
        return t * cmath.exp(2j * k_in.k * a)

    delays = []
    for sign in (1, -1):
        dphi = cmath.phase(referenced(hi, sign) * referenced(lo, sign).conjugate())
        delays.append(kin.hbar * dphi / (2.0 * h))
    return delays[0], delays[1]
