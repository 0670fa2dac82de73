"""Brute-force 1D stationary scattering by piecewise-constant transfer matrices.

Used as an independent check of the closed-form spin transmission; nothing
here calls into ``magnetic_region`` beyond reading the ``FieldProfile`` data.

Each segment propagates the state (psi, psi') backwards from its right edge
to its left edge. Starting from the purely outgoing wave T e^{ikx} with T = 1
on the right, the state on the left is split into incoming and reflected
plane waves, giving T = 1 / a_in and R = a_out / a_in.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ThresholdError


@dataclass(frozen=True)
class SegmentedProfile:
    breakpoints: np.ndarray
    potential_values: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.breakpoints, dtype=float)
        v = np.asarray(self.potential_values, dtype=float)
        if x.ndim != 1 or x.size < 2:
            raise DomainError("need at least one segment (two breakpoints)")
        if not np.all(np.diff(x) > 0):
            raise DomainError("breakpoints must be strictly increasing")
        if v.shape[-1] != x.size - 1:
            raise DomainError(f"{x.size - 1} segments but {v.shape[-1]} potential values")
        object.__setattr__(self, "breakpoints", x)
        object.__setattr__(self, "potential_values", v)

    @property
    def n_segments(self) -> int:
        return self.breakpoints.size - 1

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.breakpoints)

    def reversed(self) -> "SegmentedProfile":
        """Mirror image x -> -x (right incidence on the original profile)."""
        return SegmentedProfile(-self.breakpoints[::-1], self.potential_values[..., ::-1])


def discretize_profile(profile, spin_sign: int, n_segments: int, hbar: float = 1.0) -> SegmentedProfile:
    """Midpoint-sampled piecewise-constant version of +/- (hbar omega / 2) w(x)."""
    if n_segments < 1:
        raise DomainError(f"n_segments must be >= 1, got {n_segments!r}")
    if spin_sign not in (1, -1):
        raise DomainError(f"spin_sign must be +1 or -1, got {spin_sign!r}")
    lo, hi = profile.support
    x = np.linspace(lo, hi, n_segments + 1)
    if profile.ramp_length == 0:
        values = np.ones(n_segments)
    else:
        values = np.asarray(profile.w(0.5 * (x[:-1] + x[1:])), dtype=float)
    return SegmentedProfile(x, spin_sign * 0.5 * hbar * profile.omega * values)


def _segment_matrices(q, h):
    """Backward propagators over each segment, scaled to unit max entry.

    Returns (mats, log_scale) with the true matrix = exp(log_scale) * mats.
    For evanescent segments cosh/sinh are written with the growing
    exponential factored out.
    """
    qh = q * h
    kappa = np.abs(q.imag)
    # cos(qh) = e^{|Im qh|} * c_s, etc.
    growth = kappa * h
    e_plus = np.exp(1j * qh - growth)
    e_minus = np.exp(-1j * qh - growth)
    c = 0.5 * (e_plus + e_minus)
    s = (e_plus - e_minus) / 2j
    mats = np.empty(q.shape + (2, 2), dtype=complex)
    mats[..., 0, 0] = c
    mats[..., 0, 1] = -s / q
    mats[..., 1, 0] = q * s
    mats[..., 1, 1] = c
    return mats, growth


def _chain_product(mats, log_scale):
    """Ordered product mats[0] @ mats[1] @ ... along axis -3, with rescaling."""
    while mats.shape[-3] > 1:
        n = mats.shape[-3]
        if n % 2:
            pad = np.broadcast_to(np.eye(2, dtype=complex), mats.shape[:-3] + (1, 2, 2))
            mats = np.concatenate([mats, pad], axis=-3)
            log_scale = np.concatenate([log_scale, np.zeros(log_scale.shape[:-1] + (1,))], axis=-1)
        prod = mats[..., 0::2, :, :] @ mats[..., 1::2, :, :]
        norm = np.max(np.abs(prod), axis=(-2, -1))
        norm = np.where(norm > 0, norm, 1.0)
        mats = prod / norm[..., None, None]
        log_scale = log_scale[..., 0::2] + log_scale[..., 1::2] + np.log(norm)
    return mats[..., 0, :, :], log_scale[..., 0]


def _solve(k, q, x):
    """Batched core: k (...), q (..., N) complex local wavenumbers, x (N+1,)."""
    h = np.diff(x)
    mats, log_scale = _segment_matrices(q, h)
    m, scale = _chain_product(mats, log_scale)
    k = np.asarray(k, dtype=float)
    # outgoing wave with unit amplitude at the right edge
    xr, xl = x[-1], x[0]
    out = np.exp(1j * k * xr)
    psi_r = np.stack([out, 1j * k * out], axis=-1)
    psi_l = np.einsum("...ij,...j->...i", m, psi_r)
    psi, dpsi = psi_l[..., 0], psi_l[..., 1]
    # psi = A e^{ikx} + B e^{-ikx}, scaled by exp(-scale)
    a_in = 0.5 * (psi + dpsi / (1j * k)) * np.exp(-1j * k * xl)
    a_out = 0.5 * (psi - dpsi / (1j * k)) * np.exp(1j * k * xl)
    t = np.exp(-scale) / a_in
    r = a_out / a_in
    return t, r


def _local_wavenumbers(e, values, mass, hbar):
    kin = 2.0 * mass * (np.asarray(e, dtype=float)[..., None] - values) / hbar ** 2
    if np.any(kin == 0):
        raise ThresholdError("a segment has zero local wavenumber (E equals its potential)")
    return np.sqrt(kin.astype(complex))


def transfer_matrix_transmission(seg: SegmentedProfile, energy: float, mass: float = 1.0, hbar: float = 1.0):
    """Transmission and reflection amplitudes (T, R) for left incidence.

    Plane-wave convention: e^{ikx} + R e^{-ikx} left of the profile,
    T e^{ikx} right of it. ``energy`` may be an array; segment potentials
    may carry leading batch dimensions that broadcast against it.
    """
    e = np.asarray(energy, dtype=float)
    if np.any(e <= 0):
        raise DomainError("energy must be positive")
    q = _local_wavenumbers(e, seg.potential_values, mass, hbar)
    k = np.sqrt(2.0 * mass * e) / hbar
    t, r = _solve(k, q, seg.breakpoints)
    if np.ndim(t) == 0:
        return complex(t), complex(r)
    return t, r


def oracle_rotation_angle(profile, energy: float, mass: float = 1.0, hbar: float = 1.0,
                          n_segments: int = 10_000, n_steps: int = 256) -> float:
    """arg(T_minus / T_plus) on the discretised profile, unwrapped in omega.

    The field is ramped from zero to ``profile.omega`` in ``n_steps`` steps
    and the phase followed continuously, starting from alpha = 0.
    """
    omegas = np.linspace(0.0, profile.omega, n_steps + 1)
    base_up = discretize_profile(profile.with_omega(1.0), +1, n_segments, hbar)
    shape = base_up.potential_values / (0.5 * hbar)
    x = base_up.breakpoints
    k = np.sqrt(2.0 * mass * energy) / hbar
    vals = 0.5 * hbar * omegas[:, None] * shape[None, :]
    e = np.full(omegas.shape, float(energy))
    t_up, _ = _solve(k, _local_wavenumbers(e, vals, mass, hbar), x)
    t_down, _ = _solve(k, _local_wavenumbers(e, -vals, mass, hbar), x)
    alpha = np.unwrap(np.angle(t_down * np.conj(t_up)))
    return float(alpha[-1])
