"""Numerical model of the 4-pi spinor symmetry experiment in a perfect-crystal neutron interferometer."""

from .crystal_optics import (
    DiffractionAmplitudes,
    PlateParams,
    TwoWaveMode,
    branch_wavevectors,
    characteristic_length,
    detuning_parameter,
    diffraction_amplitudes,
    fermi_fourier_coefficient,
    mode_amplitudes,
    mode_ratio,
    plate_amplitudes,
    two_wave_modes,
)
from .errors import ChannelClosedError, DomainError, GeometryError, NumericalError, ThresholdError
from .interferometer import (
    BeamOutputs,
    beam_amplitudes,
    beam_intensities_closed_form,
    field_to_alpha,
    interferometer_outputs,
)
from .magnetic_region import (
    FieldProfile,
    NeutronKinematics,
    SpinTransmission,
    apply_spin_phase,
    group_delays,
    rotation_angle_exact,
    semiclassical_phase,
    sojourn_time,
    square_field_coefficients,
    square_field_transmission,
    weak_field_transmission,
)
from .schrodinger_oracle import (
    SegmentedProfile,
    discretize_profile,
    oracle_rotation_angle,
    transfer_matrix_transmission,
)
from .spinor import Spinor

__version__ = "0.1.0"
