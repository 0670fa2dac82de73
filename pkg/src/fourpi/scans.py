"""Parameter sweeps behind the CLI subcommands, and their CSV/SVG emission."""
from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np

from .config import ScanConfig
from .crystal_optics import diffraction_amplitudes
from .interferometer import field_to_alpha, interferometer_outputs
from .magnetic_region import square_field_coefficients
from .schrodinger_oracle import discretize_profile, transfer_matrix_transmission

COLUMNS = {
    "alpha": ("alpha_rad", "i1", "i2", "i3", "i4"),
    "field": ("b_field", "alpha_rad", "i2", "i3"),
    "thickness": ("d_over_delta", "i2", "i3", "i2_plus_i3"),
    "detuning": ("y", "abs_at_sq", "abs_ar_sq"),
    "oracle": ("energy", "t_re", "t_im", "t_ref_re", "t_ref_im", "abs_err"),
}

PLOT_COLUMNS = {
    "alpha": ("i1", "i2", "i3", "i4"),
    "field": ("i2", "i3"),
    "thickness": ("i2", "i3", "i2_plus_i3"),
    "detuning": ("abs_at_sq", "abs_ar_sq"),
    "oracle": ("abs_err",),
}

ORACLE_SEGMENTS = 8


@dataclass
class ScanResult:
    kind: str
    columns: tuple
    data: np.ndarray
    summary: dict = field(default_factory=dict)

    def column(self, name):
        return self.data[:, self.columns.index(name)]


def _alpha_scan(cfg, grid):
    p = cfg.fixed
    out = interferometer_outputs(p.tau, grid, p.spinor(), y=p.y)
    i1, i2, i3, i4 = (p.count_rate * i for i in out.intensities)
    return [grid, i1, i2, i3, i4], {}


def _field_scan(cfg, grid):
    p = cfg.fixed
    kin = p.kinematics()
    alphas = np.array([field_to_alpha(kin, p.profile(omega=-p.mu * b), p.mode) for b in grid])
    out = interferometer_outputs(p.tau, alphas, p.spinor(), y=p.y)
    return [grid, alphas, p.count_rate * out.i2, p.count_rate * out.i3], {}


def _thickness_scan(cfg, grid):
    p = cfg.fixed
    alpha = field_to_alpha(p.kinematics(), p.profile(), p.mode)
    out = interferometer_outputs(math.pi * grid, alpha, p.spinor(), y=p.y)
    i2, i3 = p.count_rate * out.i2, p.count_rate * out.i3
    return [grid, i2, i3, i2 + i3], {}


def _detuning_scan(cfg, grid):
    amps = diffraction_amplitudes(cfg.fixed.tau, grid)
    return [grid, np.abs(amps.a_t) ** 2, np.abs(amps.a_r) ** 2], {}


def _oracle_scan(cfg, grid):
    p = cfg.fixed
    profile = p.profile()
    seg = discretize_profile(profile, p.spin_sign, ORACLE_SEGMENTS, p.hbar)
    t_ref, _ = transfer_matrix_transmission(seg, grid, p.mass, p.hbar)
    t = np.array([square_field_coefficients(p.kinematics(e), profile, p.spin_sign)[0] for e in grid])
    err = np.abs(t - t_ref)
    return [grid, t.real, t.imag, t_ref.real, t_ref.imag, err], {"max_abs_err": float(err.max())}


_RUNNERS = {
    "alpha": _alpha_scan,
    "field": _field_scan,
    "thickness": _thickness_scan,
    "detuning": _detuning_scan,
    "oracle": _oracle_scan,
}


def run_scan(cfg: ScanConfig) -> ScanResult:
    grid = np.linspace(cfg.start, cfg.stop, cfg.n_points)
    cols, summary = _RUNNERS[cfg.scan_kind](cfg, grid)
    data = np.column_stack([np.broadcast_to(np.asarray(c, dtype=float), grid.shape) for c in cols])
    return ScanResult(cfg.scan_kind, COLUMNS[cfg.scan_kind], data, summary)


def format_value(x: float) -> str:
    return f"{x:.11e}"


def write_csv(result: ScanResult, fh):
    fh.write(",".join(result.columns) + "\n")
    for row in result.data:
        fh.write(",".join(format_value(v) for v in row) + "\n")


def write_svg(result: ScanResult, path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    x_name = result.columns[0]
    with matplotlib.rc_context({"svg.hashsalt": "fourpi", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(7, 4.5))
        for name in PLOT_COLUMNS[result.kind]:
            ax.plot(result.column(x_name), result.column(name), label=name)
        ax.set_xlabel(x_name)
        ax.legend()
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
