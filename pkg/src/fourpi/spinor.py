from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .errors import DomainError

NORM_TOL = 1e-12


@dataclass(frozen=True)
class Spinor:
    """Spin-1/2 state (xi_plus, xi_minus) along the field axis."""

    xi_plus: complex
    xi_minus: complex

    def __post_init__(self):
        object.__setattr__(self, "xi_plus", complex(self.xi_plus))
        object.__setattr__(self, "xi_minus", complex(self.xi_minus))
        if abs(self.norm_sq - 1.0) > NORM_TOL:
            raise DomainError(f"spinor is not normalised (|xi|^2 = {self.norm_sq!r})")

    @property
    def norm_sq(self) -> float:
        return abs(self.xi_plus) ** 2 + abs(self.xi_minus) ** 2

    @property
    def p_up(self) -> float:
        return abs(self.xi_plus) ** 2

    @property
    def p_down(self) -> float:
        return abs(self.xi_minus) ** 2

    def as_array(self) -> np.ndarray:
        return np.array([self.xi_plus, self.xi_minus], dtype=complex)

    @classmethod
    def up(cls) -> "Spinor":
        return cls(1.0, 0.0)

    @classmethod
    def down(cls) -> "Spinor":
        return cls(0.0, 1.0)

    @classmethod
    def from_up_probability(cls, p_up: float, relative_phase: float = 0.0) -> "Spinor":
        if not 0.0 <= p_up <= 1.0:
            raise DomainError(f"spin-up probability must lie in [0, 1], got {p_up!r}")
        down = math.sqrt(1.0 - p_up) * complex(math.cos(relative_phase), math.sin(relative_phase))
        return cls(math.sqrt(p_up), down)

    @classmethod
    def from_bloch(cls, theta: float, phi: float) -> "Spinor":
        return cls(math.cos(theta / 2), complex(math.cos(phi), math.sin(phi)) * math.sin(theta / 2))

    def with_global_phase(self, theta: float) -> "Spinor":
        ph = complex(math.cos(theta), math.sin(theta))
        return Spinor(ph * self.xi_plus, ph * self.xi_minus)
