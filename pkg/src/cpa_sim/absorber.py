"""Subwavelength absorber description.

A thin symmetric absorber with amplitude reflection r and transmission t obeys
t = 1 + r (no interaction at a standing-wave node), so a single real parameter
r in [-1/2, 0] fixes the device.  In the standing basis it acts diagonally:
the cosine mode keeps amplitude tau_c = t + r = 1 + 2r while the sine mode
passes untouched (tau_s = t - r = 1).  The canonical coherent-perfect-absorber
point is r = -1/2, t = 1/2, where the cosine mode is fully absorbed.

``swap_roles`` selects the mirror device (t = r = 1/2 at the canonical point)
which couples the sine mode to the environment instead and lets the cosine
mode pass.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .modes import ModeKind

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)


@dataclass(frozen=True)
class AbsorberSpec:
    reflection: float = -0.5
    swap_roles: bool = False

    def __post_init__(self) -> None:
        if not -0.5 <= self.reflection <= 0.0:
            raise ValueError(
                f"absorber reflection must lie in [-0.5, 0], got {self.reflection}"
            )

    @property
    def transmission(self) -> float:
        return 1.0 + self.reflection

    @property
    def tau_c(self) -> float:
        """Amplitude transmissivity of the absorbed standing mode (t + r)."""
        return self.transmission + self.reflection

    @property
    def tau_s(self) -> float:
        """Amplitude transmissivity of the untouched standing mode (t - r)."""
        return self.transmission - self.reflection

    @property
    def absorbed_kind(self) -> ModeKind:
        return ModeKind.S if self.swap_roles else ModeKind.C

    def transmissivity_of(self, kind: ModeKind) -> float:
        return self.tau_c if kind is self.absorbed_kind else 1.0


CANONICAL = AbsorberSpec(reflection=-0.5)


def classical_travelling_matrix(spec: AbsorberSpec) -> np.ndarray:
    """2x2 map of classical travelling-wave amplitudes through the absorber.

    Sandwich of the standing-basis diagonal between two balanced basis
    changes; at the canonical point it equals (1/2)[[1, -1], [-1, 1]].
    """
    diag = np.diag(
        [spec.transmissivity_of(ModeKind.C), spec.transmissivity_of(ModeKind.S)]
    )
    return HADAMARD @ diag @ HADAMARD
