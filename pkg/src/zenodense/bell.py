"""The four Bell states of the electron-photon pair, in the composite basis.

Composite basis ordering is fixed once for the whole library:
(block,H), (block,V), (pass,H), (pass,V). The electron (absorptive object)
factor comes first; the identity block of the per-cycle gate operator acts
on the block components and the rotation on the pass components.
"""

from __future__ import annotations

import enum

import numpy as np

from .core import PureState

COMPOSITE_LABELS = ("block,H", "block,V", "pass,H", "pass,V")

_SQ2 = np.sqrt(2.0)


class BellState(enum.Enum):
    """Maximally entangled electron-photon states.

    The Phi family pairs a blocking electron with a V photon against a
    passing electron with an H photon; the Psi family swaps the
    polarizations. In binary labels (block = 0, V = 0) these are the usual
    (|00> +- |11>)/sqrt2 and (|01> +- |10>)/sqrt2.
    """

    PHI_PLUS = ("phi", +1)
    PHI_MINUS = ("phi", -1)
    PSI_PLUS = ("psi", +1)
    PSI_MINUS = ("psi", -1)

    def __init__(self, family: str, sign: int):
        self.family = family
        self.sign = sign

    @property
    def symbol(self) -> str:
        return ("Phi" if self.family == "phi" else "Psi") + ("+" if self.sign > 0 else "-")

    @property
    def branch_index(self) -> int:
        """Per-cycle gate branch: 1 for the Phi family, 0 for Psi."""
        return 1 if self.family == "phi" else 0

    @property
    def surviving_polarization(self) -> str:
        """Photon polarization left after the dual-Zeno gate: V for Phi, H for Psi."""
        return "V" if self.family == "phi" else "H"

    def ket(self) -> PureState:
        if self.family == "phi":
            terms = {"block,V": 1 / _SQ2, "pass,H": self.sign / _SQ2}
        else:
            terms = {"block,H": 1 / _SQ2, "pass,V": self.sign / _SQ2}
        return PureState.from_terms(COMPOSITE_LABELS, terms)


ALL_BELL_STATES = (
    BellState.PHI_PLUS,
    BellState.PHI_MINUS,
    BellState.PSI_PLUS,
    BellState.PSI_MINUS,
)
