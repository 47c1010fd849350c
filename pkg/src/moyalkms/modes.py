"""Finite momentum mode sets: the shared discretization of the mass shell.

The same weights w_i = delta3k / (2 eps_i) are used by the closed-form
evaluators (as a discrete measure) and by the Fock oracle (as packet sampling
weights), so the two sides agree up to occupation truncation only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionBoundError
from .minkowski import energy, four_vector

DEFAULT_MAX_DIM = 4096


@dataclass(frozen=True, eq=False)
class ModeSet:
    """Pairwise-distinct spatial momenta with an occupation cutoff per mode."""

    momenta: np.ndarray  # (M, 3)
    mass: float
    cutoff: int
    delta3k: float = 1.0
    max_dim: int = DEFAULT_MAX_DIM

    def __post_init__(self):
        ks = np.asarray(self.momenta, dtype=float)
        if ks.ndim != 2 or ks.shape[1] != 3:
            raise ValueError("momenta must have shape (M, 3)")
        if self.mass <= 0:
            raise ValueError("mass must be positive")
        if self.cutoff < 1:
            raise ValueError("occupation cutoff must be >= 1")
        if self.delta3k <= 0:
            raise ValueError("delta3k must be positive")
        for i in range(len(ks)):
            for j in range(i + 1, len(ks)):
                if np.array_equal(ks[i], ks[j]):
                    raise ValueError("modes must be pairwise distinct")
        dim = (self.cutoff + 1) ** len(ks)
        if dim > self.max_dim:
            raise DimensionBoundError(
                f"Hilbert dimension {dim} exceeds the bound {self.max_dim}"
            )
        ks = ks.copy()
        ks.flags.writeable = False
        object.__setattr__(self, "momenta", ks)

    @property
    def n_modes(self) -> int:
        return len(self.momenta)

    @property
    def dim(self) -> int:
        return (self.cutoff + 1) ** self.n_modes

    @property
    def energies(self) -> np.ndarray:
        return energy(self.momenta, self.mass)

    @property
    def weights(self) -> np.ndarray:
        """Mass-shell quadrature weights delta3k / (2 eps_i)."""
        return self.delta3k / (2.0 * self.energies)

    def momentum_vector(self, i: int, sign: int = +1) -> np.ndarray:
        k = self.momenta[i]
        return sign * four_vector(energy(k, self.mass), k)

    def truncation_bound(self, beta: float) -> float:
        """Geometric-series bound e^{-(N+1) beta eps_min} on occupation truncation."""
        return float(np.exp(-(self.cutoff + 1) * beta * self.energies.min()))


def cutoff_for(beta: float, eps_min: float, target: float = 1e-10) -> int:
    """Smallest occupation cutoff N with e^{-(N+1) beta eps_min} < target."""
    if target <= 0 or beta <= 0 or eps_min <= 0:
        raise ValueError("beta, eps_min and target must be positive")
    n = int(np.ceil(-np.log(target) / (beta * eps_min) - 1.0 + 1e-12))
    return max(n, 1)
