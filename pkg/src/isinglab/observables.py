"""Scalar diagnostics of a microstate: magnetizations and energy density."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .lattice import Lattice, LatticeSpec, total_energy


@dataclass(frozen=True)
class ObservableSet:
    magnetization_per_spin: float
    energy_per_site: float
    staggered_magnetization: float


def magnetization_per_spin(lattice: Lattice) -> float:
    """Order parameter of the ferromagnetic phase: mean spin, in [-1, 1]."""
    return float(lattice.spins.mean())


def energy_per_site(lattice: Lattice, spec: LatticeSpec) -> float:
    return total_energy(lattice, spec) / spec.n_sites


@lru_cache(maxsize=32)
def _sublattice_phase(rows: int, cols: int) -> np.ndarray:
    r, c = np.indices((rows, cols))
    phase = np.where((r + c) % 2 == 0, 1, -1).astype(np.int8)
    phase.flags.writeable = False
    return phase


def staggered_magnetization(lattice: Lattice) -> float:
    """Order parameter of the anti-ferromagnetic phase.

    Sublattice-signed mean spin (1/N) sum (-1)^(r+c) sigma_rc, with the
    (0, 0) sublattice taken positive.
    """
    phase = _sublattice_phase(lattice.rows, lattice.cols)
    return float((lattice.spins * phase).mean())


def observe(lattice: Lattice, spec: LatticeSpec) -> ObservableSet:
    return ObservableSet(
        magnetization_per_spin=magnetization_per_spin(lattice),
        energy_per_site=energy_per_site(lattice, spec),
        staggered_magnetization=staggered_magnetization(lattice),
    )
