"""Brute-force enumeration oracle for tiny lattices, plus pinned constants.

Enumerates all 2^N microstates (N <= 24, kept under ~17M states) to produce
exact thermal expectations against which the Metropolis engine is validated.
Weights are computed with the max-shift trick, exp(-(E - E_min)/T), so low
temperatures do not overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lattice import LatticeSpec, bond_arrays

# Exact critical temperature of the infinite 2D square-lattice ferromagnet,
# 2 / ln(1 + sqrt(2)), in units of J/k_B.
T_CRITICAL: float = 2.0 / math.log(1.0 + math.sqrt(2.0))

MAX_ENUM_SITES = 24
_CHUNK = 1 << 16


@dataclass(frozen=True)
class ExactThermodynamics:
    """Exact ensemble averages from full enumeration."""

    partition_function: float
    mean_energy: float
    mean_abs_magnetization: float
    log_partition_function: float


def _guard(spec: LatticeSpec) -> int:
    n = spec.n_sites
    if n > MAX_ENUM_SITES:
        raise ValueError(
            f"enumeration limited to {MAX_ENUM_SITES} sites, got {n}"
        )
    return n


def _chunk_energies(
    start: int, stop: int, n: int, spec: LatticeSpec
) -> tuple[np.ndarray, np.ndarray]:
    """Energies and per-spin magnetizations for state indices [start, stop).

    State index bits map to spins: bit k of the index is site k, 0 -> -1.
    """
    a, b, j = bond_arrays(spec)
    idx = np.arange(start, stop, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(n, dtype=np.int64)) & 1
    spins = (2 * bits - 1).astype(np.int8)
    energies = -(spins[:, a] * spins[:, b]) @ j
    ssum = spins.sum(axis=1, dtype=np.int64)
    if spec.field != 0.0:
        energies = energies - spec.field * ssum
    return energies, ssum / n


def enumerate_thermodynamics(
    spec: LatticeSpec, temperature: float
) -> ExactThermodynamics:
    """Exact Z, <E>, <|m|> by summing over all 2^N states.

    Refuses T <= 0: the zero-temperature measure is degenerate; ground-state
    queries go through ground_states() instead.
    """
    n = _guard(spec)
    if temperature <= 0:
        raise ValueError("enumeration requires temperature > 0")
    n_states = 1 << n

    e_min = math.inf
    for start in range(0, n_states, _CHUNK):
        energies, _ = _chunk_energies(start, min(start + _CHUNK, n_states), n, spec)
        e_min = min(e_min, float(energies.min()))

    sum_w = 0.0
    sum_we = 0.0
    sum_wm = 0.0
    for start in range(0, n_states, _CHUNK):
        energies, mags = _chunk_energies(start, min(start + _CHUNK, n_states), n, spec)
        w = np.exp(-(energies - e_min) / temperature)
        sum_w += float(w.sum())
        sum_we += float(np.dot(w, energies))
        sum_wm += float(np.dot(w, np.abs(mags)))

    log_z = math.log(sum_w) - e_min / temperature
    return ExactThermodynamics(
        partition_function=sum_w * math.exp(-e_min / temperature),
        mean_energy=sum_we / sum_w,
        mean_abs_magnetization=sum_wm / sum_w,
        log_partition_function=log_z,
    )


def ground_states(spec: LatticeSpec) -> tuple[float, int]:
    """Exhaustive (minimum energy, number of attaining states)."""
    n = _guard(spec)
    n_states = 1 << n

    e_min = math.inf
    for start in range(0, n_states, _CHUNK):
        energies, _ = _chunk_energies(start, min(start + _CHUNK, n_states), n, spec)
        e_min = min(e_min, float(energies.min()))

    count = 0
    for start in range(0, n_states, _CHUNK):
        energies, _ = _chunk_energies(start, min(start + _CHUNK, n_states), n, spec)
        count += int((energies <= e_min + 1e-9).sum())
    return e_min, count
