"""Single-flip Metropolis-Hastings dynamics: steps, sweeps, thermalization.

One proposal picks a site uniformly at random, computes the local energy
change, and accepts with probability min(1, exp(-dE/T)); a sweep is exactly
rows*cols proposals. The inner loop is JIT-compiled (numba) and advances a
pcg32 stream in place, so trajectories are bit-reproducible for a given
(spec, params, seed, initial state).

Stream accounting (it changes replay alignment, so it is pinned here):

* a proposal consumes one 32-bit draw for the site, and one more uniform
  draw only when dE > 0 and T > 0;
* hot initialization consumes one 32-bit draw per site (top bit = spin up);
* ordered initialization consumes a single 32-bit draw (top bit selects the
  ground-state branch: uniform sign for J > 0, sublattice parity for J < 0).

Initialization is phase-aware: sample_microstate() starts from the ordered
branch below the critical temperature and from a hot (random) lattice at or
above it. A hot start quenched at T well below T_c coarsens like sqrt(t)
and cannot order a 100x100 lattice within the default 750 sweeps, so the
ordered start is what makes low-temperature sampling honest at that depth.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .exact import T_CRITICAL
from .lattice import Lattice, LatticeSpec, adjacency, bond_arrays, _check_dims
from .rng import RngStream, _pcg32_below, _pcg32_next, _pcg32_uniform


@dataclass(frozen=True)
class SimulationParams:
    """Metropolis schedule: temperature in J/k_B, sweep counts, seed."""

    temperature: float
    thermalization_sweeps: int = 750
    measurement_interval_sweeps: int = 500
    seed: int = 0

    def __post_init__(self):
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if self.thermalization_sweeps < 0:
            raise ValueError("thermalization_sweeps must be >= 0")
        if self.measurement_interval_sweeps <= 0:
            raise ValueError("measurement_interval_sweeps must be > 0")


@dataclass
class RunRecord:
    """Per-sweep traces plus the final state of one simulation run."""

    params: SimulationParams
    spec: LatticeSpec
    magnetization_trace: list[tuple[int, float]] = field(default_factory=list)
    energy_trace: list[tuple[int, float]] = field(default_factory=list)
    final_lattice: Lattice | None = None


def acceptance_probability(delta_e: float, temperature: float) -> float:
    """min(1, exp(-dE/T)), with the T -> 0 limit: accept iff dE <= 0."""
    if delta_e <= 0:
        return 1.0
    if temperature == 0:
        return 0.0
    return float(np.exp(-delta_e / temperature))


@njit(cache=True)
def _propose(spins, nbr_idx, nbr_cpl, nbr_off, bfield, temperature, state, n_proposals):
    """Run n_proposals single-flip proposals in place; returns accept count."""
    n = spins.size
    accepted = 0
    for _ in range(n_proposals):
        site = np.int64(_pcg32_below(state, np.uint32(n)))
        s = spins[site]
        local = 0.0
        for p in range(nbr_off[site], nbr_off[site + 1]):
            local += nbr_cpl[p] * spins[nbr_idx[p]]
        delta = 2.0 * s * (local + bfield)
        if delta <= 0.0:
            spins[site] = -s
            accepted += 1
        elif temperature > 0.0:
            if _pcg32_uniform(state) < np.exp(-delta / temperature):
                spins[site] = -s
                accepted += 1
    return accepted


@njit(cache=True)
def _bond_energy(spins, bond_a, bond_b, bond_j, bfield):
    e = 0.0
    for k in range(bond_a.size):
        e -= bond_j[k] * spins[bond_a[k]] * spins[bond_b[k]]
    if bfield != 0.0:
        ssum = 0
        for i in range(spins.size):
            ssum += spins[i]
        e -= bfield * ssum
    return e


@njit(cache=True)
def _sweep_series(
    spins, nbr_idx, nbr_cpl, nbr_off, bond_a, bond_b, bond_j,
    bfield, temperature, state, n_sweeps,
):
    """n_sweeps sweeps, recording (m, E/N) after each one."""
    n = spins.size
    mags = np.empty(n_sweeps, dtype=np.float64)
    energies = np.empty(n_sweeps, dtype=np.float64)
    for k in range(n_sweeps):
        _propose(spins, nbr_idx, nbr_cpl, nbr_off, bfield, temperature, state, n)
        ssum = 0
        for i in range(n):
            ssum += spins[i]
        mags[k] = ssum / n
        energies[k] = _bond_energy(spins, bond_a, bond_b, bond_j, bfield) / n
    return mags, energies


def metropolis_step(
    lattice: Lattice, spec: LatticeSpec, params: SimulationParams, rng: RngStream
) -> bool:
    """One proposal; mutates the lattice iff accepted."""
    _check_dims(lattice, spec)
    idx, cpl, off = adjacency(spec)
    n_acc = _propose(
        lattice.flat, idx, cpl, off, spec.field, params.temperature, rng.state, 1
    )
    return bool(n_acc)


def sweep(
    lattice: Lattice, spec: LatticeSpec, params: SimulationParams, rng: RngStream
) -> int:
    """Exactly rows*cols proposals; returns how many were accepted."""
    _check_dims(lattice, spec)
    idx, cpl, off = adjacency(spec)
    return int(
        _propose(
            lattice.flat, idx, cpl, off, spec.field, params.temperature,
            rng.state, spec.n_sites,
        )
    )


def measure_sweeps(
    lattice: Lattice,
    spec: LatticeSpec,
    params: SimulationParams,
    rng: RngStream,
    n_sweeps: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Run n_sweeps sweeps, returning per-sweep (m, E/N) arrays."""
    _check_dims(lattice, spec)
    idx, cpl, off = adjacency(spec)
    a, b, j = bond_arrays(spec)
    return _sweep_series(
        lattice.flat, idx, cpl, off, a, b, j,
        spec.field, params.temperature, rng.state, n_sweeps,
    )


def run_sweeps(
    lattice: Lattice,
    spec: LatticeSpec,
    params: SimulationParams,
    rng: RngStream,
    n_sweeps: int,
) -> int:
    """n_sweeps sweeps without per-sweep measurement; returns accept count.

    Consumes the stream identically to n_sweeps calls of sweep().
    """
    _check_dims(lattice, spec)
    idx, cpl, off = adjacency(spec)
    return int(
        _propose(
            lattice.flat, idx, cpl, off, spec.field, params.temperature,
            rng.state, n_sweeps * spec.n_sites,
        )
    )


def thermalize(
    lattice: Lattice, spec: LatticeSpec, params: SimulationParams, rng: RngStream
) -> RunRecord:
    """Run the thermalization sweeps, tracing m and E/N after each sweep."""
    record = RunRecord(params=params, spec=spec)
    n_sweeps = params.thermalization_sweeps
    if n_sweeps > 0:
        mags, energies = measure_sweeps(lattice, spec, params, rng, n_sweeps)
        record.magnetization_trace = [(k + 1, float(m)) for k, m in enumerate(mags)]
        record.energy_trace = [(k + 1, float(e)) for k, e in enumerate(energies)]
    record.final_lattice = lattice.copy()
    return record


def hot_lattice(spec: LatticeSpec, rng: RngStream) -> Lattice:
    """Independent +/-1 per site, one 32-bit draw each (top bit)."""
    spins = np.empty(spec.n_sites, dtype=np.int8)
    for i in range(spec.n_sites):
        spins[i] = 1 if rng.next_u32() >> 31 else -1
    return Lattice(spec.rows, spec.cols, spins.reshape(spec.rows, spec.cols))


def ordered_lattice(spec: LatticeSpec, rng: RngStream) -> Lattice:
    """A ground-state branch of the coupling: uniform for J > 0, else checkerboard."""
    branch = rng.next_u32() >> 31
    if spec.coupling > 0:
        return Lattice.filled(spec.rows, spec.cols, 1 if branch else -1)
    return Lattice.checkerboard(spec.rows, spec.cols, parity=branch)


def initial_lattice(spec: LatticeSpec, temperature: float, rng: RngStream) -> Lattice:
    """Phase-aware start: ordered branch below T_c, hot at or above."""
    if temperature < T_CRITICAL:
        return ordered_lattice(spec, rng)
    return hot_lattice(spec, rng)


def sample_microstate(spec: LatticeSpec, temperature: float, seed: int) -> Lattice:
    """One equilibrated microstate, fully deterministic in (spec, T, seed).

    Phase-aware initialization followed by the default 750 thermalization
    sweeps.
    """
    params = SimulationParams(temperature=temperature, seed=seed)
    rng = RngStream(seed)
    lattice = initial_lattice(spec, temperature, rng)
    if params.thermalization_sweeps > 0:
        run_sweeps(lattice, spec, params, rng, params.thermalization_sweeps)
    return lattice
