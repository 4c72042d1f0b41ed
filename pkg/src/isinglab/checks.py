"""Engine-vs-enumeration agreement check on an exactly solvable lattice."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exact import enumerate_thermodynamics
from .lattice import LatticeSpec
from .metropolis import RngStream, SimulationParams, initial_lattice, measure_sweeps, run_sweeps


@dataclass(frozen=True)
class OracleAgreement:
    temperature: float
    n_sweeps: int
    exact_energy_per_site: float
    exact_abs_magnetization: float
    est_energy_per_site: float
    est_abs_magnetization: float
    se_energy_per_site: float
    se_abs_magnetization: float

    @property
    def z_energy(self) -> float:
        return abs(self.est_energy_per_site - self.exact_energy_per_site) / self.se_energy_per_site

    @property
    def z_magnetization(self) -> float:
        return abs(self.est_abs_magnetization - self.exact_abs_magnetization) / self.se_abs_magnetization

    @property
    def passed(self) -> bool:
        return self.z_energy <= 3.0 and self.z_magnetization <= 3.0


def _batch_se(series: np.ndarray, n_batches: int) -> float:
    """Standard error via batch means; robust to sweep-to-sweep correlation."""
    usable = (series.size // n_batches) * n_batches
    batches = series[:usable].reshape(n_batches, -1).mean(axis=1)
    return float(batches.std(ddof=1) / np.sqrt(n_batches))


def oracle_agreement(
    spec: LatticeSpec | None = None,
    temperature: float = 2.5,
    n_sweeps: int = 100_000,
    seed: int = 2021,
    n_batches: int = 100,
) -> OracleAgreement:
    """Compare Metropolis estimates of <E>/N and <|m|> to exact enumeration.

    Defaults to the 4x4 periodic ferromagnet at T = 2.5, thermalized for the
    standard 750 sweeps and then measured after every sweep.
    """
    if spec is None:
        spec = LatticeSpec(rows=4, cols=4)
    exact = enumerate_thermodynamics(spec, temperature)
    params = SimulationParams(temperature=temperature, seed=seed)
    rng = RngStream(seed)
    lattice = initial_lattice(spec, temperature, rng)
    run_sweeps(lattice, spec, params, rng, params.thermalization_sweeps)
    mags, energies = measure_sweeps(lattice, spec, params, rng, n_sweeps)
    abs_m = np.abs(mags)
    return OracleAgreement(
        temperature=temperature,
        n_sweeps=n_sweeps,
        exact_energy_per_site=exact.mean_energy / spec.n_sites,
        exact_abs_magnetization=exact.mean_abs_magnetization,
        est_energy_per_site=float(energies.mean()),
        est_abs_magnetization=float(abs_m.mean()),
        se_energy_per_site=_batch_se(energies, n_batches),
        se_abs_magnetization=_batch_se(abs_m, n_batches),
    )
