"""Shared test helpers: independent energy oracle and lattice factories.

naive_total_energy re-sums the Hamiltonian with inline neighbor walking and
boundary logic, deliberately sharing no code with the package's bond-list
implementation, so the two can check each other.
"""

from __future__ import annotations

import numpy as np

from isinglab import Lattice, LatticeSpec


def naive_total_energy(lattice: Lattice, spec: LatticeSpec) -> float:
    s = lattice.spins
    rows, cols = spec.rows, spec.cols
    j, b = spec.coupling, spec.field
    bc = spec.boundary.value
    e = 0.0
    for r in range(rows):
        for c in range(cols):
            # right neighbor, horizontal wrap always present
            jr = j
            cc = c + 1
            if cc == cols:
                cc = 0
                if bc == "antiperiodic":
                    jr = -j
            e -= jr * float(s[r, c]) * float(s[r, cc])
            # down neighbor; skewed has open top/bottom (no vertical wrap)
            rr = r + 1
            jd = j
            if rr == rows:
                if bc == "skewed":
                    continue
                rr = 0
                if bc == "antiperiodic":
                    jd = -j
            e -= jd * float(s[r, c]) * float(s[rr, c])
    e -= b * float(s.sum())
    return e


def random_lattice(rows: int, cols: int, seed: int) -> Lattice:
    rng = np.random.default_rng(seed)
    spins = rng.choice(np.array([-1, 1], dtype=np.int8), size=(rows, cols))
    return Lattice(rows, cols, spins)


def all_boundary_specs(rows: int, cols: int, coupling: float = 1.0, field: float = 0.0):
    from isinglab import BoundaryCondition

    return [
        LatticeSpec(rows, cols, bc, coupling, field)
        for bc in BoundaryCondition
    ]
