"""2D Ising lattice state, boundary-condition topologies, and the energy function.

Energy convention:

    H(sigma) = -sum_<a,b> J_ab sigma_a sigma_b  -  B sum_i sigma_i

with sigma = +/-1 on a rows x cols grid. Sites are indexed row-major,
site = r * cols + c, and each physical bond appears exactly once in the
bond list. Couplings are in units of |J| = 1 and temperatures elsewhere in
the package are in J/k_B (k_B = 1).

Boundary conditions:

* periodic      - torus; every site has a right and a down bond, wrap bonds
                  carry the same coupling J.
* antiperiodic  - torus topology, but bonds that wrap the right edge or the
                  bottom edge carry -J (both directions reversed).
* skewed        - periodic horizontal wrap, open (free) top and bottom rows:
                  no vertical wrap bonds.

For 2-wide lattices the torus wrap produces a second bond between the same
pair of sites; those double bonds are kept deliberately so the bond-count
formulas stay uniform.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum
from functools import lru_cache
from pathlib import Path

import numpy as np


class Spin(IntEnum):
    """A single site value; only +1 and -1 are representable."""

    UP = 1
    DOWN = -1


class BoundaryCondition(Enum):
    PERIODIC = "periodic"
    ANTI_PERIODIC = "antiperiodic"
    SKEWED_PLUS_MINUS = "skewed"


@dataclass(frozen=True)
class LatticeSpec:
    """Immutable description of a lattice topology and its couplings."""

    rows: int
    cols: int
    boundary: BoundaryCondition = BoundaryCondition.PERIODIC
    coupling: float = 1.0
    field: float = 0.0

    def __post_init__(self):
        if self.rows < 2 or self.cols < 2:
            raise ValueError(
                f"lattice must be at least 2x2, got {self.rows}x{self.cols}"
            )
        if self.coupling == 0:
            raise ValueError("coupling must be nonzero")

    @property
    def n_sites(self) -> int:
        return self.rows * self.cols

    def site_index(self, r: int, c: int) -> int:
        return r * self.cols + c


@dataclass(frozen=True)
class Bond:
    """One physical bond; effective_coupling carries any boundary sign flip."""

    site_a: int
    site_b: int
    effective_coupling: float


@dataclass(eq=False)
class Lattice:
    """Mutable spin configuration on a rows x cols grid.

    spins is a C-contiguous int8 array of shape (rows, cols) holding only
    +1 / -1; the flat row-major view is what the sweep kernels mutate.
    """

    rows: int
    cols: int
    spins: np.ndarray

    def __post_init__(self):
        self.spins = np.ascontiguousarray(self.spins, dtype=np.int8)
        if self.spins.shape != (self.rows, self.cols):
            raise ValueError(
                f"spins shape {self.spins.shape} != ({self.rows}, {self.cols})"
            )
        if not np.all(np.abs(self.spins) == 1):
            raise ValueError("spins must be +1 or -1")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and np.array_equal(self.spins, other.spins)
        )

    @property
    def flat(self) -> np.ndarray:
        """Row-major flat view sharing memory with spins."""
        return self.spins.reshape(-1)

    def copy(self) -> "Lattice":
        return Lattice(self.rows, self.cols, self.spins.copy())

    @classmethod
    def filled(cls, rows: int, cols: int, spin: int = Spin.UP) -> "Lattice":
        if spin not in (1, -1):
            raise ValueError("fill spin must be +1 or -1")
        return cls(rows, cols, np.full((rows, cols), spin, dtype=np.int8))

    @classmethod
    def checkerboard(cls, rows: int, cols: int, parity: int = 0) -> "Lattice":
        """Alternating pattern; parity 0 puts +1 at site (0, 0)."""
        r, c = np.indices((rows, cols))
        spins = np.where((r + c + parity) % 2 == 0, 1, -1).astype(np.int8)
        return cls(rows, cols, spins)


def bonds(spec: LatticeSpec) -> list[Bond]:
    """Complete bond list for the topology, each physical bond once."""
    j = spec.coupling
    out: list[Bond] = []
    rows, cols = spec.rows, spec.cols
    for r in range(rows):
        for c in range(cols):
            a = r * cols + c
            # Right bond (horizontal wrap for all three boundary conditions).
            b = r * cols + (c + 1) % cols
            jr = j
            if spec.boundary is BoundaryCondition.ANTI_PERIODIC and c == cols - 1:
                jr = -j
            out.append(Bond(a, b, jr))
            # Down bond; skewed drops the vertical wrap entirely.
            if r == rows - 1:
                if spec.boundary is BoundaryCondition.SKEWED_PLUS_MINUS:
                    continue
                jd = -j if spec.boundary is BoundaryCondition.ANTI_PERIODIC else j
                out.append(Bond(a, c, jd))
            else:
                out.append(Bond(a, (r + 1) * cols + c, j))
    return out


@lru_cache(maxsize=64)
def bond_arrays(spec: LatticeSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Bond list as (site_a, site_b, coupling) arrays for vectorized sums."""
    blist = bonds(spec)
    a = np.array([b.site_a for b in blist], dtype=np.int32)
    b_ = np.array([b.site_b for b in blist], dtype=np.int32)
    j = np.array([b.effective_coupling for b in blist], dtype=np.float64)
    for arr in (a, b_, j):
        arr.flags.writeable = False
    return a, b_, j


@lru_cache(maxsize=64)
def adjacency(spec: LatticeSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Incident bonds per site in CSR form: (neighbor ids, couplings, offsets).

    Built from the bond list, so duplicate bonds on 2-wide wraps contribute
    twice, exactly as they do in the total energy.
    """
    n = spec.n_sites
    nbrs: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for b in bonds(spec):
        nbrs[b.site_a].append((b.site_b, b.effective_coupling))
        nbrs[b.site_b].append((b.site_a, b.effective_coupling))
    offsets = np.zeros(n + 1, dtype=np.int64)
    for i in range(n):
        offsets[i + 1] = offsets[i] + len(nbrs[i])
    idx = np.empty(offsets[-1], dtype=np.int32)
    cpl = np.empty(offsets[-1], dtype=np.float64)
    k = 0
    for i in range(n):
        for other, j in nbrs[i]:
            idx[k] = other
            cpl[k] = j
            k += 1
    for arr in (idx, cpl, offsets):
        arr.flags.writeable = False
    return idx, cpl, offsets


def _check_dims(lattice: Lattice, spec: LatticeSpec) -> None:
    if (lattice.rows, lattice.cols) != (spec.rows, spec.cols):
        raise ValueError(
            f"lattice {lattice.rows}x{lattice.cols} does not match "
            f"spec {spec.rows}x{spec.cols}"
        )


def total_energy(lattice: Lattice, spec: LatticeSpec) -> float:
    """H(sigma) summed over the full bond list plus the field term."""
    _check_dims(lattice, spec)
    a, b, j = bond_arrays(spec)
    s = lattice.flat
    e = -float(np.dot(j, s[a] * s[b]))
    if spec.field != 0.0:
        e -= spec.field * float(s.sum())
    return e


def delta_energy(lattice: Lattice, spec: LatticeSpec, site: int) -> float:
    """Energy change H(flipped at site) - H(current), without mutating.

    Only the bonds incident to the site enter: dE = 2 s_i (sum_j J_ij s_j + B).
    """
    _check_dims(lattice, spec)
    if not 0 <= site < spec.n_sites:
        raise IndexError(f"site {site} out of range for {spec.n_sites} sites")
    idx, cpl, off = adjacency(spec)
    s = lattice.flat
    lo, hi = off[site], off[site + 1]
    local = float(np.dot(cpl[lo:hi], s[idx[lo:hi]]))
    return 2.0 * float(s[site]) * (local + spec.field)


def save_snapshot(lattice: Lattice, path: str | Path) -> None:
    """Write the snapshot text format: `rows cols` header, then +1/-1 rows."""
    lines = [f"{lattice.rows} {lattice.cols}"]
    for r in range(lattice.rows):
        lines.append(" ".join("+1" if v > 0 else "-1" for v in lattice.spins[r]))
    Path(path).write_text("\n".join(lines) + "\n")


def load_snapshot(path: str | Path) -> Lattice:
    text = Path(path).read_text().strip().splitlines()
    if not text:
        raise ValueError(f"empty snapshot file: {path}")
    rows, cols = (int(tok) for tok in text[0].split())
    if len(text) != rows + 1:
        raise ValueError(f"snapshot {path}: expected {rows} rows, got {len(text) - 1}")
    spins = np.empty((rows, cols), dtype=np.int8)
    for r in range(rows):
        tokens = text[r + 1].split()
        if len(tokens) != cols or any(t not in ("+1", "-1") for t in tokens):
            raise ValueError(f"snapshot {path}: bad row {r}")
        spins[r] = [1 if t == "+1" else -1 for t in tokens]
    return Lattice(rows, cols, spins)
