"""2D Ising model Monte Carlo engine and microstate image corpus generator."""

from ._version import __version__
from .dataset import (
    BIN_EDGES,
    BinLabel,
    DatasetConfig,
    DatasetManifest,
    ImageRecord,
    bin_label,
    condition_name,
    condition_spec,
    generate_dataset,
    validate_manifest,
)
from .exact import T_CRITICAL, ExactThermodynamics, enumerate_thermodynamics, ground_states
from .lattice import (
    Bond,
    BoundaryCondition,
    Lattice,
    LatticeSpec,
    Spin,
    bonds,
    delta_energy,
    load_snapshot,
    save_snapshot,
    total_energy,
)
from .metropolis import (
    RunRecord,
    SimulationParams,
    acceptance_probability,
    metropolis_step,
    sample_microstate,
    sweep,
    thermalize,
)
from .observables import (
    ObservableSet,
    energy_per_site,
    magnetization_per_spin,
    observe,
    staggered_magnetization,
)
from .raster import decode_image, render_image
from .rng import RngStream, derive_seed

__all__ = [
    "__version__",
    "BIN_EDGES",
    "BinLabel",
    "Bond",
    "BoundaryCondition",
    "DatasetConfig",
    "DatasetManifest",
    "ExactThermodynamics",
    "ImageRecord",
    "Lattice",
    "LatticeSpec",
    "ObservableSet",
    "RngStream",
    "RunRecord",
    "SimulationParams",
    "Spin",
    "T_CRITICAL",
    "acceptance_probability",
    "bin_label",
    "bonds",
    "condition_name",
    "condition_spec",
    "decode_image",
    "delta_energy",
    "derive_seed",
    "energy_per_site",
    "enumerate_thermodynamics",
    "generate_dataset",
    "ground_states",
    "load_snapshot",
    "magnetization_per_spin",
    "metropolis_step",
    "observe",
    "render_image",
    "sample_microstate",
    "save_snapshot",
    "staggered_magnetization",
    "sweep",
    "thermalize",
    "total_energy",
    "validate_manifest",
]
