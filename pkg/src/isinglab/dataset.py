"""Labeled image corpus generation: temperature bins, planning, manifests.

A corpus for one condition (boundary condition + coupling sign) is a tree

    {output_root}/{condition}/{split}/{bin}/T{temperature:.2f}_r{replicate}.png

plus a manifest.json next to the split directories. The manifest echoes the
generating configuration (including bin names and edges, so consumers never
hard-code them) and lists one record per image with the exact seed that
reproduces it bit-for-bit.

Temperatures come from a deterministic 0.01-step grid over (0, 4.0];
slots within a bin cycle round-robin over the bin's grid points, adding
replicate seeds once the grid is exhausted, and splits are interleaved
proportionally so every split sees the full temperature range of its bin.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Mapping

from ._version import __version__
from .lattice import BoundaryCondition, LatticeSpec
from .metropolis import sample_microstate
from .raster import render_image
from .rng import derive_seed


class BinLabel(Enum):
    """The four temperature-region classes."""

    FSBCR = "FSbCR"  # far sub-critical
    SBCR = "SbCR"    # sub-critical
    CR = "CR"        # critical
    SPCR = "SpCR"    # super-critical


BIN_ORDER = (BinLabel.FSBCR, BinLabel.SBCR, BinLabel.CR, BinLabel.SPCR)
BIN_EDGES = (0.0, 1.055, 2.119, 2.320, 4.0)
SPLITS = ("train", "validation", "test")

DEFAULT_SPLIT_COUNTS: dict[BinLabel, tuple[int, int, int]] = {
    BinLabel.FSBCR: (220, 100, 150),
    BinLabel.SBCR: (80, 50, 50),
    BinLabel.CR: (90, 60, 70),
    BinLabel.SPCR: (210, 90, 130),
}

GENERATOR_NAME = "isinglab"


def _validate_edges() -> None:
    if list(BIN_EDGES) != sorted(BIN_EDGES) or len(set(BIN_EDGES)) != len(BIN_EDGES):
        raise AssertionError("bin edges must be strictly increasing")
    if BIN_EDGES[0] != 0.0 or BIN_EDGES[-1] != 4.0:
        raise AssertionError("bin edges must span [0, 4]")
    widths = [hi - lo for lo, hi in zip(BIN_EDGES, BIN_EDGES[1:])]
    cr_width = widths[BIN_ORDER.index(BinLabel.CR)]
    for label, width in zip(BIN_ORDER, widths):
        if label is BinLabel.CR:
            continue
        if cr_width > 0.30 * width + 1e-12:
            raise AssertionError(
                f"critical bin width {cr_width} exceeds 30% of {label.value} width {width}"
            )


_validate_edges()


def bin_label(temperature: float) -> BinLabel:
    """Map a temperature in [0, 4] to its bin; intervals are [lo, hi).

    The last bin is closed at 4.0. Shared endpoints belong to the upper bin.
    """
    if not 0.0 <= temperature <= 4.0:
        raise ValueError(f"temperature {temperature} outside [0, 4]")
    for label, lo, hi in zip(BIN_ORDER, BIN_EDGES, BIN_EDGES[1:]):
        if lo <= temperature < hi:
            return label
    return BinLabel.SPCR  # temperature == 4.0


_CONDITIONS: dict[str, tuple[BoundaryCondition, float]] = {
    "periodic_ferro": (BoundaryCondition.PERIODIC, 1.0),
    "periodic_antiferro": (BoundaryCondition.PERIODIC, -1.0),
    "skewed_ferro": (BoundaryCondition.SKEWED_PLUS_MINUS, 1.0),
    "antiperiodic_ferro": (BoundaryCondition.ANTI_PERIODIC, 1.0),
}

DEFAULT_CONDITIONS = tuple(_CONDITIONS)


def condition_name(spec: LatticeSpec) -> str:
    sign = "ferro" if spec.coupling > 0 else "antiferro"
    return f"{spec.boundary.value}_{sign}"


def condition_spec(name: str, rows: int = 100, cols: int = 100) -> LatticeSpec:
    """LatticeSpec for one of the four benchmarked conditions."""
    if name not in _CONDITIONS:
        raise ValueError(
            f"unknown condition {name!r}; expected one of {sorted(_CONDITIONS)}"
        )
    boundary, coupling = _CONDITIONS[name]
    return LatticeSpec(rows=rows, cols=cols, boundary=boundary, coupling=coupling)


def temperature_grid(step: float = 0.01) -> list[float]:
    """The deterministic temperature grid over (0, 4.0] in `step` increments.

    Steps must be positive multiples of 0.01 so file names (T%.2f) stay
    unique.
    """
    k = round(step / 0.01)
    if k < 1 or abs(k * 0.01 - step) > 1e-9:
        raise ValueError(f"temperature step must be a multiple of 0.01, got {step}")
    count = int(4.0 / step + 1e-9)
    return [round(i * step, 2) for i in range(1, count + 1)]


def temperature_index(temperature: float) -> int:
    """Index of a grid temperature on the canonical 0.01 lattice."""
    return int(round(temperature / 0.01))


@dataclass(frozen=True)
class ImageRecord:
    """One generated image; seed reproduces it bit-exactly."""

    file_path: str
    boundary_condition: str
    temperature: float
    bin: BinLabel
    split: str
    seed: int

    def to_dict(self) -> dict:
        return {
            "file_path": self.file_path,
            "boundary_condition": self.boundary_condition,
            "temperature": self.temperature,
            "bin": self.bin.value,
            "split": self.split,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ImageRecord":
        return cls(
            file_path=d["file_path"],
            boundary_condition=d["boundary_condition"],
            temperature=d["temperature"],
            bin=BinLabel(d["bin"]),
            split=d["split"],
            seed=d["seed"],
        )


@dataclass(frozen=True)
class DatasetConfig:
    """Everything that determines a corpus; generation is a pure function of it."""

    spec: LatticeSpec
    base_seed: int
    output_root: Path
    temperature_step: float = 0.01
    images_per_condition: int = 1300
    split_counts: Mapping[BinLabel, tuple[int, int, int]] = field(
        default_factory=lambda: dict(DEFAULT_SPLIT_COUNTS)
    )

    def __post_init__(self):
        total = sum(sum(v) for v in self.split_counts.values())
        if total != self.images_per_condition:
            raise ValueError(
                f"split counts sum to {total}, expected images_per_condition="
                f"{self.images_per_condition}"
            )
        temperature_grid(self.temperature_step)  # validates the step


@dataclass
class DatasetManifest:
    generator: dict
    config: dict
    records: list[ImageRecord]

    @property
    def spec(self) -> LatticeSpec:
        c = self.config
        return LatticeSpec(
            rows=c["rows"],
            cols=c["cols"],
            boundary=BoundaryCondition(c["boundary"]),
            coupling=c["coupling"],
            field=c["field"],
        )

    def to_dict(self) -> dict:
        return {
            "generator": self.generator,
            "config": self.config,
            "records": [r.to_dict() for r in self.records],
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"
        )

    @classmethod
    def load(cls, path: str | Path) -> "DatasetManifest":
        d = json.loads(Path(path).read_text())
        return cls(
            generator=d["generator"],
            config=d["config"],
            records=[ImageRecord.from_dict(r) for r in d["records"]],
        )


def _config_echo(config: DatasetConfig) -> dict:
    spec = config.spec
    return {
        "condition": condition_name(spec),
        "rows": spec.rows,
        "cols": spec.cols,
        "boundary": spec.boundary.value,
        "coupling": spec.coupling,
        "field": spec.field,
        "base_seed": config.base_seed,
        "temperature_step": config.temperature_step,
        "images_per_condition": config.images_per_condition,
        "bins": [b.value for b in BIN_ORDER],
        "bin_edges": list(BIN_EDGES),
        "splits": list(SPLITS),
        "split_counts": {
            b.value: dict(zip(SPLITS, config.split_counts[b])) for b in BIN_ORDER
        },
    }


def plan_records(config: DatasetConfig) -> list[ImageRecord]:
    """Deterministic record plan: temperatures, splits, seeds; no I/O."""
    grid = temperature_grid(config.temperature_step)
    by_bin: dict[BinLabel, list[float]] = {b: [] for b in BIN_ORDER}
    for t in grid:
        by_bin[bin_label(t)].append(t)

    cond = condition_name(config.spec)
    records: list[ImageRecord] = []
    for label in BIN_ORDER:
        counts = tuple(config.split_counts.get(label, (0, 0, 0)))
        n = sum(counts)
        if n == 0:
            continue
        bin_grid = by_bin[label]
        if not bin_grid:
            raise ValueError(
                f"bin {label.value} has no grid temperatures at step "
                f"{config.temperature_step}"
            )
        assigned = [0, 0, 0]
        for j in range(n):
            t = bin_grid[j % len(bin_grid)]
            replicate = j // len(bin_grid)
            # Proportional interleave keeps each split stratified over the
            # bin's temperature range; argmax of the running quota deficit.
            deficits = [counts[s] * (j + 1) / n - assigned[s] for s in range(3)]
            split_i = max(range(3), key=lambda s: (deficits[s], -s))
            assigned[split_i] += 1
            seed = derive_seed(config.base_seed, cond, temperature_index(t), replicate)
            records.append(
                ImageRecord(
                    file_path=f"{SPLITS[split_i]}/{label.value}/T{t:.2f}_r{replicate}.png",
                    boundary_condition=cond,
                    temperature=t,
                    bin=label,
                    split=SPLITS[split_i],
                    seed=seed,
                )
            )
        if assigned != list(counts):
            raise AssertionError(f"split interleave drifted for {label.value}")
    return records


def record_image_bytes(spec: LatticeSpec, record: ImageRecord) -> bytes:
    """Regenerate one record's PNG bytes from its seed."""
    lattice = sample_microstate(spec, record.temperature, record.seed)
    return render_image(lattice)


def _write_record(spec: LatticeSpec, root: str, record: ImageRecord) -> str:
    data = record_image_bytes(spec, record)
    path = Path(root) / record.file_path
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(data)
    os.replace(tmp, path)
    return record.file_path


def generate_dataset(config: DatasetConfig, jobs: int = 1) -> DatasetManifest:
    """Generate (or complete) one condition's corpus and write its manifest.

    Existing files are kept as-is, so an interrupted run resumes where it
    stopped; every image is a pure function of its record, so the result is
    byte-identical either way.
    """
    records = plan_records(config)
    root = Path(config.output_root) / condition_name(config.spec)
    for label in BIN_ORDER:
        for split in SPLITS:
            (root / split / label.value).mkdir(parents=True, exist_ok=True)

    todo = [r for r in records if not (root / r.file_path).exists()]
    if jobs > 1 and todo:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_write_record, config.spec, str(root), r) for r in todo
            ]
            for f in futures:
                f.result()
    else:
        for r in todo:
            _write_record(config.spec, str(root), r)

    manifest = DatasetManifest(
        generator={"name": GENERATOR_NAME, "version": __version__},
        config=_config_echo(config),
        records=records,
    )
    manifest.save(root / "manifest.json")
    return manifest


@dataclass
class ValidationCheck:
    name: str
    passed: bool
    failures: list[str]


@dataclass
class ValidationReport:
    checks: list[ValidationCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def summary(self) -> str:
        lines = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"{status} {c.name}")
            lines.extend(f"  {msg}" for msg in c.failures[:20])
            if len(c.failures) > 20:
                lines.append(f"  ... and {len(c.failures) - 20} more")
        return "\n".join(lines)


def validate_manifest(
    manifest_path: str | Path, regenerate_samples: int = 0
) -> ValidationReport:
    """Check a corpus against its manifest.

    Verifies file existence, re-derives every bin from its temperature,
    compares per-(bin, split) counts with the configured quota, and, when
    regenerate_samples > 0, regenerates that many evenly spaced records from
    their seeds and compares bytes (-1 regenerates all).
    """
    path = Path(manifest_path)
    manifest = DatasetManifest.load(path)
    root = path.parent
    checks: list[ValidationCheck] = []

    missing = [
        r.file_path for r in manifest.records if not (root / r.file_path).is_file()
    ]
    checks.append(
        ValidationCheck(
            "files-exist", not missing, [f"missing file: {p}" for p in missing]
        )
    )

    mislabeled = []
    for r in manifest.records:
        expected = bin_label(r.temperature)
        if expected != r.bin:
            mislabeled.append(
                f"{r.file_path}: temperature {r.temperature} lies in "
                f"{expected.value}, labeled {r.bin.value}"
            )
    checks.append(ValidationCheck("bin-labels", not mislabeled, mislabeled))

    echo_problems = []
    if manifest.config.get("bin_edges") != list(BIN_EDGES):
        echo_problems.append(
            f"manifest bin_edges {manifest.config.get('bin_edges')} != {list(BIN_EDGES)}"
        )
    if manifest.config.get("bins") != [b.value for b in BIN_ORDER]:
        echo_problems.append("manifest bin order differs from generator order")
    checks.append(ValidationCheck("config-echo", not echo_problems, echo_problems))

    count_problems = []
    got: dict[tuple[str, str], int] = {}
    for r in manifest.records:
        got[(r.bin.value, r.split)] = got.get((r.bin.value, r.split), 0) + 1
    want_counts = manifest.config["split_counts"]
    for b in BIN_ORDER:
        for split in SPLITS:
            want = want_counts[b.value][split]
            have = got.get((b.value, split), 0)
            if have != want:
                count_problems.append(
                    f"({b.value}, {split}): {have} records, expected {want}"
                )
    total = len(manifest.records)
    if total != manifest.config["images_per_condition"]:
        count_problems.append(
            f"total records {total} != images_per_condition "
            f"{manifest.config['images_per_condition']}"
        )
    checks.append(ValidationCheck("split-counts", not count_problems, count_problems))

    if regenerate_samples:
        n = len(manifest.records)
        if regenerate_samples < 0 or regenerate_samples >= n:
            indices = range(n)
        else:
            stride = n / regenerate_samples
            indices = sorted({int(i * stride) for i in range(regenerate_samples)})
        spec = manifest.spec
        regen_problems = []
        for i in indices:
            r = manifest.records[i]
            file = root / r.file_path
            if not file.is_file():
                continue  # already reported by files-exist
            if record_image_bytes(spec, r) != file.read_bytes():
                regen_problems.append(f"{r.file_path}: bytes differ on regeneration")
        checks.append(
            ValidationCheck("seed-regeneration", not regen_problems, regen_problems)
        )

    return ValidationReport(checks)
