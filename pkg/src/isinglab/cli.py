"""Command-line surface for batch simulation, corpus generation, validation.

Exit codes are a stable contract: 0 success, 1 I/O failure, 2 usage error,
3 validation failure. Every command is deterministic given its flags and
seed, and echoes its effective configuration into the output directory.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from pathlib import Path

from ._version import __version__
from .checks import oracle_agreement
from .dataset import (
    BIN_ORDER,
    DEFAULT_CONDITIONS,
    DEFAULT_SPLIT_COUNTS,
    BinLabel,
    DatasetConfig,
    condition_spec,
    generate_dataset,
    validate_manifest,
)
from .lattice import BoundaryCondition, LatticeSpec, save_snapshot
from .metropolis import RngStream, SimulationParams, initial_lattice, thermalize

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_VALIDATION = 3

_BC_FLAGS = {
    "periodic": BoundaryCondition.PERIODIC,
    "antiperiodic": BoundaryCondition.ANTI_PERIODIC,
    "skewed": BoundaryCondition.SKEWED_PLUS_MINUS,
}

# Shorthands accepted by --only-bc in addition to full condition names.
_CONDITION_ALIASES = {
    "periodic": "periodic_ferro",
    "antiperiodic": "antiperiodic_ferro",
    "skewed": "skewed_ferro",
}


class _UsageError(Exception):
    """Bad flag/config value; message names the offending flag."""


def _parse_size(value: str) -> tuple[int, int]:
    try:
        rows, cols = value.lower().split("x")
        return int(rows), int(cols)
    except ValueError:
        raise _UsageError(f"--size expects ROWSxCOLS, got {value!r}") from None


def _read_config_file(path: str | None) -> configparser.ConfigParser:
    cfg = configparser.ConfigParser()
    if path:
        if not Path(path).is_file():
            raise _UsageError(f"--config file not found: {path}")
        cfg.read(path)
    return cfg


def _effective(flag, cfg: configparser.ConfigParser, section: str, key: str, default, cast):
    """Flags override config-file values override defaults."""
    if flag is not None:
        return flag
    if cfg.has_option(section, key):
        return cast(cfg.get(section, key))
    return default


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isinglab",
        description="2D Ising Monte Carlo simulations and labeled image corpora",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one simulation, write trace + snapshot")
    sim.add_argument("--bc", choices=sorted(_BC_FLAGS))
    sim.add_argument("--coupling", type=float)
    sim.add_argument("--field", type=float)
    sim.add_argument("--size", help="lattice size, e.g. 100x100")
    sim.add_argument("--temp", type=float, help="temperature in J/k_B")
    sim.add_argument("--sweeps", type=int, help="thermalization sweeps")
    sim.add_argument("--seed", type=int)
    sim.add_argument("--out", required=True, help="output directory")
    sim.add_argument("--config", help="INI config file")

    gen = sub.add_parser("generate", help="generate labeled image corpora")
    gen.add_argument("--root", help="output root directory")
    gen.add_argument("--base-seed", type=int, dest="base_seed")
    gen.add_argument("--size", help="lattice size, e.g. 100x100")
    gen.add_argument("--step", type=float, help="temperature grid step")
    gen.add_argument("--only-bc", dest="only_bc", help="restrict to one condition")
    gen.add_argument("--jobs", type=int, default=1, help="parallel image jobs")
    gen.add_argument("--config", help="INI config file")

    val = sub.add_parser("validate", help="validate a corpus manifest")
    val.add_argument("manifest", help="path to manifest.json")
    val.add_argument("--regen", type=int, default=0,
                     help="regenerate N sampled records and compare bytes (-1 = all)")
    val.add_argument("--oracle", action="store_true",
                     help="also run the 4x4 engine-vs-enumeration agreement check")

    tr = sub.add_parser("trace", help="emit a magnetization-vs-sweep series")
    tr.add_argument("--input", help="existing trace file to re-emit")
    tr.add_argument("--out", help="output file (default stdout)")
    tr.add_argument("--format", choices=["csv", "tsv"], default="csv")
    tr.add_argument("--plot", help="optional plot image path (needs matplotlib)")
    for flag, kw in (
        ("--bc", dict(choices=sorted(_BC_FLAGS))),
        ("--coupling", dict(type=float)),
        ("--field", dict(type=float)),
        ("--size", dict()),
        ("--temp", dict(type=float)),
        ("--sweeps", dict(type=int)),
        ("--seed", dict(type=int)),
    ):
        tr.add_argument(flag, **kw)
    return parser


def _sim_inputs(args) -> tuple[LatticeSpec, SimulationParams]:
    cfg = _read_config_file(args.config if hasattr(args, "config") else None)
    bc = _effective(args.bc, cfg, "lattice", "bc", "periodic", str)
    if bc not in _BC_FLAGS:
        raise _UsageError(f"--bc must be one of {sorted(_BC_FLAGS)}, got {bc!r}")
    size = _effective(args.size, cfg, "lattice", "size", "100x100", str)
    rows, cols = _parse_size(size)
    coupling = _effective(args.coupling, cfg, "lattice", "coupling", 1.0, float)
    field = _effective(args.field, cfg, "lattice", "field", 0.0, float)
    temp = _effective(args.temp, cfg, "simulation", "temperature", None, float)
    if temp is None:
        raise _UsageError("--temp is required (or set [simulation] temperature)")
    if temp < 0:
        raise _UsageError(f"--temp must be >= 0, got {temp}")
    sweeps = _effective(args.sweeps, cfg, "simulation", "sweeps", 750, int)
    if sweeps < 0:
        raise _UsageError(f"--sweeps must be >= 0, got {sweeps}")
    seed = _effective(args.seed, cfg, "simulation", "seed", 0, int)
    try:
        spec = LatticeSpec(rows=rows, cols=cols, boundary=_BC_FLAGS[bc],
                           coupling=coupling, field=field)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    params = SimulationParams(temperature=temp, thermalization_sweeps=sweeps, seed=seed)
    return spec, params


def _write_trace(path_or_stream, record, fmt: str = "csv") -> None:
    sep = "," if fmt == "csv" else "\t"
    lines = [sep.join(("sweep", "magnetization_per_spin", "energy_per_site"))]
    for (k, m), (_, e) in zip(record.magnetization_trace, record.energy_trace):
        lines.append(sep.join((str(k), repr(m), repr(e))))
    text = "\n".join(lines) + "\n"
    if hasattr(path_or_stream, "write"):
        path_or_stream.write(text)
    else:
        Path(path_or_stream).write_text(text)


def _echo_config(out_dir: Path, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    (out_dir / "config.json").write_text(text)
    print(json.dumps(payload, sort_keys=True))


def _cmd_simulate(args) -> int:
    spec, params = _sim_inputs(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = RngStream(params.seed)
    lattice = initial_lattice(spec, params.temperature, rng)
    record = thermalize(lattice, spec, params, rng)
    _write_trace(out_dir / "trace.csv", record)
    save_snapshot(record.final_lattice, out_dir / "lattice.txt")
    _echo_config(out_dir, {
        "command": "simulate",
        "bc": spec.boundary.value,
        "rows": spec.rows,
        "cols": spec.cols,
        "coupling": spec.coupling,
        "field": spec.field,
        "temperature": params.temperature,
        "sweeps": params.thermalization_sweeps,
        "seed": params.seed,
    })
    return EXIT_OK


def _split_counts_from_config(cfg: configparser.ConfigParser):
    if not cfg.has_section("split_counts"):
        return dict(DEFAULT_SPLIT_COUNTS)
    counts = {}
    for label in BIN_ORDER:
        raw = cfg.get("split_counts", label.value, fallback=None)
        if raw is None:
            raise _UsageError(f"[split_counts] missing entry for {label.value}")
        parts = [int(p) for p in raw.replace(",", " ").split()]
        if len(parts) != 3:
            raise _UsageError(f"[split_counts] {label.value} needs 3 integers")
        counts[label] = tuple(parts)
    return counts


def _cmd_generate(args) -> int:
    cfg = _read_config_file(args.config)
    root = Path(_effective(args.root, cfg, "dataset", "root", "corpus", str))
    base_seed = _effective(args.base_seed, cfg, "dataset", "base_seed", 0, int)
    size = _effective(args.size, cfg, "dataset", "size", "100x100", str)
    rows, cols = _parse_size(size)
    step = _effective(args.step, cfg, "dataset", "step", 0.01, float)
    split_counts = _split_counts_from_config(cfg)
    images = sum(sum(v) for v in split_counts.values())

    conditions = list(DEFAULT_CONDITIONS)
    if cfg.has_option("dataset", "conditions"):
        conditions = [c.strip() for c in cfg.get("dataset", "conditions").split(",")]
    if args.only_bc:
        name = _CONDITION_ALIASES.get(args.only_bc, args.only_bc)
        if name not in DEFAULT_CONDITIONS:
            raise _UsageError(
                f"--only-bc must be one of {sorted(DEFAULT_CONDITIONS)} "
                f"(or {sorted(_CONDITION_ALIASES)}), got {args.only_bc!r}"
            )
        conditions = [name]

    root.mkdir(parents=True, exist_ok=True)
    _echo_config(root, {
        "command": "generate",
        "root": str(root),
        "base_seed": base_seed,
        "rows": rows,
        "cols": cols,
        "step": step,
        "conditions": conditions,
        "images_per_condition": images,
        "jobs": args.jobs,
    })

    done = []
    try:
        for name in conditions:
            config = DatasetConfig(
                spec=condition_spec(name, rows, cols),
                base_seed=base_seed,
                output_root=root,
                temperature_step=step,
                images_per_condition=images,
                split_counts=split_counts,
            )
            manifest = generate_dataset(config, jobs=args.jobs)
            per_bin = {b.value: 0 for b in BIN_ORDER}
            for r in manifest.records:
                per_bin[r.bin.value] += 1
            counts = " ".join(f"{k}={v}" for k, v in per_bin.items())
            print(f"{name}: {len(manifest.records)} images ({counts})")
            done.append(name)
    except OSError as exc:
        print(f"error: I/O failure while generating: {exc}", file=sys.stderr)
        print(f"completed conditions: {done or 'none'}; re-run to resume",
              file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _cmd_validate(args) -> int:
    manifest_path = Path(args.manifest)
    if not manifest_path.is_file():
        print(f"error: manifest not found: {manifest_path}", file=sys.stderr)
        return EXIT_USAGE
    report = validate_manifest(manifest_path, regenerate_samples=args.regen)
    print(report.summary())
    ok = report.passed
    if args.oracle:
        agreement = oracle_agreement()
        status = "PASS" if agreement.passed else "FAIL"
        print(
            f"{status} oracle-agreement "
            f"(z_E={agreement.z_energy:.2f}, z_m={agreement.z_magnetization:.2f})"
        )
        ok = ok and agreement.passed
    return EXIT_OK if ok else EXIT_VALIDATION


def _cmd_trace(args) -> int:
    if args.input:
        path = Path(args.input)
        if not path.is_file():
            print(f"error: trace file not found: {path}", file=sys.stderr)
            return EXIT_IO
        rows = []
        lines = path.read_text().strip().splitlines()
        for line in lines[1:]:
            parts = line.replace("\t", ",").split(",")
            if len(parts) != 3:
                print(f"error: malformed trace line: {line!r}", file=sys.stderr)
                return EXIT_IO
            rows.append((int(parts[0]), float(parts[1]), float(parts[2])))
        if not rows:
            print("error: trace file has no data rows", file=sys.stderr)
            return EXIT_IO
    else:
        if args.temp is None:
            raise _UsageError("trace needs --input or simulation flags (--temp ...)")
        spec, params = _sim_inputs(args)
        rng = RngStream(params.seed)
        lattice = initial_lattice(spec, params.temperature, rng)
        record = thermalize(lattice, spec, params, rng)
        rows = [
            (k, m, e)
            for (k, m), (_, e) in zip(record.magnetization_trace, record.energy_trace)
        ]
        if not rows:
            print("error: simulation produced an empty trace (0 sweeps)",
                  file=sys.stderr)
            return EXIT_IO

    sep = "," if args.format == "csv" else "\t"
    lines = [sep.join(("sweep", "magnetization_per_spin", "energy_per_site"))]
    lines.extend(sep.join((str(k), repr(m), repr(e))) for k, m, e in rows)
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)

    if args.plot:
        try:
            import matplotlib
            matplotlib.use("Agg")
            import matplotlib.pyplot as plt
        except ImportError:
            print("error: --plot requires matplotlib", file=sys.stderr)
            return EXIT_IO
        fig, ax = plt.subplots(figsize=(7, 4))
        ax.plot([r[0] for r in rows], [r[1] for r in rows], lw=0.8)
        ax.set_xlabel("sweep")
        ax.set_ylabel("magnetization per spin")
        ax.set_ylim(-1.05, 1.05)
        fig.tight_layout()
        fig.savefig(args.plot, dpi=120)
        plt.close(fig)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {
        "simulate": _cmd_simulate,
        "generate": _cmd_generate,
        "validate": _cmd_validate,
        "trace": _cmd_trace,
    }
    try:
        return handlers[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
