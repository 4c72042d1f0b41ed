"""CLI contract tests: flags, exit codes, determinism, idempotent generation."""

import json
from pathlib import Path

import pytest

import isinglab.cli as cli
from isinglab import DatasetManifest, load_snapshot
from isinglab.checks import OracleAgreement

TINY_CONFIG = """\
[dataset]
size = 8x8
base_seed = 11

[split_counts]
FSbCR = 4, 2, 2
SbCR = 2, 1, 1
CR = 2, 1, 1
SpCR = 3, 2, 2
"""


def run(*argv) -> int:
    return cli.main(list(argv))


def write_tiny_config(tmp_path: Path) -> Path:
    path = tmp_path / "gen.ini"
    path.write_text(TINY_CONFIG)
    return path


class TestSimulate:
    def test_writes_outputs(self, tmp_path):
        out = tmp_path / "run1"
        code = run(
            "simulate", "--bc", "periodic", "--coupling", "1", "--size", "16x16",
            "--temp", "2.27", "--sweeps", "50", "--seed", "7", "--out", str(out),
        )
        assert code == 0
        trace = (out / "trace.csv").read_text().splitlines()
        assert trace[0] == "sweep,magnetization_per_spin,energy_per_site"
        assert len(trace) == 51
        lattice = load_snapshot(out / "lattice.txt")
        assert (lattice.rows, lattice.cols) == (16, 16)
        config = json.loads((out / "config.json").read_text())
        assert config["temperature"] == 2.27 and config["seed"] == 7

    def test_negative_temperature_is_usage_error(self, tmp_path, capsys):
        code = run("simulate", "--temp", "-1", "--out", str(tmp_path / "x"))
        assert code == 2
        assert "--temp" in capsys.readouterr().err

    def test_bad_size_is_usage_error(self, tmp_path, capsys):
        code = run("simulate", "--temp", "1.0", "--size", "16by16",
                   "--out", str(tmp_path / "x"))
        assert code == 2
        assert "--size" in capsys.readouterr().err

    def test_unknown_flag_exits_2(self, tmp_path):
        assert run("simulate", "--nope", "--out", str(tmp_path)) == 2

    def test_identical_invocations_identical_outputs(self, tmp_path):
        args = ("simulate", "--size", "12x12", "--temp", "2.0", "--sweeps", "40",
                "--seed", "3")
        assert run(*args, "--out", str(tmp_path / "a")) == 0
        assert run(*args, "--out", str(tmp_path / "b")) == 0
        for name in ("trace.csv", "lattice.txt", "config.json"):
            assert (tmp_path / "a" / name).read_bytes() == (
                tmp_path / "b" / name
            ).read_bytes()

    def test_config_file_with_flag_override(self, tmp_path):
        ini = tmp_path / "sim.ini"
        ini.write_text(
            "[lattice]\nsize = 8x8\nbc = skewed\n[simulation]\ntemperature = 1.5\n"
            "sweeps = 10\nseed = 2\n"
        )
        out = tmp_path / "run"
        assert run("simulate", "--config", str(ini), "--temp", "2.5",
                   "--out", str(out)) == 0
        config = json.loads((out / "config.json").read_text())
        assert config["bc"] == "skewed"        # from config file
        assert config["temperature"] == 2.5    # flag wins


class TestGenerate:
    def test_only_bc_shorthand(self, tmp_path):
        cfg = write_tiny_config(tmp_path)
        root = tmp_path / "corpus"
        code = run("generate", "--config", str(cfg), "--root", str(root),
                   "--only-bc", "skewed")
        assert code == 0
        assert (root / "skewed_ferro" / "manifest.json").is_file()
        assert not (root / "periodic_ferro").exists()

    def test_all_conditions_and_counts_printed(self, tmp_path, capsys):
        cfg = write_tiny_config(tmp_path)
        root = tmp_path / "corpus"
        assert run("generate", "--config", str(cfg), "--root", str(root)) == 0
        out = capsys.readouterr().out
        for name in ("periodic_ferro", "periodic_antiferro", "skewed_ferro",
                     "antiperiodic_ferro"):
            assert (root / name / "manifest.json").is_file()
            assert f"{name}: 23 images" in out

    def test_rerun_regenerates_deleted_bit_identical(self, tmp_path):
        cfg = write_tiny_config(tmp_path)
        root = tmp_path / "corpus"
        run("generate", "--config", str(cfg), "--root", str(root),
            "--only-bc", "periodic_ferro")
        manifest = DatasetManifest.load(root / "periodic_ferro" / "manifest.json")
        victims = [manifest.records[i].file_path for i in (0, 7, 15)]
        originals = {}
        for rel in victims:
            path = root / "periodic_ferro" / rel
            originals[rel] = path.read_bytes()
            path.unlink()
        assert run("generate", "--config", str(cfg), "--root", str(root),
                   "--only-bc", "periodic_ferro") == 0
        for rel, data in originals.items():
            assert (root / "periodic_ferro" / rel).read_bytes() == data

    def test_generate_deterministic(self, tmp_path):
        cfg = write_tiny_config(tmp_path)
        for sub in ("r1", "r2"):
            run("generate", "--config", str(cfg), "--root", str(tmp_path / sub),
                "--only-bc", "periodic_ferro")
        m1 = (tmp_path / "r1" / "periodic_ferro" / "manifest.json").read_bytes()
        m2 = (tmp_path / "r2" / "periodic_ferro" / "manifest.json").read_bytes()
        assert m1 == m2

    def test_bad_condition_is_usage_error(self, tmp_path, capsys):
        code = run("generate", "--root", str(tmp_path), "--only-bc", "moebius")
        assert code == 2
        assert "--only-bc" in capsys.readouterr().err


class TestValidate:
    @pytest.fixture()
    def manifest_path(self, tmp_path):
        cfg = write_tiny_config(tmp_path)
        root = tmp_path / "corpus"
        run("generate", "--config", str(cfg), "--root", str(root),
            "--only-bc", "periodic_ferro")
        return root / "periodic_ferro" / "manifest.json"

    def test_fresh_corpus_passes(self, manifest_path, capsys):
        assert run("validate", str(manifest_path)) == 0
        assert "PASS" in capsys.readouterr().out

    def test_missing_image_exits_3(self, manifest_path):
        manifest = DatasetManifest.load(manifest_path)
        (manifest_path.parent / manifest.records[0].file_path).unlink()
        assert run("validate", str(manifest_path)) == 3

    def test_missing_manifest_exits_2(self, tmp_path):
        assert run("validate", str(tmp_path / "nowhere" / "manifest.json")) == 2

    def test_regen_flag(self, manifest_path):
        assert run("validate", str(manifest_path), "--regen", "3") == 0

    def test_oracle_flag_passes_on_healthy_build(self, manifest_path, capsys):
        assert run("validate", str(manifest_path), "--oracle") == 0
        assert "oracle-agreement" in capsys.readouterr().out

    def test_oracle_failure_exits_3(self, manifest_path, monkeypatch):
        broken = OracleAgreement(
            temperature=2.5, n_sweeps=1,
            exact_energy_per_site=-1.379, exact_abs_magnetization=0.765,
            est_energy_per_site=-0.9, est_abs_magnetization=0.5,
            se_energy_per_site=0.001, se_abs_magnetization=0.001,
        )
        monkeypatch.setattr(cli, "oracle_agreement", lambda: broken)
        assert run("validate", str(manifest_path), "--oracle") == 3


class TestTrace:
    def test_reemit_from_file(self, tmp_path, capsys):
        out = tmp_path / "run"
        run("simulate", "--size", "8x8", "--temp", "1.0", "--sweeps", "20",
            "--seed", "1", "--out", str(out))
        capsys.readouterr()  # drop the simulate config echo
        assert run("trace", "--input", str(out / "trace.csv")) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "sweep,magnetization_per_spin,energy_per_site"
        assert len(lines) == 21

    def test_low_temperature_trace_converges(self, tmp_path):
        out = tmp_path / "run"
        run("simulate", "--size", "16x16", "--temp", "0.1", "--sweeps", "100",
            "--seed", "4", "--out", str(out))
        lines = (out / "trace.csv").read_text().strip().splitlines()
        final_m = float(lines[-1].split(",")[1])
        assert abs(final_m) > 0.99

    def test_empty_trace_exits_1(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("sweep,magnetization_per_spin,energy_per_site\n")
        assert run("trace", "--input", str(empty)) == 1

    def test_missing_input_exits_1(self, tmp_path):
        assert run("trace", "--input", str(tmp_path / "none.csv")) == 1

    def test_formats_carry_identical_numbers(self, tmp_path, capsys):
        out = tmp_path / "run"
        run("simulate", "--size", "8x8", "--temp", "2.0", "--sweeps", "15",
            "--seed", "2", "--out", str(out))
        capsys.readouterr()  # drop the simulate config echo
        assert run("trace", "--input", str(out / "trace.csv"),
                   "--format", "csv") == 0
        csv_out = capsys.readouterr().out
        assert run("trace", "--input", str(out / "trace.csv"),
                   "--format", "tsv") == 0
        tsv_out = capsys.readouterr().out
        assert csv_out.replace(",", "\t") == tsv_out

    def test_trace_from_simulation_flags(self, tmp_path, capsys):
        assert run("trace", "--size", "8x8", "--temp", "2.0", "--sweeps", "10",
                   "--seed", "9") == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 11

    def test_trace_without_inputs_is_usage_error(self, capsys):
        assert run("trace") == 2
        assert "--input" in capsys.readouterr().err
