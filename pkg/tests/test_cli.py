"""Command-line interface: determinism, exit codes, file formats."""

import json
import subprocess
import sys

from newstein.cli import EXIT_BAD_PARAMS, EXIT_MISMATCH, EXIT_OK, EXIT_UNKNOWN_ALGEBRA, main


def run_cli(argv, tmp_path, name="out.json"):
    out = tmp_path / name
    rc = main(argv + ["--out", str(out)])
    return rc, json.loads(out.read_text()) if out.exists() else None


def test_jacobi_newstein(tmp_path):
    rc, doc = run_cli(["jacobi", "--algebra", "newstein"], tmp_path)
    assert rc == EXIT_OK
    assert doc["dimension"] == 51 and doc["violations"] == 0


def test_jacobi_all_selectors(tmp_path):
    for sel in ("newstein2", "newstein-ext:7", "h3", "sl2"):
        rc, doc = run_cli(["jacobi", "--algebra", sel], tmp_path)
        assert rc == EXIT_OK and doc["violations"] == 0


def test_unknown_algebra_exit_code(tmp_path):
    assert main(["jacobi", "--algebra", "nope"]) == EXIT_UNKNOWN_ALGEBRA


def test_invalid_parameters_exit_code(tmp_path):
    assert main(["spectrum", "--ell", "0.0", "--cutoff", "-3"]) == EXIT_BAD_PARAMS


def test_cohomology_subcommand(tmp_path):
    rc, doc = run_cli(["cohomology", "--algebra", "h3", "--coeffs", "trivial",
                       "--degree", "2", "--method", "modular"], tmp_path)
    assert rc == EXIT_OK and doc["betti"] == 2 and len(doc["primes"]) >= 3
    rc, doc = run_cli(["cohomology", "--algebra", "newstein", "--coeffs", "adjoint",
                       "--degree", "1", "--via-reduction"], tmp_path)
    assert rc == EXIT_OK and doc["betti"] == 8


def test_file_selector_roundtrip(tmp_path):
    from newstein.algebras import build_newstein

    path = tmp_path / "g.json"
    build_newstein().save(path)
    rc, doc = run_cli(["jacobi", "--algebra", f"file:{path}"], tmp_path)
    assert rc == EXIT_OK and doc["dimension"] == 51


def test_extensions_classify(tmp_path):
    rc, doc = run_cli(["extensions", "classify", "--matrix", "0", "1", "-1", "0"], tmp_path)
    assert rc == EXIT_OK and doc["case"] == 7
    rc, doc = run_cli(["extensions", "classify", "--matrix", "1", "0", "0", "-1"], tmp_path)
    assert doc["case"] == 2


def test_grouplaw_check_deterministic(tmp_path):
    rc1, d1 = run_cli(["grouplaw", "check", "--seed", "7", "--count", "50"],
                      tmp_path, "a.json")
    rc2, d2 = run_cli(["grouplaw", "check", "--seed", "7", "--count", "50"],
                      tmp_path, "b.json")
    assert rc1 == rc2 == EXIT_OK
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    assert d1["pass"] is True


def test_spectrum_rows(tmp_path):
    rc, doc = run_cli(["spectrum", "--ell", "-3", "--cutoff", "8"], tmp_path)
    assert rc == EXIT_OK
    first = doc["rows"][0]
    assert abs(first["eigenvalue"]) < 1e-12 and first["multiplicity"] == 1


def test_evolve_roundtrip(tmp_path):
    from newstein.oscillator import FockBasis

    basis = FockBasis(6)
    state = tmp_path / "state.txt"
    state.write_text("0 1.0 0.0\n")
    out = tmp_path / "evolved.txt"
    rc = main(["evolve", "--tau", "2.0", "--state", str(state), "--cutoff", "6",
               "--ell", "-3.0", "--out", str(out)])
    assert rc == EXIT_OK
    rows = [line.split() for line in out.read_text().splitlines() if line]
    assert len(rows) == basis.dim
    assert abs(float(rows[0][1]) - 1.0) < 1e-12  # ground state stationary
    assert abs(float(rows[0][2])) < 1e-12


def test_evolve_missing_state_is_io_error(tmp_path):
    from newstein.cli import EXIT_IO

    assert main(["evolve", "--tau", "1.0", "--state", str(tmp_path / "none.txt")]) == EXIT_IO


def test_verify_single_claim(tmp_path):
    rc, doc = run_cli(["verify-all", "--only", "jacobi-newstein"], tmp_path)
    assert rc == EXIT_OK
    assert doc["claims"][0]["status"] == "match"


def test_verify_known_mismatch_carries_command(tmp_path):
    rc, doc = run_cli(["verify-all", "--only", "h2-trivial"], tmp_path)
    assert rc == EXIT_MISMATCH
    claim = doc["claims"][0]
    assert claim["status"] == "mismatch"
    assert claim["claimed"] == 11 and claim["computed"] == 1
    assert "command" in claim


def test_verify_conditional_not_counted_as_failure(tmp_path):
    rc, doc = run_cli(["verify-all", "--only", "h2-trivial-planar"], tmp_path)
    assert rc == EXIT_OK
    assert doc["claims"][0]["status"] == "conditional"


def test_config_file_defaults(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"seed": 7, "count": 25}))
    out = tmp_path / "o.json"
    rc = main(["--config", str(cfg), "grouplaw", "check", "--out", str(out)])
    assert rc == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["seed"] == 7 and doc["triples"] == 25


def test_golden_fixtures_match_builders():
    import importlib.resources as res

    from newstein.algebras import build_extended, build_newstein, build_newstein2
    from newstein.liealg import LieAlgebra

    for name, builder in (("newstein.json", build_newstein),
                          ("newstein2.json", build_newstein2),
                          ("newstein_ext7.json", lambda: build_extended(7))):
        text = res.files("newstein").joinpath("data", name).read_text()
        shipped = LieAlgebra.from_definition(json.loads(text))
        built = builder()
        assert shipped.labels == built.labels
        assert shipped.constants == built.constants


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "newstein.cli", "jacobi",
                           "--algebra", "sl2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["violations"] == 0
