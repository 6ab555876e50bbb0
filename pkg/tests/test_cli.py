"""Command-line surface: parsing, subcommands, exit codes, determinism."""

import json
import math

import numpy as np
import pytest

from trimodal import cli
from trimodal.basis import enumerate_manifold
from trimodal.cli import (
    CliError,
    RunConfig,
    emit_config,
    main,
    normalize_init,
    parse_config,
    parse_init,
    parse_phase,
    parse_state_file,
    parse_times,
    read_trajectory,
)
from trimodal.dressed import DressedParams
from trimodal.dynamics import build_full_generator
from trimodal.evolve import propagate
from trimodal.verification import CheckResult


def write_state(path, n, amps):
    path.write_text(json.dumps({"N": n, "amplitudes": amps}))
    return str(path)


UNIT6 = [[1.0, 0.0]] + [[0.0, 0.0]] * 5


# ------------------------------------------------------------- small parsers

@pytest.mark.parametrize("text, value", [
    ("0.5", 0.5),
    ("pi", math.pi),
    ("2pi", 2.0 * math.pi),
    ("2*pi", 2.0 * math.pi),
    ("pi/3", math.pi / 3.0),
    ("3*pi/2", 1.5 * math.pi),
    ("-pi", -math.pi),
    ("1e-3", 1e-3),
])
def test_parse_phase(text, value):
    assert parse_phase(text) == pytest.approx(value)


@pytest.mark.parametrize("bad", ["", "pie", "pi/", "one", "2**pi"])
def test_parse_phase_rejects(bad):
    with pytest.raises(CliError):
        parse_phase(bad)


def test_parse_times():
    assert parse_times("0:pi:5") == (0.0, math.pi, 5)
    for bad in ("0:pi", "0:pi:x", "0:pi:1", "pi:0:4"):
        with pytest.raises(CliError):
            parse_times(bad)


def test_init_mini_language():
    spec = normalize_init("g0|g0|0.6:g4+0.8:e2")
    assert spec[0] == (("g0", 1.0, 0.0),)
    assert spec[2] == (("g4", 0.6, 0.0), ("e2", 0.8, 0.0))
    state = parse_init("g0|g0|0.6:g4+0.8:e2", 4)
    assert state.norm == pytest.approx(1.0)


def test_init_complex_coefficients_survive_the_plus_split():
    spec = normalize_init("g0|g0|0.6:g2+0.8j:e0")
    assert spec[2] == (("g2", 0.6, 0.0), ("e0", 0.0, 0.8))
    state = parse_init("g0|g0|0.6:g2+0.8j:e0", 2)
    man = enumerate_manifold(2)
    assert state.amplitude(man.basis[0]) == pytest.approx(0.6)
    assert state.amplitude(man.basis[3]) == pytest.approx(0.8j)


@pytest.mark.parametrize("bad", [
    "g0|g0",                   # two factors
    "g0|g0|g1",                # odd photon number
    "g0|g0|0.5:g2",            # not normalized
    "g0|g0|q:g2",              # bad coefficient
    "g0|g0|",                  # empty factor
    "g2|g2|g0",                # wrong total
])
def test_init_mini_language_rejects(bad):
    with pytest.raises(CliError):
        parse_init(bad, 2)


# -------------------------------------------------------------- state files

def test_state_file_roundtrip(tmp_path):
    path = write_state(tmp_path / "s.json", 2, UNIT6)
    state = parse_state_file(path)
    assert state.manifold.n_total == 2
    assert state.amplitudes[0] == 1.0 + 0.0j


def test_state_file_accepts_bare_reals_and_tiny_norm_slack(tmp_path):
    amps = [1.0 + 5e-8] + [0.0] * 5
    path = write_state(tmp_path / "s.json", 2, amps)
    state = parse_state_file(path)
    assert state.norm == pytest.approx(1.0, abs=1e-12)


def test_state_file_rejects_norm_breach(tmp_path):
    amps = [[0.9, 0.0]] + [[0.0, 0.0]] * 5
    path = write_state(tmp_path / "s.json", 2, amps)
    with pytest.raises(CliError, match="refusing to renormalize"):
        parse_state_file(path)


def test_state_file_rejects_wrong_count(tmp_path):
    path = write_state(tmp_path / "s.json", 2, UNIT6[:5])
    with pytest.raises(CliError, match="expected 6 entries"):
        parse_state_file(path)


def test_state_file_rejects_bad_entries(tmp_path):
    path = write_state(tmp_path / "s.json", 2, [[1.0, 0.0, 0.0]] + UNIT6[1:])
    with pytest.raises(CliError, match=r"amplitudes\[0\]"):
        parse_state_file(path)
    path = write_state(tmp_path / "b.json", 2, [True] + UNIT6[1:])
    with pytest.raises(CliError, match=r"amplitudes\[0\]"):
        parse_state_file(path)


def test_state_file_reports_json_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"N": 2,\n  "amplitudes": [,]}')
    with pytest.raises(CliError, match="line 2"):
        parse_state_file(str(path))


def test_state_file_missing_fields(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"N": 2}))
    with pytest.raises(CliError, match="amplitudes"):
        parse_state_file(str(path))
    with pytest.raises(CliError, match="No such file"):
        parse_state_file(str(tmp_path / "missing.json"))


# ------------------------------------------------------------ config objects

def test_run_config_validation():
    with pytest.raises(CliError):
        parse_config({"command": "evolve", "N": 3})
    with pytest.raises(CliError):
        parse_config({"command": "evolve", "mode": "adiabatic"})
    with pytest.raises(CliError):
        parse_config({"command": "evolve", "nonsense": 1})
    with pytest.raises(CliError):
        parse_config({})


def test_emit_parse_fixed_point():
    doc = {"command": "evolve", "N": 4, "xi": 2.0, "times": "0:pi:9",
           "init": "g0|g0|0.6:g4+0.8:e2"}
    once = emit_config(parse_config(doc))
    twice = emit_config(parse_config(once))
    assert once == twice
    assert once["N"] == 4
    assert "r" not in once  # defaults are omitted


def test_config_defaults():
    config = parse_config({"command": "basis"})
    assert isinstance(config, RunConfig)
    assert (config.N, config.mode, config.seed) == (2, "large_hopping", 0)


# --------------------------------------------------------------- subcommands

def test_basis_dump(capsys):
    assert main(["basis", "--N", "6"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 39
    assert lines[0] == "index,cavity1,cavity2,cavity3,excited_atoms,photons1,photons2,photons3"
    assert lines[1].startswith("0,")


def test_dynamics_matrix_dump(capsys):
    assert main(["dynamics", "--N", "2", "--mode", "large_hopping"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "row,col,re,im"
    assert len(lines) == 7  # six exchange couplings survive
    for line in lines[1:]:
        row, col, re_, im = line.split(",")
        assert float(re_) == pytest.approx(2.0)
        assert float(im) == 0.0


def test_dynamics_spectrum(capsys):
    assert main(["dynamics", "--N", "2", "--mode", "full", "--r", "1.0",
                 "--spectrum"]) == 0
    vals = [float(v) for v in capsys.readouterr().out.split()]
    man = enumerate_manifold(2)
    gen = build_full_generator(man, DressedParams(r=1.0), xi=1.0)
    assert vals == pytest.approx(list(np.linalg.eigvalsh(gen.matrix)))


def test_evolve_shared_pair_empties_at_a_third_turn(capsys):
    assert main(["evolve", "--N", "2", "--mode", "large_hopping", "--xi", "1",
                 "--init", "g0|g0|1.0:g2", "--times", "0:pi:4"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].split(",")[0] == "xi_t"
    assert len(lines) == 5
    row = lines[2].split(",")  # xi*t = pi/3
    assert float(row[0]) == pytest.approx(math.pi / 3.0)
    re_b, im_b = float(row[3]), float(row[4])
    re_c, im_c = float(row[5]), float(row[6])
    assert abs(complex(re_b, im_b)) < 1e-12
    assert abs(complex(re_c, im_c)) < 1e-12


def test_evolve_physical_times(capsys):
    # with --times-in t the first column is t and the rate matters again
    assert main(["evolve", "--N", "2", "--xi", "2.0", "--times-in", "t",
                 "--init", "g0|g0|1.0:g2", "--times", "0:pi/6:2"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].split(",")[0] == "t"
    row = lines[-1].split(",")
    assert float(row[0]) == pytest.approx(math.pi / 6.0)  # xi*t = pi/3
    assert abs(complex(float(row[3]), float(row[4]))) < 1e-12


def test_evolve_trajectory_reparses_bit_identically(tmp_path):
    out = tmp_path / "traj.csv"
    assert main(["evolve", "--N", "2", "--mode", "full", "--r", "1.0",
                 "--xi", "1.0", "--init", "g0|g0|1.0:g2",
                 "--times", "0:2:33", "-o", str(out)]) == 0
    times, amps = read_trajectory(str(out))
    man = enumerate_manifold(2)
    gen = build_full_generator(man, DressedParams(r=1.0), xi=1.0)
    fresh = propagate(gen, parse_init("g0|g0|1.0:g2", 2),
                      np.linspace(0.0, 2.0, 33), times_are_phase=True)
    assert np.array_equal(times, np.linspace(0.0, 2.0, 33))
    assert np.array_equal(amps, fresh.amplitudes)


def test_evolve_state_file_sets_the_manifold(tmp_path, capsys):
    amps = [[0.0, 0.0]] * 18
    amps[0] = [1.0, 0.0]
    path = write_state(tmp_path / "s.json", 4, amps)
    assert main(["evolve", "--state-file", path, "--times", "0:1:3"]) == 0
    header = capsys.readouterr().out.splitlines()[0]
    assert header.count("re:") == 18


def test_evolve_errors(tmp_path, capsys):
    assert main(["evolve", "--N", "2", "--init", "g0|g0|1.0:g2"]) == 1
    assert "--times" in capsys.readouterr().err
    assert main(["evolve", "--N", "2", "--times", "0:1:3"]) == 1
    assert "initial state" in capsys.readouterr().err
    path = write_state(tmp_path / "s.json", 2, UNIT6)
    assert main(["evolve", "--state-file", path, "--init", "g0|g0|1.0:g2",
                 "--times", "0:1:3"]) == 1
    assert "not both" in capsys.readouterr().err
    # explicit --N conflicting with the file's manifold
    assert main(["evolve", "--N", "4", "--state-file", path,
                 "--times", "0:1:3"]) == 1
    assert "N=4" in capsys.readouterr().err


def test_entangle_product_state(capsys):
    assert main(["entangle", "--N", "2", "--init", "g0|e0|g0",
                 "--restarts", "4"]) == 0
    out = dict(line.split("=") for line in capsys.readouterr().out.splitlines())
    assert float(out["overlap"]) == pytest.approx(1.0, abs=1e-10)
    assert float(out["entanglement_log2"]) == pytest.approx(0.0, abs=1e-9)
    assert out["converged"] == "true"
    assert int(out["starts"]) == 27 + 4


def test_scan_landmarks_as_csv(capsys):
    assert main(["scan", "--family", "n2_general", "--objective", "|A|^2",
                 "--window", "0:pi"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "kind,xi_t,value,at_endpoint"
    rows = [line.split(",") for line in lines[1:]]
    minima = [r for r in rows if r[0] == "min"]
    assert [float(r[1]) for r in minima] == pytest.approx(
        [math.pi / 6.0, math.pi / 2.0, 5.0 * math.pi / 6.0], abs=1e-8)
    assert all(float(r[2]) == pytest.approx(1.0 / 9.0) for r in minima)
    endpoint_kinds = {r[0] for r in rows if r[3] == "true"}
    assert endpoint_kinds == {"max"}


def test_scan_errors(capsys):
    assert main(["scan", "--objective", "|A|^2"]) == 1
    assert "--family" in capsys.readouterr().err
    assert main(["scan", "--family", "nope", "--objective", "|A|^2"]) == 1
    assert "unknown family" in capsys.readouterr().err
    assert main(["scan", "--family", "n2_general", "--objective", "|Z|^2"]) == 1
    assert "no label" in capsys.readouterr().err
    assert main(["scan", "--family", "n2_general", "--objective", "|A|^2",
                 "--window", "pi:0"]) == 1
    assert "empty" in capsys.readouterr().err


def test_verify_runs_clean_and_deterministically(capsys, monkeypatch):
    monkeypatch.delenv("TRIMODAL_SEED", raising=False)
    assert main(["verify"]) == 0
    first = capsys.readouterr().out
    assert main(["verify", "--seed", "0"]) == 0
    second = capsys.readouterr().out
    assert first == second
    assert first.strip().splitlines()[-1].startswith("summary:")
    assert " 0 fail" in first


def test_verify_unknown_suite(capsys):
    assert main(["verify", "--suite", "nope"]) == 1
    assert "suite" in capsys.readouterr().err


def test_verify_exit_two_on_gate_failure(capsys, monkeypatch):
    row = CheckResult(check_id="x.fake", criterion="fabricated", status="FAIL",
                      expected="0", measured="1", tolerance="exact", detail="")
    monkeypatch.setattr(cli, "run_suite", lambda suite, seed: [row])
    assert main(["verify"]) == 2
    assert "x.fake" in capsys.readouterr().out


# --------------------------------------------------------------- seed wiring

def parse_args(argv):
    return cli.build_parser().parse_args(argv)


def test_env_seed_feeds_the_config(monkeypatch):
    monkeypatch.setenv("TRIMODAL_SEED", "7")
    config, _ = cli._config_from_args(parse_args(["verify"]))
    assert config.seed == 7


def test_seed_flag_beats_the_environment(monkeypatch):
    monkeypatch.setenv("TRIMODAL_SEED", "7")
    config, _ = cli._config_from_args(parse_args(["verify", "--seed", "3"]))
    assert config.seed == 3


def test_bad_env_seed_is_an_input_error(monkeypatch, capsys):
    monkeypatch.setenv("TRIMODAL_SEED", "seven")
    assert main(["verify"]) == 1
    assert "TRIMODAL_SEED" in capsys.readouterr().err


def test_env_seed_lands_in_emitted_config(monkeypatch, capsys):
    monkeypatch.setenv("TRIMODAL_SEED", "9")
    assert main(["evolve", "--times", "0:1:3", "--init", "g0|g0|1.0:g2",
                 "--emit-config"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["seed"] == 9


# --------------------------------------------------------------- args plumbing

def test_config_file_merges_under_flags(tmp_path, capsys):
    conf = tmp_path / "run.json"
    conf.write_text(json.dumps({"command": "evolve", "N": 2, "xi": 2.0,
                                "times": "0:1:3", "init": "g0|g0|1.0:g2"}))
    assert main(["evolve", "--config", str(conf), "--xi", "3.0",
                 "--emit-config"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["xi"] == 3.0
    assert doc["times"] == [0.0, 1.0, 3]


def test_emit_config_honors_output_and_replays(tmp_path, capsys):
    conf = tmp_path / "run.json"
    data = tmp_path / "traj.csv"
    assert main(["evolve", "--N", "2", "--init", "g0|g0|1.0:g2",
                 "--times", "0:1:3", "--emit-config", "-o", str(conf)]) == 0
    assert capsys.readouterr().out == ""
    doc = json.loads(conf.read_text())
    # -o named the config file, not the replay's data destination
    assert "output" not in doc
    assert main(["evolve", "--config", str(conf), "-o", str(data)]) == 0
    assert main(["evolve", "--N", "2", "--init", "g0|g0|1.0:g2",
                 "--times", "0:1:3"]) == 0
    # read_bytes: read_text would translate the csv writer's \r\n endings
    assert data.read_bytes().decode() == capsys.readouterr().out


def test_usage_errors_exit_one(capsys):
    assert main(["nonsense"]) == 1
    assert "error" in capsys.readouterr().err
    assert main(["evolve", "--N", "3", "--times", "0:1:3",
                 "--init", "g0|g0|1.0:g2"]) == 1
    capsys.readouterr()


def test_output_flag_writes_the_file(tmp_path, capsys):
    out = tmp_path / "basis.csv"
    assert main(["basis", "--N", "2", "-o", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert len(out.read_text().strip().splitlines()) == 7
