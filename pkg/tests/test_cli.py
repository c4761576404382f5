"""Batch front end: exit codes, report determinism, config layering."""

import json

import pytest

from hodgelab import cli


def run_main(argv, capsys):
    code = cli.main(argv)
    return code, capsys.readouterr().out


def test_bockstein_command_passes(capsys):
    code, out = run_main(["bockstein", "--p", "2"], capsys)
    assert code == 0
    assert "summary: pass=3 fail=0" in out


def test_json_runs_are_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        code, out = run_main(
            ["census", "--wmax", "16", "--format", "json",
             "--out", str(path)], capsys)
        assert code == 0
        assert out == ""
    assert a.read_bytes() == b.read_bytes()


def test_json_report_round_trips(tmp_path, capsys):
    path = tmp_path / "r.json"
    run_main(["unfold", "--p", "2", "--format", "json", "--out", str(path)],
             capsys)
    text = path.read_text()
    report = json.loads(text)
    assert json.dumps(report, sort_keys=True, indent=2) + "\n" == text
    assert report["command"] == "unfold"
    assert report["summary"]["fail"] == 0


def test_expectation_mismatch_exits_two(capsys):
    code, out = run_main(
        ["hdr", "--stack", "BGa", "--nmax", "1", "--expect", "degenerate"],
        capsys)
    assert code == 2
    assert "FAIL" in out


def test_default_expectation_tracks_the_stack(capsys):
    code, out = run_main(["hdr", "--stack", "BGa", "--nmax", "1"], capsys)
    assert code == 0
    assert "computed=\"non-degenerate\"" in out


def test_usage_errors_exit_one(capsys):
    for argv in (["bockstein", "--p", "4"],
                 ["nosuch"],
                 [],
                 ["census", "--wmax", "-3"],
                 ["hodge", "--stack", "Qux"],
                 ["acrys", "--model", "blob"]):
        assert cli.main(argv) == 1
        capsys.readouterr()


def test_unknown_config_key_exits_one(tmp_path, capsys):
    cfg = tmp_path / "h.cfg"
    cfg.write_text("bogus = 1\n")
    assert cli.main(["census", "--config", str(cfg)]) == 1
    capsys.readouterr()


def test_config_file_layering(tmp_path, capsys):
    # file supplies p and wmax, the flag overrides p only
    cfg = tmp_path / "h.cfg"
    cfg.write_text("p = 3\nwmax = 12\nformat = json\n")
    code, out = run_main(
        ["bga-fp", "--config", str(cfg), "--p", "2"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["params"]["p"] == 2
    assert report["params"]["wmax"] == 12


def test_entries_are_ordered_by_strand(capsys):
    code, out = run_main(["bga-fp", "--wmax", "8", "--format", "json"],
                         capsys)
    assert code == 0
    keys = [(e["n"], e["w"]) for e in json.loads(out)["entries"]
            if "n" in e]
    assert keys == sorted(keys)


def test_threads_do_not_change_the_report():
    lone = cli.run(cli.RunConfig("bga", {"nmax": 2, "wmax": 12}))
    pool = cli.run(cli.RunConfig("bga", {"nmax": 2, "wmax": 12}, threads=3))
    assert lone == pool


def test_runconfig_rejects_unknown_parameter():
    with pytest.raises(cli.ConfigError):
        cli.RunConfig("census", {"pmax": 1})


def test_selftest_fast_is_green(capsys):
    code, out = run_main(["selftest", "--fast"], capsys)
    assert code == 0
    assert "fail=0" in out.splitlines()[-3]
