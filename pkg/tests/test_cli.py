import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

from loewner_lab import cli
from loewner_lab.errors import DegenerateInstance
from loewner_lab.loewner import VerificationReport
from loewner_lab.render import legend_labels


def run_main(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_small(capsys):
    code, out, _ = run_main(["verify", "--seed", "42", "--n", "8", "--f-degree", "10", "--trials", "20"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["seed"] == 42 and report["trials"] == 20
    assert report["violations"] == [] and report["min_rotation"] >= 0
    assert report["elapsed_ms"] is None


def test_short_aliases(capsys):
    long = run_main(["claim1", "--seed", "3", "--trials", "5", "--grid", "8x8"], capsys)
    short = run_main(["claim1", "-s", "3", "-t", "5", "-g", "8x8"], capsys)
    assert long == short and long[0] == 0


def test_timing_flag(capsys):
    _, out, _ = run_main(["verify", "-s", "1", "-t", "3", "--timing"], capsys)
    assert json.loads(out)["elapsed_ms"] > 0


def test_text_format(capsys):
    code, out, _ = run_main(["verify", "-s", "1", "-t", "3", "-f", "text"], capsys)
    assert code == 0 and out.startswith("theorem: PASS")


def test_divide_chain(capsys):
    code, out, _ = run_main(["divide", "--a-roots", "-1,0,1", "--b-roots", "-0.5,0.5", "-f", "text"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3
    assert "scale=0.75" in lines[1]
    assert lines[-1].split("-> ")[1].startswith("n=1")


def test_divide_json(capsys):
    code, out, _ = run_main(["divide", "--a-roots=-1,1", "--b-roots=0"], capsys)
    data = json.loads(out)
    assert code == 0 and data["chain"][-1]["pair"] == {"a_roots": [0.0], "b_roots": []}


def test_divide_random(capsys):
    code, out, _ = run_main(["divide", "-s", "5", "-n", "6"], capsys)
    assert code == 0 and len(json.loads(out)["chain"]) == 5


def test_bol_command(capsys):
    code, out, _ = run_main(["bol", "-s", "2", "-t", "5", "--pairings", "10"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["sweep"]["n"] == 2 and data["bol_pairing"]["passed"]


def test_deform_command(capsys):
    code, out, _ = run_main(["deform", "-s", "2", "-t", "3", "--points", "3", "-n", "4"], capsys)
    assert code == 0 and json.loads(out)["checks"] == 9


def test_plot_svg(tmp_path, capsys):
    path = tmp_path / "out.svg"
    code, _, _ = run_main(["plot", "--seed", "7", "--pair", "x", "--f-degree", "10", "--grid", "60x60", "-o", str(path)], capsys)
    assert code == 0
    text = path.read_text()
    ET.fromstring(text.encode())
    assert min(legend_labels(text)) >= 0


def test_plot_json_bounds(capsys):
    code, out, _ = run_main(["plot", "-s", "7", "-p", "x2-1", "-g", "10x10", "-b", "-1,-1,1,1", "-f", "json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["region_map"]["bounds"] == [-1.0, -1.0, 1.0, 1.0]


def test_byte_determinism(tmp_path, capsys):
    outputs = []
    for k in range(2):
        js, svg = tmp_path / f"r{k}.json", tmp_path / f"p{k}.svg"
        assert cli.main(["verify", "-s", "9", "-t", "10", "-o", str(js)]) == 0
        assert cli.main(["plot", "-s", "9", "-p", "x", "-g", "40x40", "-o", str(svg)]) == 0
        outputs.append((js.read_bytes(), svg.read_bytes()))
    assert outputs[0] == outputs[1]


# exit statuses


def test_violation_exit(monkeypatch, capsys):
    def fake(config):
        rep = VerificationReport(seed=config.seed, trials=config.trials)
        rep.violations.append({"trial": 0, "point": [0.0, 0.0], "rotation": -1})
        return rep

    monkeypatch.setattr(cli, "verify_theorem", fake)
    code, out, _ = run_main(["verify", "-s", "1", "-t", "1"], capsys)
    assert code == 1
    assert json.loads(out)["violations"][0]["rotation"] == -1


def test_degenerate_exit(monkeypatch, capsys):
    def fake(config):
        rep = VerificationReport(seed=config.seed, trials=config.trials)
        rep.degenerate.append({"trial": 0, "reason": "tangential"})
        return rep

    monkeypatch.setattr(cli, "verify_theorem", fake)
    assert run_main(["verify", "-s", "1", "-t", "1"], capsys)[0] == 2


def test_plot_degenerate_exit(monkeypatch, capsys):
    def boom(pair, f):
        raise DegenerateInstance("not immersed")

    monkeypatch.setattr(cli, "build_instance", boom)
    assert run_main(["plot", "-s", "1", "-p", "x", "-g", "4x4"], capsys)[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["verify"],
        ["verify", "-s", "1", "--grid", "1x5"],
        ["verify", "-s", "1", "--grid", "abc"],
        ["verify", "-s", "1", "--trials", "-1"],
        ["verify", "-s", "1", "--pair", "cubic"],
        ["verify", "-s", "1", "-f", "svg"],
        ["divide", "--a-roots", "0,1", "--b-roots", "2"],
        ["divide", "--a-roots", "0,x"],
        ["deform", "-s", "1", "-n", "1"],
    ],
)
def test_usage_errors(argv, capsys):
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    capsys.readouterr()
    assert code == 64


def test_run_config_validation():
    with pytest.raises(cli.UsageError):
        cli.RunConfig(command="verify")
    with pytest.raises(cli.UsageError):
        cli.RunConfig(command="nope", seed=1)
    assert cli.run(cli.RunConfig(command="divide", a_roots=(-1.0, 1.0), b_roots=(0.0,), format="text")) == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "loewner_lab", "divide", "--a-roots", "-1,0,1", "--b-roots", "-0.5,0.5"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["chain"][-1]["pair"]["b_roots"] == []
