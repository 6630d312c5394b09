import json
import xml.etree.ElementTree as ET

import pytest

from veech2 import fixtures
from veech2.classify import is_veech_h2, property_x
from veech2.cli import run
from veech2.cylinder import decompose
from veech2.enumeration import solve_h2
from veech2.jsonio import (
    dumps,
    loads,
    parse_cli_qelem,
    qelem_from_json,
    qelem_to_json,
    solutions_from_obj,
    solutions_to_obj,
    surface_from_obj,
    surface_to_obj,
    verdict_from_obj,
    verdict_to_obj,
)
from veech2.qfield import QElem
from veech2.surface import Vec2
from veech2.svg import export_svg


def test_qelem_json():
    x = QElem(-3, 5, 7) / 4
    assert qelem_to_json(x) == ["-3", "4", "5", "4"]
    assert qelem_from_json(qelem_to_json(x), 7) == x


def test_cli_number_syntax():
    assert parse_cli_qelem("3,-1,2", 5) == QElem(3, -1, 5) / 2
    assert parse_cli_qelem("7", None) == QElem(7)
    with pytest.raises(ValueError):
        parse_cli_qelem("1,1", None)
    with pytest.raises(ValueError):
        parse_cli_qelem("1,1,0", 2)


@pytest.mark.parametrize("name", sorted(fixtures.SURFACES))
def test_surface_round_trip(name):
    s = fixtures.SURFACES[name]()
    text = dumps(surface_to_obj(s))
    back = surface_from_obj(loads(text))
    assert back == s
    assert dumps(surface_to_obj(back)) == text


def test_solution_set_round_trip():
    ss = solve_h2(0, 1, 2, 4)
    text = dumps(solutions_to_obj(ss))
    back = solutions_from_obj(loads(text))
    assert back == ss
    assert dumps(solutions_to_obj(back)) == text


@pytest.mark.parametrize("name, fn", [
    ("bad-h2", is_veech_h2),
    ("perturbed-golden-l", property_x),
    ("golden-l", is_veech_h2),
])
def test_verdict_round_trip(name, fn):
    s = fixtures.SURFACES[name]()
    verdict = fn(s)
    text = dumps(verdict_to_obj(verdict, s.d))
    back = verdict_from_obj(loads(text))
    assert back == verdict
    assert dumps(verdict_to_obj(back, s.d)) == text


def _svg_root(text):
    return ET.fromstring(text.encode("utf-8"))


def test_svg_torus(torus):
    root = _svg_root(export_svg(torus))
    ns = "{http://www.w3.org/2000/svg}"
    assert len(root.findall(f".//{ns}path")) == 1
    labels = {t.text for t in root.findall(f".//{ns}text")}
    assert labels == {"0", "1"}


def test_svg_golden(golden):
    s, _ = golden
    ns = "{http://www.w3.org/2000/svg}"
    root = _svg_root(export_svg(s))
    assert len(root.findall(f".//{ns}path")) == 2
    assert len({t.text for t in root.findall(f".//{ns}text")}) == 5
    root = _svg_root(export_svg(s, decompose(s, Vec2(1, 0))))
    bands = root.findall(f".//{ns}polygon")
    assert {b.get("class") for b in bands} == {"cylinder c0", "cylinder c1"}


def test_cli_build_matches_builder(capsys):
    code = run(["build", "--family", "h2", "--d", "5", "--w", "1,0,1", "1,1,2",
                "--h", "1,0,1", "1,1,2", "--t", "3,-1,2", "0,0,1"])
    assert code == 0
    out = capsys.readouterr().out
    assert out == dumps(surface_to_obj(fixtures.golden_l()[0]))


def test_cli_exit_codes(tmp_path, capsys):
    path = tmp_path / "golden-l.json"
    path.write_text(dumps(surface_to_obj(fixtures.golden_l()[0])))
    assert run(["veech", "--input", str(path)]) == 0
    assert json.loads(capsys.readouterr().out)["status"] == "Proved"
    assert run(["veech", "--fixture", "bad-h2"]) == 2
    assert run(["propx", "--fixture", "perturbed-golden-l"]) == 2
    assert run(["hyper", "--fixture", "golden-l"]) == 0
    assert run(["cp", "--fixture", "d2-h11"]) == 0
    assert run(["veech", "--fixture", "golden-l", "--cap", "1"]) == 3
    assert run(["decompose", "--fixture", "golden-l", "--dir", "1", "0", "--cap", "1"]) == 3
    assert run(["decompose", "--fixture", "golden-l", "--dir", "1", "0"]) == 0
    capsys.readouterr()


def test_cli_usage_errors(capsys):
    assert run(["build", "--family", "h2"]) == 1
    assert run(["nonsense"]) == 1
    assert run(["build", "--family", "h2", "--w", "1", "2", "--h", "1,1", "1", "--t", "0", "0"]) == 1
    err = capsys.readouterr().err
    assert "--h" in err
    assert run(["hyper", "--fixture", "torus"]) == 1


def test_cli_cap_env(monkeypatch, capsys):
    monkeypatch.setenv("VEECH2_CAP", "1")
    assert run(["decompose", "--fixture", "golden-l", "--dir", "1", "0"]) == 3
    capsys.readouterr()


def test_cli_enumerate_oracle_agrees(capsys):
    assert run(["enumerate", "--d", "2", "--c1", "0", "--c2", "1", "--box", "8"]) == 0
    a = capsys.readouterr().out
    assert run(["enumerate", "--d", "2", "--c1", "0", "--c2", "1", "--box", "8", "--oracle"]) == 0
    b = capsys.readouterr().out
    assert a == b
    assert run(["enumerate", "--d", "2", "--c1", "0", "--c2", "1", "--box", "8", "--count-only"]) == 0
    assert capsys.readouterr().out.strip() == str(json.loads(a)["count"])


def test_cli_validate_and_jinv(capsys):
    assert run(["validate", "--fixture", "golden-l"]) == 0
    assert json.loads(capsys.readouterr().out)["stratum"] == "H(2)"
    assert run(["jinv", "--fixture", "torus", "--v", "0", "1", "--w", "1", "0"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["jxy"] == ["2", "0", "0", "0"]
    assert obj["jvw"] == ["-2", "0", "0", "0"]


def test_cli_svg(tmp_path):
    out = tmp_path / "g.svg"
    assert run(["export-svg", "--fixture", "golden-l", "--dir", "1", "0", "--output", str(out)]) == 0
    ET.parse(out)


def test_cli_deterministic(capsys):
    outs = []
    for _ in range(2):
        run(["veech", "--fixture", "golden-l"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
