import json
import subprocess
import sys

import pytest

from hallquant.cli import load_config, main, run


def call(*argv):
    code, text = run(list(argv))
    return code, json.loads(text)


def test_euler_example():
    assert call("euler", "--a", "1,0", "--b", "0,1") == (0, {"value": -1})


def test_braid_example():
    code, out = call("braid-check", "--preset", "A2", "--gen", "E1")
    assert code == 0 and out["equal"] is True and out["m"] == 3


@pytest.mark.parametrize("preset,m", [("A1xA1", 2), ("B2", 4)])
def test_braid_other_types(preset, m):
    code, out = call("braid-check", "--preset", preset, "--gen", "F2", "--zeta", "1,-1")
    assert code == 0 and out["m"] == m


def test_flags_before_or_after_subcommand():
    a = run(["--preset", "A2-rev", "euler", "--a", "1,0", "--b", "0,1"])
    b = run(["euler", "--preset", "A2-rev", "--a", "1,0", "--b", "0,1"])
    assert a == b
    assert json.loads(a[1]) == {"value": 0}


def test_hall_commands():
    assert call("hall-number", "--L", "2,0:0", "--M", "1,0:0", "--N", "1,0:0")[1] == {"value": 3}
    assert call("hall-number", "--field", "3", "--L", "2,0:0", "--M", "1,0:0", "--N", "1,0:0")[1] == {"value": 4}
    code, out = call("aut", "--class", "2,0:0")
    assert out["value"] == 6
    code, out = call("hall-mul", "--a", "0,1:0", "--b", "1,0:0")
    assert out == {"product": [["1,1:0", "1*v^0"]]}


def test_classify_counts():
    code, out = call("classify", "--max-dim", "2")
    assert code == 0 and len(out["classes"]) == 7


def test_reflect():
    code, out = call("reflect", "--vertex", "2", "--class", "1,0:0")
    assert out["image"]["dimvec"] == [1, 1]
    code, out = call("reflect", "--vertex", "1", "--class", "1,0:0")
    assert code == 2 and out["error"]["type"] == "input"


def test_f_and_udot():
    assert call("f-normal", "--word", "1 2")[1] == {"normal_form": [["t1 t2", "1*v^0"]]}
    code, out = call("udot-mul", "--a", "E1", "--b", "F1", "--zeta", "1,0")
    assert out == {"product": [["t1", [-1, 1], "t1", "1*v^0"]]}
    code, out = call("apply-T", "--vertex", "1", "--gen", "E2")
    assert out == {"image": [["t1 t2", [0, 0], "1", "1*v^0"], ["t2 t1", [0, 0], "1", "-1*v^-1"]]}


def test_hdot_commands():
    code, out = call("apply-bgp-T", "--vertex", "2", "--gen", "E1", "--zeta", "0,1")
    assert out["image"] == [["1,1:1", [1, -1], "0,0:0", "1*v^0"]]
    code, out = call("apply-bgp-T", "--preset", "A2-rev", "--vertex", "2", "--source",
                     "--plus", "1,1:1", "--zeta", "1,-1")
    assert out["image"] == [["1,0:0", [0, 1], "0,0:0", "1*v^0"]]
    code, out = call("straighten", "--minus", "1,0:0", "--plus", "1,0:0", "--kappa", "1,0")
    assert out["value"] == [["0,0:0", [-1, 1], "0,0:0", "1*v^0"], ["1,0:0", [-3, 2], "1,0:0", "1*v^0"]]
    code, out = call("coincidence-check", "--vertex", "2", "--gen", "F1", "--zeta", "1,1")
    assert code == 0 and out["equal"]


def test_verify_single_suite():
    code, out = call("verify", "--suite", "qbinom")
    assert code == 0 and out["passed"]


def test_verify_red_suite_exits_nonzero():
    code, out = call("verify", "--suite", "psi")
    assert code == 1 and not out["passed"]


def test_errors():
    code, out = call("hall-number", "--L", "9:0", "--M", "1,0:0", "--N", "0,1:0")
    assert code == 2 and out["error"]["type"] == "input"
    code, out = call("euler", "--preset", "nope", "--a", "1", "--b", "1")
    assert code == 2 and out["error"]["type"] == "config"
    code, out = call("classify", "--cap", "1", "--max-dim", "3")
    assert code == 0 and len(out["classes"]) == 3
    code, out = call("aut", "--cap", "1", "--class", "2,0:0")
    assert code == 2 and out["error"]["type"] == "cap"
    code, out = call("euler", "--field", "4", "--a", "1,0", "--b", "0,1")
    assert code == 2
    code, out = call("classify", "--preset", "A1xA1")
    assert code == 2 and out["error"]["type"] == "config"


def test_config_file(tmp_path):
    cfg = {"vertices": 3, "edges": [[1, 2], [3, 2]], "eps": [1, 1, 1], "fields": [3], "cap": 3}
    path = tmp_path / "d3.json"
    path.write_text(json.dumps(cfg))
    code, out = call("euler", "--config", str(path), "--a", "1,0,0", "--b", "0,1,0")
    assert out == {"value": -1}
    c = load_config(str(path))
    assert c.q == 3 and c.cap == 3


@pytest.mark.parametrize("bad", [
    {"vertices": 2, "edges": [[1, 2], [2, 1]]},
    {"vertices": 2, "edges": [[1, 2]], "fields": [6]},
    {"vertices": 2, "edges": [[1, 2]], "cartan": "B2"},
    {"edges": []},
    [1, 2],
])
def test_bad_configs(tmp_path, bad):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, out = call("euler", "--config", str(path), "--a", "1,0", "--b", "0,1")
    assert code == 2 and out["error"]["type"] == "config"


def test_unreadable_config(tmp_path):
    path = tmp_path / "x.json"
    path.write_text("{not json")
    assert call("euler", "--config", str(path), "--a", "1,0", "--b", "0,1")[0] == 2
    assert call("euler", "--config", str(tmp_path / "missing.json"), "--a", "1", "--b", "1")[0] == 2


def test_output_is_deterministic():
    argv = ["straighten", "--minus", "1,1:1", "--plus", "1,1:0", "--kappa", "0,1"]
    assert run(argv) == run(argv)
    assert run(["verify", "--suite", "dimensions"]) == run(["verify", "--suite", "dimensions"])


def test_main_prints(capsys):
    assert main(["euler", "--json", "--a", "1,0", "--b", "0,1"]) == 0
    assert capsys.readouterr().out.strip() == '{"value":-1}'


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "hallquant", "euler", "--a", "1,0", "--b", "0,1", "--json"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == '{"value":-1}'
