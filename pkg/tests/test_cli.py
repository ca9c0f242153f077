import json
import subprocess
import sys
from pathlib import Path

import pytest

from coverspec.cli import EXIT_ERROR, EXIT_OK, EXIT_UNKNOWN, main
from coverspec.repro import REPROS

SAMPLES = Path(__file__).parents[1] / "samples"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--json", *argv)
    return code, json.loads(out)


def test_group_info(capsys):
    code, out = run_json(capsys, "group-info", "--group", '{"kind": "sym", "n": 6}')
    assert code == EXIT_OK
    assert out["order"] == 720 and out["nu"] == 5 and out["rank"] == 2
    assert sum(c["size"] for c in out["classes"]) == 720


def test_group_info_from_file(capsys):
    code, out = run_json(capsys, "group-info", "--group", str(SAMPLES / "s4.json"))
    assert code == EXIT_OK and out["order"] == 24


def test_criterion(capsys):
    code, out = run_json(capsys, "criterion", "--catalog", str(SAMPLES / "s6_catalog.json"))
    assert code == EXIT_OK
    assert out["verdict"] == "obstructed" and out["witness"]["nu"] == 4
    code, out = run_json(capsys, "criterion", "--catalog", str(SAMPLES / "psl2_19_catalog.json"))
    assert out["verdict"] == "not obstructed"


def test_nurk(capsys):
    code, out = run_json(capsys, "nurk", "--group", '{"kind": "quaternion8"}')
    assert code == EXIT_OK
    assert (out["witness"]["nu"], out["witness"]["rank"]) == (3, 2)
    assert out["obstructed"] is False


def test_psl2(capsys):
    code, out = run_json(capsys, "psl2", "--p", "19")
    assert code == EXIT_OK and out["obstructed"] is True
    code, out = run_json(capsys, "psl2", "--p", "7")
    assert code == EXIT_ERROR and out["status"] == "error"
    assert "ResidueConditionFails" in out["error"]


def test_monster(capsys):
    code, out = run_json(capsys, "monster")
    assert code == EXIT_OK and out["obstructed"] is True


def test_monster_bad_table(capsys, tmp_path):
    data = json.loads((Path(__file__).parents[1] / "src/coverspec/data/monster.json").read_text())
    data["exhaustive_multiples"] = []
    path = tmp_path / "m.json"
    path.write_text(json.dumps(data))
    code, out = run_json(capsys, "monster", "--table", str(path))
    assert code == EXIT_ERROR and "InsufficientDeclaration" in out["error"]


def test_specialize(capsys):
    code, out = run_json(capsys, "specialize", "--cover", str(SAMPLES / "d10_cover.json"),
                         "--t0", "U^2/(2U^2-2U+1)", "--assume-no-group-drop")
    assert code == EXIT_OK
    assert out["r_T0"] == 4
    assert [b["s"] for b in out["per_branch"]] == [1, 1, 0, 0]
    assert out["genus"] == {"g_T0": 1, "assumes_no_group_drop": True}


def test_specialize_t0_as_json(capsys):
    code, out = run_json(capsys, "specialize", "--cover", str(SAMPLES / "d10_cover.json"),
                         "--t0", '{"a": ["0", "0", "1"], "b": ["1", "-2", "2"]}')
    assert code == EXIT_OK and out["r_T0"] == 4
    assert "genus" not in out


def test_specialize_bad_input(capsys):
    code, out = run_json(capsys, "specialize", "--cover", "{}", "--t0", "U")
    assert code == EXIT_ERROR and out["status"] == "error"
    code, out = run_json(capsys, "specialize", "--cover", str(SAMPLES / "d10_cover.json"), "--t0", "U +")
    assert code == EXIT_ERROR


def test_ret(capsys):
    code, out = run_json(capsys, "ret", "--group", str(SAMPLES / "s4.json"),
                         "--classes", '["[2^1,1^2]", "[3^1,1^1]", "[4^1]"]', "--count")
    assert code == EXIT_OK
    assert out["rigid"] is True and out["found"] is not None


def test_ret_space_separated(capsys):
    code, out = run_json(capsys, "ret", "--group", '{"kind": "cyclic", "n": 5}',
                         "--classes", "5B 5B 5B")
    assert code == EXIT_OK and out["found"] is None


def test_genus(capsys):
    code, out = run_json(capsys, "genus", "--d", "60", "--e", "2,3,5")
    assert code == EXIT_OK
    assert out["genus"] == 0 and out["epsilon"] == "31/30"
    assert out["genus_zero_case"]["name"] == "icosahedral"
    code, out = run_json(capsys, "genus", "--cover", str(SAMPLES / "d10_cover.json"))
    assert out["genus"] == 1 and out["genus_zero_case"] is None
    code, out = run_json(capsys, "genus", "--d", "7", "--e", "2,3")
    assert code == EXIT_ERROR


def test_compare(capsys):
    code, out = run_json(capsys, "compare", "--a", str(SAMPLES / "s4_cover.json"),
                         "--b", str(SAMPLES / "s4_cover_b.json"), "--same-group")
    assert code == EXIT_OK and out["prec"] is True
    code, out = run_json(capsys, "compare", "--a", str(SAMPLES / "s4_cover.json"),
                         "--b", str(SAMPLES / "s4_cover_b.json"))
    assert code == EXIT_ERROR and "GenusSideConditionViolated" in out["error"]


def test_compare_needs_same_group(capsys):
    code, out = run_json(capsys, "compare", "--a", str(SAMPLES / "s4_cover.json"),
                         "--b", str(SAMPLES / "d10_cover.json"))
    assert code == EXIT_ERROR


def test_twist(capsys):
    code, out = run_json(capsys, "twist", "--group", '{"kind": "sym", "n": 3}',
                         "--u", "[[[0, 1]]]", "--v", "[[[0, 2]]]")
    assert code == EXIT_OK and out["conjugate"] is True
    code, out = run_json(capsys, "twist", "--group", '{"kind": "sym", "n": 3}',
                         "--u", "[[[0, 1]]]", "--v", "[[]]")
    assert out["conjugate"] is False and out["fixed_points"] == 0


@pytest.mark.parametrize("name", sorted(REPROS))
def test_repro_names(capsys, name):
    code, out = run_json(capsys, "repro", name)
    assert out["name"] == name
    assert code == (EXIT_UNKNOWN if out["status"] == "unknown" else EXIT_OK)


def test_repro_sn_catalog_unknown(capsys):
    code, out = run_json(capsys, "repro", "sn-catalog")
    assert code == EXIT_UNKNOWN
    verdicts = {r["group"]: r["verdict"] for r in out["results"]}
    assert verdicts["sym(6)"] == "not obstructed" and verdicts["sym(8)"] == "obstructed"
    assert verdicts["sym(5)"] == verdicts["sym(7)"] == "unknown"


def test_unknown_exit_on_partial_closure(capsys):
    table = json.loads((Path(__file__).parents[1] / "src/coverspec/data/monster.json").read_text())
    for c in table["classes"]:
        if c["name"] == "87A":
            c["complete"] = False
            c["z_closure"] = ["87A", "1A"]
            c.pop("powers")
    # whether 3B is a power of 87A is not decided by this declaration
    a = {"table": table, "d": 87 * 38, "classes": ["87A", "87A"]}
    b = {"table": table, "d": 87 * 38, "classes": ["3B", "3B"]}
    code, out = run_json(capsys, "compare", "--a", json.dumps(a), "--b", json.dumps(b), "--same-group")
    assert code == EXIT_UNKNOWN and out["status"] == "unknown"


def test_property_suite_small(capsys):
    code, out = run_json(capsys, "property-suite", "--seed", "5", "--count", "20")
    assert code == EXIT_OK and out["passed"] == out["instances"] == 20


def test_json_deterministic_and_round_trips(capsys):
    _, first, _ = run(capsys, "--json", "repro", "d2n-crossratio")
    _, second, _ = run(capsys, "--json", "repro", "d2n-crossratio")
    assert first == second
    data = json.loads(first)
    assert json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) == first.rstrip("\n")


def test_subcommand_json_flag(capsys):
    code, out, _ = run(capsys, "genus", "--d", "4", "--e", "2,2,2", "--json")
    assert json.loads(out)["genus_zero_case"]["name"] == "klein"


def test_text_errors_go_to_stderr(capsys):
    code, out, err = run(capsys, "psl2", "--p", "7")
    assert code == EXIT_ERROR and out == "" and "ResidueConditionFails" in err


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "coverspec.cli", "genus", "--d", "24", "--e", "2 3 4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "octahedral" in proc.stdout
