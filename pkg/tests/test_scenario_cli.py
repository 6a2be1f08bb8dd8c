import copy
import json
import subprocess
import sys

import numpy as np
import pytest

from qpoisson import cli
from qpoisson.checks import AxiomError
from qpoisson.corpus import SCENARIO_DIR, builtin_corpus
from qpoisson.scenario import ScenarioSchemaError, build_scenario, load_scenario, save_scenario, serialize

Z2 = SCENARIO_DIR / "z2_walk.json"


def z2_doc():
    return json.loads(Z2.read_text())


def test_z2_walk_loads():
    s = load_scenario(Z2)
    assert s.hopf.dim == 2 and s.action.target.dim == 2
    assert np.abs(s.measure.coords - [0, 1]).max() == 0
    assert s.expected == {"ergodic": True, "nondegenerate": True, "dim_H": 1}


@pytest.mark.parametrize("edit, where", [
    (lambda d: d.pop("measure"), "$"),
    (lambda d: d.update(schema=2), "$.schema"),
    (lambda d: d["measure"].update(element=7), "$.measure"),
    (lambda d: d.update(measure={"construct": "group_measure", "weights": [0.5, 0.6]}), "$.measure.weights"),
    (lambda d: d["quantum_group"].update(group={"named": "Z99"}), "$.quantum_group"),
    (lambda d: d.update(measure={"construct": "coords", "coords": [[1, 0], [0]]}), "$.measure.coords"),
    (lambda d: d.update(measure={"construct": "bogus"}), "$.measure.construct"),
])
def test_schema_errors_locate_the_field(edit, where):
    d = z2_doc()
    edit(d)
    with pytest.raises(ScenarioSchemaError) as exc:
        build_scenario(d)
    assert exc.value.path.startswith(where)


def test_corrupt_antipode_is_named():
    d = serialize(load_scenario(Z2))
    d["quantum_group"]["hopf"]["antipode"][0][1][0] += 1e-3
    with pytest.raises(AxiomError, match="antipode"):
        build_scenario(d)


@pytest.mark.parametrize("path", sorted(SCENARIO_DIR.glob("*.json")), ids=lambda p: p.stem)
def test_round_trip_is_tensor_equal(path, tmp_path):
    s = load_scenario(path)
    save_scenario(s, tmp_path / "copy.json")
    t = load_scenario(tmp_path / "copy.json")
    for a, b in [(s.hopf.mult, t.hopf.mult), (s.hopf.comult, t.hopf.comult), (s.hopf.antipode, t.hopf.antipode),
                 (s.action.tensor, t.action.tensor), (s.measure.coords, t.measure.coords)]:
        assert np.abs(a - b).max() == 0


def test_expectation_mismatch_fails(tmp_path):
    d = z2_doc()
    d["expected"]["dim_H"] = 2
    p = tmp_path / "wrong.json"
    p.write_text(json.dumps(d))
    report = cli.run([str(p)], "harmonic")
    assert cli.exit_code(report) == 1
    assert "expectation mismatch: dim_H" in report["scenarios"][0]["failures"][0]
    assert cli.main(["harmonic", str(p)]) == 1


def test_json_report_is_stable(tmp_path, capsys):
    outs = []
    for i in range(2):
        out = tmp_path / f"r{i}.json"
        assert cli.main(["suite", str(Z2), "--report", "json", "--out", str(out)]) == 0
        r = json.loads(out.read_text())
        for s in r["scenarios"]:
            s.pop("wall_time")
        r["summary"].pop("wall_time")
        outs.append(r)
    assert outs[0] == outs[1]
    r = outs[0]
    assert r["report_schema"] == 1 and r["summary"]["total"] == 1
    assert r["scenarios"][0]["dim_H"] == 1 and r["scenarios"][0]["oracle"]["ok"]


def test_tolerance_flag_beats_environment(monkeypatch):
    monkeypatch.setenv(cli.TOLERANCE_ENV, "1e-6")
    assert cli._tolerance(None).eps_compare == 1e-6
    assert cli._tolerance(1e-9).eps_compare == 1e-9
    monkeypatch.delenv(cli.TOLERANCE_ENV)
    assert cli._tolerance(None).eps_compare == 1e-8


def test_max_dim_guard():
    report = cli.run([str(SCENARIO_DIR / "kac_paljutkin.json")], "verify", max_dim=4)
    assert cli.exit_code(report) == 1
    assert "exceeds --max-dim" in report["scenarios"][0]["failures"][0]


def test_unreadable_file_is_a_failed_scenario(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    report = cli.run([str(p)], "verify")
    assert cli.exit_code(report) == 1
    assert report["scenarios"][0]["failures"][0].startswith("cannot read scenario")


def test_shipped_battery_passes_and_jobs_keep_order():
    serial = cli.run([], "battery", include_builtin=False)
    assert cli.exit_code(serial) == 0
    parallel = cli.run([], "battery", include_builtin=False, jobs=2)
    assert [s["name"] for s in serial["scenarios"]] == [s["name"] for s in parallel["scenarios"]]


def test_console_entry_point_runs():
    out = subprocess.run([sys.executable, "-m", "qpoisson", "verify", str(Z2)], capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.startswith("PASS  z2_walk")


def test_builtin_documents_validate_and_carry_expectations():
    docs = builtin_corpus()
    assert len(docs) > 400
    for d in docs[::25]:
        s = build_scenario(copy.deepcopy(d))
        assert set(s.expected) == {"ergodic", "nondegenerate", "dim_H"}
