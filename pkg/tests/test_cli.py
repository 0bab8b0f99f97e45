import json
import subprocess
import sys

import pytest

from latrepr.cli import main
from latrepr.core import boolean_lattice, chain, lattice_to_dict, m3
from latrepr.modelcheck import structure_to_dict, generated_model


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, L in (("chain2", chain(2)), ("chain3", chain(3)), ("ba4", boolean_lattice(2)),
                    ("m3", m3()), ("big", chain(21))):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(lattice_to_dict(L)))
        out[name] = str(p)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_check_m3(files, capsys):
    code, out, _ = run(capsys, "check", files["m3"], "--json")
    report = json.loads(out)
    assert code == 0
    assert report["sections"]["representation"]["status"] == "NotRepresentable"
    assert not report["sections"]["distributivity"]["distributive"]


def test_check_chain2_hierarchy(files, capsys):
    code, out, _ = run(capsys, "check", files["chain2"], "--json")
    assert code == 0
    assert all(json.loads(out)["sections"]["hierarchy"].values())


def test_check_family(capsys):
    code, out, _ = run(capsys, "check", "--family", "nbar2bot", "--budget", "500", "--json")
    rows = json.loads(out)["sections"]["descriptors"]
    assert code == 0
    assert all(r["complete"]["status"] == "refuted" and r["completely_prime"]["status"] == "verified"
               for r in rows.values())
    assert json.loads(out)["provenance"]["budget"] == 500


def test_refutations_need_only_one_candidate(capsys):
    for fid in ("nbar2bot", "fincofin", "qunit", "ratint"):
        assert run(capsys, "check", "--family", fid, "--budget", "1")[0] == 0


def test_claim_mismatch_exit_code(capsys, monkeypatch):
    from latrepr.families import REGISTRY, FilterDescriptor
    from latrepr.families.qunit import UnitIntervalRationals

    class Miscatalogued(UnitIntervalRationals):
        def catalog(self):
            d = super().catalog()[0]  # closed[1/3,1] is not completely prime
            return [FilterDescriptor(d.name, d.membership, d.parameters,
                                     {**d.claimed, "completely_prime": True})]

    monkeypatch.setitem(REGISTRY, "qunit", Miscatalogued)
    code, out, _ = run(capsys, "check", "--family", "qunit", "--json")
    assert code == 2
    row = json.loads(out)["sections"]["descriptors"]["closed[1/3,1]"]["completely_prime"]
    assert row["status"] == "refuted" and not row["matches"]


def test_check_family_text(capsys):
    code, out, _ = run(capsys, "check", "--family", "qunit", "--descriptor", "cut>sqrt2/2")
    assert code == 0 and "cut>sqrt2/2" in out


def test_unknown_family(capsys):
    code, _, err = run(capsys, "check", "--family", "reals")
    assert code == 1 and "UnknownFamily" in err


def test_check_needs_one_subject(files, capsys):
    assert run(capsys, "check")[0] == 1
    assert run(capsys, "check", files["m3"], "--family", "qunit")[0] == 1


def test_parse_error(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{")
    code, _, err = run(capsys, "check", str(p))
    assert code == 1 and "ParseError" in err


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def test_represent_examples(files, capsys):
    code, out, _ = run(capsys, "represent", files["ba4"])
    assert code == 0 and len(json.loads(out)["base"]) == 2
    code, out, _ = run(capsys, "represent", files["chain3"])
    assert len(json.loads(out)["base"]) == 2
    code, _, err = run(capsys, "represent", files["m3"])
    assert code == 1 and "NotRepresentable" in err


def test_represent_roundtrip(files, tmp_path, capsys):
    _, out, _ = run(capsys, "represent", files["ba4"])
    saved = tmp_path / "rep.json"
    saved.write_text(out)
    code, out2, _ = run(capsys, "represent", str(saved), "--verify", "--json")
    assert code == 0 and json.loads(out2)["byte_identical"]
    saved.write_text(out.replace('"images": [\n    0', '"images": [\n    1'))
    code, _, _ = run(capsys, "represent", str(saved), "--verify")
    assert code == 2


def test_modelcheck(files, tmp_path, capsys):
    code, out, _ = run(capsys, "modelcheck", files["chain3"], "--json")
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(capsys, "modelcheck", files["m3"], "--json")
    assert "T" in json.loads(out)["failed"]
    p = tmp_path / "structure.json"
    p.write_text(json.dumps(structure_to_dict(generated_model(boolean_lattice(2), [0b0100]))))
    code, out, _ = run(capsys, "modelcheck", str(p), "--json")
    assert json.loads(out)["failed"] == ["I"]


def test_modelcheck_cap(files, capsys):
    assert run(capsys, "modelcheck", files["big"])[0] == 3


def test_ultra(files, capsys):
    code, out, _ = run(capsys, "ultra", files["chain2"], "--index", "3", "--principal", "1", "--json")
    report = json.loads(out)
    assert code == 0 and report["inf_exist"]["ok"] and report["subsets_checked"] == 4


def test_ultra_bad_point(files, capsys):
    assert run(capsys, "ultra", files["chain2"], "--index", "2", "--principal", "5")[0] == 1


def test_ultra_cap(files, capsys):
    assert run(capsys, "ultra", files["ba4"], "--cap", "3")[0] == 3


def test_cap_does_not_leak(files, capsys, monkeypatch):
    monkeypatch.delenv("LATREPR_CAP", raising=False)
    run(capsys, "ultra", files["ba4"], "--cap", "3")
    import os
    assert "LATREPR_CAP" not in os.environ


def test_truncate(capsys):
    code, out, _ = run(capsys, "truncate", "nbar2bot", "--depth", "2")
    d = json.loads(out)
    assert code == 0 and d["n"] == 5
    assert run(capsys, "truncate", "nbar2bot", "--depth", "0")[0] == 1


def test_families(capsys):
    code, out, _ = run(capsys, "families", "--json")
    d = json.loads(out)
    assert code == 0 and set(d) == {"qunit", "nbar2bot", "nbar2nat", "fincofin", "ratint"}
    assert d["fincofin"]["descriptors"]["cofinite"]["complete"] is False


def test_bad_budget(capsys):
    assert run(capsys, "families", "--budget", "0")[0] == 1


def test_console_script_entry(files):
    r = subprocess.run([sys.executable, "-m", "latrepr.cli", "check", files["chain2"], "--json"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["subject"] == files["chain2"]
