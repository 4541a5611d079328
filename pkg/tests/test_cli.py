import io
import json
import subprocess
import sys

import pytest

from quarticgenus import cli
from quarticgenus.errors import UnhandledCase


def run(argv):
    out = io.StringIO()
    code = cli.main(argv, out=out)
    return code, out.getvalue()


def test_compute_json_17_13():
    code, text = run(["compute", "--p", "17", "--a", "13", "--format", "json"])
    doc = json.loads(text)
    assert code == 0
    assert doc["hilbert_generators"] == ["sqrt(13)"]
    assert doc["rank"] == "1"
    assert doc["hilbert"]["radicands"] == [{"type": "rational", "value": "13"}]
    assert doc["field"]["eps"] == {"u": "4", "v": "1", "den": "1"}


def test_json_round_trip_is_byte_identical():
    for argv in (["compute", "--p", "5", "--a", "33"], ["compute", "--p", "2", "--a", "119"]):
        _, text = run(argv + ["--format", "json"])
        assert cli.render_json(json.loads(text)) + "\n" == text


def test_json_has_no_bare_numbers():
    _, text = run(["compute", "--p", "5", "--a", "66", "--format", "json"])

    def walk(x):
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)
        else:
            assert x is None or isinstance(x, (str, bool))

    walk(json.loads(text))


def test_unit_radicand_serialization():
    _, text = run(["compute", "--p", "5", "--a", "33", "--format", "json"])
    rads = json.loads(text)["genus"]["radicands"]
    assert rads[1] == {"type": "unit", "c": "11", "eps": "1", "sqrtp": "1"}


def test_compute_text_ends_with_trivial_field():
    code, text = run(["compute", "--p", "5", "--a", "11"])
    assert code == 0
    assert text.rstrip().endswith("E(K) = K")


def test_compute_text_lists_generators():
    _, text = run(["compute", "--p", "17", "--a", "13"])
    assert text.rstrip().endswith("E(K) = K(sqrt(13))")


def test_invalid_input_exit_2(capsys):
    code, _ = run(["compute", "--p", "4", "--a", "12"])
    err = capsys.readouterr().err
    assert code == 2
    assert "p must be prime" in err and "a must be squarefree" in err


def test_unhandled_case_exit_3(monkeypatch, capsys):
    def boom(ctx):
        raise UnhandledCase("no row", ["r1"])

    monkeypatch.setattr(cli, "hilbert_genus_field", boom)
    code, _ = run(["compute", "--p", "17", "--a", "13"])
    assert code == 3
    assert "nearest rows: r1" in capsys.readouterr().err


def test_sweep_empty():
    code, text = run(["sweep", "--p-max", "0", "--a-max", "0"])
    assert code == 0 and text.strip() == "0 cases, 0 failures"


def test_sweep_pell_only():
    code, text = run(["sweep", "--p-max", "200", "--a-max", "1", "--checks", "pell"])
    assert code == 0 and text.strip() == "424 cases, 0 failures"


def test_sweep_reports_failures():
    code, text = run(["sweep", "--p-max", "41", "--a-max", "138", "--checks", "rank"])
    assert code == 1
    assert "rank p=41 a=138" in text
    assert text.strip().endswith("1 failures")


def test_sweep_json():
    code, text = run(["sweep", "--p-max", "17", "--a-max", "20", "--checks", "independence,genus", "--format", "json"])
    doc = json.loads(text)
    assert code == 0 and doc["failures"] == [] and doc["checks"] == ["independence", "genus"]


def test_bad_checks_rejected():
    with pytest.raises(SystemExit):
        cli.main(["sweep", "--p-max", "5", "--a-max", "5", "--checks", "bogus"])


def test_pell():
    code, text = run(["pell", "--p", "13", "--q", "17"])
    assert code == 0
    assert text.splitlines()[0].startswith("135^2 - 13*32^2 = 17^3")
    code, text = run(["pell", "--p", "2", "--q", "7", "--format", "json"])
    assert json.loads(text)["x"] == "3"


def test_pell_invalid(capsys):
    code, _ = run(["pell", "--p", "7", "--q", "9"])
    assert code == 2
    err = capsys.readouterr().err
    assert "p must be 2" in err and "q must be an odd prime" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "quarticgenus", "compute", "--p", "4", "--a", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
    assert "p must be prime" in proc.stderr
