"""Command-line interface: output formats, determinism, exit codes, errors."""

import io
import json
import re

import pytest

from contourtl.cli import main, parse_delta, parse_depth, parse_weight


def run(argv):
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


def run_json(argv):
    code, text = run(argv)
    return code, json.loads(text)


def test_parse_depth():
    assert parse_depth("inf") is None
    assert parse_depth("3") == 3
    with pytest.raises(ValueError):
        parse_depth("-1")


def test_parse_weight():
    w = parse_weight("l=2:1,2", 4, 2, None)
    assert w.prop == 2 and w.labels == (1, 2)
    assert parse_weight("empty", 4, 2, None).prop == 0
    with pytest.raises(ValueError):
        parse_weight("2:1,1", 4, 2, None)
    with pytest.raises(ValueError):
        parse_weight("l=2:1", 4, 2, None)  # wrong label count


def test_parse_delta():
    from fractions import Fraction

    from contourtl.cyclo import Cyc
    vals = parse_delta("3/2,[0:1],2,5", 4)
    assert vals[0] == Cyc.from_rational(4, Fraction(3, 2))
    assert vals[1] == Cyc.root(4)
    with pytest.raises(ValueError):
        parse_delta("1,2,3", 2)


def test_basis_json():
    code, doc = run_json(["-n", "3", "-m", "1", "-d", "0", "basis"])
    assert code == 0
    assert doc["result"]["dimension"] == 5
    assert doc["config"]["d"] == "0" and doc["config"]["command"] == "basis"
    assert "timing_ms" in doc


def test_weights_listing():
    code, doc = run_json(["-n", "2", "-m", "2", "weights"])
    assert code == 0 and doc["result"]["count"] == 5


def test_gram_symbolic_and_evaluated():
    code, doc = run_json(["-n", "2", "-m", "2", "gram", "--weight", "empty"])
    assert code == 0
    assert doc["result"]["matrix"] == [["d0", "d1"], ["d1", "d0"]]
    code, doc = run_json(["-n", "2", "-m", "2", "--delta", "2,1",
                          "gram", "--weight", "empty"])
    assert doc["result"]["matrix"] == [["2", "1"], ["1", "2"]]


def test_csv_only_for_evaluated_gram():
    code, text = run(["-n", "2", "-m", "2", "--delta", "2,1",
                      "--format", "csv", "gram", "--weight", "empty"])
    assert code == 0 and text.splitlines() == ["2,1", "1,2"]
    code, _ = run(["-n", "2", "-m", "2", "--format", "csv", "basis"])
    assert code == 2


def test_ss_exit_codes():
    code, doc = run_json(["-n", "2", "-m", "2", "--delta", "1,1", "ss"])
    assert code == 1 and doc["result"]["semisimple"] is False
    code, doc = run_json(["-n", "2", "-m", "2", "--delta", "3,1", "ss"])
    assert code == 0 and doc["result"]["semisimple"] is True


def test_pivot_vanishing_reported(capsys):
    code = main(["-n", "2", "-m", "2", "--delta", "0,1",
                 "gramdet", "--weight", "empty"], out=io.StringIO())
    assert code == 2
    assert "d0 vanishes" in capsys.readouterr().err


def test_axioms_exit_code_and_shape():
    code, doc = run_json(["-n", "2", "-m", "2", "-d", "1", "axioms"])
    assert code == 0 and doc["result"]["all_pass"] is True
    assert [r["axiom"] for r in doc["result"]["reports"]] == \
        ["A1", "A2", "A3", "A4", "A5", "A6"]


def test_res_and_ind():
    code, doc = run_json(["-n", "4", "-m", "1", "res", "--weight", "l=2:1,1"])
    assert code == 0 and doc["result"]["dimension_ok"] is True
    code, doc = run_json(["-n", "2", "-m", "1", "ind", "--weight", "empty"])
    assert code == 0 and doc["result"]["level"] == 3


def test_homs_cli():
    code, doc = run_json(["-n", "2", "-m", "2", "--delta", "1,1", "homs",
                          "--source", "l=2:1,1", "--target", "empty"])
    assert code == 0 and doc["result"]["dimension"] == 1


def test_json_determinism():
    argv = ["-n", "3", "-m", "2", "-d", "1", "axioms"]
    _, a = run(argv)
    _, b = run(argv)
    strip = lambda s: re.sub(r'"timing_ms": [0-9.]+', '"timing_ms": T', s)
    assert strip(a) == strip(b)


def test_cache_roundtrip(tmp_path):
    argv = ["-n", "3", "-m", "2", "-d", "1", "--cache-dir", str(tmp_path),
            "basis"]
    code, doc = run_json(argv)
    assert code == 0
    assert any(p.name.startswith("structure_") for p in tmp_path.iterdir())
    code2, doc2 = run_json(argv)
    assert doc2["result"] == doc["result"]


def test_parse_error_exit_code(capsys):
    code = main(["-n", "3", "-m", "2", "gram", "--weight", "bogus"],
                out=io.StringIO())
    assert code == 2
    assert "position 0" in capsys.readouterr().err
