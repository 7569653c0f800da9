import json
import subprocess
import sys

import pytest

from tropring.cli import run

SIMPLEX2 = {"dim": 2, "vertices": [[0, 0], [1, 0], [0, 1]]}
SQUARE = {"dim": 2, "vertices": [[0, 0], [1, 0], [0, 1], [1, 1]]}
LINE = {"dim": 2, "cycle_dim": 1, "cones": [
    {"rays": [[-1, 0]], "weight": 1}, {"rays": [[0, -1]], "weight": 1}, {"rays": [[1, 1]], "weight": 1}]}
BAD = {"dim": 2, "cycle_dim": 1, "cones": [{"rays": [[1, 0]]}, {"rays": [[0, 1]]}]}
P2_FAN = {"dim": 2, "h0": ["1", "0", "0"], "cones": [
    {"rays": [[1, 0], [0, 1]]}, {"rays": [[0, 1], [-1, -1]]}, {"rays": [[-1, -1], [1, 0]]}]}
QUADRANT = {"dim": 2, "cones": [{"rays": [[1, 0], [0, 1]]}]}


def call(argv, capsys):
    code = run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_mixed_volume(write_json, capsys):
    s = write_json("s.json", SIMPLEX2)
    assert call(["mixed-volume", s, s], capsys) == (0, {"mixed_volume": "1/2", "bkk": "1"})


def test_balance(write_json, capsys):
    code, doc = call(["balance", write_json("bad.json", BAD)], capsys)
    assert code == 2
    assert doc["balanced"] is False
    assert doc["violation"]["cone"] == {"rays": [], "lineality": []}
    assert call(["balance", write_json("l.json", LINE)], capsys) == (0, {"balanced": True})


def test_intersect_is_seed_independent(write_json, capsys):
    a, b = write_json("a.json", LINE), write_json("b.json", LINE)
    code7, d7 = call(["intersect", a, b, "--seed", "7"], capsys)
    code8, d8 = call(["intersect", a, b, "--seed", "8"], capsys)
    assert code7 == code8 == 0
    assert d7["value"] == d8["value"] == "1"
    assert d7["pairs"]


def test_intersect_non_complementary_gives_cycle(write_json, capsys):
    plane = write_json("h.json", {"dim": 3, "vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]})
    code, cyc = call(["hypersurface", plane], capsys)
    assert code == 0 and cyc["cycle_dim"] == 2
    c = write_json("plane.json", cyc)
    code, doc = call(["intersect", c, c], capsys)
    assert code == 0 and doc["cycle"]["cycle_dim"] == 1 and len(doc["cycle"]["cones"]) == 4


def test_sum_and_equivalent(write_json, capsys):
    l = write_json("l.json", LINE)
    code, doc = call(["sum", l, l], capsys)
    assert code == 0 and all(c["weight"] == "2" for c in doc["cones"])
    s = write_json("s2.json", doc)
    assert call(["equivalent", s, l], capsys) == (0, {"equivalent": False})
    assert call(["equivalent", l, l], capsys) == (0, {"equivalent": True})


def test_degree_triple_check(write_json, capsys):
    s, q = write_json("s.json", SIMPLEX2), write_json("q.json", SQUARE)
    code, doc = call(["degree", q, s, "--fan", "auto"], capsys)
    assert code == 0
    assert doc["tropical"] == doc["bkk"] == doc["kp_top_pairing"] == "2"
    assert doc["agree"] is True


def test_degree_with_fan_file(write_json, capsys):
    t = write_json("t.json", {"dim": 2, "vertices": [[0, 0], [-1, 0], [0, -1]]})
    f = write_json("f.json", P2_FAN)
    code, doc = call(["degree", t, t, "--fan", f], capsys)
    assert code == 0 and doc["kp_top_pairing"] == "1"
    # the standard simplex is not compatible with this fan
    s = write_json("s.json", SIMPLEX2)
    code, doc = call(["degree", s, s, "--fan", f], capsys)
    assert code == 2 and doc["error"]["type"] == "RingError"


def test_kp_ring_and_top_pairing(write_json, capsys):
    f = write_json("f.json", P2_FAN)
    code, doc = call(["kp-ring", f], capsys)
    assert code == 0 and doc["dims"] == [1, 1, 1]
    t = write_json("t.json", {"dim": 2, "vertices": [[0, 0], [-1, 0], [0, -1]]})
    code, doc = call(["top-pairing", f, t, t], capsys)
    assert code == 0 and doc["value"] == "1"
    code, doc = call(["kp-ring", f, "--h0", "0,0,0"], capsys)
    assert code == 2 and doc["error"]["type"] == "RingError"


def test_covers(write_json, capsys):
    l = write_json("l.json", LINE)
    assert call(["covers", write_json("q.json", QUADRANT), l], capsys) == (0, {"covers": False})
    full = {"dim": 2, "cones": [{"rays": [[1, 0], [0, 1]]}, {"rays": [[0, 1], [-1, 0]]},
                                {"rays": [[-1, 0], [0, -1]]}, {"rays": [[0, -1], [1, 0]]}]}
    assert call(["covers", write_json("f.json", full), l], capsys) == (0, {"covers": True})


def test_parse_errors(write_json, capsys):
    bad = write_json("bad.json", {"dim": 2, "vertices": [[0.5, 0], [1, 0], [0, 1]]})
    code, doc = call(["mixed-volume", bad, bad], capsys)
    assert code == 1 and doc["error"]["type"] == "ParseError"
    code, doc = call(["balance", "/nonexistent.json"], capsys)
    assert code == 1


def test_domain_errors(write_json, capsys):
    seg = write_json("seg.json", {"dim": 2, "vertices": [[0, 0], [3, 0]]})
    code, doc = call(["hypersurface", seg], capsys)
    assert code == 2 and doc["error"]["type"] == "CycleError"


def test_text_format_and_output_file(write_json, capsys, tmp_path):
    s = write_json("s.json", SIMPLEX2)
    assert run(["--format", "text", "mixed-volume", s, s]) == 0
    assert capsys.readouterr().out == "bkk: 1\nmixed_volume: 1/2\n"
    out = tmp_path / "o.json"
    assert run(["--output", str(out), "mixed-volume", s, s]) == 0
    assert json.loads(out.read_text())["bkk"] == "1"


def test_round_trip_through_files(write_json, capsys):
    q = write_json("q.json", SQUARE)
    code, cyc = call(["hypersurface", q], capsys)
    c = write_json("c.json", cyc)
    code, again = call(["sum", c], capsys)
    assert again == cyc


def test_output_is_deterministic_across_processes(write_json):
    a = write_json("a.json", LINE)
    outs = {subprocess.run([sys.executable, "-m", "tropring.cli", "intersect", a, a, "--seed", "3"],
                           capture_output=True, text=True, check=True).stdout for _ in range(2)}
    assert len(outs) == 1
