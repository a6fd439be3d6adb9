"""Smoke tests for the _tiup extension module."""

import _tiup


def test_parse_and_roundtrip():
    assert _tiup.parse("x - y - z == x - (y + z)")
    text = "x ^ y == ~((x & y) | (~x & ~y))"
    assert _tiup.roundtrip(text) == text


def test_eval_wraparound():
    assert _tiup.eval("x - y - z == x - (y + z)", {"x": 3, "y": 1, "z": 2}) == 1
    falsifier = {"x": 4, "y": 0, "z": -4}
    assert _tiup.eval("(x+y>0) && (y+z<0) -> (x+y)*(y+z)<0", falsifier, width=4) == 0
    assert _tiup.eval("(x+y>0) && (y+z<0) -> (x+y)*(y+z)<0", falsifier, width=32) == 1


def test_oracle_verdicts():
    good = _tiup.check_tautology("x ^ y == ~((x & y) | (~x & ~y))", width=2)
    assert good["valid"]
    assert good["assignments_checked"] == 16
    bad = _tiup.check_tautology("(x+y>0) && (y+z<0) -> (x+y)*(y+z)<0", width=4)
    assert not bad["valid"]
    assert bad["counterexample"] == {"x": 0, "y": 2, "z": 6}


def test_corpus_and_synthesis_counts():
    seeds = _tiup.builtin_seeds()
    templates = _tiup.builtin_templates()
    assert len(templates) == 4
    names = {name for name, _ in seeds}
    for required in ("assoc", "demorgan_xor", "ld_st", "lt_antisym_s",
                     "lt_antisym_u", "mul2_add", "eq_refl"):
        assert required in names
    n = len(seeds)
    expected = sum(n ** len(ph) for _, _, ph in templates)
    assert _tiup.count_instances(n) == expected
    assert len(_tiup.synthesize()) == expected


def test_compile_shapes():
    art = _tiup.compile("x - y - z == x - (y + z)", "assoc")
    assert "= sub i32" in art["ir"]
    assert "finish" in art["ir"]
    assert art["words"][-1] == 0x00100F93  # finish: addi x31, x0, 1
    assert art["inputs"] == {"x": 1, "y": 2, "z": 3}
    assert _tiup.disassemble(0x00000013) == "nop"


def test_golden_run_and_anomaly():
    ok = _tiup.run("x * 2 == x + x", {"x": 7})
    assert ok["finished"] and ok["result"] == 1 and ok["finish"] == 1
    bad = _tiup.run("x * 2 == x + x", {"x": 7}, anomaly="a18")
    assert bad["finished"] and bad["result"] == 0


def test_anomaly_catalog():
    ids = [name for name, *_ in _tiup.list_anomalies()]
    assert ids == ["a03", "a04", "a05", "a06", "a10", "a11", "a12",
                   "a13", "a14", "a15", "a16", "a17", "a18"]


def test_seed_verification_and_detection_row():
    clean = _tiup.verify_seeds("golden", samples=32, jobs=2)
    assert all(v["outcome"] == "pass-within-budget" for v in clean)
    row = _tiup.detection_row("a18", samples=32, jobs=2)
    assert row["tiup_detected"] and not row["sqed_detected"]
    row = _tiup.detection_row("a17", samples=32, jobs=2)
    assert not row["tiup_detected"] and row["sqed_detected"]
