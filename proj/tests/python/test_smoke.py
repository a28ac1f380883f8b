"""Smoke tests for the python bindings."""

import json
import math

import pytest

import repscope


def test_bounds_math():
    assert repscope.theta(8, 2) == pytest.approx(0.8)
    assert repscope.prob_a(0.703, 0.1) == pytest.approx(0.67)
    assert repscope.lower_bound(0.839, 0.2) == pytest.approx(0.639)
    expected = 1.0 / 1998.0 + math.sqrt(1.0 / (4 * 999.0**2) + 0.67)
    assert repscope.upper_bound(0.703, 0.1, 1000) == pytest.approx(expected)
    assert repscope.SUSPECT_THRESHOLD == pytest.approx(0.6)


def test_bounds_validation():
    with pytest.raises(ValueError):
        repscope.prob_a(0.5, 1.0)
    with pytest.raises(ValueError):
        repscope.upper_bound(0.5, 0.0, 1)
    with pytest.raises(ValueError):
        repscope.theta(0, 0)


def test_generate_and_detect_roundtrip(tmp_path):
    gen = repscope.GenConfig()
    gen.contexts = 2
    gen.objects_per_context = 20
    gen.group_sizes = [12, 8]
    gen.reads_per_object = 8
    gen.seed = 7

    trace_text = repscope.generate_trace(gen)
    assert trace_text.count("\n") > 100
    trace_path = tmp_path / "trace.jsonl"
    trace_path.write_text(trace_text)

    detect = repscope.DetectConfig()
    detect.period = 1
    detect.jitter = 0.0
    detect.watchpoints = 0
    detect.queue_capacity = 0

    profile = json.loads(repscope.detect_file(str(trace_path), detect))
    assert profile["version"] == "v1"
    assert len(profile["contexts"]) == 2

    oracle = json.loads(repscope.oracle_file(str(trace_path)))
    by_path = {tuple(c["alloc_path"]): c for c in oracle["contexts"]}
    for ctx in profile["contexts"]:
        oc = by_path[tuple(ctx["alloc_path"])]
        assert ctx["equivalent"] == oc["equal"]
        assert ctx["different"] == oc["total"] - oc["equal"]


def test_generator_is_deterministic():
    gen = repscope.GenConfig()
    gen.objects_per_context = 10
    gen.reads_per_object = 4
    gen.seed = 3
    assert repscope.generate_trace(gen) == repscope.generate_trace(gen)


def test_bad_config_raises():
    gen = repscope.GenConfig()
    gen.group_sizes = [3, 3]  # does not sum to the default X
    with pytest.raises(ValueError):
        repscope.generate_trace(gen)


def test_e2e_report():
    gen = repscope.GenConfig()
    gen.contexts = 1
    gen.objects_per_context = 30
    gen.group_sizes = [30]
    gen.reads_per_object = 8
    gen.seed = 5

    detect = repscope.DetectConfig()
    detect.period = 2
    detect.seed = 9

    result = repscope.run_e2e(gen, detect)
    report = json.loads(result["report_json"])
    assert report["contexts"][0]["theta"] == 1.0
    assert report["contexts"][0]["suspect"] is True

    summary = json.loads(result["summary_json"])
    assert summary["contexts"][0]["containment"] in ("ok", "vacuous")
    assert result["folded"].strip()

    again = repscope.run_e2e(gen, detect)
    assert again["report_json"] == result["report_json"]


def test_report_formats():
    gen = repscope.GenConfig()
    gen.objects_per_context = 12
    gen.group_sizes = [8, 4]
    gen.reads_per_object = 8
    gen.seed = 21

    detect = repscope.DetectConfig()
    detect.period = 2

    result = repscope.run_e2e(gen, detect)
    text = repscope.report_from_json(result["profile_json"], "text", 0.6,
                                     result["oracle_json"])
    assert "theta" in text
    folded = repscope.report_from_json(result["profile_json"], "folded")
    for line in folded.strip().splitlines():
        stack, count = line.rsplit(" ", 1)
        assert ";" in stack
        assert int(count) > 0
    with pytest.raises(ValueError):
        repscope.report_from_json(result["profile_json"], "yaml")
