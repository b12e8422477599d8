"""Smoke tests for the python bindings."""

import pytest

import dstab

REF3_CSV = "-6,-5,1\n-1,-2,-5\n-5,3,-1\n"
GATE2_CSV = "1,-4\n2,-3\n"
CORNER4_CSV = "-1,0,1,2\n-1,-1,0,0\n-1,-1,-1,0\n-1,-1,-1,-1\n"
TEMPLATE3_JSON = """{
  "n": 3,
  "entries": [["-1", "0", "q"], ["-1", "-1", "0"], ["-1", "-1", "-1"]],
  "parameters": {"q": null}
}"""


def test_check_certifies_the_4x4_corner_matrix():
    report = dstab.check(CORNER4_CSV)
    assert report["schema"] == "dstab-report/1"
    cert = report["certificate"]
    assert cert["kind"] == "d_stable"
    assert cert["pivot_chain"][0] == 4
    assert len(cert["levels"][0]["instances"]) == 13


def test_check_is_inconclusive_on_the_blind_spot_matrix():
    report = dstab.check(REF3_CSV)
    cert = report["certificate"]
    assert cert["kind"] == "inconclusive"
    values = [
        inst["value"]
        for attempt in cert["attempts"]
        for inst in attempt["instances"]
    ]
    assert "-118" in values


def test_check_rejects_positive_diagonal_entries():
    report = dstab.check(GATE2_CSV)
    assert report["certificate"]["kind"] == "necessary_failed"


def test_forced_pivot_chain_round_trips():
    report = dstab.check(CORNER4_CSV, pivot_chain=[4, 1])
    assert report["certificate"]["kind"] == "d_stable"
    assert report["certificate"]["pivot_chain"] == [4, 1]


def test_oracle_finds_a_destabilizing_scaling():
    report = dstab.oracle(GATE2_CSV, trials=1000, seed=42)
    found = report["oracle"]["found"]
    assert found is not None
    assert found["abscissa"] > 0


def test_oracle_finds_nothing_for_a_d_stable_matrix():
    report = dstab.oracle("-1\n", trials=100, seed=1)
    assert report["oracle"]["found"] is None


def test_sweep_matches_the_known_certified_region():
    csv = dstab.sweep(TEMPLATE3_JSON, ["q=-2:4:1/4"])
    lines = csv.strip().split("\n")
    assert lines[0] == (
        "q,hurwitz_stable,necessary_ok,theorem1_certified,oracle_counterexample"
    )
    assert len(lines) == 26
    assert lines[1] == "-2,1,0,0,"  # q = -2: stable but not certified
    assert lines[5] == "-1,1,1,1,"  # q = -1: first certified grid point
    assert lines[25] == "4,1,1,1,"  # q = 4: certified

    assert dstab.sweep(TEMPLATE3_JSON, ["q=-2:4:1/4"]) == csv  # deterministic


def test_replay_verifies_an_emitted_certificate():
    ok, why = dstab.replay(dstab.check_json(CORNER4_CSV))
    assert ok, why


def test_digest_is_format_independent():
    as_json = '{"n": 2, "entries": [[1, -4], [2, -3]]}'
    assert dstab.digest(GATE2_CSV) == dstab.digest(as_json)
    assert dstab.digest(GATE2_CSV).startswith("fnv1a64:")


def test_malformed_documents_raise_value_errors():
    with pytest.raises(ValueError):
        dstab.check("1,2\n3\n")
    with pytest.raises(ValueError):
        dstab.sweep(TEMPLATE3_JSON, ["q=bad:spec"])
