import copy
import json
from importlib import resources

import jsonschema
import pytest

from nonhopf import hopf
from nonhopf.replay import ReplayFailure, payload_digest, replay, replay_report, run_witness
from nonhopf.slopes import family_slope
from nonhopf.words import relator


@pytest.fixture(scope="module")
def cert():
    return hopf.certify(3, 3, jobs=1)


def _rehash(c):
    c["digest"] = payload_digest(c["payload"])
    return c


def test_round_trip(cert):
    assert replay(cert)
    assert replay(json.loads(json.dumps(cert)))
    names = [name for name, _, _ in replay_report(cert).checks]
    assert {"image:0", "image:1", "image:2", "kill", "surjectivity"} <= set(names)


def test_schema(cert):
    schema = json.loads(resources.files("nonhopf").joinpath("schema/certificate.schema.json").read_text())
    jsonschema.validate(cert, schema)


def test_digest_is_canonical(cert):
    assert cert["digest"] == hopf.digest(cert["payload"])
    assert hopf.canonical_json(cert["payload"]) == hopf.canonical_json(json.loads(json.dumps(cert["payload"])))


def test_deterministic_across_jobs(cert):
    assert hopf.certify(3, 3, jobs=2)["digest"] == cert["digest"]


def test_digest_tamper(cert):
    c = copy.deepcopy(cert)
    c["payload"]["witnesses"]["image"][1]["end"] += "ab"
    assert not replay(c)


def _first_delete(wit):
    return next(s for s in wit["steps"] if s["op"] == "delete")


def test_letter_tamper_detected_even_with_fresh_digest(cert):
    c = copy.deepcopy(cert)
    step = _first_delete(c["payload"]["witnesses"]["image"][2])
    w = step["word"]
    step["word"] = w[:5] + {"a": "A", "A": "a", "b": "B", "B": "b"}[w[5]] + w[6:]
    report = replay_report(_rehash(c))
    assert not report.ok
    failed = [(n, note) for n, ok, note in report.checks if not ok]
    assert failed[0][0] == "image:2"


def test_position_tamper(cert):
    c = copy.deepcopy(cert)
    _first_delete(c["payload"]["witnesses"]["kill"])["pos"] += 1
    assert not replay(_rehash(c))


def test_start_tamper(cert):
    c = copy.deepcopy(cert)
    wit = c["payload"]["witnesses"]["surjectivity"]
    wit["start"] = wit["start"][1:] + wit["start"][0]
    assert not replay(_rehash(c))


def test_schema_version_and_premise_flag(cert):
    c = copy.deepcopy(cert)
    c["payload"]["schema_version"] = 2
    assert not replay(_rehash(c))
    c = copy.deepcopy(cert)
    c["payload"]["premises"]["disjointness"]["pass"] = False
    assert not replay(_rehash(c))


def test_missing_witness(cert):
    c = copy.deepcopy(cert)
    del c["payload"]["witnesses"]["image"][-1]
    assert not replay(_rehash(c))
    assert not replay({"nothing": 1})


def test_run_witness_errors():
    r0 = relator(family_slope(3, 0))
    base = {"mode": "linear", "start": "ab" + r0, "end": "ab"}
    assert run_witness({**base, "steps": [{"op": "delete", "pos": 2, "word": r0}]}, r0) == "ab"
    with pytest.raises(ReplayFailure, match="verbatim"):
        run_witness({**base, "steps": [{"op": "delete", "pos": 1, "word": r0}]}, r0)
    with pytest.raises(ReplayFailure, match="cyclic permutation"):
        run_witness({**base, "steps": [{"op": "delete", "pos": 0, "word": "ab"}]}, r0)
    with pytest.raises(ReplayFailure, match="unknown op"):
        run_witness({**base, "steps": [{"op": "swap"}]}, r0)
    with pytest.raises(ReplayFailure, match="mode"):
        run_witness({**base, "mode": "spiral", "steps": []}, r0)
    # a wrapped occurrence is only legal in cyclic mode
    wrapped = r0[10:] + "ab" + r0[:10]
    step = [{"op": "delete", "pos": len(wrapped) - 10, "word": r0}]
    with pytest.raises(ReplayFailure):
        run_witness({"mode": "linear", "start": wrapped, "steps": step}, r0)
    assert run_witness({"mode": "cyclic", "start": wrapped, "steps": step}, r0) == "ab"
