import csv
import io
import json
import random

import pytest

from jacobsthal import verify as vf
from jacobsthal.verify import CHECK_IDS, Sampling, run_check, run_one, sweep


def test_registry_covers_every_check():
    assert set(vf.REGISTRY) == set(CHECK_IDS)
    with pytest.raises(vf.UnknownCheck):
        run_check("not_a_check", [(7, 1)])


def test_greene_exhaustive_q7():
    [rep] = run_check("greene_equiv", [(7, 1)])
    assert rep.status == "pass"
    assert rep.params["mode"] == "exhaustive"
    assert rep.params["counts"] == {"pass": 6**3 * 7, "fail": 0, "hypothesis_unmet": 0}


def test_points_q13_seed1():
    [rep] = run_check("points_EC", [(13, 1)], Sampling(samples=100, seed=1))
    assert rep.status == "pass" and rep.params["counts"]["pass"] == 100


def test_equal_entries_q9_fails_and_replays():
    rep = run_one("prop_2_6_4", 3, 2)
    assert rep.status == "fail" and rep.witness is not None and rep.trace is not None
    assert vf.replay(rep).status == "fail"
    assert vf.replay(json.loads(json.dumps(rep.to_json()))).status == "fail"


@pytest.mark.parametrize("check_id, p", [("l1_4", 7), ("prop_2_6_4", 7), ("t1_Em", 7), ("c1_4", 7)])
def test_witness_is_first_failure(check_id, p):
    rep = run_one(check_id, p)
    assert rep.status == "fail"
    check = vf.get_check(check_id)
    G = vf.group(p)
    space = check.space(G, 0, check.default_samples, {})
    cells = space.enumerate()
    pos = cells.index(space.cell_of(rep.witness))
    if pos:
        assert all(s != "fail" for s, _ in check.evaluate_many(G, cells[:pos]))
    assert vf.replay(rep).status == "fail"


def test_sampling_is_deterministic():
    s = Sampling(budget=0, samples=200, seed=3)
    a = run_one("greene_equiv", 17, 1, s).to_json()
    b = run_one("greene_equiv", 17, 1, s).to_json()
    assert a == b and a["params"]["mode"] == "sampled" and a["params"]["cells"] == 200
    c = run_one("greene_equiv", 17, 1, Sampling(budget=0, samples=200, seed=4)).to_json()
    assert c["seed"] == 4


@pytest.mark.parametrize("check_id", CHECK_IDS)
def test_batch_and_scalar_paths_agree(check_id):
    check = vf.get_check(check_id)
    for p, e in [(7, 1), (13, 1), (3, 2)]:
        G = vf.group(p, e)
        if check.field_hypothesis(G):
            continue
        space = check.space(G, 0, 20, {})
        cells = space.sample(random.Random(f"agree:{check_id}:{G.q}"), 25)
        for cell, (status, _) in zip(cells, check.evaluate_many(G, cells)):
            assert check.evaluate_one(G, cell).status == status, cell


def test_field_hypothesis_reports():
    rep = run_one("bt1", 13)
    assert rep.status == "hypothesis_unmet" and "reason" in rep.params
    assert run_one("t3_4", 7).status == "hypothesis_unmet"


def test_reports_are_json_serializable():
    for check_id in CHECK_IDS:
        rep = run_one(check_id, 7, 1, Sampling(samples=30))
        assert rep.status in vf.STATUSES
        text = json.dumps(rep.to_json())
        assert vf.CheckReport.from_json(json.loads(text)).to_json() == rep.to_json()
        if rep.status == "fail":
            assert rep.witness is not None


def test_empty_range():
    out = sweep(["greene_equiv"], 14, 16)
    assert out["reports"] == []
    rows = list(csv.reader(io.StringIO(vf.to_csv(out))))
    assert rows == [["check", "q", "pass", "fail", "hypothesis_unmet", "vacuous"]]


def test_sweep_ordering_and_workers():
    ids = ["points_EC", "greene_equiv"]
    seq = sweep(ids, 5, 9, Sampling(samples=10))
    par = sweep(ids, 5, 9, Sampling(samples=10), workers=2)
    assert vf.to_json(seq) == vf.to_json(par)
    keys = [(r["field"][0] ** r["field"][1], r["check"]) for r in seq["reports"]]
    assert keys == [(5, "greene_equiv"), (5, "points_EC"), (7, "greene_equiv"), (7, "points_EC"),
                    (9, "greene_equiv"), (9, "points_EC")]


def test_t3_6_search_reported():
    out = sweep(["t3_6"], 7, 13)
    statuses = {r["field"][0]: r["status"] for r in out["reports"]}
    assert statuses[7] == "hypothesis_unmet"
    assert statuses[13] in ("pass", "fail")
    assert out["reports"][-1]["params"]["hits"] > 0


CORE = ["greene_equiv", "points_EC", "l1_4", "l1_1", "l3_5", "t1_Em", "t3_4", "t3_5", "bt1", "bt2"]


def test_core_sweep_has_no_failures():
    out = sweep(CORE, 5, 49, workers=4)
    failing = sorted({(r["check"], r["field"][0] ** r["field"][1]) for r in out["reports"] if r["status"] == "fail"})
    assert failing == []
