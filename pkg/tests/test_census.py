import os

import pytest

from helpers import close
from oracles import brute_turaev_viro, primal_h1
from spinecensus.census import (
    SEEDS,
    CensusRecord,
    MustRunPriorLevels,
    StoreError,
    load_level,
    run_census,
    seed_records,
    store_level,
)
from spinecensus.census import level_path
from spinecensus.triangulation import from_signature


def _oracle_key(sig):
    tri = from_signature(sig)
    return primal_h1(tri), brute_turaev_viro(tri, 5), brute_turaev_viro(tri, 7)


def _same(a, b):
    return a[0] == b[0] and close(a[1], b[1]) and close(a[2], b[2])


def test_new_class_counts_match_oracle(closed_levels):
    keys = [_oracle_key(sig) for sig in SEEDS.values()]
    for n in range(1, 5):
        new = 0
        for r in closed_levels[n].records:
            k = _oracle_key(r.signature)
            if not any(_same(k, x) for x in keys):
                keys.append(k)
                new += 1
        assert closed_levels[n].stages["new classes"] == new


def test_every_survivor_is_closed_and_orientable(closed_levels):
    for rep in closed_levels.values():
        for r in rep.records:
            tri = from_signature(r.signature)
            assert tri.is_candidate_closed() and tri.orientable
            assert tri.n == rep.n


def test_seed_records():
    recs = seed_records()
    assert [r.graph for r in recs] == list(SEEDS)
    assert all(r.status.startswith("class=0.") for r in recs)


def test_record_line_round_trip(closed_levels):
    for r in closed_levels[3].records:
        again = CensusRecord.from_line(r.to_line())
        assert again.signature == r.signature and again.status == r.status
        assert again.record.matches(r.record)


def test_store_round_trip(tmp_path):
    store = str(tmp_path / "store")
    for n in (1, 2):
        run_census(n, store=store)
    header, recs = load_level(level_path(store, 2))
    assert header == {"mode": "closed", "n": "2"}
    fresh = run_census(2)
    assert sorted(r.to_line() for r in recs) == sorted(r.to_line() for r in fresh.records)
    # level 3 picks up the stored levels
    rep = run_census(3, store=store)
    assert os.path.exists(level_path(store, 3))
    assert rep.stages["new classes"] == run_census(3).stages["new classes"]


def test_missing_prior_level(tmp_path):
    with pytest.raises(MustRunPriorLevels):
        run_census(2, store=str(tmp_path))


def test_bad_store_file(tmp_path):
    p = tmp_path / "level-1.census"
    p.write_text("not a census\n")
    with pytest.raises(StoreError):
        load_level(str(p))
    with pytest.raises(StoreError):
        load_level(str(tmp_path / "nope.census"))


def test_store_level_is_atomic(tmp_path, closed_levels):
    path = store_level(str(tmp_path), closed_levels[2])
    assert not os.path.exists(path + ".tmp")
    assert load_level(path)[1]


def test_output_is_deterministic():
    a = [r.to_line() for r in run_census(3).records]
    b = [r.to_line() for r in run_census(3).records]
    assert a == b


def test_workers_do_not_change_results():
    assert [r.to_line() for r in run_census(3, workers=2).records] == [r.to_line() for r in run_census(3).records]


def test_ideal_candidates_have_torus_links():
    rep = run_census(2, "ideal")
    assert rep.records
    for r in rep.records:
        tri = from_signature(r.signature)
        assert all(lk.is_torus for lk in tri.links)


def test_bad_arguments():
    with pytest.raises(ValueError):
        run_census(0)
    with pytest.raises(ValueError):
        run_census(1, mode="open")


@pytest.mark.extended
def test_closed_n5(closed_levels):
    prev = seed_records()
    for rep in closed_levels.values():
        prev += rep.records
    rep = run_census(5, previous=prev, workers=os.cpu_count() or 1)
    print("n=5 new classes", rep.stages["new classes"])
    assert rep.stages["new classes"] > 0
