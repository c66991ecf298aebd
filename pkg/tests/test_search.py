import json

import pytest

from frobstab.code import Code
from frobstab.errors import GuardError
from frobstab.search import (RNG_NAME, all_free_stabilizers, conjecture_search, exhaustive_search,
                             injected_trial, random_free_stabilizer)

from conftest import G_FREE_NONPURE, G_SELF_ORTH


def test_random_stabilizer_is_deterministic():
    a, ma = random_free_stabilizer("Z4", 3, 2, 17)
    b, mb = random_free_stabilizer("Z4", 3, 2, 17)
    assert ma == mb and a == b
    assert a.is_self_orthogonal() and a.rank == 2


def test_full_rank_has_zero_symmetric_part():
    C, mats = random_free_stabilizer("Z4", 2, 2, 0)
    assert mats["M"] == [[], []]
    assert C.is_self_dual()


def test_bad_rank():
    with pytest.raises(ValueError):
        random_free_stabilizer("Z4", 2, 3, 0)


def test_injected_examples():
    rec = injected_trial(Code("Z4", 7, G_FREE_NONPURE))
    assert rec["dist_ring"] == rec["dist_field"] == 3
    rec = injected_trial(Code("Z8", 3, G_SELF_ORTH))
    assert rec["dist_ring"] == rec["dist_field"] == 1


def test_search_log_reproducible():
    log = conjecture_search("Z4", 3, 1, 100, seed=0)
    assert len(log.records) == 100
    assert log.violations == []
    again = conjecture_search("Z4", 3, 1, 5, seed=3)
    assert [r["matrices"] for r in again.records] == [r["matrices"] for r in log.records[3:8]]
    for line in log.jsonl().splitlines():
        rec = json.loads(line)
        assert set(rec) == {"seed", "n", "k", "ring", "matrices", "dist_ring", "dist_field", "equal", "rng"}
        assert rec["rng"] == RNG_NAME
        C, mats = random_free_stabilizer("Z4", 3, 1, rec["seed"])
        assert mats == rec["matrices"]


def test_exhaustive_mode():
    codes = list(all_free_stabilizers("Z4", 2, 1))
    assert len(codes) == 4**3
    assert len({tuple(map(tuple, C.generators.tolist())) for C, _ in codes}) == 64
    log = exhaustive_search("Z4", 2, 1)
    assert len(log.records) == 64 and log.violations == []
    with pytest.raises(GuardError):
        exhaustive_search("Z4", 3, 1)
