from __future__ import annotations

import json
from pathlib import Path

import pytest

from prefcore.budget import Budget, ensure_budget
from prefcore.errors import BudgetExceeded, DomainError
from prefcore.io import dump_domain, load_domain, parse_domain, parse_domain_json
from prefcore.parallel import run_chunks, split
from prefcore.preferences import (
    Domain, Preference, Profile,
    best_in, is_complete_reversal, rank_of, restrict, seconds_set, universal_domain, worst_in,
)


def _ids(d: Domain, *labels: str) -> set[int]:
    return {d.index_of(lab) for lab in labels}


# ── parsing ──────────────────────────────────────────────────────────────────

def test_ssp6_parses_in_file_order(ssp6: Domain) -> None:
    assert ssp6.m == 6
    assert len(ssp6) == 12
    assert ssp6.labels == ["a1", "a2", "a3", "a4", "a5", "a6"]
    assert ssp6.render(ssp6.prefs[1]) == "a1 a2 a5 a4 a3 a6"
    assert ssp6.name == "ssp6"


def test_single_alternative_domain_is_valid() -> None:
    d = parse_domain("alternatives: a1\npref: a1\n")
    assert d.m == 1
    assert len(d) == 1


def test_comments_and_blank_lines_are_ignored() -> None:
    text = "# header\n\nalternatives: x y   # trailing\n\npref: x y\n# mid\npref: y x\n"
    d = parse_domain(text)
    assert d.labels == ["x", "y"]
    assert [p.ranking for p in d.prefs] == [(0, 1), (1, 0)]


def test_hash_inside_a_label_is_not_a_comment() -> None:
    text = "alternatives: c# f#  # two keys\npref: c# f#\npref: f# c#  #reversed\n"
    d = parse_domain(text)
    assert d.labels == ["c#", "f#"]
    assert [p.ranking for p in d.prefs] == [(0, 1), (1, 0)]
    assert parse_domain(dump_domain(d)).labels == ["c#", "f#"]


@pytest.mark.parametrize("text, fragment", [
    ("alternatives: a b\npref: a b\npref: a b\n", "duplicate preference"),
    ("alternatives: a a\npref: a a\n", "permutation"),
    ("alternatives: a b c\npref: a b\n", "permutation"),
    ("alternatives: a b\npref: a c\n", "permutation"),
    ("alternatives:\n", "empty alternative list"),
    ("", "empty alternative list"),
    ("pref: a b\n", "first entry"),
    ("alternatives: a b\nranking: a b\n", "unexpected key"),
    ("alternatives: a b\na b\n", "expected"),
])
def test_parse_errors(text: str, fragment: str) -> None:
    with pytest.raises(DomainError, match=fragment):
        parse_domain(text)


def test_duplicate_label_rejected() -> None:
    with pytest.raises(DomainError, match="duplicate label"):
        Domain.from_labels(["a", "a"], [])


def test_json_domain_matches_text_domain(tmp_path: Path, cyclic4: Domain) -> None:
    payload = {"alternatives": cyclic4.labels, "prefs": [cyclic4.labels_of(p.ranking) for p in cyclic4.prefs]}
    path = tmp_path / "cyclic4.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    loaded = load_domain(path)
    assert loaded.prefs == cyclic4.prefs
    assert loaded.name == "cyclic4"


def test_json_domain_errors() -> None:
    with pytest.raises(DomainError, match="invalid JSON"):
        parse_domain_json("{")
    with pytest.raises(DomainError, match="permutation"):
        parse_domain_json('{"alternatives": ["a", "b"], "prefs": [["a", "a"]]}')


def test_missing_domain_file(tmp_path: Path) -> None:
    with pytest.raises(FileNotFoundError):
        load_domain(tmp_path / "nope.dom")


def test_dump_domain_reparses(star_asym: Domain) -> None:
    again = parse_domain(dump_domain(star_asym), name=star_asym.name)
    assert again == star_asym


# ── order queries ────────────────────────────────────────────────────────────

def test_rank_of(ssp6: Domain, star_asym: Domain) -> None:
    assert rank_of(ssp6.prefs[0], ssp6.index_of("a3")) == 3
    assert rank_of(star_asym.prefs[8], star_asym.index_of("a")) == 4
    for p in ssp6.prefs:
        assert rank_of(p, p.top) == 1
        assert sorted(rank_of(p, a) for a in range(ssp6.m)) == list(range(1, ssp6.m + 1))


def test_complete_reversal(ssp6: Domain) -> None:
    p1, p2, p12 = ssp6.prefs[0], ssp6.prefs[1], ssp6.prefs[11]
    assert is_complete_reversal(p1, p12)
    assert is_complete_reversal(p12, p1)
    assert not is_complete_reversal(p1, p1)
    assert not is_complete_reversal(p1, p2)


def test_complete_reversal_needs_same_m() -> None:
    with pytest.raises(ValueError):
        is_complete_reversal(Preference((0, 1)), Preference((0, 1, 2)))


def test_best_and_worst_in(ssp6: Domain, cyclic4: Domain) -> None:
    p2 = ssp6.prefs[1]
    assert ssp6.label(best_in(p2, _ids(ssp6, "a3", "a4", "a5"))) == "a5"
    assert cyclic4.label(best_in(cyclic4.prefs[8], _ids(cyclic4, "a1", "a2"))) == "a2"
    assert best_in(p2, {3}) == 3
    assert best_in(p2, range(ssp6.m)) == p2.top
    assert worst_in(p2, range(ssp6.m)) == p2.bottom
    with pytest.raises(ValueError):
        best_in(p2, set())
    with pytest.raises(ValueError):
        worst_in(p2, [])


def test_restrict(ssp6: Domain) -> None:
    p2 = ssp6.prefs[1]
    assert ssp6.labels_of(restrict(p2, _ids(ssp6, "a1", "a2", "a3"))) == ["a1", "a2", "a3"]
    assert restrict(p2, range(ssp6.m)) == p2.ranking
    assert restrict(p2, {4}) == (4,)
    big = _ids(ssp6, "a2", "a3", "a4", "a5")
    small = _ids(ssp6, "a3", "a5")
    inner = [a for a in restrict(p2, big) if a in small]
    assert tuple(inner) == restrict(p2, small)
    with pytest.raises(ValueError):
        restrict(p2, [])


def test_seconds_set(star_asym: Domain, cyclic4: Domain) -> None:
    assert set(star_asym.labels_of(seconds_set(star_asym, star_asym.index_of("a")))) == {"b", "d"}
    assert set(cyclic4.labels_of(seconds_set(cyclic4, cyclic4.index_of("a4")))) == {"a3"}
    one = cyclic4.subdomain([0])
    assert seconds_set(one, one.prefs[0].top) == {one.prefs[0].second}
    assert seconds_set(one, cyclic4.index_of("a4")) == frozenset()


def test_rank_matrix_and_tops(cyclic4: Domain) -> None:
    R = cyclic4.rank_matrix
    assert R.shape == (9, 4)
    assert (R.min(axis=1) == 0).all()
    assert list(cyclic4.tops) == [0, 0, 0, 1, 1, 2, 2, 2, 3]
    assert cyclic4.with_peak(2) == [5, 6, 7]
    assert cyclic4.is_minimally_rich()


def test_profile_validation(cyclic4: Domain) -> None:
    Profile((0, 8)).validate(cyclic4)
    with pytest.raises(ValueError):
        Profile((0, 9)).validate(cyclic4)
    with pytest.raises(ValueError):
        Profile(())


def test_universal_domain() -> None:
    u = universal_domain(["a", "b", "c"])
    assert len(u) == 6
    assert u.prefs[0].ranking == (0, 1, 2)
    assert u.prefs[-1].ranking == (2, 1, 0)


# ── budget / parallel ────────────────────────────────────────────────────────

def test_budget_charges_and_raises() -> None:
    b = Budget(limit=10)
    b.charge(7, "stage")
    assert b.remaining == 3
    assert b.fits(3) and not b.fits(4)
    with pytest.raises(BudgetExceeded) as exc:
        b.charge(4, "stage")
    assert exc.value.stage == "stage"
    assert exc.value.spent == 11


def test_budget_charges_from_many_threads() -> None:
    b = Budget(limit=10_000)
    run_chunks(lambda chunk: [b.charge(1, "stage") for _ in chunk], split(list(range(4000)), 8), n_jobs=4)
    assert b.spent == 4000


def test_budget_must_be_positive() -> None:
    with pytest.raises(ValueError):
        Budget(limit=0)
    assert ensure_budget(5).limit == 5
    b = Budget(limit=3)
    assert ensure_budget(b) is b


def test_split_is_ordered_and_complete() -> None:
    items = list(range(10))
    chunks = split(items, 3)
    assert [x for c in chunks for x in c] == items
    assert [len(c) for c in chunks] == [4, 3, 3]
    assert split([], 4) == []
    assert split([1, 2], 5) == [[1], [2]]


def test_run_chunks_same_order_for_any_worker_count() -> None:
    chunks = split(list(range(20)), 5)
    seq = run_chunks(sum, chunks, n_jobs=1)
    par = run_chunks(sum, chunks, n_jobs=3)
    assert seq == par == [sum(c) for c in chunks]
