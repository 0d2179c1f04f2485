from __future__ import annotations

import numpy as np
import pytest

import enumeration.search as search
from conftest import rule_path
from enumeration.decompose import cross_check, decompose_rule, tree_bank
from enumeration.micro import enum_all_sp_rules_micro
from enumeration.search import enum_topsonly_sp_rules, fill_order, weak_dominance
from membership.families import FamilyKind
from membership.generators import gen_family
from prefcore.budget import Budget
from prefcore.errors import BudgetExceeded
from prefcore.preferences import Domain, universal_domain
from rules.axioms import check_axioms
from rules.rulefile import load_rule
from rules.scf import make_dictatorship, make_peak_table
from trees.enumeration import count_trees
from trees.graph import Tree, line_tree

DICTATOR_0 = tuple(tuple(u for _ in range(4)) for u in range(4))
DICTATOR_1 = tuple(tuple(range(4)) for _ in range(4))

# voter 0 decides inside the edge a1-a2, otherwise the median with the near threshold
EDGE_HYBRID_L4 = ((0, 0, 0, 0), (1, 1, 1, 1), (1, 1, 2, 2), (1, 1, 2, 3))


def _ssp_line4(threshold: int) -> Domain:
    return gen_family(FamilyKind("SSP", line_tree(range(4)), threshold=threshold))


# ── search helpers ───────────────────────────────────────────────────────────

def test_weak_dominance(cyclic4: Domain) -> None:
    W = weak_dominance(cyclic4)
    assert W.shape == (4, 4, 4)
    for u in range(4):
        assert W[u, u].all()
    a3, a4 = cyclic4.index_of("a3"), cyclic4.index_of("a4")
    # the single a4-peaked preference puts a3 second
    assert W[a4, a3, cyclic4.index_of("a2")]
    # a1-peaked preferences disagree on a3 vs a4
    assert not W[cyclic4.index_of("a1"), a3, a4] and not W[cyclic4.index_of("a1"), a4, a3]


def test_fill_order_starts_with_adjacent_peaks(cyclic4: Domain) -> None:
    order = fill_order(cyclic4)
    assert len(order) == 12
    assert order[:8] == [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1), (2, 3), (3, 2)]


# ── tops-only enumeration ────────────────────────────────────────────────────

def test_cyclic4_rules_are_unanimous_and_strategy_proof(cyclic4: Domain) -> None:
    rules = enum_topsonly_sp_rules(cyclic4)
    tables = [f.body.table for f in rules]
    assert DICTATOR_0 in tables and DICTATOR_1 in tables
    assert tables == sorted(tables)
    assert [f.name for f in rules] == [f"rule_{k}" for k in range(len(rules))]
    for f in rules:
        results = check_axioms(f, cyclic4, ["unanimity", "sp", "topsonly"])
        assert all(r.holds for r in results.values())


def test_single_peaked_line_admits_every_projection() -> None:
    t = line_tree(range(4))
    d = gen_family(FamilyKind("SP", t))
    tables = {f.body.table for f in enum_topsonly_sp_rules(d)}
    for x in range(4):
        proj = tuple(tuple(int(t.median(u, v, x)) for v in range(4)) for u in range(4))
        assert proj in tables


def test_enumeration_ignores_worker_count(cyclic4: Domain) -> None:
    serial = [f.body.table for f in enum_topsonly_sp_rules(cyclic4, n_jobs=1)]
    threaded = [f.body.table for f in enum_topsonly_sp_rules(cyclic4, n_jobs=8)]
    assert serial == threaded


def test_enumeration_caps(ssp6: Domain, cyclic4: Domain) -> None:
    with pytest.raises(ValueError, match="enumeration cap"):
        enum_topsonly_sp_rules(cyclic4, max_m=3)
    with pytest.raises(ValueError, match="enumeration cap"):
        enum_topsonly_sp_rules(ssp6, max_domain=5)
    with pytest.raises(BudgetExceeded):
        enum_topsonly_sp_rules(cyclic4, budget=1)


def test_universal_three_alternatives_admit_only_dictatorships() -> None:
    tables = [f.body.table for f in enum_topsonly_sp_rules(universal_domain(["a", "b", "c"]))]
    assert tables == [((0, 0, 0), (1, 1, 1), (2, 2, 2)), ((0, 1, 2), (0, 1, 2), (0, 1, 2))]


def test_budget_is_shared_by_every_branch(cyclic4: Domain, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(search, "CHARGE_EVERY", 1)
    full = Budget(limit=10**6)
    enum_topsonly_sp_rules(cyclic4, budget=full, n_jobs=1)
    assert full.spent > 2
    # a branch never gets the whole remaining budget to itself
    half = Budget(limit=full.spent // 2)
    with pytest.raises(BudgetExceeded) as exc:
        enum_topsonly_sp_rules(cyclic4, budget=half, n_jobs=1)
    assert exc.value.stage == "enum_topsonly"
    assert half.spent == half.limit + 1
    shared = Budget(limit=full.spent // 2)
    with pytest.raises(BudgetExceeded):
        enum_topsonly_sp_rules(cyclic4, budget=shared, n_jobs=4)
    assert shared.spent > shared.limit


# ── decomposition ────────────────────────────────────────────────────────────

def test_tree_bank_covers_every_tree() -> None:
    assert len(tree_bank(4)) == count_trees(4)


def test_dictator_table_decomposes_as_dictatorship(cyclic4: Domain) -> None:
    dec = decompose_rule(load_rule(rule_path("dictator_cyclic4"), cyclic4), cyclic4)
    assert dec.tag == "Dictatorship"
    assert dec.matches[0].body == make_dictatorship(0).body
    assert dec.to_dict(cyclic4.labels)["tag"] == "Dictatorship"


def test_projection_table_decomposes_as_projection(cyclic4: Domain, line4: Tree) -> None:
    table = [[int(line4.median(u, v, 1)) for v in range(4)] for u in range(4)]
    dec = decompose_rule(make_peak_table(table), cyclic4)
    assert dec.tag == "Projection"
    assert any(
        g.kind == "Projection" and g.body.tree.edges == line4.edges and g.body.threshold == 1
        for g in dec.matches
    )


def test_hybrid_table_decomposes_as_hybrid(ssp6: Domain, line6: Tree) -> None:
    hybrid = load_rule(rule_path("hybrid_line6"), ssp6)
    table = [[int(hybrid.body.peak_outcome((u, v))) for v in range(6)] for u in range(6)]
    dec = decompose_rule(make_peak_table(table), ssp6)
    assert dec.tag == "HybridRule"
    assert any(g.kind == "HybridRule" and g.body.dictator == 0 for g in dec.matches)


def test_unmatched_table_is_other(cyclic4: Domain) -> None:
    # follows voter 0 except a single cell
    table = [list(row) for row in DICTATOR_0]
    table[0][3] = 3
    assert decompose_rule(make_peak_table(table), cyclic4).tag == "Other"


@pytest.mark.parametrize("voter, table", [
    (0, EDGE_HYBRID_L4),
    (1, tuple(zip(*EDGE_HYBRID_L4))),
])
def test_edge_zone_table_decomposes_as_hybrid(voter: int, table) -> None:
    d = _ssp_line4(1)
    dec = decompose_rule(make_peak_table(table), d)
    assert dec.tag == "HybridRule"
    line = line_tree(range(4))
    assert any(
        g.body.tree.edges == line.edges and (g.body.a, g.body.b) == (0, 1) and g.body.dictator == voter
        for g in dec.matches
    )


def test_decomposition_input_checks(ssp6: Domain, cyclic4: Domain) -> None:
    with pytest.raises(ValueError, match="peak tables"):
        decompose_rule(make_dictatorship(0), cyclic4)
    with pytest.raises(ValueError, match="m="):
        decompose_rule(load_rule(rule_path("dictator_cyclic4"), cyclic4), ssp6)


def test_cyclic4_cross_check(cyclic4: Domain) -> None:
    cc = cross_check(cyclic4)
    assert cc.family == "SH"
    assert cyclic4.labels_of(cc.free_zone) == ["a1", "a2", "a3", "a4"]
    assert cc.never_other
    assert cc.zone_dictatorial
    body = cc.to_dict(cyclic4)
    assert body["rule_count"] == len(cc.rules)
    assert body["never_other"] is True


def test_single_peaked_cross_check() -> None:
    d = gen_family(FamilyKind("SP", line_tree(range(4))))
    cc = cross_check(d)
    assert cc.family == "SSP"
    assert cc.free_zone is None and cc.zone_dictatorial is None
    assert cc.never_other
    assert cc.invariant_are_projections


@pytest.mark.parametrize("threshold", [1, 2])
def test_semi_single_peaked_line_cross_check(threshold: int) -> None:
    d = _ssp_line4(threshold)
    cc = cross_check(d)
    assert cc.family == "SSP"
    assert cc.never_other
    assert cc.invariant_are_projections is True
    assert cc.zone_dictatorial is None
    assert any(r.decomposition.tag == "HybridRule" for r in cc.rules)


@pytest.mark.slow
def test_sh6_cross_check(sh6: Domain) -> None:
    cc = cross_check(sh6)
    assert cc.family == "SH"
    assert cc.never_other
    assert cc.invariant_are_projections is True
    assert cc.zone_dictatorial is True


@pytest.mark.slow
def test_ssp6_cross_check(ssp6: Domain) -> None:
    cc = cross_check(ssp6)
    assert cc.family == "SSP"
    assert cc.never_other
    assert cc.invariant_are_projections


# ── micro enumeration ────────────────────────────────────────────────────────

def test_micro_enumeration_on_two_reversed_preferences(cyclic4: Domain) -> None:
    d = cyclic4.subdomain([0, 8])
    rules = enum_all_sp_rules_micro(d, n=2)
    assert len(rules) == 16
    assert rules[0].name == "micro_0"
    flat = [tuple(f.body.outcomes.ravel()) for f in rules]
    assert flat == sorted(flat)
    for f in rules:
        assert f.body.outcomes[0, 0] == d.prefs[0].top
        assert f.body.outcomes[1, 1] == d.prefs[1].top
        results = check_axioms(f, d, ["unanimity", "sp"])
        assert all(r.holds for r in results.values())


def test_micro_single_voter_picks_the_peak(cyclic4: Domain) -> None:
    rules = enum_all_sp_rules_micro(cyclic4, n=1)
    assert len(rules) == 1
    assert np.array_equal(rules[0].body.outcomes, cyclic4.tops)


def test_micro_limits(cyclic4: Domain) -> None:
    with pytest.raises(ValueError, match="micro cap"):
        enum_all_sp_rules_micro(cyclic4, n=3, cap=100)
    with pytest.raises(ValueError):
        enum_all_sp_rules_micro(cyclic4, n=0)
    budget = Budget(limit=3)
    with pytest.raises(BudgetExceeded):
        enum_all_sp_rules_micro(cyclic4.subdomain([0, 8]), budget=budget)
    assert budget.spent == 4
