from __future__ import annotations

import pytest

from classify.pipeline import classify
from classify.spots import CriticalSpot, build_verified_pnt, find_critical_spots, spot_at, verify_prop1
from membership.certify import DomainCertificate, certify_sh_domain, certify_ssp_domain
from membership.families import FamilyKind
from membership.generators import gen_family
from prefcore.errors import DomainError, VerificationFailed
from prefcore.io import parse_domain
from prefcore.preferences import Domain, universal_domain
from trees.graph import Tree, line_tree


def _edges(d: Domain, spots: list[CriticalSpot]) -> list[tuple[str, str]]:
    return [(d.label(s.x), d.label(s.y)) for s in spots]


# ── critical spots ───────────────────────────────────────────────────────────

def test_ssp6_spots_on_its_adjacency_tree(ssp6: Domain, ssp6_tree: Tree) -> None:
    spots = find_critical_spots(ssp6, ssp6_tree)
    assert _edges(ssp6, spots) == [("a3", "a4"), ("a5", "a4")]
    first = spots[0]
    assert first.witnesses == (1, 0)
    assert first.to_dict(ssp6) == {"edge": ["a3", "a4"], "witnesses": [1, 0], "peak": "a1"}
    assert spots[1].witnesses == (0, 1)


def test_spot_witnesses_disagree_on_the_edge(ssp6: Domain, ssp6_tree: Tree) -> None:
    for s in find_critical_spots(ssp6, ssp6_tree):
        p, q = (ssp6.prefs[k] for k in s.witnesses)
        assert p.top == q.top
        assert p.prefers(s.y, s.x) and q.prefers(s.x, s.y)


def test_reverse_orientation_is_not_a_spot(ssp6: Domain, ssp6_tree: Tree) -> None:
    assert spot_at(ssp6, ssp6_tree, ssp6.index_of("a4"), ssp6.index_of("a3")) is None


def test_cyclic4_spot(cyclic4: Domain, line4: Tree) -> None:
    spots = find_critical_spots(cyclic4, line4)
    assert _edges(cyclic4, spots) == [("a4", "a3")]
    assert spots[0].witnesses == (0, 1)


def test_sh6_has_no_spot_on_the_line(sh6: Domain, line6: Tree) -> None:
    assert find_critical_spots(sh6, line6) == []


def test_single_peaked_domain_has_no_spot() -> None:
    d = gen_family(FamilyKind("SP", line_tree(range(4))))
    assert find_critical_spots(d, line_tree(range(4))) == []


def test_spot_preconditions(ssp6: Domain, cyclic4: Domain, ssp6_tree: Tree) -> None:
    with pytest.raises(DomainError, match="minimally rich"):
        find_critical_spots(ssp6.subdomain([0, 11]), ssp6_tree)
    with pytest.raises(DomainError, match="vertices"):
        find_critical_spots(cyclic4, ssp6_tree)


def test_spot_criterion_on_certificates(ssp6: Domain, sh6: Domain, cyclic4: Domain) -> None:
    assert verify_prop1(ssp6, certify_ssp_domain(ssp6).certificate)
    assert verify_prop1(sh6, certify_sh_domain(sh6).certificate)
    assert verify_prop1(cyclic4, certify_sh_domain(cyclic4).certificate)


def test_spot_criterion_rejects_hybrid_certificates(sh6: Domain, line6: Tree) -> None:
    cert = DomainCertificate(FamilyKind("Hybrid", line6, thresholds=(1, 4)))
    with pytest.raises(ValueError, match="SP, SSP and SH"):
        verify_prop1(sh6, cert)


def test_verified_pnt_on_a_spot(ssp6: Domain, ssp6_tree: Tree) -> None:
    spot = find_critical_spots(ssp6, ssp6_tree)[0]
    f, results = build_verified_pnt(ssp6, spot)
    assert f.kind == "Pnt"
    assert f.describe(ssp6.labels)["edge"] == ["a3", "a4"]
    assert results["unanimity"].holds and results["sp"].holds
    assert not results["topsonly"].holds


def test_verified_pnt_with_swapped_voters(cyclic4: Domain, line4: Tree) -> None:
    spot = find_critical_spots(cyclic4, line4)[0]
    f, results = build_verified_pnt(cyclic4, spot, i=1, j=0)
    assert f.body.i == 1 and f.body.j == 0
    assert results["sp"].holds


def test_semi_single_peaked_line_spot_and_three_voter_pnt() -> None:
    t = line_tree(range(4))
    d = gen_family(FamilyKind("SSP", t, threshold=2))
    spots = find_critical_spots(d, t)
    assert _edges(d, spots) == [("a1", "a2")]
    f, results = build_verified_pnt(d, spots[0], n=3)
    assert f.n == 3
    assert results["unanimity"].holds and results["sp"].holds
    assert not results["topsonly"].holds


def test_pnt_on_a_single_peaked_domain_fails_verification() -> None:
    t = line_tree(range(4))
    d = gen_family(FamilyKind("SP", t))
    with pytest.raises(VerificationFailed):
        build_verified_pnt(d, CriticalSpot(t, 1, 2, (0, 0)))


# ── classification verdicts ──────────────────────────────────────────────────

def test_ssp6_is_semi_single_peaked(ssp6: Domain, ssp6_tree: Tree) -> None:
    v = classify(ssp6)
    assert v.taxonomy == "SemiSinglePeaked"
    assert v.exit_code == 0
    assert ssp6.labels_of(v.usp) == ["a1", "a2"]
    assert v.certificate.kind.tree.edges == ssp6_tree.edges
    assert ssp6.label(v.certificate.kind.threshold) == "a2"
    proj = v.rule("projection")
    assert all(r.holds for r in proj.results.values())
    assert v.admits_anonymous_rule is True
    assert v.tops_only_domain is False
    assert v.rule("pnt") is not None
    assert v.degenerate is None


def test_almost_dictatorship_is_built_for_every_non_dictatorial_domain(ssp6: Domain) -> None:
    built = classify(ssp6).rule("almost_dictatorship")
    assert built.scf.kind == "AlmostDictatorship"
    assert built.results["unanimity"].holds and built.results["sp"].holds
    assert all(w is not None for w in built.non_dictatorship.values())


def test_sh6_is_semi_hybrid(sh6: Domain, line6: Tree) -> None:
    v = classify(sh6)
    assert v.taxonomy == "SemiHybrid"
    assert v.degenerate is False
    assert v.certificate.kind.tree.edges == line6.edges
    hybrid = v.rule("hybrid")
    assert hybrid.results["topsonly"].holds and hybrid.results["sp"].holds
    assert not hybrid.results["inv"].holds and not hybrid.results["anon"].holds
    assert hybrid.dictator_on_zone == 0
    assert v.admits_anonymous_rule is False
    assert v.critical_spots == []
    assert v.tops_only_domain is None
    assert "no critical spot on the certificate tree; tops-only domain status not decided" in v.notes
    assert "dictatorship verified on the free zone only, not on a larger superset" in v.notes


def test_cyclic4_is_degenerate_semi_hybrid(cyclic4: Domain) -> None:
    v = classify(cyclic4)
    assert v.taxonomy == "SemiHybrid"
    assert v.degenerate is True
    assert cyclic4.labels_of(v.usp) == ["a4", "a3"]
    assert v.notes[0] == "adjacency graph is not a tree: clause (iii) holds vacuously"
    assert _edges(cyclic4, v.critical_spots) == [("a4", "a3")]
    assert v.tops_only_domain is False
    almost = v.rule("almost_dictatorship")
    assert not almost.results["topsonly"].holds


def test_richness_failures(two_blocks: Domain, star_asym: Domain) -> None:
    v2 = classify(two_blocks)
    assert v2.taxonomy == "NotUnidimensional"
    assert v2.reason == "fails path-connectedness, diversity"
    assert list(v2.advisory) == ["SP", "Hybrid", "SSP", "SH"]
    v3 = classify(star_asym)
    assert v3.taxonomy == "NotUnidimensional"
    assert v3.reason == "fails leaf symmetry"
    assert v3.exit_code == 0


def test_universal_domain_is_dictatorial() -> None:
    v = classify(universal_domain(["a", "b", "c"]))
    assert v.taxonomy == "Dictatorial"
    assert v.usp is None
    assert v.admits_anonymous_rule is False
    assert v.constructed_rules == []


def test_budget_exhaustion_gives_inconclusive(ssp6: Domain) -> None:
    v = classify(ssp6, budget=100)
    assert v.taxonomy == "Inconclusive"
    assert v.exit_code == 2
    assert v.certificate is None
    assert v.reason.startswith("budget exhausted")


def test_classification_needs_three_alternatives() -> None:
    d = parse_domain("alternatives: a b\npref: a b\npref: b a\n")
    with pytest.raises(ValueError, match="m ≥ 3"):
        classify(d)


def test_verdict_is_stable_across_worker_counts(cyclic4: Domain) -> None:
    assert classify(cyclic4, n_jobs=1).to_dict(cyclic4) == classify(cyclic4, n_jobs=3).to_dict(cyclic4)


def test_semi_hybrid_verdict_is_stable_across_worker_counts(sh6: Domain) -> None:
    assert classify(sh6, n_jobs=1).to_dict(sh6) == classify(sh6, n_jobs=8).to_dict(sh6)


def test_verdict_dict(ssp6: Domain) -> None:
    body = classify(ssp6).to_dict(ssp6)
    assert body["taxonomy"] == "SemiSinglePeaked"
    assert body["usp"] == ["a1", "a2"]
    assert body["certificate"]["threshold"] == "a2"
    assert [r["role"] for r in body["constructed_rules"]] == ["almost_dictatorship", "projection", "pnt"]
    assert body["critical_spots"][0]["edge"] == ["a3", "a4"]
    assert body["budget_spent"] > 0
