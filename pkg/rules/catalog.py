"""
Hand-built SCFs for the richness counterexample domains, tabulated as
FullTables over the domain they are defined on.

- two_dictators(d, block)
    f(P_i, P_j) = i's best in `block` when j peaks inside `block`, else j's
    peak. Strategy-proof on a domain whose adjacency graph splits into
    `block` and its complement; voter 0 dictates on the block, voter 1 off it.

- star_exceptions(d, center, exceptions)
    Anonymous, unanimous, not tops-only. Each exception pairs a preference
    with a peak and an outcome: whenever one voter reports the preference
    and the other peaks at that peak, the outcome is forced. Otherwise the
    projection of `center` onto the path between the two peaks on the star.
"""

from __future__ import annotations

from typing import Sequence

from prefcore.preferences import Domain, Preference, best_in
from rules.scf import Scf, full_table_from
from trees.graph import Tree, star_tree


def two_dictators(d: Domain, block: Sequence[str]) -> Scf:
    inside = frozenset(d.index_of(lab) for lab in block)

    def rule(prefs: tuple[Preference, ...]) -> int:
        p_i, p_j = prefs
        if p_j.top in inside:
            return best_in(p_i, inside)
        return p_j.top

    return full_table_from(d, 2, rule, name=f"two_dictators_{d.name}")


def star_exceptions(
    d: Domain,
    center: str,
    exceptions: Sequence[tuple[Sequence[str], str, str]],
) -> Scf:
    """exceptions: (preference labels, partner peak label, forced outcome label)."""
    c = d.index_of(center)
    t: Tree = star_tree(d.m, c)
    forced = []
    for ranking, peak, outcome in exceptions:
        p = Preference(tuple(d.index_of(lab) for lab in ranking))
        forced.append((d.index_of_pref(p), d.index_of(peak), d.index_of(outcome)))
    index = {p.ranking: k for k, p in enumerate(d.prefs)}

    def rule(prefs: tuple[Preference, ...]) -> int:
        k_i, k_j = index[prefs[0].ranking], index[prefs[1].ranking]
        for k, peak, outcome in forced:
            if (k_i == k and prefs[1].top == peak) or (k_j == k and prefs[0].top == peak):
                return outcome
        return t.median(prefs[0].top, prefs[1].top, c)

    return full_table_from(d, 2, rule, name=f"star_exceptions_{d.name}")


# Parameters matching the bundled datasets/domains files.
FIRST_BLOCK = ("a", "b", "c")
STAR_CENTER = "b"
STAR_EXCEPTIONS = (
    (("a", "d", "b", "c"), "d", "d"),
    (("c", "a", "b", "d"), "a", "a"),
    (("d", "c", "b", "a"), "c", "c"),
)


def build_catalog_rule(name: str, d: Domain) -> Scf:
    """Factory for the rule-spec 'catalog' entry. name: 'two_blocks' | 'star_exceptions'."""
    if name == "two_blocks":
        return two_dictators(d, FIRST_BLOCK)
    if name == "star_exceptions":
        return star_exceptions(d, STAR_CENTER, STAR_EXCEPTIONS)
    raise ValueError(f"unknown catalog rule '{name}'; expected 'two_blocks' or 'star_exceptions'")
