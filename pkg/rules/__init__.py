"""
domainlab rules
===============
Social choice functions and exhaustive axiom verification.

Layers
------
  scf      — rule bodies, make_* constructors, evaluation, outcome tables
  axioms   — unanimity, strategy-proofness, tops-only, anonymity, invariance
  catalog  — hand-built SCFs for the richness counterexample domains
  rulefile — JSON rule specs
"""

from rules.scf import (
    AlmostDictatorship, Dictatorship, FullTable, HybridRule, PeakTable, Pnt, Projection, Scf,
    evaluate, full_table_from, make_almost_dictatorship, make_dictatorship, make_full_table,
    make_hybrid, make_peak_table, make_pnt, make_projection, outcome_table, peak_outcomes,
    project_onto_peaks,
)
from rules.axioms import (
    AXIOMS, AxiomResult,
    check_anonymity, check_axioms, check_invariance, check_strategy_proof, check_tops_only,
    check_unanimity, dictator_on, non_dictatorship_witnesses, reversed_pairs,
)
from rules.catalog import build_catalog_rule, star_exceptions, two_dictators
from rules.rulefile import build_rule, load_rule

__all__ = [
    "AXIOMS", "AlmostDictatorship", "AxiomResult", "Dictatorship", "FullTable", "HybridRule",
    "PeakTable", "Pnt", "Projection", "Scf", "build_catalog_rule", "build_rule",
    "check_anonymity", "check_axioms", "check_invariance", "check_strategy_proof",
    "check_tops_only", "check_unanimity", "dictator_on", "evaluate", "full_table_from",
    "load_rule", "make_almost_dictatorship", "make_dictatorship", "make_full_table",
    "make_hybrid", "make_peak_table", "make_pnt", "make_projection",
    "non_dictatorship_witnesses", "outcome_table", "peak_outcomes", "project_onto_peaks",
    "reversed_pairs", "star_exceptions", "two_dictators",
]
