"""
domainlab membership
====================
Preference families on trees and domain-level certification.

Layers
------
  families   — SP / Hybrid / SSP / SH membership tests, FamilyKind
  generators — full family domains by filtering all m! orders
  certify    — single-peaked / hybrid / semi-single-peaked / semi-hybrid
               domain certificates
"""

from membership.families import (
    FAMILY_TAGS, FamilyKind, Zones,
    is_hybrid_pref, is_sh_pref, is_sp_pref, is_ssp_pref, sh_diversity_condition, zones,
)
from membership.generators import gen_family
from membership.certify import (
    CertificationResult, DomainCertificate,
    certify_all, certify_hybrid_domain, certify_sh_domain, certify_sp_domain, certify_ssp_domain,
)

__all__ = [
    "FAMILY_TAGS", "CertificationResult", "DomainCertificate", "FamilyKind", "Zones",
    "certify_all", "certify_hybrid_domain", "certify_sh_domain", "certify_sp_domain",
    "certify_ssp_domain", "gen_family", "is_hybrid_pref", "is_sh_pref", "is_sp_pref",
    "is_ssp_pref", "sh_diversity_condition", "zones",
]
