"""Recognition of catalog families.

This package contains:
- decomposition: splitting a nilradical into null-filiform ideals
- canonical: basis changes onto the canonical tables
- classify: fingerprints, classification, catalog isomorphism
- fuzz: scramble-and-classify round trips
"""

from leibniz_nf.recognition.canonical import (
    canonicalize_blocks,
    canonicalize_null_filiform,
    canonicalize_solvable_nf,
)
from leibniz_nf.recognition.classify import classify, fingerprint, isomorphic_in_catalog
from leibniz_nf.recognition.decomposition import decompose_nilradical
from leibniz_nf.recognition.fuzz import fuzz_roundtrip, random_unimodular

__all__ = [
    "canonicalize_blocks",
    "canonicalize_null_filiform",
    "canonicalize_solvable_nf",
    "classify",
    "decompose_nilradical",
    "fingerprint",
    "fuzz_roundtrip",
    "isomorphic_in_catalog",
    "random_unimodular",
]
