"""Partial-isometry monoids DP_n and ODP_n: enumeration, presentations, normal forms, proofs."""

from .kernels import BACKEND
from .partial_injection import PartialInjection, compose, identity, inverse, make, rank
from .report import TOOL_VERSION as __version__

__all__ = ["BACKEND", "PartialInjection", "__version__", "compose", "identity", "inverse", "make", "rank"]
