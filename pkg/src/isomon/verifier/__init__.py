"""Verification pipelines: Guess-and-Prove, extensions, Tietze steps, the U and V chain."""

from .chain import check_U_equivalences, derive_V_from_U, eliminate_to_C
from .extension import (
    ExtensionSpec,
    build_extension_presentation,
    extension_lemmas,
    dp_extension_spec,
    validate_spec,
)
from .guess_prove import DEFINED, REFUTED, ClosureEntry, GuessProveReport, guess_and_prove, resolve_jobs
from .pipeline import CAPS, chain, extend, full_report, kb_report, prove
from .strata import case_three_targets, check_case_three
from .tietze import (
    T1,
    T2,
    T3,
    T4,
    TietzeStep,
    add_generator,
    add_relation,
    delete_relation,
    eliminate_generator,
    substitute,
    tietze_step,
)

__all__ = [
    "CAPS",
    "DEFINED",
    "REFUTED",
    "T1",
    "T2",
    "T3",
    "T4",
    "ClosureEntry",
    "ExtensionSpec",
    "GuessProveReport",
    "TietzeStep",
    "add_generator",
    "add_relation",
    "build_extension_presentation",
    "case_three_targets",
    "chain",
    "check_U_equivalences",
    "check_case_three",
    "delete_relation",
    "derive_V_from_U",
    "eliminate_generator",
    "eliminate_to_C",
    "extend",
    "extension_lemmas",
    "full_report",
    "guess_and_prove",
    "kb_report",
    "dp_extension_spec",
    "prove",
    "resolve_jobs",
    "substitute",
    "tietze_step",
    "validate_spec",
]
