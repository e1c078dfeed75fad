"""String rewriting: rule application, bounded derivation search, completion."""

from .automaton import INFINITE, FactorAutomaton
from .completion import (
    CompletedSystem,
    CompletionLimits,
    contains_relations,
    count_irreducible,
    default_precedence,
    irreducible_words,
    kb_complete,
    parse_precedence,
    system_from_rules,
)
from .rules import (
    AS_WRITTEN,
    REVERSED,
    Codec,
    Derivation,
    ReplayError,
    RewriteRule,
    Step,
    apply_at,
    max_length_of,
    replay,
)
from .search import (
    Lemma,
    Searcher,
    SearchLimits,
    SoundnessError,
    default_slack,
    derive,
    fold_normalize,
    normalize_to_form,
)

__all__ = [
    "AS_WRITTEN",
    "INFINITE",
    "REVERSED",
    "Codec",
    "CompletedSystem",
    "CompletionLimits",
    "Derivation",
    "FactorAutomaton",
    "Lemma",
    "ReplayError",
    "RewriteRule",
    "SearchLimits",
    "Searcher",
    "SoundnessError",
    "Step",
    "apply_at",
    "contains_relations",
    "count_irreducible",
    "default_precedence",
    "default_slack",
    "derive",
    "fold_normalize",
    "irreducible_words",
    "kb_complete",
    "max_length_of",
    "normalize_to_form",
    "parse_precedence",
    "replay",
    "system_from_rules",
]
