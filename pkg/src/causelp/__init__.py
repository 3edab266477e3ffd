"""causelp: a compiler and semantic laboratory for first-order
nonmonotonic causal theories.

The pipeline: parse a `.ct` theory file, normalize its rules (implication-
free bodies, C/L/S/D classification, explainable-head rewriting), translate
into a logic program with shadow ("hat") predicates and completeness
constraints, ground over the finite universe, and enumerate causal or
stable models by brute force.  The two enumerators double as independent
oracles for machine-checking the soundness of the translation.
"""

from .ground import ground_program, ground_theory
from .normalize import normalize_rule, normalize_theory
from .parser import ParseError, TheoryDocument, parse_formula, parse_theory
from .semantics import (causal_models, check_extensional_simulation,
                        check_soundness, completion_models, evaluate,
                        literal_completion, minimal_models, stable_models)
from .syntax import (Atom, CausalRule, CausalTheory, GroundAtom,
                     Interpretation, ModelSet, Program, ProgramRule,
                     RuleKind, Signature, TheoryError)
from .translate import simplify, translate

__version__ = "0.1.0"

__all__ = [
    "Atom", "CausalRule", "CausalTheory", "GroundAtom", "Interpretation",
    "ModelSet", "ParseError", "Program", "ProgramRule", "RuleKind",
    "Signature", "TheoryDocument", "TheoryError", "causal_models",
    "check_extensional_simulation", "check_soundness", "completion_models",
    "evaluate", "ground_program", "ground_theory", "literal_completion",
    "minimal_models", "normalize_rule", "normalize_theory", "parse_formula",
    "parse_theory", "simplify", "stable_models", "translate",
]
