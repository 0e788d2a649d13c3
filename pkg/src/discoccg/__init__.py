# -*- coding: utf-8 -*-
"""discoccg: compile CCG derivations into DisCoCat string diagrams.

Pipeline: serialized derivation -> validated derivation (``ingest``) ->
biclosed term (``biclosed``) -> string diagram (``functor``), with rewriting
(``rewrite``) and a tensor-network oracle (``semantics``) on the diagram side.
"""

from .ccgtypes import Atom, Backward, CcgType, Forward, TypeParseError, parse_type
from .rules import (
    BA, BC, BCX, FA, FC, FCX, Binary, Derivation, Leaf, RuleError, RuleLabel,
    Unary, apply_rule, btr, ftr, gbc, gfc, unary, validate,
)
from .ingest import (
    IngestError, expand_conj, ingest_tree, read_ccgbank, read_derivations,
    read_json, resolve_unary,
)
from .biclosed import BTerm, lower_derivation, rule_term, to_bobject, to_sexpr
from .diagram import (
    Cap, Cup, Diagram, DiagramError, RObject, Swap, Wire, WordBox,
    diagram_from_json, diagram_to_json, f_object, well_formed,
)
from .functor import LoweringContext, lower, verify_functor_laws
from .rewrite import RewriteStep, diagrams_equal, normalize, planarize
from .semantics import DimAssignment, Lexicon, Tensor, evaluate, semantically_equal
from .render import render_svg, render_tikz

__version__ = "0.1.0"

__all__ = [
    "Atom", "Backward", "CcgType", "Forward", "TypeParseError", "parse_type",
    "BA", "BC", "BCX", "FA", "FC", "FCX", "Binary", "Derivation", "Leaf",
    "RuleError", "RuleLabel", "Unary", "apply_rule", "btr", "ftr", "gbc",
    "gfc", "unary", "validate",
    "IngestError", "expand_conj", "ingest_tree", "read_ccgbank",
    "read_derivations", "read_json", "resolve_unary",
    "BTerm", "lower_derivation", "rule_term", "to_bobject", "to_sexpr",
    "Cap", "Cup", "Diagram", "DiagramError", "RObject", "Swap", "Wire",
    "WordBox", "diagram_from_json", "diagram_to_json", "f_object",
    "well_formed",
    "LoweringContext", "lower", "verify_functor_laws",
    "RewriteStep", "diagrams_equal", "normalize", "planarize",
    "DimAssignment", "Lexicon", "Tensor", "evaluate", "semantically_equal",
    "render_svg", "render_tikz",
]
