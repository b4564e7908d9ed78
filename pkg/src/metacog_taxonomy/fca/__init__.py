"""Formal concept analysis over scenario/attribute contexts."""
from .concepts import FormalConcept, all_concepts, next_closure
from .context import (
    TIER_ATTRIBUTES,
    DuplicateLabel,
    FormalContext,
    UnknownAttribute,
    build_context,
    default_schema,
)
from .implications import Implication, closure_under, entails, implication_basis, verify_implication
from .io import (
    CxtFormatError,
    context_from_json,
    context_to_json,
    from_csv,
    from_cxt,
    lattice_to_dot,
    lattice_to_json,
    to_csv,
    to_cxt,
)
from .lattice import ConceptLattice, IncompleteConceptSet, build_lattice

__all__ = [
    "FormalContext", "FormalConcept", "ConceptLattice", "Implication",
    "build_context", "default_schema", "all_concepts", "next_closure", "build_lattice",
    "implication_basis", "verify_implication", "closure_under", "entails",
    "to_cxt", "from_cxt", "to_csv", "from_csv", "context_to_json", "context_from_json",
    "lattice_to_dot", "lattice_to_json",
    "DuplicateLabel", "UnknownAttribute", "IncompleteConceptSet", "CxtFormatError", "TIER_ATTRIBUTES",
]
