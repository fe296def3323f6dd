"""Equivalence of alternating link diagrams by flypes and characteristic squares."""
from .codec import ParseError, parse, serialize
from .engine import Answer, Reason, Verdict, equivalent, equivalent_connected_prime
from .model import Diagram, PreconditionError, StructureError, validate
from .normalize import decompose, remove_nugatory

__all__ = ["Answer", "Diagram", "ParseError", "PreconditionError", "Reason", "StructureError",
           "Verdict", "decompose", "equivalent", "equivalent_connected_prime", "parse",
           "remove_nugatory", "serialize", "validate"]
__version__ = "0.1.0"
