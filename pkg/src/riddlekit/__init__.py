"""Analogy-based riddle generation, validation, and solver evaluation."""

from .errors import RiddleKitError
from .generator import Genre, GeneratorConfig, Riddle, generate_batch, generate_riddle
from .knowledge import KnowledgeBase, Triple, ingest, load_kb
from .semantics import AttributeCategory, build_profile
from .validator import answer_set, check_guess

__version__ = "0.1.0"

__all__ = [
    "RiddleKitError",
    "Genre",
    "GeneratorConfig",
    "Riddle",
    "generate_batch",
    "generate_riddle",
    "KnowledgeBase",
    "Triple",
    "ingest",
    "load_kb",
    "AttributeCategory",
    "build_profile",
    "answer_set",
    "check_guess",
    "__version__",
]
