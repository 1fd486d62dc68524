"""Domain error hierarchy shared by every pipeline stage.

All of these map to CLI exit status 1 and HTTP 4xx responses; anything
else escaping the library is a bug.
"""


class RiddleKitError(Exception):
    """Base class for all domain errors."""


class MalformedRecord(RiddleKitError):
    """Triple record with wrong field count, bad syntax, or an empty field."""


class UnknownRelation(RiddleKitError):
    """Relation token outside the closed vocabulary."""


class EmptyKnowledgeBase(RiddleKitError):
    """Ingestion produced zero valid triples."""


class UnknownConcept(RiddleKitError):
    """Concept not present in the knowledge base."""


class AttributeAbsent(RiddleKitError):
    """No concept in the knowledge base holds the attribute."""


class EmptyProfile(RiddleKitError):
    """Concept has no attributes usable for clue selection."""


class MissingTemplate(RiddleKitError):
    """Lexicon has no usable template for a (genre, category) pair."""


class NoClues(RiddleKitError):
    """Riddle carries no clues, so there is nothing to satisfy."""


class EmptyGuess(RiddleKitError):
    """Guess or solver answer normalizes to the empty string."""


class EmptyInput(RiddleKitError):
    """Statistics requested over an empty collection."""


class SolverUnavailable(RiddleKitError):
    """Live solver backend could not be reached.

    ``partial_audit`` holds the prompt/response records collected before
    the failure so a partial run can still be persisted.
    """

    def __init__(self, message: str, partial_audit: list | None = None):
        super().__init__(message)
        self.partial_audit = partial_audit or []


class FixtureMismatch(RiddleKitError):
    """Recorded fixture has no response for a prompt the harness built."""


class CorruptRecord(RiddleKitError):
    """Stored riddle record failed its integrity digest check."""
