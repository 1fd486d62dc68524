"""Categorized semantic attributes and distinctiveness scoring.

Raw triples become attributes grouped into four categories (functional,
perceptual, relational, behavioural). Downstream, descriptive riddles lean
on the first two groups while figurative genres draw on the last two, so
the relation-to-category table below is the hinge of genre control.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import AttributeAbsent, UnknownConcept
from .knowledge import ConceptId, KnowledgeBase, concepts_with


class AttributeCategory(str, Enum):
    FUNCTIONAL = "functional"
    PERCEPTUAL = "perceptual"
    RELATIONAL = "relational"
    BEHAVIOURAL = "behavioural"


CATEGORY_ORDER: tuple[AttributeCategory, ...] = (
    AttributeCategory.FUNCTIONAL,
    AttributeCategory.PERCEPTUAL,
    AttributeCategory.RELATIONAL,
    AttributeCategory.BEHAVIOURAL,
)

# Total over the closed relation vocabulary; see RELATIONS in knowledge.
_CATEGORY_BY_RELATION: dict[str, AttributeCategory] = {
    "used-for": AttributeCategory.FUNCTIONAL,
    "requires": AttributeCategory.FUNCTIONAL,
    "has-property": AttributeCategory.PERCEPTUAL,
    "made-of": AttributeCategory.PERCEPTUAL,
    "is-a": AttributeCategory.RELATIONAL,
    "part-of": AttributeCategory.RELATIONAL,
    "has-part": AttributeCategory.RELATIONAL,
    "located-at": AttributeCategory.RELATIONAL,
    "capable-of": AttributeCategory.BEHAVIOURAL,
    "does": AttributeCategory.BEHAVIOURAL,
    "becomes": AttributeCategory.BEHAVIOURAL,
}


def categorize(relation: str) -> AttributeCategory:
    """Map a vocabulary relation to its attribute category."""
    return _CATEGORY_BY_RELATION[relation]


@dataclass(frozen=True, order=True)
class SemanticAttribute:
    """A (relation, property) pair tagged with its category."""

    relation: str
    property: str

    @property
    def category(self) -> AttributeCategory:
        return categorize(self.relation)


@dataclass(frozen=True)
class SemanticProfile:
    """A concept's attributes partitioned into the four categories."""

    concept: ConceptId
    by_category: dict[AttributeCategory, frozenset[SemanticAttribute]]

    def attributes(self) -> list[SemanticAttribute]:
        """All attributes, in (category order, relation, property) order."""
        out: list[SemanticAttribute] = []
        for cat in CATEGORY_ORDER:
            out.extend(sorted(self.by_category[cat]))
        return out

    def __len__(self) -> int:
        return sum(len(attrs) for attrs in self.by_category.values())


def build_profile(kb: KnowledgeBase, concept: ConceptId) -> SemanticProfile:
    """Partition a concept's triples into the four category sets."""
    if concept not in kb:
        raise UnknownConcept(f"unknown concept {concept!r}")
    by_category: dict[AttributeCategory, set[SemanticAttribute]] = {
        cat: set() for cat in CATEGORY_ORDER
    }
    for relation, prop in kb.forward[concept]:
        attr = SemanticAttribute(relation, prop)
        by_category[attr.category].add(attr)
    return SemanticProfile(
        concept=concept,
        by_category={cat: frozenset(attrs) for cat, attrs in by_category.items()},
    )


def holder_count(kb: KnowledgeBase, attribute: SemanticAttribute) -> int:
    """How many concepts hold the exact (relation, property) pair."""
    return len(concepts_with(kb, attribute.relation, attribute.property))


def distinctiveness(kb: KnowledgeBase, attribute: SemanticAttribute) -> Fraction:
    """Reciprocal holder count: 1 means the attribute pins one concept."""
    holders = holder_count(kb, attribute)
    if holders == 0:
        raise AttributeAbsent(
            f"no concept holds ({attribute.relation}, {attribute.property})"
        )
    return Fraction(1, holders)
