"""Genre-stylized riddle generation.

Purely creative stage: picks attributes by genre-weighted sampling, turns
each into a machine-checkable predicate plus a templated surface line, and
never judges the result (answer enumeration lives in the validator).

Randomness policy: every riddle draws from its own ``random.Random`` (the
Mersenne Twister, stable across platforms and Python >= 3.2), seeded either
directly or, in batches, by a SHA-256-derived per-(concept, genre) seed.
Base seeds map to identical riddles on every machine.
"""

from __future__ import annotations

import hashlib
import json
import random
import re
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from typing import Iterable, Mapping, Sequence

from .errors import EmptyProfile, MissingTemplate, UnknownConcept
from .knowledge import ConceptId, KnowledgeBase
from .semantics import (
    CATEGORY_ORDER,
    AttributeCategory,
    SemanticAttribute,
    SemanticProfile,
    build_profile,
    holder_count,
)


class Genre(str, Enum):
    DESCRIPTIVE = "descriptive"
    METAPHORICAL = "metaphorical"
    POETIC = "poetic"
    HUMOROUS = "humorous"
    SITUATIONAL = "situational"


GENRE_ORDER: tuple[Genre, ...] = (
    Genre.DESCRIPTIVE,
    Genre.METAPHORICAL,
    Genre.POETIC,
    Genre.HUMOROUS,
    Genre.SITUATIONAL,
)

EXACT = "exact"
RELAXED = "relaxed"

# Surface phrasing for each relation, used by the {relation-phrase} slot.
RELATION_PHRASES: dict[str, str] = {
    "is-a": "a kind of",
    "part-of": "a part of",
    "has-part": "equipped with",
    "located-at": "found near",
    "used-for": "used for",
    "requires": "in need of",
    "has-property": "known for being",
    "made-of": "made of",
    "capable-of": "capable of",
    "does": "forever",
    "becomes": "destined to become",
}


@dataclass(frozen=True)
class AttributePredicate:
    """Machine-checkable clue condition.

    Exact mode requires the holder to carry the source (relation, property)
    pair; relaxed mode accepts the property under any relation, which is
    what gives figurative genres their wider answer sets.
    """

    mode: str
    property: str
    relation: str | None = None

    def __post_init__(self):
        if self.mode == EXACT and not self.relation:
            raise ValueError("exact predicate needs a relation")
        if self.mode == RELAXED and self.relation is not None:
            raise ValueError("relaxed predicate carries no relation")

    @classmethod
    def exact(cls, relation: str, prop: str) -> "AttributePredicate":
        return cls(mode=EXACT, property=prop, relation=relation)

    @classmethod
    def relaxed(cls, prop: str) -> "AttributePredicate":
        return cls(mode=RELAXED, property=prop)


@dataclass(frozen=True)
class Clue:
    surface: str
    predicate: AttributePredicate
    source: SemanticAttribute


@dataclass(frozen=True)
class Riddle:
    id: str
    intended: ConceptId
    genre: Genre
    clues: tuple[Clue, ...]
    seed: int


class StyleLexicon:
    """Template bank keyed by (genre, category).

    Every entry is non-empty and every template carries the mandatory
    ``{property}`` slot; ``{relation-phrase}`` is optional.
    """

    def __init__(self, templates: Mapping[tuple[Genre, AttributeCategory], Sequence[str]]):
        self._templates: dict[tuple[Genre, AttributeCategory], tuple[str, ...]] = {}
        for key, entries in templates.items():
            entries = tuple(entries)
            if not entries:
                raise ValueError(f"no templates for {key}")
            for template in entries:
                if "{property}" not in template:
                    raise ValueError(f"template missing {{property}} slot: {template!r}")
            self._templates[key] = entries

    def templates_for(self, genre: Genre, category: AttributeCategory) -> tuple[str, ...]:
        try:
            return self._templates[(genre, category)]
        except KeyError:
            raise MissingTemplate(f"no templates for ({genre.value}, {category.value})")

    @classmethod
    def from_mapping(cls, raw: Mapping[str, Mapping[str, Sequence[str]]]) -> "StyleLexicon":
        templates = {
            (Genre(genre), AttributeCategory(category)): entries
            for genre, table in raw.items()
            for category, entries in table.items()
        }
        return cls(templates)

    @classmethod
    def load(cls, path) -> "StyleLexicon":
        with open(path, encoding="utf-8") as fh:
            return cls.from_mapping(json.load(fh))

    @classmethod
    def bundled(cls) -> "StyleLexicon":
        raw = resources.files("riddlekit.data").joinpath("lexicon.json").read_text("utf-8")
        return cls.from_mapping(json.loads(raw))


# Operationalized genre tendencies: descriptive clues foreground function
# and appearance, figurative genres lean on relation and behaviour.
DEFAULT_WEIGHTS: dict[Genre, dict[AttributeCategory, int]] = {
    Genre.DESCRIPTIVE: {
        AttributeCategory.FUNCTIONAL: 4,
        AttributeCategory.PERCEPTUAL: 4,
        AttributeCategory.RELATIONAL: 1,
        AttributeCategory.BEHAVIOURAL: 1,
    },
    Genre.METAPHORICAL: {
        AttributeCategory.FUNCTIONAL: 1,
        AttributeCategory.PERCEPTUAL: 1,
        AttributeCategory.RELATIONAL: 4,
        AttributeCategory.BEHAVIOURAL: 4,
    },
    Genre.POETIC: {
        AttributeCategory.FUNCTIONAL: 1,
        AttributeCategory.PERCEPTUAL: 2,
        AttributeCategory.RELATIONAL: 3,
        AttributeCategory.BEHAVIOURAL: 4,
    },
    Genre.HUMOROUS: {
        AttributeCategory.FUNCTIONAL: 2,
        AttributeCategory.PERCEPTUAL: 3,
        AttributeCategory.RELATIONAL: 2,
        AttributeCategory.BEHAVIOURAL: 3,
    },
    Genre.SITUATIONAL: {
        AttributeCategory.FUNCTIONAL: 3,
        AttributeCategory.PERCEPTUAL: 1,
        AttributeCategory.RELATIONAL: 3,
        AttributeCategory.BEHAVIOURAL: 3,
    },
}


@dataclass(frozen=True)
class GeneratorConfig:
    clue_count: int = 3
    weights: Mapping[Genre, Mapping[AttributeCategory, int]] = None  # type: ignore[assignment]
    lexicon: StyleLexicon = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.clue_count < 1:
            raise ValueError("clue_count must be positive")
        if self.weights is None:
            object.__setattr__(self, "weights", DEFAULT_WEIGHTS)
        if self.lexicon is None:
            object.__setattr__(self, "lexicon", StyleLexicon.bundled())
        for genre in GENRE_ORDER:
            table = self.weights.get(genre, {})
            if sum(table.get(cat, 0) for cat in CATEGORY_ORDER) <= 0:
                raise ValueError(f"weights for {genre.value} must sum to a positive value")


def _mentions(name: str, text: str) -> bool:
    """Word-boundary occurrence of the (possibly multi-word) name."""
    return re.search(rf"\b{re.escape(name)}\b", text) is not None


def select_attributes(
    kb: KnowledgeBase,
    profile: SemanticProfile,
    genre: Genre,
    config: GeneratorConfig,
    rng: random.Random,
) -> list[SemanticAttribute]:
    """Draw distinct attributes by genre-weighted category sampling.

    Attributes whose property would name the concept are excluded up
    front. Each draw picks a non-exhausted category with probability
    proportional to the genre weights, then takes that category's best
    remaining attribute (highest distinctiveness, i.e. fewest holders,
    then lexicographic). Fully deterministic given the rng state.
    """
    queues: dict[AttributeCategory, list[SemanticAttribute]] = {}
    for cat in CATEGORY_ORDER:
        usable = [
            attr
            for attr in sorted(profile.by_category[cat])
            if not _mentions(profile.concept, attr.property)
        ]
        usable.sort(key=lambda a: (holder_count(kb, a), a.relation, a.property))
        if usable:
            queues[cat] = usable
    if not queues:
        raise EmptyProfile(f"no usable attributes for {profile.concept!r}")

    weights = config.weights[genre]
    picked: list[SemanticAttribute] = []
    budget = min(config.clue_count, sum(len(q) for q in queues.values()))
    while len(picked) < budget:
        available = [cat for cat in CATEGORY_ORDER if queues.get(cat)]
        cat_weights = [weights.get(cat, 0) for cat in available]
        total = sum(cat_weights)
        if total <= 0:
            cat_weights = [1] * len(available)  # all-zero corner: fall back to uniform
            total = len(available)
        point = rng.random() * total
        cumulative = 0
        chosen = available[-1]
        for cat, weight in zip(available, cat_weights):
            cumulative += weight
            if point < cumulative:
                chosen = cat
                break
        picked.append(queues[chosen].pop(0))
    return picked


def make_predicate(
    attribute: SemanticAttribute, genre: Genre, position: int
) -> AttributePredicate:
    """Genre rule for clue strictness.

    Descriptive is always exact; metaphorical and poetic always relaxed;
    humorous and situational anchor the opening clue exactly and relax
    the rest.
    """
    if genre is Genre.DESCRIPTIVE:
        exact = True
    elif genre in (Genre.METAPHORICAL, Genre.POETIC):
        exact = False
    else:
        exact = position == 0
    if exact:
        return AttributePredicate.exact(attribute.relation, attribute.property)
    return AttributePredicate.relaxed(attribute.property)


def realize_clue(
    attribute: SemanticAttribute,
    genre: Genre,
    lexicon: StyleLexicon,
    rng: random.Random,
    avoid: str | None = None,
) -> str:
    """Fill one uniformly chosen template with the attribute's slots.

    ``avoid`` drops templates whose own wording would leak a name (the
    generator passes the intended concept).
    """
    candidates = lexicon.templates_for(genre, attribute.category)
    if avoid is not None:
        candidates = tuple(t for t in candidates if not _mentions(avoid, t))
        if not candidates:
            raise MissingTemplate(
                f"all ({genre.value}, {attribute.category.value}) templates mention {avoid!r}"
            )
    template = candidates[rng.randrange(len(candidates))]
    return template.replace("{property}", attribute.property).replace(
        "{relation-phrase}", RELATION_PHRASES[attribute.relation]
    )


def riddle_id_for(concept: ConceptId, genre: Genre, seed: int) -> str:
    digest = hashlib.sha256(f"{concept}|{genre.value}|{seed}".encode("utf-8")).hexdigest()
    return f"r{digest[:12]}"


def generate_riddle(
    kb: KnowledgeBase,
    concept: ConceptId,
    genre: Genre,
    config: GeneratorConfig | None = None,
    seed: int = 0,
) -> Riddle:
    """Compose profile -> attribute selection -> predicates -> surfaces.

    Every clue predicate is satisfied by the intended concept by
    construction, and no clue surface names it.
    """
    config = config or GeneratorConfig()
    if concept not in kb:
        raise UnknownConcept(f"unknown concept {concept!r}")
    profile = build_profile(kb, concept)
    rng = random.Random(seed)
    attributes = select_attributes(kb, profile, genre, config, rng)
    clues = []
    for position, attribute in enumerate(attributes):
        predicate = make_predicate(attribute, genre, position)
        surface = realize_clue(attribute, genre, config.lexicon, rng, avoid=concept)
        clues.append(Clue(surface=surface, predicate=predicate, source=attribute))
    return Riddle(
        id=riddle_id_for(concept, genre, seed),
        intended=concept,
        genre=genre,
        clues=tuple(clues),
        seed=seed,
    )


def derive_seed(base_seed: int, concept: ConceptId, genre: Genre) -> int:
    """Stable 64-bit per-riddle seed; independent of platform and process."""
    payload = f"{base_seed}|{concept}|{genre.value}".encode("utf-8")
    return int.from_bytes(hashlib.sha256(payload).digest()[:8], "big")


@dataclass(frozen=True)
class BatchResult:
    riddles: tuple[Riddle, ...]
    skipped: tuple[tuple[ConceptId, Genre, str], ...]  # (concept, genre, reason)


def generate_batch(
    kb: KnowledgeBase,
    concepts: Iterable[ConceptId],
    genres: Iterable[Genre],
    config: GeneratorConfig | None = None,
    seed: int = 0,
) -> BatchResult:
    """One riddle per (concept, genre) pair, in the given order.

    Pairs that fail generation are skipped and reported rather than
    aborting the batch.
    """
    config = config or GeneratorConfig()
    riddles: list[Riddle] = []
    skipped: list[tuple[ConceptId, Genre, str]] = []
    for concept in concepts:
        for genre in genres:
            try:
                riddles.append(
                    generate_riddle(kb, concept, genre, config, derive_seed(seed, concept, genre))
                )
            except (UnknownConcept, EmptyProfile, MissingTemplate) as exc:
                skipped.append((concept, genre, str(exc)))
    return BatchResult(riddles=tuple(riddles), skipped=tuple(skipped))


# --- serialization ----------------------------------------------------------


def predicate_to_dict(predicate: AttributePredicate) -> dict:
    out = {"mode": predicate.mode, "property": predicate.property}
    if predicate.mode == EXACT:
        out["relation"] = predicate.relation
    return out


def predicate_from_dict(raw: Mapping) -> AttributePredicate:
    if raw["mode"] == EXACT:
        return AttributePredicate.exact(raw["relation"], raw["property"])
    return AttributePredicate.relaxed(raw["property"])


def riddle_to_dict(riddle: Riddle) -> dict:
    return {
        "id": riddle.id,
        "intended": riddle.intended,
        "genre": riddle.genre.value,
        "seed": riddle.seed,
        "clues": [
            {
                "surface": clue.surface,
                "predicate": predicate_to_dict(clue.predicate),
                "source": {"relation": clue.source.relation, "property": clue.source.property},
            }
            for clue in riddle.clues
        ],
    }


def riddle_from_dict(raw: Mapping) -> Riddle:
    clues = tuple(
        Clue(
            surface=c["surface"],
            predicate=predicate_from_dict(c["predicate"]),
            source=SemanticAttribute(c["source"]["relation"], c["source"]["property"]),
        )
        for c in raw["clues"]
    )
    return Riddle(
        id=raw["id"],
        intended=raw["intended"],
        genre=Genre(raw["genre"]),
        clues=clues,
        seed=raw["seed"],
    )


def dump_riddle(riddle: Riddle) -> str:
    """Canonical byte-stable JSON rendering."""
    return json.dumps(riddle_to_dict(riddle), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_riddle(path) -> Riddle:
    with open(path, encoding="utf-8") as fh:
        return riddle_from_dict(json.load(fh))
