"""Concept triple store: parsing, ingestion, and indexed lookup.

A knowledge base is a deduplicated set of ``<concept, relation, property>``
facts plus three lookup indices (forward, inverted, and property-only).
Once built it is never mutated, so every downstream module can share one
instance across threads without coordination.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import EmptyKnowledgeBase, MalformedRecord, UnknownConcept, UnknownRelation

# Closed relation vocabulary. Everything else is rejected at parse time,
# which keeps attribute categorization (see semantics) a total function.
RELATIONS: tuple[str, ...] = (
    "is-a",
    "part-of",
    "has-part",
    "located-at",
    "used-for",
    "requires",
    "has-property",
    "made-of",
    "capable-of",
    "does",
    "becomes",
)
_RELATION_SET = frozenset(RELATIONS)

ConceptId = str  # normalized lowercase token string


def normalize_token(text: str) -> str:
    """Unicode-lowercase, trim, and collapse internal whitespace.

    Idempotent by construction; no stemming happens here.
    """
    return " ".join(text.lower().split())


@dataclass(frozen=True, order=True)
class Triple:
    """One ``<concept, relation, property>`` fact, fully normalized."""

    concept: ConceptId
    relation: str
    property: str


def parse_triple_record(line: str) -> Triple:
    """Parse one line of the triple file into a normalized Triple.

    The record grammar is a JSON object with exactly the keys
    ``concept``, ``relation``, ``property``, all strings.
    """
    try:
        raw = json.loads(line)
    except json.JSONDecodeError as exc:
        raise MalformedRecord(f"not a valid record: {exc}") from exc
    if not isinstance(raw, dict):
        raise MalformedRecord("record must be an object")
    if set(raw) != {"concept", "relation", "property"}:
        raise MalformedRecord(
            "record must have exactly the keys concept/relation/property, "
            f"got {sorted(raw)}"
        )
    if not all(isinstance(v, str) for v in raw.values()):
        raise MalformedRecord("all record fields must be strings")

    concept = normalize_token(raw["concept"])
    relation = normalize_token(raw["relation"])
    prop = normalize_token(raw["property"])
    if not concept or not relation or not prop:
        raise MalformedRecord("record fields must be non-empty")
    if relation not in _RELATION_SET:
        raise UnknownRelation(f"unknown relation {relation!r}")
    return Triple(concept, relation, prop)


def render_triple(triple: Triple) -> str:
    """Inverse of :func:`parse_triple_record` for normalized triples."""
    return json.dumps(
        {"concept": triple.concept, "relation": triple.relation, "property": triple.property},
        separators=(",", ":"),
        ensure_ascii=False,
    )


@dataclass(frozen=True)
class IngestReport:
    """What happened to every input line during ingestion."""

    accepted: int
    deduplicated: int
    rejected: tuple[tuple[int, str, str], ...]  # (1-based line number, line, reason)

    def render(self) -> str:
        lines = [
            f"accepted: {self.accepted}",
            f"deduplicated: {self.deduplicated}",
            f"rejected: {len(self.rejected)}",
        ]
        for lineno, text, reason in self.rejected:
            lines.append(f"  line {lineno}: {reason}: {text}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class KnowledgeBase:
    """Immutable triple set with exact-transpose lookup indices.

    ``forward`` maps a concept to its (relation, property) pairs,
    ``inverted`` is the exact transpose, and ``by_property`` unions the
    inverted entries that share a property. Treat all maps as read-only.
    """

    triples: frozenset[Triple]
    forward: dict[ConceptId, frozenset[tuple[str, str]]] = field(repr=False)
    inverted: dict[tuple[str, str], frozenset[ConceptId]] = field(repr=False)
    by_property: dict[str, frozenset[ConceptId]] = field(repr=False)
    digest: str = ""

    def __contains__(self, concept: ConceptId) -> bool:
        return concept in self.forward

    def __len__(self) -> int:
        return len(self.triples)

    def concepts(self) -> list[ConceptId]:
        return sorted(self.forward)

    def triples_of(self, concept: ConceptId) -> frozenset[tuple[str, str]]:
        if concept not in self.forward:
            raise UnknownConcept(f"unknown concept {concept!r}")
        return self.forward[concept]


def build_kb(triples: Iterable[Triple], digest: str = "") -> KnowledgeBase:
    """Index a deduplicated triple collection into a KnowledgeBase."""
    tripleset = frozenset(triples)
    if not tripleset:
        raise EmptyKnowledgeBase("no valid triples")
    forward: dict[ConceptId, set[tuple[str, str]]] = {}
    inverted: dict[tuple[str, str], set[ConceptId]] = {}
    by_property: dict[str, set[ConceptId]] = {}
    for t in tripleset:
        forward.setdefault(t.concept, set()).add((t.relation, t.property))
        inverted.setdefault((t.relation, t.property), set()).add(t.concept)
        by_property.setdefault(t.property, set()).add(t.concept)
    return KnowledgeBase(
        triples=tripleset,
        forward={c: frozenset(v) for c, v in forward.items()},
        inverted={k: frozenset(v) for k, v in inverted.items()},
        by_property={p: frozenset(v) for p, v in by_property.items()},
        digest=digest,
    )


def _iter_records(lines: Iterable[str]) -> Iterator[tuple[int, str]]:
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, stripped


def ingest_with_report(lines: Iterable[str]) -> tuple[KnowledgeBase, IngestReport]:
    """Parse every record line; reject bad lines instead of aborting.

    Blank lines and ``#`` comments are skipped silently. Raises
    EmptyKnowledgeBase when nothing valid remains.
    """
    triples: set[Triple] = set()
    rejected: list[tuple[int, str, str]] = []
    seen = 0
    for lineno, line in _iter_records(lines):
        try:
            triple = parse_triple_record(line)
        except (MalformedRecord, UnknownRelation) as exc:
            rejected.append((lineno, line, str(exc)))
            continue
        seen += 1
        triples.add(triple)
    if not triples:
        raise EmptyKnowledgeBase("no valid triples in input")
    report = IngestReport(
        accepted=len(triples), deduplicated=seen - len(triples), rejected=tuple(rejected)
    )
    digest = hashlib.sha256(
        "\n".join(render_triple(t) for t in sorted(triples)).encode("utf-8")
    ).hexdigest()
    return build_kb(triples, digest=digest), report


def ingest(lines: Iterable[str]) -> KnowledgeBase:
    """Ingest record lines, discarding the rejection report."""
    kb, _ = ingest_with_report(lines)
    return kb


def load_kb(path) -> KnowledgeBase:
    """Ingest a triple file from disk."""
    with open(path, encoding="utf-8") as fh:
        return ingest(fh)


def concepts_with(
    kb: KnowledgeBase, relation: str | None, prop: str
) -> frozenset[ConceptId]:
    """Concepts holding ``prop`` under ``relation``, or any relation if None.

    Unknown keys yield the empty set rather than an error.
    """
    if relation is None:
        return kb.by_property.get(prop, frozenset())
    return kb.inverted.get((relation, prop), frozenset())


def hypernym_closure(kb: KnowledgeBase, concept: ConceptId) -> frozenset[str]:
    """Transitive closure of ``is-a`` property labels reachable from concept.

    An ``is-a`` edge is followed further only when its property label is
    itself a concept in the KB. Cycle-safe: each label expands once.
    """
    if concept not in kb:
        raise UnknownConcept(f"unknown concept {concept!r}")
    closure: set[str] = set()
    frontier = [concept]
    expanded: set[ConceptId] = set()
    while frontier:
        current = frontier.pop()
        if current in expanded:
            continue
        expanded.add(current)
        for relation, prop in kb.forward.get(current, ()):
            if relation != "is-a" or prop in closure:
                continue
            closure.add(prop)
            if prop in kb:
                frontier.append(prop)
    return frozenset(closure)
