"""Exhaustive answer enumeration, guess judging, and ambiguity statistics.

The validator answers one question per riddle: which KB concepts satisfy
every clue predicate? It never judges riddle quality or style. The indexed
path (answer_set) and the brute-force path (answer_set_naive) must agree
on all inputs; the latter stays deliberately simple so it can serve as the
oracle in equivalence tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import EmptyInput, NoClues
from .generator import EXACT, AttributePredicate, Genre, Riddle
from .knowledge import ConceptId, KnowledgeBase, concepts_with, hypernym_closure
from .textnorm import normalize_answer


@dataclass(frozen=True)
class AnswerSet:
    riddle_id: str
    answers: frozenset[ConceptId]
    intended: ConceptId

    def sorted(self) -> list[ConceptId]:
        return sorted(self.answers)


def satisfies(kb: KnowledgeBase, concept: ConceptId, predicate: AttributePredicate) -> bool:
    """Does the concept hold the predicate's attribute?"""
    pairs = kb.forward.get(concept, frozenset())
    if predicate.mode == EXACT:
        return (predicate.relation, predicate.property) in pairs
    return any(prop == predicate.property for _, prop in pairs)


def answer_set(kb: KnowledgeBase, riddle: Riddle) -> AnswerSet:
    """Index-backed intersection over all clue predicates."""
    if not riddle.clues:
        raise NoClues(f"riddle {riddle.id} has no clues")
    result: frozenset[ConceptId] | None = None
    for clue in riddle.clues:
        p = clue.predicate
        holders = (
            concepts_with(kb, p.relation, p.property)
            if p.mode == EXACT
            else concepts_with(kb, None, p.property)
        )
        result = holders if result is None else result & holders
        if not result:
            break
    return AnswerSet(riddle_id=riddle.id, answers=result, intended=riddle.intended)


def answer_set_naive(kb: KnowledgeBase, riddle: Riddle) -> AnswerSet:
    """Oracle path: test every concept against every predicate."""
    if not riddle.clues:
        raise NoClues(f"riddle {riddle.id} has no clues")
    answers = frozenset(
        concept
        for concept in kb.forward
        if all(satisfies(kb, concept, clue.predicate) for clue in riddle.clues)
    )
    return AnswerSet(riddle_id=riddle.id, answers=answers, intended=riddle.intended)


class GuessVerdict(str, Enum):
    INTENDED = "intended"
    ALTERNATIVE_VALID = "alternative-valid"
    ABSTRACTION_MERGE = "abstraction-merge"
    INVALID = "invalid"


def check_guess(
    kb: KnowledgeBase,
    riddle: Riddle,
    answers: AnswerSet,
    guess: str,
    merge_threshold: int = 1,
) -> GuessVerdict:
    """Judge one player guess against the precomputed answer set.

    Precedence: intended, then any other valid answer, then an
    abstraction (the guess names a hypernym of at least
    ``merge_threshold`` answers), else invalid.
    """
    token = normalize_answer(guess)
    if token == riddle.intended:
        return GuessVerdict.INTENDED
    if token in answers.answers:
        return GuessVerdict.ALTERNATIVE_VALID
    covered = sum(1 for member in answers.answers if token in hypernym_closure(kb, member))
    if covered >= merge_threshold:
        return GuessVerdict.ABSTRACTION_MERGE
    return GuessVerdict.INVALID


@dataclass(frozen=True)
class GenreStats:
    count: int
    median: int
    mean: Fraction
    min: int
    max: int


@dataclass(frozen=True)
class AmbiguityStats:
    per_genre: dict[Genre, GenreStats]
    overall_median: int
    overall_mean: Fraction


def median_lower(values: Sequence[int]) -> int:
    """Median taking the lower of the two central values for even counts."""
    if not values:
        raise EmptyInput("median of empty sequence")
    ordered = sorted(values)
    return ordered[(len(ordered) - 1) // 2]


def _genre_stats(sizes: Sequence[int]) -> GenreStats:
    return GenreStats(
        count=len(sizes),
        median=median_lower(sizes),
        mean=Fraction(sum(sizes), len(sizes)),
        min=min(sizes),
        max=max(sizes),
    )


def ambiguity_stats(
    riddles: Iterable[Riddle], answer_sets: Iterable[AnswerSet]
) -> AmbiguityStats:
    """Per-genre and overall answer-set size statistics."""
    riddles = list(riddles)
    answer_sets = list(answer_sets)
    if not riddles or not answer_sets:
        raise EmptyInput("no riddles to summarize")
    if len(riddles) != len(answer_sets):
        raise ValueError("riddles and answer sets are misaligned")
    by_genre: dict[Genre, list[int]] = {}
    all_sizes: list[int] = []
    for riddle, answers in zip(riddles, answer_sets):
        size = len(answers.answers)
        by_genre.setdefault(riddle.genre, []).append(size)
        all_sizes.append(size)
    return AmbiguityStats(
        per_genre={genre: _genre_stats(sizes) for genre, sizes in by_genre.items()},
        overall_median=median_lower(all_sizes),
        overall_mean=Fraction(sum(all_sizes), len(all_sizes)),
    )


def render_stats(stats: AmbiguityStats) -> str:
    """Fixed-order, byte-stable statistics table."""
    from .generator import GENRE_ORDER  # local to avoid import noise at top

    header = f"{'genre':<14}{'count':>7}{'median':>8}{'mean':>8}{'min':>6}{'max':>6}"
    lines = [header]
    for genre in GENRE_ORDER:
        if genre not in stats.per_genre:
            continue
        g = stats.per_genre[genre]
        lines.append(
            f"{genre.value:<14}{g.count:>7}{g.median:>8}{float(g.mean):>8.2f}{g.min:>6}{g.max:>6}"
        )
    lines.append(
        f"{'overall':<14}{sum(g.count for g in stats.per_genre.values()):>7}"
        f"{stats.overall_median:>8}{float(stats.overall_mean):>8.2f}"
        f"{min(g.min for g in stats.per_genre.values()):>6}"
        f"{max(g.max for g in stats.per_genre.values()):>6}"
    )
    return "\n".join(lines) + "\n"
