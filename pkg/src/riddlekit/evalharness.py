"""Solver case study: prompt an external solver for every answer to each
riddle, compare against the validator's enumeration, and aggregate
per-genre retrieval coverage, misses, extras, abstraction merges, and
overcommitment.

Three interchangeable backends implement the one-method SolverClient
interface: Mock (scripted), Recorded (fixture replay, no network), and
Live (HTTP). A run's audit log uses the same record format as the Recorded
fixture, so replaying an audited session reproduces its report exactly.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import EmptyGuess, FixtureMismatch, NoClues, SolverUnavailable
from .generator import GENRE_ORDER, Genre, Riddle
from .knowledge import ConceptId, KnowledgeBase, hypernym_closure
from .textnorm import normalize_answer, parse_solver_response  # re-exported API
from .validator import AnswerSet, answer_set

__all__ = [
    "SolverClient",
    "MockSolver",
    "RecordedSolver",
    "LiveSolver",
    "MatchReport",
    "GenreEval",
    "EvalReport",
    "build_prompt",
    "normalize_answer",
    "parse_solver_response",
    "match_answers",
    "run_case_study",
    "render_report",
    "load_fixture",
]

REQUEST_PHRASE = "all possible answers that fit the clues"


def build_prompt(riddle: Riddle) -> str:
    """Neutral prompt: numbered clues plus the bare multi-answer request.

    No examples, constraints, hints, or the intended answer.
    """
    if not riddle.clues:
        raise NoClues(f"riddle {riddle.id} has no clues")
    lines = ["Here is a riddle.", ""]
    lines.extend(f"{i}. {clue.surface}" for i, clue in enumerate(riddle.clues, start=1))
    lines.extend(["", f"List {REQUEST_PHRASE}."])
    return "\n".join(lines)


class SolverClient:
    """One operation: turn a prompt into a raw response string."""

    def complete(self, prompt: str) -> str:
        raise NotImplementedError


class MockSolver(SolverClient):
    """Deterministic scripted backend: riddle id -> canned response.

    The script is resolved to prompts up front so the interface stays
    prompt-only like every other backend.
    """

    def __init__(self, riddles: Iterable[Riddle], script: Mapping[str, str]):
        self._by_prompt = {build_prompt(r): script.get(r.id, "") for r in riddles}

    def complete(self, prompt: str) -> str:
        try:
            return self._by_prompt[prompt]
        except KeyError:
            raise FixtureMismatch("mock script has no entry for this prompt")


class RecordedSolver(SolverClient):
    """Replay of a persisted prompt/response session; no network."""

    def __init__(self, records: Sequence[Mapping[str, str]]):
        self._by_prompt = {rec["prompt"]: rec["response"] for rec in records}

    @classmethod
    def from_file(cls, path) -> "RecordedSolver":
        return cls(load_fixture(path))

    def complete(self, prompt: str) -> str:
        try:
            return self._by_prompt[prompt]
        except KeyError:
            raise FixtureMismatch(
                "recorded fixture has no response for this prompt; "
                "was the riddle set or lexicon changed since recording?"
            )


class LiveSolver(SolverClient):
    """Generic HTTP backend: POST {"prompt": ...}, read {"text": ...}.

    Configured via SOLVER_API_URL / SOLVER_API_KEY. One retry on a
    transient failure, 30 s request timeout.
    """

    def __init__(self, url: str, api_key: str = "", timeout: float = 30.0, retries: int = 1):
        if not url:
            raise SolverUnavailable("SOLVER_API_URL is not configured")
        self.url = url
        self.api_key = api_key
        self.timeout = timeout
        self.retries = retries

    @classmethod
    def from_env(cls) -> "LiveSolver":
        return cls(os.environ.get("SOLVER_API_URL", ""), os.environ.get("SOLVER_API_KEY", ""))

    def complete(self, prompt: str) -> str:
        import requests

        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        last_error: Exception | None = None
        for _ in range(self.retries + 1):
            try:
                response = requests.post(
                    self.url, json={"prompt": prompt}, headers=headers, timeout=self.timeout
                )
                response.raise_for_status()
                try:
                    payload = response.json()
                except ValueError:
                    return response.text
                if isinstance(payload, dict) and isinstance(payload.get("text"), str):
                    return payload["text"]
                return response.text
            except requests.RequestException as exc:
                last_error = exc
        raise SolverUnavailable(f"solver endpoint failed: {last_error}")


@dataclass(frozen=True)
class MatchReport:
    """How one solver response lines up with one validator answer set."""

    riddle_id: str
    retrieved: frozenset[ConceptId]
    missed: frozenset[ConceptId]
    extras: tuple[str, ...]
    abstraction_merges: int
    single_guess: bool
    coverage: Fraction


def match_answers(
    kb: KnowledgeBase, answers: AnswerSet, solver_answers: Sequence[str]
) -> MatchReport:
    """Classify each solver answer as retrieved, abstraction merge, or extra.

    Solver answers are normalized and deduplicated (first occurrence wins)
    before classification; single_guess reflects the raw parsed count.
    """
    normalized: list[str] = []
    seen: set[str] = set()
    for raw in solver_answers:
        try:
            token = normalize_answer(raw)
        except EmptyGuess:
            continue
        if token not in seen:
            seen.add(token)
            normalized.append(token)

    retrieved: set[ConceptId] = set()
    extras: list[str] = []
    merges = 0
    for token in normalized:
        if token in answers.answers:
            retrieved.add(token)
        elif any(token in hypernym_closure(kb, member) for member in answers.answers):
            merges += 1
        else:
            extras.append(token)
    missed = answers.answers - retrieved
    coverage = (
        Fraction(len(retrieved), len(answers.answers)) if answers.answers else Fraction(1)
    )
    return MatchReport(
        riddle_id=answers.riddle_id,
        retrieved=frozenset(retrieved),
        missed=frozenset(missed),
        extras=tuple(extras),
        abstraction_merges=merges,
        single_guess=len(solver_answers) == 1,
        coverage=coverage,
    )


@dataclass(frozen=True)
class GenreEval:
    n: int
    mean_coverage: Fraction
    extras: int
    merges: int
    overcommitted: int


@dataclass(frozen=True)
class EvalReport:
    per_genre: dict[Genre, GenreEval]
    overall_mean: Fraction
    total_extras: int
    total_merges: int
    overcommitment_rate: Fraction

    @property
    def riddle_count(self) -> int:
        return sum(g.n for g in self.per_genre.values())


def _aggregate(pairs: Sequence[tuple[Riddle, MatchReport]]) -> EvalReport:
    by_genre: dict[Genre, list[MatchReport]] = {}
    for riddle, report in pairs:
        by_genre.setdefault(riddle.genre, []).append(report)
    per_genre = {
        genre: GenreEval(
            n=len(reports),
            mean_coverage=sum((r.coverage for r in reports), Fraction(0)) / len(reports),
            extras=sum(len(r.extras) for r in reports),
            merges=sum(r.abstraction_merges for r in reports),
            overcommitted=sum(1 for r in reports if r.single_guess),
        )
        for genre, reports in by_genre.items()
    }
    all_reports = [report for _, report in pairs]
    return EvalReport(
        per_genre=per_genre,
        overall_mean=sum((r.coverage for r in all_reports), Fraction(0)) / len(all_reports),
        total_extras=sum(len(r.extras) for r in all_reports),
        total_merges=sum(r.abstraction_merges for r in all_reports),
        overcommitment_rate=Fraction(
            sum(1 for r in all_reports if r.single_guess), len(all_reports)
        ),
    )


def run_case_study(
    kb: KnowledgeBase,
    riddles: Sequence[Riddle],
    client: SolverClient,
    audit_path=None,
) -> EvalReport:
    """Prompt -> complete -> parse -> match for every riddle, then aggregate.

    Riddles are processed in riddle-id order so aggregation is a
    deterministic fold. When the solver dies mid-run, the audit collected
    so far is persisted and attached to the raised SolverUnavailable.
    """
    if not riddles:
        raise ValueError("no riddles to evaluate")
    ordered = sorted(riddles, key=lambda r: r.id)
    audit: list[dict[str, str]] = []
    pairs: list[tuple[Riddle, MatchReport]] = []
    for riddle in ordered:
        prompt = build_prompt(riddle)
        try:
            response = client.complete(prompt)
        except SolverUnavailable as exc:
            if audit_path is not None:
                write_fixture(audit_path, audit)
            raise SolverUnavailable(str(exc), partial_audit=audit) from exc
        audit.append({"riddle_id": riddle.id, "prompt": prompt, "response": response})
        answers = answer_set(kb, riddle)
        pairs.append((riddle, match_answers(kb, answers, parse_solver_response(response))))
    if audit_path is not None:
        write_fixture(audit_path, audit)
    return _aggregate(pairs)


def load_fixture(path) -> list[dict[str, str]]:
    with open(path, encoding="utf-8") as fh:
        records = json.load(fh)
    for rec in records:
        if not {"riddle_id", "prompt", "response"} <= set(rec):
            raise FixtureMismatch("fixture record missing riddle_id/prompt/response")
    return records


def write_fixture(path, records: Sequence[Mapping[str, str]]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(list(records), fh, indent=2, ensure_ascii=False, sort_keys=True)
        fh.write("\n")


def render_report(report: EvalReport) -> str:
    """Byte-stable per-genre table plus overall summary lines."""
    header = (
        f"{'genre':<14}{'n':>4}{'mean coverage':>15}{'extras':>8}{'merges':>8}{'overcommitted':>15}"
    )
    lines = [header]
    for genre in GENRE_ORDER:
        if genre not in report.per_genre:
            continue
        g = report.per_genre[genre]
        lines.append(
            f"{genre.value:<14}{g.n:>4}{float(g.mean_coverage):>15.3f}"
            f"{g.extras:>8}{g.merges:>8}{g.overcommitted:>15}"
        )
    lines.append("")
    lines.append(f"riddles evaluated: {report.riddle_count}")
    lines.append(f"overall mean coverage: {float(report.overall_mean):.3f}")
    lines.append(f"total extras: {report.total_extras}")
    lines.append(f"total abstraction merges: {report.total_merges}")
    lines.append(f"overcommitment rate: {float(report.overcommitment_rate):.3f}")
    return "\n".join(lines) + "\n"
