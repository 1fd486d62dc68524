"""HTTP play service over the riddle pipeline.

Public riddle views expose clue surfaces only; the intended answer and the
machine predicates stay server-side until reveal. Sessions are in-memory
per (session_id, riddle_id); the store holds riddles and precomputed answer
sets. The KB is immutable, so reads need no locking; store writes are
serialized inside RiddleStore.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from fastapi import Body, FastAPI, HTTPException

from .errors import EmptyGuess, EmptyInput, RiddleKitError
from .evalharness import MockSolver, RecordedSolver, LiveSolver, render_report, run_case_study
from .generator import Genre, GeneratorConfig, generate_riddle
from .knowledge import KnowledgeBase
from .store import RiddleStore, StoredRecord
from .validator import GuessVerdict, ambiguity_stats, answer_set, check_guess


@dataclass
class ServeConfig:
    max_guesses: int = 5
    expose_full: bool = False
    generator: GeneratorConfig = field(default_factory=GeneratorConfig)


@dataclass
class PlaySession:
    session_id: str
    riddle_id: str
    guesses: list[tuple[str, str]] = field(default_factory=list)  # (normalized, verdict)
    revealed: bool = False

    @property
    def wrong_count(self) -> int:
        return sum(1 for _, verdict in self.guesses if verdict == GuessVerdict.INVALID.value)


def _public_view(record: StoredRecord) -> dict:
    riddle = record.riddle
    return {
        "id": riddle.id,
        "genre": riddle.genre.value,
        "seed": riddle.seed,
        "clue_count": len(riddle.clues),
        "clues": [clue.surface for clue in riddle.clues],
    }


def create_app(kb: KnowledgeBase, store: RiddleStore, config: ServeConfig | None = None) -> FastAPI:
    config = config or ServeConfig()
    app = FastAPI(title="riddle play service")
    sessions: dict[tuple[str, str], PlaySession] = {}

    def _load_or_404(riddle_id: str) -> StoredRecord:
        try:
            record = store.load(riddle_id)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown riddle")
        except RiddleKitError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        if record.stale:
            # record predates the current KB: recompute its answer set
            record = store.save(record.riddle, answer_set(kb, record.riddle))
        return record

    @app.post("/riddles", status_code=201)
    def create_riddle(body: dict = Body(...)):
        genre_name = body.get("genre")
        try:
            genre = Genre(genre_name)
        except ValueError:
            raise HTTPException(status_code=400, detail=f"unknown genre {genre_name!r}")
        seed = body.get("seed")
        if seed is None:
            seed = random.SystemRandom().randrange(2**32)
        if not isinstance(seed, int) or seed < 0:
            raise HTTPException(status_code=400, detail="seed must be a non-negative integer")
        concept = body.get("concept")
        if concept is None:
            concept = random.Random(seed).choice(kb.concepts())
        if concept not in kb:
            raise HTTPException(status_code=404, detail=f"unknown concept {concept!r}")
        try:
            riddle = generate_riddle(kb, concept, genre, config.generator, seed)
        except RiddleKitError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        record = store.save(riddle, answer_set(kb, riddle))
        return _public_view(record)

    @app.get("/riddles/{riddle_id}")
    def get_riddle(riddle_id: str, full: bool = False):
        record = _load_or_404(riddle_id)
        if not full:
            return _public_view(record)
        if not config.expose_full:
            raise HTTPException(status_code=403, detail="full view disabled")
        from .generator import riddle_to_dict

        return {"riddle": riddle_to_dict(record.riddle), "answers": list(record.answers)}

    @app.post("/riddles/{riddle_id}/guess")
    def guess(riddle_id: str, body: dict = Body(...)):
        session_id = body.get("session_id")
        if not session_id or not isinstance(session_id, str):
            raise HTTPException(status_code=400, detail="session_id required")
        text = body.get("text", "")
        record = _load_or_404(riddle_id)
        session = sessions.setdefault(
            (session_id, riddle_id), PlaySession(session_id=session_id, riddle_id=riddle_id)
        )
        try:
            from .textnorm import normalize_answer

            normalized = normalize_answer(text if isinstance(text, str) else "")
        except EmptyGuess:
            raise HTTPException(status_code=400, detail="empty guess")
        previous = next((v for t, v in session.guesses if t == normalized), None)
        if previous is None:
            verdict = check_guess(
                kb, record.riddle, record.answer_set(), normalized
            ).value
            session.guesses.append((normalized, verdict))
            if session.wrong_count >= config.max_guesses:
                session.revealed = True
        else:
            verdict = previous
        return {
            "verdict": verdict,
            "wrong_count": session.wrong_count,
            "revealed": session.revealed,
        }

    @app.post("/riddles/{riddle_id}/reveal")
    def reveal(riddle_id: str, body: dict = Body(default={})):
        record = _load_or_404(riddle_id)
        session_id = (body or {}).get("session_id")
        if session_id:
            session = sessions.setdefault(
                (session_id, riddle_id), PlaySession(session_id=session_id, riddle_id=riddle_id)
            )
            session.revealed = True
        return {"intended": record.riddle.intended, "answers": list(record.answers)}

    @app.get("/riddles/{riddle_id}/answers")
    def answers(riddle_id: str, session_id: str | None = None):
        record = _load_or_404(riddle_id)
        session = sessions.get((session_id or "", riddle_id))
        if session is None or not session.revealed:
            raise HTTPException(status_code=403, detail="answers are sealed until reveal")
        return {"intended": record.riddle.intended, "answers": list(record.answers)}

    @app.get("/stats/ambiguity")
    def stats():
        ids = store.list_ids()
        records = [store.load(riddle_id) for riddle_id in ids]
        try:
            result = ambiguity_stats(
                [r.riddle for r in records], [r.answer_set() for r in records]
            )
        except EmptyInput:
            raise HTTPException(status_code=400, detail="no riddles stored")
        return {
            "per_genre": {
                genre.value: {
                    "count": g.count,
                    "median": g.median,
                    "mean": float(g.mean),
                    "min": g.min,
                    "max": g.max,
                }
                for genre, g in result.per_genre.items()
            },
            "overall_median": result.overall_median,
            "overall_mean": float(result.overall_mean),
        }

    @app.post("/eval/run")
    def eval_run(body: dict = Body(...)):
        backend = body.get("backend")
        ids = store.list_ids()
        records = [store.load(riddle_id) for riddle_id in ids]
        riddles = [r.riddle for r in records]
        if not riddles:
            raise HTTPException(status_code=400, detail="no riddles stored")
        if backend == "mock":
            script = {r.riddle.id: ", ".join(r.answers) for r in records}
            client = MockSolver(riddles, script)
        elif backend == "recorded":
            fixture = body.get("fixture")
            if not fixture:
                raise HTTPException(status_code=400, detail="recorded backend needs a fixture")
            client = RecordedSolver.from_file(fixture)
        elif backend == "live":
            client = LiveSolver.from_env()
        else:
            raise HTTPException(status_code=400, detail=f"unknown backend {backend!r}")
        try:
            report = run_case_study(kb, riddles, client)
        except RiddleKitError as exc:
            raise HTTPException(status_code=502, detail=str(exc))
        return {
            "riddles": report.riddle_count,
            "overall_mean_coverage": float(report.overall_mean),
            "report": render_report(report),
        }

    return app
