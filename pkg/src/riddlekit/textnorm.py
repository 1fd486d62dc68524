"""Answer-string canonicalization and solver-response splitting.

Matching of solver answers is deliberately exact-after-normalization: no
embeddings, no fuzzy scores. The pipeline is lowercase -> trim -> strip
leading articles -> collapse whitespace -> singularize the final word by
the suffix rules below -> synonym table. The whole pipeline is idempotent,
which the property tests rely on.

Suffix rules (applied to the last whitespace-separated word, in order,
first match wins):
  1. "...ies" (length > 3)                  -> "...y"    (berries -> berry)
  2. "...sses"/"xes"/"zes"/"ches"/"shes"    -> drop "es" (boxes -> box)
  3. "...s" but not "ss"/"us"/"is"          -> drop "s"  (spoons -> spoon)
"""

from __future__ import annotations

import json
import re
from functools import lru_cache
from importlib import resources
from typing import Mapping

from .errors import EmptyGuess

_ARTICLES = ("a ", "an ", "the ")
_BULLET = re.compile(r"^\s*(?:[-*•–]+|\d+[.)])\s*")


def _singularize(word: str) -> str:
    if word.endswith("ies") and len(word) > 3:
        return word[:-3] + "y"
    if word.endswith(("sses", "xes", "zes", "ches", "shes")):
        return word[:-2]
    if word.endswith("s") and len(word) > 1 and not word.endswith(("ss", "us", "is")):
        return word[:-1]
    return word


def _resolve_chains(table: Mapping[str, str]) -> dict[str, str]:
    # Follow entry chains to a fixpoint so lookups are single-step and
    # normalization stays idempotent even for chained tables.
    resolved: dict[str, str] = {}
    for key in table:
        seen = {key}
        value = table[key]
        while value in table and value not in seen:
            seen.add(value)
            value = table[value]
        resolved[key] = value
    return resolved


@lru_cache(maxsize=1)
def bundled_synonyms() -> dict[str, str]:
    raw = resources.files("riddlekit.data").joinpath("synonyms.json").read_text("utf-8")
    return _resolve_chains(json.loads(raw))


def load_synonyms(path) -> dict[str, str]:
    with open(path, encoding="utf-8") as fh:
        return _resolve_chains(json.load(fh))


def normalize_answer(text: str, synonyms: Mapping[str, str] | None = None) -> str:
    """Canonical token for a guess or solver answer.

    Raises EmptyGuess when nothing but whitespace came in. A bare article
    ("the") is kept rather than stripped to nothing.
    """
    token = " ".join(text.lower().split())
    if not token:
        raise EmptyGuess("empty guess")
    while True:
        for article in _ARTICLES:
            if token.startswith(article) and token[len(article):].strip():
                token = token[len(article):].strip()
                break
        else:
            break
    words = token.split()
    words[-1] = _singularize(words[-1])
    token = " ".join(words)
    table = bundled_synonyms() if synonyms is None else synonyms
    return table.get(token, token)


def parse_solver_response(text: str) -> list[str]:
    """Split a free-form solver response into raw answer strings.

    Handles newline lists, bullet lists, numbered lists, and
    comma-separated enumerations; order is preserved, empties dropped.
    """
    answers: list[str] = []
    for line in text.splitlines():
        line = _BULLET.sub("", line)
        for part in line.split(","):
            part = part.strip()
            if part:
                answers.append(part)
    return answers
