"""Full-corpus sweep experiment: generate one riddle per (concept, genre)
over the bundled knowledge base, enumerate every answer set, and print the
ambiguity table plus solvability and timing.

Run from the repository root: python scripts/run_sweep.py [seed]
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from riddlekit.cli import default_kb
from riddlekit.generator import GENRE_ORDER, GeneratorConfig, generate_batch
from riddlekit.validator import ambiguity_stats, answer_set, render_stats


def main():
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 2026
    kb = default_kb()
    started = time.perf_counter()
    batch = generate_batch(kb, kb.concepts(), GENRE_ORDER, GeneratorConfig(), seed)
    sets = [answer_set(kb, riddle) for riddle in batch.riddles]
    elapsed = time.perf_counter() - started

    solvable = sum(1 for r, s in zip(batch.riddles, sets) if r.intended in s.answers)
    print(f"seed {seed}: {len(batch.riddles)} riddles over {len(kb.concepts())} concepts "
          f"in {elapsed:.2f}s; solvable {solvable}/{len(batch.riddles)}; "
          f"skipped {len(batch.skipped)}")
    print()
    print(render_stats(ambiguity_stats(list(batch.riddles), sets)), end="")

    widest = max(zip(batch.riddles, sets), key=lambda pair: len(pair[1].answers))
    riddle, answers = widest
    print()
    print(f"widest answer set ({riddle.genre.value} riddle for {riddle.intended!r}):")
    for clue in riddle.clues:
        print(f"  - {clue.surface}")
    print(f"  answers: {', '.join(answers.sorted())}")


if __name__ == "__main__":
    main()
