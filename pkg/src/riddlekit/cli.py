"""Command-line entry point tying the pipeline together.

Exit status: 0 on success, 1 on a domain error (bad data, unknown concept,
unavailable solver), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

from .errors import RiddleKitError
from .evalharness import (
    LiveSolver,
    MockSolver,
    RecordedSolver,
    render_report,
    run_case_study,
)
from .generator import (
    GENRE_ORDER,
    Genre,
    GeneratorConfig,
    StyleLexicon,
    dump_riddle,
    generate_riddle,
    load_riddle,
)
from .knowledge import KnowledgeBase, ingest_with_report, load_kb
from .semantics import CATEGORY_ORDER, build_profile
from .validator import ambiguity_stats, answer_set, render_stats

BUNDLED_KB = "kb60.triples"


def default_kb() -> KnowledgeBase:
    lines = resources.files("riddlekit.data").joinpath(BUNDLED_KB).read_text("utf-8").splitlines()
    from .knowledge import ingest

    return ingest(lines)


def _kb_from(args) -> KnowledgeBase:
    if getattr(args, "kb", None):
        return load_kb(args.kb)
    return default_kb()


def _add_kb_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--kb", help="triple file (defaults to the bundled knowledge base)")


def _cmd_ingest(args) -> int:
    with open(args.triples, encoding="utf-8") as fh:
        kb, report = ingest_with_report(fh)
    print(f"ingested {len(kb)} triples across {len(kb.concepts())} concepts; "
          f"rejected {len(report.rejected)} lines")
    if args.report:
        Path(args.report).write_text(report.render(), encoding="utf-8")
    return 0


def _cmd_profile(args) -> int:
    kb = _kb_from(args)
    profile = build_profile(kb, args.concept)
    for category in CATEGORY_ORDER:
        attrs = sorted(profile.by_category[category])
        rendered = ", ".join(f"{a.relation}={a.property}" for a in attrs)
        print(f"{category.value}: {rendered}")
    return 0


def _cmd_generate(args) -> int:
    kb = _kb_from(args)
    lexicon = StyleLexicon.load(args.lexicon) if args.lexicon else StyleLexicon.bundled()
    config = GeneratorConfig(clue_count=args.clues, lexicon=lexicon)
    riddle = generate_riddle(kb, args.concept, Genre(args.genre), config, args.seed)
    Path(args.out).write_text(dump_riddle(riddle), encoding="utf-8")
    print(f"wrote {riddle.id} ({riddle.genre.value}, {len(riddle.clues)} clues) to {args.out}")
    return 0


def _cmd_validate(args) -> int:
    kb = _kb_from(args)
    riddle = load_riddle(args.riddle)
    result = answer_set(kb, riddle)
    print(", ".join(result.sorted()))
    return 0


def _load_riddle_dir(path) -> list:
    files = sorted(Path(path).glob("*.json"))
    riddles = [load_riddle(f) for f in files]
    if not riddles:
        raise RiddleKitError(f"no riddle files in {path}")
    return riddles


def _cmd_stats(args) -> int:
    kb = _kb_from(args)
    riddles = _load_riddle_dir(args.riddles)
    sets = [answer_set(kb, riddle) for riddle in riddles]
    print(render_stats(ambiguity_stats(riddles, sets)), end="")
    return 0


def _cmd_eval(args) -> int:
    kb = _kb_from(args)
    riddles = _load_riddle_dir(args.riddles)
    if args.backend == "mock":
        script = {r.id: ", ".join(answer_set(kb, r).sorted()) for r in riddles}
        client = MockSolver(riddles, script)
    elif args.backend == "recorded":
        if not args.fixture:
            raise RiddleKitError("--backend recorded needs --fixture")
        client = RecordedSolver.from_file(args.fixture)
    else:
        client = LiveSolver.from_env()
    audit_path = args.audit or f"{args.out}.audit.json"
    report = run_case_study(kb, riddles, client, audit_path=audit_path)
    text = render_report(report)
    Path(args.out).write_text(text, encoding="utf-8")
    print(text, end="")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import ServeConfig, create_app
    from .store import RiddleStore

    kb = _kb_from(args)
    store = RiddleStore(args.store, kb_digest=kb.digest)
    config = ServeConfig(max_guesses=args.max_guesses, expose_full=args.debug)
    app = create_app(kb, store, config)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="riddlekit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse a triple file and report rejects")
    p.add_argument("--triples", required=True)
    p.add_argument("--report")
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("profile", help="print a concept's categorized attributes")
    p.add_argument("--concept", required=True)
    _add_kb_option(p)
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("generate", help="generate one riddle")
    p.add_argument("--concept", required=True)
    p.add_argument("--genre", required=True, choices=[g.value for g in GENRE_ORDER])
    p.add_argument("--seed", required=True, type=int)
    p.add_argument("--clues", type=int, default=3)
    p.add_argument("--lexicon")
    p.add_argument("--out", required=True)
    _add_kb_option(p)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("validate", help="print all answers consistent with a riddle")
    p.add_argument("--riddle", required=True)
    _add_kb_option(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("stats", help="ambiguity statistics over a riddle directory")
    p.add_argument("--riddles", required=True)
    _add_kb_option(p)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("eval", help="run the solver case study")
    p.add_argument("--riddles", required=True)
    p.add_argument("--backend", required=True, choices=["mock", "recorded", "live"])
    p.add_argument("--fixture")
    p.add_argument("--out", required=True)
    p.add_argument("--audit")
    _add_kb_option(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("serve", help="run the HTTP play service")
    p.add_argument("--port", type=int, required=True)
    p.add_argument("--store", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--max-guesses", type=int, default=5)
    p.add_argument("--debug", action="store_true")
    _add_kb_option(p)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except RiddleKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
