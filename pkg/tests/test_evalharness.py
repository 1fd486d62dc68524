import json
from fractions import Fraction

import pytest

from riddlekit.errors import EmptyGuess, FixtureMismatch, NoClues, SolverUnavailable
from riddlekit.evalharness import (
    REQUEST_PHRASE,
    LiveSolver,
    MockSolver,
    RecordedSolver,
    build_prompt,
    load_fixture,
    match_answers,
    normalize_answer,
    parse_solver_response,
    render_report,
    run_case_study,
)
from riddlekit.generator import GENRE_ORDER, GeneratorConfig, generate_batch
from riddlekit.validator import answer_set


@pytest.fixture(scope="module")
def tk6_batch(tk6):
    return generate_batch(tk6, tk6.concepts(), GENRE_ORDER, GeneratorConfig(), 55).riddles


def echo_script(kb, riddles):
    return {r.id: ", ".join(answer_set(kb, r).sorted()) for r in riddles}


class TestBuildPrompt:
    def test_numbered_clue_lines(self, tk6_batch):
        riddle = next(r for r in tk6_batch if len(r.clues) == 3)
        prompt = build_prompt(riddle)
        lines = prompt.splitlines()
        numbered = [line for line in lines if line[:2] in ("1.", "2.", "3.")]
        assert len(numbered) == 3

    def test_contains_request_phrase(self, tk6_batch):
        assert REQUEST_PHRASE == "all possible answers that fit the clues"
        for riddle in tk6_batch:
            assert REQUEST_PHRASE in build_prompt(riddle)

    def test_never_names_the_intended_concept(self, tk6_batch):
        for riddle in tk6_batch:
            assert riddle.intended not in build_prompt(riddle).lower().split()

    def test_no_clues(self, tk6_batch):
        riddle = tk6_batch[0]
        bare = type(riddle)(
            id="x", intended=riddle.intended, genre=riddle.genre, clues=(), seed=0
        )
        with pytest.raises(NoClues):
            build_prompt(bare)


class TestNormalizeAnswer:
    def test_article_case_trim(self):
        assert normalize_answer("A Spoon ") == "spoon"

    def test_plural_suffix(self):
        assert normalize_answer("spoons") == "spoon"

    def test_synonym_table(self):
        assert normalize_answer("looking glass") == "mirror"

    def test_custom_table(self):
        assert normalize_answer("scooper", {"scooper": "spoon"}) == "spoon"

    def test_stacked_articles(self):
        assert normalize_answer("the the spoon") == "spoon"

    def test_bare_article_survives(self):
        assert normalize_answer("the") == "the"

    @pytest.mark.parametrize(
        "raw,expected",
        [
            ("berries", "berry"),
            ("boxes", "box"),
            ("dishes", "dish"),
            ("glasses", "glass"),
            ("compass", "compass"),
            ("axis", "axis"),
            ("cactus", "cactus"),
        ],
    )
    def test_suffix_rules(self, raw, expected):
        assert normalize_answer(raw) == expected

    def test_empty_guess(self):
        with pytest.raises(EmptyGuess):
            normalize_answer("   ")

    def test_kb_concept_names_are_fixpoints(self, tk6, kb60):
        for concept in set(tk6.concepts()) | set(kb60.concepts()):
            assert normalize_answer(concept) == concept


class TestParseSolverResponse:
    def test_numbered_list(self):
        assert parse_solver_response("1. spoon\n2. ladle") == ["spoon", "ladle"]

    def test_comma_list(self):
        assert parse_solver_response("spoon, ladle, scoop") == ["spoon", "ladle", "scoop"]

    def test_empty(self):
        assert parse_solver_response("") == []

    def test_bullets_and_mixed(self):
        text = "- spoon\n* ladle\n• fork, mirror\n"
        assert parse_solver_response(text) == ["spoon", "ladle", "fork", "mirror"]

    def test_order_preserved(self):
        assert parse_solver_response("b\na\nc") == ["b", "a", "c"]


class TestMatchAnswers:
    @pytest.fixture()
    def spoon_set(self, tk6, tk6_batch):
        from riddlekit.validator import AnswerSet

        return AnswerSet(riddle_id="t", answers=frozenset({"spoon", "ladle"}), intended="spoon")

    def test_partial_single_guess(self, tk6, spoon_set):
        report = match_answers(tk6, spoon_set, ["spoon"])
        assert report.coverage == Fraction(1, 2)
        assert report.missed == {"ladle"}
        assert report.single_guess

    def test_paraphrase_and_extras(self, tk6, spoon_set):
        report = match_answers(tk6, spoon_set, ["spoons", "ladle", "scoop"])
        assert report.coverage == 1
        assert report.extras == ("scoop",)
        assert report.missed == frozenset()
        assert not report.single_guess

    def test_abstraction_merge(self, tk6, spoon_set):
        report = match_answers(tk6, spoon_set, ["utensil"])
        assert report.coverage == 0
        assert report.abstraction_merges == 1
        assert report.extras == ()

    def test_duplicates_counted_once(self, tk6, spoon_set):
        report = match_answers(tk6, spoon_set, ["spoon", "Spoon", "the spoons"])
        assert report.coverage == Fraction(1, 2)
        assert report.extras == ()
        assert not report.single_guess  # three parsed answers, even if equal

    def test_partition_invariant(self, tk6, spoon_set):
        report = match_answers(tk6, spoon_set, ["ladle", "mirror"])
        assert report.retrieved | report.missed == spoon_set.answers
        assert not report.retrieved & report.missed


class TestRunCaseStudy:
    def test_echo_mock_full_coverage(self, tk6):
        # two-clue riddles keep some TK6 answer sets above one element
        riddles = generate_batch(
            tk6, tk6.concepts(), GENRE_ORDER, GeneratorConfig(clue_count=2), 55
        ).riddles
        client = MockSolver(riddles, echo_script(tk6, riddles))
        report = run_case_study(tk6, riddles, client)
        assert report.overall_mean == 1
        assert report.riddle_count == len(riddles)
        # only single-answer riddles may look like overcommitment under echo
        expected_single = sum(1 for r in riddles if len(answer_set(tk6, r).answers) == 1)
        assert expected_single < len(riddles)
        assert report.overcommitment_rate == Fraction(expected_single, len(riddles))

    def test_empty_responses_zero_coverage(self, tk6, tk6_batch):
        client = MockSolver(tk6_batch, {})
        report = run_case_study(tk6, tk6_batch, client)
        assert report.overall_mean == 0

    def test_intended_only_coverage_matches_reciprocal_mean(self, tk6, tk6_batch):
        client = MockSolver(tk6_batch, {r.id: r.intended for r in tk6_batch})
        report = run_case_study(tk6, tk6_batch, client)
        expected = sum(
            (Fraction(1, len(answer_set(tk6, r).answers)) for r in tk6_batch), Fraction(0)
        ) / len(tk6_batch)
        assert report.overall_mean == expected

    def test_audit_is_a_replayable_fixture(self, tk6, tk6_batch, tmp_path):
        audit = tmp_path / "audit.json"
        client = MockSolver(tk6_batch, echo_script(tk6, tk6_batch))
        live_report = run_case_study(tk6, tk6_batch, client, audit_path=audit)
        records = load_fixture(audit)
        assert len(records) == len(tk6_batch)
        replay = run_case_study(tk6, tk6_batch, RecordedSolver(records))
        assert render_report(replay) == render_report(live_report)

    def test_recorded_fixture_mismatch(self, tk6, tk6_batch):
        client = RecordedSolver([{"riddle_id": "x", "prompt": "nope", "response": ""}])
        with pytest.raises(FixtureMismatch):
            run_case_study(tk6, tk6_batch, client)

    def test_report_rendering_stable(self, tk6, tk6_batch):
        client = MockSolver(tk6_batch, echo_script(tk6, tk6_batch))
        report = run_case_study(tk6, tk6_batch, client)
        assert render_report(report) == render_report(report)
        assert "overall mean coverage" in render_report(report)


class TestLiveSolver:
    def test_unconfigured_url_rejected(self):
        with pytest.raises(SolverUnavailable):
            LiveSolver("")

    def test_unreachable_endpoint_raises(self):
        client = LiveSolver("http://127.0.0.1:1/complete", timeout=0.2, retries=0)
        with pytest.raises(SolverUnavailable):
            client.complete("hello")

    def test_mid_run_failure_persists_partial_audit(self, tk6, tk6_batch, tmp_path):
        class FlakySolver(LiveSolver):
            def __init__(self):
                super().__init__("http://example.invalid")
                self.calls = 0

            def complete(self, prompt):
                self.calls += 1
                if self.calls > 3:
                    raise SolverUnavailable("boom")
                return ""

        audit = tmp_path / "partial.json"
        with pytest.raises(SolverUnavailable) as err:
            run_case_study(tk6, tk6_batch, FlakySolver(), audit_path=audit)
        assert len(err.value.partial_audit) == 3
        assert len(json.loads(audit.read_text())) == 3
