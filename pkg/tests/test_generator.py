import random
import re

import pytest

from riddlekit.errors import EmptyProfile, MissingTemplate, UnknownConcept
from riddlekit.generator import (
    EXACT,
    GENRE_ORDER,
    RELAXED,
    AttributePredicate,
    Genre,
    GeneratorConfig,
    StyleLexicon,
    derive_seed,
    dump_riddle,
    generate_batch,
    generate_riddle,
    make_predicate,
    realize_clue,
    riddle_from_dict,
    riddle_to_dict,
    select_attributes,
)
from riddlekit.semantics import AttributeCategory, SemanticAttribute, build_profile
from riddlekit.validator import satisfies


@pytest.fixture(scope="module")
def config():
    return GeneratorConfig()


class TestSelectAttributes:
    def test_descriptive_spoon_favors_function_and_appearance(self, tk6, config):
        profile = build_profile(tk6, "spoon")
        attrs = select_attributes(tk6, profile, Genre.DESCRIPTIVE, config, random.Random(42))
        assert len(attrs) == 3
        assert len(set(attrs)) == 3
        functional_or_perceptual = [
            a
            for a in attrs
            if a.category in (AttributeCategory.FUNCTIONAL, AttributeCategory.PERCEPTUAL)
        ]
        assert len(functional_or_perceptual) >= 2

    def test_small_profile_caps_selection(self, tk6, config):
        profile = build_profile(tk6, "river")
        attrs = select_attributes(tk6, profile, Genre.POETIC, config, random.Random(1))
        assert len(attrs) == 2

    def test_empty_profile_rejected(self, tk6, config):
        profile = build_profile(tk6, "spoon")
        empty = type(profile)(
            concept="spoon", by_category={c: frozenset() for c in profile.by_category}
        )
        with pytest.raises(EmptyProfile):
            select_attributes(tk6, empty, Genre.POETIC, config, random.Random(0))

    def test_deterministic_for_same_seed(self, tk6, config):
        profile = build_profile(tk6, "spoon")
        for genre in GENRE_ORDER:
            first = select_attributes(tk6, profile, genre, config, random.Random(5))
            second = select_attributes(tk6, profile, genre, config, random.Random(5))
            assert first == second


class TestMakePredicate:
    def test_descriptive_always_exact(self):
        attr = SemanticAttribute("used-for", "scooping")
        predicate = make_predicate(attr, Genre.DESCRIPTIVE, 0)
        assert predicate == AttributePredicate.exact("used-for", "scooping")

    def test_poetic_always_relaxed(self):
        attr = SemanticAttribute("used-for", "scooping")
        predicate = make_predicate(attr, Genre.POETIC, 0)
        assert predicate == AttributePredicate.relaxed("scooping")

    def test_humorous_relaxes_after_opening(self):
        attr = SemanticAttribute("has-property", "shiny")
        assert make_predicate(attr, Genre.HUMOROUS, 0).mode == EXACT
        assert make_predicate(attr, Genre.HUMOROUS, 2) == AttributePredicate.relaxed("shiny")

    @pytest.mark.parametrize("genre", GENRE_ORDER)
    @pytest.mark.parametrize("position", [0, 1, 2])
    def test_mode_table(self, genre, position):
        attr = SemanticAttribute("capable-of", "flowing")
        mode = make_predicate(attr, genre, position).mode
        if genre is Genre.DESCRIPTIVE:
            assert mode == EXACT
        elif genre in (Genre.METAPHORICAL, Genre.POETIC):
            assert mode == RELAXED
        else:
            assert mode == (EXACT if position == 0 else RELAXED)


class TestRealizeClue:
    def test_property_slot_filled(self, config):
        attr = SemanticAttribute("used-for", "scooping")
        surface = realize_clue(attr, Genre.DESCRIPTIVE, config.lexicon, random.Random(3))
        assert "scooping" in surface
        assert "{" not in surface

    def test_deterministic(self, config):
        attr = SemanticAttribute("used-for", "scooping")
        first = realize_clue(attr, Genre.HUMOROUS, config.lexicon, random.Random(11))
        second = realize_clue(attr, Genre.HUMOROUS, config.lexicon, random.Random(11))
        assert first == second

    def test_missing_template(self):
        lexicon = StyleLexicon(
            {(Genre.POETIC, AttributeCategory.FUNCTIONAL): ["Serving {property}."]}
        )
        attr = SemanticAttribute("is-a", "utensil")
        with pytest.raises(MissingTemplate):
            realize_clue(attr, Genre.POETIC, lexicon, random.Random(0))

    def test_avoid_filters_leaky_templates(self):
        lexicon = StyleLexicon(
            {
                (Genre.POETIC, AttributeCategory.FUNCTIONAL): [
                    "A spoon would envy my {property}.",
                    "Known only for {property}.",
                ]
            }
        )
        attr = SemanticAttribute("used-for", "scooping")
        for seed in range(8):
            surface = realize_clue(attr, Genre.POETIC, lexicon, random.Random(seed), avoid="spoon")
            assert surface == "Known only for scooping."


class TestGenerateRiddle:
    def test_descriptive_spoon(self, tk6, config):
        riddle = generate_riddle(tk6, "spoon", Genre.DESCRIPTIVE, config, 7)
        assert riddle.intended == "spoon"
        assert len(riddle.clues) == 3
        assert all(c.predicate.mode == EXACT for c in riddle.clues)

    def test_poetic_river_capped_and_relaxed(self, tk6, config):
        riddle = generate_riddle(tk6, "river", Genre.POETIC, config, 7)
        assert len(riddle.clues) == 2
        assert all(c.predicate.mode == RELAXED for c in riddle.clues)

    def test_unknown_concept(self, tk6, config):
        with pytest.raises(UnknownConcept):
            generate_riddle(tk6, "unicorn", Genre.POETIC, config, 7)

    def test_intended_satisfies_every_clue(self, tk6, config):
        for genre in GENRE_ORDER:
            for concept in tk6.concepts():
                riddle = generate_riddle(tk6, concept, genre, config, 13)
                for clue in riddle.clues:
                    assert satisfies(tk6, concept, clue.predicate)

    def test_no_leak_and_distinct_sources(self, kb60, config):
        for genre in GENRE_ORDER:
            for concept in kb60.concepts():
                riddle = generate_riddle(kb60, concept, genre, config, 31)
                sources = [(c.source.relation, c.source.property) for c in riddle.clues]
                assert len(sources) == len(set(sources))
                for clue in riddle.clues:
                    assert not re.search(rf"\b{re.escape(concept)}\b", clue.surface)

    def test_clue_count_override(self, tk6):
        config = GeneratorConfig(clue_count=2)
        riddle = generate_riddle(tk6, "spoon", Genre.DESCRIPTIVE, config, 7)
        assert len(riddle.clues) == 2


class TestGenerateBatch:
    def test_full_cross_product(self, tk6, config):
        batch = generate_batch(tk6, tk6.concepts(), GENRE_ORDER, config, 99)
        assert len(batch.riddles) == 30
        assert batch.skipped == ()

    def test_deterministic(self, tk6, config):
        first = generate_batch(tk6, tk6.concepts(), GENRE_ORDER, config, 99)
        second = generate_batch(tk6, tk6.concepts(), GENRE_ORDER, config, 99)
        assert [dump_riddle(r) for r in first.riddles] == [dump_riddle(r) for r in second.riddles]

    def test_single_pair(self, tk6, config):
        batch = generate_batch(tk6, ["spoon"], [Genre.DESCRIPTIVE], config, 0)
        assert len(batch.riddles) == 1

    def test_bad_pairs_reported_not_fatal(self, tk6, config):
        batch = generate_batch(tk6, ["spoon", "unicorn"], [Genre.DESCRIPTIVE], config, 0)
        assert len(batch.riddles) == 1
        assert len(batch.skipped) == 1
        concept, genre, reason = batch.skipped[0]
        assert concept == "unicorn"
        assert "unicorn" in reason

    def test_per_riddle_seeds_are_stable_hashes(self, tk6, config):
        batch = generate_batch(tk6, ["spoon"], [Genre.POETIC], config, 12345)
        assert batch.riddles[0].seed == derive_seed(12345, "spoon", Genre.POETIC)


class TestSerialization:
    def test_round_trip(self, tk6, config):
        for genre in GENRE_ORDER:
            riddle = generate_riddle(tk6, "spoon", genre, config, 21)
            assert riddle_from_dict(riddle_to_dict(riddle)) == riddle

    def test_wire_shape(self, tk6, config):
        raw = riddle_to_dict(generate_riddle(tk6, "bridge", Genre.HUMOROUS, config, 4))
        assert set(raw) == {"id", "intended", "genre", "seed", "clues"}
        first = raw["clues"][0]
        assert first["predicate"]["mode"] == EXACT
        assert "relation" in first["predicate"]
        relaxed = raw["clues"][1]["predicate"]
        assert relaxed["mode"] == RELAXED
        assert "relation" not in relaxed


def test_default_lexicon_covers_all_pairs(config):
    for genre in GENRE_ORDER:
        for category in AttributeCategory:
            assert config.lexicon.templates_for(genre, category)


def test_lexicon_templates_never_name_bundled_concepts(config, tk6, kb60):
    # Template wording must not collide with any bundled concept, or the
    # no-leak invariant could fail at generation time.
    names = set(tk6.concepts()) | set(kb60.concepts())
    for genre in GENRE_ORDER:
        for category in AttributeCategory:
            for template in config.lexicon.templates_for(genre, category):
                for name in names:
                    assert not re.search(rf"\b{re.escape(name)}\b", template), (
                        template,
                        name,
                    )


def test_weights_must_sum_positive():
    zeroed = {g: {c: 0 for c in AttributeCategory} for g in GENRE_ORDER}
    with pytest.raises(ValueError):
        GeneratorConfig(weights=zeroed)
