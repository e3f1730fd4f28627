"""Tests for candidate generation mechanics shared by all rules."""

import logging

import pytest

from helpers import make_lexicon, make_sentence, texts
from karaka_qg.lexicon import SemanticLexicon
from karaka_qg.morphology import DEFAULT_MARKERS
from karaka_qg.rule_engine import (
    RULE_FUNCTIONS,
    QuestionCandidate,
    RuleId,
    gen_k1,
    gen_k2,
    gen_k2p,
    gen_k5,
    gen_k7s,
    gen_k7t,
    gen_r6,
    gen_r6_nonliving,
    gen_rh,
    gen_rt,
    generate_all,
    read_candidates_jsonl,
    write_candidates_jsonl,
)

M = DEFAULT_MARKERS
EMPTY = SemanticLexicon()


def goal_sentence(sentence_id="t001"):
    return make_sentence([
        ("raam", "raam", "PROPN", "_", 3, "k1"),
        ("ghar", "ghar", "NOUN", "_", 3, "k2p"),
        ("gaya", "ja", "VERB", "_", 0, "root"),
        ("।", "।", "PUNCT", "_", 3, "punct"),
    ], sentence_id)


def test_candidate_ids_count_variants_within_target():
    cands = gen_k2p(goal_sentence(), EMPTY, M)
    assert [c.candidate_id for c in cands] == ["t001:R_K2P:2:0", "t001:R_K2P:2:1"]
    assert {c.variation_group for c in cands} == {"t001:R_K2P:2:g0"}
    assert texts(cands) == ["raam kidhar gaya ?", "raam kahan gaya ?"]


def test_two_targets_get_separate_groups():
    s = make_sentence([
        ("raam", "raam", "PROPN", "_", 5, "k1"),
        ("ghar", "ghar", "NOUN", "_", 5, "k2p"),
        ("aur", "aur", "CCONJ", "_", 4, "cc"),
        ("bazar", "bazar", "NOUN", "_", 5, "k2p"),
        ("gaya", "ja", "VERB", "_", 0, "root"),
    ])
    cands = gen_k2p(s, EMPTY, M)
    assert len(cands) == 4
    groups = {c.variation_group for c in cands}
    assert groups == {"t001:R_K2P:2:g0", "t001:R_K2P:4:g0"}
    target_ids = {c.target_token_id for c in cands}
    assert target_ids == {2, 4}


def test_terminal_punctuation_replaced_by_question_mark():
    for cand in gen_k2p(goal_sentence(), EMPTY, M):
        assert cand.tokens[-1] == "?"
        assert "।" not in cand.tokens


def test_whole_chunk_leaves_with_its_head():
    s = make_sentence([
        ("raam", "raam", "PROPN", "_", 6, "k1"),
        ("ne", "ne", "ADP", "_", 1, "psp"),
        ("apna", "apna", "DET", "_", 4, "mod"),
        ("ghar", "ghar", "NOUN", "_", 6, "k2"),
        ("ko", "ko", "ADP", "_", 4, "psp"),
        ("becha", "bech", "VERB", "_", 0, "root"),
    ])
    cands = gen_k2(s, EMPTY, M)
    assert texts(cands) == ["raam ne kisko becha ?"]


def test_unknown_copula_complement_emits_both_readings_in_one_group():
    s = make_sentence([
        ("raam", "raam", "PROPN", "_", 3, "k1"),
        ("pahalvaan", "pahalvaan", "NOUN", "_", 3, "k1s"),
        ("hai", "hai", "VERB", "_", 0, "root"),
    ])
    cands = generate_all(s, EMPTY, M, enabled={RuleId.R_K1S})
    assert texts(cands) == ["raam kaun hai ?", "raam kaisa hai ?"]
    assert len({c.variation_group for c in cands}) == 1
    assert all("unknown" in " ".join(c.notes) for c in cands)


def test_unknown_purpose_emits_distinct_meaning_groups():
    s = make_sentence([
        ("raam", "raam", "PROPN", "_", 4, "k1"),
        ("ne", "ne", "ADP", "_", 1, "psp"),
        ("inaam", "inaam", "NOUN", "_", 4, "rt"),
        ("likha", "likh", "VERB", "_", 0, "root"),
    ])
    cands = gen_rt(s, EMPTY, M)
    assert [c.interrogative for c in cands] == ["kiske liye", "kyon"]
    assert cands[0].variation_group == "t001:R_RT:3:g0"
    assert cands[1].variation_group == "t001:R_RT:3:g1"


def test_unknown_possessed_noun_does_not_trigger_agreement_mutation():
    s = make_sentence([
        ("mohan", "mohan", "PROPN", "_", 3, "r6"),
        ("ka", "ka", "ADP", "_", 1, "psp"),
        ("saamaan", "saamaan", "NOUN", "_", 4, "k1"),
        ("ja", "ja", "VERB", "_", 0, "root"),
        ("raha", "rah", "AUX", "_", 4, "aux"),
    ])
    assert gen_r6_nonliving(s, EMPTY, M) == []
    lex = make_lexicon(saamaan="NONLIVING")
    cands = gen_r6_nonliving(s, lex, M)
    assert texts(cands) == ["mohan ki kaun si vastu ja rahi ?"]
    assert cands[0].karaka == "r6"
    assert cands[0].interrogative == "kaun si"


def test_possessor_question_keeps_possessed_noun():
    s = make_sentence([
        ("mohan", "mohan", "PROPN", "_", 3, "r6"),
        ("ka", "ka", "ADP", "_", 1, "psp"),
        ("saamaan", "saamaan", "NOUN", "_", 4, "k1"),
        ("kho", "kho", "VERB", "_", 0, "root"),
        ("gaya", "ja", "AUX", "_", 4, "aux"),
    ])
    cands = gen_r6(s, EMPTY, M)
    assert texts(cands) == ["kiska saamaan kho gaya ?"]


def test_possessor_without_genitive_marker_is_skipped(caplog):
    s = make_sentence([
        ("mohan", "mohan", "PROPN", "_", 2, "r6"),
        ("saamaan", "saamaan", "NOUN", "_", 3, "k1"),
        ("kho", "kho", "VERB", "_", 0, "root"),
    ])
    with caplog.at_level(logging.INFO, logger="karaka_qg.rule_engine"):
        assert gen_r6(s, EMPTY, M) == []
    assert "lacks a genitive marker" in caplog.text


def test_reason_clause_subtree_removed_and_kyon_preverbal():
    s = make_sentence([
        ("raam", "raam", "PROPN", "_", 4, "k1"),
        ("ne", "ne", "ADP", "_", 1, "psp"),
        ("kaam", "kaam", "NOUN", "_", 4, "k2"),
        ("kiya", "kar", "VERB", "_", 0, "root"),
        ("kyunki", "kyunki", "SCONJ", "_", 4, "rh"),
        ("paisa", "paisa", "NOUN", "_", 7, "k2"),
        ("chahiye", "chahiye", "VERB", "_", 5, "ccof"),
        ("tha", "tha", "AUX", "_", 7, "aux"),
    ])
    cands = gen_rh(s, EMPTY, M)
    assert texts(cands) == ["raam ne kaam kyon kiya ?"]
    assert cands[0].karaka == "rh"
    assert cands[0].target_token_id == 5


def test_place_source_retains_marker():
    s = make_sentence([
        ("chor", "chor", "NOUN", "_", 4, "k1"),
        ("ghar", "ghar", "NOUN", "_", 4, "k5"),
        ("se", "se", "ADP", "_", 2, "psp"),
        ("bhaagaa", "bhaag", "VERB", "_", 0, "root"),
    ])
    cands = gen_k5(s, make_lexicon(ghar="PLACE"), M)
    assert texts(cands) == ["chor kahan se bhaagaa ?", "chor kidhar se bhaagaa ?"]
    assert len({c.variation_group for c in cands}) == 1


def test_unknown_source_splits_person_and_place_groups():
    s = make_sentence([
        ("chor", "chor", "NOUN", "_", 4, "k1"),
        ("mandir", "mandir", "NOUN", "_", 4, "k5"),
        ("se", "se", "ADP", "_", 2, "psp"),
        ("bhaagaa", "bhaag", "VERB", "_", 0, "root"),
    ])
    cands = gen_k5(s, EMPTY, M)
    assert texts(cands) == [
        "chor kisse bhaagaa ?",
        "chor kahan se bhaagaa ?",
        "chor kidhar se bhaagaa ?",
    ]
    assert cands[0].variation_group.endswith(":g0")
    assert cands[1].variation_group.endswith(":g1")
    assert cands[2].variation_group.endswith(":g1")
    assert all(c.notes for c in cands)


def test_non_ergative_agent_marker_skipped(caplog):
    s = make_sentence([
        ("raam", "raam", "PROPN", "_", 3, "k1"),
        ("se", "se", "ADP", "_", 1, "psp"),
        ("gaya", "ja", "VERB", "_", 0, "root"),
    ])
    with caplog.at_level(logging.INFO, logger="karaka_qg.rule_engine"):
        assert gen_k1(s, EMPTY, M) == []
    assert "non-ergative marker" in caplog.text


def test_unexpected_patient_marker_skipped(caplog):
    s = make_sentence([
        ("raam", "raam", "PROPN", "_", 4, "k1"),
        ("chaku", "chaku", "NOUN", "_", 4, "k2"),
        ("se", "se", "ADP", "_", 2, "psp"),
        ("kata", "kat", "VERB", "_", 0, "root"),
    ])
    with caplog.at_level(logging.INFO, logger="karaka_qg.rule_engine"):
        assert gen_k2(s, EMPTY, M) == []
    assert "unexpected marker" in caplog.text


def test_alias_locative_label_routed_with_note():
    s = make_sentence([
        ("kitaab", "kitaab", "NOUN", "_", 4, "k1"),
        ("mez", "mez", "NOUN", "_", 4, "k7p"),
        ("par", "par", "ADP", "_", 2, "psp"),
        ("hai", "hai", "VERB", "_", 0, "root"),
    ])
    cands = gen_k7s(s, EMPTY, M)
    assert [c.interrogative for c in cands] == ["kahan", "kidhar", "kis par"]
    assert all(c.karaka == "k7p" for c in cands)
    assert all(c.rule is RuleId.R_K7S for c in cands)
    assert all("routed" in " ".join(c.notes) for c in cands)


def test_known_non_date_temporal_asks_kab_only():
    s = make_sentence([
        ("raam", "raam", "PROPN", "_", 3, "k1"),
        ("subah", "subah", "NOUN", "_", 3, "k7t"),
        ("gaya", "ja", "VERB", "_", 0, "root"),
    ])
    cands = gen_k7t(s, make_lexicon(subah="PROPERTY"), M)
    assert [c.interrogative for c in cands] == ["kab"]
    cands = gen_k7t(s, make_lexicon(subah="DATE"), M)
    assert [c.interrogative for c in cands] == ["kab", "kis din", "konse din"]
    assert len({c.variation_group for c in cands}) == 1


def test_generate_all_respects_enabled_subset():
    s = goal_sentence()
    only_agents = generate_all(s, EMPTY, M, enabled={RuleId.R_K1})
    assert [c.rule for c in only_agents] == [RuleId.R_K1]
    everything = generate_all(s, EMPTY, M)
    assert {c.rule for c in everything} == {RuleId.R_K1, RuleId.R_K2P}


def test_rule_order_is_fixed():
    assert [rule for rule, _ in RULE_FUNCTIONS] == list(RuleId)


def test_candidates_jsonl_round_trip(tmp_path):
    s = goal_sentence()
    cands = generate_all(s, EMPTY, M)
    path = tmp_path / "candidates.jsonl"
    write_candidates_jsonl(cands, path)
    loaded = read_candidates_jsonl(path)
    assert loaded == cands
    assert all(isinstance(c, QuestionCandidate) for c in loaded)
    first = path.read_text(encoding="utf-8").splitlines()[0]
    assert first.startswith('{"candidate_id":')
