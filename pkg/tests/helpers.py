"""Shared builders for the test suite."""

from importlib.resources import files

from karaka_qg.lexicon import SemanticCategory, SemanticLexicon
from karaka_qg.treebank_io import ParsedSentence, loads_treebank


def make_sentence(rows, sentence_id="t001") -> ParsedSentence:
    """Build one sentence from (form, lemma, upos, feats, head, deprel) rows.

    Token ids are assigned 1..n in row order, so rows can reference each
    other by position.
    """
    lines = [f"# sent_id = {sentence_id}"]
    for token_id, (form, lemma, upos, feats, head, deprel) in enumerate(rows, start=1):
        lines.append(f"{token_id}\t{form}\t{lemma}\t{upos}\t{feats}\t{head}\t{deprel}")
    return loads_treebank("\n".join(lines) + "\n")[0]


def make_lexicon(**categories) -> SemanticLexicon:
    """Build a lexicon from lemma=CATEGORY keyword pairs."""
    entries = {lemma: SemanticCategory(cat) for lemma, cat in categories.items()}
    return SemanticLexicon(entries, source_name="test")


def write_ratings(path, rows) -> None:
    """Write a ratings CSV; rows are (candidate_id, annotator_id, syntax, semantic)."""
    lines = ["candidate_id,annotator_id,syntax,semantic"]
    for candidate_id, annotator_id, syntax, semantic in rows:
        lines.append(f"{candidate_id},{annotator_id},{syntax},{semantic}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def bundled_corpus_text() -> str:
    """Return the packaged demonstration corpus as treebank text."""
    return (files("karaka_qg.data") / "corpus_synthetic_30.conllu").read_text("utf-8")


def load_bundled_corpus() -> list:
    return loads_treebank(bundled_corpus_text(), source="corpus_synthetic_30.conllu")


def texts(candidates) -> list:
    return [c.text for c in candidates]


def make_rated_candidate(candidate_id, karaka):
    """A minimal candidate carrying only what aggregation reads."""
    from karaka_qg.rule_engine import QuestionCandidate, RuleId

    return QuestionCandidate(
        candidate_id=candidate_id,
        sentence_id=candidate_id.split(":")[0],
        rule=RuleId.R_K1,
        karaka=karaka,
        interrogative="kaun",
        tokens=("kaun", "gaya", "?"),
        variation_group=candidate_id + ":g0",
        target_token_id=1,
    )
