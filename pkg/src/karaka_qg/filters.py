"""Surface and syntactic pruning of overgenerated question candidates.

Filters run in a fixed order and only ever drop candidates, never repair
them. A dropped candidate records the first filter that rejected it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from .morphology import (
    DEFAULT_MARKERS,
    MarkerTable,
    case_of,
    interrogative_spans,
    is_interrogative_form,
    verb_gender,
    verb_number,
)
from .rule_engine import QuestionCandidate, RuleId
from .treebank_io import ParsedSentence


class FilterId(str, Enum):
    F_ANAPHORA = "F_ANAPHORA"
    F_GENDER_AGREEMENT = "F_GENDER_AGREEMENT"
    F_WORD_ORDER = "F_WORD_ORDER"
    F_ALREADY_QUESTION = "F_ALREADY_QUESTION"
    F_COMPLEX_COMPOUND = "F_COMPLEX_COMPOUND"


FILTER_ORDER = tuple(FilterId)

DEFAULT_PRONOUN_TAGS = frozenset({"PRON", "PRP"})


class FilterError(ValueError):
    """Raised when candidates cannot be matched to their source sentences."""


@dataclass(frozen=True)
class FilterConfig:
    theta: int = 5
    pronoun_pos_tags: frozenset = DEFAULT_PRONOUN_TAGS
    enabled: frozenset = frozenset(FilterId)
    markers: MarkerTable = DEFAULT_MARKERS

    def __post_init__(self):
        if self.theta < 1:
            raise ValueError(f"theta must be >= 1, got {self.theta}")


@dataclass(frozen=True)
class FilterVerdict:
    candidate_id: str
    kept: bool
    dropped_by: FilterId | None = None
    detail: str = ""

    def to_json_dict(self) -> dict:
        return {
            "candidate_id": self.candidate_id,
            "kept": self.kept,
            "dropped_by": self.dropped_by.value if self.dropped_by else None,
            "detail": self.detail,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "FilterVerdict":
        dropped = d.get("dropped_by")
        return cls(
            candidate_id=d["candidate_id"],
            kept=d["kept"],
            dropped_by=FilterId(dropped) if dropped else None,
            detail=d.get("detail", ""),
        )


def _kept(c: QuestionCandidate) -> FilterVerdict:
    return FilterVerdict(c.candidate_id, True)


def _dropped(c: QuestionCandidate, fid: FilterId, detail: str) -> FilterVerdict:
    return FilterVerdict(c.candidate_id, False, fid, detail)


def filter_anaphora(c: QuestionCandidate, s: ParsedSentence, cfg: FilterConfig) -> FilterVerdict:
    """Drop candidates that still contain a non-interrogative pronoun."""
    candidate_forms = set(c.tokens)
    for t in s.tokens:
        if (t.upos in cfg.pronoun_pos_tags
                and t.form in candidate_forms
                and not is_interrogative_form(t.form, cfg.markers)):
            return _dropped(c, FilterId.F_ANAPHORA,
                            f"retained pronoun {t.form!r} leaves the answer ambiguous")
    return _kept(c)


def filter_gender_agreement(c: QuestionCandidate, s: ParsedSentence, cfg: FilterConfig) -> FilterVerdict:
    """Drop candidates whose verb agreement clashes with the interrogative.

    kya is masculine, so substituting it for the object of a feminine
    verb group with an oblique subject breaks agreement. Likewise a
    replaced subject leaves an intransitive verb stranded in feminine or
    plural form, where the question would need masculine singular.
    """
    verb = s.main_verb()
    gender = verb_gender(s, verb.id)
    if gender is None:
        return _kept(c)
    if c.rule is RuleId.R_K2 and c.interrogative == "kya" and gender == "Fem":
        subject = next((t for t in s.children(verb.id) if t.deprel == "k1"), None)
        if subject is not None and case_of(s, subject.id, cfg.markers).is_oblique:
            return _dropped(c, FilterId.F_GENDER_AGREEMENT,
                            "kya is masculine but the verb group agrees feminine")
    if c.rule is RuleId.R_K1:
        transitive = any(t.deprel == "k2" for t in s.children(verb.id))
        if not transitive and (gender == "Fem" or verb_number(s, verb.id) == "Plur"):
            return _dropped(c, FilterId.F_GENDER_AGREEMENT,
                            "subject replaced but the verb is not masculine singular")
    return _kept(c)


def filter_word_order(c: QuestionCandidate, s: ParsedSentence, cfg: FilterConfig) -> FilterVerdict:
    """Drop candidates whose interrogative lands after the main verb."""
    forms = list(c.tokens)
    verb_form = s.main_verb().form
    if verb_form not in forms:
        return _kept(c)
    verb_index = forms.index(verb_form)
    spans = interrogative_spans(forms, cfg.markers)
    if not spans:
        return _kept(c)
    inserted = c.interrogative.split(" ")
    span = next((sp for sp in spans if forms[sp[0]:sp[1]] == inserted), spans[0])
    if span[0] > verb_index:
        return _dropped(c, FilterId.F_WORD_ORDER,
                        f"interrogative at position {span[0] + 1} follows the verb "
                        f"at position {verb_index + 1}")
    return _kept(c)


def filter_already_question(c: QuestionCandidate, s: ParsedSentence, cfg: FilterConfig) -> FilterVerdict:
    """Drop candidates built from questions or carrying two interrogatives."""
    source_spans = interrogative_spans([t.form for t in s.tokens], cfg.markers)
    if source_spans:
        start = source_spans[0][0]
        return _dropped(c, FilterId.F_ALREADY_QUESTION,
                        f"source sentence already contains an interrogative "
                        f"at position {start + 1}")
    spans = interrogative_spans(list(c.tokens), cfg.markers)
    if len(spans) >= 2:
        return _dropped(c, FilterId.F_ALREADY_QUESTION,
                        f"candidate contains {len(spans)} interrogative spans")
    return _kept(c)


def filter_complex(c: QuestionCandidate, s: ParsedSentence, cfg: FilterConfig) -> FilterVerdict:
    """Drop candidates from conjunct sentences too long on either side."""
    n = len(s.tokens)
    for index, t in enumerate(s.tokens):
        if t.deprel == "coof":
            before = index
            after = n - index - 1
            if before > cfg.theta or after > cfg.theta:
                return _dropped(c, FilterId.F_COMPLEX_COMPOUND,
                                f"conjunct at position {index + 1} splits the sentence "
                                f"into {before}+{after} tokens, past theta={cfg.theta}")
    return _kept(c)


FILTER_FUNCTIONS = {
    FilterId.F_ANAPHORA: filter_anaphora,
    FilterId.F_GENDER_AGREEMENT: filter_gender_agreement,
    FilterId.F_WORD_ORDER: filter_word_order,
    FilterId.F_ALREADY_QUESTION: filter_already_question,
    FilterId.F_COMPLEX_COMPOUND: filter_complex,
}


def run_filters(candidates, sentences, cfg: FilterConfig = FilterConfig()):
    """Apply enabled filters in order; the first failure decides.

    Returns (kept_candidates, verdicts). Verdicts cover every input
    candidate and kept candidates preserve the input order.
    """
    by_id = {s.sentence_id: s for s in sentences}
    kept: list[QuestionCandidate] = []
    verdicts: list[FilterVerdict] = []
    for c in candidates:
        source = by_id.get(c.sentence_id)
        if source is None:
            raise FilterError(
                f"candidate {c.candidate_id}: unknown sentence_id {c.sentence_id!r}"
            )
        verdict = None
        for fid in FILTER_ORDER:
            if fid not in cfg.enabled:
                continue
            result = FILTER_FUNCTIONS[fid](c, source, cfg)
            if not result.kept:
                verdict = result
                break
        if verdict is None:
            verdict = _kept(c)
            kept.append(c)
        verdicts.append(verdict)
    return kept, verdicts


def write_verdicts_jsonl(verdicts, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for v in verdicts:
            fh.write(json.dumps(v.to_json_dict(), ensure_ascii=False) + "\n")


def read_verdicts_jsonl(path) -> list[FilterVerdict]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(FilterVerdict.from_json_dict(json.loads(line)))
    return out
