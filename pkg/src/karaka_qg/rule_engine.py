"""Question generation by interrogative substitution.

Each rule targets one karaka relation on the main verb (the possessive
rules look at any noun's possessor) and swaps the target chunk for an
interrogative. A chunk is the target token plus its whole subtree, so
modifiers and postpositions leave with their head. The sentence is
otherwise copied verbatim, terminal punctuation is dropped, and a "?"
token is appended.

Rules deliberately overgenerate: when the semantic lexicon cannot decide
between readings, every plausible variant is emitted and the surface
filters deal with the fallout later. Candidates that are free variants
of one another (same meaning, different interrogative) share a
variation_group; variants with different meanings get distinct groups.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from enum import Enum

from .lexicon import SemanticCategory, SemanticLexicon
from .morphology import (
    DEFAULT_MARKERS,
    MarkerTable,
    case_marker_tokens,
    case_of,
    genitive_interrogative,
)
from .treebank_io import ParsedSentence, Token

log = logging.getLogger(__name__)

# Terminal punctuation replaced by the appended question mark.
TERMINAL_PUNCT = {"।", ".", "|"}


class RuleId(str, Enum):
    R_K1 = "R_K1"
    R_K1S = "R_K1S"
    R_K2 = "R_K2"
    R_K2P = "R_K2P"
    R_K3 = "R_K3"
    R_RT = "R_RT"
    R_RH = "R_RH"
    R_K5 = "R_K5"
    R_R6 = "R_R6"
    R_R6_NONLIVING = "R_R6_NONLIVING"
    R_K7S = "R_K7S"
    R_K7T = "R_K7T"


@dataclass(frozen=True)
class QuestionCandidate:
    candidate_id: str
    sentence_id: str
    rule: RuleId
    karaka: str
    interrogative: str
    tokens: tuple[str, ...]
    variation_group: str
    target_token_id: int
    notes: tuple[str, ...] = ()

    @property
    def text(self) -> str:
        return " ".join(self.tokens)

    def to_json_dict(self) -> dict:
        return {
            "candidate_id": self.candidate_id,
            "sentence_id": self.sentence_id,
            "rule": self.rule.value,
            "karaka": self.karaka,
            "interrogative": self.interrogative,
            "tokens": list(self.tokens),
            "variation_group": self.variation_group,
            "target_token_id": self.target_token_id,
            "notes": list(self.notes),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "QuestionCandidate":
        return cls(
            candidate_id=d["candidate_id"],
            sentence_id=d["sentence_id"],
            rule=RuleId(d["rule"]),
            karaka=d["karaka"],
            interrogative=d["interrogative"],
            tokens=tuple(d["tokens"]),
            variation_group=d["variation_group"],
            target_token_id=d["target_token_id"],
            notes=tuple(d.get("notes", ())),
        )


def _build_tokens(s: ParsedSentence, delete_ids: set[int], insert_at: int,
                  insert_forms: list[str], replacements: dict[int, str] | None = None) -> tuple[str, ...]:
    """Copy the sentence, dropping delete_ids and inserting at a token slot.

    insert_forms land immediately before the token with id insert_at,
    which itself is kept or dropped according to delete_ids. Surviving
    tokens listed in replacements change surface form in place.
    """
    out: list[str] = []
    for t in s.tokens:
        if t.id == insert_at:
            out.extend(insert_forms)
        if t.id in delete_ids:
            continue
        if replacements and t.id in replacements:
            out.append(replacements[t.id])
        else:
            out.append(t.form)
    if out and out[-1] in TERMINAL_PUNCT:
        out.pop()
    out.append("?")
    return tuple(out)


class _Emitter:
    """Assigns deterministic candidate ids and variation groups per target."""

    def __init__(self, s: ParsedSentence, rule: RuleId, target: Token):
        self.s = s
        self.rule = rule
        self.target = target
        self.next_index = 0

    def emit(self, karaka: str, interrogative: str, tokens: tuple[str, ...],
             group: int, notes: tuple[str, ...] = ()) -> QuestionCandidate:
        base = f"{self.s.sentence_id}:{self.rule.value}:{self.target.id}"
        cand = QuestionCandidate(
            candidate_id=f"{base}:{self.next_index}",
            sentence_id=self.s.sentence_id,
            rule=self.rule,
            karaka=karaka,
            interrogative=interrogative,
            tokens=tokens,
            variation_group=f"{base}:g{group}",
            target_token_id=self.target.id,
            notes=notes,
        )
        self.next_index += 1
        return cand


def _karaka_targets(s: ParsedSentence, labels: tuple[str, ...]) -> list[Token]:
    verb = s.main_verb()
    return [t for t in s.children(verb.id) if t.deprel in labels]


def _substitute(s: ParsedSentence, target: Token, wh: str) -> tuple[str, ...]:
    """Standard substitution: drop the target chunk, insert the interrogative."""
    return _build_tokens(s, s.subtree_ids(target.id), target.id, wh.split(" "))


UNKNOWN = SemanticCategory.UNKNOWN


def gen_k1(s: ParsedSentence, lex: SemanticLexicon, m: MarkerTable) -> list[QuestionCandidate]:
    """Agent questions. Ergative agents ask kisne, direct ones kaun.

    The case decides alone; a single candidate comes out per agent. An
    agent marked with some other postposition is outside the rule.
    """
    out = []
    for target in _karaka_targets(s, ("k1",)):
        case = case_of(s, target.id, m)
        if case.is_oblique:
            if case.marker not in m.ergative:
                log.info("k1 token %r carries non-ergative marker %r; skipped",
                         target.form, case.marker)
                continue
            wh = "kisne"
        else:
            wh = "kaun"
        emitter = _Emitter(s, RuleId.R_K1, target)
        out.append(emitter.emit("k1", wh, _substitute(s, target, wh), 0))
    return out


def gen_k1s(s: ParsedSentence, lex: SemanticLexicon, m: MarkerTable) -> list[QuestionCandidate]:
    """Copula complement questions: kaun for people, kaisa for properties.

    An unknown complement yields both readings as free variants.
    """
    out = []
    for target in _karaka_targets(s, ("k1s",)):
        cat = lex.lookup(target.lemma)
        notes: tuple[str, ...] = ()
        if cat in (SemanticCategory.HUMAN, SemanticCategory.OCCUPATION):
            variants = ["kaun"]
        elif cat is UNKNOWN:
            variants = ["kaun", "kaisa"]
            notes = (f"category of {target.lemma!r} unknown; emitting all variants",)
        else:
            variants = ["kaisa"]
        emitter = _Emitter(s, RuleId.R_K1S, target)
        for wh in variants:
            out.append(emitter.emit("k1s", wh, _substitute(s, target, wh), 0, notes))
    return out


def gen_k2(s: ParsedSentence, lex: SemanticLexicon, m: MarkerTable) -> list[QuestionCandidate]:
    """Patient questions. ko-marked patients ask kisko, direct ones kya."""
    out = []
    for target in _karaka_targets(s, ("k2",)):
        case = case_of(s, target.id, m)
        if case.is_oblique:
            if case.marker not in m.accusative:
                log.info("k2 token %r carries unexpected marker %r; skipped",
                         target.form, case.marker)
                continue
            wh = "kisko"
        else:
            wh = "kya"
        emitter = _Emitter(s, RuleId.R_K2, target)
        out.append(emitter.emit("k2", wh, _substitute(s, target, wh), 0))
    return out


def gen_k2p(s: ParsedSentence, lex: SemanticLexicon, m: MarkerTable) -> list[QuestionCandidate]:
    """Goal-location questions: kidhar and kahan as free variants."""
    out = []
    for target in _karaka_targets(s, ("k2p",)):
        emitter = _Emitter(s, RuleId.R_K2P, target)
        for wh in ("kidhar", "kahan"):
            out.append(emitter.emit("k2p", wh, _substitute(s, target, wh), 0))
    return out


def gen_k3(s: ParsedSentence, lex: SemanticLexicon, m: MarkerTable) -> list[QuestionCandidate]:
    """Instrument questions for se and ke dwaaraa marked nouns.

    A path instrument additionally licenses the perlative kisse hokar;
    unknown instruments get both readings.
    """
    out = []
    for target in _karaka_targets(s, ("k3",)):
        case = case_of(s, target.id, m)
        if not case.is_oblique:
            continue
        emitter = _Emitter(s, RuleId.R_K3, target)
        if case.marker == "ke dwaaraa":
            out.append(emitter.emit(
                "k3", "kiske dwaaraa", _substitute(s, target, "kiske dwaaraa"), 0))
            continue
        if case.marker != "se":
            continue
        cat = lex.lookup(target.lemma)
        notes: tuple[str, ...] = ()
        if cat is SemanticCategory.PATH:
            variants = ["kisse", "kisse hokar"]
        elif cat is UNKNOWN:
            variants = ["kisse", "kisse hokar"]
            notes = (f"category of {target.lemma!r} unknown; emitting all variants",)
        else:
            variants = ["kisse"]
        for wh in variants:
            out.append(emitter.emit("k3", wh, _substitute(s, target, wh), 0, notes))
    return out


def gen_rt(s: ParsedSentence, lex: SemanticLexicon, m: MarkerTable) -> list[QuestionCandidate]:
    """Purpose questions: kiske liye for human beneficiaries, kyon otherwise.

    The two readings differ in meaning, so an unknown target emits them
    as separate candidates rather than one variation group.
    """
    out = []
    for target in _karaka_targets(s, ("rt",)):
        cat = lex.lookup(target.lemma)
        if cat is SemanticCategory.HUMAN:
            variants = [("kiske liye", 0, ())]
        elif cat is UNKNOWN:
            note = (f"category of {target.lemma!r} unknown; emitting all variants",)
            variants = [("kiske liye", 0, note), ("kyon", 1, note)]
        else:
            variants = [("kyon", 0, ())]
        emitter = _Emitter(s, RuleId.R_RT, target)
        for wh, group, notes in variants:
            out.append(emitter.emit("rt", wh, _substitute(s, target, wh), group, notes))
    return out


def gen_rh(s: ParsedSentence, lex: SemanticLexicon, m: MarkerTable) -> list[QuestionCandidate]:
    """Reason questions: drop the because-clause, ask kyon before the verb.

    The because-term heads its clause, so deleting its subtree removes
    the whole reason; kyon is inserted in the preverbal focus slot, not
    in the deleted clause's position.
    """
    out = []
    verb = s.main_verb()
    for target in s.tokens:
        if target.form not in m.because or target.id == verb.id:
            continue
        tokens = _build_tokens(s, s.subtree_ids(target.id), verb.id, ["kyon"])
        emitter = _Emitter(s, RuleId.R_RH, target)
        out.append(emitter.emit("rh", "kyon", tokens, 0))
    return out


def gen_k5(s: ParsedSentence, lex: SemanticLexicon, m: MarkerTable) -> list[QuestionCandidate]:
    """Source questions for se-marked nouns.

    A place source keeps the marker and asks kahan se / kidhar se; any
    other known source asks kisse. The place pair and kisse differ in
    meaning, so under an unknown category all three come out with the
    pair in its own variation group.
    """
    out = []
    for target in _karaka_targets(s, ("k5",)):
        case = case_of(s, target.id, m)
        if case.marker != "se":
            continue
        marker_ids = {t.id for t in case_marker_tokens(s, target.id, m)}
        keep_marker = s.subtree_ids(target.id) - marker_ids
        cat = lex.lookup(target.lemma)
        emitter = _Emitter(s, RuleId.R_K5, target)
        if cat is SemanticCategory.PLACE:
            variants = [("kahan", 0, False, ()), ("kidhar", 0, False, ())]
        elif cat is UNKNOWN:
            note = (f"category of {target.lemma!r} unknown; emitting all variants",)
            variants = [("kisse", 0, True, note),
                        ("kahan", 1, False, note), ("kidhar", 1, False, note)]
        else:
            variants = [("kisse", 0, True, ())]
        for wh, group, drop_marker, notes in variants:
            delete = s.subtree_ids(target.id) if drop_marker else keep_marker
            tokens = _build_tokens(s, delete, target.id, [wh])
            out.append(emitter.emit("k5", wh, tokens, group, notes))
    return out


def _possessors(s: ParsedSentence) -> list[Token]:
    return [t for t in s.tokens if t.deprel == "r6"]


def gen_r6(s: ParsedSentence, lex: SemanticLexicon, m: MarkerTable) -> list[QuestionCandidate]:
    """Possessor questions: the genitive marker picks kiska/kiske/kiski."""
    out = []
    for target in _possessors(s):
        case = case_of(s, target.id, m)
        if not case.is_oblique or case.marker not in m.genitive:
            log.info("r6 token %r lacks a genitive marker; skipped", target.form)
            continue
        try:
            wh = genitive_interrogative(case.marker)
        except ValueError:
            log.info("no interrogative for genitive marker %r; skipped", case.marker)
            continue
        emitter = _Emitter(s, RuleId.R_R6, target)
        out.append(emitter.emit("r6", wh, _substitute(s, target, wh), 0))
    return out


def gen_r6_nonliving(s: ParsedSentence, lex: SemanticLexicon, m: MarkerTable) -> list[QuestionCandidate]:
    """Possessed-thing questions: replace a nonliving possessed noun.

    "X ka Y" with nonliving Y becomes "X ki kaun si vastu". The inserted
    noun vastu is feminine, so the genitive marker and any progressive
    auxiliaries are forced to their feminine forms. This mutation is only
    safe when the lexicon positively says NONLIVING; an unknown category
    does not trigger it.
    """
    out = []
    verb = s.main_verb()
    for possessor in _possessors(s):
        if possessor.head == 0:
            continue
        target = s.token(possessor.head)
        if lex.lookup(target.lemma) is not SemanticCategory.NONLIVING:
            continue
        marker_tokens = case_marker_tokens(s, possessor.id, m)
        marker = " ".join(t.form for t in marker_tokens)
        if marker not in m.genitive:
            continue
        replacements = {t.id: "ki" for t in marker_tokens}
        group = [verb] + s.children(verb.id)
        for t in group:
            if t.form in ("raha", "rahe"):
                replacements[t.id] = "rahi"
        tokens = _build_tokens(s, {target.id}, target.id, ["kaun", "si", "vastu"], replacements)
        emitter = _Emitter(s, RuleId.R_R6_NONLIVING, target)
        out.append(emitter.emit("r6", "kaun si", tokens, 0))
    return out


def gen_k7s(s: ParsedSentence, lex: SemanticLexicon, m: MarkerTable) -> list[QuestionCandidate]:
    """Spatial locative questions for mein and par marked nouns.

    kahan and kidhar drop the marker; kis mein / kis par re-express it
    inside the interrogative. All three are free variants. Tokens labeled
    k7p have no rule of their own and are routed through this one.
    """
    out = []
    for target in _karaka_targets(s, ("k7s", "k7p")):
        case = case_of(s, target.id, m)
        if case.marker not in ("mein", "par"):
            continue
        notes: tuple[str, ...] = ()
        if target.deprel == "k7p":
            notes = ("k7p token routed through the spatial locative rule",)
        emitter = _Emitter(s, RuleId.R_K7S, target)
        for wh in ("kahan", "kidhar", f"kis {case.marker}"):
            out.append(emitter.emit(target.deprel, wh, _substitute(s, target, wh), 0, notes))
    return out


def gen_k7t(s: ParsedSentence, lex: SemanticLexicon, m: MarkerTable) -> list[QuestionCandidate]:
    """Temporal locative questions.

    kab always applies; a date (or unknown) temporal also licenses the
    day-selecting kis din and konse din, all as free variants.
    """
    out = []
    for target in _karaka_targets(s, ("k7t",)):
        cat = lex.lookup(target.lemma)
        variants = ["kab"]
        notes: tuple[str, ...] = ()
        if cat is SemanticCategory.DATE:
            variants += ["kis din", "konse din"]
        elif cat is UNKNOWN:
            variants += ["kis din", "konse din"]
            notes = (f"category of {target.lemma!r} unknown; emitting all variants",)
        emitter = _Emitter(s, RuleId.R_K7T, target)
        for wh in variants:
            out.append(emitter.emit("k7t", wh, _substitute(s, target, wh), 0, notes))
    return out


RULE_FUNCTIONS = (
    (RuleId.R_K1, gen_k1),
    (RuleId.R_K1S, gen_k1s),
    (RuleId.R_K2, gen_k2),
    (RuleId.R_K2P, gen_k2p),
    (RuleId.R_K3, gen_k3),
    (RuleId.R_RT, gen_rt),
    (RuleId.R_RH, gen_rh),
    (RuleId.R_K5, gen_k5),
    (RuleId.R_R6, gen_r6),
    (RuleId.R_R6_NONLIVING, gen_r6_nonliving),
    (RuleId.R_K7S, gen_k7s),
    (RuleId.R_K7T, gen_k7t),
)


def generate_all(s: ParsedSentence, lex: SemanticLexicon,
                 m: MarkerTable = DEFAULT_MARKERS,
                 enabled: set[RuleId] | None = None) -> list[QuestionCandidate]:
    """Run every enabled rule over one sentence, in fixed rule order."""
    if enabled is None:
        enabled = set(RuleId)
    out: list[QuestionCandidate] = []
    for rule_id, fn in RULE_FUNCTIONS:
        if rule_id in enabled:
            out.extend(fn(s, lex, m))
    return out


def write_candidates_jsonl(candidates, path) -> None:
    """One candidate per line, UTF-8, stable key order."""
    with open(path, "w", encoding="utf-8") as fh:
        for c in candidates:
            fh.write(json.dumps(c.to_json_dict(), ensure_ascii=False) + "\n")


def read_candidates_jsonl(path) -> list[QuestionCandidate]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(QuestionCandidate.from_json_dict(json.loads(line)))
    return out
