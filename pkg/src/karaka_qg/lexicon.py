"""Semantic category lexicon used to pick interrogatives.

Entries map a lemma to one coarse category. Lookup is total: a lemma
without an entry is UNKNOWN, and rules that dispatch on the category
then emit every plausible variant instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from importlib import resources


class SemanticCategory(str, Enum):
    HUMAN = "HUMAN"
    OCCUPATION = "OCCUPATION"
    PLACE = "PLACE"
    DATE = "DATE"
    PATH = "PATH"
    LIVING = "LIVING"
    NONLIVING = "NONLIVING"
    PROPERTY = "PROPERTY"
    UNKNOWN = "UNKNOWN"


class LexiconError(ValueError):
    """Raised for malformed lexicon files."""


@dataclass
class SemanticLexicon:
    entries: dict[str, SemanticCategory] = field(default_factory=dict)
    source_name: str = ""
    duplicate_count: int = 0

    def lookup(self, lemma: str) -> SemanticCategory:
        return self.entries.get(lemma, SemanticCategory.UNKNOWN)

    def __len__(self) -> int:
        return len(self.entries)


def load_lexicon(path) -> SemanticLexicon:
    """Read a two-column TSV of ``lemma<TAB>CATEGORY`` rows.

    Blank lines and lines starting with "#" are skipped. A repeated lemma
    is allowed; the last row wins and the collision is counted in
    ``duplicate_count``.
    """
    entries: dict[str, SemanticCategory] = {}
    duplicates = 0
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 2:
                raise LexiconError(
                    f"{path}:{line_no}: expected 2 tab-separated columns, got {len(cols)}"
                )
            lemma, cat_s = cols[0].strip(), cols[1].strip()
            if not lemma:
                raise LexiconError(f"{path}:{line_no}: empty lemma")
            try:
                category = SemanticCategory(cat_s)
            except ValueError:
                raise LexiconError(
                    f"{path}:{line_no}: unknown category {cat_s!r}"
                ) from None
            if lemma in entries:
                duplicates += 1
            entries[lemma] = category
    return SemanticLexicon(entries, str(path), duplicates)


def merge_lexicons(lexicons) -> SemanticLexicon:
    """Combine lexicons; later ones override earlier ones per lemma."""
    merged: dict[str, SemanticCategory] = {}
    names = []
    duplicates = 0
    for lex in lexicons:
        merged.update(lex.entries)
        if lex.source_name:
            names.append(lex.source_name)
        duplicates += lex.duplicate_count
    return SemanticLexicon(merged, "+".join(names), duplicates)


def default_lexicon() -> SemanticLexicon:
    """The category snapshot shipped with the package."""
    path = resources.files("karaka_qg.data") / "lexicon_default.tsv"
    with resources.as_file(path) as p:
        lex = load_lexicon(p)
    lex.source_name = "builtin"
    return lex
