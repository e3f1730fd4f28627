"""Reader and writer for karaka-labeled dependency treebanks.

Token lines carry seven tab-separated columns:

    ID  FORM  LEMMA  UPOS  FEATS  HEAD  DEPREL

FEATS is either "_" or a "Key=Val|Key=Val" list. Sentences are separated
by blank lines. Comment lines of the form "# sent_id = ..." and
"# text = ..." carry sentence metadata; a sentence without an explicit
id gets a positional one ("s001", "s002", ...).
"""

from __future__ import annotations

from dataclasses import dataclass

# Dependency labels the generation rules know about. Anything else is
# carried through verbatim and simply never matches a rule.
KARAKA_LABELS = (
    "k1", "k1s", "k2", "k2p", "k3", "rt", "rh",
    "k5", "r6", "k7s", "k7t", "k7p", "coof",
)

# Label used for postposition tokens attached to the noun they mark.
PSP = "psp"


class TreebankError(ValueError):
    """Raised for malformed treebank files or invalid dependency graphs."""


@dataclass(frozen=True)
class Token:
    """One token row. ``head`` is 0 for the root, otherwise a token id."""

    id: int
    form: str
    lemma: str
    upos: str
    feats: dict
    head: int
    deprel: str


@dataclass(frozen=True)
class ParsedSentence:
    """A single dependency tree in surface order."""

    sentence_id: str
    tokens: tuple[Token, ...]
    raw_text: str | None = None

    def token(self, token_id: int) -> Token:
        if not 1 <= token_id <= len(self.tokens):
            raise TreebankError(
                f"sentence {self.sentence_id}: no token with id {token_id}"
            )
        return self.tokens[token_id - 1]

    def main_verb(self) -> Token:
        return next(t for t in self.tokens if t.head == 0)

    def children(self, token_id: int) -> list[Token]:
        return [t for t in self.tokens if t.head == token_id]

    def subtree_ids(self, token_id: int) -> set[int]:
        """Ids of the token and all of its descendants."""
        ids = {token_id}
        queue = [token_id]
        while queue:
            for child in self.children(queue.pop()):
                ids.add(child.id)
                queue.append(child.id)
        return ids


def _parse_feats(field: str, where: str) -> dict:
    if field == "_":
        return {}
    feats = {}
    for item in field.split("|"):
        if "=" not in item:
            raise TreebankError(f"{where}: bad FEATS item {item!r}")
        key, value = item.split("=", 1)
        feats[key] = value
    return feats


def _feats_to_str(feats: dict) -> str:
    if not feats:
        return "_"
    return "|".join(f"{k}={feats[k]}" for k in sorted(feats))


def _validate(sentence_id: str, tokens: list[Token]) -> None:
    for pos, tok in enumerate(tokens, start=1):
        if tok.id != pos:
            raise TreebankError(
                f"sentence {sentence_id}: token ids not contiguous from 1 "
                f"(found id {tok.id} at position {pos})"
            )
    n = len(tokens)
    roots = [t for t in tokens if t.head == 0]
    for tok in tokens:
        if tok.head == tok.id:
            raise TreebankError(
                f"sentence {sentence_id}: self-loop at token {tok.id}"
            )
        if tok.head != 0 and not 1 <= tok.head <= n:
            raise TreebankError(
                f"sentence {sentence_id}: token {tok.id} has head {tok.head} "
                f"outside 1..{n}"
            )
    if len(roots) != 1:
        raise TreebankError(
            f"sentence {sentence_id}: expected exactly one root, found {len(roots)}"
        )
    # A single root plus no self-loops does not rule out cycles among the
    # remaining tokens, so walk up from every node.
    heads = {t.id: t.head for t in tokens}
    for tok in tokens:
        seen = set()
        cur = tok.id
        while cur != 0:
            if cur in seen:
                raise TreebankError(
                    f"sentence {sentence_id}: cyclic head chain at token {tok.id}"
                )
            seen.add(cur)
            cur = heads[cur]


def _parse_blocks(lines, source: str) -> list[ParsedSentence]:
    sentences: list[ParsedSentence] = []
    rows: list[Token] = []
    sent_id: str | None = None
    raw_text: str | None = None

    def flush() -> None:
        nonlocal rows, sent_id, raw_text
        if not rows and sent_id is None and raw_text is None:
            return
        if not rows:
            raise TreebankError(
                f"{source}: sentence metadata without token lines"
            )
        sid = sent_id if sent_id is not None else f"s{len(sentences) + 1:03d}"
        _validate(sid, rows)
        sentences.append(ParsedSentence(sid, tuple(rows), raw_text))
        rows = []
        sent_id = None
        raw_text = None

    for line_no, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        where = f"{source}:{line_no}"
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, value = body.split("=", 1)
                key = key.strip()
                if key == "sent_id":
                    sent_id = value.strip()
                elif key == "text":
                    raw_text = value.strip()
            continue
        cols = line.split("\t")
        if len(cols) != 7:
            raise TreebankError(
                f"{where}: expected 7 tab-separated columns, got {len(cols)}"
            )
        id_s, form, lemma, upos, feats_s, head_s, deprel = cols
        try:
            token_id = int(id_s)
            head = int(head_s)
        except ValueError:
            raise TreebankError(
                f"{where}: ID and HEAD must be integers, got {id_s!r}/{head_s!r}"
            ) from None
        if not form or not deprel:
            raise TreebankError(f"{where}: empty FORM or DEPREL column")
        rows.append(
            Token(token_id, form, lemma, upos, _parse_feats(feats_s, where), head, deprel)
        )
    flush()
    return sentences


def load_treebank(path) -> list[ParsedSentence]:
    """Read a treebank file into a list of validated sentences."""
    with open(path, encoding="utf-8") as fh:
        return _parse_blocks(fh, str(path))


def loads_treebank(text: str, source: str = "<string>") -> list[ParsedSentence]:
    """Parse treebank content held in a string."""
    return _parse_blocks(text.splitlines(keepends=True), source)


def dumps_treebank(sentences) -> str:
    """Serialize sentences back into the column format read by the loader."""
    blocks = []
    for s in sentences:
        lines = [f"# sent_id = {s.sentence_id}"]
        if s.raw_text is not None:
            lines.append(f"# text = {s.raw_text}")
        for t in s.tokens:
            lines.append(
                "\t".join(
                    (str(t.id), t.form, t.lemma, t.upos,
                     _feats_to_str(t.feats), str(t.head), t.deprel)
                )
            )
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


def dump_treebank(sentences, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_treebank(sentences))
