"""Case markers, interrogative inventory, and small agreement helpers.

Marker sets are plain data so a table in another script (for example
Devanagari) can be swapped in from a TSV file. Matching is always exact
string comparison against token forms; nothing is transliterated.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from .treebank_io import PSP, ParsedSentence

ERGATIVE = frozenset({"ne"})
ACCUSATIVE = frozenset({"ko"})
INSTRUMENTAL = frozenset({"se", "ke dwaaraa"})
GENITIVE = frozenset({"ka", "ke", "ki"})
LOCATIVE = frozenset({"mein", "par"})
BENEFACTIVE = frozenset({"ke liye"})
BECAUSE = frozenset({"kyunki"})

INTERROGATIVES = frozenset({
    "kaun", "kisne", "kisko", "kya", "kidhar", "kahan",
    "kisse", "kiske dwaaraa", "kisse hokar", "kiske liye", "kyon",
    "kiska", "kiske", "kiski", "kaun si",
    "kis mein", "kis par", "kab", "kis din", "konse din", "kaisa",
})

# Genitive postposition to possessive interrogative. The interrogative
# inherits the gender/number suffix of the marker it replaces.
GENITIVE_INTERROGATIVES = {"ka": "kiska", "ke": "kiske", "ki": "kiski"}

# Progressive auxiliary endings that betray gender/number when the verb
# itself carries no FEATS.
AUX_GENDER = {"raha": "Masc", "rahi": "Fem", "rahe": "Masc"}
AUX_NUMBER = {"raha": "Sing", "rahi": "Sing", "rahe": "Plur"}

_ROLE_FIELDS = {
    "erg": "ergative",
    "acc": "accusative",
    "ins": "instrumental",
    "gen": "genitive",
    "loc": "locative",
    "ben": "benefactive",
    "because": "because",
    "wh": "interrogatives",
}


class MarkerTableError(ValueError):
    """Raised for malformed marker table files."""


@dataclass(frozen=True)
class MarkerTable:
    ergative: frozenset = ERGATIVE
    accusative: frozenset = ACCUSATIVE
    instrumental: frozenset = INSTRUMENTAL
    genitive: frozenset = GENITIVE
    locative: frozenset = LOCATIVE
    benefactive: frozenset = BENEFACTIVE
    because: frozenset = BECAUSE
    interrogatives: frozenset = INTERROGATIVES

    def case_markers(self) -> frozenset:
        """Every postposition that flips a noun into oblique case."""
        return (self.ergative | self.accusative | self.instrumental
                | self.genitive | self.locative | self.benefactive)


DEFAULT_MARKERS = MarkerTable()


def load_marker_table(path) -> MarkerTable:
    """Read ``role<TAB>form`` rows; roles present replace their defaults."""
    by_role: dict[str, set] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 2:
                raise MarkerTableError(
                    f"{path}:{line_no}: expected 2 tab-separated columns, got {len(cols)}"
                )
            role, form = cols[0].strip(), cols[1].strip()
            if role not in _ROLE_FIELDS:
                raise MarkerTableError(f"{path}:{line_no}: unknown role {role!r}")
            if not form:
                raise MarkerTableError(f"{path}:{line_no}: empty form")
            by_role.setdefault(role, set()).add(form)
    overrides = {_ROLE_FIELDS[role]: frozenset(forms) for role, forms in by_role.items()}
    defaults = {f.name: getattr(DEFAULT_MARKERS, f.name) for f in fields(MarkerTable)}
    defaults.update(overrides)
    return MarkerTable(**defaults)


@dataclass(frozen=True)
class CaseStatus:
    """Direct case (no marker) or oblique with the marker surface form."""

    marker: str | None = None

    @property
    def is_oblique(self) -> bool:
        return self.marker is not None


def case_marker_tokens(s: ParsedSentence, token_id: int, m: MarkerTable) -> list:
    """The psp child tokens realizing the noun's case marker, if any.

    Multi-token postpositions ("ke dwaaraa", "ke liye") must appear as
    adjacent psp children; longer matches win over shorter ones.
    """
    psp_children = [t for t in s.children(token_id) if t.deprel == PSP]
    if not psp_children:
        return []
    markers = m.case_markers()
    # Group psp children into runs of adjacent token ids.
    runs = [[psp_children[0]]]
    for tok in psp_children[1:]:
        if tok.id == runs[-1][-1].id + 1:
            runs[-1].append(tok)
        else:
            runs.append([tok])
    for run in runs:
        for length in range(len(run), 0, -1):
            for start in range(len(run) - length + 1):
                window = run[start:start + length]
                phrase = " ".join(t.form for t in window)
                if phrase in markers:
                    return window
    return []


def case_of(s: ParsedSentence, token_id: int, m: MarkerTable) -> CaseStatus:
    """Oblique with the marker found among psp children, else Direct."""
    window = case_marker_tokens(s, token_id, m)
    if not window:
        return CaseStatus()
    return CaseStatus(" ".join(t.form for t in window))


def genitive_interrogative(marker: str) -> str:
    try:
        return GENITIVE_INTERROGATIVES[marker]
    except KeyError:
        raise ValueError(f"not a genitive marker: {marker!r}") from None


def verb_gender(s: ParsedSentence, verb_id: int) -> str | None:
    """Gender from FEATS, else from auxiliary endings, else None."""
    verb = s.token(verb_id)
    gender = verb.feats.get("Gender")
    if gender:
        return gender
    if verb.form in AUX_GENDER:
        return AUX_GENDER[verb.form]
    for child in s.children(verb_id):
        if child.form in AUX_GENDER:
            return AUX_GENDER[child.form]
    return None


def verb_number(s: ParsedSentence, verb_id: int) -> str | None:
    """Number from FEATS, else from auxiliary endings, else None."""
    verb = s.token(verb_id)
    number = verb.feats.get("Number")
    if number:
        return number
    if verb.form in AUX_NUMBER:
        return AUX_NUMBER[verb.form]
    for child in s.children(verb_id):
        if child.form in AUX_NUMBER:
            return AUX_NUMBER[child.form]
    return None


def is_interrogative_form(form: str, m: MarkerTable = DEFAULT_MARKERS) -> bool:
    return form in m.interrogatives


def interrogative_spans(forms, m: MarkerTable = DEFAULT_MARKERS) -> list[tuple[int, int]]:
    """Disjoint (start, end) spans of inventory items in a form sequence.

    Multi-word inventory items are matched as token subsequences; at each
    position the longest match wins, so "kaun si" is one span, not "kaun"
    plus a stray token.
    """
    phrases = sorted(
        (item.split(" ") for item in m.interrogatives),
        key=len, reverse=True,
    )
    forms = list(forms)
    spans = []
    i = 0
    while i < len(forms):
        hit = 0
        for phrase in phrases:
            if forms[i:i + len(phrase)] == phrase:
                hit = len(phrase)
                break
        if hit:
            spans.append((i, i + hit))
            i += hit
        else:
            i += 1
    return spans
