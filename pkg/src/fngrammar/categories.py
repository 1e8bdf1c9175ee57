"""Resource-grammar categories and the raw-label generalization tables.

The tables themselves live in ``data/*.tsv`` so that corpus-specific repairs
can be audited without reading code.
"""

from __future__ import annotations

import csv
import enum
import functools
import re
from importlib import resources


class PhraseCat(str, enum.Enum):
    NP = "NP"
    VP = "VP"
    Adv = "Adv"
    S = "S"
    QS = "QS"

    def __str__(self) -> str:
        return self.value


class VerbType(str, enum.Enum):
    V = "V"
    V2 = "V2"
    V3 = "V3"
    VV = "VV"
    VS = "VS"
    VQ = "VQ"
    V2V = "V2V"
    V2S = "V2S"
    V2Q = "V2Q"

    def __str__(self) -> str:
        return self.value


class GrammRel(str, enum.Enum):
    nsubj = "nsubj"
    nsubjpass = "nsubjpass"
    dobj = "dobj"
    iobj = "iobj"

    def __str__(self) -> str:
        return self.value


class Voice(str, enum.Enum):
    Act = "Act"
    Pass = "Pass"

    def __str__(self) -> str:
        return self.value


SUBJECT_RELS = frozenset({GrammRel.nsubj, GrammRel.nsubjpass})
CLAUSAL_CATS = frozenset({PhraseCat.VP, PhraseCat.S, PhraseCat.QS})


class ExtractionError(ValueError):
    """An example cannot be turned into a pattern; ``reason`` is machine-readable."""

    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason
        self.detail = detail


class UnsupportedRealization(ExtractionError):
    def __init__(self, label: str):
        super().__init__("UnsupportedRealization", label)
        self.label = label


def _read_table(name: str) -> list[list[str]]:
    text = resources.files("fngrammar").joinpath("data", name).read_text(encoding="utf-8")
    rows = []
    for row in csv.reader(text.splitlines(), delimiter="\t"):
        if not row or row[0].startswith("#"):
            continue
        rows.append([cell.strip() for cell in row])
    return rows


@functools.lru_cache(maxsize=None)
def phrase_type_table() -> dict[str, tuple[str, str]]:
    return {label: (cat, marker) for label, cat, marker in _read_table("bfn_phrase_types.tsv")}


@functools.lru_cache(maxsize=None)
def head_type_table() -> dict[tuple[str, str], tuple[str, str]]:
    return {(tag, form): (cat, marker) for tag, form, cat, marker in _read_table("swefn_head_types.tsv")}


@functools.lru_cache(maxsize=None)
def relation_table() -> dict[tuple[str, str], str]:
    return {(scheme, label): role for scheme, label, role in _read_table("relations.tsv")}


_BRACKETED = re.compile(r"^([^\[\]]+)(?:\[([^\]]*)\])?$")


def _result(cat: str, marker: str | None, label: str) -> tuple[PhraseCat, str | None]:
    if cat == "UNSUPPORTED":
        raise UnsupportedRealization(label)
    return PhraseCat(cat), marker


def generalize_cat(raw_phrase_type: str | None, scheme, raw_gf: str | None = None,
                   head_form: str | None = None) -> tuple[PhraseCat, str | None]:
    """Map a scheme-specific phrase label to a category and optional marker.

    Raises UnsupportedRealization for quotations, unhandled clause subtypes
    and labels missing from the tables.
    """
    scheme = getattr(scheme, "value", scheme)
    if not raw_phrase_type:
        raise UnsupportedRealization(str(raw_phrase_type))
    if scheme == "PhraseStructure":
        m = _BRACKETED.match(raw_phrase_type)
        if not m or m.group(1) not in phrase_type_table():
            raise UnsupportedRealization(raw_phrase_type)
        cat, marker_rule = phrase_type_table()[m.group(1)]
        marker = None
        if marker_rule == "bracket" and m.group(2):
            marker = m.group(2).strip().lower() or None
        return _result(cat, marker, raw_phrase_type)

    # Dependency scheme: longest dotted prefix of the head tag, form-specific rows first
    parts = raw_phrase_type.split(".")
    form = (head_form or "").lower()
    table = head_type_table()
    for n in range(len(parts), 0, -1):
        prefix = ".".join(parts[:n])
        for key in ((prefix, form), (prefix, "*")):
            if key in table:
                cat, marker_rule = table[key]
                marker = form if marker_rule == "head" and form else None
                return _result(cat, marker, raw_phrase_type)
    raise UnsupportedRealization(raw_phrase_type)


def relation_role(scheme, label: str | None) -> str | None:
    """'subj', 'obj', 'iobj' or None for labels outside the relation table."""
    if label is None:
        return None
    return relation_table().get((getattr(scheme, "value", scheme), label))
