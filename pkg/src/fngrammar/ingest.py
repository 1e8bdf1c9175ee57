"""Readers for phrase-structure (BFN-style) and dependency (SweFN-style) corpora.

Both produce :class:`AnnotatedSentence` records.  Character spans are
inclusive on both ends, which is how the phrase-structure XML encodes them
("Traders" is start=0 end=6).  Dependency sentences get a text built by
joining their tokens with single spaces, and spans index into that text.
"""

from __future__ import annotations

import enum
import io
import logging
import os
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import IO, Iterable, Mapping, Union

logger = logging.getLogger(__name__)

Source = Union[str, os.PathLike, bytes, IO]


class Scheme(str, enum.Enum):
    PhraseStructure = "PhraseStructure"
    Dependency = "Dependency"

    def __str__(self) -> str:
        return self.value


class Diag(str, enum.Enum):
    OverlappingFEs = "OverlappingFEs"
    MissingTarget = "MissingTarget"
    UnsupportedRealization = "UnsupportedRealization"
    RepeatedFEDifferentTypes = "RepeatedFEDifferentTypes"
    SpanOutOfBounds = "SpanOutOfBounds"
    EmptyFEName = "EmptyFEName"
    UnreconciledLayers = "UnreconciledLayers"
    DanglingDephead = "DanglingDephead"
    # informational: the sentence is still usable
    SpanRepaired = "SpanRepaired"
    AmbiguousHead = "AmbiguousHead"
    ExtraAnnotationSets = "ExtraAnnotationSets"

    def __str__(self) -> str:
        return self.value


INFORMATIONAL = frozenset({Diag.SpanRepaired, Diag.AmbiguousHead, Diag.ExtraAnnotationSets})


class CorpusParseError(ValueError):
    def __init__(self, source_id: str, message: str):
        super().__init__(f"{source_id}: {message}")
        self.source_id = source_id


@dataclass(frozen=True, order=True)
class Span:
    start: int
    end: int  # inclusive

    def overlaps(self, other: "Span") -> bool:
        return self.start <= other.end and other.start <= self.end

    def text(self, s: str) -> str:
        return s[self.start:self.end + 1]


@dataclass(frozen=True)
class Token:
    span: Span
    form: str
    tag: str | None = None
    ref: str | None = None
    dephead: str | None = None
    deprel: str | None = None


@dataclass(frozen=True)
class FESpan:
    fe_name: str
    span: Span | None  # None: null-instantiated
    raw_phrase_type: str | None = None
    raw_gf: str | None = None
    is_core: bool = True
    head_form: str | None = None

    @property
    def instantiated(self) -> bool:
        return self.span is not None


@dataclass(frozen=True)
class AnnotatedSentence:
    text: str
    language: str
    frame: str
    lu_lemma: str
    lu_pos: str
    target_spans: tuple[Span, ...]
    fe_spans: tuple[FESpan, ...]
    scheme: Scheme
    source_id: str
    tokens: tuple[Token, ...] = ()
    flags: tuple[Diag, ...] = ()

    def target_tokens(self) -> list[Token]:
        return [t for t in self.tokens if any(t.span.overlaps(sp) for sp in self.target_spans)]


CORE_TYPES = {"core": True, "core-unexpressed": True, "peripheral": False, "extra-thematic": False}

_LU_POS = {"v": "VERB", "vb": "VERB", "n": "NOUN", "nn": "NOUN", "a": "ADJ", "av": "ADJ",
           "adv": "ADV", "ab": "ADV", "prep": "ADP", "pp": "ADP"}

POS_LAYERS = ("BNC", "PENN", "POS")


def split_lu_name(name: str) -> tuple[str, str]:
    """'want.v' -> ('want', 'VERB'); SALDO 'känna_för..vb.1' -> ('känna för', 'VERB')."""
    name = name.strip()
    if ".." in name:
        lemma, rest = name.split("..", 1)
        pos = rest.split(".")[0]
    elif "." in name:
        lemma, pos = name.rsplit(".", 1)
    else:
        lemma, pos = name, ""
    return lemma.replace("_", " ").strip(), _LU_POS.get(pos.lower(), pos.upper())


def _load(source: Source, source_name: str | None) -> tuple[ET.Element, str]:
    if isinstance(source, (str, os.PathLike)):
        name = source_name or os.fspath(source)
        handle = source
    elif isinstance(source, bytes):
        name = source_name or "<bytes>"
        handle = io.BytesIO(source)
    else:
        name = source_name or getattr(source, "name", "<stream>")
        handle = source
    try:
        root = ET.parse(handle).getroot()
    except ET.ParseError as exc:
        raise CorpusParseError(str(name), f"malformed XML ({exc})") from exc
    for el in root.iter():
        if isinstance(el.tag, str) and "}" in el.tag:
            el.tag = el.tag.split("}", 1)[1]
    return root, str(name)


def _parent_map(root: ET.Element) -> dict[ET.Element, ET.Element]:
    return {child: parent for parent in root.iter() for child in parent}


def _ancestors(el: ET.Element, parents: Mapping[ET.Element, ET.Element]) -> Iterable[ET.Element]:
    while el in parents:
        el = parents[el]
        yield el


def _core_from_header(root: ET.Element) -> dict[str, dict[str, bool]]:
    """Frame-element coreness from ``<header><frame><FE type=...>`` blocks."""
    table: dict[str, dict[str, bool]] = {}
    for lu in root.iter("lexUnit"):
        frame = lu.get("frame", "")
        for fe in lu.iterfind("header/frame/FE"):
            kind = (fe.get("type") or "").lower()
            if kind in CORE_TYPES and fe.get("name"):
                table.setdefault(frame, {})[fe.get("name")] = CORE_TYPES[kind]
    return table


def _is_core(label: ET.Element, fe: str, frame: str, header: Mapping, core_fes) -> bool:
    kind = (label.get("coreType") or "").lower()
    if kind in CORE_TYPES:
        return CORE_TYPES[kind]
    if fe in header.get(frame, {}):
        return header[frame][fe]
    if core_fes is not None and frame in core_fes:
        return fe in core_fes[frame]
    return True


# ---------------------------------------------------------------------------
# phrase-structure corpora
# ---------------------------------------------------------------------------

def _label_span(label: ET.Element) -> Span | None:
    if label.get("start") is None or label.get("end") is None:
        return None
    return Span(int(label.get("start")), int(label.get("end")))


def _layer_labels(aset: ET.Element, name: str) -> list[ET.Element]:
    labels = []
    for layer in aset.iterfind("layer"):
        if layer.get("name") == name and layer.get("rank", "1") == "1":
            labels.extend(layer.iterfind("label"))
    return labels


def _match_label(span: Span, labels: list[tuple[Span, str]]) -> tuple[str | None, bool]:
    """Exact span match first, then an off-by-one near miss (flagged)."""
    for sp, name in labels:
        if sp == span:
            return name, False
    for sp, name in labels:
        if abs(sp.start - span.start) <= 1 and abs(sp.end - span.end) <= 1:
            return name, True
    return None, False


def parse_phrase_structure_corpus(source: Source, language: str = "eng",
                                  core_fes: Mapping[str, set] | None = None,
                                  source_name: str | None = None) -> list[AnnotatedSentence]:
    """Parse BFN-style XML (annotationSet layers FE/GF/PT/Target with char offsets)."""
    root, doc = _load(source, source_name)
    parents = _parent_map(root)
    header = _core_from_header(root)
    out = []
    for index, sent in enumerate(root.iter("sentence")):
        out.append(_parse_ps_sentence(sent, index, doc, language, parents, header, core_fes))
    return out


def _parse_ps_sentence(sent, index, doc, language, parents, header, core_fes) -> AnnotatedSentence:
    source_id = sent.get("ID") or sent.get("id") or f"{doc}#{index}"
    text = sent.findtext("text") or ""
    flags: list[Diag] = []

    tokens: list[Token] = []
    frame_sets = []
    for aset in sent.iterfind("annotationSet"):
        if not tokens:
            for layer_name in POS_LAYERS:
                labels = _layer_labels(aset, layer_name)
                if labels:
                    for lab in labels:
                        sp = _label_span(lab)
                        if sp is not None:
                            tokens.append(Token(sp, sp.text(text), lab.get("name")))
                    break
        if _layer_labels(aset, "Target"):
            frame_sets.append(aset)
    tokens.sort(key=lambda t: t.span)
    if len(frame_sets) > 1:
        flags.append(Diag.ExtraAnnotationSets)

    lu_name, frame = "", ""
    aset = frame_sets[0] if frame_sets else None
    if aset is not None:
        lu_name, frame = aset.get("luName", ""), aset.get("frameName", "")
    if not lu_name or not frame:
        for anc in _ancestors(sent, parents):
            if anc.get("frame") is not None:
                frame = frame or anc.get("frame")
                lu_name = lu_name or anc.get("name") or ""
                break
    lemma, pos = split_lu_name(lu_name)

    targets: tuple[Span, ...] = ()
    fes: list[FESpan] = []
    if aset is not None:
        targets = tuple(sorted(sp for sp in map(_label_span, _layer_labels(aset, "Target")) if sp))
        pts = [(sp, lab.get("name")) for lab in _layer_labels(aset, "PT") if (sp := _label_span(lab))]
        gfs = [(sp, lab.get("name")) for lab in _layer_labels(aset, "GF") if (sp := _label_span(lab))]
        for lab in _layer_labels(aset, "FE"):
            name = lab.get("name", "")
            core = _is_core(lab, name, frame, header, core_fes)
            span = _label_span(lab)
            if span is None:
                fes.append(FESpan(name, None, is_core=core))
                continue
            pt, pt_fixed = _match_label(span, pts)
            gf, gf_fixed = _match_label(span, gfs)
            if pt_fixed or gf_fixed:
                flags.append(Diag.SpanRepaired)
            if pt is None:
                # no phrase type: treated as not instantiated
                if gf is not None:
                    flags.append(Diag.UnreconciledLayers)
                fes.append(FESpan(name, None, is_core=core))
                continue
            fes.append(FESpan(name, span, pt, gf, core))

    return AnnotatedSentence(text=text, language=language, frame=frame, lu_lemma=lemma, lu_pos=pos,
                             target_spans=targets, fe_spans=tuple(fes), scheme=Scheme.PhraseStructure,
                             source_id=source_id, tokens=tuple(tokens), flags=tuple(dict.fromkeys(flags)))


# ---------------------------------------------------------------------------
# dependency corpora
# ---------------------------------------------------------------------------

def parse_dependency_corpus(source: Source, language: str = "swe",
                            core_fes: Mapping[str, set] | None = None,
                            source_name: str | None = None,
                            rejects: list | None = None) -> list[AnnotatedSentence]:
    """Parse SweFN-style XML: ``w`` tokens (pos/msd, ref, dephead, deprel)
    wrapped in ``element`` nodes naming FEs and the LU.

    Sentences without an LU element are not returned; their ``(source_id,
    reason)`` pairs are appended to ``rejects`` when given.
    """
    root, doc = _load(source, source_name)
    parents = _parent_map(root)
    out = []
    for index, sent in enumerate(root.iter("sentence")):
        parsed = _parse_dep_sentence(sent, index, doc, language, parents, core_fes)
        if isinstance(parsed, str):
            source_id = sent.get("id") or sent.get("ID") or f"{doc}#{index}"
            logger.warning("rejected sentence %s: %s", source_id, parsed)
            if rejects is not None:
                rejects.append((source_id, parsed))
            continue
        out.append(parsed)
    return out


def _collect(node: ET.Element, words: list[ET.Element], groups: list[tuple[ET.Element, list[int]]]):
    for child in node:
        if child.tag == "w":
            words.append(child)
        elif child.tag == "element":
            start = len(words)
            entry = (child, [])
            groups.append(entry)
            _collect(child, words, groups)
            entry[1].extend(range(start, len(words)))
        else:
            _collect(child, words, groups)


def _runs(indices: list[int], tokens: list[Token]) -> tuple[Span, ...]:
    spans, run = [], []
    for i in sorted(indices):
        if run and i != run[-1] + 1:
            spans.append(Span(tokens[run[0]].span.start, tokens[run[-1]].span.end))
            run = []
        run.append(i)
    if run:
        spans.append(Span(tokens[run[0]].span.start, tokens[run[-1]].span.end))
    return tuple(spans)


def _parse_dep_sentence(sent, index, doc, language, parents, core_fes):
    source_id = sent.get("id") or sent.get("ID") or f"{doc}#{index}"
    words: list[ET.Element] = []
    groups: list[tuple[ET.Element, list[int]]] = []
    _collect(sent, words, groups)

    tokens, pos = [], 0
    for w in words:
        form = (w.text or "").strip()
        tokens.append(Token(Span(pos, pos + len(form) - 1), form, w.get("msd") or w.get("pos"),
                            w.get("ref"), w.get("dephead"), w.get("deprel")))
        pos += len(form) + 1
    text = " ".join(t.form for t in tokens)
    flags: list[Diag] = []
    refs = {t.ref for t in tokens if t.ref is not None}
    if any(t.dephead is not None and t.dephead not in refs for t in tokens):
        flags.append(Diag.DanglingDephead)

    lu_groups = [idx for el, idx in groups if el.get("name") == "LU"]
    if not lu_groups or not lu_groups[0]:
        return "MissingLU"
    lu_idx = sorted(i for g in lu_groups for i in g)
    lu_refs = {tokens[i].ref for i in lu_idx}

    frame = sent.get("frame") or ""
    lu_name = sent.get("lu") or sent.get("lemma") or ""
    for anc in _ancestors(sent, parents):
        if frame and lu_name:
            break
        if anc.get("frame") is not None:
            frame = frame or anc.get("frame")
            lu_name = lu_name or anc.get("id") or anc.get("name") or ""
    if lu_name:
        lemma, lu_pos = split_lu_name(lu_name)
    else:
        lemma, lu_pos = " ".join(tokens[i].form.lower() for i in lu_idx), "VERB"

    fes = []
    for el, idx in groups:
        name = el.get("name") or ""
        if name == "LU":
            continue
        core = _is_core(el, name, frame, {}, core_fes)
        if not idx:
            fes.append(FESpan(name, None, is_core=core))
            continue
        inside = {tokens[i].ref for i in idx}
        heads = [i for i in idx
                 if tokens[i].dephead is None or tokens[i].dephead not in inside or tokens[i].dephead in lu_refs]
        if len(heads) != 1:
            flags.append(Diag.AmbiguousHead)
        head = tokens[heads[0] if heads else idx[0]]
        span = Span(tokens[min(idx)].span.start, tokens[max(idx)].span.end)
        fes.append(FESpan(name, span, head.tag, head.deprel, core, head.form))

    return AnnotatedSentence(text=text, language=language, frame=frame, lu_lemma=lemma, lu_pos=lu_pos,
                             target_spans=_runs(lu_idx, tokens), fe_spans=tuple(fes),
                             scheme=Scheme.Dependency, source_id=source_id, tokens=tuple(tokens),
                             flags=tuple(dict.fromkeys(flags)))


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

_ORDER = list(Diag)


def validate_sentence(s: AnnotatedSentence) -> list[Diag]:
    """Blocking diagnostics for a sentence; an empty list means usable."""
    from .categories import ExtractionError, generalize_cat

    found = {d for d in s.flags if d not in INFORMATIONAL}
    if not s.target_spans:
        found.add(Diag.MissingTarget)
    limit = len(s.text)
    live = [fe for fe in s.fe_spans if fe.instantiated]
    for sp in list(s.target_spans) + [fe.span for fe in live]:
        if sp.start < 0 or sp.end >= limit or sp.start > sp.end:
            found.add(Diag.SpanOutOfBounds)
    if any(not fe.fe_name for fe in s.fe_spans):
        found.add(Diag.EmptyFEName)

    targets = list(s.target_spans)
    for i, a in enumerate(targets):
        if any(a.overlaps(b) for b in targets[i + 1:]):
            found.add(Diag.OverlappingFEs)
    for i, fe in enumerate(live):
        if any(fe.span.overlaps(t) for t in targets):
            found.add(Diag.OverlappingFEs)
        if any(fe.span.overlaps(other.span) for other in live[i + 1:]):
            found.add(Diag.OverlappingFEs)

    cats: dict[str, set] = {}
    for fe in live:
        try:
            cat, _ = generalize_cat(fe.raw_phrase_type, s.scheme, fe.raw_gf, fe.head_form)
        except ExtractionError:
            found.add(Diag.UnsupportedRealization)
            continue
        cats.setdefault(fe.fe_name, set()).add(cat)
    if any(len(c) > 1 for c in cats.values()):
        found.add(Diag.RepeatedFEDifferentTypes)
    return sorted(found, key=_ORDER.index)


# ---------------------------------------------------------------------------
# JSON hand-off format
# ---------------------------------------------------------------------------

def _span_out(sp: Span | None):
    return None if sp is None else [sp.start, sp.end]


def _span_in(v) -> Span | None:
    return None if v is None else Span(int(v[0]), int(v[1]))


def sentence_to_dict(s: AnnotatedSentence) -> dict:
    return {
        "source_id": s.source_id,
        "scheme": s.scheme.value,
        "language": s.language,
        "frame": s.frame,
        "lu_lemma": s.lu_lemma,
        "lu_pos": s.lu_pos,
        "text": s.text,
        "target_spans": [_span_out(sp) for sp in s.target_spans],
        "fe_spans": [
            {"fe_name": fe.fe_name, "span": _span_out(fe.span), "raw_phrase_type": fe.raw_phrase_type,
             "raw_gf": fe.raw_gf, "is_core": fe.is_core, "head_form": fe.head_form}
            for fe in s.fe_spans
        ],
        "tokens": [
            {"span": _span_out(t.span), "form": t.form, "tag": t.tag, "ref": t.ref,
             "dephead": t.dephead, "deprel": t.deprel}
            for t in s.tokens
        ],
        "flags": [d.value for d in s.flags],
    }


def sentence_from_dict(d: Mapping) -> AnnotatedSentence:
    return AnnotatedSentence(
        text=d["text"], language=d["language"], frame=d["frame"], lu_lemma=d["lu_lemma"],
        lu_pos=d["lu_pos"], target_spans=tuple(_span_in(v) for v in d["target_spans"]),
        fe_spans=tuple(FESpan(f["fe_name"], _span_in(f["span"]), f.get("raw_phrase_type"), f.get("raw_gf"),
                              f.get("is_core", True), f.get("head_form")) for f in d["fe_spans"]),
        scheme=Scheme(d["scheme"]), source_id=d["source_id"],
        tokens=tuple(Token(_span_in(t["span"]), t["form"], t.get("tag"), t.get("ref"), t.get("dephead"),
                           t.get("deprel")) for t in d.get("tokens", [])),
        flags=tuple(Diag(x) for x in d.get("flags", [])),
    )
