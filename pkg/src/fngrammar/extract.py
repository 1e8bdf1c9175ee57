"""Turn annotated sentences into word-order preserving sentence patterns."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

from .categories import (CLAUSAL_CATS, SUBJECT_RELS, ExtractionError, GrammRel, PhraseCat,
                         UnsupportedRealization, VerbType, Voice, generalize_cat, relation_role)
from .ingest import AnnotatedSentence, Diag, FESpan, Scheme, validate_sentence

# Prepositions introducing the demoted agent of a passive clause.
AGENT_MARKERS = frozenset({"by", "av"})


@dataclass(frozen=True)
class Settings:
    """Experiment setting: ``level`` 0..3 and ``sub`` None, "A" or "B".

    Level 1 skips unsupported realizations, level 2 generalizes categories,
    level 3 additionally prunes once-used valence patterns (done in
    normalization).  Sub A collapses repeated FEs, sub B also drops non-core FEs.
    """

    level: int = 2
    sub: str | None = None

    def __post_init__(self):
        if self.level not in (0, 1, 2, 3):
            raise ValueError(f"settings level must be 0-3, got {self.level}")
        if self.sub not in (None, "A", "B"):
            raise ValueError(f"settings sub must be None, 'A' or 'B', got {self.sub!r}")

    @classmethod
    def parse(cls, text: str) -> "Settings":
        m = re.fullmatch(r"S?([0-3])(?:\.([0AB]))?", text.strip(), flags=re.IGNORECASE)
        if not m:
            raise ValueError(f"bad settings string {text!r}; expected e.g. 2.B or 3.0")
        sub = (m.group(2) or "0").upper()
        return cls(int(m.group(1)), None if sub == "0" else sub)

    @property
    def generalize(self) -> bool:
        return self.level >= 2

    @property
    def prune(self) -> bool:
        return self.level >= 3

    def __str__(self) -> str:
        return f"{self.level}.{self.sub or '0'}"


@dataclass(frozen=True)
class FERealization:
    fe_name: str
    cat: PhraseCat | None
    rel: GrammRel | None = None
    marker: str | None = None
    is_core: bool = True
    raw_type: str | None = None  # set when patterns keep the corpus-specific labels

    @property
    def type_label(self) -> str:
        if self.raw_type is not None:
            return self.raw_type
        return str(self.cat) if self.cat is not None else "?"

    def triple(self) -> "FETriple":
        return FETriple(self.fe_name, self.type_label, None if self.rel is None else self.rel.value)

    def __str__(self) -> str:
        out = f"{self.fe_name}/{self.type_label}"
        if self.rel is not None:
            out += f".{self.rel.value}"
        if self.marker:
            out += f"[{self.marker}]"
        return out


@dataclass(frozen=True, order=True)
class FETriple:
    """Order-free FE realization used by normalized patterns."""

    fe_name: str
    cat: str
    rel: str | None = None

    def __str__(self) -> str:
        return f"{self.fe_name}/{self.cat}" + (f".{self.rel}" if self.rel else "")

    @classmethod
    def parse(cls, text: str) -> "FETriple":
        name, _, rest = text.partition("/")
        cat, _, rel = rest.partition(".")
        return cls(name, cat, rel or None)


@dataclass(frozen=True)
class LuMorph:
    components: tuple[str, ...]
    base_form: str

    def pattern(self) -> str:
        return " ".join(self.components)


@dataclass(frozen=True)
class SentencePattern:
    frame: str
    verb_type: VerbType
    voice: Voice
    fes: tuple[FERealization, ...]
    lu: str | None = None
    lu_morph: LuMorph | None = None
    count: int = 1

    def shape(self) -> "SentencePattern":
        """LU-free copy with count 1, the unit summaries are grouped by."""
        return SentencePattern(self.frame, self.verb_type, self.voice, self.fes)

    def key(self) -> tuple:
        return (self.frame, self.verb_type, self.voice, self.fes, self.lu, self.lu_morph)

    def fe_string(self) -> str:
        return " ".join(str(fe) for fe in self.fes)

    def __str__(self) -> str:
        return f"{self.frame}/{self.verb_type}({self.voice}): {self.fe_string()}"


@dataclass(frozen=True)
class Skip:
    reason: str
    detail: str = ""


# ---------------------------------------------------------------------------
# LU morphology
# ---------------------------------------------------------------------------

REFLEXIVES = frozenset("sig mig dig oss er sej myself yourself himself herself itself oneself "
                       "ourselves yourselves themselves".split())
PARTICLES = frozenset("like for in on up out off down over away back about after at by into "
                      "through to with from around along across apart upon "
                      "av på upp ut om med till efter åt bort fram ner ihop över under igen loss an "
                      "in i vid mot kring förbi".split())
DEFINITE = frozenset("the den det de".split())
INDEFINITE = frozenset("a an en ett".split())
PERSONAL = frozenset("him her it them us me you he she they we i "
                     "honom henne den det dem oss mig dig han hon de vi jag du".split())

_TAG_PREFIXES = (
    # BNC
    ("AVP", "ADP"), ("PRP", "ADP"), ("PRF", "ADP"), ("AJ", "ADJ"), ("AV", "ADV"),
    ("NN", "NOUN"), ("NP0", "NOUN"), ("PNX", "PRON.Reflex"), ("PNP", "PRON.Prs"), ("V", "VERB.Fin"),
    ("AT0", "DET"),
    # PENN
    ("RP", "ADP"), ("IN", "ADP"), ("TO", "ADP"), ("JJ", "ADJ"), ("RB", "ADV"), ("PRP", "PRON.Prs"),
    ("DT", "DET"),
    # SUC
    ("PL", "ADP"), ("PP", "ADP"), ("AB", "ADV"), ("PM", "NOUN"), ("PN", "PRON.Prs"),
)


def _component(word: str, tag: str | None) -> str:
    w = word.lower()
    if w in REFLEXIVES:
        return "PRON.Reflex"
    comp = None
    if tag:
        head = tag.split(".")[0].upper()
        for prefix, value in _TAG_PREFIXES:
            if head.startswith(prefix):
                comp = value
                break
    if comp is None:
        if w in PARTICLES:
            comp = "ADP"
        elif w in DEFINITE or w in INDEFINITE:
            comp = "DET"
        elif w in PERSONAL:
            comp = "PRON.Prs"
        else:
            comp = "NOUN"
    if comp == "DET":
        comp = "DET.Art.Ind" if w in INDEFINITE else "DET.Art.Def"
    return comp


def lu_morph_of(s: AnnotatedSentence) -> LuMorph:
    words = s.lu_lemma.split()
    if not words:
        return LuMorph(("VERB.Fin",), s.lu_lemma)
    targets = s.target_tokens()
    comps = ["VERB.Fin"]
    for w in words[1:]:
        tok = next((t for t in targets if t.form.lower() == w.lower()), None)
        comps.append(_component(w, tok.tag if tok else None))
    return LuMorph(tuple(comps), " ".join(words))


# ---------------------------------------------------------------------------
# voice and relations
# ---------------------------------------------------------------------------

PARTICIPLE_TAGS = frozenset({"VVN", "VDN", "VHN", "VBN"})
BE_FORMS = frozenset("be is are was were been being am 's 're 'm".split())


def _infer_voice(s: AnnotatedSentence, fes: list[FESpan]) -> Voice:
    targets = s.target_tokens()
    if s.scheme == Scheme.Dependency:
        for tok in targets[:1]:
            feats = set((tok.tag or "").split("."))
            if "SFO" in feats:
                return Voice.Pass
            if "AKT" in feats:
                return Voice.Act
            if "PC" in feats and any(fe.raw_gf == "SS" for fe in fes):
                return Voice.Pass
        return Voice.Act

    if not targets:
        return Voice.Act
    head = targets[0]
    if (head.tag or "") not in PARTICIPLE_TAGS or head.form.lower() == "been":
        return Voice.Act
    for tok in reversed([t for t in s.tokens if t.span < head.span]):
        if (tok.tag or "").startswith("V"):
            return Voice.Pass if tok.form.lower() in BE_FORMS else Voice.Act
        if (tok.tag or "").startswith("PUN"):
            break
    return Voice.Act


def infer_voice_and_relations(s: AnnotatedSentence, fes: list[FESpan] | None = None,
                              cats: Mapping[int, tuple[PhraseCat, str | None]] | None = None
                              ) -> tuple[Voice, list[GrammRel | None]]:
    """Voice of the target plus one optional relation per FE in ``fes``.

    ``cats`` maps FE index to its generalized category; it is computed when
    omitted.  Raises ExtractionError("IrreconcilableRelation") when the
    labels admit no consistent assignment.
    """
    if fes is None:
        fes = [fe for fe in s.fe_spans if fe.instantiated]
    if cats is None:
        cats = {}
        for i, fe in enumerate(fes):
            try:
                cats[i] = generalize_cat(fe.raw_phrase_type, s.scheme, fe.raw_gf, fe.head_form)
            except UnsupportedRealization:
                pass
    voice = _infer_voice(s, fes)
    target_start = min((sp.start for sp in s.target_spans), default=0)

    rels: list[GrammRel | None] = [None] * len(fes)
    subjects, objects = [], []
    for i, fe in enumerate(fes):
        cat, marker = cats.get(i, (None, None))
        if voice == Voice.Pass and cat == PhraseCat.Adv and marker in AGENT_MARKERS:
            rels[i] = GrammRel.dobj  # demoted agent
            continue
        if cat != PhraseCat.NP:
            continue
        role = relation_role(s.scheme, fe.raw_gf)
        if role is None:
            if fe.raw_gf is not None:
                raise ExtractionError("IrreconcilableRelation", f"{fe.fe_name}: GF {fe.raw_gf}")
            role = "subj" if fe.span.start < target_start else "obj"
        if role == "subj":
            subjects.append(i)
        elif role == "iobj":
            rels[i] = GrammRel.iobj
        else:
            objects.append(i)

    if len(subjects) > 1:
        raise ExtractionError("IrreconcilableRelation", "more than one subject")
    for i in subjects:
        rels[i] = GrammRel.nsubjpass if voice == Voice.Pass else GrammRel.nsubj
    explicit_iobj = any(r == GrammRel.iobj for r in rels)
    if len(objects) > 2 or (explicit_iobj and len(objects) > 1):
        raise ExtractionError("IrreconcilableRelation", "too many objects")
    objects.sort(key=lambda i: fes[i].span)
    if len(objects) == 2:
        rels[objects[0]] = GrammRel.iobj
        rels[objects[1]] = GrammRel.dobj
    elif objects:
        rels[objects[0]] = GrammRel.dobj
    return voice, rels


_VT_TABLE = {
    (0, None): VerbType.V, (0, PhraseCat.VP): VerbType.VV, (0, PhraseCat.S): VerbType.VS,
    (0, PhraseCat.QS): VerbType.VQ,
    (1, None): VerbType.V2, (1, PhraseCat.VP): VerbType.V2V, (1, PhraseCat.S): VerbType.V2S,
    (1, PhraseCat.QS): VerbType.V2Q,
    (2, None): VerbType.V3,
}


def infer_verb_type(fes: Iterable[FERealization], voice: Voice) -> VerbType:
    """Verb type from the complements (subjects excluded).

    Under passive voice the demoted agent (NP.dobj) is not a complement and,
    unless a clausal complement is present, the promoted subject restores
    one NP slot.  An indirect object alone stands for a ditransitive frame.
    """
    nps, clausal = 0, []
    has_iobj = False
    for fe in fes:
        if fe.rel in SUBJECT_RELS:
            continue
        if fe.cat == PhraseCat.NP:
            if voice == Voice.Pass and fe.rel == GrammRel.dobj:
                continue
            nps += 1
            has_iobj = has_iobj or fe.rel == GrammRel.iobj
        elif fe.cat in CLAUSAL_CATS:
            clausal.append(fe.cat)
    if voice == Voice.Pass and not clausal:
        nps += 1
    if has_iobj and nps == 1:
        nps = 2
    if len(clausal) > 1:
        raise ExtractionError("UnsupportedValence", f"{len(clausal)} clausal complements")
    key = (nps, clausal[0] if clausal else None)
    if key not in _VT_TABLE:
        raise ExtractionError("UnsupportedValence", f"{nps} NP complements with {key[1]}")
    return _VT_TABLE[key]


# ---------------------------------------------------------------------------
# extraction
# ---------------------------------------------------------------------------

def _raw_label(fe: FESpan, scheme: Scheme) -> str:
    return f"{fe.raw_phrase_type}.{fe.raw_gf}" if fe.raw_gf else str(fe.raw_phrase_type)


def extract_sentence_pattern(s: AnnotatedSentence, cfg: Settings) -> SentencePattern | Skip:
    if s.lu_pos and s.lu_pos != "VERB":
        return Skip("NotVerbLU", s.lu_pos)

    blocking = validate_sentence(s)
    for diag in blocking:
        if diag == Diag.RepeatedFEDifferentTypes:
            continue  # only the repeated-FE subseries act on it
        if diag == Diag.UnsupportedRealization and cfg.level < 1:
            continue
        return Skip(diag.value)

    fes = sorted((fe for fe in s.fe_spans if fe.instantiated), key=lambda fe: fe.span)
    cats: dict[int, tuple[PhraseCat, str | None]] = {}
    for i, fe in enumerate(fes):
        try:
            cats[i] = generalize_cat(fe.raw_phrase_type, s.scheme, fe.raw_gf, fe.head_form)
        except UnsupportedRealization:
            pass  # level 0 keeps the FE with its raw label

    if cfg.sub is not None:
        keep, first = [], {}
        for i, fe in enumerate(fes):
            if fe.fe_name not in first:
                first[fe.fe_name] = i
                keep.append(i)
            elif cats.get(i, (None,))[0] != cats.get(first[fe.fe_name], (None,))[0]:
                if cfg.sub == "B" and not fe.is_core:
                    continue
                return Skip(Diag.RepeatedFEDifferentTypes.value, fe.fe_name)
        fes = [fes[i] for i in keep]
        cats = {n: cats[i] for n, i in enumerate(keep) if i in cats}

    try:
        voice, rels = infer_voice_and_relations(s, fes, cats)
    except ExtractionError as exc:
        return Skip(exc.reason, exc.detail)

    reals = []
    for i, fe in enumerate(fes):
        if cfg.sub == "B" and not fe.is_core:
            continue
        cat, marker = cats.get(i, (None, None))
        rel = rels[i]
        if rel == GrammRel.dobj and cat == PhraseCat.Adv:
            cat, marker = PhraseCat.NP, None  # passive agent
        raw = None if cfg.generalize else _raw_label(fe, s.scheme)
        if not cfg.generalize:
            marker = None
        reals.append(FERealization(fe.fe_name, cat, rel, marker, fe.is_core, raw))

    try:
        vt = infer_verb_type(reals, voice)
    except ExtractionError as exc:
        return Skip(exc.reason, exc.detail)
    return SentencePattern(s.frame, vt, voice, tuple(reals), s.lu_lemma, lu_morph_of(s))


@dataclass
class ExtractionResult:
    patterns: list[SentencePattern] = field(default_factory=list)
    skips: Counter = field(default_factory=Counter)


def extract_corpus(sentences: Iterable[AnnotatedSentence], cfg: Settings) -> ExtractionResult:
    """Extract and aggregate structurally identical patterns (LU included)."""
    counts: dict[tuple, SentencePattern] = {}
    result = ExtractionResult()
    for s in sentences:
        out = extract_sentence_pattern(s, cfg)
        if isinstance(out, Skip):
            result.skips[out.reason] += 1
            continue
        k = out.key()
        counts[k] = replace(counts[k], count=counts[k].count + 1) if k in counts else out
    result.patterns = sorted(counts.values(), key=pattern_sort_key)
    return result


def pattern_sort_key(p: SentencePattern) -> tuple:
    return (p.frame, p.verb_type.value, p.voice.value, p.fe_string(), p.lu or "",
            p.lu_morph.pattern() if p.lu_morph else "")


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def fe_to_dict(fe: FERealization) -> dict:
    return {"fe_name": fe.fe_name, "cat": None if fe.cat is None else fe.cat.value,
            "rel": None if fe.rel is None else fe.rel.value, "marker": fe.marker,
            "is_core": fe.is_core, "raw_type": fe.raw_type}


def fe_from_dict(d: Mapping) -> FERealization:
    return FERealization(d["fe_name"], None if d.get("cat") is None else PhraseCat(d["cat"]),
                         None if d.get("rel") is None else GrammRel(d["rel"]), d.get("marker"),
                         d.get("is_core", True), d.get("raw_type"))


def pattern_to_dict(p: SentencePattern) -> dict:
    return {
        "frame": p.frame, "verb_type": p.verb_type.value, "voice": p.voice.value,
        "fes": [fe_to_dict(fe) for fe in p.fes], "lu": p.lu,
        "lu_morph": None if p.lu_morph is None else
        {"components": list(p.lu_morph.components), "base_form": p.lu_morph.base_form},
        "count": p.count,
    }


def pattern_from_dict(d: Mapping) -> SentencePattern:
    morph = d.get("lu_morph")
    return SentencePattern(d["frame"], VerbType(d["verb_type"]), Voice(d["voice"]),
                           tuple(fe_from_dict(f) for f in d["fes"]), d.get("lu"),
                           None if morph is None else LuMorph(tuple(morph["components"]), morph["base_form"]),
                           d.get("count", 1))
