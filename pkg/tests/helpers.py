"""In-process pipeline runs and random generators shared by the tests."""

from __future__ import annotations

import random
from dataclasses import dataclass

from fngrammar.categories import GrammRel, PhraseCat, VerbType, Voice
from fngrammar.extract import FERealization, FETriple, SentencePattern, Settings, extract_corpus
from fngrammar.ingest import parse_dependency_corpus, parse_phrase_structure_corpus
from fngrammar.normalize import ValencePattern, normalize, prune_singletons, restrict_patterns
from fngrammar.shared import SharedSet, shared_set


@dataclass
class LangRun:
    patterns: list[SentencePattern]
    valences: list[ValencePattern]


def run_language(xml: bytes, lang: str, settings: str = "2.B") -> LangRun:
    if lang == "eng":
        sentences = parse_phrase_structure_corpus(xml, "eng")
    else:
        sentences = parse_dependency_corpus(xml, "swe")
    cfg = Settings.parse(settings)
    patterns = extract_corpus(sentences, cfg).patterns
    valences = normalize(patterns)
    if cfg.prune:
        valences = prune_singletons(valences)
        patterns = restrict_patterns(patterns, valences)
    return LangRun(patterns, valences)


def run_pair(eng_xml: bytes, swe_xml: bytes) -> tuple[LangRun, LangRun, SharedSet]:
    eng, swe = run_language(eng_xml, "eng"), run_language(swe_xml, "swe")
    return eng, swe, shared_set(eng.valences, swe.valences, ("eng", "swe"))


# ---------------------------------------------------------------------------
# random patterns
# ---------------------------------------------------------------------------

FRAMES = ("Apply_heat", "Desiring", "Motion")
FE_NAMES = ("Agent", "Goal", "Theme", "Time")
TRIPLE_POOL = tuple(FETriple(fe, cat, rel) for fe in FE_NAMES
                    for cat, rel in (("NP", "nsubj"), ("NP", "dobj"), ("Adv", None)))


def random_valence(rng: random.Random, max_fes: int = 4, frames=FRAMES) -> ValencePattern:
    fes = frozenset(rng.sample(TRIPLE_POOL[:6], rng.randint(0, max_fes)))
    return ValencePattern(rng.choice(frames), rng.choice((VerbType.V, VerbType.V2)),
                          rng.choice((Voice.Act, Voice.Act, Voice.Pass)), fes, rng.randint(1, 9))


def random_valence_set(rng: random.Random, size: int) -> list[ValencePattern]:
    seen, out = set(), []
    for _ in range(size):
        v = random_valence(rng)
        if v.key() not in seen:
            seen.add(v.key())
            out.append(v)
    return out


_CATS = {"NP": PhraseCat.NP, "Adv": PhraseCat.Adv}


def random_sentence_pattern(rng: random.Random) -> SentencePattern:
    triples = rng.sample(TRIPLE_POOL[:6], rng.randint(0, 3))
    fes = tuple(FERealization(t.fe_name, _CATS[t.cat], None if t.rel is None else GrammRel(t.rel),
                              rng.choice((None, "for")) if t.cat == "Adv" else None, rng.random() < 0.8)
                for t in triples)
    return SentencePattern(rng.choice(FRAMES), rng.choice((VerbType.V, VerbType.V2)),
                           rng.choice((Voice.Act, Voice.Pass)), fes, "lemma", None, rng.randint(1, 5))
