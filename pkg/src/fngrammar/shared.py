"""Cross-lingual shared valence patterns, frame-set algebra and coverage."""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .categories import VerbType, Voice
from .extract import FETriple, SentencePattern
from .normalize import ValencePattern, valence_from_dict, valence_to_dict

logger = logging.getLogger(__name__)


def subsumes(a, b) -> bool:
    """True when ``a`` has the same frame, verb type and voice as ``b`` and
    every FE triple of ``b`` also occurs in ``a``."""
    return (a.frame == b.frame and a.verb_type == b.verb_type and a.voice == b.voice
            and frozenset(b.fes) <= frozenset(a.fes))


@dataclass(frozen=True)
class SharedPattern:
    frame: str
    verb_type: VerbType
    voice: Voice
    fes: frozenset
    witnesses: tuple = field(default=(), compare=False)  # ((language, ValencePattern), ...)

    def key(self) -> tuple:
        return (self.frame, self.verb_type, self.voice, self.fes)

    def witness(self, language: str) -> ValencePattern | None:
        return dict(self.witnesses).get(language)

    @property
    def count(self) -> int:
        return sum(w.count for _, w in self.witnesses)

    def fe_string(self) -> str:
        return " ".join(str(t) for t in sorted(self.fes, key=str))

    def __str__(self) -> str:
        return f"{self.frame}/{self.verb_type}({self.voice}): {self.fe_string()}"


@dataclass(frozen=True)
class SharedSet:
    languages: tuple[str, ...]
    patterns: tuple[SharedPattern, ...]

    @property
    def frames(self) -> frozenset:
        return frozenset(p.frame for p in self.patterns)

    def __len__(self) -> int:
        return len(self.patterns)

    def __iter__(self):
        return iter(self.patterns)


def _bucket(patterns: Iterable) -> dict[tuple, list]:
    out: dict[tuple, list] = defaultdict(list)
    for p in patterns:
        out[(p.frame, p.verb_type, p.voice)].append(p)
    return out


def _serial(p) -> str:
    return " ".join(str(t) for t in sorted(p.fes, key=str))


def _witness(target_fes: frozenset, pool: Sequence[ValencePattern]) -> ValencePattern | None:
    options = [q for q in pool if target_fes <= frozenset(q.fes)]
    if not options:
        return None
    return min(options, key=lambda q: (len(q.fes), -q.count, _serial(q)))


def shared_set(fn1: Iterable[ValencePattern], fn2: Iterable[ValencePattern],
               languages: tuple[str, str] = ("eng", "swe")) -> SharedSet:
    """Patterns of either side subsumed by a pattern of the other side, with
    strictly subsumed members then removed."""
    b1, b2 = _bucket(fn1), _bucket(fn2)
    result = []
    for key in sorted(set(b1) & set(b2), key=lambda k: (k[0], k[1].value, k[2].value)):
        left, right = b1[key], b2[key]
        cands = {frozenset(p.fes) for p in left if any(frozenset(p.fes) <= frozenset(q.fes) for q in right)}
        cands |= {frozenset(p.fes) for p in right if any(frozenset(p.fes) <= frozenset(q.fes) for q in left)}
        final = [c for c in cands if not any(c < other for other in cands)]
        for fes in final:
            witnesses = ((languages[0], _witness(fes, left)), (languages[1], _witness(fes, right)))
            result.append(SharedPattern(*key, fes, witnesses))
    result.sort(key=lambda p: (p.frame, p.verb_type.value, p.voice.value, p.fe_string()))
    return SharedSet(tuple(languages), tuple(result))


def _frames(x: Iterable) -> set:
    return {getattr(v, "frame", v) for v in x}


def frame_set_stats(fn1: Iterable, fn2: Iterable) -> dict[str, int]:
    """Set algebra over frame names; inputs are patterns or frame names."""
    f1, f2 = _frames(fn1), _frames(fn2)
    return {"fn1": len(f1), "fn2": len(f2), "only1": len(f1 - f2), "only2": len(f2 - f1),
            "union": len(f1 | f2), "intersection": len(f1 & f2)}


def pattern_set_stats(fn1: Iterable[ValencePattern], fn2: Iterable[ValencePattern],
                      languages: tuple[str, str] = ("eng", "swe")) -> dict[str, int]:
    """Pattern comparison restricted to frames found on both sides.

    ``only1`` counts patterns of side 1 not subsumed by any pattern of side 2,
    ``union`` counts structurally distinct patterns of both sides and
    ``intersection`` counts the distinct subsumption candidates before the
    strictly subsumed ones are removed.
    """
    fn1, fn2 = list(fn1), list(fn2)
    frames = _frames(fn1) & _frames(fn2)
    fn1 = [p for p in fn1 if p.frame in frames]
    fn2 = [p for p in fn2 if p.frame in frames]

    def key(p):
        return (p.frame, p.verb_type, p.voice, frozenset(p.fes))

    b1, b2 = _bucket(fn1), _bucket(fn2)

    def covered(p, other):
        return any(subsumes(q, p) for q in other.get((p.frame, p.verb_type, p.voice), ()))

    c1 = {key(p) for p in fn1 if covered(p, b2)}
    c2 = {key(p) for p in fn2 if covered(p, b1)}
    k1, k2 = {key(p) for p in fn1}, {key(p) for p in fn2}
    final = shared_set(fn1, fn2, languages)
    return {"fn1": len(k1), "fn2": len(k2), "only1": len(k1 - c1), "only2": len(k2 - c2),
            "union": len(k1 | k2), "intersection": len(c1 | c2),
            "final_patterns": len(final), "final_frames": len(final.frames)}


@dataclass(frozen=True)
class _Projection:
    frame: str
    verb_type: VerbType
    voice: Voice
    fes: frozenset


def project(p: SentencePattern) -> _Projection:
    """Order-, marker- and non-core-free view of a sentence pattern."""
    return _Projection(p.frame, p.verb_type, p.voice,
                       frozenset(fe.triple() for fe in p.fes if fe.is_core))


def coverage_counts(shared: SharedSet, sentence_patterns: Mapping[str, Iterable[SentencePattern]]
                    ) -> dict[str, tuple[int, int]]:
    """(examples, covered examples) per language within the shared frames."""
    buckets = _bucket(shared.patterns)
    frames = shared.frames
    out = {}
    for lang, patterns in sentence_patterns.items():
        total = covered = 0
        for p in patterns:
            if p.frame not in frames:
                continue
            total += p.count
            proj = project(p)
            if any(subsumes(s, proj) for s in buckets.get((p.frame, p.verb_type, p.voice), ())):
                covered += p.count
        out[lang] = (total, covered)
    return out


def compute_coverage(shared: SharedSet, sentence_patterns: Mapping[str, Iterable[SentencePattern]]
                     ) -> dict[str, float]:
    """Share of examples in the shared frames whose projection is subsumed
    by some shared pattern, weighted by example counts."""
    out = {}
    for lang, (total, covered) in coverage_counts(shared, sentence_patterns).items():
        if total == 0:
            logger.warning("no examples of shared frames for %s; coverage set to 0", lang)
            out[lang] = 0.0
        else:
            out[lang] = covered / total
    return out


def shared_to_dict(s: SharedSet) -> dict:
    return {
        "languages": list(s.languages),
        "patterns": [
            {"frame": p.frame, "verb_type": p.verb_type.value, "voice": p.voice.value,
             "fes": [[t.fe_name, t.cat, t.rel] for t in sorted(p.fes)],
             "witnesses": {lang: None if w is None else valence_to_dict(w) for lang, w in p.witnesses}}
            for p in s.patterns
        ],
    }


def shared_from_dict(d: Mapping) -> SharedSet:
    langs = tuple(d["languages"])
    pats = []
    for p in d["patterns"]:
        wit = tuple((lang, None if p["witnesses"].get(lang) is None else valence_from_dict(p["witnesses"][lang]))
                    for lang in langs)
        pats.append(SharedPattern(p["frame"], VerbType(p["verb_type"]), Voice(p["voice"]),
                                  frozenset(FETriple(*t) for t in p["fes"]), wit))
    return SharedSet(langs, tuple(pats))
