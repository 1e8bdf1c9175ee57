"""Group sentence patterns into order-free valence patterns and summarize them."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, replace
from typing import Iterable, Mapping

from .categories import PhraseCat, VerbType, Voice
from .extract import FETriple, SentencePattern, pattern_from_dict, pattern_to_dict


@dataclass(frozen=True)
class ValencePattern:
    frame: str
    verb_type: VerbType
    voice: Voice
    fes: frozenset
    count: int = 1
    top_sentence_pattern: SentencePattern | None = None
    members: tuple[SentencePattern, ...] = ()

    def key(self) -> tuple:
        return (self.frame, self.verb_type, self.voice, self.fes)

    def fe_string(self) -> str:
        return " ".join(str(t) for t in sorted(self.fes, key=str))

    def __str__(self) -> str:
        return f"{self.frame}/{self.verb_type}({self.voice}): {self.fe_string()}"


def valence_key(p: SentencePattern) -> tuple:
    return (p.frame, p.verb_type, p.voice, frozenset(fe.triple() for fe in p.fes))


def _top_rank(p: SentencePattern) -> tuple:
    unmarked_adv = sum(1 for fe in p.fes if fe.cat == PhraseCat.Adv and not fe.marker)
    return (-p.count, unmarked_adv, p.fe_string())


def _member_rank(p: SentencePattern) -> tuple:
    return (-p.count, p.fe_string())


def normalize(patterns: Iterable[SentencePattern]) -> list[ValencePattern]:
    """Group by (frame, verb type, voice, FE triple set), summing counts.

    Members are the LU-free sentence shapes of each group.  The top sentence
    pattern is the most frequent member; ties prefer fewer unmarked Adv FEs,
    then the lexicographically smaller serialization.
    """
    shapes: dict[tuple, dict[SentencePattern, int]] = defaultdict(dict)
    for p in patterns:
        bucket = shapes[valence_key(p)]
        shape = p.shape()
        bucket[shape] = bucket.get(shape, 0) + p.count
    out = []
    for key, bucket in shapes.items():
        members = sorted((replace(s, count=c) for s, c in bucket.items()), key=_member_rank)
        top = min(members, key=_top_rank)
        out.append(ValencePattern(*key, count=sum(bucket.values()), top_sentence_pattern=top,
                                  members=tuple(members)))
    return sort_valences(out)


def sort_valences(valences: Iterable[ValencePattern]) -> list[ValencePattern]:
    return sorted(valences, key=lambda v: (v.frame, v.voice.value, -v.count, v.fe_string(), v.verb_type.value))


def prune_singletons(valences: Iterable[ValencePattern]) -> list[ValencePattern]:
    """Drop once-used patterns of frames that have a pattern used more than once."""
    valences = list(valences)
    busy = {v.frame for v in valences if v.count > 1}
    return [v for v in valences if v.count > 1 or v.frame not in busy]


def restrict_patterns(patterns: Iterable[SentencePattern],
                      valences: Iterable[ValencePattern]) -> list[SentencePattern]:
    """Sentence patterns whose valence pattern survived pruning."""
    keys = {v.key() for v in valences}
    return [p for p in patterns if valence_key(p) in keys]


def summarize(valences: Iterable[ValencePattern], sentence_patterns: Iterable[SentencePattern] | None,
              frame: str, *, min_valence_count: int = 1, min_sentence_count: int = 1) -> str:
    """Indented report: voice, then valence patterns, then sentence patterns.

    Valence lines list FEs alphabetically, sentence lines in surface order.
    Lines under the thresholds are folded into a single ``...`` line.
    When ``sentence_patterns`` is None the valence members are reported.
    """
    vals = [v for v in valences if v.frame == frame]
    if sentence_patterns is not None:
        vals = normalize(p for p in sentence_patterns if p.frame == frame and
                         any(valence_key(p) == v.key() for v in vals))
    lines = []
    for voice in Voice:
        group = sorted((v for v in vals if v.voice == voice), key=lambda v: (-v.count, v.fe_string()))
        if not group:
            continue
        lines.append(f"{voice.value} : {sum(v.count for v in group)}")
        hidden = False
        for v in group:
            if v.count < min_valence_count:
                hidden = True
                continue
            lines.append(f"  {v.fe_string()} : {v.count}")
            folded = False
            for m in sorted(v.members, key=_member_rank):
                if m.count < min_sentence_count:
                    folded = True
                    continue
                lines.append(f"    {m.fe_string()} : {m.count}")
            if folded:
                lines.append("    ...")
        if hidden:
            lines.append("  ...")
    return "\n".join(lines) + ("\n" if lines else "")


def valence_to_dict(v: ValencePattern) -> dict:
    return {
        "frame": v.frame, "verb_type": v.verb_type.value, "voice": v.voice.value,
        "fes": [[t.fe_name, t.cat, t.rel] for t in sorted(v.fes)], "count": v.count,
        "top_sentence_pattern": None if v.top_sentence_pattern is None else pattern_to_dict(v.top_sentence_pattern),
        "members": [pattern_to_dict(m) for m in v.members],
    }


def valence_from_dict(d: Mapping) -> ValencePattern:
    top = d.get("top_sentence_pattern")
    return ValencePattern(d["frame"], VerbType(d["verb_type"]), Voice(d["voice"]),
                          frozenset(FETriple(*t) for t in d["fes"]), d["count"],
                          None if top is None else pattern_from_dict(top),
                          tuple(pattern_from_dict(m) for m in d.get("members", [])))
