"""Align lexical entries across two languages through a bilingual dictionary."""

from __future__ import annotations

import csv
import logging
import os
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .grammar import language_suffix
from .lexicon import LexEntry, MweClass, lexicon_module_names

logger = logging.getLogger(__name__)


class BilingualDict:
    """Lemma pairs ``l1 -> {l2, ...}``; a third column may carry a verb-type hint."""

    def __init__(self, pairs: Iterable[tuple[str, str]] = ()):
        self._map: dict[str, set[str]] = defaultdict(set)
        for a, b in pairs:
            self.add(a, b)

    def add(self, l1: str, l2: str) -> None:
        self._map[l1.strip().lower()].add(l2.strip().lower())

    def targets(self, lemma: str) -> frozenset[str]:
        return frozenset(self._map.get(lemma.strip().lower(), ()))

    def __len__(self) -> int:
        return sum(len(v) for v in self._map.values())

    @classmethod
    def load(cls, path: str | os.PathLike) -> "BilingualDict":
        d = cls()
        with open(path, encoding="utf-8", newline="") as fh:
            for lineno, row in enumerate(csv.reader(fh, delimiter="\t", quoting=csv.QUOTE_NONE), start=1):
                if not row or row[0].startswith("#") or not "".join(row).strip():
                    continue
                if len(row) < 2 or not row[0].strip() or not row[1].strip():
                    logger.warning("%s:%d: bad dictionary line skipped", path, lineno)
                    continue
                d.add(row[0], row[1])
        return d


@dataclass(frozen=True)
class AlignedEntry:
    interlingua_id: str
    l1_entry: LexEntry
    l2_variants: tuple[LexEntry, ...]
    fallback_used: bool = False


@dataclass(frozen=True)
class Unaligned:
    entry_id: str
    reason: str  # NoDictEntry | NoFrameTypeMatch | TargetUnlinearized


def variant_order(entries: Iterable[LexEntry], by_frequency: bool = False) -> list[LexEntry]:
    """Simple verbs before MWEs, then alphabetical; or by descending count."""
    if by_frequency:
        return sorted(entries, key=lambda e: (-e.count, e.id))
    return sorted(entries, key=lambda e: (e.mwe_class != MweClass.Simple, e.id))


def align(l1: Sequence[LexEntry], l2: Sequence[LexEntry], dictionary: BilingualDict, *,
          by_frequency: bool = False, require_linearized: bool = True
          ) -> tuple[list[AlignedEntry], list[Unaligned]]:
    index: dict[tuple, list[LexEntry]] = defaultdict(list)
    for e in l2:
        index[(e.frame, e.verb_type)].append(e)

    aligned, missed = [], []
    for e in sorted(l1, key=lambda e: e.id):
        pool = index.get((e.frame, e.verb_type), [])
        attempts = [(dictionary.targets(e.base_form), False)]
        if e.is_mwe:
            attempts.append((dictionary.targets(e.main_verb), True))
        reason = "NoDictEntry"
        result = None
        for targets, fallback in attempts:
            if not targets:
                continue
            cands = [c for c in pool if c.base_form.lower() in targets or c.main_verb.lower() in targets]
            if not cands:
                reason = "NoFrameTypeMatch" if reason == "NoDictEntry" else reason
                continue
            usable = [c for c in cands if c.linearization is not None or not require_linearized]
            if not usable:
                reason = "TargetUnlinearized"
                continue
            result = AlignedEntry(e.id, e, tuple(variant_order(usable, by_frequency)), fallback)
            break
        if result is None:
            missed.append(Unaligned(e.id, reason))
        else:
            aligned.append(result)
    return aligned, missed


def unaligned_tsv(missed: Iterable[Unaligned]) -> str:
    return "\n".join(["entry_id\treason"] + [f"{u.entry_id}\t{u.reason}" for u in missed]) + "\n"


def gen_shared_lexicon(aligned: Sequence[AlignedEntry], l1_language: str = "eng",
                       l2_language: str = "swe", module: str = "LexFrameNet") -> dict[str, str]:
    """Abstract module plus one concrete module per language, keyed by module name."""
    items = sorted(aligned, key=lambda a: a.interlingua_id)
    abstract = [f"abstract {module} = Cat ** {{", ""]
    abstract += [f"  fun {a.interlingua_id} : {a.l1_entry.verb_type.value} ;" for a in items]
    abstract.append("}")
    out = {module: "\n".join(abstract) + "\n"}

    for lang, rhs in ((l1_language, lambda a: a.l1_entry.id), (l2_language, _variants)):
        suf = language_suffix(lang)
        _, lex = lexicon_module_names(lang)
        lines = [f"concrete {module}{suf} of {module} = Cat{suf} ** open {lex} in {{", ""]
        lines += [f"  lin {a.interlingua_id} = {rhs(a)} ;" for a in items]
        lines.append("}")
        out[f"{module}{suf}"] = "\n".join(lines) + "\n"
    return out


def _variants(a: AlignedEntry) -> str:
    ids = [v.id for v in a.l2_variants]
    return ids[0] if len(ids) == 1 else "variants {" + " | ".join(ids) + "}"


def aligned_to_dict(a: AlignedEntry) -> dict:
    return {"interlingua_id": a.interlingua_id, "l1": a.l1_entry.id,
            "l2_variants": [v.id for v in a.l2_variants], "fallback_used": a.fallback_used}
