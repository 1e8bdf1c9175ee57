"""Per-language verb lexicons: entry collection, paradigms and linearization."""

from __future__ import annotations

import csv
import enum
import logging
import os
import re
import shlex
from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

from .categories import VerbType
from .extract import LuMorph, SentencePattern
from .grammar import language_suffix
from .shared import SharedSet, project, subsumes

logger = logging.getLogger(__name__)


class MweClass(str, enum.Enum):
    Simple = "Simple"
    Particle = "Particle"
    Reflexive = "Reflexive"
    ParticleParticle = "ParticleParticle"
    ParticleReflexive = "ParticleReflexive"
    ReflexiveParticle = "ReflexiveParticle"
    Unsupported = "Unsupported"

    def __str__(self) -> str:
        return self.value


MWE_PATTERNS: dict[tuple[str, ...], MweClass] = {
    ("VERB.Fin",): MweClass.Simple,
    ("VERB.Fin", "ADP"): MweClass.Particle,
    ("VERB.Fin", "ADP", "ADP"): MweClass.ParticleParticle,
    ("VERB.Fin", "ADP", "PRON.Reflex"): MweClass.ParticleReflexive,
    ("VERB.Fin", "PRON.Reflex"): MweClass.Reflexive,
    ("VERB.Fin", "PRON.Reflex", "ADP"): MweClass.ReflexiveParticle,
}

COERCIONS = {
    VerbType.V: None, VerbType.V2: "mkV2", VerbType.V3: "mkV3", VerbType.VV: "mkVV",
    VerbType.VS: "mkVS", VerbType.VQ: "mkVQ", VerbType.V2V: "mkV2V", VerbType.V2S: "mkV2S",
    VerbType.V2Q: "mkV2Q",
}


def classify_mwe(m: LuMorph | Sequence[str]) -> MweClass:
    comps = tuple(m.components if isinstance(m, LuMorph) else m)
    return MWE_PATTERNS.get(comps, MweClass.Unsupported)


def entry_id(base_form: str, verb_type: VerbType, frame: str) -> str:
    return f"{'_'.join(base_form.split())}_{verb_type.value}_{frame}"


@dataclass(frozen=True)
class LexEntry:
    id: str
    base_form: str
    verb_type: VerbType
    frame: str
    lu_morph: LuMorph
    linearization: str | None = None
    mwe_class: MweClass = MweClass.Simple
    count: int = 0

    @property
    def main_verb(self) -> str:
        return self.base_form.split()[0] if self.base_form.split() else self.base_form

    @property
    def is_mwe(self) -> bool:
        return len(self.lu_morph.components) > 1


def collect_lexicon(shared: SharedSet, sentence_patterns: Iterable[SentencePattern]) -> list[LexEntry]:
    """One entry per (base form, verb type, frame) among sentence patterns whose
    order-free projection is subsumed by a shared pattern."""
    buckets: dict[tuple, list] = {}
    for p in shared.patterns:
        buckets.setdefault((p.frame, p.verb_type, p.voice), []).append(p)
    found: dict[str, LexEntry] = {}
    for sp in sentence_patterns:
        if sp.lu_morph is None:
            continue
        proj = project(sp)
        if not any(subsumes(s, proj) for s in buckets.get((sp.frame, sp.verb_type, sp.voice), ())):
            continue
        eid = entry_id(sp.lu_morph.base_form, sp.verb_type, sp.frame)
        if eid in found:
            found[eid] = replace(found[eid], count=found[eid].count + sp.count)
        else:
            found[eid] = LexEntry(eid, sp.lu_morph.base_form, sp.verb_type, sp.frame, sp.lu_morph,
                                  None, classify_mwe(sp.lu_morph), sp.count)
    return sorted(found.values(), key=lambda e: e.id)


# ---------------------------------------------------------------------------
# paradigms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParadigmRef:
    constructor: str
    argument_forms: tuple[str, ...]
    source_priority: int = 1

    def expression(self) -> str:
        return " ".join([self.constructor] + [f'"{f}"' for f in self.argument_forms])


_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")


def _parse_paradigm_row(row: list[str]) -> tuple[str, str, tuple[str, ...]] | None:
    row = [c.strip() for c in row if c.strip()]
    if len(row) == 2 and " " in row[1]:
        try:
            parts = shlex.split(row[1])
        except ValueError:
            return None
        row = [row[0]] + parts
    if len(row) < 3 or not _IDENT.match(row[1]):
        return None
    return row[0], row[1], tuple(row[2:])


def load_paradigms(resources: Sequence[str | os.PathLike]) -> dict[str, ParadigmRef]:
    """Read ``lemma TAB constructor TAB form...`` files, lowest preference first.

    A later file overrides an earlier one.  Within one file the first
    occurrence of a lemma wins.  Unparseable lines are skipped with a warning.
    """
    table: dict[str, ParadigmRef] = {}
    for priority, path in enumerate(resources, start=1):
        local: dict[str, ParadigmRef] = {}
        with open(path, encoding="utf-8", newline="") as fh:
            for lineno, row in enumerate(csv.reader(fh, delimiter="\t", quoting=csv.QUOTE_NONE), start=1):
                if not row or not "".join(row).strip() or row[0].startswith("#"):
                    continue
                parsed = _parse_paradigm_row(row)
                if parsed is None:
                    logger.warning("%s:%d: unparseable paradigm line skipped", path, lineno)
                    continue
                lemma, cons, forms = parsed
                if lemma in local:
                    logger.warning("%s:%d: duplicate lemma %r ignored (first occurrence kept)",
                                   path, lineno, lemma)
                    continue
                local[lemma] = ParadigmRef(cons, forms, priority)
        table.update(local)
    return table


# ---------------------------------------------------------------------------
# linearization
# ---------------------------------------------------------------------------

def _q(s: str) -> str:
    return f'"{s}"'


def _wrap(expr: str) -> str:
    return f"({expr})" if " " in expr else expr


def linearize(entry: LexEntry, paradigms: Mapping[str, ParadigmRef]) -> tuple[str | None, str | None]:
    """(expression, None) or (None, reason)."""
    if entry.mwe_class == MweClass.Unsupported:
        return None, "UnsupportedMWE"
    words = entry.base_form.split()
    ref = paradigms.get(words[0]) if words else None
    if ref is None:
        return None, "OutOfVocabulary"
    expr = ref.expression()
    comps = entry.lu_morph.components[1:]
    i = 0
    while i < len(comps):
        if comps[i] == "ADP":
            j = i
            while j < len(comps) and comps[j] == "ADP":
                j += 1
            expr = f"partV {_wrap(expr)} {_q(' '.join(words[1 + i:1 + j]))}"
            i = j
        else:  # PRON.Reflex
            expr = f"reflV {_wrap(expr)}"
            i += 1
    coercion = COERCIONS[entry.verb_type]
    if coercion:
        expr = f"{coercion} {_wrap(expr)}"
    return expr, None


@dataclass(frozen=True)
class LexiconReport:
    total: int
    linearized: int
    gaps: tuple[tuple[str, str, str], ...]  # (entry id, reason, morph pattern)

    def tsv(self) -> str:
        lines = ["entry_id\treason\tpattern"] + ["\t".join(g) for g in self.gaps]
        return "\n".join(lines) + "\n"


def apply_paradigms(entries: Iterable[LexEntry], paradigms: Mapping[str, ParadigmRef]
                    ) -> tuple[list[LexEntry], LexiconReport]:
    out, gaps = [], []
    for e in entries:
        expr, reason = linearize(e, paradigms)
        out.append(replace(e, linearization=expr))
        if expr is None:
            gaps.append((e.id, reason, e.lu_morph.pattern()))
    return out, LexiconReport(len(out), len(out) - len(gaps), tuple(gaps))


def lexicon_module_names(language: str) -> tuple[str, str]:
    suf = language_suffix(language)
    return f"Lex{suf}Abs", f"Lex{suf}"


def gen_abstract_lexicon(entries: Iterable[LexEntry], language: str) -> str:
    abs_name, _ = lexicon_module_names(language)
    lines = [f"abstract {abs_name} = Cat ** {{", ""]
    lines += [f"  fun {e.id} : {e.verb_type.value} ;" for e in sorted(entries, key=lambda e: e.id)]
    lines.append("}")
    return "\n".join(lines) + "\n"


def gen_concrete_lexicon(entries: Iterable[LexEntry], paradigms: Mapping[str, ParadigmRef],
                         language: str) -> tuple[str, LexiconReport]:
    """Concrete lexicon module text and a linearization coverage report."""
    lin_entries, report = apply_paradigms(entries, paradigms)
    reasons = {g[0]: g[1] for g in report.gaps}
    abs_name, name = lexicon_module_names(language)
    suf = language_suffix(language)
    lines = [f"concrete {name} of {abs_name} = Cat{suf} ** open Paradigms{suf} in {{", ""]
    for e in sorted(lin_entries, key=lambda e: e.id):
        if e.linearization is None:
            lines.append(f"  -- {e.id} : unlinearized ({reasons[e.id]}: {e.lu_morph.pattern()})")
        else:
            lines.append(f"  lin {e.id} = {e.linearization} ;")
    lines.append("}")
    return "\n".join(lines) + "\n", report


def entry_to_dict(e: LexEntry) -> dict:
    return {"id": e.id, "base_form": e.base_form, "verb_type": e.verb_type.value, "frame": e.frame,
            "lu_morph": {"components": list(e.lu_morph.components), "base_form": e.lu_morph.base_form},
            "linearization": e.linearization, "mwe_class": e.mwe_class.value, "count": e.count}


def entry_from_dict(d: Mapping) -> LexEntry:
    m = d["lu_morph"]
    return LexEntry(d["id"], d["base_form"], VerbType(d["verb_type"]), d["frame"],
                    LuMorph(tuple(m["components"]), m["base_form"]), d.get("linearization"),
                    MweClass(d.get("mwe_class", "Simple")), d.get("count", 0))
