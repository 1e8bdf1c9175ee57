"""Tabular statistics: per-settings extraction counts, frame and pattern
set comparisons, signature census and coverage."""

from __future__ import annotations

from dataclasses import astuple, dataclass, fields
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Mapping, Sequence

from .extract import SentencePattern
from .normalize import ValencePattern


def round_half_up(x: float, digits: int = 0):
    q = Decimal(1).scaleb(-digits)
    value = Decimal(str(x)).quantize(q, rounding=ROUND_HALF_UP)
    return int(value) if digits == 0 else float(value)


def ratio(a: int, b: int, digits: int = 1):
    return round_half_up(a / b, digits) if b else 0


def percent(a: int, b: int) -> int:
    return round_half_up(100 * a / b) if b else 0


@dataclass(frozen=True)
class StatsRow:
    settings: str
    frames: int
    lus: int
    valence_patterns: int
    valence_per_frame: int
    sentence_patterns: int
    sentence_per_valence: float
    examples: int
    examples_per_sentence: float


STATS_HEADER = tuple(f.name for f in fields(StatsRow))


def settings_stats(settings: str, sentence_patterns: Iterable[SentencePattern],
                   valences: Sequence[ValencePattern]) -> StatsRow:
    """Counts for one extraction run.  Sentence patterns are counted as
    distinct LU-free shapes; LUs as distinct (frame, lemma) pairs."""
    pats = list(sentence_patterns)
    frames = {v.frame for v in valences}
    lus = {(p.frame, p.lu) for p in pats}
    shapes = {p.shape() for p in pats}
    examples = sum(p.count for p in pats)
    nv, ns = len(valences), len(shapes)
    return StatsRow(settings, len(frames), len(lus), nv, ratio(nv, len(frames), 0), ns,
                    ratio(ns, nv), examples, ratio(examples, ns))


def tsv(header: Sequence[str], rows: Iterable[Sequence], preamble: str | None = None) -> str:
    lines = [f"# {preamble}"] if preamble else []
    lines.append("\t".join(header))
    lines += ["\t".join(str(c) for c in row) for row in rows]
    return "\n".join(lines) + "\n"


def stats_tsv(rows: Iterable[StatsRow], preamble: str | None = None) -> str:
    return tsv(STATS_HEADER, (astuple(r) for r in rows), preamble)


FRAME_HEADER = ("settings", "fn1", "fn2", "only1", "only1_pct", "only2", "only2_pct", "union",
                "intersection", "intersection_pct")


def frame_row(settings: str, s: Mapping[str, int]) -> tuple:
    return (settings, s["fn1"], s["fn2"], s["only1"], percent(s["only1"], s["fn1"]), s["only2"],
            percent(s["only2"], s["fn2"]), s["union"], s["intersection"], percent(s["intersection"], s["union"]))


PATTERN_HEADER = FRAME_HEADER + ("final_patterns", "final_frames")


def pattern_row(settings: str, s: Mapping[str, int]) -> tuple:
    return frame_row(settings, s) + (s["final_patterns"], s["final_frames"])


COVERAGE_HEADER = ("language", "examples", "covered", "coverage")
