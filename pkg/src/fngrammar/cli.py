"""Command line pipeline: ingest, extract, normalize, share, gen-grammar,
gen-lexicon, align, stats, realize and run (all stages in order).

Exit codes: 0 success, 1 data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import SCHEMA_VERSION, __version__
from .align import BilingualDict, align, aligned_to_dict, gen_shared_lexicon, unaligned_tsv
from .artifacts import ArtifactError, MissingArtifact, read_json, write_json, write_text
from .extract import Settings, extract_corpus, pattern_from_dict, pattern_to_dict
from .grammar import (GrammarError, category_census, census_tsv, gen_abstract, gen_concrete,
                      language_suffix)
from .ingest import (CorpusParseError, Scheme, parse_dependency_corpus, parse_phrase_structure_corpus,
                     sentence_from_dict, sentence_to_dict)
from .lexicon import (apply_paradigms, collect_lexicon, entry_from_dict, entry_to_dict, gen_abstract_lexicon,
                      gen_concrete_lexicon, lexicon_module_names, load_paradigms)
from .normalize import normalize, prune_singletons, restrict_patterns, summarize, valence_from_dict, valence_to_dict
from .gfparse import GFSyntaxError
from .realizer import Grammar, RealizationError
from .shared import (coverage_counts, frame_set_stats, pattern_set_stats, shared_from_dict, shared_set,
                     shared_to_dict)
from .stats import (COVERAGE_HEADER, FRAME_HEADER, PATTERN_HEADER, frame_row, pattern_row, settings_stats,
                    stats_tsv, tsv)

logger = logging.getLogger("fngrammar")

DEFAULT_OUT = os.environ.get("FNGRAMMAR_OUT", "out")
DEFAULT_SETTINGS = "2.B"
STAGES = ("ingest", "extract", "normalize", "share", "gen-grammar", "gen-lexicon", "align", "stats")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

def read_config(path: str | os.PathLike) -> dict[str, str]:
    """``key = value`` lines; ``#`` starts a comment."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = line.split("=", 1)
            values[key.strip()] = value.strip()
    return values


def _split(value: str) -> list[str]:
    return [v for v in value.replace(",", " ").split() if v]


@dataclass
class PipelineConfig:
    out: Path
    languages: list[str]
    corpora: dict[str, list[Path]] = field(default_factory=dict)
    schemes: dict[str, str] = field(default_factory=dict)
    settings: dict[str, Settings] = field(default_factory=dict)
    paradigms: dict[str, list[Path]] = field(default_factory=dict)
    core_fes: dict[str, Path] = field(default_factory=dict)
    dictionary: Path | None = None

    def lang_dir(self, lang: str) -> Path:
        return self.out / lang

    def settings_for(self, lang: str) -> Settings:
        return self.settings.get(lang) or Settings.parse(DEFAULT_SETTINGS)

    def settings_label(self) -> dict[str, str]:
        return {lang: str(self.settings_for(lang)) for lang in self.languages}


def _settings(text: str, where: str) -> Settings:
    try:
        return Settings.parse(text)
    except ValueError as exc:
        raise UsageError(f"{where}: {exc}") from None


def build_config(args: argparse.Namespace) -> PipelineConfig:
    raw: dict[str, str] = {}
    base = Path.cwd()
    if args.config:
        raw = read_config(args.config)
        base = Path(args.config).resolve().parent

    def path(p: str) -> Path:
        q = Path(p)
        return q if q.is_absolute() else base / q

    languages = _split(raw.get("languages", "eng swe"))
    if args.lang:
        languages = list(dict.fromkeys(args.lang))
    out = Path(args.out) if args.out else (path(raw["out"]) if "out" in raw else Path(DEFAULT_OUT))
    cfg = PipelineConfig(out=out, languages=languages)
    for lang in set(languages) | {k.split(".")[0] for k in raw if "." in k}:
        if f"{lang}.corpus" in raw:
            cfg.corpora[lang] = [path(p) for p in _split(raw[f"{lang}.corpus"])]
        if f"{lang}.scheme" in raw:
            cfg.schemes[lang] = raw[f"{lang}.scheme"]
        if f"{lang}.settings" in raw:
            cfg.settings[lang] = _settings(raw[f"{lang}.settings"], f"{lang}.settings")
        if f"{lang}.paradigms" in raw:
            cfg.paradigms[lang] = [path(p) for p in _split(raw[f"{lang}.paradigms"])]
        if f"{lang}.core_fes" in raw:
            cfg.core_fes[lang] = path(raw[f"{lang}.core_fes"])
    if "dict" in raw:
        cfg.dictionary = path(raw["dict"])
    if getattr(args, "corpus", None):
        if len(languages) != 1:
            raise UsageError("--corpus needs exactly one --lang")
        cfg.corpora[languages[0]] = [Path(p) for p in args.corpus]
    if getattr(args, "scheme", None):
        for lang in languages:
            cfg.schemes[lang] = args.scheme
    if getattr(args, "settings", None):
        for lang in languages:
            cfg.settings[lang] = _settings(args.settings, "--settings")
    if getattr(args, "paradigms", None):
        for lang in languages:
            cfg.paradigms[lang] = [Path(p) for p in args.paradigms]
    if getattr(args, "dict", None):
        cfg.dictionary = Path(args.dict)
    return cfg


def bundled_paradigms(lang: str) -> list[Path]:
    folder = resources.files("fngrammar").joinpath("data", "paradigms")
    return sorted(Path(str(p)) for p in folder.iterdir() if p.name.startswith(f"{lang}_") and p.name.endswith(".tsv"))


def load_core_fes(path: Path) -> dict[str, set]:
    """TSV ``frame, fe, core-type``; only core rows are kept."""
    table: dict[str, set] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        for row in csv.reader(fh, delimiter="\t"):
            if len(row) >= 3 and not row[0].startswith("#") and row[2].strip().lower().startswith("core"):
                table.setdefault(row[0].strip(), set()).add(row[1].strip())
    return table


# ---------------------------------------------------------------------------
# stages
# ---------------------------------------------------------------------------

def _detect_scheme(path: Path) -> Scheme:
    with open(path, "rb") as fh:
        head = fh.read(1 << 16)
    return Scheme.Dependency if b"<w " in head or b"<w>" in head else Scheme.PhraseStructure


def _scheme(value: str | None, path: Path) -> Scheme:
    if not value:
        return _detect_scheme(path)
    aliases = {"phrasestructure": Scheme.PhraseStructure, "ps": Scheme.PhraseStructure, "bfn": Scheme.PhraseStructure,
               "dependency": Scheme.Dependency, "dep": Scheme.Dependency, "swefn": Scheme.Dependency}
    if value.lower() not in aliases:
        raise UsageError(f"unknown scheme {value!r}")
    return aliases[value.lower()]


def _corpus_files(corpora: Sequence[Path]) -> list[Path]:
    """Expand directories to their ``*.xml`` files in name order."""
    files = []
    for path in corpora:
        if not path.exists():
            raise MissingArtifact(path, "ingest")
        files += sorted(path.glob("*.xml")) if path.is_dir() else [path]
    return files


def stage_ingest(cfg: PipelineConfig, lang: str) -> Path:
    corpora = cfg.corpora.get(lang)
    if not corpora:
        raise UsageError(f"ingest: no corpus configured for {lang} (use --corpus or {lang}.corpus)")
    core = load_core_fes(cfg.core_fes[lang]) if lang in cfg.core_fes else None
    sentences, rejects = [], []
    for path in _corpus_files(corpora):
        scheme = _scheme(cfg.schemes.get(lang), path)
        name = path.name
        if scheme == Scheme.PhraseStructure:
            sentences += parse_phrase_structure_corpus(path, lang, core, source_name=name)
        else:
            rej: list = []
            sentences += parse_dependency_corpus(path, lang, core, source_name=name, rejects=rej)
            rejects += rej
    data = {"sentences": [sentence_to_dict(s) for s in sentences],
            "rejects": [{"source_id": sid, "reason": why} for sid, why in rejects]}
    out = write_json(cfg.lang_dir(lang) / "sentences.json", "sentences", data)
    logger.info("ingest %s: %d sentences, %d rejected", lang, len(sentences), len(rejects))
    return out


def stage_extract(cfg: PipelineConfig, lang: str) -> Path:
    data, _ = read_json(cfg.lang_dir(lang) / "sentences.json", "sentences", "extract")
    settings = cfg.settings_for(lang)
    result = extract_corpus((sentence_from_dict(d) for d in data["sentences"]), settings)
    payload = {"patterns": [pattern_to_dict(p) for p in result.patterns],
               "skips": dict(sorted(result.skips.items()))}
    return write_json(cfg.lang_dir(lang) / "patterns.json", "sentence_patterns", payload, str(settings))


def _load_patterns(cfg: PipelineConfig, lang: str, stage: str):
    data, settings = read_json(cfg.lang_dir(lang) / "patterns.json", "sentence_patterns", stage)
    return [pattern_from_dict(d) for d in data["patterns"]], settings


def stage_normalize(cfg: PipelineConfig, lang: str, summary_frame: str | None = None,
                    min_valence: int = 1, min_sentence: int = 1) -> Path:
    patterns, settings = _load_patterns(cfg, lang, "normalize")
    valences = normalize(patterns)
    if Settings.parse(settings).prune:
        valences = prune_singletons(valences)
        patterns = restrict_patterns(patterns, valences)
    payload = {"valences": [valence_to_dict(v) for v in valences],
               "patterns": [pattern_to_dict(p) for p in patterns]}
    out = write_json(cfg.lang_dir(lang) / "valences.json", "valence_patterns", payload, settings)
    if summary_frame:
        sys.stdout.write(summarize(valences, None, summary_frame, min_valence_count=min_valence,
                                   min_sentence_count=min_sentence))
    return out


def _load_valences(cfg: PipelineConfig, lang: str, stage: str):
    data, settings = read_json(cfg.lang_dir(lang) / "valences.json", "valence_patterns", stage)
    return ([valence_from_dict(d) for d in data["valences"]],
            [pattern_from_dict(d) for d in data["patterns"]], settings)


def _pair(cfg: PipelineConfig, stage: str) -> tuple[str, str]:
    if len(cfg.languages) != 2:
        raise UsageError(f"{stage}: exactly two languages are needed, got {cfg.languages}")
    return cfg.languages[0], cfg.languages[1]


def stage_share(cfg: PipelineConfig) -> Path:
    l1, l2 = _pair(cfg, "share")
    v1, _, s1 = _load_valences(cfg, l1, "share")
    v2, _, s2 = _load_valences(cfg, l2, "share")
    shared = shared_set(v1, v2, (l1, l2))
    out = write_json(cfg.out / "shared.json", "shared_set", shared_to_dict(shared), {l1: s1, l2: s2})
    return out


def _load_shared(cfg: PipelineConfig, stage: str):
    data, settings = read_json(cfg.out / "shared.json", "shared_set", stage)
    return shared_from_dict(data), settings


def _gf_preamble(settings) -> str:
    label = " ".join(f"{k}={v}" for k, v in sorted(settings.items())) if isinstance(settings, dict) else settings
    return f"-- generated; schema_version={SCHEMA_VERSION}; settings: {label}\n"


def stage_gen_grammar(cfg: PipelineConfig) -> Path:
    shared, settings = _load_shared(cfg, "gen-grammar")
    gdir = cfg.out / "grammar"
    pre = _gf_preamble(settings)
    write_text(gdir / "FrameNet.gf", pre + gen_abstract(shared))
    for lang in shared.languages:
        write_text(gdir / f"FrameNet{language_suffix(lang)}.gf", pre + gen_concrete(shared, lang))
    write_text(gdir / "signatures.tsv", _tsv_preamble(settings) + census_tsv(shared))
    census = category_census(shared)
    write_text(gdir / "categories.tsv", tsv(("category", "count"), sorted(census.items()) +
                                            [("total", sum(census.values()))],
                                            _provenance(settings)))
    return gdir


def _settings_label(settings) -> str:
    if not settings:
        return "none"
    if isinstance(settings, dict):
        return ":".join(str(v) for v in settings.values())
    return str(settings)


def stage_gen_lexicon(cfg: PipelineConfig, lang: str) -> Path:
    shared, settings = _load_shared(cfg, "gen-lexicon")
    _, patterns, _ = _load_valences(cfg, lang, "gen-lexicon")
    entries = collect_lexicon(shared, patterns)
    files = cfg.paradigms.get(lang) or bundled_paradigms(lang)
    for f in files:
        if not Path(f).exists():
            raise MissingArtifact(Path(f), "gen-lexicon")
    paradigms = load_paradigms(files)
    text, report = gen_concrete_lexicon(entries, paradigms, lang)
    entries, _ = apply_paradigms(entries, paradigms)
    abs_name, name = lexicon_module_names(lang)
    pre = _gf_preamble(settings)
    gdir = cfg.out / "grammar"
    write_text(gdir / f"{abs_name}.gf", pre + gen_abstract_lexicon(entries, lang))
    write_text(gdir / f"{name}.gf", pre + text)
    write_text(cfg.out / "lexicon" / f"{lang}_gaps.tsv", _tsv_preamble(settings) + report.tsv())
    write_json(cfg.out / "lexicon" / f"{lang}.json", "lexicon",
               {"entries": [entry_to_dict(e) for e in entries],
                "linearized": report.linearized, "total": report.total}, settings)
    return gdir / f"{name}.gf"


def stage_align(cfg: PipelineConfig, by_frequency: bool = False) -> Path:
    l1, l2 = _pair(cfg, "align")
    if cfg.dictionary is None:
        raise UsageError("align: no bilingual dictionary configured (use --dict or dict = ...)")
    if not cfg.dictionary.exists():
        raise MissingArtifact(cfg.dictionary, "align")
    d1, settings = read_json(cfg.out / "lexicon" / f"{l1}.json", "lexicon", "align")
    d2, _ = read_json(cfg.out / "lexicon" / f"{l2}.json", "lexicon", "align")
    e1 = [entry_from_dict(e) for e in d1["entries"]]
    e2 = [entry_from_dict(e) for e in d2["entries"]]
    aligned, missed = align(e1, e2, BilingualDict.load(cfg.dictionary), by_frequency=by_frequency)
    pre = _gf_preamble(settings)
    for name, text in gen_shared_lexicon(aligned, l1, l2).items():
        write_text(cfg.out / "grammar" / f"{name}.gf", pre + text)
    write_text(cfg.out / "lexicon" / "unaligned.tsv", _tsv_preamble(settings) + unaligned_tsv(missed))
    return write_json(cfg.out / "lexicon" / "aligned.json", "alignment",
                      {"aligned": [aligned_to_dict(a) for a in aligned],
                       "unaligned": [{"entry_id": u.entry_id, "reason": u.reason} for u in missed]}, settings)


def _provenance(settings) -> str:
    return f"schema_version={SCHEMA_VERSION} settings={_settings_label(settings)}"


def _tsv_preamble(settings) -> str:
    return f"# {_provenance(settings)}\n"


def _stats_inputs(cfg: PipelineConfig, lang: str):
    """(valences, sentence patterns, settings) from the latest available stage, or None."""
    if (cfg.lang_dir(lang) / "valences.json").exists():
        return _load_valences(cfg, lang, "stats")
    if (cfg.lang_dir(lang) / "patterns.json").exists():
        patterns, settings = _load_patterns(cfg, lang, "stats")
        return normalize(patterns), patterns, settings
    return None


def stage_stats(cfg: PipelineConfig) -> Path:
    """Tables 4 to 8 shaped TSVs; inputs that are missing or empty give header-only files."""
    sdir = cfg.out / "stats"
    loaded, used = {}, {}
    for lang in cfg.languages:
        rows = []
        found = _stats_inputs(cfg, lang)
        if found is not None:
            valences, patterns, settings = found
            used[lang] = settings
            if valences:
                loaded[lang] = (valences, patterns)
                rows.append(settings_stats(settings, patterns, valences))
        write_text(sdir / f"extraction_{lang}.tsv", stats_tsv(rows, _provenance(used.get(lang))))
    label = _settings_label(used)
    pre = _provenance(used)
    frame_rows, pattern_rows = [], []
    if len(cfg.languages) == 2 and all(lang in loaded for lang in cfg.languages):
        (v1, _), (v2, _) = loaded[cfg.languages[0]], loaded[cfg.languages[1]]
        frame_rows.append(frame_row(label, frame_set_stats(v1, v2)))
        pattern_rows.append(pattern_row(label, pattern_set_stats(v1, v2, tuple(cfg.languages))))
    write_text(sdir / "frame_sets.tsv", tsv(FRAME_HEADER, frame_rows, pre))
    write_text(sdir / "pattern_sets.tsv", tsv(PATTERN_HEADER, pattern_rows, pre))
    cov_rows = []
    census_text = "verb_type\tvoice\targuments\tfrequency\n"
    if (cfg.out / "shared.json").exists() and loaded:
        shared, _ = _load_shared(cfg, "stats")
        census_text = census_tsv(shared)
        per_lang = {lang: loaded[lang][1] for lang in shared.languages if lang in loaded}
        for lang, (total, covered) in coverage_counts(shared, per_lang).items():
            cov_rows.append((lang, total, covered, f"{covered / total:.4f}" if total else "0.0000"))
    write_text(sdir / "signature_census.tsv", f"# {pre}\n" + census_text)
    write_text(sdir / "coverage.tsv", tsv(COVERAGE_HEADER, cov_rows, pre))
    return sdir


def stage_realize(cfg: PipelineConfig, lang: str, fun: str, args: Sequence[str], verb: str,
                  tense: str, adjuncts: Sequence[str], grammar_dir: Path | None) -> str:
    gdir = grammar_dir or cfg.out / "grammar"
    if not gdir.exists():
        raise MissingArtifact(gdir, "realize")
    g = Grammar.load(gdir, lang)
    values = [None if a in ("_", "") else a for a in args]
    try:
        return g.realize(fun, values, verb, tense, adjuncts)
    except RealizationError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    def add_common(p: argparse.ArgumentParser, default) -> None:
        p.add_argument("--config", default=default, help="key = value configuration file")
        p.add_argument("--out", default=default, help=f"output directory (default: {DEFAULT_OUT})")
        p.add_argument("--lang", action="append", default=default, help="language code; repeat for several")
        p.add_argument("--settings", default=default, help="extraction settings such as 2.B or 3.0")
        p.add_argument("-v", "--verbose", action="store_true", default=default)

    # global options are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    add_common(common, argparse.SUPPRESS)
    parser = _Parser(prog="fngrammar", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    add_common(parser, None)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ingest", parents=[common], help="parse corpus XML into sentences.json")
    p.add_argument("--corpus", nargs="+", help="corpus XML file(s)")
    p.add_argument("--scheme", help="PhraseStructure or Dependency (detected when omitted)")
    sub.add_parser("extract", parents=[common], help="sentence patterns")
    p = sub.add_parser("normalize", parents=[common], help="valence patterns (with pruning at level 3)")
    p.add_argument("--summary", metavar="FRAME", help="print a pattern summary for FRAME")
    p.add_argument("--min-valence", type=int, default=1)
    p.add_argument("--min-sentence", type=int, default=1)
    sub.add_parser("share", parents=[common], help="shared valence patterns of two languages")
    sub.add_parser("gen-grammar", parents=[common], help="abstract and concrete grammar modules")
    p = sub.add_parser("gen-lexicon", parents=[common], help="per-language lexicon modules")
    p.add_argument("--paradigms", nargs="+", help="paradigm TSV files, lowest preference first")
    p = sub.add_parser("align", parents=[common], help="shared lexicon through a bilingual dictionary")
    p.add_argument("--dict", help="bilingual dictionary TSV")
    p.add_argument("--by-frequency", action="store_true", help="order variants by corpus frequency")
    sub.add_parser("stats", parents=[common], help="statistics tables")
    p = sub.add_parser("realize", parents=[common], help="linearize one frame function application")
    p.add_argument("--grammar", help="directory of generated modules (default: OUT/grammar)")
    p.add_argument("--fun", required=True, help="frame function name")
    p.add_argument("--verb", required=True, help="lexicon id or verb constructor expression")
    p.add_argument("--arg", action="append", default=[], help="FE argument in declared order; _ for absent")
    p.add_argument("--tense", choices=("Pres", "Past"), default="Pres")
    p.add_argument("--adjunct", action="append", default=[])
    p = sub.add_parser("run", parents=[common], help="run every stage")
    p.add_argument("--paradigms", nargs="+")
    p.add_argument("--dict")
    return parser


def _dispatch(args: argparse.Namespace) -> int:
    cfg = build_config(args)
    cmd = args.command
    if cmd == "ingest":
        for lang in cfg.languages:
            stage_ingest(cfg, lang)
    elif cmd == "extract":
        for lang in cfg.languages:
            stage_extract(cfg, lang)
    elif cmd == "normalize":
        for lang in cfg.languages:
            stage_normalize(cfg, lang, args.summary, args.min_valence, args.min_sentence)
    elif cmd == "share":
        stage_share(cfg)
    elif cmd == "gen-grammar":
        stage_gen_grammar(cfg)
    elif cmd == "gen-lexicon":
        for lang in cfg.languages:
            stage_gen_lexicon(cfg, lang)
    elif cmd == "align":
        stage_align(cfg, args.by_frequency)
    elif cmd == "stats":
        stage_stats(cfg)
    elif cmd == "realize":
        if len(cfg.languages) != 1:
            raise UsageError("realize needs exactly one --lang")
        print(stage_realize(cfg, cfg.languages[0], args.fun, args.arg, args.verb, args.tense,
                            args.adjunct, Path(args.grammar) if args.grammar else None))
    elif cmd == "run":
        for lang in cfg.languages:
            stage_ingest(cfg, lang)
            stage_extract(cfg, lang)
            stage_normalize(cfg, lang)
        stage_share(cfg)
        stage_gen_grammar(cfg)
        for lang in cfg.languages:
            stage_gen_lexicon(cfg, lang)
        if cfg.dictionary is not None:
            stage_align(cfg)
        stage_stats(cfg)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return _dispatch(args)
    except UsageError as exc:
        _report(args.command, exc)
        return 2
    except (ArtifactError, CorpusParseError, GrammarError, GFSyntaxError, RealizationError, OSError) as exc:
        _report(args.command, exc)
        return 1


def _report(command: str, exc: Exception) -> None:
    msg = str(exc)
    prefix = "fngrammar" if msg.startswith(f"{command}:") else f"fngrammar {command}"
    print(f"{prefix}: {msg}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
