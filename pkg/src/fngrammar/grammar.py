"""Generate abstract and concrete frame-grammar modules from a shared set.

Output is plain text in the GF module dialect (``abstract``/``concrete``,
``cat``/``fun``/``lincat``/``lin``).  Nothing here depends on a grammar
compiler; the bundled realizer can evaluate the generated rules.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .categories import GrammRel, PhraseCat, VerbType, Voice
from .shared import SharedPattern, SharedSet

RESULT_CAT = "Clause"

EMPTY = {"NP": "emptyNP", "VP": "emptyVP", "Adv": "emptyAdv", "S": "emptyS", "QS": "emptyQS"}

# Every syntactic signature a concrete template exists for, with its
# frequency in the reference shared set.  Arguments are sorted labels.
TEMPLATE_SIGNATURES: dict[tuple[str, str, str], int] = {
    ("V2", "Act", "NP_dobj NP_nsubj"): 277,
    ("V", "Act", "Adv NP_nsubj"): 155,
    ("V2", "Pass", "NP_nsubjpass"): 84,
    ("V2", "Act", "Adv NP_dobj NP_nsubj"): 80,
    ("V", "Act", "NP_nsubj"): 78,
    ("V2", "Pass", "Adv NP_nsubjpass"): 34,
    ("VS", "Act", "NP_nsubj S"): 29,
    ("VV", "Act", "NP_nsubj VP"): 21,
    ("V2", "Pass", "NP_dobj NP_nsubjpass"): 19,
    ("V2", "Act", "NP_dobj"): 17,
    ("V", "Act", "Adv Adv NP_nsubj"): 16,
    ("VQ", "Act", "NP_nsubj QS"): 10,
    ("V2", "Act", "Adv NP_dobj"): 9,
    ("V", "Act", "Adv"): 8,
    ("V2V", "Act", "NP_dobj NP_nsubj VP"): 5,
    ("VS", "Pass", "S"): 3,
    ("V", "Act", "Adv Adv Adv NP_nsubj"): 2,
    ("V2", "Act", "Adv Adv NP_dobj NP_nsubj"): 2,
    ("V3", "Act", "NP_iobj NP_nsubj"): 2,
    ("VQ", "Act", "QS"): 2,
    ("VS", "Act", "Adv NP_nsubj S"): 2,
    ("V2", "Pass", "Adv Adv NP_nsubjpass"): 2,
    ("V2", "Pass", "Adv NP_dobj NP_nsubjpass"): 2,
    ("V2", "Pass", "NP_dobj"): 2,
    ("V2", "Act", "Adv Adv NP_dobj"): 1,
    ("V2S", "Act", "NP_dobj NP_nsubj S"): 1,
    ("V2S", "Act", "NP_dobj S"): 1,
    ("V2V", "Act", "NP_dobj VP"): 1,
    ("VS", "Act", "S"): 1,
    ("VV", "Act", "VP"): 1,
    ("V2", "Pass", "Adv"): 1,
    ("VS", "Pass", "NP_nsubjpass S"): 1,
}


class GrammarError(ValueError):
    pass


class NovelSignatureError(GrammarError):
    """Raised when functions need a template outside TEMPLATE_SIGNATURES."""

    def __init__(self, offenders: Sequence[tuple[str, "SyntacticSignature"]]):
        self.offenders = list(offenders)
        lines = [f"  {name}: {sig}" for name, sig in self.offenders]
        super().__init__("no concrete template for signature(s):\n" + "\n".join(lines))


# ---------------------------------------------------------------------------
# naming and signatures
# ---------------------------------------------------------------------------

def category_name(fe_name: str, cat: str) -> str:
    return f"{fe_name}_{cat}"


def _check_cat(triple) -> str:
    if triple.cat not in PhraseCat.__members__:
        raise GrammarError(f"FE {triple.fe_name} has ungeneralized type {triple.cat!r}; "
                           "grammar generation needs settings level 2 or higher")
    return triple.cat


def _fe_serial(p) -> str:
    return " ".join(str(t) for t in sorted(p.fes, key=str))


def base_function_name(p) -> str:
    name = f"{p.frame}_{p.verb_type.value}"
    return name + "_Pass" if p.voice == Voice.Pass else name


def _count(p) -> int:
    return getattr(p, "count", 0)


def function_name(v, siblings: Iterable) -> str:
    """Name of ``v`` among the patterns of its frame (``v`` may be included).

    Patterns sharing frame, verb type and voice are numbered by descending
    count, then FE serialization; the first keeps the bare name.
    """
    base = base_function_name(v)
    group = [s for s in siblings if base_function_name(s) == base and s.frame == v.frame]
    if not any(_same(s, v) for s in group):
        group.append(v)
    group.sort(key=lambda s: (-_count(s), _fe_serial(s)))
    index = next(i for i, s in enumerate(group) if _same(s, v))
    return base if index == 0 else f"{base}_{index + 1}"


def _same(a, b) -> bool:
    return (a.frame, a.verb_type, a.voice, frozenset(a.fes)) == (b.frame, b.verb_type, b.voice, frozenset(b.fes))


def assign_names(patterns: Sequence) -> list[str]:
    by_frame = defaultdict(list)
    for p in patterns:
        by_frame[p.frame].append(p)
    names = [function_name(p, by_frame[p.frame]) for p in patterns]
    dup = [n for n, c in Counter(names).items() if c > 1]
    if dup:
        raise GrammarError(f"function name collision: {', '.join(sorted(dup))}")
    return names


@dataclass(frozen=True, order=True)
class SyntacticSignature:
    verb_type: str
    voice: str
    args: tuple[str, ...]

    def args_label(self) -> str:
        return " ".join(self.args)

    def key(self) -> tuple[str, str, str]:
        return (self.verb_type, self.voice, self.args_label())

    def __str__(self) -> str:
        return f"{self.verb_type} {self.voice} {self.args_label()}".rstrip()


def _arg_label(triple) -> str:
    return f"{triple.cat}_{triple.rel}" if triple.rel else triple.cat


def syntactic_signature(v) -> SyntacticSignature:
    """FE names stripped; the argument multiset is kept as a sorted tuple."""
    return SyntacticSignature(v.verb_type.value, v.voice.value, tuple(sorted(_arg_label(t) for t in v.fes)))


def signature_census(patterns: Iterable) -> Counter:
    return Counter(syntactic_signature(p).key() for p in patterns)


def category_census(shared: Iterable) -> Counter:
    """Distinct FE categories per phrase category."""
    cats = {(t.fe_name, t.cat) for p in shared for t in p.fes}
    return Counter(cat for _, cat in cats)


# ---------------------------------------------------------------------------
# abstract syntax
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FrameFunction:
    name: str
    frame: str
    args: tuple[str, ...]        # category names, alphabetical
    params: tuple[str, ...]      # parameter names, aligned with args
    fes: tuple                   # FE triples, aligned with args
    verb_arg: VerbType
    voice: Voice
    pattern: SharedPattern | None = None
    result: str = RESULT_CAT

    def declaration(self) -> str:
        parts = list(self.args) + [self.verb_arg.value, self.result]
        return f"fun {self.name} : {' -> '.join(parts)} ;"

    @property
    def verb_param(self) -> str:
        return self.verb_arg.value.lower()


def frame_functions(shared: SharedSet | Iterable[SharedPattern]) -> list[FrameFunction]:
    patterns = list(shared)
    names = assign_names(patterns)
    out = []
    for name, p in zip(names, patterns):
        triples = sorted(p.fes, key=lambda t: (category_name(t.fe_name, _check_cat(t)), t.rel or ""))
        params, seen = [], Counter()
        for t in triples:
            base = f"{t.fe_name.lower()}_{t.cat.lower()}"
            seen[base] += 1
            params.append(base if seen[base] == 1 else f"{base}_{seen[base]}")
        out.append(FrameFunction(name, p.frame, tuple(category_name(t.fe_name, t.cat) for t in triples),
                                 tuple(params), tuple(triples), p.verb_type, p.voice, p))
    out.sort(key=lambda f: f.name)
    return out


def gen_abstract(shared: SharedSet | Iterable[SharedPattern], module: str = "FrameNet") -> str:
    funs = frame_functions(shared)
    cats = sorted({a for f in funs for a in f.args})
    lines = [f"abstract {module} = Cat ** {{", "", f"  cat {RESULT_CAT} ;"]
    if cats:
        lines.append("")
        lines.extend(f"  cat {c} ;" for c in cats)
    if funs:
        lines.append("")
        lines.extend(f"  {f.declaration()}" for f in funs)
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# concrete syntax
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConcreteRule:
    function: FrameFunction
    template: SyntacticSignature
    np: str
    vp: str
    adv_order: tuple[str, ...]

    def render(self) -> str:
        f = self.function
        head = " ".join((f.name,) + f.params + (f.verb_param,))
        return f"lin {head} = {{\n  np = {self.np} ;\n  vp = {self.vp}\n}} ;"


def _maybe(cat: str, param: str) -> str:
    return f"fromMaybe {cat} {EMPTY[cat]} {param}"


def _paren(expr: str) -> str:
    return f"({expr})" if " " in expr and not (expr.startswith("(") and expr.endswith(")")) else expr


def _surface_order(p: SharedPattern, language: str) -> list | None:
    w = p.witness(language)
    if w is None or w.top_sentence_pattern is None:
        return None
    return [fe.triple() for fe in w.top_sentence_pattern.fes]


def build_rule(f: FrameFunction, language: str) -> ConcreteRule | None:
    """Concrete rule for ``f`` or None when the language has no witness."""
    order = _surface_order(f.pattern, language) if f.pattern is not None else [t for t in f.fes]
    if order is None:
        return None
    slots = dict(zip(f.fes, f.params))
    subj = dobj = iobj = clausal = None
    advs = []
    for t, param in slots.items():
        if t.rel in (GrammRel.nsubj.value, GrammRel.nsubjpass.value):
            subj = param
        elif t.rel == GrammRel.dobj.value:
            dobj = param
        elif t.rel == GrammRel.iobj.value:
            iobj = param
        elif t.cat in ("VP", "S", "QS"):
            clausal = (t.cat, param)
        elif t.cat == "Adv":
            advs.append(t)
    position = {t: i for i, t in enumerate(order)}
    advs.sort(key=lambda t: (position.get(t, len(position)), slots[t]))

    v = f.verb_param
    np_obj = _paren(_maybe("NP", dobj)) if dobj else EMPTY["NP"]
    clause_arg = _paren(_maybe(*clausal)) if clausal else None
    vt = f.verb_arg
    passive = f.voice == Voice.Pass
    agent = None
    if passive:
        agent = dobj
        if vt == VerbType.VS:
            base = f"passiveVS {v} {clause_arg or EMPTY['S']}"
        else:
            base = f"passiveVP {v}"
    elif vt == VerbType.V:
        base = f"mkVP {v}"
    elif vt == VerbType.V2:
        base = f"mkVP {v} {np_obj}"
    elif vt == VerbType.V3:
        np_iobj = _paren(_maybe("NP", iobj)) if iobj else EMPTY["NP"]
        base = f"mkVP {v} {np_obj} {np_iobj}"
    elif vt in (VerbType.VV, VerbType.VS, VerbType.VQ):
        base = f"mkVP {v} {clause_arg or EMPTY[{'VV': 'VP', 'VS': 'S', 'VQ': 'QS'}[vt.value]]}"
    else:
        cat = {"V2V": "VP", "V2S": "S", "V2Q": "QS"}[vt.value]
        base = f"mkVP {v} {np_obj} {clause_arg or EMPTY[cat]}"

    vp = base
    if agent:
        vp = f"mkVP {_paren(vp)} (mkAdv by8agent_Prep ({_maybe('NP', agent)}))"
    for t in advs:
        vp = f"mkVP {_paren(vp)} ({_maybe('Adv', slots[t])})"
    np = _maybe("NP", subj) if subj else EMPTY["NP"]
    return ConcreteRule(f, syntactic_signature(f.pattern if f.pattern is not None else f), np, vp,
                        tuple(slots[t] for t in advs))


def concrete_rules(shared: SharedSet | Iterable[SharedPattern], language: str
                   ) -> tuple[list[ConcreteRule], list[str]]:
    """Rules for every function plus the names that could not be generated.

    Raises NovelSignatureError when a function needs a template that is not
    among the known signatures.
    """
    funs = frame_functions(shared)
    novel = [(f.name, syntactic_signature(f.pattern)) for f in funs
             if syntactic_signature(f.pattern).key() not in TEMPLATE_SIGNATURES]
    if novel:
        raise NovelSignatureError(novel)
    rules, missing = [], []
    for f in funs:
        r = build_rule(f, language)
        if r is None:
            missing.append(f.name)
        else:
            rules.append(r)
    return rules, missing


def language_suffix(language: str) -> str:
    return language[:1].upper() + language[1:].lower()


def gen_concrete(shared: SharedSet | Iterable[SharedPattern], language: str,
                 module: str = "FrameNet") -> str:
    rules, missing = concrete_rules(shared, language)
    funs = frame_functions(shared)
    cats = sorted({(a, t.cat) for f in funs for a, t in zip(f.args, f.fes)})
    suf = language_suffix(language)
    lines = [f"concrete {module}{suf} of {module} = Cat{suf} ** open Syntax{suf}, Paradigms{suf}, Maybe in {{",
             "", f"  lincat {RESULT_CAT} = {{np : NP ; vp : VP}} ;"]
    if cats:
        lines.append("")
        lines.extend(f"  lincat {name} = Maybe {cat} ;" for name, cat in cats)
    if any(r.function.voice == Voice.Pass and r.function.verb_arg == VerbType.VS for r in rules):
        lines += ["", "  oper passiveVS : VS -> S -> VP = \\vs,s -> mkVP (passiveVP (mkV2 vs)) (mkAdv that_Subj s) ;"]
    if missing:
        lines.append("")
        lines.extend(f"  -- ungenerable: {name} (no {language} witness)" for name in missing)
    for r in rules:
        lines.append("")
        lines.extend("  " + line for line in r.render().split("\n"))
    lines.append("}")
    return "\n".join(lines) + "\n"


def census_tsv(patterns: Iterable) -> str:
    rows = sorted(signature_census(patterns).items(), key=lambda kv: (-kv[1], kv[0]))
    out = ["verb_type\tvoice\targuments\tfrequency"]
    out += [f"{vt}\t{voice}\t{args}\t{n}" for (vt, voice, args), n in rows]
    return "\n".join(out) + "\n"
