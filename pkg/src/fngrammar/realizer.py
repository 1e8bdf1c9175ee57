"""Tiny evaluator for generated frame functions, for smoke-testing output.

Morphology is deliberately minimal: English third person singular and
past tense, be-passives, Swedish present/past from paradigm forms and
s-passives.  The point is to check that generated templates assemble the
right constituents in the right order.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Mapping, Sequence

from .gfparse import App, Expr, FunDecl, LinRule, Module, Str, Var, Variants, parse_expr, parse_module
from .grammar import language_suffix


class RealizationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# values
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Verb:
    vtype: str
    forms: Mapping[str, str]       # inf, pres3, pres, past, pp, (pass_pres, pass_past)
    lang: str = "eng"
    particle: str = ""
    reflexive: bool = False


@dataclass(frozen=True)
class NP:
    s: str
    person: int = 3
    plural: bool = False


@dataclass(frozen=True)
class Adv:
    s: str


@dataclass(frozen=True)
class S:
    s: str


@dataclass(frozen=True)
class QS:
    s: str


@dataclass(frozen=True)
class VP:
    verb: Verb | None = None
    passive: bool = False
    post: tuple = ()  # NP, Adv, S, QS, or ("inf", VP) items in surface order
    fixed: str | None = None  # a VP given directly as text

    @property
    def empty(self) -> bool:
        return self.verb is None and not self.fixed and not self.post


@dataclass(frozen=True)
class Clause:
    np: NP
    vp: VP


@dataclass(frozen=True)
class Prep:
    s: str


NOTHING = object()


@dataclass(frozen=True)
class Just:
    value: object


PHRASE_TYPES = {"NP": NP, "Adv": Adv, "S": S, "QS": QS, "VP": VP}
EMPTY = {"emptyNP": NP(""), "emptyAdv": Adv(""), "emptyS": S(""), "emptyQS": QS(""), "emptyVP": VP()}


# ---------------------------------------------------------------------------
# morphology
# ---------------------------------------------------------------------------

def _eng_s(base: str) -> str:
    if re.search(r"(s|x|z|ch|sh|o)$", base):
        return base + "es"
    if re.search(r"[^aeiou]y$", base):
        return base[:-1] + "ies"
    return base + "s"


def _eng_ed(base: str) -> str:
    if base.endswith("e"):
        return base + "d"
    if re.search(r"[^aeiou]y$", base):
        return base[:-1] + "ied"
    return base + "ed"


def eng_verb(forms: Sequence[str]) -> dict:
    base = forms[0]
    if len(forms) >= 5:
        return {"inf": base, "pres3": forms[1], "pres": base, "past": forms[2], "pp": forms[3]}
    if len(forms) == 3:
        return {"inf": base, "pres3": _eng_s(base), "pres": base, "past": forms[1], "pp": forms[2]}
    if len(forms) == 2:
        return {"inf": base, "pres3": _eng_s(base), "pres": base, "past": forms[1], "pp": forms[1]}
    return {"inf": base, "pres3": _eng_s(base), "pres": base, "past": _eng_ed(base), "pp": _eng_ed(base)}


def swe_verb(forms: Sequence[str]) -> dict:
    first = forms[0]
    if len(forms) >= 6:  # inf pres imp past sup part
        inf, pres, past, sup = forms[0], forms[1], forms[3], forms[4]
    elif len(forms) == 3:  # inf past sup
        inf, past, sup = forms
        pres = inf[:-1] + "er" if inf.endswith("a") else inf + "r"
    else:
        if first.endswith("ar"):
            inf = first[:-1]
        else:
            inf = first
        if inf.endswith("a"):
            pres, past, sup = inf + "r", inf + "de", inf + "t"
        else:
            pres, past, sup = inf + "r", inf + "dde", inf + "tt"
    stem = inf[:-1] if inf.endswith("a") else inf
    return {"inf": inf, "pres3": pres, "pres": pres, "past": past, "pp": sup,
            "pass_inf": stem + "as" if inf.endswith("a") else inf + "s",
            "pass_pres": stem + "as" if inf.endswith("a") else inf + "s",
            "pass_past": past + "s"}


ENG_PRONOUNS = {"i": (1, False), "we": (1, True), "you": (2, False), "they": (3, True)}
SWE_PRONOUNS = {"jag": (1, False), "vi": (1, True), "du": (2, False), "ni": (2, True), "de": (3, True)}
SWE_REFLEXIVE = {(1, False): "mig", (1, True): "oss", (2, False): "dig", (2, True): "er"}
ENG_REFLEXIVE = {(1, False): "myself", (1, True): "ourselves", (2, False): "yourself", (2, True): "yourselves",
                 (3, True): "themselves"}
SWE_MODALS = frozenset("vilja kunna skola måste böra få".split())


def make_np(text: str, lang: str) -> NP:
    table = SWE_PRONOUNS if lang == "swe" else ENG_PRONOUNS
    person, plural = table.get(text.strip().lower(), (3, False))
    return NP(text.strip(), person, plural)


def _finite(verb: Verb, np: NP, tense: str, passive: bool) -> list[str]:
    f = verb.forms
    if verb.lang == "swe":
        if passive:
            word = f["pass_past"] if tense == "Past" else f["pass_pres"]
        else:
            word = f["past"] if tense == "Past" else f["pres"]
        return [word]
    if passive:
        if tense == "Past":
            aux = "were" if np.plural or np.person == 2 else "was"
        else:
            aux = "am" if (np.person, np.plural) == (1, False) else "are" if np.plural or np.person == 2 else "is"
        return [aux, f["pp"]]
    if tense == "Past":
        return [f["past"]]
    return [f["pres3"] if np.person == 3 and not np.plural else f["pres"]]


def _nonfinite(verb: Verb, passive: bool) -> list[str]:
    if verb.lang == "swe":
        return [verb.forms["pass_inf"] if passive else verb.forms["inf"]]
    return ["be", verb.forms["pp"]] if passive else [verb.forms["inf"]]


def _reflexive(verb: Verb, np: NP) -> str:
    key = (np.person, np.plural)
    if verb.lang == "swe":
        return SWE_REFLEXIVE.get(key, "sig")
    return ENG_REFLEXIVE.get(key, "oneself" if not np.s else "himself")


def render_vp(vp: VP, np: NP, tense: str = "Pres", finite: bool = True) -> str:
    if vp.fixed is not None and vp.verb is None:
        words = [vp.fixed]
    elif vp.verb is None:
        words = []
    else:
        words = _finite(vp.verb, np, tense, vp.passive) if finite else _nonfinite(vp.verb, vp.passive)
        if vp.verb.reflexive:
            words.append(_reflexive(vp.verb, np))
        if vp.verb.particle:
            words.append(vp.verb.particle)
    for item in vp.post:
        if isinstance(item, tuple) and item[0] == "inf":
            sub, lead = item[1], item[2]
            text = render_vp(sub, np, tense, finite=False)
            if text:
                words.extend(([lead] if lead else []) + [text])
        elif isinstance(item, S):
            if item.s:
                words.extend([("att" if vp.verb is not None and vp.verb.lang == "swe" else "that"), item.s])
        else:
            words.append(item.s)
    return " ".join(w for w in words if w)


def combine(clause: Clause, tense: str = "Pres", adjuncts: Sequence = ()) -> str:
    """Subject, inflected verb phrase and adjuncts joined by single spaces."""
    if tense not in ("Pres", "Past"):
        raise RealizationError(f"tense must be Pres or Past, got {tense!r}")
    parts = [clause.np.s, render_vp(clause.vp, clause.np, tense)]
    parts += [a.s if hasattr(a, "s") else str(a) for a in adjuncts]
    return normalize_ws(" ".join(parts))


def normalize_ws(text: str) -> str:
    return " ".join(text.split())


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

class Grammar:
    """Frame functions and lexicon of one language, loaded from generated modules."""

    def __init__(self, modules: Sequence[Module], lang: str):
        self.lang = lang
        suf = language_suffix(lang)
        self.funs: dict[str, FunDecl] = {}
        self.rules: dict[str, LinRule] = {}
        self.lexicon: dict[str, LinRule] = {}
        for mod in modules:
            if mod.kind == "abstract":
                self.funs.update(mod.funs)
            elif mod.kind == "concrete" and mod.name.endswith(suf):
                for name, rule in mod.lins.items():
                    if isinstance(rule.body, dict):
                        self.rules[name] = rule
                    elif rule.body != Var(name):  # skip identity maps of the shared lexicon
                        self.lexicon[name] = rule
        self._lex_cache: dict[str, object] = {}

    @classmethod
    def load(cls, directory: str | os.PathLike, lang: str) -> "Grammar":
        paths = sorted(Path(directory).rglob("*.gf"))
        if not paths:
            raise RealizationError(f"no .gf modules under {directory}")
        return cls([parse_module(p.read_text(encoding="utf-8")) for p in paths], lang)

    # -- expressions -------------------------------------------------------

    def eval(self, expr: Expr | str, env: Mapping[str, object] | None = None):
        if isinstance(expr, str):
            expr = parse_expr(expr)
        env = env or {}
        if isinstance(expr, Str):
            return expr.value
        if isinstance(expr, Variants):
            return self.eval(expr.options[0], env)
        if isinstance(expr, Var):
            return self._lookup(expr.name, env)
        if isinstance(expr, App):
            head = expr.head
            if not isinstance(head, Var):
                raise RealizationError(f"cannot apply {head}")
            args = [self.eval(a, env) for a in expr.args]
            if head.name in ("fromMaybe",):
                return _from_maybe(expr.args[0], args)
            fn = self._builtin(head.name)
            return fn(*args)
        raise RealizationError(f"bad expression {expr!r}")

    def _lookup(self, name: str, env: Mapping[str, object]):
        if name in env:
            return env[name]
        if name in EMPTY:
            return EMPTY[name]
        if name in PHRASE_TYPES:
            return name
        if name == "by8agent_Prep":
            return Prep("av" if self.lang == "swe" else "by")
        if name in self.lexicon:
            if name not in self._lex_cache:
                self._lex_cache[name] = self.eval(self.lexicon[name].body)
            return self._lex_cache[name]
        raise RealizationError(f"unknown identifier {name}")

    def _builtin(self, name: str) -> Callable:
        table = {
            "mkVP": self._mk_vp, "passiveVP": self._passive_vp, "passiveVS": self._passive_vs,
            "mkAdv": self._mk_adv, "regV": self._paradigm, "irregV": self._paradigm, "mkV": self._paradigm,
            "partV": self._part_v, "reflV": self._refl_v,
        }
        if name in table:
            return table[name]
        m = re.fullmatch(r"mk(V2V|V2S|V2Q|V2|V3|VV|VS|VQ)", name)
        if m:
            return lambda v, *_: self._coerce(v, m.group(1))
        raise RealizationError(f"unknown function {name}")

    def _paradigm(self, *forms):
        if not forms or not all(isinstance(f, str) for f in forms):
            raise RealizationError("verb constructors take string forms")
        table = swe_verb(forms) if self.lang == "swe" else eng_verb(forms)
        return Verb("V", table, self.lang)

    def _as_verb(self, v) -> Verb:
        if isinstance(v, str):
            v = self._paradigm(v)
        if not isinstance(v, Verb):
            raise RealizationError(f"expected a verb, got {type(v).__name__}")
        return v

    def _coerce(self, v, vtype: str) -> Verb:
        return replace(self._as_verb(v), vtype=vtype)

    def _part_v(self, v, particle):
        v = self._as_verb(v)
        return replace(v, particle=" ".join(filter(None, [v.particle, particle])))

    def _refl_v(self, v):
        return replace(self._as_verb(v), reflexive=True)

    def _mk_adv(self, prep, np):
        if not isinstance(prep, Prep) or not isinstance(np, NP):
            raise RealizationError("mkAdv expects a preposition and an NP")
        return Adv(f"{prep.s} {np.s}" if np.s else "")

    def _passive_vp(self, v):
        v = self._as_verb(v)
        if v.vtype != "V2":
            raise RealizationError(f"passiveVP needs a V2 verb, got {v.vtype}")
        return VP(v, passive=True)

    def _passive_vs(self, v, s):
        v = self._as_verb(v)
        if v.vtype != "VS" or not isinstance(s, S):
            raise RealizationError("passiveVS expects a VS verb and an S")
        return VP(v, passive=True, post=(s,))

    def _mk_vp(self, head, *args):
        if isinstance(head, VP):
            if len(args) != 1 or not isinstance(args[0], Adv):
                raise RealizationError("mkVP with a VP expects one Adv")
            return replace(head, post=head.post + (args[0],)) if args[0].s else head
        v = self._as_verb(head)
        kinds = tuple(type(a).__name__ for a in args)
        expected = {
            "V": (), "V2": ("NP",), "V3": ("NP", "NP"), "VV": ("VP",), "VS": ("S",), "VQ": ("QS",),
            "V2V": ("NP", "VP"), "V2S": ("NP", "S"), "V2Q": ("NP", "QS"),
        }[v.vtype]
        if kinds != expected:
            raise RealizationError(f"mkVP: a {v.vtype} verb takes ({', '.join(expected)}), got ({', '.join(kinds)})")
        post = []
        for a in args:
            if isinstance(a, VP):
                lead = self._inf_marker(v)
                post.append(("inf", a, lead))
            elif a.s:
                post.append(a)
        return VP(v, post=tuple(post))

    def _inf_marker(self, v: Verb) -> str:
        if self.lang == "swe":
            return "" if v.forms.get("inf") in SWE_MODALS else "att"
        return "to"

    # -- frame functions ----------------------------------------------------

    def lexical(self, ident: str):
        return self._lookup(ident, {})

    def signature(self, fname: str) -> FunDecl:
        if fname not in self.funs:
            raise RealizationError(f"unknown frame function {fname}")
        return self.funs[fname]

    def apply(self, fname: str, args: Sequence, verb) -> Clause:
        """Run frame function ``fname``.

        ``args`` follow the declared FE order; each is None (absent), a
        string, a phrase value or a ``Just``.  ``verb`` is a lexicon id, a
        verb value or a constructor expression such as ``mkV2 (regV "paint")``.
        """
        decl = self.signature(fname)
        if fname not in self.rules:
            raise RealizationError(f"{fname} has no {self.lang} linearization")
        rule = self.rules[fname]
        fe_types = decl.arg_types[:-1]
        vtype = decl.arg_types[-1]
        if len(args) != len(fe_types):
            raise RealizationError(f"{fname} takes {len(fe_types)} FE arguments, got {len(args)}")
        env: dict[str, object] = {}
        for param, cat_name, value in zip(rule.params, fe_types, args):
            env[param] = self._maybe_arg(fname, cat_name, value)
        v = self._verb_arg(verb)
        if v.vtype != vtype:
            raise RealizationError(f"{fname}: argument verb must be {vtype}, got {v.vtype}")
        env[rule.params[-1]] = v
        np = self.eval(rule.body["np"], env)
        vp = self.eval(rule.body["vp"], env)
        return Clause(np, vp)

    def _maybe_arg(self, fname: str, cat_name: str, value):
        cat = cat_name.rsplit("_", 1)[-1]
        if value is None or value is NOTHING:
            return NOTHING
        if isinstance(value, Just):
            value = value.value
        if isinstance(value, str):
            if cat == "NP":
                value = make_np(value, self.lang)
            elif cat == "VP":
                value = VP(fixed=value)
            else:
                value = PHRASE_TYPES[cat](value)
        if not isinstance(value, PHRASE_TYPES[cat]):
            raise RealizationError(f"{fname}: argument {cat_name} expects {cat}, got {type(value).__name__}")
        return Just(value)

    def _verb_arg(self, verb) -> Verb:
        if isinstance(verb, Verb):
            return verb
        if isinstance(verb, str):
            if verb in self.lexicon:
                return self._as_verb(self.lexical(verb))
            return self._as_verb(self.eval(verb))
        raise RealizationError(f"bad verb argument {verb!r}")

    def realize(self, fname: str, args: Sequence, verb, tense: str = "Pres", adjuncts: Sequence = ()) -> str:
        return combine(self.apply(fname, args, verb), tense, adjuncts)


def _from_maybe(cat_expr: Expr, args: list):
    if len(args) != 3:
        raise RealizationError("fromMaybe takes a category, a default and a Maybe value")
    _, default, value = args
    if isinstance(value, Just):
        return value.value
    if value is NOTHING:
        return default
    raise RealizationError(f"fromMaybe expects a Maybe value, got {type(value).__name__}")
