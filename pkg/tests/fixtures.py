"""Hand-built bilingual corpora used by the tests and the bundled mini data."""

from __future__ import annotations

from corpus_builder import DependencyCorpus, PhraseStructureCorpus

DESIRING_CORE = {"Event": "Core", "Experiencer": "Core", "Focal_participant": "Core",
                 "Location_of_event": "Core", "Reason": "Core", "Purpose_of_event": "Core",
                 "Degree": "Peripheral", "Time": "Peripheral", "Manner": "Peripheral"}


# ---------------------------------------------------------------------------
# English
# ---------------------------------------------------------------------------

def _eng_desiring(c: PhraseStructureCorpus, passive: bool = True) -> None:
    core = DESIRING_CORE
    c.add("want.v", "Desiring", "{Experiencer:NP:Ext she} <wants/VVZ> {Focal_participant:NP:Obj a protector}",
          3, core=core)
    c.add("want.v", "Desiring", "{Experiencer:NP:Ext you} <want> {Focal_participant:NP:Obj one}")
    c.add("want.v", "Desiring", "{Experiencer:NP:Ext I} would n't <want> {Event:VPto:Dep to know}", 2)
    c.add("want.v", "Desiring", "{Experiencer:NP:Ext he} <wanted/VVD> {Focal_participant:AVP:Dep more}")
    if passive:
        c.add("want.v", "Desiring",
              "{Focal_participant:NP:Ext a protector} was <wanted/VVN> {Experiencer:PP[by]:Dep by her}")
    c.add("feel_like.v", "Desiring", "{Experiencer:NP:Ext I} <feel like> {Focal_participant:NP:Obj a glass}",
          core=core)
    c.add("feel_like.v", "Desiring", "{Experiencer:NP:Ext I} <felt/VVD like> {Event:VPing:Dep shouting}")
    c.add("yearn.v", "Desiring", "{Experiencer:NP:Ext he} 'd <yearn> {Focal_participant:PP[for]:Dep for England}",
          core=core)
    c.add("yearn.v", "Desiring", "{Experiencer:NP:Ext he} 'd <yearned/VVD> {Event:VPto:Dep to phone Liz}")


def _eng_cognition(c: PhraseStructureCorpus) -> None:
    c.add("know.v", "Familiarity", "{Cognizer:NP:Ext I} <know> {Entity:NP:Obj Eva}", 2)
    c.add("know.v", "Awareness", "{Cognizer:NP:Ext we} do n't <know> {Content:NP:Obj the reason}")
    c.add("feel.v", "Feeling", "{Experiencer:NP:Ext I} <feel> {Emotional_state:AJP:Dep safe}")


def _eng_scenes(c: PhraseStructureCorpus) -> None:
    c.add("go.v", "Motion", "{Theme:NP:Ext they} <went/VVD> {Area:PP[around]:Dep around the city}", 3)
    c.add("go.v", "Motion",
          "{Theme:NP:Ext I} <go> {Source:PP[from]:Dep from home} {Goal:PP[to]:Dep to a museum}", 2)
    c.add("live.v", "Residence", "{Resident:NP:Ext we} <live> {Location:PP[in]:Dep in Sweden}", 2)
    c.add("paint.v", "Create_physical_artwork",
          "{Representation:NP:Ext Bacchus} was <painted/VVN> {Creator:PP[by]:Dep by Leonardo da Vinci}", 2)
    c.add("paint.v", "Create_physical_artwork",
          "{Creator:NP:Ext Leonardo} <painted/VVD> {Representation:NP:Obj a portrait}")


def english_lexicon_corpus() -> bytes:
    c = PhraseStructureCorpus()
    _eng_desiring(c, passive=False)
    _eng_cognition(c)
    return c.xml()


def english_mini_corpus() -> bytes:
    c = PhraseStructureCorpus()
    _eng_desiring(c)
    _eng_cognition(c)
    _eng_scenes(c)
    return c.xml()


# ---------------------------------------------------------------------------
# Swedish
# ---------------------------------------------------------------------------

def _swe_desiring(c: DependencyCorpus, passive: bool = True) -> None:
    c.add("känna_för..vb.1", "Desiring", "{Experiencer:SS jag} <känner för> {Focal_participant:OO en *tur}")
    c.add("känna_för..vb.1", "Desiring", "{Experiencer:SS jag} <känner för> {Event:OO att skriva en bok}")
    c.add("längta..vb.1", "Desiring", "{Experiencer:SS Roberte/PM} <längtade/VB.PRT.AKT> {Focal_participant:RA hem}")
    c.add("vilja..vb.1", "Desiring", "{Experiencer:SS jag} <vill> {Event:OO ha/VB.INF sju/RG sångare}")
    if passive:
        c.add("önska..vb.1", "Desiring",
              "{Focal_participant:SS en *beskyddare} <önskades/VB.PRT.SFO> {Experiencer:AG av henne/PN}")


def _swe_cognition(c: DependencyCorpus, particle_verb: bool = True) -> None:
    c.add("känna..vb.1", "Familiarity", "{Cognizer:SS jag} <känner> {Entity:OO Eva/PM}", 2)
    if particle_verb:
        c.add("känna_till..vb.1", "Familiarity", "{Cognizer:SS jag} <känner till/PL> {Entity:OO Eva/PM}")
    c.add("känna..vb.2", "Awareness", "{Cognizer:SS vi} inte <känner> {Content:OO *orsaken till}")
    c.add("känna_sig..vb.1", "Feeling", "{Experiencer:SS man} <känner sig> {Emotional_state:AA trygg}")


def _swe_scenes(c: DependencyCorpus) -> None:
    c.add("gå..vb.1", "Motion", "{Theme:SS de} <gick/VB.PRT.AKT> {Area:RA runt/PP staden}", 3)
    c.add("gå..vb.1", "Motion", "{Theme:SS jag} <går> {Source:RA från hemmet} {Goal:RA till ett museum}", 2)
    c.add("bo..vb.1", "Residence", "{Resident:SS vi} <bor> {Location:RA i Sverige/PM}", 2)
    c.add("måla..vb.1", "Create_physical_artwork",
          "{Representation:SS Bacchus/PM} <målades/VB.PRT.SFO> {Creator:AG av Leonardo/PM da/PM Vinci/PM}", 2)
    c.add("måla..vb.1", "Create_physical_artwork",
          "{Creator:SS Leonardo/PM} <målade/VB.PRT.AKT> {Representation:OO ett porträtt}")


def swedish_lexicon_corpus() -> bytes:
    c = DependencyCorpus()
    _swe_desiring(c, passive=False)
    _swe_cognition(c, particle_verb=False)
    return c.xml()


def swedish_mini_corpus() -> bytes:
    c = DependencyCorpus()
    _swe_desiring(c)
    _swe_cognition(c)
    _swe_scenes(c)
    return c.xml()


DICTIONARY = [
    ("feel", "känna"), ("want", "vilja"), ("want", "önska"), ("know", "känna"), ("know", "känna till"),
    ("yearn", "trängta"), ("yearn", "längta"), ("go", "gå"), ("live", "bo"), ("paint", "måla"),
]


def dictionary_tsv() -> str:
    return "".join(f"{a}\t{b}\n" for a, b in DICTIONARY)


# ---------------------------------------------------------------------------
# summary corpus: counts engineered to a known report
# ---------------------------------------------------------------------------

_EXTRA_FES = ["Location_of_event", "Reason", "Purpose_of_event"]
_EXTRA_PREPS = ["in", "on", "at", "into", "from", "with", "about", "over"]


def desiring_summary_corpus() -> bytes:
    """English Desiring examples with 275 active and 13 passive uses."""
    c = PhraseStructureCorpus()
    core = DESIRING_CORE

    def add(markup: str, n: int, tag: str | None = None) -> None:
        c.add("want.v", "Desiring", markup, n, core=core, target_tag=tag)

    add("{Experiencer:NP:Ext I} <want> {Event:VPto:Dep to go}", 59)
    add("{Event:VPto:Dep to go} {Experiencer:NP:Ext I} <want>", 2)
    add("{Experiencer:NP:Ext she} <wants/VVZ> {Focal_participant:NP:Obj a protector}", 55)
    add("{Focal_participant:NP:Obj a protector} {Experiencer:NP:Ext she} <wants/VVZ>", 6)
    c.add("long.v", "Desiring", "{Experiencer:NP:Ext she} <longs/VVZ> {Focal_participant:PP[for]:Dep for peace}",
          26, core=core)
    c.add("hanker.v", "Desiring", "{Experiencer:NP:Ext he} <hankers/VVZ> {Focal_participant:PP[after]:Dep after fame}",
          7, core=core)
    c.add("want.v", "Desiring", "{Experiencer:NP:Ext he} <wanted/VVD> {Focal_participant:AVP:Dep more}", 2)
    for prep in _EXTRA_PREPS:
        c.add("yearn.v", "Desiring",
              f"{{Experiencer:NP:Ext he}} <yearned/VVD> {{Focal_participant:PP[{prep}]:Dep {prep} it}}", core=core)
    # 110 further active uses spread over 28 valence patterns of at most 4 uses each
    shapes = [
        "{Experiencer:NP:Ext I} <want> {X:PP[in]:Dep in town}",
        "{Experiencer:NP:Ext I} <want> {Focal_participant:NP:Obj it} {X:PP[in]:Dep in town}",
        "{Experiencer:NP:Ext I} <want> {Event:VPto:Dep to go} {X:PP[in]:Dep in town}",
        "{Experiencer:NP:Ext I} <want> {Focal_participant:PP[for]:Dep for it} {X:PP[in]:Dep in town}",
        "{X:NP:Ext it} <wants/VVZ> {Focal_participant:NP:Obj it}",
        "{X:NP:Ext it} <wants/VVZ> {Event:VPto:Dep to go}",
        "{Experiencer:NP:Ext I} <want> {X:Sfin:Dep it goes}",
        "{Experiencer:NP:Ext I} <want> {X:NP:Obj it} {Event:VPto:Dep to go}",
        "{Experiencer:NP:Ext I} <want> {X:Swhether:Dep whether it goes}",
        "{X:NP:Ext it} <wants/VVZ> {Focal_participant:PP[for]:Dep for it}",
    ]
    combos = [(shape, fe) for fe in _EXTRA_FES for shape in shapes][:28]
    for i, (shape, fe) in enumerate(combos):
        add(shape.replace("{X:", "{" + fe + ":"), 4 if i < 26 else 3)
    # passive: 5 in the reported pattern, 8 more over two smaller patterns
    add("{Focal_participant:NP:Ext a protector} was <wanted/VVN> {Experiencer:PP[by]:Dep by her}", 5)
    add("{Focal_participant:NP:Ext a protector} was <wanted/VVN>", 4)
    add("{Focal_participant:NP:Ext a protector} was <wanted/VVN> {Reason:PP[for]:Dep for it}", 4)
    return c.xml()


DESIRING_SUMMARY = """\
Act : 275
  Event/VP Experiencer/NP.nsubj : 61
    Experiencer/NP.nsubj Event/VP : 59
    Event/VP Experiencer/NP.nsubj : 2
  Experiencer/NP.nsubj Focal_participant/NP.dobj : 61
    Experiencer/NP.nsubj Focal_participant/NP.dobj : 55
    Focal_participant/NP.dobj Experiencer/NP.nsubj : 6
  Experiencer/NP.nsubj Focal_participant/Adv : 43
    Experiencer/NP.nsubj Focal_participant/Adv[for] : 26
    Experiencer/NP.nsubj Focal_participant/Adv[after] : 7
    Experiencer/NP.nsubj Focal_participant/Adv : 2
    ...
  ...
Pass : 13
  Experiencer/NP.dobj Focal_participant/NP.nsubjpass : 5
    Focal_participant/NP.nsubjpass Experiencer/NP.dobj : 5
  ...
"""


MINI_CONFIG = """\
# Bundled bilingual mini corpus.  Paths are relative to this file.
languages = eng swe
out = out
eng.corpus = eng.xml
eng.scheme = PhraseStructure
eng.settings = 2.B
swe.corpus = swe.xml
swe.scheme = Dependency
swe.settings = 2.B
dict = eng_swe_dict.tsv
"""


def mini_files() -> dict[str, bytes]:
    """File name to content for the bundled mini corpus directory."""
    return {
        "eng.xml": english_mini_corpus(),
        "swe.xml": swedish_mini_corpus(),
        "eng_swe_dict.tsv": dictionary_tsv().encode("utf-8"),
        "pipeline.cfg": MINI_CONFIG.encode("utf-8"),
    }


if __name__ == "__main__":
    import sys
    from pathlib import Path

    target = Path(sys.argv[1])
    for name, data in mini_files().items():
        (target / name).write_bytes(data)
