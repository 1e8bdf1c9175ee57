import logging

import pytest
from hypothesis import given, strategies as st

from fngrammar.categories import VerbType, Voice
from fngrammar.extract import FERealization, LuMorph, SentencePattern
from fngrammar.categories import GrammRel, PhraseCat
from fngrammar.lexicon import (LexEntry, MweClass, ParadigmRef, classify_mwe, collect_lexicon, entry_from_dict,
                               entry_id, entry_to_dict, gen_abstract_lexicon, gen_concrete_lexicon, linearize,
                               load_paradigms)
from fngrammar.normalize import normalize
from fngrammar.shared import shared_set

SIMPLE = ("VERB.Fin",)
PART = ("VERB.Fin", "ADP")
REFL = ("VERB.Fin", "PRON.Reflex")


def entry(base, comps=SIMPLE, vt=VerbType.V2, frame="Desiring", count=1):
    m = LuMorph(tuple(comps), base)
    return LexEntry(entry_id(base, vt, frame), base, vt, frame, m, None, classify_mwe(m), count)


PARADIGMS = {"want": ParadigmRef("mkV", ("want",)), "go": ParadigmRef("mkV", ("go", "went", "gone")),
             "känna": ParadigmRef("mkV", ("känna", "kände", "känt"))}


@pytest.mark.parametrize("comps,expected", [
    (SIMPLE, MweClass.Simple), (PART, MweClass.Particle), (REFL, MweClass.Reflexive),
    (("VERB.Fin", "ADP", "ADP"), MweClass.ParticleParticle),
    (("VERB.Fin", "ADP", "PRON.Reflex"), MweClass.ParticleReflexive),
    (("VERB.Fin", "PRON.Reflex", "ADP"), MweClass.ReflexiveParticle),
    (("VERB.Fin", "NOUN"), MweClass.Unsupported), ((), MweClass.Unsupported),
])
def test_classify_mwe(comps, expected):
    assert classify_mwe(comps) == expected


def test_entry_id_joins_words():
    assert entry_id("feel like", VerbType.VV, "Desiring") == "feel_like_VV_Desiring"


@pytest.mark.parametrize("base,comps,vt,expected", [
    ("want", SIMPLE, VerbType.V2, 'mkV2 (mkV "want")'),
    ("go", SIMPLE, VerbType.V, 'mkV "go" "went" "gone"'),
    ("go on", PART, VerbType.V, 'partV (mkV "go" "went" "gone") "on"'),
    ("go out on", ("VERB.Fin", "ADP", "ADP"), VerbType.V2, 'mkV2 (partV (mkV "go" "went" "gone") "out on")'),
    ("känna sig", REFL, VerbType.V, 'reflV (mkV "känna" "kände" "känt")'),
    ("känna sig för", ("VERB.Fin", "PRON.Reflex", "ADP"), VerbType.VS,
     'mkVS (partV (reflV (mkV "känna" "kände" "känt")) "för")'),
])
def test_linearize(base, comps, vt, expected):
    assert linearize(entry(base, comps, vt), PARADIGMS) == (expected, None)


def test_linearize_gaps():
    assert linearize(entry("crave"), PARADIGMS) == (None, "OutOfVocabulary")
    assert linearize(entry("want house", ("VERB.Fin", "NOUN")), PARADIGMS) == (None, "UnsupportedMWE")


def test_load_paradigms(tmp_path, caplog):
    low = tmp_path / "low.tsv"
    low.write_text("# comment\nwant\tmkV\twant\ngo\tmkV\tgo\tgoes\ngo\tmkV\tgoo\nbroken line\n"
                   "run\tmkV \"run\" \"ran\"\n", encoding="utf-8")
    high = tmp_path / "high.tsv"
    high.write_text("go\tirregV\tgo\twent\tgone\n", encoding="utf-8")
    with caplog.at_level(logging.WARNING):
        table = load_paradigms([low, high])
    assert table["go"] == ParadigmRef("irregV", ("go", "went", "gone"), 2)
    assert table["want"] == ParadigmRef("mkV", ("want",), 1)
    assert table["run"].argument_forms == ("run", "ran")
    assert "broken line" not in table
    assert "duplicate lemma" in caplog.text and "unparseable" in caplog.text
    only_low = load_paradigms([low])
    assert only_low["go"].argument_forms == ("go", "goes")


def test_concrete_lexicon_comments_gaps():
    entries = [entry("want"), entry("crave")]
    text, report = gen_concrete_lexicon(entries, PARADIGMS, "eng")
    assert text.startswith("concrete LexEng of LexEngAbs = CatEng ** open ParadigmsEng in {")
    assert '  lin want_V2_Desiring = mkV2 (mkV "want") ;' in text
    assert "  -- crave_V2_Desiring : unlinearized (OutOfVocabulary: VERB.Fin)" in text
    assert (report.total, report.linearized) == (2, 1)
    assert report.tsv() == "entry_id\treason\tpattern\ncrave_V2_Desiring\tOutOfVocabulary\tVERB.Fin\n"
    assert "  fun crave_V2_Desiring : V2 ;" in gen_abstract_lexicon(entries, "eng")


def test_collect_lexicon_keeps_only_covered_patterns():
    exp = FERealization("Experiencer", PhraseCat.NP, GrammRel.nsubj)
    foc = FERealization("Focal_participant", PhraseCat.NP, GrammRel.dobj)
    t = FERealization("Time", PhraseCat.Adv)

    def sp(lu, *fes, count=1):
        return SentencePattern("Desiring", VerbType.V2, Voice.Act, fes, lu, LuMorph(SIMPLE, lu), count)

    shared = shared_set(normalize([sp("want", exp, foc)]), normalize([sp("vilja", exp, foc)]))
    got = collect_lexicon(shared, [sp("want", exp, foc, count=2), sp("want", foc, exp), sp("crave", exp, foc, t)])
    assert [(e.id, e.count) for e in got] == [("want_V2_Desiring", 3)]


@given(st.sampled_from(["want", "go on", "känna sig"]), st.sampled_from([SIMPLE, PART, REFL]),
       st.sampled_from(list(VerbType)), st.integers(0, 9))
def test_entry_round_trip(base, comps, vt, count):
    e = entry(base, comps, vt, count=count)
    e2 = entry_from_dict(entry_to_dict(e))
    assert e2 == e
