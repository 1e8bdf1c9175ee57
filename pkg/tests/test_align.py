from fngrammar.align import (BilingualDict, align, aligned_to_dict, gen_shared_lexicon, unaligned_tsv,
                             variant_order)
from fngrammar.categories import VerbType
from fngrammar.lexicon import LexEntry, classify_mwe, entry_id
from fngrammar.extract import LuMorph


def entry(base, comps=("VERB.Fin",), vt=VerbType.V2, frame="Desiring", lin="x", count=1):
    m = LuMorph(tuple(comps), base)
    return LexEntry(entry_id(base, vt, frame), base, vt, frame, m, lin, classify_mwe(m), count)


DICT = BilingualDict([("want", "vilja"), ("want", "önska"), ("feel", "känna"), ("crave", "trakta")])


def test_dictionary_is_case_insensitive():
    assert DICT.targets(" Want ") == {"vilja", "önska"}
    assert len(DICT) == 4 and DICT.targets("nothing") == frozenset()


def test_variants_simple_first_then_alphabetical():
    swe = [entry("önska"), entry("vilja ha", ("VERB.Fin", "ADP")), entry("vilja")]
    (a,), missed = align([entry("want")], swe, DICT)
    assert not missed and not a.fallback_used
    assert [v.id for v in a.l2_variants] == ["vilja_V2_Desiring", "önska_V2_Desiring", "vilja_ha_V2_Desiring"]
    by_freq = variant_order([entry("önska", count=5), entry("vilja", count=2)], by_frequency=True)
    assert [v.base_form for v in by_freq] == ["önska", "vilja"]


def test_mwe_falls_back_to_main_verb():
    (a,), _ = align([entry("feel like", ("VERB.Fin", "ADP"))], [entry("känna")], DICT)
    assert a.fallback_used and a.l2_variants[0].base_form == "känna"


def test_unaligned_reasons():
    l1 = [entry("want"), entry("crave"), entry("hope"), entry("feel", vt=VerbType.V)]
    l2 = [entry("vilja", lin=None), entry("trakta", frame="Other"), entry("känna", vt=VerbType.V2)]
    aligned, missed = align(l1, l2, DICT)
    assert aligned == []
    assert {(u.entry_id, u.reason) for u in missed} == {
        ("want_V2_Desiring", "TargetUnlinearized"), ("crave_V2_Desiring", "NoFrameTypeMatch"),
        ("hope_V2_Desiring", "NoDictEntry"), ("feel_V_Desiring", "NoFrameTypeMatch")}
    assert unaligned_tsv(missed[:1]).splitlines() == ["entry_id\treason", f"{missed[0].entry_id}\t{missed[0].reason}"]
    loose, _ = align(l1[:1], l2, DICT, require_linearized=False)
    assert [v.id for v in loose[0].l2_variants] == ["vilja_V2_Desiring"]


def test_shared_lexicon_modules():
    aligned, _ = align([entry("want"), entry("crave")], [entry("vilja"), entry("önska"), entry("trakta")], DICT)
    mods = gen_shared_lexicon(aligned)
    assert set(mods) == {"LexFrameNet", "LexFrameNetEng", "LexFrameNetSwe"}
    assert "  fun want_V2_Desiring : V2 ;" in mods["LexFrameNet"]
    assert "  lin want_V2_Desiring = want_V2_Desiring ;" in mods["LexFrameNetEng"]
    assert "  lin want_V2_Desiring = variants {vilja_V2_Desiring | önska_V2_Desiring} ;" in mods["LexFrameNetSwe"]
    assert "  lin crave_V2_Desiring = trakta_V2_Desiring ;" in mods["LexFrameNetSwe"]
    assert aligned_to_dict(aligned[1])["l2_variants"] == ["vilja_V2_Desiring", "önska_V2_Desiring"]


def test_load_dictionary(tmp_path):
    path = tmp_path / "dict.tsv"
    path.write_text("# eng\tswe\nwant\tvilja\tV2\nbad\n\tx\nfeel\tkänna\n", encoding="utf-8")
    d = BilingualDict.load(path)
    assert len(d) == 2 and d.targets("feel") == {"känna"}
