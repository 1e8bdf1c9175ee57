import random

import pytest

from fngrammar.categories import GrammRel, PhraseCat, VerbType, Voice
from fngrammar.extract import FERealization, FETriple, SentencePattern
from fngrammar.grammar import (GrammarError, NovelSignatureError, TEMPLATE_SIGNATURES, category_census, census_tsv,
                               concrete_rules, frame_functions, gen_abstract, gen_concrete, signature_census,
                               syntactic_signature)
from fngrammar.normalize import ValencePattern, normalize
from fngrammar.shared import shared_set


def fe(name, cat, rel=None, marker=None):
    return FERealization(name, PhraseCat(cat), None if rel is None else GrammRel(rel), marker)


def both(*patterns):
    """Shared set of identical sentence patterns on both sides."""
    vals = normalize(patterns)
    return shared_set(vals, vals)


def sp(frame, *fes, vt=VerbType.V, voice=Voice.Act, count=1):
    return SentencePattern(frame, vt, voice, tuple(fes), "lu", None, count)


def test_empty_shared_set_gives_header_only():
    assert gen_abstract([]) == "abstract FrameNet = Cat ** {\n\n  cat Clause ;\n}\n"
    assert "lin " not in gen_concrete([], "eng")


def test_arguments_alphabetical_and_categories_deduplicated():
    shared = both(sp("Motion", fe("Theme", "NP", "nsubj"), fe("Goal", "Adv"), fe("Area", "Adv")),
                  sp("Motion", fe("Theme", "NP", "nsubj"), fe("Goal", "Adv"), vt=VerbType.V, count=5),
                  sp("Placing", fe("Theme", "NP", "dobj"), fe("Agent", "NP", "nsubj"), vt=VerbType.V2))
    text = gen_abstract(shared)
    assert text.count("cat Theme_NP ;") == 1 and text.count("cat Goal_Adv ;") == 1
    assert "fun Motion_V : Area_Adv -> Goal_Adv -> Theme_NP -> V -> Clause ;" in text
    assert "fun Placing_V2 : Agent_NP -> Theme_NP -> V2 -> Clause ;" in text
    cats = [line.strip() for line in text.splitlines() if line.strip().startswith("cat ")]
    assert cats[1:] == sorted(cats[1:])


def test_numbering_by_count_then_serialization():
    shared = shared_set(
        [ValencePattern("M", VerbType.V, Voice.Act, frozenset({FETriple("A", "Adv")}), 2),
         ValencePattern("M", VerbType.V, Voice.Act, frozenset({FETriple("B", "Adv"), FETriple("C", "Adv")}), 2),
         ValencePattern("M", VerbType.V, Voice.Act, frozenset({FETriple("T", "NP", "nsubj")}), 9)],
        [ValencePattern("M", VerbType.V, Voice.Act, frozenset({FETriple("A", "Adv")}), 1),
         ValencePattern("M", VerbType.V, Voice.Act, frozenset({FETriple("B", "Adv"), FETriple("C", "Adv")}), 1),
         ValencePattern("M", VerbType.V, Voice.Act, frozenset({FETriple("T", "NP", "nsubj")}), 1)])
    names = {f.name: sorted(t.fe_name for t in f.fes) for f in frame_functions(shared)}
    assert names == {"M_V": ["T"], "M_V_2": ["A"], "M_V_3": ["B", "C"]}


def test_adv_order_follows_each_language_witness():
    eng = normalize([sp("Motion", fe("Theme", "NP", "nsubj"), fe("Source", "Adv"), fe("Goal", "Adv"))])
    swe = normalize([sp("Motion", fe("Theme", "NP", "nsubj"), fe("Goal", "Adv"), fe("Source", "Adv"))])
    shared = shared_set(eng, swe)
    e, s = gen_concrete(shared, "eng"), gen_concrete(shared, "swe")
    assert ("vp = mkVP (mkVP (mkVP v) (fromMaybe Adv emptyAdv source_adv)) "
            "(fromMaybe Adv emptyAdv goal_adv)") in e
    assert ("vp = mkVP (mkVP (mkVP v) (fromMaybe Adv emptyAdv goal_adv)) "
            "(fromMaybe Adv emptyAdv source_adv)") in s
    # identical apart from the Adv attachment order
    assert e.replace("source_adv)) (fromMaybe Adv emptyAdv goal_adv", "X").replace("Eng", "L") == \
        s.replace("goal_adv)) (fromMaybe Adv emptyAdv source_adv", "X").replace("Swe", "L")


def test_subjectless_pattern_uses_empty_np():
    shared = both(sp("Weather", fe("Place", "Adv")))
    assert "np = emptyNP ;" in gen_concrete(shared, "eng")


def test_passive_without_agent():
    shared = both(sp("Desiring", fe("Focal_participant", "NP", "nsubjpass"), vt=VerbType.V2, voice=Voice.Pass))
    text = gen_concrete(shared, "eng")
    assert "np = fromMaybe NP emptyNP focal_participant_np ;" in text
    assert "vp = passiveVP v2" in text


@pytest.mark.parametrize("vt,fes,expected", [
    (VerbType.V3, [("A", "NP", "nsubj"), ("B", "NP", "iobj")],
     "vp = mkVP v3 emptyNP (fromMaybe NP emptyNP b_np)"),
    (VerbType.VS, [("A", "NP", "nsubj"), ("C", "S", None)], "vp = mkVP vs (fromMaybe S emptyS c_s)"),
    (VerbType.VQ, [("A", "NP", "nsubj"), ("C", "QS", None)], "vp = mkVP vq (fromMaybe QS emptyQS c_qs)"),
    (VerbType.V2V, [("A", "NP", "nsubj"), ("B", "NP", "dobj"), ("C", "VP", None)],
     "vp = mkVP v2v (fromMaybe NP emptyNP b_np) (fromMaybe VP emptyVP c_vp)"),
])
def test_other_templates(vt, fes, expected):
    shared = both(sp("F", *[fe(*t) for t in fes], vt=vt))
    assert expected in gen_concrete(shared, "eng")


def test_passive_vs_helper_is_declared():
    shared = both(sp("Statement", fe("Message", "S"), vt=VerbType.VS, voice=Voice.Pass))
    text = gen_concrete(shared, "eng")
    assert "oper passiveVS" in text and "vp = passiveVS vs (fromMaybe S emptyS message_s)" in text


def test_missing_witness_is_reported():
    shared = both(sp("Desiring", fe("Experiencer", "NP", "nsubj")))
    rules, missing = concrete_rules(shared, "fin")
    assert rules == [] and missing == ["Desiring_V"]
    assert "-- ungenerable: Desiring_V (no fin witness)" in gen_concrete(shared, "fin")


def test_novel_signature_is_an_error():
    shared = both(sp("F", *(fe(n, "Adv") for n in "ABCDE")))
    with pytest.raises(NovelSignatureError, match="F_V"):
        gen_concrete(shared, "eng")


def test_ungeneralized_types_are_rejected():
    raw = ValencePattern("F", VerbType.V, Voice.Act, frozenset({FETriple("A", "PP[for].Dep")}))
    with pytest.raises(GrammarError, match="level 2"):
        gen_abstract(shared_set([raw], [raw]))


def test_signature_is_order_free():
    rng = random.Random(0)
    labels = [("A", "NP", "nsubj"), ("B", "Adv", None), ("C", "Adv", None), ("D", "NP", "dobj")]
    for _ in range(50):
        rng.shuffle(labels)
        a = sp("F", *(fe(*t) for t in labels), vt=VerbType.V2)
        b = sp("G", *(fe(n.lower(), c, r) for n, c, r in reversed(labels)), vt=VerbType.V2)
        va, vb = normalize([a])[0], normalize([b])[0]
        assert syntactic_signature(va) == syntactic_signature(vb)
        assert syntactic_signature(va).key() == ("V2", "Act", "Adv Adv NP_dobj NP_nsubj")


def test_census_and_categories():
    shared = both(sp("A", fe("X", "NP", "nsubj"), fe("Y", "NP", "dobj"), vt=VerbType.V2),
                  sp("B", fe("X", "NP", "nsubj"), fe("Z", "NP", "dobj"), vt=VerbType.V2),
                  sp("C", fe("X", "NP", "nsubj"), fe("W", "Adv")))
    assert signature_census(shared) == {("V2", "Act", "NP_dobj NP_nsubj"): 2, ("V", "Act", "Adv NP_nsubj"): 1}
    assert sum(signature_census(shared).values()) == len(shared)
    assert category_census(shared) == {"NP": 3, "Adv": 1}
    assert census_tsv(shared).splitlines()[1] == "V2\tAct\tNP_dobj NP_nsubj\t2"


def test_every_template_generates():
    rels = {"NP_nsubj": ("NP", "nsubj"), "NP_dobj": ("NP", "dobj"), "NP_iobj": ("NP", "iobj"),
            "NP_nsubjpass": ("NP", "nsubjpass"), "Adv": ("Adv", None), "VP": ("VP", None), "S": ("S", None),
            "QS": ("QS", None)}
    patterns = []
    for i, (vt, voice, args) in enumerate(TEMPLATE_SIGNATURES):
        fes = [fe(f"F{j}", *rels[a]) for j, a in enumerate(args.split())]
        patterns.append(sp(f"Frame{i}", *fes, vt=VerbType(vt), voice=Voice(voice)))
    shared = both(*patterns)
    rules, missing = concrete_rules(shared, "eng")
    assert len(rules) == 32 and not missing
    assert {r.template.key() for r in rules} == set(TEMPLATE_SIGNATURES)
