import json

import pytest

from discoccg import biclosed as bc
from discoccg.ccgtypes import parse_type
from discoccg.diagram import Cap, Cup, RObject, Swap, WordBox, well_formed
from discoccg.functor import LoweringContext, lower, verify_functor_laws
from discoccg.rules import FA

t = parse_type


def test_alice_likes_bob_golden_layers(corpus_diagrams):
    d = corpus_diagrams["alice-likes-bob"]
    assert d.layers == (
        (0, WordBox("Alice", RObject.parse("n"))),
        (1, WordBox("likes", RObject.parse("n.r s n.l"))),
        (4, WordBox("Bob", RObject.parse("n"))),
        (3, Cup("n", -1)),
        (0, Cup("n", 0)),
    )
    assert d.cod == RObject.parse("s")


def test_single_word_box():
    term = bc.word("Alice", bc.to_bobject(t("NP")))
    d = lower(term)
    assert d.layers == ((0, WordBox("Alice", RObject.parse("n"))),)


def test_np_shift_swap_count(corpus_diagrams):
    # frozen from the elementary-swap construction: the BCX image contributes
    # |y.r|*|z.l| + |z.l|*|x| = 2 + 2 crossings
    d = corpus_diagrams["np-shift"]
    assert d.count(Swap) == 4


def test_bruce_structure(corpus_diagrams):
    # one cap (type raising), one BCX swap block, cups; sentence wire out
    d = corpus_diagrams["bruce-puts-on-his-hat"]
    assert d.count(Cap) == 1
    assert d.count(Swap) == 4
    assert d.cod == RObject.parse("s")


def test_declarative_sentences_end_on_s(corpus, corpus_diagrams):
    for ident, d in corpus.items():
        if d.cat == t("S"):
            assert corpus_diagrams[ident].cod == RObject.parse("s"), ident


def test_swaps_iff_crossed_rules(corpus, corpus_diagrams):
    from discoccg.rules import rule_histogram
    for ident, d in corpus.items():
        crossed = any(k.startswith(("FCX", "BCX", "GFCX", "GBCX"))
                      for k in rule_histogram(d))
        has_swaps = corpus_diagrams[ident].count(Swap) > 0
        assert crossed == has_swaps, ident


def test_sentence_diagrams_are_states(corpus_diagrams):
    for ident, d in corpus_diagrams.items():
        assert len(d.dom) == 0, ident


def test_wire_conservation(corpus_diagrams):
    # word wires + 2*caps - 2*cups == cod wires on every conversion
    for ident, d in corpus_diagrams.items():
        word_wires = sum(len(g.cod) for _, g in d.layers if isinstance(g, WordBox))
        caps = d.count(Cap)
        cups = d.count(Cup)
        assert word_wires + 2 * caps - 2 * cups == len(d.cod), ident
        assert cups == (word_wires + 2 * caps - len(d.cod)) // 2, ident


def test_atom_map_override():
    ctx = LoweringContext({"NP": "q", "S": "s", "PP": "p"})
    term = bc.word("Alice", bc.to_bobject(t("NP")))
    assert lower(term, ctx).cod == RObject.parse("q")


def test_atom_map_injectivity_checked():
    with pytest.raises(ValueError):
        LoweringContext({"NP": "x", "N": "x"})


def test_n_distinct_from_np(corpus_diagrams):
    d = corpus_diagrams["big-bad-wolf-left"]
    assert d.cod == RObject.parse("N")


def test_curry_square_fa_sample():
    term = bc.rule_term(FA, [t("(S\\NP)/NP"), t("NP")])
    reports = verify_functor_laws([term])
    assert all(r.ok for r in reports)


def test_identity_sample():
    term = bc.id_term(bc.to_bobject(t("S\\NP")))
    reports = verify_functor_laws([term])
    assert reports == []
    d = lower(term)
    assert d.layers == () and d.dom == RObject.parse("n.r s")


def test_functor_laws_across_corpus(corpus_terms):
    samples = []
    for term in corpus_terms.values():
        _subterms(term, samples)
    reports = verify_functor_laws(samples)
    assert reports, "law checker produced no reports"
    failures = [r for r in reports if not r.ok]
    assert failures == []


def _subterms(term, out):
    out.append(term)
    for attr in ("f", "g", "left", "right", "inner"):
        kid = getattr(term, attr, None)
        if kid is not None:
            _subterms(kid, out)


def test_randomized_curry_roundtrips():
    # curry then uncurry lowers to something normal-form-equal to the original
    from discoccg.rewrite import diagrams_equal
    for ty1, ty2 in [("NP", "S\\NP"), ("(S\\NP)/NP", "NP"), ("N/N", "N")]:
        f = bc.id_term(bc.tensor_obj(bc.to_bobject(t(ty1)), bc.to_bobject(t(ty2))))
        round1 = bc.uncurry_r(bc.curry_r(f))
        assert diagrams_equal(lower(round1), lower(f))
        round2 = bc.uncurry_l(bc.curry_l(f))
        assert diagrams_equal(lower(round2), lower(f))


from hypothesis import given, settings  # noqa: E402
from hypothesis import strategies as st  # noqa: E402

from tests.test_types import types  # noqa: E402


@settings(max_examples=200, deadline=None)
@given(types(3), types(3), st.integers(0, 3))
def test_functor_curry_laws_randomized(a, b, wrapping):
    # lower(curry(f)) must equal the diagram-level bending of lower(f) up to
    # normal form, for randomly curried/uncurried identity terms
    term = bc.id_term(bc.tensor_obj(bc.to_bobject(a), bc.to_bobject(b)))
    for step in range(wrapping):
        if step % 2 == 0:
            term = bc.curry_r(term)
        else:
            term = bc.uncurry_r(term)
    reports = verify_functor_laws([term])
    assert all(r.ok for r in reports), reports


def test_lowering_well_formed_everywhere(corpus_diagrams):
    for ident, d in corpus_diagrams.items():
        assert well_formed(d) == [], ident
