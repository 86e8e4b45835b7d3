from __future__ import annotations

import dataclasses
import random

import pytest

from narrastyle.lexical import (LEXICAL_FEATURE_IDS, compute_diversity,
                                count_connectives, lexical_profile,
                                syllable_count)
from narrastyle.model import Document


@pytest.mark.parametrize("form,expected", [
    ("incredible", 4),
    ("animals", 3),
    ("chase", 2),
    ("fly", 1),
    ("rhythm", 1),
    ("queue", 1),
    ("idea", 2),
    ("Oak", 1),
    ("strength", 1),
])
def test_syllable_count(form, expected):
    assert syllable_count(form) == expected


def profile_of(docs, res, doc_id):
    return lexical_profile(docs[doc_id], res)


class TestMicroDocOracles:
    def test_m01(self, docs, mini_res):
        p = profile_of(docs, mini_res, "m01")
        v = p.values
        assert v["d_textual_value"] == 7.0
        assert v["hapax_ratio"] == 1.0
        assert v["lr1"] == 6 / 7
        assert v["lr2"] == 0.0
        assert v["lr3"] == 1 / 7
        assert v["concreteness"] == 300.0
        assert v["noun_pronoun_ratio"] == 0.0
        assert v["deictic_article_ratio"] == 1.0
        assert v["definite_article_freq"] == 0.0
        assert v["attributive_adj_freq"] == 0.0
        assert v["emphatic_particle_freq"] == 0.0
        assert v["demonstrative_freq"] == 0.0
        assert v["first_person_ratio"] == 0.5
        assert p.missing == {"lexical_overlap_2", "lexical_overlap_3"}
        assert all(v[f"conn_{c}_{pol}"] == 0.0
                   for c in ("additive", "causal", "temporal", "logical")
                   for pol in ("pos", "neg"))

    def test_m02(self, docs, mini_res):
        v = profile_of(docs, mini_res, "m02").values
        assert v["d_textual_value"] == 5.0
        assert v["hapax_ratio"] == 4 / 6
        assert v["lr1"] == 5 / 6
        assert v["lr2"] == 1 / 6
        assert v["lr3"] == 0.0
        assert v["concreteness"] == 575.0
        assert v["noun_pronoun_ratio"] == 2.0
        assert v["deictic_article_ratio"] == 0.0
        assert v["definite_article_freq"] == 2.0
        assert v["attributive_adj_freq"] == 1.0
        assert v["first_person_ratio"] == 0.0

    def test_m03_hapax(self, docs, mini_res):
        v = profile_of(docs, mini_res, "m03").values
        assert v["hapax_ratio"] == 0.5
        assert v["d_textual_value"] == 3.0

    def test_m08_longest_match(self, docs, mini_res):
        v = profile_of(docs, mini_res, "m08").values
        assert v["conn_causal_pos"] == 0.5
        assert v["conn_additive_pos"] == 0.5
        assert v["conn_temporal_pos"] == 0.0
        assert v["conn_logical_neg"] == 0.0

    def test_m09(self, docs, mini_res):
        v = profile_of(docs, mini_res, "m09").values
        assert v["noun_pronoun_ratio"] == 1.0
        assert v["deictic_article_ratio"] == 1.0
        assert v["definite_article_freq"] == 0.0
        assert v["emphatic_particle_freq"] == 1.0
        assert v["demonstrative_freq"] == 1.0
        assert v["hapax_ratio"] == 1.0

    def test_m10_overlap(self, docs, mini_res):
        p = profile_of(docs, mini_res, "m10")
        assert p.values["hapax_ratio"] == 0.75
        assert p.values["lexical_overlap_2"] == 0.25
        assert "lexical_overlap_3" in p.missing
        assert p.values["d_textual_value"] == 7.0

    def test_m11_paragraph_mean(self, docs, mini_res):
        v = profile_of(docs, mini_res, "m11").values
        assert v["d_textual_value"] == 5.5
        assert v["attributive_adj_freq"] == 0.5
        assert v["first_person_ratio"] == 0.0

    def test_m13_connective_cells(self, docs, mini_res):
        v = profile_of(docs, mini_res, "m13").values
        assert v["conn_additive_neg"] == 1 / 3
        assert v["conn_causal_neg"] == 1 / 3
        assert v["conn_temporal_pos"] == 1 / 3
        assert v["conn_temporal_neg"] == 1 / 3
        assert v["conn_logical_pos"] == 1 / 3
        assert v["conn_logical_neg"] == 1 / 3
        assert v["conn_additive_pos"] == 0.0
        assert v["conn_causal_pos"] == 0.0
        assert v["first_person_ratio"] == 1 / 6
        assert v["deictic_article_ratio"] == 1.0


def test_profile_complete_for_all_docs(docs, mini_res):
    for doc in docs.values():
        p = lexical_profile(doc, mini_res)
        assert set(LEXICAL_FEATURE_IDS) == set(p.values) | p.missing
        assert not set(p.values) & p.missing


def _with_sentences(doc, sentences):
    rebuilt = tuple(
        dataclasses.replace(s, sent_index=i, paragraph_index=0)
        for i, s in enumerate(sentences))
    return Document(doc_id=doc.doc_id, sentences=rebuilt)


def test_sentence_order_invariance(docs, mini_res):
    """Every lexical feature except the overlap windows ignores sentence order."""
    rng = random.Random(3)
    order_free = set(LEXICAL_FEATURE_IDS) - {"lexical_overlap_2", "lexical_overlap_3"}
    for doc_id in ("m05", "m10", "m11", "m13"):
        doc = _with_sentences(docs[doc_id], docs[doc_id].sentences)
        base = lexical_profile(doc, mini_res)
        for _ in range(5):
            perm = list(doc.sentences)
            rng.shuffle(perm)
            p = lexical_profile(_with_sentences(doc, perm), mini_res)
            for fid in order_free:
                if fid in base.missing:
                    assert fid in p.missing
                else:
                    assert p.values[fid] == base.values[fid], fid


def test_doubling_document(docs, mini_res):
    """Repeating all sentences keeps per-sentence rates; hapaxes vanish."""
    doc = docs["m02"]
    doubled = _with_sentences(doc, doc.sentences + doc.sentences)
    p = lexical_profile(doubled, mini_res)
    assert p.values["definite_article_freq"] == 2.0
    assert p.values["attributive_adj_freq"] == 1.0
    assert p.values["hapax_ratio"] == 0.0
    assert p.values["lr1"] == 5 / 6


def test_connective_counts_non_overlapping(docs, mini_res):
    # "as well as" consumes all three tokens: the trailing "as" cannot
    # also match the single-word connective
    counts = count_connectives(docs["m08"], mini_res)
    total = sum(v * docs["m08"].sentence_count for v in counts.values.values())
    assert total == 2.0


def test_diversity_missing_for_empty_alpha():
    from narrastyle.model import Sentence, Token
    punct = Token(index=1, form=".", lemma=".", upos="PUNCT", xpos=None,
                  feats={}, head=0, deprel="root")
    doc = Document(doc_id="p", sentences=(
        Sentence(tokens=(punct,), sent_index=0, paragraph_index=0),))
    p = compute_diversity(doc)
    assert p.missing == {"d_textual_value", "hapax_ratio",
                         "lexical_overlap_2", "lexical_overlap_3"}
