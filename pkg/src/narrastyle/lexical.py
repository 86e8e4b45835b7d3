"""Lexical feature family: diversity, frequency tiers, concreteness,
POS-based ratios and connective counts."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field

from .model import Document, Sentence, Token
from .resources import Connective, LexicalResources

LEXICAL_FEATURE_IDS = (
    "d_textual_value", "lr1", "lr2", "lr3", "concreteness",
    "noun_pronoun_ratio", "deictic_article_ratio", "definite_article_freq",
    "attributive_adj_freq", "emphatic_particle_freq", "demonstrative_freq",
    "first_person_ratio", "hapax_ratio", "lexical_overlap_2", "lexical_overlap_3",
    "conn_additive_pos", "conn_additive_neg", "conn_causal_pos", "conn_causal_neg",
    "conn_temporal_pos", "conn_temporal_neg", "conn_logical_pos", "conn_logical_neg",
)

CONTENT_UPOS = frozenset({"NOUN", "VERB", "ADJ", "ADV"})
ARTICLE_LEMMAS = frozenset({"a", "an", "the"})

_VOWEL_GROUP_RE = re.compile(r"[aeiouy]+")


@dataclass
class LexicalProfile:
    values: dict[str, float] = field(default_factory=dict)
    missing: set[str] = field(default_factory=set)

    def merge(self, other: "LexicalProfile") -> "LexicalProfile":
        self.values.update(other.values)
        self.missing.update(other.missing)
        return self

    def complete(self) -> bool:
        return set(LEXICAL_FEATURE_IDS) == set(self.values) | self.missing


def syllable_count(form: str) -> int:
    """Maximal vowel-letter groups (vowels: a e i o u y), case-insensitive."""
    return len(_VOWEL_GROUP_RE.findall(form.lower()))


def _mark_missing(ids: tuple[str, ...]) -> LexicalProfile:
    return LexicalProfile(missing=set(ids))


def compute_diversity(doc: Document) -> LexicalProfile:
    """Hapax ratio, per-paragraph diversity value and content-lemma overlap
    across adjacent sentence windows."""
    ids = ("d_textual_value", "hapax_ratio", "lexical_overlap_2", "lexical_overlap_3")
    n_total = doc.token_count
    if n_total == 0:
        return _mark_missing(ids)
    profile = LexicalProfile()

    forms = [t.form.lower() for s in doc.sentences for t in s.alphabetic_tokens()]
    freq = Counter(forms)
    hapax = sum(1 for c in freq.values() if c == 1)
    profile.values["hapax_ratio"] = hapax / n_total

    # diversity value per paragraph: distinct forms scaled by the share of
    # polysyllabic (>= 3 syllable) tokens
    by_par: dict[int, list[Token]] = {}
    for s in doc.sentences:
        by_par.setdefault(s.paragraph_index, []).extend(s.alphabetic_tokens())
    par_values = []
    for tokens in by_par.values():
        n = len(tokens)
        if n == 0:
            continue
        types = len({t.form.lower() for t in tokens})
        poly = sum(1 for t in tokens if syllable_count(t.form) >= 3)
        par_values.append(types * (1.0 + poly / n))
    profile.values["d_textual_value"] = sum(par_values) / len(par_values)

    sent_content = [
        {t.lemma.lower() for t in s.tokens if t.upos in CONTENT_UPOS and t.is_alphabetic}
        for s in doc.sentences
    ]
    for k, fid in ((2, "lexical_overlap_2"), (3, "lexical_overlap_3")):
        if len(sent_content) < k:
            profile.missing.add(fid)
            continue
        ratios = []
        for i in range(len(sent_content) - k + 1):
            head = sent_content[i]
            if not head:
                continue
            shared = set(head)
            for j in range(i + 1, i + k):
                shared &= sent_content[j]
            ratios.append(len(shared) / len(head))
        if ratios:
            profile.values[fid] = sum(ratios) / len(ratios)
        else:
            profile.missing.add(fid)
    return profile


def compute_range_concreteness(doc: Document, res: LexicalResources) -> LexicalProfile:
    """Frequency-tier proportions (form with lemma fallback) and mean
    concreteness over tokens present in the table."""
    tokens = [t for s in doc.sentences for t in s.alphabetic_tokens()]
    if not tokens:
        return _mark_missing(("lr1", "lr2", "lr3", "concreteness"))
    profile = LexicalProfile()
    n = len(tokens)
    for fid, tier in (("lr1", res.gsl1000), ("lr2", res.gsl2000), ("lr3", res.awl)):
        hits = sum(
            1 for t in tokens
            if t.form.lower() in tier or t.lemma.lower() in tier
        )
        profile.values[fid] = hits / n
    conc = [res.concreteness[t.form.lower()] for t in tokens
            if t.form.lower() in res.concreteness]
    if conc:
        profile.values["concreteness"] = sum(conc) / len(conc)
    else:
        profile.missing.add("concreteness")
    return profile


def compute_pos_ratios(doc: Document, res: LexicalResources) -> LexicalProfile:
    ids = ("noun_pronoun_ratio", "deictic_article_ratio", "definite_article_freq",
           "attributive_adj_freq", "emphatic_particle_freq", "demonstrative_freq",
           "first_person_ratio")
    if doc.token_count == 0:
        return _mark_missing(ids)
    profile = LexicalProfile()
    n_sent = doc.sentence_count

    nouns = pronouns = first_person = articles = deictic = 0
    definite = attributive = emphatic = demonstrative = 0
    for s in doc.sentences:
        for t in s.tokens:
            if t.upos in ("NOUN", "PROPN"):
                nouns += 1
            elif t.upos == "PRON":
                pronouns += 1
                if t.feat("Person") == "1":
                    first_person += 1
            if t.upos == "DET" and (t.feat("Definite") is not None
                                    or t.lemma.lower() in ARTICLE_LEMMAS):
                articles += 1
            if t.upos == "DET" and (t.feat("Definite") == "Def" or t.lemma.lower() == "the"):
                definite += 1
            if t.upos == "ADJ" and t.deprel == "amod":
                attributive += 1
            if t.feat("PronType") == "Dem":
                demonstrative += 1
            if t.is_alphabetic:
                low = t.form.lower()
                if low in res.deictics:
                    deictic += 1
                if low in res.emphatics:
                    emphatic += 1

    profile.values["noun_pronoun_ratio"] = nouns / max(pronouns, 1)
    profile.values["deictic_article_ratio"] = deictic / max(articles, 1)
    profile.values["definite_article_freq"] = definite / n_sent
    profile.values["attributive_adj_freq"] = attributive / n_sent
    profile.values["emphatic_particle_freq"] = emphatic / n_sent
    profile.values["demonstrative_freq"] = demonstrative / n_sent
    profile.values["first_person_ratio"] = first_person / max(pronouns, 1)
    return profile


def _scan_connectives(sentence: Sentence, by_first: dict[str, list[Connective]],
                      counts: Counter) -> None:
    forms = [t.form.lower() for t in sentence.tokens]
    i = 0
    while i < len(forms):
        candidates = by_first.get(forms[i])
        matched = None
        if candidates:
            for conn in candidates:  # sorted longest-first
                k = len(conn.phrase)
                if tuple(forms[i:i + k]) == conn.phrase:
                    matched = conn
                    break
        if matched is not None:
            counts[(matched.category, matched.polarity)] += 1
            i += len(matched.phrase)
        else:
            i += 1


def count_connectives(doc: Document, res: LexicalResources) -> LexicalProfile:
    """Longest-match, non-overlapping scan of each sentence; each of the
    eight (category, polarity) features is matches per sentence."""
    by_first: dict[str, list[Connective]] = {}
    for conn in res.connectives:
        by_first.setdefault(conn.phrase[0], []).append(conn)
    for lst in by_first.values():
        lst.sort(key=lambda c: -len(c.phrase))

    counts: Counter = Counter()
    for s in doc.sentences:
        _scan_connectives(s, by_first, counts)

    profile = LexicalProfile()
    n_sent = doc.sentence_count
    for category in ("additive", "causal", "temporal", "logical"):
        for polarity in ("pos", "neg"):
            fid = f"conn_{category}_{polarity}"
            profile.values[fid] = counts[(category, polarity)] / n_sent
    return profile


def lexical_profile(doc: Document, res: LexicalResources) -> LexicalProfile:
    """All 23 lexical feature ids, each either valued or listed missing."""
    profile = LexicalProfile()
    profile.merge(compute_diversity(doc))
    profile.merge(compute_range_concreteness(doc, res))
    profile.merge(compute_pos_ratios(doc, res))
    profile.merge(count_connectives(doc, res))
    assert profile.complete()
    return profile
