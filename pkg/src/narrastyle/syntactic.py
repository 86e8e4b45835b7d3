"""Syntactic feature family: verb-group unification, clause ratios, tree
depth, tense stability and the nested tense schema.

Composite tense mapping (aux lemmas + UD morphology of the group head):

    will/shall aux + Inf head          -> Future
    be(Pres) aux + Ger head            -> Progressive
    have aux + Part head               -> Past        (perfect)
    be(Past) aux + Ger or Part head    -> Past        (past progressive / passive)
    be(Pres) aux + Part head           -> Present     (present passive)
    bare: Part -> Participle, Inf -> Infinitive,
          Tense=Pres -> Present, Tense=Past -> Past, else Other
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .model import Document, Sentence, Token

SYNTACTIC_FEATURE_IDS = (
    "relative_ratio", "subordinate_ratio", "present_ratio", "past_ratio",
    "participle_ratio", "modifier_per_noun", "avg_graph_depth", "verb_density",
    "temporal_stability", "hypotactic_depth",
)

AUX_DEPRELS = frozenset({"aux", "aux:pass"})
SUBORDINATE_BASE = frozenset({"advcl", "ccomp", "xcomp", "acl"})
CLAUSAL_DEPRELS = frozenset({"ccomp", "xcomp", "advcl", "acl", "acl:relcl",
                             "csubj", "parataxis", "conj"})
MODIFIER_BASE = frozenset({"amod", "nmod", "nummod"})

# tense compatibility groups for stability: A holds the present-oriented
# tenses, B the past
GROUP_A = frozenset({"Present", "Future", "Progressive"})
GROUP_B = frozenset({"Past"})

SCHEMA_LABEL = {
    "Present": "Present", "Past": "Past", "Future": "Future",
    "Progressive": "Progressive", "Participle": "Part",
    "Infinitive": "Inf", "Other": "Other",
}


@dataclass(frozen=True)
class VerbGroup:
    head_token_index: int
    aux_token_indices: tuple[int, ...]
    composite_tense: str
    is_root: bool
    is_finite: bool


@dataclass
class SyntacticProfile:
    values: dict[str, float] = field(default_factory=dict)
    missing: set[str] = field(default_factory=set)


def _base(deprel: str) -> str:
    return deprel.split(":", 1)[0]


def _composite_tense(head: Token, auxes: list[Token]) -> str:
    head_form = head.feat("VerbForm")
    head_tense = head.feat("Tense")
    aux_info = [(a.lemma.lower(), a.feat("Tense")) for a in auxes]
    if any(lem in ("will", "shall") for lem, _ in aux_info) and head_form == "Inf":
        return "Future"
    if any(lem == "be" and tense == "Pres" for lem, tense in aux_info) and head_form == "Ger":
        return "Progressive"
    if any(lem == "have" for lem, _ in aux_info) and head_form == "Part":
        return "Past"
    if any(lem == "be" and tense == "Past" for lem, tense in aux_info) \
            and head_form in ("Ger", "Part"):
        return "Past"
    if any(lem == "be" and tense == "Pres" for lem, tense in aux_info) and head_form == "Part":
        return "Present"
    if head_form == "Part" and not auxes:
        return "Participle"
    if head_form == "Inf" and not auxes:
        return "Infinitive"
    if head_tense == "Pres":
        return "Present"
    if head_tense == "Past":
        return "Past"
    return "Other"


def unify_verb_groups(sentence: Sentence) -> list[VerbGroup]:
    """One group per clause-heading verb; aux/aux:pass dependents merge into
    their head's group. An AUX only heads a group when it is itself the
    clause head (not attached via aux/aux:pass/cop)."""
    groups: list[VerbGroup] = []
    aux_children: dict[int, list[Token]] = {}
    for t in sentence.tokens:
        if t.upos == "AUX" and t.deprel in AUX_DEPRELS:
            aux_children.setdefault(t.head, []).append(t)
    for t in sentence.tokens:
        is_head = t.upos == "VERB" or (
            t.upos == "AUX" and t.deprel not in AUX_DEPRELS and t.deprel != "cop")
        if not is_head:
            continue
        auxes = aux_children.get(t.index, [])
        groups.append(VerbGroup(
            head_token_index=t.index,
            aux_token_indices=tuple(a.index for a in auxes),
            composite_tense=_composite_tense(t, auxes),
            is_root=t.head == 0 or t.deprel == "root",
            is_finite=t.feat("VerbForm") == "Fin"
                      or any(a.feat("VerbForm") == "Fin" for a in auxes),
        ))
    return groups


def _doc_groups(doc: Document) -> list[list[VerbGroup]]:
    return [unify_verb_groups(s) for s in doc.sentences]


def compute_clause_ratios(doc: Document) -> SyntacticProfile:
    profile = SyntacticProfile()
    n_sent = doc.sentence_count

    relative = subordinate = modifiers = nouns = 0
    density_terms = []
    for s in doc.sentences:
        n_alpha = len(s.alphabetic_tokens())
        n_verbs = sum(1 for t in s.tokens if t.upos == "VERB")
        if n_alpha > 0:
            density_terms.append(100.0 * n_verbs / n_alpha)
        for t in s.tokens:
            if t.deprel == "acl:relcl":
                relative += 1
            if t.deprel == "acl:relcl" or _base(t.deprel) in SUBORDINATE_BASE:
                subordinate += 1
            if _base(t.deprel) in MODIFIER_BASE:
                modifiers += 1
            if t.upos in ("NOUN", "PROPN"):
                nouns += 1

    profile.values["relative_ratio"] = relative / n_sent
    profile.values["subordinate_ratio"] = subordinate / n_sent
    profile.values["modifier_per_noun"] = modifiers / max(nouns, 1)
    if density_terms:
        profile.values["verb_density"] = sum(density_terms) / len(density_terms)
    else:
        profile.missing.add("verb_density")

    all_groups = [g for per_sent in _doc_groups(doc) for g in per_sent]
    if not all_groups:
        profile.missing.update(("present_ratio", "past_ratio", "participle_ratio"))
        return profile
    n_groups = len(all_groups)
    tenses = Counter(g.composite_tense for g in all_groups)
    profile.values["present_ratio"] = tenses["Present"] / n_groups
    profile.values["past_ratio"] = tenses["Past"] / n_groups
    profile.values["participle_ratio"] = tenses["Participle"] / n_groups
    return profile


def sentence_depth(sentence: Sentence) -> int:
    """Maximum number of edges from the root token to any token."""
    depth = {0: -1}
    for t in sentence.tokens:
        chain = []
        idx = t.index
        while idx not in depth:
            chain.append(idx)
            idx = sentence.tokens[idx - 1].head
        d = depth[idx]
        for link in reversed(chain):
            d += 1
            depth[link] = d
    return max(depth[t.index] for t in sentence.tokens)


def compute_graph_depth(doc: Document) -> float:
    return sum(sentence_depth(s) for s in doc.sentences) / doc.sentence_count


def _root_group(groups: list[VerbGroup]) -> VerbGroup | None:
    for g in groups:
        if g.is_root:
            return g
    return None


def compute_temporal_stability(doc: Document) -> float | None:
    """Share of root-verb tenses in the dominant compatibility group.

    Tenses outside both groups (Participle, Infinitive, Other) are ignored;
    ties between groups resolve to the present-oriented group."""
    root_tenses = []
    for groups in _doc_groups(doc):
        g = _root_group(groups)
        if g is not None:
            root_tenses.append(g.composite_tense)
    in_a = sum(1 for t in root_tenses if t in GROUP_A)
    in_b = sum(1 for t in root_tenses if t in GROUP_B)
    total = in_a + in_b
    if total == 0:
        return None
    dominant = in_a if in_a >= in_b else in_b
    return dominant / total


def _group_parents(sentence: Sentence, groups: list[VerbGroup]) -> dict[int, int | None]:
    """head_token_index -> parent group's head_token_index (None = no parent).

    The parent is the nearest verb-group head on the path to the root; the
    child link only holds when the group's own attachment deprel is clausal."""
    heads = {g.head_token_index for g in groups}
    parents: dict[int, int | None] = {}
    for g in groups:
        tok = sentence.tokens[g.head_token_index - 1]
        if tok.head == 0:
            parents[g.head_token_index] = None
            continue
        if tok.deprel not in CLAUSAL_DEPRELS and _base(tok.deprel) not in CLAUSAL_DEPRELS:
            parents[g.head_token_index] = None
            continue
        cur = tok.head
        parent = None
        while cur != 0:
            if cur in heads:
                parent = cur
                break
            cur = sentence.tokens[cur - 1].head
        parents[g.head_token_index] = parent
    return parents


def sentence_schema(sentence: Sentence) -> tuple[str, int] | None:
    """Nested tense schema and its depth; None when the sentence has no
    root verb group."""
    groups = unify_verb_groups(sentence)
    root = _root_group(groups)
    if root is None:
        return None
    parents = _group_parents(sentence, groups)
    children: dict[int, list[int]] = {g.head_token_index: [] for g in groups}
    for g in groups:
        p = parents.get(g.head_token_index)
        if p is not None and g.head_token_index != root.head_token_index:
            children[p].append(g.head_token_index)
    for lst in children.values():
        lst.sort()
    tense_of = {g.head_token_index: g.composite_tense for g in groups}

    def render(idx: int) -> tuple[str, int]:
        label = SCHEMA_LABEL[tense_of[idx]]
        parts = []
        depth = 0
        for child in children[idx]:
            sub, d = render(child)
            parts.append(f"({sub})")
            depth = max(depth, d + 1)
        return label + "".join(parts), depth

    body, depth = render(root.head_token_index)
    label = SCHEMA_LABEL[tense_of[root.head_token_index]]
    schema = f"*{label}*" + body[len(label):]
    return schema, depth


def schema_depth(schema: str) -> int:
    """Depth of a rendered schema (max parenthesis nesting)."""
    depth = best = 0
    for ch in schema:
        if ch == "(":
            depth += 1
            best = max(best, depth)
        elif ch == ")":
            depth -= 1
    return best


def compute_hypotactic_depth(doc: Document) -> tuple[float | None, list[str]]:
    """Mean schema depth over sentences with a root verb group, plus the
    rendered schemas (one per contributing sentence)."""
    depths = []
    schemas = []
    for s in doc.sentences:
        result = sentence_schema(s)
        if result is None:
            continue
        schema, depth = result
        schemas.append(schema)
        depths.append(depth)
    if not depths:
        return None, schemas
    return sum(depths) / len(depths), schemas


def syntactic_profile(doc: Document) -> SyntacticProfile:
    """All 10 syntactic feature ids, each valued or listed missing."""
    profile = compute_clause_ratios(doc)
    profile.values["avg_graph_depth"] = compute_graph_depth(doc)
    stability = compute_temporal_stability(doc)
    if stability is None:
        profile.missing.add("temporal_stability")
    else:
        profile.values["temporal_stability"] = stability
    depth, _ = compute_hypotactic_depth(doc)
    if depth is None:
        profile.missing.add("hypotactic_depth")
    else:
        profile.values["hypotactic_depth"] = depth
    assert set(SYNTACTIC_FEATURE_IDS) == set(profile.values) | profile.missing
    return profile
