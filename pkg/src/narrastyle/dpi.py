"""Differential polarity scoring against a gold-standard baseline.

A candidate's score is a signed sum of its average Pearson similarities
to baseline classes, e.g. "Aw-SP-SQ" = sim(Aw) - sim(SP) - sim(SQ).
Class groupings come in three strategies: Original (Aw/HQ/SQ/SP),
Automatic (C0/C1/C2, clustering-derived) and Merged (POS/NEG).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .similarity import SimilarityError, pearson
from .vectors import BaselineProfile, FeatureVector

STRATEGY_CLASSES: dict[str, tuple[str, ...]] = {
    "Original": ("Aw", "HQ", "SQ", "SP"),
    "Automatic": ("C0", "C1", "C2"),
    "Merged": ("POS", "NEG"),
}

DEFAULT_STRATEGY = "Original"
DEFAULT_FORMULA = "Aw-SP-SQ"

_LABEL_RE = re.compile(r"\s*([A-Za-z][A-Za-z0-9_]*)\s*")
_TERM_RE = re.compile(r"([+-])\s*([A-Za-z][A-Za-z0-9_]*)\s*")


class DpiError(ValueError):
    pass


@dataclass(frozen=True)
class DpiFormula:
    terms: tuple[tuple[str, int], ...]
    source: str


@dataclass(frozen=True)
class DpiScore:
    doc_id: str
    class_similarities: Mapping[str, float]
    score: float
    formula: str
    strategy: str


def parse_formula(text: str, strategy: str = DEFAULT_STRATEGY,
                  class_labels: Sequence[str] | None = None) -> DpiFormula:
    """Grammar: `term (("+"|"-") term)*`, the first term implicitly positive."""
    if class_labels is None:
        if strategy not in STRATEGY_CLASSES:
            raise DpiError(f"unknown strategy {strategy!r}; "
                           f"known: {list(STRATEGY_CLASSES)}")
        class_labels = STRATEGY_CLASSES[strategy]
    m = _LABEL_RE.match(text)
    if m is None:
        raise DpiError(f"formula must start with a class label: {text!r}")
    terms = [(m.group(1), 1)]
    pos = m.end()
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if m is None:
            raise DpiError(f"cannot parse formula {text!r} at offset {pos}")
        terms.append((m.group(2), 1 if m.group(1) == "+" else -1))
        pos = m.end()
    seen = set()
    for label, _ in terms:
        if label not in class_labels:
            raise DpiError(f"formula {text!r} names unknown class {label!r} "
                           f"for strategy {strategy}")
        if label in seen:
            raise DpiError(f"formula {text!r} repeats class {label!r}")
        seen.add(label)
    return DpiFormula(terms=tuple(terms), source=text)


def class_similarities(candidate: FeatureVector, baseline: BaselineProfile,
                       strategy: str = DEFAULT_STRATEGY,
                       transformed: bool = False) -> dict[str, float]:
    """Mean Pearson similarity of the candidate to each class's baseline
    documents. Raw Pearson by default; `transformed` applies the Rohde
    rule to each pairwise similarity first (ablation only)."""
    class_map = baseline.class_maps.get(strategy)
    if class_map is None:
        raise DpiError(f"baseline has no {strategy!r} grouping; "
                       f"available: {list(baseline.class_maps)}")
    by_class: dict[str, list[FeatureVector]] = {}
    for vec in baseline.vectors_weighted:
        by_class.setdefault(class_map[vec.doc_id], []).append(vec)
    out: dict[str, float] = {}
    for label in sorted(by_class):
        members = by_class[label]
        if not members:
            raise DpiError(f"class {label} has no baseline documents")
        sims = []
        for member in members:
            try:
                r = pearson(candidate.values, member.values)
            except SimilarityError as exc:
                raise DpiError(f"{candidate.doc_id} vs {member.doc_id}: {exc}") from exc
            if transformed:
                r = 0.0 if r <= 0.0 else math.sqrt(r)
            sims.append(r)
        out[label] = math.fsum(sims) / len(sims)
    return out


def score(candidate: FeatureVector, baseline: BaselineProfile,
          strategy: str = DEFAULT_STRATEGY,
          formula: str | DpiFormula = DEFAULT_FORMULA,
          transformed: bool = False) -> DpiScore:
    sims = class_similarities(candidate, baseline, strategy, transformed)
    if isinstance(formula, str):
        formula = parse_formula(formula, strategy, class_labels=tuple(sims))
    else:
        unknown = [label for label, _ in formula.terms if label not in sims]
        if unknown:
            raise DpiError(f"formula {formula.source!r} names classes absent "
                           f"from the baseline grouping: {unknown}")
    total = math.fsum(sign * sims[label] for label, sign in formula.terms)
    return DpiScore(doc_id=candidate.doc_id, class_similarities=sims,
                    score=total, formula=formula.source, strategy=strategy)


def read_scores_csv(path) -> list[DpiScore]:
    lines = [ln for ln in Path(path).read_text(encoding="utf-8").splitlines()
             if ln.strip()]
    if not lines:
        raise DpiError(f"{path}: empty scores csv")
    header = lines[0].split(",")
    if (len(header) < 4 or header[0] != "doc_id" or header[1] != "score"
            or header[-2] != "formula" or header[-1] != "strategy"
            or any(not h.startswith("sim_") for h in header[2:-2])):
        raise DpiError(f"{path}: bad scores csv header {header}")
    labels = [h[len("sim_"):] for h in header[2:-2]]
    out = []
    for line_no, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != len(header):
            raise DpiError(f"{path}:{line_no}: expected {len(header)} cells")
        sims = {label: float(cell) for label, cell in zip(labels, cells[2:-2])}
        out.append(DpiScore(doc_id=cells[0], class_similarities=sims,
                            score=float(cells[1]), formula=cells[-2],
                            strategy=cells[-1]))
    return out


def write_scores_csv(scores: Sequence[DpiScore], path) -> None:
    """`doc_id,score,sim_<class>...,formula,strategy`, 6 decimals."""
    if not scores:
        raise DpiError("no scores to write")
    labels = sorted(scores[0].class_similarities)
    lines = ["doc_id,score," + ",".join(f"sim_{c}" for c in labels)
             + ",formula,strategy"]
    for s in scores:
        if sorted(s.class_similarities) != labels:
            raise DpiError("scores mix different class groupings")
        sims = ",".join(f"{s.class_similarities[c]:.6f}" for c in labels)
        lines.append(f"{s.doc_id},{s.score:.6f},{sims},{s.formula},{s.strategy}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
