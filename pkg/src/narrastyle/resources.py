"""Lexical resource files: frequency tiers, concreteness table, connective
taxonomy, emphatics and deictics.

All matching downstream happens on lowercased forms, so every resource is
lowercased and deduplicated at load time.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

CONCRETENESS_MIN = 100
CONCRETENESS_MAX = 700

CONNECTIVE_CATEGORIES = ("additive", "causal", "temporal", "logical")
CONNECTIVE_POLARITIES = ("pos", "neg")

RESOURCE_FILES = {
    "gsl1000": "gsl_1000.txt",
    "gsl2000": "gsl_2000.txt",
    "awl": "awl.txt",
    "concreteness": "concreteness.tsv",
    "connectives": "connectives.tsv",
    "emphatics": "emphatics.txt",
    "deictics": "deictics.txt",
}


class ResourceError(ValueError):
    pass


@dataclass(frozen=True)
class Connective:
    phrase: tuple[str, ...]
    category: str
    polarity: str


@dataclass(frozen=True)
class LexicalResources:
    gsl1000: frozenset[str]
    gsl2000: frozenset[str]
    awl: frozenset[str]
    concreteness: dict[str, float]
    connectives: tuple[Connective, ...]
    emphatics: frozenset[str]
    deictics: frozenset[str]

    def load_summary(self) -> dict[str, int]:
        return {
            "gsl1000": len(self.gsl1000),
            "gsl2000": len(self.gsl2000),
            "awl": len(self.awl),
            "concreteness": len(self.concreteness),
            "connectives": len(self.connectives),
            "emphatics": len(self.emphatics),
            "deictics": len(self.deictics),
        }


def _read_word_set(path: str) -> frozenset[str]:
    words = set()
    with open(path, encoding="utf-8") as f:
        for line in f:
            w = line.strip().lower()
            if w and not w.startswith("#"):
                words.add(w)
    return frozenset(words)


def _read_concreteness(path: str) -> dict[str, float]:
    table: dict[str, float] = {}
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ResourceError(
                    f"{path}:{line_no}: expected 'word<TAB>value', got {line!r}")
            word = parts[0].strip().lower()
            try:
                value = float(parts[1])
            except ValueError as e:
                raise ResourceError(f"{path}:{line_no}: non-numeric value {parts[1]!r}") from e
            if not (CONCRETENESS_MIN <= value <= CONCRETENESS_MAX):
                raise ResourceError(
                    f"{path}:{line_no}: concreteness {value} outside "
                    f"[{CONCRETENESS_MIN}, {CONCRETENESS_MAX}]")
            table[word] = value
    return table


def _read_connectives(path: str) -> tuple[Connective, ...]:
    seen: set[tuple[tuple[str, ...], str, str]] = set()
    out: list[Connective] = []
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ResourceError(
                    f"{path}:{line_no}: expected 'phrase<TAB>category<TAB>polarity'")
            phrase = tuple(parts[0].strip().lower().split())
            category = parts[1].strip().lower()
            polarity = parts[2].strip().lower()
            if not phrase:
                raise ResourceError(f"{path}:{line_no}: empty connective phrase")
            if category not in CONNECTIVE_CATEGORIES:
                raise ResourceError(f"{path}:{line_no}: unknown category {category!r}")
            if polarity not in CONNECTIVE_POLARITIES:
                raise ResourceError(f"{path}:{line_no}: unknown polarity {polarity!r}")
            key = (phrase, category, polarity)
            if key in seen:
                continue
            seen.add(key)
            out.append(Connective(phrase=phrase, category=category, polarity=polarity))
    return tuple(out)


def load_resources(directory: str) -> LexicalResources:
    """Load the six resource files from `directory`.

    Raises ResourceError naming any missing file or malformed line.
    """
    paths = {}
    for key, fname in RESOURCE_FILES.items():
        p = os.path.join(directory, fname)
        if not os.path.isfile(p):
            raise ResourceError(f"missing resource file: {p}")
        paths[key] = p
    return LexicalResources(
        gsl1000=_read_word_set(paths["gsl1000"]),
        gsl2000=_read_word_set(paths["gsl2000"]),
        awl=_read_word_set(paths["awl"]),
        concreteness=_read_concreteness(paths["concreteness"]),
        connectives=_read_connectives(paths["connectives"]),
        emphatics=_read_word_set(paths["emphatics"]),
        deictics=_read_word_set(paths["deictics"]),
    )


def default_resource_dir() -> str:
    """Directory of the resource files shipped with the package."""
    return os.path.join(os.path.dirname(__file__), "data", "resources")
