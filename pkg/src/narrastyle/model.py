"""Document model: tokens, sentences, documents.

Documents are immutable after construction; all downstream feature code
treats them as read-only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

ALPHABETIC_RE = re.compile(r"^[^\W\d_]+(?:['’-][^\W\d_]+)*$", re.UNICODE)


class StructuralError(ValueError):
    """Dependency structure of a sentence is not a single rooted tree."""


@dataclass(frozen=True)
class Token:
    index: int              # 1-based position within the sentence
    form: str
    lemma: str
    upos: str
    xpos: str | None
    feats: dict[str, str]
    head: int               # 0 = root
    deprel: str

    @property
    def is_alphabetic(self) -> bool:
        if self.upos in ("PUNCT", "SYM"):
            return False
        return bool(ALPHABETIC_RE.match(self.form))

    def feat(self, key: str) -> str | None:
        return self.feats.get(key)


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...]
    sent_index: int         # 0-based within document
    paragraph_index: int    # 0-based

    def __post_init__(self):
        self._validate_tree()

    def _validate_tree(self) -> None:
        n = len(self.tokens)
        roots = [t for t in self.tokens if t.head == 0]
        if len(roots) != 1:
            raise StructuralError(
                f"sentence {self.sent_index}: expected exactly one root, found {len(roots)}"
            )
        for t in self.tokens:
            if not (0 <= t.head <= n):
                raise StructuralError(
                    f"sentence {self.sent_index}: token {t.index} head {t.head} out of range"
                )
            if t.head == t.index:
                raise StructuralError(
                    f"sentence {self.sent_index}: token {t.index} is its own head"
                )
        # walk every token to the root; a cycle shows up as a long path
        for t in self.tokens:
            seen = 0
            cur = t.index
            while cur != 0:
                cur = self.tokens[cur - 1].head
                seen += 1
                if seen > n:
                    raise StructuralError(
                        f"sentence {self.sent_index}: dependency cycle involving token {t.index}"
                    )

    @property
    def root(self) -> Token:
        for t in self.tokens:
            if t.head == 0:
                return t
        raise StructuralError(f"sentence {self.sent_index}: no root")  # pragma: no cover

    def alphabetic_tokens(self) -> list[Token]:
        return [t for t in self.tokens if t.is_alphabetic]

    def children(self) -> dict[int, list[Token]]:
        """Map head index (1-based, 0 for root) -> ordered dependents."""
        out: dict[int, list[Token]] = {}
        for t in self.tokens:
            out.setdefault(t.head, []).append(t)
        return out


@dataclass(frozen=True)
class Document:
    doc_id: str
    sentences: tuple[Sentence, ...]
    class_label: str | None = None
    human_rating: float | None = None

    def __post_init__(self):
        if not self.sentences:
            raise ValueError(f"document {self.doc_id!r} has no sentences")
        for i, s in enumerate(self.sentences):
            if s.sent_index != i:
                raise ValueError(f"document {self.doc_id!r}: sentence indices not 0..n-1")
        pars = [s.paragraph_index for s in self.sentences]
        if any(b < a for a, b in zip(pars, pars[1:])):
            raise ValueError(f"document {self.doc_id!r}: paragraph indices decrease")

    @property
    def token_count(self) -> int:
        return sum(len(s.alphabetic_tokens()) for s in self.sentences)

    @property
    def sentence_count(self) -> int:
        return len(self.sentences)

    @property
    def paragraph_count(self) -> int:
        return self.sentences[-1].paragraph_index + 1


def replace_meta(doc: Document, class_label: str | None = None,
                 human_rating: float | None = None) -> Document:
    """Copy of doc with class/rating metadata attached."""
    return Document(
        doc_id=doc.doc_id,
        sentences=doc.sentences,
        class_label=class_label if class_label is not None else doc.class_label,
        human_rating=human_rating if human_rating is not None else doc.human_rating,
    )
