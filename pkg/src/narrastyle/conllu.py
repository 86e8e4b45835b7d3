"""CoNLL-U reading and writing.

Understands the 10-column token lines, `# newpar` / `# newdoc id = X`
comments, multiword-token range lines (skipped, component tokens kept)
and empty-node lines (skipped).
"""

from __future__ import annotations

import io
from typing import IO, Iterable

from .model import Document, Sentence, StructuralError, Token

RANGE_SEP = "-"
EMPTY_SEP = "."


class ConlluParseError(ValueError):
    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


def parse_feats(feats: str) -> dict[str, str]:
    if feats in ("_", ""):
        return {}
    out = {}
    for pair in feats.split("|"):
        if "=" in pair:
            k, v = pair.split("=", 1)
            out[k] = v
    return out


def format_feats(feats: dict[str, str]) -> str:
    if not feats:
        return "_"
    return "|".join(f"{k}={v}" for k, v in sorted(feats.items()))


def parse_conllu(stream: IO[str] | str, doc_id: str) -> Document:
    """Parse one CoNLL-U document from a character stream or string."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)

    sentences: list[Sentence] = []
    pending: list[Token] = []
    paragraph = 0
    newpar_seen_midstream = False

    def flush(line_no: int) -> None:
        nonlocal pending, paragraph, newpar_seen_midstream
        if not pending:
            return
        if newpar_seen_midstream:
            paragraph += 1
            newpar_seen_midstream = False
        try:
            sent = Sentence(tokens=tuple(pending), sent_index=len(sentences),
                            paragraph_index=paragraph)
        except StructuralError as e:
            raise ConlluParseError(str(e), line_no) from e
        sentences.append(sent)
        pending = []

    line_no = 0
    for line_no, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if line == "":
            flush(line_no)
            continue
        if line.startswith("#"):
            comment = line[1:].strip()
            if comment == "newpar" or comment.startswith("newpar "):
                # only advance the paragraph once a sentence exists; a leading
                # newpar just opens paragraph 0
                if sentences or pending:
                    newpar_seen_midstream = True
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ConlluParseError(
                f"expected 10 tab-separated columns, found {len(cols)}", line_no)
        tok_id = cols[0]
        if RANGE_SEP in tok_id or EMPTY_SEP in tok_id:
            continue  # multiword ranges and empty nodes carry no tree structure
        try:
            index = int(tok_id)
            head = int(cols[6])
        except ValueError as e:
            raise ConlluParseError(f"non-integer token id or head: {e}", line_no) from e
        pending.append(Token(
            index=index,
            form=cols[1],
            lemma=cols[2],
            upos=cols[3],
            xpos=None if cols[4] == "_" else cols[4],
            feats=parse_feats(cols[5]),
            head=head,
            deprel=cols[7],
        ))
    flush(line_no + 1)

    if not sentences:
        raise ConlluParseError("empty input: no sentences found")
    return Document(doc_id=doc_id, sentences=tuple(sentences))


def parse_conllu_file(path: str, doc_id: str) -> Document:
    with open(path, encoding="utf-8") as f:
        return parse_conllu(f, doc_id)


def serialize(doc: Document) -> str:
    """Render a Document back to CoNLL-U (round-trips through parse_conllu)."""
    out: list[str] = [f"# newdoc id = {doc.doc_id}"]
    prev_par = None
    for sent in doc.sentences:
        if sent.paragraph_index != prev_par:
            out.append("# newpar")
            prev_par = sent.paragraph_index
        for t in sent.tokens:
            out.append("\t".join([
                str(t.index), t.form, t.lemma, t.upos,
                t.xpos if t.xpos is not None else "_",
                format_feats(t.feats),
                str(t.head), t.deprel, "_", "_",
            ]))
        out.append("")
    return "\n".join(out) + "\n"


def write_conllu(doc: Document, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(serialize(doc))


def sentence_text(sentence: Sentence) -> str:
    """Plain-text rendering used for debug output and sidecar hand-off."""
    return " ".join(t.form for t in sentence.tokens)


def iter_documents(paths: Iterable[tuple[str, str]]):
    """Yield (doc_id, Document) for (doc_id, path) pairs, raising lazily."""
    for doc_id, path in paths:
        yield doc_id, parse_conllu_file(path, doc_id)
