/** Minimal CoNLL-U reader: just the fields the sidecar needs. */

import { SidecarError } from "./errors.js";

export interface Token {
  /** 1-based position within the sentence. */
  index: number;
  form: string;
  lemma: string;
  upos: string;
  feats: Record<string, string>;
  head: number;
  deprel: string;
}

export interface Sentence {
  sentIndex: number;
  tokens: Token[];
}

export interface ConlluDocument {
  docId: string;
  sentences: Sentence[];
}

function parseFeats(cell: string): Record<string, string> {
  const feats: Record<string, string> = {};
  if (cell === "_" || cell === "") return feats;
  for (const pair of cell.split("|")) {
    const eq = pair.indexOf("=");
    if (eq > 0) feats[pair.slice(0, eq)] = pair.slice(eq + 1);
  }
  return feats;
}

export function parseConllu(text: string, fallbackDocId: string): ConlluDocument {
  let docId = fallbackDocId;
  const sentences: Sentence[] = [];
  let tokens: Token[] = [];
  let sawContent = false;

  const flush = () => {
    if (!sawContent) return;
    if (tokens.length === 0) {
      throw new SidecarError(
        `sentence ${sentences.length} of ${docId} has no tokens`);
    }
    sentences.push({ sentIndex: sentences.length, tokens });
    tokens = [];
    sawContent = false;
  };

  for (const rawLine of text.split("\n")) {
    const line = rawLine.replace(/\r$/, "");
    if (line.trim() === "") {
      flush();
      continue;
    }
    if (line.startsWith("#")) {
      const m = /^#\s*newdoc\s+id\s*=\s*(\S+)/.exec(line);
      if (m) docId = m[1]!;
      sawContent = true;
      continue;
    }
    const cols = line.split("\t");
    if (cols.length < 8) {
      throw new SidecarError(`malformed token line: ${line}`);
    }
    sawContent = true;
    const id = cols[0]!;
    if (id.includes("-") || id.includes(".")) continue; // ranges, empty nodes
    const index = Number(id);
    if (!Number.isInteger(index) || index < 1) {
      throw new SidecarError(`bad token id ${id} in ${docId}`);
    }
    const head = Number(cols[6]);
    if (!Number.isInteger(head) || head < 0) {
      throw new SidecarError(`bad head ${cols[6]} in ${docId}`);
    }
    tokens.push({
      index,
      form: cols[1]!,
      lemma: cols[2] === "_" ? cols[1]!.toLowerCase() : cols[2]!,
      upos: cols[3]!,
      feats: parseFeats(cols[5]!),
      head,
      deprel: cols[7]!,
    });
  }
  flush();
  if (sentences.length === 0) {
    throw new SidecarError(`${docId}: no sentences found`);
  }
  return { docId, sentences };
}

/** Sentence surface form, reconstructed by joining token forms. */
export function sentenceText(sentence: Sentence): string {
  return sentence.tokens.map((t) => t.form).join(" ");
}
