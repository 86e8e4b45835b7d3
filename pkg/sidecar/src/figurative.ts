/** Figurative language detection over dependency relations.
 *
 * For each extracted relation one member is masked and a masked language
 * model proposes candidate fillers. A high mean similarity between the
 * actual word and the candidates marks the usage literal. Otherwise, when
 * the actual word itself is among the candidates, a neutral-context cosine
 * between the two related words serves as a control: a low value confirms
 * the figurative reading.
 */

import type { ConlluDocument, Sentence, Token } from "./conllu.js";
import type { SidecarConfig } from "./config.js";
import type { Encoder, MaskedLM } from "./encoder.js";
import { cosine } from "./encoder.js";
import type { FigurativeRecord } from "./jsonl.js";

export type RelationType =
  | "subj_verb"
  | "subj_nom"
  | "verb_obj"
  | "passive_subj_verb";

export interface Relation {
  relationType: RelationType;
  /** The token replaced by the mask and scored against candidates. */
  target: Token;
  /** The retained relation partner. */
  other: Token;
}

const NOMINAL_UPOS = new Set(["NOUN", "PROPN", "PRON", "NUM", "ADJ"]);

export function extractRelations(sentence: Sentence): Relation[] {
  const byIndex = new Map<number, Token>();
  for (const token of sentence.tokens) byIndex.set(token.index, token);
  const relations: Relation[] = [];
  for (const token of sentence.tokens) {
    const head = byIndex.get(token.head);
    if (head === undefined) continue;
    if (token.deprel === "nsubj") {
      if (head.upos === "VERB") {
        relations.push({ relationType: "subj_verb", target: head, other: token });
      } else if (NOMINAL_UPOS.has(head.upos)) {
        relations.push({ relationType: "subj_nom", target: head, other: token });
      }
    } else if (token.deprel === "nsubj:pass" && head.upos === "VERB") {
      relations.push({ relationType: "passive_subj_verb", target: head, other: token });
    } else if (token.deprel === "obj" && head.upos === "VERB") {
      relations.push({ relationType: "verb_obj", target: token, other: head });
    }
  }
  return relations;
}

export function pronounFor(token: Token): string {
  if (token.feats["Number"] === "Plur") return "they";
  switch (token.feats["Gender"]) {
    case "Masc":
      return "he";
    case "Fem":
      return "she";
    case "Neut":
      return "it";
    default:
      return "they";
  }
}

/** Sentence text with the target masked and proper nouns pronominalized. */
export function maskSentence(sentence: Sentence, relation: Relation): string {
  const parts = sentence.tokens.map((token, pos) => {
    if (token.index === relation.target.index) return "[MASK]";
    if (token.index === relation.other.index && token.upos === "PROPN") {
      const pronoun = pronounFor(token);
      return pos === 0
        ? pronoun.charAt(0).toUpperCase() + pronoun.slice(1)
        : pronoun;
    }
    return token.form;
  });
  return parts.join(" ");
}

export function decideFigurative(
  topkMean: number,
  neutral: number | null,
  tauCandidate: number,
  tauControl: number,
): boolean {
  if (topkMean >= tauCandidate) return false;
  if (neutral === null) return true;
  return neutral < tauControl;
}

function neutralContext(relation: Relation, cfg: SidecarConfig): {
  wordA: string;
  wordB: string;
  context: string;
} {
  const target = relation.target.lemma.toLowerCase();
  const other = relation.other.lemma.toLowerCase();
  let template: string;
  let wordA: string;
  let wordB: string;
  if (relation.relationType === "subj_nom") {
    template = cfg.nounPairTemplate;
    wordA = other;
    wordB = target;
  } else if (relation.relationType === "verb_obj") {
    template = cfg.subjVerbTemplate;
    wordA = target;
    wordB = other;
  } else {
    template = cfg.subjVerbTemplate;
    wordA = other;
    wordB = target;
  }
  const context = template.replace("{A}", wordA).replace("{B}", wordB);
  return { wordA, wordB, context };
}

export async function annotateDocument(
  doc: ConlluDocument,
  cfg: SidecarConfig,
  encoder: Encoder,
  mlm: MaskedLM,
  warn: (message: string) => void,
): Promise<FigurativeRecord[]> {
  const records: FigurativeRecord[] = [];
  for (const sentence of doc.sentences) {
    if (sentence.tokens.length > cfg.maxSentenceTokens) {
      warn(
        `skipping sentence ${sentence.sentIndex} of ${doc.docId}: ` +
          `${sentence.tokens.length} tokens exceed the ` +
          `${cfg.maxSentenceTokens}-token limit`,
      );
      continue;
    }
    for (const relation of extractRelations(sentence)) {
      const masked = maskSentence(sentence, relation);
      const candidates = await mlm.predictTopK(masked, cfg.topK);
      const actual = relation.target.lemma.toLowerCase();
      const actualVec = await encoder.encodeWord(actual, masked);
      let simSum = 0.0;
      for (const candidate of candidates) {
        simSum += cosine(actualVec, await encoder.encodeWord(candidate, masked));
      }
      const topkMean = candidates.length > 0 ? simSum / candidates.length : 0.0;
      let neutral: number | null = null;
      if (topkMean < cfg.tauCandidate && candidates.includes(actual)) {
        const { wordA, wordB, context } = neutralContext(relation, cfg);
        neutral = cosine(
          await encoder.encodeWord(wordA, context),
          await encoder.encodeWord(wordB, context),
        );
      }
      records.push({
        doc_id: doc.docId,
        sent_index: sentence.sentIndex,
        relation_type: relation.relationType,
        target_token_index: relation.target.index,
        topk_mean_similarity: topkMean,
        neutral_cosine: neutral,
        figurative: decideFigurative(
          topkMean,
          neutral,
          cfg.tauCandidate,
          cfg.tauControl,
        ),
      });
    }
  }
  return records;
}
