/** Sentence embedding stage. */

import type { ConlluDocument } from "./conllu.js";
import { sentenceText } from "./conllu.js";
import type { Encoder } from "./encoder.js";
import type { EmbeddingRecord } from "./jsonl.js";

export async function embedDocument(
  doc: ConlluDocument,
  encoder: Encoder,
): Promise<EmbeddingRecord[]> {
  const records: EmbeddingRecord[] = [];
  for (const sentence of doc.sentences) {
    records.push({
      doc_id: doc.docId,
      sent_index: sentence.sentIndex,
      embedding: await encoder.encodeSentence(sentenceText(sentence)),
    });
  }
  return records;
}
