/** JSONL serialization with atomic writes. */

import { renameSync, writeFileSync } from "node:fs";

export interface EmbeddingRecord {
  doc_id: string;
  sent_index: number;
  embedding: number[];
}

export interface FigurativeRecord {
  doc_id: string;
  sent_index: number;
  relation_type: string;
  target_token_index: number;
  topk_mean_similarity: number;
  neutral_cosine: number | null;
  figurative: boolean;
}

export function toJsonl(records: readonly object[]): string {
  return records.map((r) => JSON.stringify(r) + "\n").join("");
}

/** Write via a sibling temp file so readers never see a partial file. */
export function writeJsonl(path: string, records: readonly object[]): void {
  const tmp = path + ".tmp";
  writeFileSync(tmp, toJsonl(records), "utf-8");
  renameSync(tmp, path);
}
