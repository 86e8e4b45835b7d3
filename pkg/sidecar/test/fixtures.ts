/** Shared CoNLL-U fixtures for tests. */

export const row = (...cols: string[]): string => cols.join("\t");

const pad = "_";

/** "The wind devoured the old village ." with nsubj and obj relations. */
export const STORM_DOC = [
  "# newdoc id = storm",
  "# sent_id = storm-1",
  "# text = The wind devoured the old village .",
  row("1", "The", "the", "DET", pad, pad, "3", "det", pad, pad),
  row("2", "wind", "wind", "NOUN", pad, pad, "3", "nsubj", pad, pad),
  row("3", "devoured", "devour", "VERB", pad, pad, "0", "root", pad, pad),
  row("4", "the", "the", "DET", pad, pad, "6", "det", pad, pad),
  row("5", "old", "old", "ADJ", pad, pad, "6", "amod", pad, pad),
  row("6", "village", "village", "NOUN", pad, pad, "3", "obj", pad, pad),
  row("7", ".", ".", "PUNCT", pad, pad, "3", "punct", pad, pad),
  "",
  "# sent_id = storm-2",
  "# text = Mary was seen .",
  row("1", "Mary", "Mary", "PROPN", pad, "Gender=Fem|Number=Sing", "3", "nsubj:pass", pad, pad),
  row("2", "was", "be", "AUX", pad, pad, "3", "aux:pass", pad, pad),
  row("3", "seen", "see", "VERB", pad, pad, "0", "root", pad, pad),
  row("4", ".", ".", "PUNCT", pad, pad, "3", "punct", pad, pad),
  "",
].join("\n");

/** "Time is a thief ." copula-free nominal predication via nsubj. */
export const THIEF_DOC = [
  "# newdoc id = thief",
  "# text = Time is a thief .",
  row("1", "Time", "time", "NOUN", pad, pad, "4", "nsubj", pad, pad),
  row("2", "is", "be", "AUX", pad, pad, "4", "cop", pad, pad),
  row("3", "a", "a", "DET", pad, pad, "4", "det", pad, pad),
  row("4", "thief", "thief", "NOUN", pad, pad, "0", "root", pad, pad),
  row("5", ".", ".", "PUNCT", pad, pad, "4", "punct", pad, pad),
  "",
].join("\n");
