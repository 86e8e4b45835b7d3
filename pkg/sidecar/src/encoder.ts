/** Encoding backends.
 *
 * The default backend is a deterministic feature-hashing encoder: words map
 * to signed character-trigram buckets, sentences are normalized sums of
 * word vectors. It needs no model downloads and reproduces bit-identical
 * output across runs and platforms. A transformers-based backend can be
 * selected in the config when @huggingface/transformers is installed.
 */

export interface Encoder {
  encodeSentence(text: string): Promise<number[]>;
  /** Context is advisory: contextual encoders may use it, hashing ignores it. */
  encodeWord(word: string, context?: string): Promise<number[]>;
}

export interface MaskedLM {
  /** Top-k candidate words for the [MASK] position, most likely first. */
  predictTopK(maskedSentence: string, k: number): Promise<string[]>;
}

export function fnv1a(text: string): number {
  let h = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    h ^= text.charCodeAt(i);
    h = Math.imul(h, 0x01000193);
  }
  return h >>> 0;
}

export function tokenize(text: string): string[] {
  return text.toLowerCase().match(/[a-z0-9']+/g) ?? [];
}

export function cosine(u: number[], v: number[]): number {
  let uu = 0.0;
  let vv = 0.0;
  let uv = 0.0;
  for (let i = 0; i < u.length; i++) {
    uu += u[i]! * u[i]!;
    vv += v[i]! * v[i]!;
    uv += u[i]! * v[i]!;
  }
  if (uu === 0.0 || vv === 0.0) return 0.0;
  const r = uv / Math.sqrt(uu * vv);
  return r > 1.0 ? 1.0 : r < -1.0 ? -1.0 : r;
}

function normalize(vec: number[]): number[] {
  let ss = 0.0;
  for (const x of vec) ss += x * x;
  if (ss === 0.0) return vec;
  const inv = 1.0 / Math.sqrt(ss);
  return vec.map((x) => x * inv);
}

export class HashEncoder implements Encoder {
  constructor(private readonly dim: number) {}

  private rawWordVector(word: string): number[] {
    const vec = new Array<number>(this.dim).fill(0.0);
    const marked = `^${word}$`;
    for (let i = 0; i + 3 <= marked.length; i++) {
      const h = fnv1a("3#" + marked.slice(i, i + 3));
      const b = h % this.dim;
      vec[b] = vec[b]! + ((h >>> 16) & 1 ? 1.0 : -1.0);
    }
    const hw = fnv1a("w#" + word);
    const bw = hw % this.dim;
    vec[bw] = vec[bw]! + ((hw >>> 16) & 1 ? 2.0 : -2.0);
    return vec;
  }

  private fallback(): number[] {
    const vec = new Array<number>(this.dim).fill(0.0);
    vec[fnv1a("empty") % this.dim] = 1.0;
    return vec;
  }

  wordVector(word: string): number[] {
    const vec = normalize(this.rawWordVector(word));
    return vec.some((x) => x !== 0.0) ? vec : this.fallback();
  }

  sentenceVector(text: string): number[] {
    const words = tokenize(text);
    if (words.length === 0) return this.fallback();
    const acc = new Array<number>(this.dim).fill(0.0);
    for (const word of words) {
      const wv = this.wordVector(word);
      for (let i = 0; i < this.dim; i++) acc[i] = acc[i]! + wv[i]!;
    }
    const vec = normalize(acc);
    return vec.some((x) => x !== 0.0) ? vec : this.fallback();
  }

  encodeSentence(text: string): Promise<number[]> {
    return Promise.resolve(this.sentenceVector(text));
  }

  encodeWord(word: string): Promise<number[]> {
    return Promise.resolve(this.wordVector(word));
  }
}

/** Common-word candidate pool for the hashing pseudo language model. */
export const VOCAB: readonly string[] = [
  "time", "year", "people", "way", "day", "man", "thing", "woman", "life",
  "child", "world", "school", "state", "family", "student", "group",
  "country", "problem", "hand", "part", "place", "case", "week", "company",
  "system", "program", "question", "work", "government", "number", "night",
  "point", "home", "water", "room", "mother", "area", "money", "story",
  "fact", "month", "lot", "right", "study", "book", "eye", "job", "word",
  "business", "issue", "side", "kind", "head", "house", "service", "friend",
  "father", "power", "hour", "game", "line", "end", "member", "law", "car",
  "city", "community", "name", "team", "minute", "idea", "body", "door",
  "face", "level", "office", "health", "person", "art", "war", "history",
  "party", "result", "morning", "reason", "research", "girl", "guy",
  "moment", "air", "teacher", "force", "education", "be", "have", "do",
  "say", "get", "make", "go", "know", "take", "see", "come", "think",
  "look", "want", "give", "use", "find", "tell", "ask", "seem", "feel",
  "try", "leave", "call", "need", "become", "mean", "keep", "let", "begin",
  "help", "talk", "turn", "start", "show", "hear", "play", "run", "move",
  "live", "believe", "hold", "bring", "happen", "write", "sit", "stand",
  "lose", "pay", "meet", "include", "continue", "set", "learn", "change",
  "lead", "understand", "watch", "follow", "stop", "create", "speak",
  "read", "allow", "add", "spend", "grow", "open", "walk", "win", "offer",
  "remember", "love", "consider", "appear", "buy", "wait", "serve", "send",
  "expect", "build", "stay", "fall", "cut", "reach", "remain", "good",
  "new", "first", "last", "long", "great", "little", "own", "other", "old",
  "big", "high", "different", "small", "large", "next", "early", "young",
  "important", "few", "public", "bad", "same", "able", "dark", "cold",
  "warm", "quiet", "loud", "bright", "heavy", "soft",
];

export class HashMaskedLM implements MaskedLM {
  predictTopK(maskedSentence: string, k: number): Promise<string[]> {
    const seed = fnv1a("mlm#" + maskedSentence);
    const out: string[] = [];
    const seen = new Set<string>();
    const limit = Math.min(k, VOCAB.length);
    for (let i = 0; seen.size < limit; i++) {
      const idx = ((seed + Math.imul(i, 0x9e3779b1)) >>> 0) % VOCAB.length;
      const word = VOCAB[idx]!;
      if (!seen.has(word)) {
        seen.add(word);
        out.push(word);
      }
    }
    return Promise.resolve(out);
  }
}
