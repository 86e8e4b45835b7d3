/** Optional transformers backend, loaded only when the config asks for it.
 *
 * Requires the @huggingface/transformers package and local model files or
 * network access. The hashing backend remains the default because it is
 * dependency-free and deterministic.
 */

import type { SidecarConfig } from "./config.js";
import type { Encoder, MaskedLM } from "./encoder.js";
import { SidecarError } from "./errors.js";

interface FeaturePipeline {
  (text: string, options: object): Promise<{ data: Float32Array }>;
}

interface FillMaskPipeline {
  (text: string, options: object): Promise<Array<{ token_str: string }>>;
}

class TransformersEncoder implements Encoder {
  constructor(private readonly extract: FeaturePipeline) {}

  async encodeSentence(text: string): Promise<number[]> {
    const out = await this.extract(text, { pooling: "mean", normalize: true });
    return Array.from(out.data);
  }

  async encodeWord(word: string, context?: string): Promise<number[]> {
    return this.encodeSentence(context === undefined ? word : `${context} ${word}`);
  }
}

class TransformersMaskedLM implements MaskedLM {
  constructor(private readonly fillMask: FillMaskPipeline) {}

  async predictTopK(maskedSentence: string, k: number): Promise<string[]> {
    const out = await this.fillMask(maskedSentence, { topk: k });
    return out.map((entry) => entry.token_str.trim().toLowerCase());
  }
}

export async function loadTransformersBackend(
  cfg: SidecarConfig,
): Promise<{ encoder: Encoder; mlm: MaskedLM }> {
  const specifier = "@huggingface/transformers";
  let mod: { pipeline: (task: string, model: string) => Promise<unknown> };
  try {
    mod = (await import(specifier)) as typeof mod;
  } catch {
    throw new SidecarError(
      "encoder 'transformers' requires the @huggingface/transformers package",
    );
  }
  const extract = (await mod.pipeline(
    "feature-extraction",
    cfg.embeddingModel,
  )) as FeaturePipeline;
  const fillMask = (await mod.pipeline(
    "fill-mask",
    cfg.maskedLmModel,
  )) as FillMaskPipeline;
  return {
    encoder: new TransformersEncoder(extract),
    mlm: new TransformersMaskedLM(fillMask),
  };
}
