/** Sidecar configuration: JSON file with an explicit schema version. */

import { readFileSync } from "node:fs";

import { SidecarError } from "./errors.js";

export interface SidecarConfig {
  /** "hash" is the self-contained deterministic backend; "transformers"
   * loads @huggingface/transformers models named below. */
  encoder: "hash" | "transformers";
  embeddingModel: string;
  maskedLmModel: string;
  topK: number;
  tauCandidate: number;
  tauControl: number;
  nounPairTemplate: string;
  subjVerbTemplate: string;
  /** Hash-backend embedding width. */
  dimension: number;
  /** Sentences longer than this skip figurative annotation with a warning. */
  maxSentenceTokens: number;
}

export const DEFAULT_CONFIG: SidecarConfig = {
  encoder: "hash",
  embeddingModel: "Xenova/all-MiniLM-L6-v2",
  maskedLmModel: "Xenova/bert-base-uncased",
  topK: 20,
  tauCandidate: 0.4,
  tauControl: 0.3,
  nounPairTemplate: "the {A} and the {B}",
  subjVerbTemplate: "{A} can {B}",
  dimension: 128,
  maxSentenceTokens: 512,
};

const KEY_MAP: Record<string, keyof SidecarConfig> = {
  encoder: "encoder",
  embedding_model: "embeddingModel",
  masked_lm_model: "maskedLmModel",
  top_k: "topK",
  tau_candidate: "tauCandidate",
  tau_control: "tauControl",
  noun_pair_template: "nounPairTemplate",
  subj_verb_template: "subjVerbTemplate",
  dimension: "dimension",
  max_sentence_tokens: "maxSentenceTokens",
};

const SCHEMA_VERSION = 1;

function fail(source: string, message: string): never {
  throw new SidecarError(`${source}: ${message}`, 2);
}

function requireNumber(source: string, key: string, value: unknown): number {
  if (typeof value !== "number" || !Number.isFinite(value)) {
    fail(source, `${key} must be a finite number`);
  }
  return value;
}

function requireString(source: string, key: string, value: unknown): string {
  if (typeof value !== "string" || value === "") {
    fail(source, `${key} must be a non-empty string`);
  }
  return value;
}

export function validateConfig(cfg: SidecarConfig, source = "config"): SidecarConfig {
  if (cfg.encoder !== "hash" && cfg.encoder !== "transformers") {
    fail(source, `unknown encoder ${JSON.stringify(cfg.encoder)}`);
  }
  if (!Number.isInteger(cfg.topK) || cfg.topK < 1) {
    fail(source, "top_k must be an integer >= 1");
  }
  for (const [key, value] of [
    ["tau_candidate", cfg.tauCandidate],
    ["tau_control", cfg.tauControl],
  ] as const) {
    if (!(value >= -1.0 && value <= 1.0)) {
      fail(source, `${key} must lie in [-1, 1]`);
    }
  }
  for (const [key, template] of [
    ["noun_pair_template", cfg.nounPairTemplate],
    ["subj_verb_template", cfg.subjVerbTemplate],
  ] as const) {
    if (!template.includes("{A}") || !template.includes("{B}")) {
      fail(source, `${key} must contain {A} and {B}`);
    }
  }
  if (!Number.isInteger(cfg.dimension) || cfg.dimension < 8) {
    fail(source, "dimension must be an integer >= 8");
  }
  if (!Number.isInteger(cfg.maxSentenceTokens) || cfg.maxSentenceTokens < 1) {
    fail(source, "max_sentence_tokens must be an integer >= 1");
  }
  return cfg;
}

export function configFromObject(data: unknown, source = "config"): SidecarConfig {
  if (typeof data !== "object" || data === null || Array.isArray(data)) {
    fail(source, "config must be a JSON object");
  }
  const obj = data as Record<string, unknown>;
  const unknown = Object.keys(obj)
    .filter((k) => k !== "schema_version" && !(k in KEY_MAP))
    .sort();
  if (unknown.length > 0) {
    fail(source, `unknown config keys: ${unknown.join(", ")}`);
  }
  if (!("schema_version" in obj)) {
    fail(source, "schema_version is required");
  }
  if (obj["schema_version"] !== SCHEMA_VERSION) {
    fail(source,
      `unsupported schema_version ${JSON.stringify(obj["schema_version"])} ` +
      `(expected ${SCHEMA_VERSION})`);
  }
  const cfg: SidecarConfig = { ...DEFAULT_CONFIG };
  const num = (key: string) => requireNumber(source, key, obj[key]);
  const str = (key: string) => requireString(source, key, obj[key]);
  if ("encoder" in obj) {
    cfg.encoder = str("encoder") as SidecarConfig["encoder"];
  }
  if ("embedding_model" in obj) cfg.embeddingModel = str("embedding_model");
  if ("masked_lm_model" in obj) cfg.maskedLmModel = str("masked_lm_model");
  if ("top_k" in obj) cfg.topK = num("top_k");
  if ("tau_candidate" in obj) cfg.tauCandidate = num("tau_candidate");
  if ("tau_control" in obj) cfg.tauControl = num("tau_control");
  if ("noun_pair_template" in obj) cfg.nounPairTemplate = str("noun_pair_template");
  if ("subj_verb_template" in obj) cfg.subjVerbTemplate = str("subj_verb_template");
  if ("dimension" in obj) cfg.dimension = num("dimension");
  if ("max_sentence_tokens" in obj) {
    cfg.maxSentenceTokens = num("max_sentence_tokens");
  }
  return validateConfig(cfg, source);
}

export function loadConfig(path: string | null): SidecarConfig {
  if (path === null) return validateConfig({ ...DEFAULT_CONFIG });
  let text: string;
  try {
    text = readFileSync(path, "utf-8");
  } catch (exc) {
    throw new SidecarError(`cannot read config ${path}: ${String(exc)}`, 2);
  }
  let data: unknown;
  try {
    data = JSON.parse(text);
  } catch (exc) {
    throw new SidecarError(`${path}: invalid JSON (${String(exc)})`, 2);
  }
  return configFromObject(data, path);
}
