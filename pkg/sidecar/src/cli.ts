#!/usr/bin/env node
/** Command line entry point. */

import { readFileSync } from "node:fs";
import { basename } from "node:path";
import { pathToFileURL } from "node:url";

import { parseConllu } from "./conllu.js";
import type { SidecarConfig } from "./config.js";
import { loadConfig } from "./config.js";
import { embedDocument } from "./embed.js";
import type { Encoder, MaskedLM } from "./encoder.js";
import { HashEncoder, HashMaskedLM } from "./encoder.js";
import { SidecarError } from "./errors.js";
import { annotateDocument } from "./figurative.js";
import { writeJsonl } from "./jsonl.js";
import { loadTransformersBackend } from "./transformers.js";

const VERSION = "0.1.0";

const USAGE =
  "usage: sidecar <embed|figurative> --in FILE --out FILE" +
  " [--config FILE] [--doc-id ID]\n" +
  "       sidecar --version";

interface Args {
  command: "embed" | "figurative";
  inPath: string;
  outPath: string;
  configPath: string | null;
  docId: string | null;
}

function parseArgs(argv: readonly string[]): Args {
  const command = argv[0];
  if (command !== "embed" && command !== "figurative") {
    throw new SidecarError(
      `expected a command, got '${command ?? ""}'\n${USAGE}`,
      2,
    );
  }
  let inPath: string | null = null;
  let outPath: string | null = null;
  let configPath: string | null = null;
  let docId: string | null = null;
  for (let i = 1; i < argv.length; i += 2) {
    const flag = argv[i]!;
    const value = argv[i + 1];
    if (value === undefined) {
      throw new SidecarError(`flag ${flag} needs a value\n${USAGE}`, 2);
    }
    switch (flag) {
      case "--in":
        inPath = value;
        break;
      case "--out":
        outPath = value;
        break;
      case "--config":
        configPath = value;
        break;
      case "--doc-id":
        docId = value;
        break;
      default:
        throw new SidecarError(`unknown flag '${flag}'\n${USAGE}`, 2);
    }
  }
  if (inPath === null || outPath === null) {
    throw new SidecarError(`--in and --out are required\n${USAGE}`, 2);
  }
  return { command, inPath, outPath, configPath, docId };
}

async function makeBackends(
  cfg: SidecarConfig,
): Promise<{ encoder: Encoder; mlm: MaskedLM }> {
  if (cfg.encoder === "hash") {
    return { encoder: new HashEncoder(cfg.dimension), mlm: new HashMaskedLM() };
  }
  return loadTransformersBackend(cfg);
}

export async function main(argv: readonly string[]): Promise<number> {
  try {
    if (argv[0] === "--version") {
      console.log(`sidecar ${VERSION}`);
      return 0;
    }
    const args = parseArgs(argv);
    const cfg = loadConfig(args.configPath);
    let text: string;
    try {
      text = readFileSync(args.inPath, "utf-8");
    } catch (err) {
      throw new SidecarError(`cannot read ${args.inPath}: ${(err as Error).message}`);
    }
    const fallbackId = basename(args.inPath).replace(/\.conllu$/, "");
    const doc = parseConllu(text, args.docId ?? fallbackId);
    if (args.docId !== null) doc.docId = args.docId;
    const { encoder, mlm } = await makeBackends(cfg);
    if (args.command === "embed") {
      const records = await embedDocument(doc, encoder);
      writeJsonl(args.outPath, records);
      console.log(`embedded ${records.length} sentences of ${doc.docId}`);
    } else {
      const records = await annotateDocument(doc, cfg, encoder, mlm, (message) =>
        console.error(`warning: ${message}`),
      );
      writeJsonl(args.outPath, records);
      console.log(`annotated ${records.length} relations in ${doc.docId}`);
    }
    return 0;
  } catch (err) {
    if (err instanceof SidecarError) {
      console.error(`error: ${err.message}`);
      return err.exitCode;
    }
    throw err;
  }
}

const invokedAsScript =
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(process.argv[1]).href;

if (invokedAsScript) {
  main(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
