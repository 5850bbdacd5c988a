/**
 * Parity suite: the bindings must return exactly what the engine CLI
 * prints - phrases byte-equal, scores bit-equal - and the benchmark
 * report must match the CLI report structurally (timing aside).
 */

import { execFileSync } from "node:child_process";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import {
  benchmark,
  benchmarkSync,
  EngineError,
  extract,
  extractSync,
  type ExtractOptions,
  type Keyphrase,
} from "../src/index.js";

const PYTHON = process.env.MERGERANK_PYTHON ?? "python3";
const SAMPLE_CORPUS = fileURLToPath(
  new URL("../../src/mergerank/data/sample_corpus", import.meta.url),
);

/** Deterministic PRNG so the random-document corpus is reproducible. */
function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

const VOCAB = [
  "gravity", "lattice", "photon", "enzyme", "orbit", "mantle", "quartz",
  "neuron", "plasma", "tundra", "reactor", "glacier", "isotope", "synapse",
  "turbine", "piston", "catalyst", "membrane", "the", "of", "and", "to", "in",
];
const PUNCT = [",", ".", ";", "!", "?"];

function randomDocument(rand: () => number): string {
  const n = 10 + Math.floor(rand() * 90);
  const words: string[] = [];
  for (let i = 0; i < n; i++) {
    let w = VOCAB[Math.floor(rand() * VOCAB.length)];
    if (rand() < 0.15) w = w[0].toUpperCase() + w.slice(1);
    words.push(w);
    if (rand() < 0.15) words.push(PUNCT[Math.floor(rand() * PUNCT.length)]);
  }
  return words.join(" ");
}

function randomOptions(rand: () => number): ExtractOptions {
  const options: ExtractOptions = {};
  if (rand() < 0.7) options.topK = 1 + Math.floor(rand() * 15);
  if (rand() < 0.7) options.mergeThreshold = [0, 0.5, 1, 1.5][Math.floor(rand() * 4)];
  if (rand() < 0.5) options.lengthUnit = rand() < 0.5 ? "chars" : "words";
  return options;
}

function cliExtract(text: string, options: ExtractOptions): Keyphrase[] {
  const args = [PYTHON, "-m", "mergerank", "extract", "--format", "json"];
  if (options.topK !== undefined) args.push("--top-k", String(options.topK));
  if (options.mergeThreshold !== undefined) {
    args.push("--merge-threshold", String(options.mergeThreshold));
  }
  if (options.lengthUnit !== undefined) args.push("--length-unit", options.lengthUnit);
  const stdout = execFileSync(args[0], args.slice(1), { input: text, encoding: "utf8" });
  return (JSON.parse(stdout) as { keyphrases: Keyphrase[] }).keyphrases;
}

function stripTiming(node: unknown): unknown {
  if (Array.isArray(node)) return node.map(stripTiming);
  if (node !== null && typeof node === "object") {
    const out: Record<string, unknown> = {};
    for (const [key, value] of Object.entries(node)) {
      if (key === "mean_time_s" || key === "time") continue;
      out[key] = stripTiming(value);
    }
    return out;
  }
  return node;
}

describe("extract parity with the CLI", () => {
  it(
    "matches CLI output on 100 random documents and configs",
    () => {
      const rand = mulberry32(20240617);
      for (let i = 0; i < 100; i++) {
        const text = randomDocument(rand);
        const options = randomOptions(rand);
        const viaBinding = extractSync(text, options);
        const viaCli = cliExtract(text, options);
        expect(viaBinding.length).toBe(viaCli.length);
        for (let j = 0; j < viaCli.length; j++) {
          expect(viaBinding[j].phrase).toBe(viaCli[j].phrase); // byte-equal
          expect(Object.is(viaBinding[j].score, viaCli[j].score)).toBe(true); // bit-equal
        }
      }
    },
    { timeout: 300_000 },
  );

  it("returns [] for empty text", async () => {
    expect(extractSync("")).toEqual([]);
    expect(await extract("")).toEqual([]);
  });

  it("emits only single-token phrases at merge threshold 0", () => {
    const text = "copper wire joins the copper wire beside a copper plate";
    for (const kp of extractSync(text, { mergeThreshold: 0 })) {
      expect(kp.phrase).not.toContain(" ");
    }
  });

  it("async and sync paths agree", async () => {
    const text = "granite slab under the granite slab near the river";
    const viaSync = extractSync(text, { topK: 5 });
    const viaAsync = await extract(text, { topK: 5 });
    expect(viaAsync).toEqual(viaSync);
  });

  it("repeated calls are identical (no state leaks)", () => {
    const text = "tidal basin beside the tidal basin gate";
    const first = extractSync(text);
    for (let i = 0; i < 3; i++) {
      expect(extractSync(text)).toEqual(first);
    }
  });

  it("surfaces engine errors with the engine's message", () => {
    expect(() => extractSync("text", { stopwordsPath: "/no/such/stopwords.txt" }))
      .toThrowError(EngineError);
    try {
      extractSync("text", { stopwordsPath: "/no/such/stopwords.txt" });
    } catch (err) {
      expect((err as EngineError).message).toContain("stopwords");
    }
  });
});

describe("benchmark parity with the CLI", () => {
  it(
    "structurally equals the CLI report minus timing",
    () => {
      const viaBinding = benchmarkSync(SAMPLE_CORPUS, { k: [5, 10], workers: 1 });
      const stdout = execFileSync(
        PYTHON,
        ["-m", "mergerank", "benchmark", SAMPLE_CORPUS, "--k", "5,10", "--workers", "1"],
        { encoding: "utf8", maxBuffer: 64 * 1024 * 1024 },
      );
      const viaCli = JSON.parse(stdout) as Record<string, unknown>;
      expect(stripTiming(viaBinding)).toEqual(stripTiming(viaCli));
    },
    { timeout: 300_000 },
  );

  it(
    "contains exactly the requested k blocks",
    async () => {
      const report = (await benchmark(SAMPLE_CORPUS, { k: [5, 10], workers: 1 })) as {
        k_values: number[];
        extractors: Record<string, { f1: Record<string, number> }>;
      };
      expect(report.k_values).toEqual([5, 10]);
      expect(Object.keys(report.extractors.engine.f1).sort()).toEqual(["10", "5"]);
    },
    { timeout: 300_000 },
  );

  it("throws EngineError for an invalid corpus path", () => {
    expect(() => benchmarkSync("/no/such/corpus")).toThrowError(EngineError);
  });
});
