/**
 * Node bindings for the mergerank keyphrase extraction engine.
 *
 * The engine is a Python package; these bindings shell out to its CLI
 * and speak its JSON wire format, so results are exactly what the CLI
 * produces: phrases byte-identical, scores bit-identical. Nothing
 * engine-internal crosses the boundary - just UTF-8 text and plain
 * scalars - and every call is stateless, so concurrent use is safe.
 *
 * The engine must be installed and importable (`pip install mergerank`
 * or an editable install of this repository). Set MERGERANK_PYTHON to
 * pick the interpreter; it defaults to `python3`.
 */

import { execFile, execFileSync } from "node:child_process";

const MAX_BUFFER = 256 * 1024 * 1024;

export interface Keyphrase {
  phrase: string;
  score: number;
}

export interface ExtractOptions {
  /** Maximum number of keyphrases to return (default 10). */
  topK?: number;
  /** Merge threshold: adjacent pairs scoring strictly below it fuse (default 1.0). */
  mergeThreshold?: number;
  /** Length factor applied to node ranks: "chars" (default) or "words". */
  lengthUnit?: "chars" | "words";
  /** Optional stopword file; the engine's bundled English list otherwise. */
  stopwordsPath?: string;
}

export interface BenchmarkOptions {
  /** Cutoffs to evaluate (default [5, 10, 15]). */
  k?: number[];
  /** Also report metrics under stemmed matching. */
  stem?: boolean;
  /** Worker processes for the corpus run. */
  workers?: number;
  mergeThreshold?: number;
  stopwordsPath?: string;
}

/** Raised when the engine process fails; carries the engine's error text. */
export class EngineError extends Error {
  readonly exitCode: number | null;

  constructor(message: string, exitCode: number | null) {
    super(message);
    this.name = "EngineError";
    this.exitCode = exitCode;
  }
}

function engineCommand(): { command: string; baseArgs: string[] } {
  const python = process.env.MERGERANK_PYTHON ?? "python3";
  return { command: python, baseArgs: ["-m", "mergerank"] };
}

function extractArgs(options: ExtractOptions): string[] {
  const args = ["extract", "--format", "json"];
  if (options.topK !== undefined) args.push("--top-k", String(options.topK));
  if (options.mergeThreshold !== undefined) {
    args.push("--merge-threshold", String(options.mergeThreshold));
  }
  if (options.lengthUnit !== undefined) args.push("--length-unit", options.lengthUnit);
  if (options.stopwordsPath !== undefined) args.push("--stopwords", options.stopwordsPath);
  return args;
}

function benchmarkArgs(corpusRoot: string, options: BenchmarkOptions): string[] {
  const args = ["benchmark", corpusRoot];
  if (options.k !== undefined) args.push("--k", options.k.join(","));
  if (options.stem) args.push("--stem");
  if (options.workers !== undefined) args.push("--workers", String(options.workers));
  if (options.mergeThreshold !== undefined) {
    args.push("--merge-threshold", String(options.mergeThreshold));
  }
  if (options.stopwordsPath !== undefined) args.push("--stopwords", options.stopwordsPath);
  return args;
}

function engineErrorFrom(err: unknown): EngineError {
  const e = err as { stderr?: string | Buffer; status?: number; code?: number; message?: string };
  const stderr = e.stderr?.toString().trim();
  const code = typeof e.status === "number" ? e.status : typeof e.code === "number" ? e.code : null;
  return new EngineError(stderr || e.message || "engine invocation failed", code);
}

function runEngine(args: string[], input?: string): Promise<string> {
  const { command, baseArgs } = engineCommand();
  return new Promise((resolve, reject) => {
    const child = execFile(
      command,
      [...baseArgs, ...args],
      { maxBuffer: MAX_BUFFER, encoding: "utf8" },
      (err, stdout, stderr) => {
        if (err) {
          reject(engineErrorFrom(Object.assign(err, { stderr })));
        } else {
          resolve(stdout);
        }
      },
    );
    if (child.stdin) {
      if (input !== undefined) child.stdin.write(input);
      child.stdin.end();
    }
  });
}

function runEngineSync(args: string[], input?: string): string {
  const { command, baseArgs } = engineCommand();
  try {
    return execFileSync(command, [...baseArgs, ...args], {
      input: input ?? "",
      encoding: "utf8",
      maxBuffer: MAX_BUFFER,
    });
  } catch (err) {
    throw engineErrorFrom(err);
  }
}

function parseExtractOutput(stdout: string): Keyphrase[] {
  const record = JSON.parse(stdout) as { keyphrases: Keyphrase[] };
  return record.keyphrases;
}

/** Extract ranked keyphrases from one document. */
export async function extract(text: string, options: ExtractOptions = {}): Promise<Keyphrase[]> {
  return parseExtractOutput(await runEngine(extractArgs(options), text));
}

/** Synchronous variant of {@link extract}. */
export function extractSync(text: string, options: ExtractOptions = {}): Keyphrase[] {
  return parseExtractOutput(runEngineSync(extractArgs(options), text));
}

/** Run the retrieval benchmark on a docsutf8/keys corpus; returns the report object. */
export async function benchmark(
  corpusRoot: string,
  options: BenchmarkOptions = {},
): Promise<Record<string, unknown>> {
  return JSON.parse(await runEngine(benchmarkArgs(corpusRoot, options))) as Record<string, unknown>;
}

/** Synchronous variant of {@link benchmark}. */
export function benchmarkSync(
  corpusRoot: string,
  options: BenchmarkOptions = {},
): Record<string, unknown> {
  return JSON.parse(runEngineSync(benchmarkArgs(corpusRoot, options))) as Record<string, unknown>;
}
