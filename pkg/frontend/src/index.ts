/**
 * Array-in/array-out binding for the eitkit image transformation engine.
 *
 * Every call round-trips through the engine's command-line interface: the
 * input array is written to a temp directory as PNG, one job runs, and
 * the output PNG is decoded back. That keeps this package a thin client
 * of the engine's published interface, with byte-identical results to a
 * direct CLI invocation on the same inputs.
 *
 * Seed semantics match corpus jobs: `seed` is the engine's master seed,
 * combined with the image's key (default "img.png") to derive the
 * per-image stream. Pass the key of a corpus file to reproduce the exact
 * bytes a batch job produced for it.
 */

import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

import { decodePng, encodePng, ImageArray, validateImage } from "./png.js";
import { runEngineOrThrow } from "./runner.js";

export { ImageArray } from "./png.js";
export { engineBinary } from "./runner.js";

export type Kind =
  | "full-random-shuffle"
  | "grid-shuffle"
  | "within-grid-shuffle"
  | "local-structure-shuffle"
  | "color-flatten"
  | "segmentation-displacement-shuffle"
  | "segmentation-within-shuffle";

export interface TransformSpec {
  kind: Kind;
  /** shuffle probability in [0, 1] */
  p?: number;
  /** tile edge in pixels */
  grid_size?: number;
  /** superpixel count */
  n_segments?: number;
  /** enable/disable the tile/segment-level permutation */
  swap?: boolean;
}

export interface ApplyOptions {
  /** image key used for per-image seed derivation (default "img.png") */
  key?: string;
}

const KIND_PARAMS: Record<Kind, { required: string[]; optional: string[] }> = {
  "full-random-shuffle": { required: ["p"], optional: [] },
  "grid-shuffle": { required: ["grid_size"], optional: ["swap"] },
  "within-grid-shuffle": { required: ["p", "grid_size"], optional: [] },
  "local-structure-shuffle": { required: ["p", "grid_size"], optional: ["swap"] },
  "color-flatten": { required: [], optional: [] },
  "segmentation-displacement-shuffle": { required: ["n_segments"], optional: ["swap"] },
  "segmentation-within-shuffle": { required: ["p", "n_segments"], optional: [] },
};

/** The seven transform kind names, in canonical order. */
export function kinds(): Kind[] {
  return Object.keys(KIND_PARAMS) as Kind[];
}

function validateSpec(spec: TransformSpec): void {
  const params = KIND_PARAMS[spec.kind];
  if (!params) {
    throw new Error(`unknown field value kind=${String(spec.kind)}; valid kinds: ${kinds().join(", ")}`);
  }
  const fields = spec as unknown as Record<string, unknown>;
  const given = Object.keys(fields).filter((k) => k !== "kind" && fields[k] !== undefined);
  for (const name of given) {
    if (!["p", "grid_size", "n_segments", "swap"].includes(name)) {
      throw new Error(`unknown spec field '${name}'`);
    }
    if (!params.required.includes(name) && !params.optional.includes(name)) {
      throw new Error(`${spec.kind} does not take parameter '${name}'`);
    }
  }
  for (const name of params.required) {
    if (!given.includes(name)) {
      throw new Error(`${spec.kind} requires parameter '${name}'`);
    }
  }
  if (spec.p !== undefined && !(spec.p >= 0 && spec.p <= 1)) {
    throw new Error(`invalid field 'p': must be in [0, 1], got ${spec.p}`);
  }
  if (spec.grid_size !== undefined && (!Number.isInteger(spec.grid_size) || spec.grid_size < 1)) {
    throw new Error(`invalid field 'grid_size': must be an integer >= 1, got ${spec.grid_size}`);
  }
  if (
    spec.n_segments !== undefined &&
    (!Number.isInteger(spec.n_segments) || spec.n_segments < 1)
  ) {
    throw new Error(`invalid field 'n_segments': must be an integer >= 1, got ${spec.n_segments}`);
  }
}

function validateSeed(seed: number | bigint): string {
  const v = typeof seed === "bigint" ? seed : BigInt(seed);
  if (v < 0n || v >= 1n << 64n) {
    throw new Error(`invalid field 'seed': must fit in 64 unsigned bits, got ${seed}`);
  }
  return v.toString();
}

function validateKey(key: string): string {
  if (!key || path.posix.isAbsolute(key) || key.split("/").includes("..")) {
    throw new Error(`invalid field 'key': must be a relative path, got '${key}'`);
  }
  if (!key.toLowerCase().endsWith(".png")) {
    throw new Error(`invalid field 'key': must end with .png, got '${key}'`);
  }
  return key;
}

function withJob<T>(
  img: ImageArray,
  key: string,
  run: (inDir: string, outDir: string) => void,
  outChannels: 1 | 3
): ImageArray {
  const tmp = fs.mkdtempSync(path.join(os.tmpdir(), "eitkit-bind-"));
  try {
    const inDir = path.join(tmp, "in");
    const outDir = path.join(tmp, "out");
    const inPath = path.join(inDir, ...key.split("/"));
    fs.mkdirSync(path.dirname(inPath), { recursive: true });
    fs.writeFileSync(inPath, encodePng(img));
    run(inDir, outDir);
    const outPath = path.join(outDir, ...key.split("/"));
    return decodePng(fs.readFileSync(outPath), outChannels) as ImageArray;
  } finally {
    fs.rmSync(tmp, { recursive: true, force: true });
  }
}

/** Apply one transform; the input array is never mutated. */
export function apply(
  img: ImageArray,
  spec: TransformSpec,
  seed: number | bigint,
  opts: ApplyOptions = {}
): ImageArray {
  validateImage(img);
  validateSpec(spec);
  const seedText = validateSeed(seed);
  const key = validateKey(opts.key ?? "img.png");
  if (spec.kind === "color-flatten" && img.channels !== 3) {
    throw new Error("color-flatten requires a 3-channel image");
  }
  const outChannels = spec.kind === "color-flatten" ? 1 : img.channels;
  return withJob(
    img,
    key,
    (inDir, outDir) => {
      const args = ["transform", "--kind", spec.kind, "--seed", seedText,
                    "--in", inDir, "--out", outDir, "--workers", "1"];
      if (spec.p !== undefined) args.push("--p", String(spec.p));
      if (spec.grid_size !== undefined) args.push("--grid", String(spec.grid_size));
      if (spec.n_segments !== undefined) args.push("--segments", String(spec.n_segments));
      if (spec.swap !== undefined) args.push(spec.swap ? "--swap" : "--no-swap");
      runEngineOrThrow(args);
    },
    outChannels
  );
}

/** Severity-parameterized gaussian corruption (severity 1..5). */
export function gaussian(
  img: ImageArray,
  severity: number,
  seed: number | bigint,
  opts: ApplyOptions = {}
): ImageArray {
  validateImage(img);
  if (!Number.isInteger(severity) || severity < 1 || severity > 5) {
    throw new Error(`invalid field 'severity': must be an integer in 1..5, got ${severity}`);
  }
  const seedText = validateSeed(seed);
  const key = validateKey(opts.key ?? "img.png");
  return withJob(
    img,
    key,
    (inDir, outDir) => {
      runEngineOrThrow([
        "corrupt", "--noise", "gaussian", "--severity", String(severity),
        "--seed", seedText, "--in", inDir, "--out", outDir, "--workers", "1",
      ]);
    },
    img.channels
  );
}
