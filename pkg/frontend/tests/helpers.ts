import * as fs from "node:fs";
import * as path from "node:path";
import { spawnSync } from "node:child_process";

import { encodePng, ImageArray } from "../src/png.js";
import { engineBinary } from "../src/runner.js";

/** mulberry32: small deterministic PRNG for synthesizing fixtures */
export function mulberry32(a: number): () => number {
  return function () {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function randomImage(rnd: () => number, w: number, h: number, channels: 1 | 3): ImageArray {
  const data = new Uint8Array(w * h * channels);
  for (let i = 0; i < data.length; i++) data[i] = Math.floor(rnd() * 256);
  return { width: w, height: h, channels, data };
}

export function writeImage(root: string, key: string, img: ImageArray): void {
  const p = path.join(root, ...key.split("/"));
  fs.mkdirSync(path.dirname(p), { recursive: true });
  fs.writeFileSync(p, encodePng(img));
}

export function runCli(args: string[]): void {
  const r = spawnSync(engineBinary(), args, { encoding: "utf-8" });
  if (r.status !== 0) {
    throw new Error(`engine failed (${r.status}): ${r.stderr || r.stdout}`);
  }
}

export function sameBytes(a: ImageArray, b: ImageArray): boolean {
  return (
    a.width === b.width &&
    a.height === b.height &&
    a.channels === b.channels &&
    Buffer.from(a.data).equals(Buffer.from(b.data))
  );
}
