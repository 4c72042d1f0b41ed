/**
 * Corpus loading: manifest records to labeled spin fields.
 *
 * Images are decoded at native resolution and mapped back to +/-1 spin
 * values through the generator's pinned colors (blue = up, yellow = down).
 * Model-specific resizing/normalization is the model's job, not the
 * loader's.
 */

import { readFileSync } from "node:fs";
import path from "node:path";

import { loadManifest, verifyManifest, type Manifest, type ManifestRecord } from "./manifest.js";
import { decodePng } from "./png.js";
import { SplitMix } from "./rng.js";

const SPIN_UP_RGB: readonly [number, number, number] = [31, 119, 180];
const SPIN_DOWN_RGB: readonly [number, number, number] = [255, 221, 51];

export interface Example {
  /** Row-major spin field, values exactly +1 / -1. */
  spins: Float32Array;
  rows: number;
  cols: number;
  /** Index into Corpus.labelNames (manifest bin order). */
  label: number;
  record: ManifestRecord;
}

export interface Corpus {
  manifest: Manifest;
  /** Class names in manifest order; label indices refer to this. */
  labelNames: string[];
  splits: Record<string, Example[]>;
  rows: number;
  cols: number;
}

/** Map decoded pixels to spins; any foreign color is a corruption. */
export function spinFieldFromPixels(
  pixels: Uint8Array,
  context: string,
): Float32Array {
  const n = pixels.length / 3;
  const spins = new Float32Array(n);
  for (let i = 0; i < n; i++) {
    const r = pixels[3 * i];
    const g = pixels[3 * i + 1];
    const b = pixels[3 * i + 2];
    if (r === SPIN_UP_RGB[0] && g === SPIN_UP_RGB[1] && b === SPIN_UP_RGB[2]) {
      spins[i] = 1;
    } else if (r === SPIN_DOWN_RGB[0] && g === SPIN_DOWN_RGB[1] && b === SPIN_DOWN_RGB[2]) {
      spins[i] = -1;
    } else {
      throw new Error(`${context}: pixel ${i} has color (${r},${g},${b}), not a pinned spin color`);
    }
  }
  return spins;
}

/**
 * Load a corpus through its manifest. Refuses manifests that fail the
 * count/label/file checks. Example order within each split follows the
 * manifest record order, so repeated loads are identical.
 */
export function loadCorpus(manifestPath: string): Corpus {
  const manifest = loadManifest(manifestPath);
  verifyManifest(manifest);
  const { config } = manifest;
  const splits: Record<string, Example[]> = {};
  for (const split of config.splits) splits[split] = [];
  for (const record of manifest.records) {
    const file = path.join(manifest.dir, record.filePath);
    const image = decodePng(readFileSync(file), record.filePath);
    if (image.width !== config.cols || image.height !== config.rows) {
      throw new Error(
        `corrupted record ${record.filePath}: image is ${image.width}x${image.height}, ` +
          `expected ${config.cols}x${config.rows}`,
      );
    }
    splits[record.split].push({
      spins: spinFieldFromPixels(image.pixels, record.filePath),
      rows: image.height,
      cols: image.width,
      label: config.bins.indexOf(record.bin),
      record,
    });
  }
  return {
    manifest,
    labelNames: [...config.bins],
    splits,
    rows: config.rows,
    cols: config.cols,
  };
}

/** Deterministic fraction of a split (seeded, label distribution preserved roughly). */
export function subsample(examples: Example[], fraction: number, seed: number): Example[] {
  const keep = Math.max(1, Math.round(examples.length * fraction));
  const order = new SplitMix(seed).permutation(examples.length);
  const picked = Array.from(order.slice(0, keep), (i) => examples[i]);
  picked.sort((a, b) => a.record.filePath.localeCompare(b.record.filePath));
  return picked;
}

export function labelVector(examples: Example[]): Int32Array {
  return Int32Array.from(examples, (e) => e.label);
}
