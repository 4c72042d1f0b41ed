/**
 * Corpus manifest loading and validation.
 *
 * The manifest is the contract with the generator: bin names, bin edges,
 * split quotas, and per-image seeds all come from it. Nothing here
 * hard-codes bin semantics; labels and their order are read from
 * `config.bins` and temperatures are re-binned from `config.bin_edges`.
 */

import { existsSync, readFileSync } from "node:fs";
import path from "node:path";

export interface ManifestRecord {
  filePath: string;
  boundaryCondition: string;
  temperature: number;
  bin: string;
  split: string;
  seed: number;
}

export interface ManifestConfig {
  condition: string;
  rows: number;
  cols: number;
  boundary: string;
  coupling: number;
  field: number;
  baseSeed: number;
  temperatureStep: number;
  imagesPerCondition: number;
  bins: string[];
  binEdges: number[];
  splits: string[];
  /** splitCounts[bin][split] = expected record count */
  splitCounts: Record<string, Record<string, number>>;
}

export interface Manifest {
  generator: { name: string; version: string };
  config: ManifestConfig;
  records: ManifestRecord[];
  /** Directory containing the manifest; record paths are relative to it. */
  dir: string;
}

function expect(condition: boolean, message: string): asserts condition {
  if (!condition) throw new Error(message);
}

function asNumber(value: unknown, what: string): number {
  expect(typeof value === "number" && Number.isFinite(value), `${what} must be a number`);
  return value;
}

function asString(value: unknown, what: string): string {
  expect(typeof value === "string" && value.length > 0, `${what} must be a non-empty string`);
  return value;
}

export function loadManifest(manifestPath: string): Manifest {
  const raw = JSON.parse(readFileSync(manifestPath, "utf-8")) as Record<string, unknown>;
  const cfg = raw.config as Record<string, unknown>;
  expect(typeof cfg === "object" && cfg !== null, "manifest is missing its config block");
  const generator = raw.generator as { name: string; version: string };

  const config: ManifestConfig = {
    condition: asString(cfg.condition, "config.condition"),
    rows: asNumber(cfg.rows, "config.rows"),
    cols: asNumber(cfg.cols, "config.cols"),
    boundary: asString(cfg.boundary, "config.boundary"),
    coupling: asNumber(cfg.coupling, "config.coupling"),
    field: asNumber(cfg.field, "config.field"),
    baseSeed: asNumber(cfg.base_seed, "config.base_seed"),
    temperatureStep: asNumber(cfg.temperature_step, "config.temperature_step"),
    imagesPerCondition: asNumber(cfg.images_per_condition, "config.images_per_condition"),
    bins: (cfg.bins as string[]) ?? [],
    binEdges: (cfg.bin_edges as number[]) ?? [],
    splits: (cfg.splits as string[]) ?? [],
    splitCounts: (cfg.split_counts as Record<string, Record<string, number>>) ?? {},
  };
  expect(config.bins.length >= 2, "config.bins must list the class labels");
  expect(
    config.binEdges.length === config.bins.length + 1,
    "config.bin_edges must bracket config.bins",
  );

  const records: ManifestRecord[] = (raw.records as Record<string, unknown>[]).map((r, i) => ({
    filePath: asString(r.file_path, `records[${i}].file_path`),
    boundaryCondition: asString(r.boundary_condition, `records[${i}].boundary_condition`),
    temperature: asNumber(r.temperature, `records[${i}].temperature`),
    bin: asString(r.bin, `records[${i}].bin`),
    split: asString(r.split, `records[${i}].split`),
    seed: asNumber(r.seed, `records[${i}].seed`),
  }));

  return { generator, config, records, dir: path.dirname(path.resolve(manifestPath)) };
}

/** Bin a temperature using the manifest's own edges ([lo, hi), last closed). */
export function binForTemperature(config: ManifestConfig, temperature: number): string {
  const { bins, binEdges } = config;
  const last = binEdges[binEdges.length - 1];
  for (let i = 0; i < bins.length; i++) {
    if (binEdges[i] <= temperature && temperature < binEdges[i + 1]) return bins[i];
  }
  if (temperature === last) return bins[bins.length - 1];
  throw new Error(`temperature ${temperature} outside manifest bin edges`);
}

/**
 * Structural validation: every file present, every label consistent with its
 * temperature, every (bin, split) count equal to the configured quota.
 * Throws naming the first offending record or count.
 */
export function verifyManifest(manifest: Manifest): void {
  const { config, records, dir } = manifest;
  expect(
    records.length === config.imagesPerCondition,
    `manifest lists ${records.length} records, config says ${config.imagesPerCondition}`,
  );
  const counts = new Map<string, number>();
  for (const record of records) {
    const file = path.join(dir, record.filePath);
    if (!existsSync(file)) {
      throw new Error(`corrupted corpus: missing image ${record.filePath}`);
    }
    const expected = binForTemperature(config, record.temperature);
    if (expected !== record.bin) {
      throw new Error(
        `corrupted record ${record.filePath}: temperature ${record.temperature} ` +
          `lies in ${expected}, labeled ${record.bin}`,
      );
    }
    if (!config.bins.includes(record.bin)) {
      throw new Error(`corrupted record ${record.filePath}: unknown bin ${record.bin}`);
    }
    const key = `${record.bin}/${record.split}`;
    counts.set(key, (counts.get(key) ?? 0) + 1);
  }
  for (const bin of config.bins) {
    for (const split of config.splits) {
      const want = config.splitCounts[bin]?.[split] ?? 0;
      const got = counts.get(`${bin}/${split}`) ?? 0;
      if (want !== got) {
        throw new Error(`count mismatch for (${bin}, ${split}): ${got} records, expected ${want}`);
      }
    }
  }
}
