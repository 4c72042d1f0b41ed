/**
 * Multi-trial benchmark runs: train per seed, score macro F1 on the test
 * split, aggregate mean and standard deviation.
 */

import * as tf from "@tensorflow/tfjs";

import type { Corpus, Example } from "./corpus.js";
import { confusionMatrix, macroF1, meanStd, perClassF1, type ScoreSummary } from "./metrics.js";
import { createModel, type ClassifierModel, type ModelMeta } from "./model.js";
import { deriveSeed } from "./rng.js";
import { train, type TrainConfig, type TrainResult } from "./train.js";

export interface TrialResult {
  trial: number;
  seed: string;
  macroF1: number;
  perClassF1: number[];
  confusion: number[][];
  epochsRun: number;
  bestEpoch: number;
}

export interface EvalReport {
  model: string;
  condition: string;
  labelNames: string[];
  trials: TrialResult[];
  macroF1: ScoreSummary;
  config: TrainConfig;
}

/** Stack spin fields into a [N, rows, cols, 1] float tensor. */
export function batchTensor(examples: Example[], rows: number, cols: number): tf.Tensor4D {
  const n = examples.length;
  const data = new Float32Array(n * rows * cols);
  for (let i = 0; i < n; i++) {
    data.set(examples[i].spins, i * rows * cols);
  }
  return tf.tensor4d(data, [n, rows, cols, 1]);
}

export function predict(model: ClassifierModel, embedded: tf.Tensor, batchSize = 256): Int32Array {
  const n = embedded.shape[0] as number;
  const out = new Int32Array(n);
  for (let start = 0; start < n; start += batchSize) {
    const len = Math.min(batchSize, n - start);
    const preds = tf.tidy(() => {
      const slice = tf.slice(embedded, [start, ...embedded.shape.slice(1).map(() => 0)] as
        number[], [len, ...embedded.shape.slice(1)] as number[]);
      return tf.argMax(model.logits(slice), 1).dataSync();
    });
    out.set(preds as Int32Array, start);
  }
  return out;
}

export interface BenchmarkRun {
  report: EvalReport;
  curves: TrainResult[];
}

/**
 * The full protocol on one corpus: `config.trials` independent runs with
 * derived seeds, each trained with early stopping and scored on the test
 * split.
 */
export function runBenchmark(corpus: Corpus, config: TrainConfig): BenchmarkRun {
  const meta: ModelMeta = {
    rows: corpus.rows,
    cols: corpus.cols,
    numClasses: corpus.labelNames.length,
  };
  const splits = ["train", "validation", "test"] as const;
  for (const s of splits) {
    if (!corpus.splits[s] || corpus.splits[s].length === 0) {
      throw new Error(`corpus has an empty ${s} split`);
    }
  }
  const raw = Object.fromEntries(
    splits.map((s) => [s, batchTensor(corpus.splits[s], meta.rows, meta.cols)]),
  ) as Record<(typeof splits)[number], tf.Tensor4D>;
  const labels = Object.fromEntries(
    splits.map((s) => [s, Int32Array.from(corpus.splits[s], (e) => e.label)]),
  ) as Record<(typeof splits)[number], Int32Array>;

  const trials: TrialResult[] = [];
  const curves: TrainResult[] = [];
  for (let trial = 0; trial < config.trials; trial++) {
    const seed = deriveSeed(config.baseSeed, "trial", trial);
    const model = createModel(config.model, seed, meta);
    const embedded = Object.fromEntries(
      splits.map((s) => [s, model.embed(raw[s])]),
    ) as Record<(typeof splits)[number], tf.Tensor>;
    model.calibrate(embedded.train);
    const result = train(
      model,
      {
        train: { x: embedded.train, y: labels.train },
        validation: { x: embedded.validation, y: labels.validation },
        numClasses: meta.numClasses,
      },
      { ...config, baseSeed: Number(seed & 0xffffffffn) },
    );
    const preds = predict(model, embedded.test);
    const cm = confusionMatrix(labels.test, preds, meta.numClasses);
    trials.push({
      trial,
      seed: seed.toString(),
      macroF1: macroF1(labels.test, preds, meta.numClasses),
      perClassF1: perClassF1(cm),
      confusion: cm,
      epochsRun: result.epochsRun,
      bestEpoch: result.bestEpoch,
    });
    curves.push(result);
    for (const s of splits) {
      if (embedded[s] !== raw[s]) embedded[s].dispose();
    }
    model.dispose();
  }
  for (const s of splits) raw[s].dispose();

  return {
    report: {
      model: config.model,
      condition: corpus.manifest.config.condition,
      labelNames: corpus.labelNames,
      trials,
      macroF1: meanStd(trials.map((t) => t.macroF1)),
      config,
    },
    curves,
  };
}
