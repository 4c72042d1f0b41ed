/**
 * Sanity-floor predictors: majority class and uniform random.
 */

import type { Corpus } from "./corpus.js";
import { confusionMatrix, macroF1, meanStd, type ScoreSummary } from "./metrics.js";
import { SplitMix } from "./rng.js";

export interface BaselineReport {
  name: string;
  condition: string;
  macroF1: ScoreSummary;
  confusion: number[][];
}

/** Always predicts the training split's most frequent class. */
export function majorityBaseline(corpus: Corpus): BaselineReport {
  const k = corpus.labelNames.length;
  const trainCounts = new Array<number>(k).fill(0);
  for (const e of corpus.splits.train) trainCounts[e.label] += 1;
  const majority = trainCounts.indexOf(Math.max(...trainCounts));
  const yTrue = Int32Array.from(corpus.splits.test, (e) => e.label);
  const yPred = new Int32Array(yTrue.length).fill(majority);
  return {
    name: "majority-class",
    condition: corpus.manifest.config.condition,
    macroF1: { mean: macroF1(yTrue, yPred, k), std: 0 },
    confusion: confusionMatrix(yTrue, yPred, k),
  };
}

/** Uniform-random predictions; mean/std over seeded repeats. */
export function uniformRandomBaseline(
  corpus: Corpus,
  seed = 0,
  repeats = 25,
): BaselineReport {
  const k = corpus.labelNames.length;
  const yTrue = Int32Array.from(corpus.splits.test, (e) => e.label);
  const rng = new SplitMix(seed);
  const scores: number[] = [];
  let lastCm: number[][] = [];
  for (let r = 0; r < repeats; r++) {
    const yPred = Int32Array.from(yTrue, () => rng.nextBelow(k));
    scores.push(macroF1(yTrue, yPred, k));
    lastCm = confusionMatrix(yTrue, yPred, k);
  }
  return {
    name: "uniform-random",
    condition: corpus.manifest.config.condition,
    macroF1: meanStd(scores),
    confusion: lastCm,
  };
}
