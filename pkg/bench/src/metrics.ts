/**
 * Multi-class evaluation metrics: confusion matrix, per-class F1, macro F1.
 */

export interface ScoreSummary {
  mean: number;
  /** Sample standard deviation (n-1 denominator); 0 for a single value. */
  std: number;
}

/** counts[trueClass][predictedClass]. */
export function confusionMatrix(
  yTrue: ArrayLike<number>,
  yPred: ArrayLike<number>,
  numClasses: number,
): number[][] {
  if (yTrue.length !== yPred.length) {
    throw new Error(`length mismatch: ${yTrue.length} labels vs ${yPred.length} predictions`);
  }
  const counts = Array.from({ length: numClasses }, () => new Array<number>(numClasses).fill(0));
  for (let i = 0; i < yTrue.length; i++) {
    const t = yTrue[i];
    const p = yPred[i];
    if (t < 0 || t >= numClasses || p < 0 || p >= numClasses) {
      throw new Error(`class index out of range at ${i}: true=${t} pred=${p}`);
    }
    counts[t][p] += 1;
  }
  return counts;
}

/**
 * Per-class F1 from a confusion matrix: 2*tp / (2*tp + fp + fn).
 * A class with no true and no predicted examples scores 0 by convention.
 */
export function perClassF1(counts: number[][]): number[] {
  const k = counts.length;
  const scores = new Array<number>(k).fill(0);
  for (let c = 0; c < k; c++) {
    const tp = counts[c][c];
    let fp = 0;
    let fn = 0;
    for (let other = 0; other < k; other++) {
      if (other === c) continue;
      fp += counts[other][c];
      fn += counts[c][other];
    }
    const denom = 2 * tp + fp + fn;
    scores[c] = denom === 0 ? 0 : (2 * tp) / denom;
  }
  return scores;
}

/** Unweighted mean of per-class F1 over all classes. */
export function macroF1(
  yTrue: ArrayLike<number>,
  yPred: ArrayLike<number>,
  numClasses: number,
): number {
  const scores = perClassF1(confusionMatrix(yTrue, yPred, numClasses));
  return scores.reduce((a, b) => a + b, 0) / numClasses;
}

export function meanStd(values: number[]): ScoreSummary {
  if (values.length === 0) throw new Error("meanStd of empty list");
  const mean = values.reduce((a, b) => a + b, 0) / values.length;
  if (values.length === 1) return { mean, std: 0 };
  const ss = values.reduce((a, b) => a + (b - mean) ** 2, 0);
  return { mean, std: Math.sqrt(ss / (values.length - 1)) };
}
