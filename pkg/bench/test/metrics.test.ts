import { describe, expect, it } from "vitest";

import { confusionMatrix, macroF1, meanStd, perClassF1 } from "../src/metrics.js";
import { SplitMix } from "../src/rng.js";

/**
 * Independent oracle: per-class precision/recall by direct set counting,
 * sharing no code with the confusion-matrix implementation.
 */
function referenceMacroF1(yTrue: number[], yPred: number[], k: number): number {
  let total = 0;
  for (let c = 0; c < k; c++) {
    let tp = 0;
    let predicted = 0;
    let actual = 0;
    for (let i = 0; i < yTrue.length; i++) {
      if (yPred[i] === c) predicted += 1;
      if (yTrue[i] === c) actual += 1;
      if (yTrue[i] === c && yPred[i] === c) tp += 1;
    }
    const precision = predicted === 0 ? 0 : tp / predicted;
    const recall = actual === 0 ? 0 : tp / actual;
    total += precision + recall === 0 ? 0 : (2 * precision * recall) / (precision + recall);
  }
  return total / k;
}

describe("macroF1", () => {
  it("matches the confusion-matrix oracle to 1e-9 on random inputs", () => {
    const rng = new SplitMix(99);
    for (let round = 0; round < 300; round++) {
      const k = 2 + rng.nextBelow(5);
      const n = 1 + rng.nextBelow(200);
      const yTrue = Array.from({ length: n }, () => rng.nextBelow(k));
      const yPred = Array.from({ length: n }, () => rng.nextBelow(k));
      expect(Math.abs(macroF1(yTrue, yPred, k) - referenceMacroF1(yTrue, yPred, k))).toBeLessThan(1e-9);
    }
  });

  it("is 1 for a perfect predictor", () => {
    const y = [0, 1, 2, 3, 0, 1, 2, 3];
    expect(macroF1(y, y, 4)).toBe(1);
  });

  it("reproduces the majority-class closed form on the reference split", () => {
    // test split sizes 150/50/70/130, always predict class 0:
    // F1_0 = 2*150/(400+150), other classes 0.
    const yTrue = [
      ...Array(150).fill(0), ...Array(50).fill(1), ...Array(70).fill(2), ...Array(130).fill(3),
    ];
    const yPred = Array(400).fill(0);
    const expected = (2 * 150) / (400 + 150) / 4;
    expect(macroF1(yTrue, yPred, 4)).toBeCloseTo(expected, 10);
    expect(expected).toBeCloseTo(0.13636, 4);
  });

  it("assigns 0 to classes absent from both truth and prediction", () => {
    expect(perClassF1(confusionMatrix([0, 0], [0, 0], 3))).toEqual([1, 0, 0]);
  });
});

describe("confusionMatrix", () => {
  it("counts true rows and predicted columns", () => {
    const cm = confusionMatrix([0, 0, 1, 2], [0, 1, 1, 0], 3);
    expect(cm).toEqual([
      [1, 1, 0],
      [0, 1, 0],
      [1, 0, 0],
    ]);
  });

  it("rejects mismatched lengths and out-of-range classes", () => {
    expect(() => confusionMatrix([0], [0, 1], 2)).toThrow(/length mismatch/);
    expect(() => confusionMatrix([0, 5], [0, 1], 2)).toThrow(/out of range/);
  });
});

describe("meanStd", () => {
  it("uses the sample standard deviation", () => {
    const { mean, std } = meanStd([1, 2, 3, 4]);
    expect(mean).toBeCloseTo(2.5, 12);
    expect(std).toBeCloseTo(Math.sqrt(5 / 3), 12);
  });

  it("handles single values", () => {
    expect(meanStd([0.9])).toEqual({ mean: 0.9, std: 0 });
  });
});
