import path from "node:path";

import { describe, expect, it } from "vitest";

import { loadCorpus } from "../src/corpus.js";
import { batchTensor } from "../src/evaluate.js";
import { createModel } from "../src/model.js";
import { deriveSeed } from "../src/rng.js";
import { EarlyStopper, PROTOCOL_DEFAULTS, train, type TrainConfig } from "../src/train.js";

const TINY = path.join(import.meta.dirname, "fixtures", "tiny", "periodic_ferro");

describe("PROTOCOL_DEFAULTS", () => {
  it("pins the reference fine-tuning recipe", () => {
    expect(PROTOCOL_DEFAULTS.epochs).toBe(10);
    expect(PROTOCOL_DEFAULTS.learningRate).toBe(2e-5);
    expect(PROTOCOL_DEFAULTS.weightDecay).toBe(5e-6);
    expect(PROTOCOL_DEFAULTS.trials).toBe(5);
  });
});

describe("EarlyStopper", () => {
  it("halts after patience exhausted on worsening losses", () => {
    const stopper = new EarlyStopper(0);
    expect(stopper.update(1.0)).toBe("continue");
    expect(stopper.update(1.1)).toBe("stop");
    expect(stopper.bestEpoch).toBe(1);
  });

  it("waits out a plateau no longer than the patience", () => {
    const stopper = new EarlyStopper(2);
    expect(stopper.update(1.0)).toBe("continue");
    expect(stopper.update(1.2)).toBe("continue");
    expect(stopper.update(1.2)).toBe("continue");
    expect(stopper.update(1.2)).toBe("stop");
  });

  it("never stops while improving", () => {
    const stopper = new EarlyStopper(0);
    for (const loss of [5, 4, 3, 2, 1]) {
      expect(stopper.update(loss)).toBe("continue");
    }
    expect(stopper.bestEpoch).toBe(5);
  });
});

function tinyTrainSetup(config: Partial<TrainConfig> = {}) {
  const corpus = loadCorpus(path.join(TINY, "manifest.json"));
  const meta = { rows: corpus.rows, cols: corpus.cols, numClasses: corpus.labelNames.length };
  const model = createModel("linear-probe", deriveSeed(1, "test-model"), meta);
  const trainX = batchTensor(corpus.splits.train, meta.rows, meta.cols);
  const valX = batchTensor(corpus.splits.validation, meta.rows, meta.cols);
  const data = {
    train: {
      x: model.embed(trainX),
      y: Int32Array.from(corpus.splits.train, (e) => e.label),
    },
    validation: {
      x: model.embed(valX),
      y: Int32Array.from(corpus.splits.validation, (e) => e.label),
    },
    numClasses: meta.numClasses,
  };
  model.calibrate(data.train.x);
  trainX.dispose();
  valX.dispose();
  const full: TrainConfig = { ...PROTOCOL_DEFAULTS, learningRate: 0.05, baseSeed: 7, ...config };
  return { model, data, config: full };
}

describe("train", () => {
  it("halts before the epoch budget on a rigged worsening validation loss", () => {
    const { model, data, config } = tinyTrainSetup({ earlyStoppingPatience: 0, epochs: 10 });
    const result = train(model, data, config, { valLoss: (epoch) => 1 + epoch });
    expect(result.stoppedEarly).toBe(true);
    expect(result.epochsRun).toBe(2); // epoch 1 best, epoch 2 worse, stop
    expect(result.bestEpoch).toBe(1);
    model.dispose();
  });

  it("respects patience before halting", () => {
    const { model, data, config } = tinyTrainSetup({ earlyStoppingPatience: 2, epochs: 10 });
    const result = train(model, data, config, { valLoss: (epoch) => 1 + epoch });
    expect(result.stoppedEarly).toBe(true);
    expect(result.epochsRun).toBe(4);
    model.dispose();
  });

  it("runs the full budget when validation keeps improving", () => {
    const { model, data, config } = tinyTrainSetup({ epochs: 4 });
    const result = train(model, data, config, { valLoss: (epoch) => 1 / epoch });
    expect(result.stoppedEarly).toBe(false);
    expect(result.epochsRun).toBe(4);
    model.dispose();
  });

  it("is deterministic given the seed", () => {
    const a = tinyTrainSetup({ epochs: 3 });
    const ra = train(a.model, a.data, a.config);
    const b = tinyTrainSetup({ epochs: 3 });
    const rb = train(b.model, b.data, b.config);
    expect(ra.curves).toEqual(rb.curves);
    a.model.dispose();
    b.model.dispose();
  });
});
