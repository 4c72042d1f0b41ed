/**
 * Fine-tuning loop: cross-entropy, AdamW-style decoupled weight decay,
 * early stopping on validation loss with best-checkpoint restore.
 *
 * PROTOCOL_DEFAULTS carries the reference recipe (10 epochs, learning rate
 * 2e-5, weight decay 5e-6, early stopping on validation loss); desk-scale
 * runs override the learning rate since a freshly initialized head needs
 * more than a fine-tuning step size.
 */

import * as tf from "@tensorflow/tfjs";

import type { ClassifierModel, ModelKind } from "./model.js";
import { deriveSeed, SplitMix } from "./rng.js";

export interface TrainConfig {
  model: ModelKind;
  epochs: number;
  learningRate: number;
  weightDecay: number;
  batchSize: number;
  earlyStoppingPatience: number;
  trials: number;
  baseSeed: number;
}

export const PROTOCOL_DEFAULTS: Readonly<TrainConfig> = Object.freeze({
  model: "linear-probe",
  epochs: 10,
  learningRate: 2e-5,
  weightDecay: 5e-6,
  batchSize: 32,
  earlyStoppingPatience: 2,
  trials: 5,
  baseSeed: 2021,
});

export interface EpochStat {
  epoch: number;
  trainLoss: number;
  valLoss: number;
}

export interface TrainResult {
  curves: EpochStat[];
  epochsRun: number;
  bestEpoch: number;
  stoppedEarly: boolean;
}

/** Stops after `patience` consecutive epochs without a new best loss. */
export class EarlyStopper {
  readonly patience: number;
  bestLoss = Number.POSITIVE_INFINITY;
  bestEpoch = 0;
  private epoch = 0;

  constructor(patience: number) {
    if (patience < 0) throw new Error("patience must be >= 0");
    this.patience = patience;
  }

  update(valLoss: number): "continue" | "stop" {
    this.epoch += 1;
    if (valLoss < this.bestLoss) {
      this.bestLoss = valLoss;
      this.bestEpoch = this.epoch;
      return "continue";
    }
    return this.epoch - this.bestEpoch > this.patience ? "stop" : "continue";
  }
}

export interface SplitTensors {
  /** embed() output for the split (kept for the whole run). */
  x: tf.Tensor;
  y: Int32Array;
}

export interface TrainData {
  train: SplitTensors;
  validation: SplitTensors;
  numClasses: number;
}

export interface TrainHooks {
  /** Testing seam: replaces the measured validation loss for an epoch. */
  valLoss?: (epoch: number) => number;
}

function gatherRows(x: tf.Tensor, indices: number[]): tf.Tensor {
  return tf.gather(x, tf.tensor1d(indices, "int32"));
}

export function datasetLoss(model: ClassifierModel, split: SplitTensors, numClasses: number): number {
  return tf.tidy(() => {
    const logits = model.logits(split.x);
    const oneHot = tf.oneHot(tf.tensor1d(split.y, "int32"), numClasses);
    return tf.losses.softmaxCrossEntropy(oneHot, logits).dataSync()[0];
  });
}

/**
 * Train the model's head (probe) or all variables (cnn) on pre-embedded
 * inputs. Restores the best-validation-loss checkpoint before returning.
 */
export function train(
  model: ClassifierModel,
  data: TrainData,
  config: TrainConfig,
  hooks: TrainHooks = {},
): TrainResult {
  const n = data.train.y.length;
  if (n === 0) throw new Error("empty training split");
  const optimizer = tf.train.adam(config.learningRate);
  const stopper = new EarlyStopper(config.earlyStoppingPatience);
  const decay = 1 - config.learningRate * config.weightDecay;
  const curves: EpochStat[] = [];
  let best: tf.Tensor[] = model.snapshot();
  let stoppedEarly = false;

  for (let epoch = 1; epoch <= config.epochs; epoch++) {
    const order = new SplitMix(deriveSeed(config.baseSeed, "epoch-order", epoch)).permutation(n);
    let lossSum = 0;
    let batches = 0;
    for (let start = 0; start < n; start += config.batchSize) {
      const idx = Array.from(order.slice(start, start + config.batchSize));
      const labels = idx.map((i) => data.train.y[i]);
      const batchLoss = tf.tidy(() => {
        const xb = gatherRows(data.train.x, idx);
        const yb = tf.oneHot(tf.tensor1d(labels, "int32"), data.numClasses);
        const cost = optimizer.minimize(
          () => tf.losses.softmaxCrossEntropy(yb, model.logits(xb)) as tf.Scalar,
          true,
          model.trainable,
        );
        return cost ? cost.dataSync()[0] : 0;
      });
      // decoupled weight decay: w <- w * (1 - lr * wd) after each step
      if (config.weightDecay !== 0) {
        for (const v of model.trainable) {
          tf.tidy(() => v.assign(v.mul(decay)));
        }
      }
      lossSum += batchLoss;
      batches += 1;
    }
    const trainLoss = lossSum / batches;
    const valLoss =
      hooks.valLoss?.(epoch) ?? datasetLoss(model, data.validation, data.numClasses);
    curves.push({ epoch, trainLoss, valLoss });

    const verdict = stopper.update(valLoss);
    if (stopper.bestEpoch === epoch) {
      best.forEach((t) => t.dispose());
      best = model.snapshot();
    }
    if (verdict === "stop") {
      stoppedEarly = true;
      break;
    }
  }

  model.restore(best);
  best.forEach((t) => t.dispose());
  optimizer.dispose();
  return {
    curves,
    epochsRun: curves.length,
    bestEpoch: stopper.bestEpoch,
    stoppedEarly,
  };
}
