/**
 * Desk-scale models for the corpus benchmark.
 *
 * "linear-probe": a frozen, seeded random-convolution backbone standing in
 * for a pretrained feature extractor, followed by a trainable softmax head.
 * The backbone consumes the raw +/-1 spin field at native resolution and
 * pools channel statistics plus global moments; only the head trains.
 *
 * "small-cnn": a tiny from-scratch CNN trained end to end, the desk stand-in
 * for the fine-tuned reference networks.
 *
 * Users with real pretrained checkpoints can fine-tune them with the same
 * training loop by wrapping the network in the ClassifierModel interface.
 */

import * as tf from "@tensorflow/tfjs";

import { deriveSeed, SplitMix } from "./rng.js";

export interface ModelMeta {
  rows: number;
  cols: number;
  numClasses: number;
}

export interface ClassifierModel {
  readonly kind: string;
  /** Frozen transform of a spin-field batch [N, rows, cols, 1]. */
  embed(x: tf.Tensor4D): tf.Tensor;
  /** Fit input statistics (e.g. feature standardization) on the train split. */
  calibrate(trainEmbedded: tf.Tensor): void;
  /** Trainable forward from embed() output to class logits [N, K]. */
  logits(embedded: tf.Tensor): tf.Tensor2D;
  readonly trainable: tf.Variable[];
  snapshot(): tf.Tensor[];
  restore(snapshot: tf.Tensor[]): void;
  dispose(): void;
}

function gaussianTensor(shape: number[], scale: number, rng: SplitMix): tf.Tensor {
  const size = shape.reduce((a, b) => a * b, 1);
  const values = new Float32Array(size);
  for (let i = 0; i < size; i++) values[i] = rng.nextGaussian() * scale;
  return tf.tensor(values, shape);
}

function snapshotVariables(variables: tf.Variable[]): tf.Tensor[] {
  return variables.map((v) => tf.keep(v.clone()));
}

function restoreVariables(variables: tf.Variable[], snapshot: tf.Tensor[]): void {
  variables.forEach((v, i) => v.assign(snapshot[i] as tf.Tensor<tf.Rank>));
}

/** Frozen random-conv backbone + standardized linear softmax head. */
class LinearProbe implements ClassifierModel {
  readonly kind = "linear-probe";
  readonly trainable: tf.Variable[];

  private readonly kernel1: tf.Tensor4D;
  private readonly kernel2: tf.Tensor4D;
  private readonly w: tf.Variable;
  private readonly bias: tf.Variable;
  private mu: tf.Tensor | null = null;
  private sigma: tf.Tensor | null = null;

  static readonly CHANNELS = 12;
  static readonly FEATURES = 2 * LinearProbe.CHANNELS + 4;

  constructor(seed: bigint, meta: ModelMeta) {
    const backboneRng = new SplitMix(deriveSeed(seed, "backbone"));
    const c = LinearProbe.CHANNELS;
    this.kernel1 = gaussianTensor([3, 3, 1, c], 1 / 3, backboneRng) as tf.Tensor4D;
    this.kernel2 = gaussianTensor([3, 3, c, c], 1 / Math.sqrt(9 * c), backboneRng) as tf.Tensor4D;
    const headRng = new SplitMix(deriveSeed(seed, "head"));
    this.w = tf.variable(gaussianTensor([LinearProbe.FEATURES, meta.numClasses], 0.01, headRng));
    this.bias = tf.variable(tf.zeros([meta.numClasses]));
    this.trainable = [this.w, this.bias];
  }

  embed(x: tf.Tensor4D): tf.Tensor {
    return tf.tidy(() => {
      const h1 = tf.tanh(tf.conv2d(x, this.kernel1, 1, "valid"));
      const p1 = tf.avgPool(h1, 2, 2, "valid");
      const h2 = tf.tanh(tf.conv2d(p1, this.kernel2, 1, "valid"));
      const chanMean = tf.mean(h2, [1, 2]);
      const chanAbs = tf.mean(tf.abs(h2), [1, 2]);
      // global moments of the raw field: m, |m|, horizontal/vertical
      // nearest-neighbor correlation
      const m = tf.mean(x, [1, 2, 3]);
      const absM = tf.abs(m);
      const rows = x.shape[1];
      const cols = x.shape[2];
      const right = tf.mul(
        tf.slice(x, [0, 0, 0, 0], [-1, rows, cols - 1, 1]),
        tf.slice(x, [0, 0, 1, 0], [-1, rows, cols - 1, 1]),
      );
      const down = tf.mul(
        tf.slice(x, [0, 0, 0, 0], [-1, rows - 1, cols, 1]),
        tf.slice(x, [0, 1, 0, 0], [-1, rows - 1, cols, 1]),
      );
      const hCorr = tf.mean(right, [1, 2, 3]);
      const vCorr = tf.mean(down, [1, 2, 3]);
      const moments = tf.stack([m, absM, hCorr, vCorr], 1);
      return tf.concat([chanMean, chanAbs, moments], 1);
    });
  }

  calibrate(trainEmbedded: tf.Tensor): void {
    this.mu?.dispose();
    this.sigma?.dispose();
    const { mean, variance } = tf.moments(trainEmbedded, 0);
    this.mu = tf.keep(mean);
    this.sigma = tf.keep(tf.sqrt(tf.add(variance, 1e-8)));
  }

  logits(embedded: tf.Tensor): tf.Tensor2D {
    return tf.tidy(() => {
      let f = embedded;
      if (this.mu !== null && this.sigma !== null) {
        f = tf.div(tf.sub(f, this.mu), this.sigma);
      }
      return tf.add(tf.matMul(f as tf.Tensor2D, this.w as tf.Tensor2D), this.bias) as tf.Tensor2D;
    });
  }

  snapshot(): tf.Tensor[] {
    return snapshotVariables(this.trainable);
  }

  restore(snapshot: tf.Tensor[]): void {
    restoreVariables(this.trainable, snapshot);
  }

  dispose(): void {
    this.kernel1.dispose();
    this.kernel2.dispose();
    this.mu?.dispose();
    this.sigma?.dispose();
    this.trainable.forEach((v) => v.dispose());
  }
}

/** Tiny trainable CNN; everything learns, nothing is frozen. */
class SmallCnn implements ClassifierModel {
  readonly kind = "small-cnn";
  readonly trainable: tf.Variable[];

  private readonly k1: tf.Variable;
  private readonly b1: tf.Variable;
  private readonly k2: tf.Variable;
  private readonly b2: tf.Variable;
  private readonly w: tf.Variable;
  private readonly bias: tf.Variable;

  constructor(seed: bigint, meta: ModelMeta) {
    const rng = new SplitMix(deriveSeed(seed, "small-cnn"));
    this.k1 = tf.variable(gaussianTensor([3, 3, 1, 8], 1 / 3, rng));
    this.b1 = tf.variable(tf.zeros([8]));
    this.k2 = tf.variable(gaussianTensor([3, 3, 8, 16], 1 / Math.sqrt(72), rng));
    this.b2 = tf.variable(tf.zeros([16]));
    this.w = tf.variable(gaussianTensor([16, meta.numClasses], 0.05, rng));
    this.bias = tf.variable(tf.zeros([meta.numClasses]));
    this.trainable = [this.k1, this.b1, this.k2, this.b2, this.w, this.bias];
  }

  embed(x: tf.Tensor4D): tf.Tensor {
    return x; // end-to-end trainable; no frozen stage
  }

  calibrate(): void {}

  logits(embedded: tf.Tensor): tf.Tensor2D {
    return tf.tidy(() => {
      const x = embedded as tf.Tensor4D;
      const h1 = tf.relu(tf.add(tf.conv2d(x, this.k1 as tf.Tensor4D, 1, "same"), this.b1));
      const p1 = tf.maxPool(h1 as tf.Tensor4D, 2, 2, "valid");
      const h2 = tf.relu(tf.add(tf.conv2d(p1, this.k2 as tf.Tensor4D, 1, "same"), this.b2));
      const pooled = tf.mean(h2, [1, 2]);
      return tf.add(tf.matMul(pooled as tf.Tensor2D, this.w as tf.Tensor2D), this.bias) as tf.Tensor2D;
    });
  }

  snapshot(): tf.Tensor[] {
    return snapshotVariables(this.trainable);
  }

  restore(snapshot: tf.Tensor[]): void {
    restoreVariables(this.trainable, snapshot);
  }

  dispose(): void {
    this.trainable.forEach((v) => v.dispose());
  }
}

export type ModelKind = "linear-probe" | "small-cnn";

export function createModel(kind: ModelKind, seed: bigint, meta: ModelMeta): ClassifierModel {
  switch (kind) {
    case "linear-probe":
      return new LinearProbe(seed, meta);
    case "small-cnn":
      return new SmallCnn(seed, meta);
    default:
      throw new Error(`unknown model kind: ${kind as string}`);
  }
}
