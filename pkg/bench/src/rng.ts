/**
 * Deterministic pseudo-randomness for shuffles, weight init, and baselines.
 *
 * SplitMix64 over BigInt: fixed-width integer arithmetic, so a seed gives
 * the same stream on every platform.
 */

const MASK64 = (1n << 64n) - 1n;
const GAMMA = 0x9e3779b97f4a7c15n;

function mix(z: bigint): bigint {
  z &= MASK64;
  z = ((z ^ (z >> 30n)) * 0xbf58476d1ce4e5b9n) & MASK64;
  z = ((z ^ (z >> 27n)) * 0x94d049bb133111ebn) & MASK64;
  return z ^ (z >> 31n);
}

function fnv1a64(text: string): bigint {
  let h = 0xcbf29ce484222325n;
  for (const byte of Buffer.from(text, "utf-8")) {
    h = ((h ^ BigInt(byte)) * 0x100000001b3n) & MASK64;
  }
  return h;
}

/** Collapse a base seed plus labels into one 64-bit seed. */
export function deriveSeed(base: number | bigint, ...parts: (string | number)[]): bigint {
  let h = BigInt(base) & MASK64;
  for (const part of parts) {
    const v = typeof part === "string" ? fnv1a64(part) : BigInt(part) & MASK64;
    h = mix((h + GAMMA) ^ v);
  }
  return mix(h + GAMMA);
}

export class SplitMix {
  private state: bigint;

  constructor(seed: number | bigint) {
    this.state = BigInt(seed) & MASK64;
  }

  nextUint64(): bigint {
    this.state = (this.state + GAMMA) & MASK64;
    return mix(this.state);
  }

  /** Uniform float in [0, 1) from the top 53 bits. */
  nextFloat(): number {
    return Number(this.nextUint64() >> 11n) / 2 ** 53;
  }

  /** Uniform integer in [0, bound). */
  nextBelow(bound: number): number {
    if (!Number.isInteger(bound) || bound <= 0) {
      throw new Error(`bound must be a positive integer, got ${bound}`);
    }
    return Math.floor(this.nextFloat() * bound);
  }

  /** Standard normal via Box-Muller. */
  nextGaussian(): number {
    const u = Math.max(this.nextFloat(), Number.MIN_VALUE);
    const v = this.nextFloat();
    return Math.sqrt(-2 * Math.log(u)) * Math.cos(2 * Math.PI * v);
  }

  /** Fisher-Yates shuffle of 0..n-1. */
  permutation(n: number): Int32Array {
    const order = new Int32Array(n);
    for (let i = 0; i < n; i++) order[i] = i;
    for (let i = n - 1; i > 0; i--) {
      const j = this.nextBelow(i + 1);
      const tmp = order[i];
      order[i] = order[j];
      order[j] = tmp;
    }
    return order;
  }
}
