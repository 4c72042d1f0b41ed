/**
 * Decoder for the corpus PNG flavor: 8-bit truecolor, non-interlaced,
 * filter type 0 on every scanline, zlib-compressed IDAT. That is exactly
 * what the generator emits; anything else is rejected loudly rather than
 * half-supported.
 */

import { inflateSync } from "node:zlib";

const PNG_MAGIC = Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);

export interface RgbImage {
  width: number;
  height: number;
  /** Row-major RGB triples, length width * height * 3. */
  pixels: Uint8Array;
}

export function decodePng(data: Uint8Array, context = "png"): RgbImage {
  const buf = Buffer.isBuffer(data) ? data : Buffer.from(data);
  if (!buf.subarray(0, 8).equals(PNG_MAGIC)) {
    throw new Error(`${context}: not a PNG file`);
  }
  let pos = 8;
  let width = -1;
  let height = -1;
  const idat: Buffer[] = [];
  while (pos + 12 <= buf.length) {
    const length = buf.readUInt32BE(pos);
    const tag = buf.subarray(pos + 4, pos + 8).toString("latin1");
    const payload = buf.subarray(pos + 8, pos + 8 + length);
    if (tag === "IHDR") {
      width = payload.readUInt32BE(0);
      height = payload.readUInt32BE(4);
      const [depth, color, compression, filter, interlace] = [
        payload[8], payload[9], payload[10], payload[11], payload[12],
      ];
      if (depth !== 8 || color !== 2 || compression !== 0 || filter !== 0 || interlace !== 0) {
        throw new Error(`${context}: unsupported PNG variant (need 8-bit RGB, non-interlaced)`);
      }
    } else if (tag === "IDAT") {
      idat.push(Buffer.from(payload));
    } else if (tag === "IEND") {
      break;
    }
    pos += 12 + length;
  }
  if (width < 0 || idat.length === 0) {
    throw new Error(`${context}: truncated PNG`);
  }
  const raw = inflateSync(Buffer.concat(idat));
  const stride = 1 + width * 3;
  if (raw.length !== height * stride) {
    throw new Error(`${context}: payload size mismatch`);
  }
  const pixels = new Uint8Array(width * height * 3);
  for (let row = 0; row < height; row++) {
    if (raw[row * stride] !== 0) {
      throw new Error(`${context}: unsupported scanline filter ${raw[row * stride]}`);
    }
    pixels.set(raw.subarray(row * stride + 1, (row + 1) * stride), row * width * 3);
  }
  return { width, height, pixels };
}
