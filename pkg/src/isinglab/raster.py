"""Lossless microstate rendering: one pixel per site, pinned colors.

Spin +1 renders as blue, spin -1 as yellow. Files are minimal 8-bit
truecolor PNGs written by the encoder below (single IDAT, filter 0 on every
scanline, zlib level 9), which keeps the bytes reproducible and trivially
parseable by downstream consumers. The decoder accepts exactly what the
encoder emits and maps the two pinned colors back to spins, so
render -> decode is the identity on lattices.
"""

from __future__ import annotations

import struct
import zlib

import numpy as np

from .lattice import Lattice

SPIN_UP_RGB = (31, 119, 180)    # blue
SPIN_DOWN_RGB = (255, 221, 51)  # yellow

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def _chunk(tag: bytes, payload: bytes) -> bytes:
    return (
        struct.pack(">I", len(payload))
        + tag
        + payload
        + struct.pack(">I", zlib.crc32(tag + payload))
    )


def png_encode(pixels: np.ndarray) -> bytes:
    """Encode an (h, w, 3) uint8 array as a non-interlaced RGB8 PNG."""
    if pixels.ndim != 3 or pixels.shape[2] != 3 or pixels.dtype != np.uint8:
        raise ValueError("expected (h, w, 3) uint8 pixels")
    h, w = pixels.shape[:2]
    ihdr = struct.pack(">IIBBBBB", w, h, 8, 2, 0, 0, 0)
    raw = np.empty((h, 1 + w * 3), dtype=np.uint8)
    raw[:, 0] = 0  # filter type 0 (None) on every scanline
    raw[:, 1:] = pixels.reshape(h, w * 3)
    idat = zlib.compress(raw.tobytes(), 9)
    return (
        _PNG_MAGIC
        + _chunk(b"IHDR", ihdr)
        + _chunk(b"IDAT", idat)
        + _chunk(b"IEND", b"")
    )


def png_decode(data: bytes) -> np.ndarray:
    """Decode a PNG produced by png_encode back to (h, w, 3) uint8 pixels."""
    if data[:8] != _PNG_MAGIC:
        raise ValueError("not a PNG file")
    pos = 8
    width = height = None
    idat = b""
    while pos < len(data):
        (length,) = struct.unpack(">I", data[pos : pos + 4])
        tag = data[pos + 4 : pos + 8]
        payload = data[pos + 8 : pos + 8 + length]
        crc = struct.unpack(">I", data[pos + 8 + length : pos + 12 + length])[0]
        if crc != zlib.crc32(tag + payload):
            raise ValueError(f"bad CRC in {tag!r} chunk")
        if tag == b"IHDR":
            width, height, depth, color, comp, filt, interlace = struct.unpack(
                ">IIBBBBB", payload
            )
            if (depth, color, comp, filt, interlace) != (8, 2, 0, 0, 0):
                raise ValueError("only 8-bit non-interlaced RGB PNGs are supported")
        elif tag == b"IDAT":
            idat += payload
        elif tag == b"IEND":
            break
        pos += 12 + length
    if width is None or not idat:
        raise ValueError("truncated PNG")
    raw = np.frombuffer(zlib.decompress(idat), dtype=np.uint8)
    stride = 1 + width * 3
    if raw.size != height * stride:
        raise ValueError("PNG payload size mismatch")
    raw = raw.reshape(height, stride)
    if np.any(raw[:, 0] != 0):
        raise ValueError("unsupported scanline filter (only type 0)")
    return raw[:, 1:].reshape(height, width, 3).copy()


def render_image(lattice: Lattice) -> bytes:
    """Render a lattice to PNG bytes, one pixel per site."""
    pixels = np.empty((lattice.rows, lattice.cols, 3), dtype=np.uint8)
    up = lattice.spins > 0
    pixels[up] = SPIN_UP_RGB
    pixels[~up] = SPIN_DOWN_RGB
    return png_encode(pixels)


def decode_image(data: bytes) -> Lattice:
    """Reconstruct the lattice from a rendered image; rejects foreign colors."""
    pixels = png_decode(data)
    up = np.all(pixels == SPIN_UP_RGB, axis=2)
    down = np.all(pixels == SPIN_DOWN_RGB, axis=2)
    if not np.all(up | down):
        raise ValueError("image contains pixels that are not the pinned spin colors")
    spins = np.where(up, 1, -1).astype(np.int8)
    return Lattice(pixels.shape[0], pixels.shape[1], spins)
