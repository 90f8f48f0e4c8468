"""Frame decoding and luminance conversion.

Images are plain numpy arrays in top-down row-major order:

* RGB images are ``uint8`` arrays of shape ``(height, width, 3)``.
* Grey images are ``uint8`` arrays of shape ``(height, width)``.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .errors import DecodeError, MalformedHeader, TruncatedPixelData, UnsupportedBitDepth

_BMP_FILE_HEADER = struct.Struct("<2sIHHI")
_BMP_INFO_HEADER = struct.Struct("<IiiHHIIiiII")


def _check_rgb(img: np.ndarray) -> np.ndarray:
    img = np.asarray(img)
    if img.ndim != 3 or img.shape[2] != 3 or img.shape[0] < 1 or img.shape[1] < 1:
        raise ValueError(f"expected an (H, W, 3) image, got shape {img.shape}")
    if img.dtype != np.uint8:
        raise ValueError(f"expected uint8 pixels, got {img.dtype}")
    return img


def decode_bmp(data: bytes) -> np.ndarray:
    """Decode an uncompressed 24-bit Windows bitmap into an RGB array."""
    if len(data) < _BMP_FILE_HEADER.size + _BMP_INFO_HEADER.size:
        raise MalformedHeader("file too short for a bitmap header")
    magic, _size, _r1, _r2, offset = _BMP_FILE_HEADER.unpack_from(data, 0)
    if magic != b"BM":
        raise MalformedHeader(f"bad bitmap signature {magic!r}")
    (header_size, width, height, planes, bpp, compression,
     _image_size, _xppm, _yppm, _ncolors, _nimportant) = _BMP_INFO_HEADER.unpack_from(data, 14)
    if header_size < 40:
        raise MalformedHeader(f"unsupported DIB header size {header_size}")
    if width <= 0 or height == 0 or planes != 1:
        raise MalformedHeader(f"invalid geometry width={width} height={height} planes={planes}")
    if bpp != 24:
        raise UnsupportedBitDepth(f"{bpp}-bit bitmaps are not supported (24-bit only)")
    if compression != 0:
        raise UnsupportedBitDepth(f"compressed bitmaps are not supported (compression={compression})")
    if offset < 14 + header_size:
        raise MalformedHeader(f"pixel data offset {offset} overlaps the header")

    top_down = height < 0
    height = abs(height)
    stride = (width * 3 + 3) & ~3
    end = offset + stride * height
    if len(data) < end:
        raise TruncatedPixelData(f"need {end} bytes of pixel data, file has {len(data)}")

    rows = np.frombuffer(data, dtype=np.uint8, count=stride * height, offset=offset)
    rows = rows.reshape(height, stride)[:, : width * 3].reshape(height, width, 3)
    if not top_down:
        rows = rows[::-1]
    # stored as BGR
    return np.ascontiguousarray(rows[:, :, ::-1])


def encode_bmp(img: np.ndarray) -> bytes:
    """Encode an RGB array as a bottom-up 24-bit bitmap."""
    img = _check_rgb(img)
    height, width = img.shape[:2]
    stride = (width * 3 + 3) & ~3
    body = np.zeros((height, stride), dtype=np.uint8)
    body[:, : width * 3] = img[::-1, :, ::-1].reshape(height, width * 3)
    offset = _BMP_FILE_HEADER.size + _BMP_INFO_HEADER.size
    file_header = _BMP_FILE_HEADER.pack(b"BM", offset + body.size, 0, 0, offset)
    info_header = _BMP_INFO_HEADER.pack(40, width, height, 1, 24, 0, body.size, 2835, 2835, 0, 0)
    return file_header + info_header + body.tobytes()


def _parse_netpbm_header(data: bytes, magic: bytes) -> tuple[int, int, int]:
    """Return (width, height, data offset) of a binary netpbm file with maxval 255."""
    if data[:2] != magic:
        raise MalformedHeader(f"expected {magic.decode()} signature")
    fields = []
    pos = 2
    while len(fields) < 3:
        # header fields are separated by whitespace; '#' starts a comment up to end of line
        while pos < len(data) and (data[pos:pos + 1].isspace() or data[pos:pos + 1] == b"#"):
            if data[pos:pos + 1] == b"#":
                nl = data.find(b"\n", pos)
                pos = len(data) if nl < 0 else nl + 1
            else:
                pos += 1
        start = pos
        while pos < len(data) and data[pos:pos + 1].isdigit():
            pos += 1
        if start == pos:
            raise MalformedHeader("incomplete netpbm header")
        fields.append(int(data[start:pos]))
    if pos >= len(data) or not data[pos:pos + 1].isspace():
        raise MalformedHeader("missing whitespace after maxval")
    width, height, maxval = fields
    if width <= 0 or height <= 0:
        raise MalformedHeader(f"invalid size {width}x{height}")
    if maxval != 255:
        raise MalformedHeader(f"only maxval 255 is supported, got {maxval}")
    return width, height, pos + 1


def decode_pgm(data: bytes) -> np.ndarray:
    """Decode a binary greymap (P5) into a grey array."""
    width, height, offset = _parse_netpbm_header(data, b"P5")
    n = width * height
    if len(data) - offset < n:
        raise TruncatedPixelData(f"need {n} grey samples, file has {len(data) - offset}")
    return np.frombuffer(data, dtype=np.uint8, count=n, offset=offset).reshape(height, width).copy()


def encode_pgm(grey: np.ndarray) -> bytes:
    grey = np.asarray(grey)
    if grey.ndim != 2 or grey.dtype != np.uint8:
        raise ValueError("expected a 2-d uint8 grey image")
    height, width = grey.shape
    return b"P5\n%d %d\n255\n" % (width, height) + np.ascontiguousarray(grey).tobytes()


def decode_ppm(data: bytes) -> np.ndarray:
    """Decode a binary pixmap (P6) into an RGB array."""
    width, height, offset = _parse_netpbm_header(data, b"P6")
    n = width * height * 3
    if len(data) - offset < n:
        raise TruncatedPixelData(f"need {n} colour samples, file has {len(data) - offset}")
    return np.frombuffer(data, dtype=np.uint8, count=n, offset=offset).reshape(height, width, 3).copy()


def encode_ppm(img: np.ndarray) -> bytes:
    img = _check_rgb(img)
    height, width = img.shape[:2]
    return b"P6\n%d %d\n255\n" % (width, height) + np.ascontiguousarray(img).tobytes()


def to_grey(img: np.ndarray) -> np.ndarray:
    """Luminance Y = 0.3 R + 0.59 G + 0.11 B, rounded half-up.

    Integer arithmetic in hundredths keeps the half-up rounding exact
    (0.3 * 255 is 76.5, not 76.4999...).
    """
    img = _check_rgb(img).astype(np.uint32)
    y = (30 * img[..., 0] + 59 * img[..., 1] + 11 * img[..., 2] + 50) // 100
    return np.minimum(y, 255).astype(np.uint8)


def decode_image(data: bytes) -> np.ndarray:
    """Decode any supported format by signature; returns RGB or grey."""
    head = data[:2]
    if head == b"BM":
        return decode_bmp(data)
    if head == b"P5":
        return decode_pgm(data)
    if head == b"P6":
        return decode_ppm(data)
    raise MalformedHeader(f"unrecognised image signature {head!r}")


def load_grey(path: str | Path) -> np.ndarray:
    """Read an image file and return its luminance."""
    img = decode_image(Path(path).read_bytes())
    return img if img.ndim == 2 else to_grey(img)


def save_image(img: np.ndarray, path: str | Path) -> None:
    """Write RGB as .bmp or .ppm, grey as .pgm, chosen by suffix."""
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == ".bmp":
        payload = encode_bmp(img)
    elif suffix == ".ppm":
        payload = encode_ppm(img)
    elif suffix == ".pgm":
        payload = encode_pgm(img)
    else:
        raise DecodeError(f"cannot infer output format from suffix {suffix!r}")
    path.write_bytes(payload)
