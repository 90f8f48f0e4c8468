import struct

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from numsign import raster
from numsign.errors import MalformedHeader, TruncatedPixelData, UnsupportedBitDepth


def bmp_bytes(width, height, rows, bpp=24, compression=0):
    """Hand-assemble a bitmap; ``rows`` are stored rows, BGR triples, in file order."""
    stride = (width * 3 + 3) & ~3
    body = b""
    for row in rows:
        raw = b"".join(bytes(px) for px in row)
        body += raw + b"\0" * (stride - len(raw))
    header = struct.pack("<2sIHHI", b"BM", 54 + len(body), 0, 0, 54)
    info = struct.pack("<IiiHHIIiiII", 40, width, height, 1, bpp, compression, len(body), 0, 0, 0, 0)
    return header + info + body


def test_bmp_all_black():
    img = raster.decode_bmp(bmp_bytes(2, 2, [[(0, 0, 0)] * 2] * 2))
    assert img.shape == (2, 2, 3)
    assert not img.any()


def test_bmp_bottom_up_rows_are_flipped():
    # stored first = bottom row; BGR order on disk
    data = bmp_bytes(1, 2, [[(0, 0, 255)], [(255, 0, 0)]])
    img = raster.decode_bmp(data)
    assert img[0, 0].tolist() == [0, 0, 255]
    assert img[1, 0].tolist() == [255, 0, 0]


def test_bmp_top_down_negative_height():
    data = bmp_bytes(1, -2, [[(0, 0, 255)], [(255, 0, 0)]])
    img = raster.decode_bmp(data)
    assert img[0, 0].tolist() == [255, 0, 0]
    assert img[1, 0].tolist() == [0, 0, 255]


def test_bmp_row_padding_is_stripped():
    # width 1 -> 3 bytes per row + 1 pad byte
    rows = [[(1, 2, 3)], [(4, 5, 6)], [(7, 8, 9)]]
    img = raster.decode_bmp(bmp_bytes(1, 3, rows))
    assert img[:, 0].tolist() == [[9, 8, 7], [6, 5, 4], [3, 2, 1]]


def test_bmp_rejects_8_bit():
    with pytest.raises(UnsupportedBitDepth):
        raster.decode_bmp(bmp_bytes(2, 2, [], bpp=8) + b"\0" * 64)


def test_bmp_rejects_compression():
    with pytest.raises(UnsupportedBitDepth):
        raster.decode_bmp(bmp_bytes(1, 1, [[(0, 0, 0)]], compression=1))


@pytest.mark.parametrize("data", [b"", b"BM", b"XX" + b"\0" * 60])
def test_bmp_malformed_header(data):
    with pytest.raises(MalformedHeader):
        raster.decode_bmp(data)


def test_bmp_truncated():
    data = bmp_bytes(4, 4, [[(9, 9, 9)] * 4] * 4)
    with pytest.raises(TruncatedPixelData):
        raster.decode_bmp(data[:-5])


@given(arrays(np.uint8, st.tuples(st.integers(1, 9), st.integers(1, 9), st.just(3))))
def test_bmp_round_trip(img):
    assert np.array_equal(raster.decode_bmp(raster.encode_bmp(img)), img)


def test_pgm_single_pixel():
    assert raster.decode_pgm(b"P5\n1 1\n255\n\x07").tolist() == [[7]]


def test_pgm_comments_in_header():
    img = raster.decode_pgm(b"P5 # width next\n2 1\n# maxval\n255\n\x01\x02")
    assert img.tolist() == [[1, 2]]


def test_pgm_16_bit_rejected():
    with pytest.raises(MalformedHeader):
        raster.decode_pgm(b"P5\n1 1\n65535\n\x00\x07")


def test_pgm_truncated():
    with pytest.raises(TruncatedPixelData):
        raster.decode_pgm(b"P5\n3 3\n255\n\x00\x00")


def test_ppm_round_trip_3x2():
    rng = np.random.default_rng(7)
    img = rng.integers(0, 256, size=(2, 3, 3), dtype=np.uint8)
    assert np.array_equal(raster.decode_ppm(raster.encode_ppm(img)), img)


@given(arrays(np.uint8, st.tuples(st.integers(1, 8), st.integers(1, 8))))
def test_pgm_round_trip(grey):
    assert np.array_equal(raster.decode_pgm(raster.encode_pgm(grey)), grey)


def test_ppm_wrong_magic():
    with pytest.raises(MalformedHeader):
        raster.decode_ppm(b"P5\n1 1\n255\n\x00")


def px(r, g, b):
    return np.array([[[r, g, b]]], dtype=np.uint8)


@pytest.mark.parametrize("rgb, expected", [
    ((0, 0, 0), 0),
    ((255, 255, 255), 255),
    ((255, 0, 0), 77),   # 76.5 rounds up
    ((0, 255, 0), 150),  # 150.45 rounds down
    ((0, 0, 255), 28),   # 28.05
])
def test_to_grey_examples(rgb, expected):
    assert raster.to_grey(px(*rgb))[0, 0] == expected


def test_to_grey_matches_exact_decimal_arithmetic():
    from decimal import ROUND_HALF_UP, Decimal
    rng = np.random.default_rng(0)
    img = rng.integers(0, 256, size=(20, 20, 3), dtype=np.uint8)
    got = raster.to_grey(img)
    for (r, g, b), y in zip(img.reshape(-1, 3).tolist(), got.ravel().tolist()):
        exact = Decimal("0.3") * r + Decimal("0.59") * g + Decimal("0.11") * b
        assert y == int(exact.quantize(Decimal(1), rounding=ROUND_HALF_UP))


@given(st.integers(0, 255), st.integers(0, 255), st.integers(0, 255), st.integers(0, 2), st.integers(1, 255))
def test_to_grey_monotone_per_channel(r, g, b, channel, bump):
    base = [r, g, b]
    raised = list(base)
    raised[channel] = min(255, raised[channel] + bump)
    assert raster.to_grey(px(*raised))[0, 0] >= raster.to_grey(px(*base))[0, 0]


def test_decode_image_dispatch():
    grey = np.arange(6, dtype=np.uint8).reshape(2, 3)
    assert np.array_equal(raster.decode_image(raster.encode_pgm(grey)), grey)
    with pytest.raises(MalformedHeader):
        raster.decode_image(b"GIF89a")
