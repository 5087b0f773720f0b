import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from ecprbg.imagecipher import (
    GrayImage,
    adjacent_correlation,
    analyze,
    decrypt_with_seed,
    encrypt,
    encrypt_with_seed,
    entropy,
    histogram,
    image_seed,
    keystream,
    mae,
    mse,
    npcr_uaci,
    psnr,
    synthetic_test_image,
)
from ecprbg.imagecipher.metrics import psnr_from_mse
from ecprbg.prbg import generate_bits, instantiate


def const(value, shape=(16, 16)):
    return GrayImage(np.full(shape, value, dtype=np.uint8))


@pytest.fixture(scope="module")
def lena_like():
    return synthetic_test_image()


# -- metrics ------------------------------------------------------------------


def test_entropy_extremes():
    assert entropy(const(7)) == 0.0
    assert entropy(GrayImage(np.arange(256).reshape(16, 16))) == pytest.approx(8.0)
    two = GrayImage(np.tile([0, 255], (4, 4)))
    assert entropy(two) == pytest.approx(1.0)


def test_error_measures_on_extreme_pair():
    a, b = const(0), const(255)
    assert mae(a, b) == 255.0
    assert mse(a, b) == 65025.0
    assert psnr(a, b) == pytest.approx(0.0)


def test_psnr_identical_is_infinite():
    assert psnr(const(3), const(3)) == math.inf


def test_psnr_formula_and_monotonicity():
    assert psnr_from_mse(9305.32) == pytest.approx(8.4435, abs=1e-4)
    values = [psnr_from_mse(m) for m in (1, 10, 100, 1000, 10000)]
    assert values == sorted(values, reverse=True)


def test_shape_mismatch_raises():
    with pytest.raises(ValueError):
        mse(const(0, (4, 4)), const(0, (4, 5)))


def test_correlation_of_ramp_rows():
    ramp = GrayImage(np.tile(np.arange(0, 200, 10), (8, 1)))
    assert adjacent_correlation(ramp, "horizontal") == pytest.approx(1.0)
    # identical rows: every vertical pair is (v, v)
    assert adjacent_correlation(ramp, "vertical") == pytest.approx(1.0)
    assert adjacent_correlation(ramp, "diagonal") == pytest.approx(1.0)
    checker = GrayImage(np.indices((8, 8)).sum(axis=0) % 2 * 255)
    assert adjacent_correlation(checker, "horizontal") == pytest.approx(-1.0)
    assert adjacent_correlation(checker, "diagonal") == pytest.approx(1.0)


def test_correlation_nan_on_constant_image():
    for d in ("horizontal", "vertical", "diagonal"):
        assert math.isnan(adjacent_correlation(const(9), d))
    with pytest.raises(ValueError):
        adjacent_correlation(const(9), "sideways")


def test_correlation_matches_pearson_over_all_pairs():
    img = GrayImage(np.random.default_rng(5).integers(0, 256, (20, 30)))
    px = img.pixels.astype(float)
    pairs = {
        "horizontal": (px[:, :-1], px[:, 1:]),
        "vertical": (px[:-1, :], px[1:, :]),
        "diagonal": (px[:-1, :-1], px[1:, 1:]),
    }
    for d, (x, y) in pairs.items():
        assert adjacent_correlation(img, d) == pytest.approx(stats.pearsonr(x.ravel(), y.ravel())[0])


def test_npcr_uaci_extremes():
    assert npcr_uaci(const(5), const(5)) == (0.0, 0.0)
    img = GrayImage(np.random.default_rng(1).integers(0, 256, (16, 16)))
    complement = GrayImage(255 - img.pixels)
    npcr, uaci = npcr_uaci(img, complement)
    assert npcr == pytest.approx(100.0 * np.count_nonzero(img.pixels != 255 - img.pixels) / 256)
    assert uaci == pytest.approx(100 * np.abs(2 * img.pixels.astype(int) - 255).mean() / 255)
    assert npcr_uaci(const(0), const(255)) == (100.0, 100.0)


def test_histogram_chi_square():
    flat = histogram(GrayImage(np.arange(256).reshape(16, 16)))
    assert flat.chi2 == 0.0 and flat.p_value == 1.0
    assert flat.counts.sum() == 256
    spike = histogram(const(0, (64, 64)))
    assert spike.p_value < 1e-6
    img = GrayImage(np.random.default_rng(2).integers(0, 256, (64, 64)))
    h = histogram(img)
    assert h.p_value == pytest.approx(stats.chi2.sf(h.chi2, 255), rel=1e-9)


def test_analyze_fields(lena_like):
    cipher = encrypt_with_seed(lena_like, b"k")
    m = analyze(lena_like, cipher)
    assert m.npcr is None and m.uaci is None
    assert m.plain_corr_horizontal > 0.9
    d = m.to_dict()
    assert len(d["histogram"]) == 256
    assert d["psnr"] == pytest.approx(psnr(lena_like, cipher))
    assert analyze(lena_like, lena_like).to_dict()["psnr"] == "inf"
    assert analyze(const(1), const(1)).to_dict()["corr_vertical"] is None


# -- cipher -------------------------------------------------------------------


def test_keystream_uses_eight_bits_per_pixel(spec503):
    state = instantiate(spec503, b"ks")
    after, ks = keystream(state, 256 * 256)
    assert ks.size == 65536
    assert after.step_count == 524288 // 128
    assert np.array_equal(np.unpackbits(ks), generate_bits(b"ks", 524288).bits)


def test_pixel_order_is_row_major(spec503):
    img = GrayImage(np.zeros((3, 5), dtype=np.uint8))
    cipher, _ = encrypt(img, instantiate(spec503, b"order"))
    assert np.array_equal(cipher.pixels.ravel(), np.packbits(generate_bits(b"order", 120).bits))


@settings(max_examples=25, deadline=None)
@given(
    st.binary(min_size=1, max_size=16),
    st.integers(1, 20),
    st.integers(1, 20),
    st.booleans(),
)
def test_round_trip(seed, w, h, per_image):
    img = GrayImage(np.random.default_rng(w * 31 + h).integers(0, 256, (h, w)))
    cipher = encrypt_with_seed(img, seed, per_image=per_image)
    digest = img.digest() if per_image else None
    assert decrypt_with_seed(cipher, seed, plain_digest=digest) == img


def test_wrong_seed_does_not_decrypt(lena_like):
    cipher = encrypt_with_seed(lena_like, b"right")
    wrong = decrypt_with_seed(cipher, b"wrong")
    assert np.mean(wrong.pixels != lena_like.pixels) > 0.95


def test_per_image_key_depends_on_content(lena_like):
    px = lena_like.pixels.copy()
    px[0, 0] ^= 1
    other = GrayImage(px)
    c1 = encrypt_with_seed(lena_like, b"key", per_image=True)
    c2 = encrypt_with_seed(other, b"key", per_image=True)
    npcr, _ = npcr_uaci(c1, c2)
    assert npcr > 99.0
    # without the per-image protocol only the changed pixel differs
    p1 = encrypt_with_seed(lena_like, b"key")
    p2 = encrypt_with_seed(other, b"key")
    assert np.count_nonzero(p1.pixels != p2.pixels) == 1


def test_synthetic_image_is_natural_looking(lena_like):
    assert lena_like.shape == (256, 256)
    assert 6.5 < entropy(lena_like) < 7.7
    for d in ("horizontal", "vertical", "diagonal"):
        assert adjacent_correlation(lena_like, d) > 0.9
    assert synthetic_test_image() == lena_like


def test_per_image_keys_can_coincide(spec503):
    """Seeds whose initial scalars are s and 129 - s give the same keystream."""
    img = synthetic_test_image(64, 64)
    px = img.pixels.copy()
    px[10, 10] ^= 0x80
    other = GrayImage(px)
    seed = bytes.fromhex("00112233")
    s1 = instantiate(spec503, image_seed(seed, img)).s
    s2 = instantiate(spec503, image_seed(seed, other)).s
    assert (s1, s2) == (128, 1)
    c1 = encrypt_with_seed(img, seed, per_image=True)
    c2 = encrypt_with_seed(other, seed, per_image=True)
    assert np.count_nonzero(c1.pixels != c2.pixels) == 1
