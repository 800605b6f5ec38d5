import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import oracles
from pbpedge.preprocess import (
    PreprocessConfig,
    QuantizationWarning,
    QuantizedImage,
    bin_representatives,
    dequantize,
    gaussian_blur,
    gaussian_kernel,
    preprocess,
    quantize,
    to_gray,
)

gray_images = st.tuples(st.integers(1, 12), st.integers(1, 12)).flatmap(
    lambda s: arrays(np.uint8, s, elements=st.integers(0, 255))
)


@pytest.mark.parametrize("rgb, luma", [((255, 255, 255), 255), ((0, 0, 0), 0), ((255, 0, 0), 76)])
def test_to_gray_pixels(rgb, luma):
    assert to_gray(np.array([[rgb]], dtype=np.uint8))[0, 0] == luma


def test_to_gray_passthrough_and_alpha():
    g = np.arange(12, dtype=np.uint8).reshape(3, 4)
    assert to_gray(g) is g
    rgba = np.zeros((1, 1, 4), np.uint8)
    rgba[..., 1] = 255
    assert to_gray(rgba)[0, 0] == 150  # round(0.587 * 255) = round(149.685)


def test_to_gray_rejects_deep_channels():
    with pytest.raises(ValueError, match="channel depth"):
        to_gray(np.full((1, 1, 3), 1000, dtype=np.uint16))


def test_gaussian_kernel_shape_and_mass():
    k = gaussian_kernel(1.0)
    assert k.size == 7 and abs(k.sum() - 1) < 1e-12
    k = gaussian_kernel(0.4)
    assert k.size == 5  # radius ceil(1.2) = 2


@pytest.mark.parametrize("sigma", [0.5, 1.0, 2.3])
def test_blur_constant_image(sigma):
    img = np.full((9, 11), 137, np.uint8)
    assert (gaussian_blur(img, sigma) == img).all()


def test_blur_sigma_zero_identity():
    img = np.random.default_rng(1).integers(0, 256, (8, 8), dtype=np.uint8)
    assert (gaussian_blur(img, 0) == img).all()


def test_blur_single_bright_pixel():
    img = np.zeros((9, 9), np.uint8)
    img[4, 4] = 255
    out = gaussian_blur(img, 1.0)
    dense = oracles.dense_gaussian(img.tolist(), 1.0)
    # centre weight of the 7-tap sigma=1 kernel is 1/2.50663, squared ~ 0.15915; 255 * that ~ 40.6
    assert out[4, 4] == 41
    assert np.allclose(np.floor(np.array(dense) + 0.5), out)


@given(gray_images, st.sampled_from([0.6, 1.0, 1.7]))
def test_blur_matches_dense_oracle(img, sigma):
    from pbpedge.preprocess import _blur_float

    dense = np.array(oracles.dense_gaussian(img.tolist(), sigma))
    assert np.allclose(_blur_float(img, sigma), dense, atol=1e-9)
    assert np.abs(gaussian_blur(img, sigma).astype(float) - dense).max() <= 0.5 + 1e-9


def test_blur_mean_shift_small_on_random_images():
    rng = np.random.default_rng(7)
    for _ in range(20):
        img = rng.integers(0, 256, (32, 32), dtype=np.uint8)
        assert abs(gaussian_blur(img, 1.0).mean() - img.mean()) < 1


def test_blur_rejects_bad_sigma():
    with pytest.raises(ValueError):
        gaussian_blur(np.zeros((2, 2), np.uint8), -1)


@pytest.mark.parametrize("v, k, q", [(255, 10, 9), (0, 10, 0), (0, 2, 0), (128, 10, 5), (255, 256, 255)])
def test_uniform_quantize_values(v, k, q):
    assert quantize(np.array([[v]], np.uint8), k).pixels[0, 0] == q


def test_uniform_quantize_monotone_full_range():
    v = np.arange(256, dtype=np.uint8).reshape(16, 16)
    for k in (2, 3, 10, 17, 256):
        q = quantize(v, k).pixels.ravel()
        assert (np.diff(q) >= 0).all() and q.min() == 0 and q.max() == k - 1


@given(gray_images, st.integers(2, 40))
def test_quantile_monotone_and_in_range(img, k):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", QuantizationWarning)
        q = quantize(img, k, "quantile").pixels
    assert q.min() >= 0 and q.max() <= k - 1
    order = np.argsort(img.ravel(), kind="stable")
    assert (np.diff(q.ravel()[order]) >= 0).all()


def test_quantile_balances_bins():
    img = np.arange(100, dtype=np.uint8).reshape(10, 10)
    q = quantize(img, 4, "quantile").pixels
    assert np.bincount(q.ravel()).tolist() == [25, 25, 25, 25]


def test_quantile_ties_go_to_lower_bin():
    # quantiles at 1/2 land on the value 10 itself; all 10s stay in bin 0
    img = np.array([[10, 10, 10, 200]], np.uint8)
    assert quantize(img, 2, "quantile").pixels.tolist() == [[0, 0, 0, 1]]


def test_quantile_degenerate_falls_back_with_warning():
    img = np.full((4, 4), 200, np.uint8)
    with pytest.warns(QuantizationWarning):
        q = quantize(img, 10, "quantile")
    assert (q.pixels == 7).all()


def test_uniform_idempotent_on_representatives():
    for k in (2, 5, 10, 100, 256):
        reps = bin_representatives(k)
        assert quantize(reps.astype(np.uint8)[None, :], k).pixels.ravel().tolist() == list(range(k))
    img = np.random.default_rng(3).integers(0, 256, (16, 16), dtype=np.uint8)
    q = quantize(img, 10)
    assert (quantize(dequantize(q), 10).pixels == q.pixels).all()


def test_quantized_image_invariant():
    with pytest.raises(ValueError):
        QuantizedImage(np.array([[0, 10]]), 10)


@pytest.mark.parametrize("kw", [dict(sigma=-1), dict(sigma=float("inf")), dict(levels=1), dict(levels=257), dict(quantizer="otsu")])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        PreprocessConfig(**kw)


def test_preprocess_pipeline_order():
    rgb = np.zeros((10, 10, 3), np.uint8)
    rgb[:, 5:] = 255
    q = preprocess(rgb, PreprocessConfig(sigma=0, levels=10))
    assert q.levels == 10 and set(np.unique(q.pixels)) == {0, 9}
