import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from mwldtext.morphcc import (
    HORIZONTAL_1X3,
    StructElem,
    binarize,
    dilate,
    dilate_binary,
    erode,
    label_components,
    label_image,
    morph_gradient_h,
)
from oracles import flood_fill_labels, partition, window_reduce

images = st.tuples(st.integers(1, 10), st.integers(1, 10)).flatmap(lambda hw: arrays(np.uint8, hw))
masks = st.tuples(st.integers(1, 10), st.integers(1, 10)).flatmap(lambda hw: arrays(np.bool_, hw))
elems = st.builds(StructElem, st.sampled_from([1, 3, 5]), st.sampled_from([1, 3, 5, 7]))


def test_struct_elem_must_be_odd():
    for h, w in [(2, 3), (1, 4), (0, 1)]:
        with pytest.raises(ValueError):
            StructElem(h, w)
    assert StructElem(3, 7).origin == (1, 3)


def test_constant_unchanged():
    img = np.full((4, 5), 33, dtype=np.uint8)
    np.testing.assert_array_equal(dilate(img), img)
    np.testing.assert_array_equal(erode(img), img)
    assert (morph_gradient_h(img) == 0).all()


def test_bright_pixel_dilates_horizontally():
    img = np.zeros((3, 5), dtype=np.uint8)
    img[1, 2] = 255
    expected = np.zeros_like(img)
    expected[1, 1:4] = 255
    np.testing.assert_array_equal(dilate(img, HORIZONTAL_1X3), expected)


def test_dark_pixel_erodes_horizontally():
    img = np.full((3, 5), 255, dtype=np.uint8)
    img[1, 2] = 0
    expected = np.full_like(img, 255)
    expected[1, 1:4] = 0
    np.testing.assert_array_equal(erode(img, HORIZONTAL_1X3), expected)


def test_gradient_vertical_step():
    row = np.array([[0, 0, 0, 255, 255, 255, 255, 255]], dtype=np.uint8)
    expected = window_reduce(row, 1, 3, max).astype(int) - window_reduce(row, 1, 3, min).astype(int)
    np.testing.assert_array_equal(expected, [[0, 0, 255, 255, 0, 0, 0, 0]])
    np.testing.assert_array_equal(morph_gradient_h(row), expected)


def test_gradient_horizontal_step_is_zero():
    img = np.zeros((6, 8), dtype=np.uint8)
    img[3:] = 255
    assert (morph_gradient_h(img) == 0).all()


@given(images, elems)
def test_morphology_matches_oracle(img, se):
    np.testing.assert_array_equal(dilate(img, se), window_reduce(img, se.height, se.width, max))
    np.testing.assert_array_equal(erode(img, se), window_reduce(img, se.height, se.width, min))


@given(images, elems)
def test_ordering_and_duality(img, se):
    d, e = dilate(img, se), erode(img, se)
    assert (e <= img).all() and (img <= d).all()
    np.testing.assert_array_equal(d, 255 - erode(255 - img, se))


def test_binarize_strict():
    np.testing.assert_array_equal(binarize(np.array([[199, 200, 201]], np.uint8)), [[False, False, True]])
    assert not binarize(np.full((2, 2), 200, np.uint8)).any()
    assert binarize(np.full((2, 2), 255, np.uint8)).all()
    with pytest.raises(ValueError):
        binarize(np.zeros((1, 1), np.uint8), 256)


def test_label_empty():
    assert label_components(np.zeros((4, 4), bool)) == []


def test_label_diagonal_pixels_are_separate():
    mask = np.array([[1, 0], [0, 1]], dtype=bool)
    comps = label_components(mask)
    assert [c.pixel_count for c in comps] == [1, 1]


def test_label_ring():
    mask = np.zeros((7, 7), dtype=bool)
    mask[1:6, 1:6] = True
    mask[2:5, 2:5] = False
    (c,) = label_components(mask)
    assert c.label == 1 and c.pixel_count == 16
    assert (c.bbox.width, c.bbox.height) == (5, 5)
    assert c.bbox.as_list() == [1, 1, 5, 5]


def test_label_raster_order():
    # region B's first pixel (row 0) precedes region A's (row 1) even though A starts further left
    mask = np.zeros((4, 6), dtype=bool)
    mask[0, 4:6] = True
    mask[1:4, 0] = True
    comps = label_components(mask)
    assert comps[0].bbox.x0 == 4 and comps[1].bbox.x0 == 0
    assert [c.label for c in comps] == [1, 2]


@given(masks)
def test_labels_match_flood_fill(mask):
    labels, comps = label_image(mask)
    oracle, n = flood_fill_labels(mask)
    np.testing.assert_array_equal(labels, oracle)
    assert len(comps) == n
    for c in comps:
        ys, xs = np.nonzero(labels == c.label)
        assert c.pixel_count == len(ys) <= c.bbox.area
        assert c.bbox.as_list() == [xs.min(), ys.min(), xs.max(), ys.max()]


@given(masks)
def test_relabeling_rendered_labels_is_stable(mask):
    labels, _ = label_image(mask)
    again, _ = label_image(labels > 0)
    assert partition(again) == partition(labels)


def test_dilate_binary_fills_gap():
    mask = np.zeros((1, 9), dtype=bool)
    mask[0, 2] = mask[0, 6] = True
    out = dilate_binary(mask, StructElem(1, 7))
    assert len(label_components(out)) == 1
    assert out[0, 2:7].all()


@given(masks, elems)
def test_dilate_binary_extensive(mask, se):
    out = dilate_binary(mask, se)
    assert (out >= mask).all()
    assert out.sum() >= mask.sum()
    np.testing.assert_array_equal(out, window_reduce(mask, se.height, se.width, any))
    assert not dilate_binary(np.zeros_like(mask), se).any()
