"""Horizontal text-line detection for video frames built on Weber excitation maps at several radii.

Images are plain numpy arrays throughout:

* RGB frames: ``uint8`` of shape ``(H, W, 3)``
* gray images: ``uint8`` of shape ``(H, W)``
* real-valued maps: ``float64`` of shape ``(H, W)``
* binary masks: ``bool`` of shape ``(H, W)``
"""

from .evalharness import EvalReport, classify_detections, evaluate
from .keyframe import Shot, color_moments, detect_shots, moment_distance
from .morphcc import (
    Component,
    StructElem,
    binarize,
    dilate,
    dilate_binary,
    erode,
    label_components,
    morph_gradient_h,
)
from .mwld import (
    MwldConfig,
    WldScale,
    differential_excitation,
    excitation_to_gray,
    mwld_map,
    orientation,
    wld_histogram,
)
from .pixbuf import (
    draw_boxes,
    read_frame_sequence,
    read_pgm,
    read_ppm,
    write_pgm,
    write_ppm,
)
from .preprocess import rgb_to_y, stretch_contrast
from .textdetect import (
    BBox,
    DetectionResult,
    GeomRules,
    detect_frame,
    filter_components,
    localize,
)

__version__ = "0.1.0"
