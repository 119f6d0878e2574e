"""Hand-built fixtures shared by several test modules."""

from mwldtext.bbox import BBox
from mwldtext.textdetect import DetectionResult


def metric_fixture():
    """10 GT blocks, 9 true detections (one of them partial), 2 false ones."""
    gt, det = {}, []
    for f in range(10):
        g = BBox(0, 0, 19, 9)
        gt[f] = [g]
        if f < 8:
            det.append(DetectionResult(f, (g,)))
        elif f == 8:
            det.append(DetectionResult(f, (BBox(0, 0, 9, 9), BBox(100, 100, 110, 110))))
        else:
            det.append(DetectionResult(f, (BBox(200, 200, 210, 210),)))
    return det, gt
