#!/usr/bin/env python3
"""Regenerate the bundled face-landmark corpus under data/landmarks/.

The corpus is 40 synthetic frontal faces, each annotated with the 20-point
markup that kpca_lab.shapes.BIOID_20_ROLES expects (pupils, mouth corners,
brow ends, temples, eye corners, nose tip, nostrils, lip centers, chin).

Faces are drawn from four expression prototypes (calm, amazed, smiling,
head turned), ten faces per prototype.  Each prototype is a fixed
combination of hand-built deformation modes applied to a neutral template;
individual faces add small coefficient jitter, per-coordinate pixel jitter,
and a global translation and scale.  The prototypes make the corpus
clustered rather than one undifferentiated blob, the way a set of photos
caught mid-expression would be, which is exactly the regime where a
distance-based kernel model has visible structure to work with.

Coordinates are written in pixels of a nominal 400x400 frame; consumers
min-max normalize per shape, which removes the translation and scale again.

Deterministic: a fixed seed reproduces the committed corpus bit for bit.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from kpca_lab.shapes import write_pts  # noqa: E402

# Neutral template, annotation order as in BIOID_20_ROLES.  Subject's right
# is the viewer's left (smaller x); y grows downward.
TEMPLATE = np.array([
    [146.0, 136.0],   # 0  right pupil
    [238.0, 136.0],   # 1  left pupil
    [150.0, 232.0],   # 2  right mouth corner
    [234.0, 232.0],   # 3  left mouth corner
    [118.0, 108.0],   # 4  right brow, outer end
    [172.0, 102.0],   # 5  right brow, inner end
    [212.0, 102.0],   # 6  left brow, inner end
    [266.0, 108.0],   # 7  left brow, outer end
    [96.0, 150.0],    # 8  right temple
    [126.0, 137.0],   # 9  right eye, outer corner
    [166.0, 135.0],   # 10 right eye, inner corner
    [218.0, 135.0],   # 11 left eye, inner corner
    [258.0, 137.0],   # 12 left eye, outer corner
    [288.0, 150.0],   # 13 left temple
    [192.0, 190.0],   # 14 nose tip
    [174.0, 196.0],   # 15 right nostril
    [210.0, 196.0],   # 16 left nostril
    [192.0, 222.0],   # 17 upper lip center
    [192.0, 244.0],   # 18 lower lip center
    [192.0, 292.0],   # 19 chin
])

CX, CY = 192.0, 190.0  # deformation pivot, roughly the nose tip


def _mode_turn(pts):
    """Head yaw: the whole face shifts sideways while one half narrows."""
    d = np.zeros_like(pts)
    d[:, 0] = 18.0 - 0.25 * (pts[:, 0] - CX)
    return d


def _mode_expression(pts):
    """Amazement axis: brows up, mouth and jaw open."""
    d = np.zeros_like(pts)
    d[[4, 5, 6, 7], 1] = -8.0
    d[17, 1] = -2.0
    d[18, 1] = 10.0
    d[19, 1] = 6.0
    d[[2, 3], 1] = 3.0
    return d


def _mode_aspect(pts):
    """Wide-short versus narrow-long faces."""
    d = np.zeros_like(pts)
    d[:, 0] = 0.10 * (pts[:, 0] - CX)
    d[:, 1] = -0.06 * (pts[:, 1] - CY)
    return d


def _mode_smile(pts):
    d = np.zeros_like(pts)
    d[[2, 3], 1] = -6.0
    d[2, 0] = -4.0
    d[3, 0] = 4.0
    d[17, 1] = -2.0
    d[18, 1] = -4.0
    d[19, 1] = -2.0
    return d


def _mode_eye_spacing(pts):
    d = np.zeros_like(pts)
    d[[0, 9, 10], 0] = -4.0
    d[[1, 11, 12], 0] = 4.0
    d[15, 0] = -2.0
    d[16, 0] = 2.0
    return d


def _mode_inner_brow(pts):
    d = np.zeros_like(pts)
    d[[5, 6], 1] = -5.0
    d[[4, 7], 1] = 2.0
    return d


def _mode_nose_length(pts):
    d = np.zeros_like(pts)
    d[14, 1] = 6.0
    d[[15, 16], 1] = 4.0
    return d


def _mode_jaw(pts):
    d = np.zeros_like(pts)
    d[19, 1] = 8.0
    d[[8, 13], 1] = -2.0
    return d


MODES = (
    _mode_turn,
    _mode_expression,
    _mode_aspect,
    _mode_smile,
    _mode_eye_spacing,
    _mode_inner_brow,
    _mode_nose_length,
    _mode_jaw,
)

# Rows: expression prototypes; columns: coefficients for MODES in order.
PROTOTYPES = np.array([
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],      # calm
    [0.0, 1.6, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0],      # amazed
    [0.0, -0.4, 0.0, 1.8, 0.0, -0.6, 0.0, 0.0],    # smiling
    [1.6, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],      # head turned
])

FACES_PER_PROTOTYPE = 10
COEF_JITTER = 0.18     # std of per-face mode-coefficient noise
PIXEL_JITTER = 0.8     # pixels, per coordinate
SHIFT_STD = 6.0        # global translation, pixels
SCALE_STD = 0.06       # global scale about the pivot


def make_face(rng, prototype):
    coefs = prototype + COEF_JITTER * rng.standard_normal(len(MODES))
    pts = TEMPLATE.copy()
    for field, coef in zip(MODES, coefs):
        pts = pts + coef * field(TEMPLATE)
    pts = pts + PIXEL_JITTER * rng.standard_normal(pts.shape)
    scale = 1.0 + SCALE_STD * rng.standard_normal()
    pts[:, 0] = CX + scale * (pts[:, 0] - CX) + SHIFT_STD * rng.standard_normal()
    pts[:, 1] = CY + scale * (pts[:, 1] - CY) + SHIFT_STD * rng.standard_normal()
    return pts


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent
                                         / "data" / "landmarks"))
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(args.seed)
    index = 0
    for prototype in PROTOTYPES:
        for _ in range(FACES_PER_PROTOTYPE):
            pts = make_face(rng, prototype)
            if not (pts.min() > 0.0 and pts.max() < 400.0):
                raise SystemExit(f"face {index} leaves the 400x400 frame; "
                                 "lower the mode amplitudes")
            if np.ptp(pts[:, 0]) < 1.0 or np.ptp(pts[:, 1]) < 1.0:
                raise SystemExit(f"face {index} is degenerate")
            write_pts(pts.reshape(-1), out / f"face_{index:02d}.pts")
            index += 1
    print(f"wrote {index} shapes to {out}")


if __name__ == "__main__":
    main()
