"""Amoebas and contours of plane curves.

Renders the amoeba of the line z1 + z2 = 1 and of the hyperbola z1*z2 = 1,
highlights the contour (the log images of critical points of the
log-modulus map), and prints a few classifications along the way.

Run:  python3 demos/plane_curve_contour.py
Outputs land in demos/out/.
"""
import os

import numpy as np

from loggauss import (
    VarietySystem,
    classify_point,
    compute_amoeba,
    compute_contour,
    parse_poly,
)
from loggauss.cli import render_ppm, write_csv

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

line = VarietySystem(2, (parse_poly("z1+z2-1", 2),), 1)
window = [[-3, 3], [-3, 3]]

# The amoeba of the line: three tentacles, one per vertex direction of the
# Newton polygon.  The contour is the image of the real points of the line.
amoeba = compute_amoeba(line, window, 160, 160)
contour = compute_contour(line, window, 160, 160)
print(f"line: {len(amoeba)} amoeba points, {len(contour)} on the contour")

write_csv(os.path.join(OUT, "line_amoeba.csv"), ["x1", "x2"], ([float(v) for v in x] for x in amoeba))
ppm = render_ppm(window, 400, amoeba, [x for x, _ in contour])
with open(os.path.join(OUT, "line.ppm"), "wb") as fh:
    fh.write(ppm)

# A real point of the line is always critical; a thoroughly complex one is not.
print("classify (0.5, 0.5):        ", classify_point(line, [0.5, 0.5]))
print("classify (0.5+0.5i, 0.5-0.5i):", classify_point(line, [0.5 + 0.5j, 0.5 - 0.5j]))

# The hyperbola z1*z2 = 1 is the degenerate extreme: its Gauss map is the
# constant [1 : 1], every point is critical, and the amoeba collapses onto
# the anti-diagonal x1 + x2 = 0.
hyperbola = VarietySystem(2, (parse_poly("z1*z2-1", 2),), 1)
h_window = [[-2, 2], [-2.1, 2.1]]
h_amoeba = compute_amoeba(hyperbola, h_window, 100, 100)
h_contour = compute_contour(hyperbola, h_window, 100, 100)
spread = max(abs(x[0] + x[1]) for x in h_amoeba)
print(f"hyperbola: {len(h_amoeba)} points, contour covers {len(h_contour)}, "
      f"max |x1+x2| = {spread:.2e}")

with open(os.path.join(OUT, "hyperbola.ppm"), "wb") as fh:
    fh.write(render_ppm(h_window, 400, h_amoeba, [x for x, _ in h_contour]))
print(f"wrote rasters and CSV to {OUT}/")
