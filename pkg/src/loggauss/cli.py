"""Command-line front end.

Subcommands: eval, classify, amoeba, contour, covering.  Scenes are JSON
files with a fixed key set (unknown keys are rejected).  Outputs are CSV
point clouds (17 significant digits, LF line endings), binary P6 PPM
rasters, or JSON reports.  Exit codes: 0 success, 2 input error, 3
classification refusal, 4 unsupported shape, 5 statistical failure.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys

import numpy as np

from . import amoeba as amoeba_mod
from .errors import (
    InsufficientRegularTrialsError,
    PolyParseError,
    SingularPointError,
    UncertainRankError,
    UnsupportedShapeError,
)
from .gaussmap import VarietySystem, classify_point, gauss_matrix, hypersurface_gauss
from .laurent import evaluate, parse_poly
from .variety import AffineLinearSpace


class SceneError(ValueError):
    pass


_SCENE_KEYS = {
    "n",
    "polynomials",
    "dim_k",
    "window",
    "resolution",
    "args_per_fiber",
    "tolerances",
    "seed",
}
_SCENE_REQUIRED = {"n", "polynomials", "dim_k", "window", "resolution"}
_TOL_KEYS = {"rank", "residual"}
_COVERING_KEYS = {"A", "b", "trials", "seed", "tolerances"}


@dataclasses.dataclass
class Scene:
    n: int
    polynomials: list
    dim_k: int
    window: np.ndarray
    resolution: int
    args_per_fiber: int
    tolerances: dict
    seed: int

    def variety(self) -> VarietySystem:
        gens = tuple(parse_poly(text, self.n) for text in self.polynomials)
        return VarietySystem(self.n, gens, self.dim_k)


def load_scene(path: str) -> Scene:
    with open(path) as fh:
        raw = json.load(fh)
    unknown = set(raw) - _SCENE_KEYS
    if unknown:
        raise SceneError(f"unknown scene keys: {sorted(unknown)}")
    missing = _SCENE_REQUIRED - set(raw)
    if missing:
        raise SceneError(f"missing scene keys: {sorted(missing)}")
    tol = dict(raw.get("tolerances", {}))
    if set(tol) - _TOL_KEYS:
        raise SceneError(f"unknown tolerance keys: {sorted(set(tol) - _TOL_KEYS)}")
    tol.setdefault("rank", 1e-10)
    tol.setdefault("residual", 1e-9)
    window = np.asarray(raw["window"], dtype=float)
    if window.ndim != 2 or window.shape[1] != 2 or np.any(window[:, 0] >= window[:, 1]):
        raise SceneError("window must be a list of nonempty [lo, hi] intervals")
    resolution = int(raw["resolution"])
    if resolution < 2:
        raise SceneError("resolution must be at least 2")
    return Scene(
        n=int(raw["n"]),
        polynomials=list(raw["polynomials"]),
        dim_k=int(raw["dim_k"]),
        window=window,
        resolution=resolution,
        args_per_fiber=int(raw.get("args_per_fiber", 64)),
        tolerances=tol,
        seed=int(raw.get("seed", 0)),
    )


def load_covering_scene(path: str):
    with open(path) as fh:
        raw = json.load(fh)
    unknown = set(raw) - _COVERING_KEYS
    if unknown:
        raise SceneError(f"unknown covering-scene keys: {sorted(unknown)}")
    for key in ("A", "b"):
        if key not in raw:
            raise SceneError(f"missing covering-scene key: {key}")
    A = np.array([[complex(re, im) for re, im in row] for row in raw["A"]])
    b = np.array([complex(re, im) for re, im in raw["b"]])
    P = AffineLinearSpace.from_parametrization(A, b)
    return P, int(raw.get("trials", 50)), int(raw.get("seed", 0))


def parse_complex(text: str) -> complex:
    try:
        return complex(text.strip().replace("i", "j"))
    except ValueError as exc:
        raise SceneError(f"bad complex literal {text!r}") from exc


def parse_point(text: str, n: int):
    parts = text.split(",")
    if len(parts) != n:
        raise SceneError(f"expected {n} comma-separated coordinates")
    z = np.array([parse_complex(p) for p in parts])
    if np.any(z == 0):
        raise SceneError("zero coordinate: point lies outside the torus")
    return z


def _c2pair(c):
    return [float(np.real(c)), float(np.imag(c))]


def _json_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# Output writers
# ---------------------------------------------------------------------------


def write_csv(path: str, header, rows):
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(f"{v:.17g}" if isinstance(v, float) else str(v) for v in row))
            fh.write("\n")


def render_ppm(window, resolution, amoeba_points, contour_points=()):
    """P6 raster: amoeba dark on white, contour in a second tone."""
    window = np.asarray(window, dtype=float)[:2]
    img = np.full((resolution, resolution, 3), 255, dtype=np.uint8)

    def pixel(x):
        span = window[:, 1] - window[:, 0]
        col = int((x[0] - window[0, 0]) / span[0] * (resolution - 1))
        row = resolution - 1 - int((x[1] - window[1, 0]) / span[1] * (resolution - 1))
        return row, col

    for x in amoeba_points:
        r, c = pixel(x)
        if 0 <= r < resolution and 0 <= c < resolution:
            img[r, c] = (40, 40, 40)
    for x in contour_points:
        r, c = pixel(x)
        if 0 <= r < resolution and 0 <= c < resolution:
            img[r, c] = (200, 30, 30)
    header = f"P6\n{resolution} {resolution}\n255\n".encode()
    return header + img.tobytes()


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _classify_report(scene: Scene, z):
    V = scene.variety()
    residuals = [abs(evaluate(f, z)) for f in V.generators]
    G = gauss_matrix(V, z)
    cls = classify_point(V, z, scene.tolerances["rank"], scene.tolerances["residual"])
    report = {
        "point": [_c2pair(c) for c in z],
        "residuals": residuals,
        "gauss_matrix": [[_c2pair(c) for c in row] for row in G],
        "m": cls.m,
        "generic_m": cls.generic_m,
        "j": cls.j,
        "critical": cls.critical,
        "margin": cls.margin,
        "s_required": cls.s_required,
    }
    if V.l == 1:
        report["gauss_map"] = [_c2pair(c) for c in hypersurface_gauss(V.generators[0], z)]
    return report


def cmd_eval(args) -> int:
    scene = load_scene(args.scene)
    z = parse_point(args.point, scene.n)
    try:
        report = _classify_report(scene, z)
    except (SingularPointError, UncertainRankError) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3
    print(f"point: {args.point}")
    print(f"max residual: {max(report['residuals']):.3e}")
    print(f"schubert index m = {report['m']} (generic {report['generic_m']}), excess j = {report['j']}")
    print(f"critical: {report['critical']} (margin {report['margin']:.3e})")
    print(_json_dumps(report))
    return 0


def cmd_classify(args) -> int:
    scene = load_scene(args.scene)
    with open(args.points) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    refused = False
    for line in lines:
        z = parse_point(line, scene.n)
        try:
            report = _classify_report(scene, z)
        except (SingularPointError, UncertainRankError) as exc:
            print(_json_dumps({"point": line, "error": str(exc)}))
            refused = True
            continue
        print(_json_dumps(report))
    return 3 if refused else 0


def _scene_amoeba(scene: Scene):
    V = scene.variety()
    return amoeba_mod.compute_amoeba(
        V,
        scene.window,
        scene.resolution,
        scene.args_per_fiber,
        scene.tolerances["residual"],
        scene.seed,
    )


def _scene_contour(scene: Scene):
    V = scene.variety()
    return amoeba_mod.compute_contour(
        V,
        scene.window,
        scene.resolution,
        scene.args_per_fiber,
        scene.tolerances["rank"],
        scene.tolerances["residual"],
        scene.seed,
    )


def cmd_amoeba(args) -> int:
    scene = load_scene(args.scene)
    points = _scene_amoeba(scene)
    header = [f"x{i+1}" for i in range(scene.n)]
    if args.format == "csv":
        write_csv(args.out, header, ([float(v) for v in x] for x in points))
    elif args.format == "ppm":
        data = render_ppm(scene.window, scene.resolution, points)
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        raise SceneError(f"unsupported format {args.format!r} for amoeba")
    return 0


def cmd_contour(args) -> int:
    scene = load_scene(args.scene)
    contour = _scene_contour(scene)
    if args.format == "csv":
        header = [f"x{i+1}" for i in range(scene.n)] + ["m", "j"]
        rows = ([float(v) for v in x] + [cls.m, cls.j] for x, cls in contour)
        write_csv(args.out, header, rows)
    elif args.format == "ppm":
        points = _scene_amoeba(scene)
        data = render_ppm(scene.window, scene.resolution, points, [x for x, _ in contour])
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        raise SceneError(f"unsupported format {args.format!r} for contour")
    return 0


def cmd_covering(args) -> int:
    P, trials, seed = load_covering_scene(args.scene)
    if args.trials is not None:
        trials = args.trials
    if args.seed is not None:
        seed = args.seed
    report = amoeba_mod.verify_covering(P, trials, seed)
    payload = {
        "l": report.l_real,
        "bound": report.bound,
        "trials": report.trials,
        "regular_trials": report.regular_trials,
        "min_preimages": report.min_preimages,
        "max_preimages": report.max_preimages,
        "rejected_nonregular": report.rejected_nonregular,
        "success": report.success,
        "empty_conjugate_intersection": report.empty_conjugate_intersection,
    }
    text = _json_dumps(payload)
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text + "\n")
    print(text)
    return 0 if report.success else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loggauss",
        description="Logarithmic Gauss maps, amoeba contours and covering bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="classify a single point of a scene's variety")
    p_eval.add_argument("--scene", required=True)
    p_eval.add_argument("--point", required=True, help='comma-separated complex literals, e.g. "2,0.5"')
    p_eval.set_defaults(func=cmd_eval)

    p_cls = sub.add_parser("classify", help="eval over a file of points (one per line)")
    p_cls.add_argument("--scene", required=True)
    p_cls.add_argument("--points", required=True)
    p_cls.set_defaults(func=cmd_classify)

    for name, func in (("amoeba", cmd_amoeba), ("contour", cmd_contour)):
        p = sub.add_parser(name, help=f"write the {name} point cloud or raster")
        p.add_argument("--scene", required=True)
        p.add_argument("--out", required=True)
        p.add_argument("--format", choices=("csv", "ppm"), default="csv")
        p.add_argument("--jobs", type=int, default=1, help="worker count (outputs are identical for any value)")
        p.set_defaults(func=func)

    p_cov = sub.add_parser("covering", help="verify the 2^l preimage bound for an affine plane")
    p_cov.add_argument("--scene", required=True)
    p_cov.add_argument("--out")
    p_cov.add_argument("--trials", type=int)
    p_cov.add_argument("--seed", type=int)
    p_cov.add_argument("--jobs", type=int, default=1)
    p_cov.set_defaults(func=cmd_covering)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedShapeError as exc:
        print(f"unsupported shape: {exc}", file=sys.stderr)
        return 4
    except InsufficientRegularTrialsError as exc:
        print(f"insufficient regular trials: {exc}", file=sys.stderr)
        return 5
    except (SceneError, PolyParseError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
