"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines as they pass.
"""
import json

import numpy as np
import pytest

from battery import HYPERBOLA, LINE, build_battery
from loggauss import (
    AffineLinearSpace,
    SingularPointError,
    UncertainRankError,
    classify_point,
    gauss_matrix,
    generalized_gauss,
    is_arg_critical_oracle,
    is_log_critical_oracle,
    log_gradient,
    null_space,
    parse_poly,
    real_intersection_dim,
    sample_hypersurface_fibers,
    schubert_index,
    verify_covering,
)
from loggauss.cli import main
from test_laurent import _finite_difference_log_gradient, random_poly
from test_linalg import _brute_force_real_dim, _random_subspace


def _report(name, ok):
    print(f"{'PASS' if ok else 'FAIL'}: {name}")
    assert ok, name


@pytest.fixture(scope="module")
def battery():
    return build_battery()


@pytest.fixture(scope="module")
def classified(battery):
    """Per-point classification plus oracle verdicts; uncertain points tallied."""
    rows = []
    excluded = 0
    for label, V, z in battery:
        try:
            cls = classify_point(V, z)
        except UncertainRankError:
            excluded += 1
            continue
        except SingularPointError:
            continue
        rows.append((label, V, z, cls))
    return rows, excluded


def test_criterion_1_oracle_equivalence(classified):
    rows, excluded = classified
    assert len(rows) >= 500, f"battery too small: {len(rows)}"
    disagreements = sum(
        1 for _, V, z, cls in rows if cls.critical != is_log_critical_oracle(V, z)
    )
    frac_excluded = excluded / (len(rows) + excluded)
    assert frac_excluded < 0.05, f"excluded fraction {frac_excluded:.3f}"
    _report(
        f"criterion 1: oracle equivalence on {len(rows)} points "
        f"({excluded} excluded), {disagreements} disagreements",
        disagreements == 0,
    )


def test_criterion_2_dimension_duality(classified):
    rows, _ = classified
    bad = 0
    for _, V, z, cls in rows:
        K = null_space(gauss_matrix(V, z))
        m_K = real_intersection_dim(K)
        if cls.m != m_K + (V.n - 2 * V.k):
            bad += 1
    _report(
        f"criterion 2: dimension duality m_E = m_K + (n-2k) on {len(rows)} points",
        bad == 0,
    )


def test_criterion_3_schubert_index_oracle():
    rng = np.random.default_rng(300)
    bad = 0
    for _ in range(100):
        n = int(rng.integers(2, 7))
        r = int(rng.integers(1, n))
        m = int(rng.integers(0, r + 1))
        M = _random_subspace(rng, n, r, m)
        if real_intersection_dim(M) != _brute_force_real_dim(M):
            bad += 1
    _report("criterion 3: stacked-rank Schubert index vs brute-force oracle (100 subspaces)", bad == 0)


def test_criterion_4_hyperbola_degeneracy():
    pts = sample_hypersurface_fibers(
        HYPERBOLA.generators[0], [[-2, 2], [-2.1, 2.1]], 100, 100
    )
    assert len(pts) >= 10_000
    worst = 0.0
    noncritical = 0
    for p in pts:
        x = np.log(np.abs(p.z))
        worst = max(worst, abs(x[0] + x[1]))
        if not classify_point(HYPERBOLA, p.z).critical:
            noncritical += 1
    _report(
        f"criterion 4: hyperbola degeneracy on {len(pts)} points "
        f"(max |x1+x2| = {worst:.2e})",
        noncritical == 0 and worst < 1e-9,
    )


def test_criterion_5_real_part_containment():
    pts = sample_hypersurface_fibers(LINE.generators[0], [[-2, 2], [-6, 6]], 50, 100)
    real_total = real_critical = 0
    far_total = far_noncritical = 0
    for p in pts:
        z1, z2 = p.z
        try:
            cls = classify_point(LINE, p.z)
        except (SingularPointError, UncertainRankError):
            continue
        if abs(z1.imag) < 1e-10:
            real_total += 1
            real_critical += cls.critical
        if abs((z1 * np.conj(z2)).imag) > 1e-4:
            far_total += 1
            far_noncritical += not cls.critical
    assert real_total >= 50 and far_total >= 1000
    _report(
        f"criterion 5: real-part containment ({real_critical}/{real_total} real critical, "
        f"{far_noncritical}/{far_total} far points non-critical)",
        real_critical == real_total and far_noncritical >= 0.99 * far_total,
    )


def test_criterion_6_covering_bound():
    line = AffineLinearSpace.from_parametrization([[1], [1]], [0, 1])
    rep = verify_covering(line, trials=50, seed=600)
    ok_line = (
        rep.l_real == 1
        and rep.bound == 2
        and rep.min_preimages == 2 == rep.max_preimages
    )

    iline = AffineLinearSpace.from_parametrization([[1], [1j]], [0, 1])
    rep_i = verify_covering(iline, trials=50, seed=601)
    ok_iline = rep_i.l_real == 0 and rep_i.bound == 1 and rep_i.min_preimages >= 1

    A = np.array([[1, 0], [1, 0], [0, 1], [0, 1]], dtype=complex)
    b = np.array([0, 1, 0, 1], dtype=complex)
    plane = AffineLinearSpace.from_parametrization(A, b)
    rep_p = verify_covering(plane, trials=50, seed=602)
    ok_plane = (
        rep_p.l_real == 2
        and rep_p.bound == 4
        and rep_p.regular_trials >= 45
        and rep_p.min_preimages >= 4
    )
    _report(
        "criterion 6: covering bounds "
        f"(line {rep.min_preimages}>=2 on {rep.regular_trials} regular, "
        f"complex line {rep_i.min_preimages}>=1, "
        f"plane {rep_p.min_preimages}>=4 on {rep_p.regular_trials} regular)",
        ok_line and ok_iline and ok_plane,
    )


def test_criterion_7_log_arg_coincidence(classified):
    rows, _ = classified
    disagreements = sum(
        1
        for _, V, z, _ in rows
        if is_log_critical_oracle(V, z) != is_arg_critical_oracle(V, z)
    )
    _report(
        f"criterion 7: log/arg criticality coincidence on {len(rows)} points",
        disagreements == 0,
    )


def _scene(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def test_criterion_8_determinism(tmp_path):
    scene = _scene(
        tmp_path,
        "line.json",
        {
            "n": 2,
            "polynomials": ["z1+z2-1"],
            "dim_k": 1,
            "window": [[-2, 2], [-2, 2]],
            "resolution": 25,
            "args_per_fiber": 25,
            "seed": 7,
        },
    )
    cov = _scene(
        tmp_path,
        "cov.json",
        {"A": [[[1, 0]], [[1, 0]]], "b": [[0, 0], [1, 0]], "trials": 20, "seed": 5},
    )
    outputs = {}
    for run in ("a", "b"):
        for jobs in ("1", "8"):
            tag = f"{run}{jobs}"
            am = tmp_path / f"am{tag}.csv"
            ct = tmp_path / f"ct{tag}.csv"
            pp = tmp_path / f"pp{tag}.ppm"
            cv = tmp_path / f"cv{tag}.json"
            assert main(["amoeba", "--scene", scene, "--out", str(am), "--jobs", jobs]) == 0
            assert main(["contour", "--scene", scene, "--out", str(ct), "--jobs", jobs]) == 0
            assert main(["amoeba", "--scene", scene, "--out", str(pp), "--format", "ppm", "--jobs", jobs]) == 0
            assert main(["covering", "--scene", cov, "--out", str(cv), "--jobs", jobs]) == 0
            outputs[tag] = (
                am.read_bytes(),
                ct.read_bytes(),
                pp.read_bytes(),
                cv.read_bytes(),
            )
    baseline = outputs["a1"]
    same = all(outputs[tag] == baseline for tag in ("b1", "a8", "b8"))
    _report("criterion 8: byte-identical outputs across runs and --jobs 1 vs 8", same)


def test_criterion_9_log_gradient_calibration():
    rng = np.random.default_rng(900)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 5))
        p = random_poly(rng, n)
        z = rng.uniform(0.5, 2.0, n) * np.exp(1j * rng.uniform(-np.pi, np.pi, n))
        lg = log_gradient(p, z)
        fd = _finite_difference_log_gradient(p, z)
        err = np.linalg.norm(lg - fd) / max(np.linalg.norm(lg), 1e-8)
        worst = max(worst, err)
    _report(
        f"criterion 9: log-gradient vs finite differences (worst rel err {worst:.2e})",
        worst < 1e-6,
    )
