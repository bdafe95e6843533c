"""Acceptance gate: every criterion at its stated tolerance, one reported
pass/fail line per criterion (see the "acceptance criteria" section of the
pytest summary).

Two sub-checks are expected to stay red; both are analyzed limitations of the
source material rather than implementation defects:

* criterion 2: six grid cells whose meta-stability rests entirely on
  cubically-slow attraction along a measure-zero invariant cylinder that is
  numerically repelling -- no finite-precision probe can witness it;
* criterion 4: the row-n11 period (the detected rotation-13 orbit closes at
  T=84.2365 under integration at 1e-12 tolerances, independent of seed and
  integrator, not at the printed 83.6359).
"""
import time
from itertools import permutations

import numpy as np
import pytest
from numpy.testing import assert_allclose

import lyaplab
from lyaplab import cases
from lyaplab.cases import list_cases, run_case, sweep_silnikov
from lyaplab.cycles import classify_attractor, classify_signs
from lyaplab.exponents import (PerturbationDirection, directional_growth,
                               eigenvalue_exponents, svd_exponents,
                               symmetrized_exponents)
from lyaplab.integrate import (IntegratedJacobian, Propagator,
                               integrate_augmented, integrate_propagator)
from lyaplab.mat3 import eig_general, eig_symmetric, expm, symmetrize_scaled
from lyaplab.systems import CubedRing, LinearSystem, Silnikov, TwoRingTorus

from conftest import record_acceptance

SQRT_101 = np.sqrt(101.0)
N_IDS = ["n1", "n2", "n3", "n4", "n5", "n6", "n7", "n8", "n10", "n11"]


@pytest.fixture(scope="module")
def n_reports():
    """One full detect-refine-measure pass over the Silnikov table."""
    cases._REPORT_CACHE.clear()
    t0 = time.time()
    reports = {cid: run_case(cid) for cid in N_IDS + ["n9", "n9-alt"]}
    return reports, time.time() - t0


def _report(n, ok, text):
    record_acceptance(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {text}")


def _computed(report, field):
    for check in report.checks:
        if check.name == field:
            return check.computed
    raise KeyError(field)


def test_criterion_1_matrix_counterexamples():
    t0 = time.time()
    failures = []
    for cid in ("M1", "M2", "M3"):
        rep = run_case(cid, use_cache=False)
        for check in rep.checks:
            if check.delta > 1e-10:
                failures.append(f"{cid}.{check.name} delta={check.delta:g}")
    elapsed = time.time() - t0
    ok = not failures and elapsed < 1.0
    _report(1, ok, f"matrix counterexamples within 1e-10 ({elapsed * 1e3:.0f} ms)")
    assert not failures, failures
    assert elapsed < 1.0


def test_criterion_2_ring_grid_spectra_and_stability():
    t0 = time.time()
    spectra_fail, verdict_fail = [], []
    grid = [r for r in list_cases() if r.id.startswith("S18-")]
    assert len(grid) == 36
    for rec in grid:
        rep = run_case(rec.id)
        for check in rep.checks:
            if check.name in ("le_j", "le_o") and check.delta > 1e-6:
                spectra_fail.append(f"{rec.id}.{check.name}")
            if check.name == "stability" and not check.passed:
                verdict_fail.append(
                    f"{rec.id}: got {check.computed}, stated {check.expected}")
    elapsed = time.time() - t0
    ok = not spectra_fail and not verdict_fail and elapsed < 30.0
    _report(2, ok, f"ring-system grid: {36 - len(verdict_fail)}/36 verdicts, "
                   f"spectra within 1e-6 ({elapsed:.1f} s)")
    assert elapsed < 30.0
    assert not spectra_fail, spectra_fail
    assert not verdict_fail, verdict_fail


def test_criterion_3_cubed_ring_spectra():
    failures = []
    for cid in ("S19-ii'@0.7", "S19-iii'@0.7", "S19-i'@0"):
        rep = run_case(cid)
        for check in rep.checks:
            if check.name in ("le_j", "le_o") and check.delta > 1e-6:
                failures.append(f"{cid}.{check.name} delta={check.delta:g}")
    ok = not failures
    _report(3, ok, "cubed-ring cycles give (0,0,-0.98) and (0,0,0) within 1e-6")
    assert not failures, failures


def test_criterion_4_silnikov_table(n_reports):
    reports, elapsed = n_reports
    rotations = {"n1": 1, "n2": 1, "n3": 1, "n4": 1, "n5": 1, "n6": 1,
                 "n7": 1, "n8": 1, "n10": 2, "n11": 13}
    counts = {"n1": 1, "n2": 1, "n3": 1, "n4": 1, "n5": 1, "n6": 1, "n7": 1,
              "n8": 2, "n10": 2, "n11": 1}
    failures = []
    for cid in N_IDS:
        rep = reports[cid]
        by = {c.name: c for c in rep.checks}
        if not by["period"].passed:
            failures.append(f"{cid}.period computed={by['period'].computed:.4f} "
                            f"expected={by['period'].expected}")
        for field in ("le_j", "le_o"):
            if by[field].delta > 0.01:
                failures.append(f"{cid}.{field} delta={by[field].delta:g}")
        if by["rotation"].computed != rotations[cid]:
            failures.append(f"{cid}.rotation={by['rotation'].computed}")
        if by["cycle_count"].computed != counts[cid]:
            failures.append(f"{cid}.cycle_count={by['cycle_count'].computed}")
    # n9 per the dual-record decision: the literal parameter does not show
    # the row's phenomenology, the alternate does; the reports record it
    n9_pheno = _computed(reports["n9"], "two-clearly-separated-cycles")
    alt_pheno = _computed(reports["n9-alt"], "two-clearly-separated-cycles")
    if n9_pheno or not alt_pheno:
        failures.append(f"n9 dual-record: literal={n9_pheno} alt={alt_pheno}")
    ok = not failures and elapsed < 300.0
    _report(4, ok, f"silnikov table n1-n11 ({elapsed:.0f} s)")
    assert elapsed < 300.0
    assert not failures, failures


def test_criterion_5_trace_identity(n_reports):
    reports, _ = n_reports
    failures = []
    for cid in N_IDS:
        b = cases.get_case(cid).system.b
        for field in ("le_j", "le_o"):
            total = sum(_computed(reports[cid], field))
            if abs(total + b) > 1e-3:
                failures.append(f"{cid}.{field} sum={total:.6f} b={b}")
    ok = not failures
    _report(5, ok, "sum of each spectrum equals -b within 1e-3 on every row")
    assert not failures, failures


def test_criterion_6_bifurcation_brackets():
    t0 = time.time()
    rows = sweep_silnikov(1.0, 0.5030, 0.5015, 16)
    by_b = {round(r.b, 4): r for r in rows}
    sign_flip = (by_b[0.5024].le_j[0] < 0.0 < by_b[0.5023].le_j[0])

    rows2 = sweep_silnikov(1.0, 0.4895, 0.4890, 6)
    by_b2 = {round(r.b, 4): r for r in rows2}
    count_flip = (by_b2[0.4893].cycles == 1 and by_b2[0.4892].cycles == 2)
    monotone = [by_b2[b].cycles for b in (0.4895, 0.4894, 0.4893)] == [1, 1, 1]
    elapsed = time.time() - t0
    ok = sign_flip and count_flip and monotone
    _report(6, ok, f"sign flip in (0.5023, 0.5024), cycle split in "
                   f"(0.4892, 0.4893) ({elapsed:.0f} s)")
    assert sign_flip, (by_b[0.5024].le_j[0], by_b[0.5023].le_j[0])
    assert count_flip and monotone, [(r.b, r.cycles) for r in rows2]


def test_criterion_7_headline_contradiction(n_reports):
    reports, _ = n_reports
    failures = []
    for cid in ("n4", "n5", "n6", "n7", "n8", "n10", "n11"):
        rep = reports[cid]
        by = {c.name: c for c in rep.checks}
        if by["stability"].computed != "asymptotically-stable":
            failures.append(f"{cid}.stability={by['stability'].computed}")
        if by["sign_j"].computed != "(e')":
            failures.append(f"{cid}.sign_j={by['sign_j'].computed}")
        rec = cases.get_case(cid)
        ztol = rec.zero_tol or lyaplab.default_zero_tol(by["le_j"].computed)
        verdict = classify_attractor(by["le_j"].computed, ztol)
        if verdict != "strange-attractor":
            failures.append(f"{cid}.attractor-class={verdict}")
    ok = not failures
    _report(7, ok, "n4-n11: probes say asymptotically stable while the "
                   "sign criteria say (+,-,-) / strange attractor")
    assert not failures, failures


def test_criterion_8_direction_dependence():
    ij = IntegratedJacobian(np.array([[-1.0, 10.0, 0.0], [0.0, -2.0, 0.0],
                                      [0.0, 0.0, -3.0]]), 1.0)
    g2 = directional_growth(ij, PerturbationDirection(1e-8, (0.0, 1.0, 0.0)))
    g3 = directional_growth(ij, PerturbationDirection(1e-8, (0.0, 0.0, 1.0)))
    expected2 = np.hypot(10 * (np.exp(-1) - np.exp(-2)), np.exp(-2))
    ok = (abs(g2 - expected2) < 1e-10 and abs(g3 - np.exp(-3)) < 1e-12
          and g2 / g3 > 10.0)
    _report(8, ok, f"directional growth differs by {g2 / g3:.1f}x across axes")
    assert_allclose(g2, expected2, atol=1e-10)
    assert_allclose(g3, np.exp(-3), atol=1e-12)
    assert g2 / g3 > 10.0


# ---------------------------------------------------------------------------
# criterion 9: randomized property suites, 1000 instances each
# ---------------------------------------------------------------------------

def _random_bounded_system(rng):
    kind = rng.integers(0, 4)
    if kind == 0:
        a = rng.normal(size=(3, 3))
        a *= 1.0 / max(1.0, np.abs(a).sum(axis=1).max())
        return LinearSystem(a), rng.uniform(-1.0, 1.0, size=3)
    if kind == 1:
        sysm = TwoRingTorus(rng.uniform(-0.8, 0.8), rng.uniform(0.0, 1.2))
        return sysm, np.array([rng.uniform(0.2, 1.2), 0.0, rng.uniform(-1, 1)])
    if kind == 2:
        return CubedRing(rng.uniform(0.0, 1.2)), np.array(
            [rng.uniform(0.2, 1.2), 0.0, rng.uniform(-1, 1)])
    sysm = Silnikov(rng.uniform(0.5, 1.5), rng.uniform(0.1, 1.0))
    return sysm, rng.uniform(-0.3, 0.3, size=3)


def test_criterion_9a_liouville_randomized():
    t0 = time.time()
    rng = np.random.default_rng(2026)
    worst = 0.0
    for _ in range(1000):
        sysm, s0 = _random_bounded_system(rng)
        horizon = rng.uniform(0.15, 0.8)
        p = integrate_propagator(sysm, s0, horizon)
        _, ij = integrate_augmented(sysm, s0, horizon)
        det = np.linalg.det(p.matrix)
        target = np.exp(np.trace(ij.matrix))
        worst = max(worst, abs(det - target) / abs(target))
    ok = worst < 1e-8
    _report(9, f"{'PASS' if ok else 'FAIL'}"[0] == "P" and ok,
            f"(a) Liouville determinant on 1000 instances, worst {worst:.1e} "
            f"({time.time() - t0:.0f} s)")
    assert worst < 1e-8


def test_criterion_9b_similarity_and_orthogonal_invariance():
    rng = np.random.default_rng(2027)
    worst_sim, worst_orth = 0.0, 0.0
    for _ in range(1000):
        m = rng.normal(size=(3, 3)) * rng.uniform(0.2, 3.0)
        s = np.eye(3) + 0.3 * rng.normal(size=(3, 3))
        while np.linalg.cond(s) >= 100.0:
            s = np.eye(3) + 0.3 * rng.normal(size=(3, 3))
        conj = s @ m @ np.linalg.inv(s)
        ref, got = eig_general(m), eig_general(conj)
        err = min(np.abs(got[list(p)] - ref).max()
                  for p in permutations(range(3)))
        worst_sim = max(worst_sim, err / max(1.0, np.abs(m).max()))

        sym = 0.5 * (m + m.T)
        q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
        rot = q @ sym @ q.T
        err = np.abs(eig_symmetric(0.5 * (rot + rot.T))
                     - eig_symmetric(sym)).max()
        worst_orth = max(worst_orth, err / max(1.0, np.abs(sym).max()))
    ok = worst_sim < 1e-8 and worst_orth < 1e-10
    _report(9, ok, f"(b) similarity {worst_sim:.1e} / orthogonal "
                   f"{worst_orth:.1e} invariance on 1000 instances")
    assert worst_sim < 1e-8
    assert worst_orth < 1e-10


def test_criterion_9c_odd_symmetry_randomized():
    rng = np.random.default_rng(2028)
    for _ in range(1000):
        sysm = Silnikov(rng.uniform(0.2, 2.0), rng.uniform(0.05, 2.0))
        s = rng.normal(size=3) * rng.uniform(0.1, 3.0)
        if not np.array_equal(sysm.field(-s), -sysm.field(s)):
            _report(9, False, "(c) odd symmetry violated")
            raise AssertionError((sysm, s))
    _report(9, True, "(c) field odd symmetry exact on 1000 instances")


def test_criterion_9d_normal_matrix_route_agreement():
    rng = np.random.default_rng(2029)
    worst = 0.0
    for _ in range(1000):
        q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
        if rng.uniform() < 0.5:
            d = np.diag(rng.uniform(-1.5, 1.0, size=3))
        else:
            a, b, c = rng.uniform(-1.5, 1.0, size=3)
            d = np.array([[a, 0, 0], [0, b, c], [0, -c, b]])
        m = q @ d @ q.T
        t = rng.uniform(0.2, 2.5)
        ij = IntegratedJacobian(m * t, t)
        p = Propagator(expm(m * t), t)
        routes = np.array([eigenvalue_exponents(ij), symmetrized_exponents(ij),
                           svd_exponents(p)])
        worst = max(worst, np.ptp(routes, axis=0).max())
    ok = worst < 1e-8
    _report(9, ok, f"(d) three exponent routes agree within {worst:.1e} on "
                   f"1000 normal instances")
    assert worst < 1e-8


def test_criterion_9e_classifier_permutation_invariance():
    rng = np.random.default_rng(2030)
    for _ in range(1000):
        spec = rng.normal(size=3) * rng.uniform(0.01, 2.0)
        ztol = 10 ** rng.uniform(-6, -1)
        ref_sign = classify_signs(spec, ztol).label
        ref_cls = classify_attractor(spec, ztol)
        for perm in permutations(range(3)):
            assert classify_signs(spec[list(perm)], ztol).label == ref_sign
            assert classify_attractor(spec[list(perm)], ztol) == ref_cls
    _report(9, True, "(e) classifiers permutation-invariant on 1000 instances")
