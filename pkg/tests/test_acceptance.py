"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line.

The lines are collected by ``conftest.py`` and printed in the terminal
summary under "acceptance criteria".
"""

import time

import numpy as np
import pytest

from hardyfactor.factor import atom_mass_at, outerness_test, singular_divisibility_check, total_singular_mass
from hardyfactor.poly import ExactComplex, Polynomial
from hardyfactor.scenarios import (
    completeness_sweep,
    emit_report,
    frostman_zero_oracle,
    random_polynomial_tuple,
    run_scenario,
    soundness_sweep,
    sweep_tuples,
)
from hardyfactor.structured import AtomicSingularMeasure, FrostmanShift, StructuredFunction, structured_combine
from hardyfactor.wronskian import wronskian_exact, wronskian_structured
from hardyfactor.zeros import contour_count, count_zeros

from .conftest import ORACLES, atom, poly_f, random_disk_points

SEED = 20240611
ONE_MINUS_Z4 = [1, -4, 6, -4, 1]


def h_n(c, n):
    return StructuredFunction.factored(Polynomial.constant(1.0), [(1.0, n)], AtomicSingularMeasure.atom(1.0, c))


@pytest.fixture(scope="module")
def tuples():
    return sweep_tuples(SEED, 200, 6, (1, 2, 3))


def test_criterion_1_soundness_sweep(tuples, acceptance):
    t0 = time.perf_counter()
    res = soundness_sweep(tuples, 50, SEED, 1e-6)
    elapsed = time.perf_counter() - t0
    ok = not res.violations and elapsed <= 60 and res.combinations == 200 * 50
    acceptance(
        1, "soundness sweep", ok,
        f"{res.combinations} combinations, {res.deep_roots} deep roots, {len(res.violations)} violations, "
        f"max distance {res.max_distance:.2e}, {elapsed:.1f}s",
    )
    assert res.combinations == 200 * 50
    assert res.deep_roots > 0
    assert not res.violations
    assert elapsed <= 60


def test_criterion_2_completeness(tuples, acceptance):
    res = completeness_sweep(tuples)
    ok = res.certificates > 0 and res.verified == res.certificates and not res.failures and res.certificates == res.wronskian_zeros
    acceptance(
        2, "completeness", ok,
        f"{res.verified}/{res.certificates} certificates verified, {res.wronskian_zeros} Wronskian zeros, {len(res.failures)} failures",
    )
    assert res.certificates > 0
    assert res.verified == res.certificates
    assert not res.failures
    assert res.certificates == res.wronskian_zeros


def test_criterion_3_replacement_identity(acceptance):
    rng = np.random.default_rng([SEED, 30])
    exact_ok = 0
    for _ in range(100):
        n = int(rng.integers(1, 4))
        fs = list(random_polynomial_tuple(rng, n).functions)
        lam = [ExactComplex(int(rng.integers(-3, 4)), int(rng.integers(-3, 4))) for _ in fs]
        k = int(rng.integers(0, n + 1))
        if not lam[k]:
            lam[k] = ExactComplex(1)
        g = Polynomial.zero("exact")
        for c, f in zip(lam, fs):
            g = g + f * Polynomial.exact([c])
        w = wronskian_exact(fs)
        exact_ok += wronskian_exact(fs[:k] + [g] + fs[k + 1 :]) == w * Polynomial.exact([lam[k]])
    worst = 0.0
    for t in range(20):
        n = 1 + t % 3
        fs = [
            poly_f(rng.normal(size=int(rng.integers(1, 4))) + 1j * rng.normal(size=1)) * atom(float(rng.uniform(0.3, 2.0)), np.exp(1j * rng.uniform(0, 2 * np.pi)))
            for _ in range(n + 1)
        ]
        lam = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
        k = int(rng.integers(0, n + 1))
        g = structured_combine(fs, lam)
        zs = random_disk_points(int(rng.integers(1 << 31)), 20, 0.9)
        w = wronskian_structured(fs)(zs)
        wk = wronskian_structured(fs[:k] + [g] + fs[k + 1 :])(zs)
        worst = max(worst, float(np.max(np.abs(wk - lam[k] * w) / np.abs(lam[k] * w))))
    ok = exact_ok == 100 and worst <= 1e-9
    acceptance(3, "W_k = lambda_k W", ok, f"exact {exact_ok}/100, structured max relative error {worst:.2e}")
    assert exact_ok == 100
    assert worst <= 1e-9


def test_criterion_4_mass_calibration(acceptance):
    t0 = time.perf_counter()
    rows = []
    ray_err = 0.0
    for c in (0.25, 1.0, 4.0):
        for label, f in (("S", atom(c)), ("(1-z)^4 S", h_n(c, 4))):
            est = total_singular_mass(f, atoms=[1.0])
            am = atom_mass_at(f, 1.0)
            rows.append((label, c, est.total_mass, am.mass))
            if label == "S":
                ray_err = max(ray_err, max(abs(v - c) / c for v in am.per_radius))
    elapsed = time.perf_counter() - t0
    worst = max(max(abs(t - c), abs(a - c)) / c for _, c, t, a in rows)
    ok = worst <= 0.02 and ray_err <= 1e-13 and elapsed <= 30
    acceptance(4, "singular-mass calibration", ok, f"worst relative error {worst:.2e}, atom-ray error {ray_err:.1e}, {elapsed:.1f}s")
    for label, c, t, a in rows:
        assert t == pytest.approx(c, rel=0.02), (label, c)
        assert a == pytest.approx(c, rel=0.02), (label, c)
    assert ray_err <= 1e-13
    assert elapsed <= 30


FIXTURES = {
    "S,zS": ([atom(), poly_f([0, 1]) * atom()], 2.0),
    "(1-z)^4 S,z(1-z)^4 S": ([h_n(1.0, 4), poly_f([0, 1]) * h_n(1.0, 4)], 2.0),
    "S,zS,z^2S": ([atom(), poly_f([0, 1]) * atom(), poly_f([0, 0, 1]) * atom()], 3.0),
}


def test_criterion_5_divisibility_fixtures(acceptance):
    parts = []
    ok = True
    reports = {}
    for i, (name, (fs, mu_w)) in enumerate(FIXTURES.items()):
        rep = singular_divisibility_check(fs, lambda_samples=50, seed=[SEED, 5, i])
        reports[name] = rep
        good = rep.all_passed and len(rep.samples) >= 50 and rep.wronskian_estimate.atom(1.0) == pytest.approx(mu_w, rel=0.05)
        ok &= good
        parts.append(f"{name}: mu_W {rep.wronskian_estimate.atom(1.0):.4f}, worst margin {rep.worst_margin:.3f}")
    acceptance(5, "divisibility fixtures", ok, "; ".join(parts))
    for name, rep in reports.items():
        assert len(rep.samples) >= 50
        assert rep.tolerance == pytest.approx(max(0.05 * rep.wronskian_estimate.total_mass, 1e-3))
        assert rep.all_passed, name
        assert rep.wronskian_estimate.atom(1.0) == pytest.approx(FIXTURES[name][1], rel=0.05)


def test_criterion_6_derivative_lemma(acceptance):
    rows = []
    for n in (4, 6):
        for c in (0.5, 1.0):
            h = h_n(c, n)
            mh = atom_mass_at(h, 1.0).mass
            md = atom_mass_at(h.derivative().collect(), 1.0).mass
            rows.append((n, c, mh, md))
    ok = all(md >= mh - 0.02 * mh for _, _, mh, md in rows)
    acceptance(6, "derivative-divides lemma", ok, ", ".join(f"N={n} c={c}: {mh:.4f} -> {md:.4f}" for n, c, mh, md in rows))
    for n, c, mh, md in rows:
        assert md >= mh - 0.02 * mh, (n, c)


def test_criterion_7_frostman(acceptance):
    theta = atom()
    zs = random_disk_points([SEED, 7], 100, 0.95)
    resid = 0.0
    for alpha in (0.3, 0.5j):
        sh = FrostmanShift(theta, alpha)
        th = theta(zs)
        resid = max(resid, float(np.max(np.abs(th - alpha - sh(zs) * (1 - np.conj(alpha) * th)))))
    verdicts = {a: outerness_test(FrostmanShift(theta, a).outer_factor(), []).outer_verdict for a in (0.3, 0.5j)}
    cc = contour_count(FrostmanShift(theta, 0.3).numerator(), 0, 0.999)
    oracle = frostman_zero_oracle(theta, 0.3, cc.radius)
    frozen = len(ORACLES["frostman_zeros_0p3_r0p999"])
    rep = run_scenario({"scenario": "frostman", "alphas": [], "alpha_grid": [], "identity_points": 5, "count_radius": 0.9, "outputs": {"plots": False}})
    lead = next(c for c in rep.checks if c.name == "frostman.disjoint-supports").details["least_dominating_mass"][-1]
    ok = resid <= 1e-12 and set(verdicts.values()) == {"outer"} and cc.count == oracle == frozen and lead == 8
    acceptance(7, "Frostman scenario", ok, f"identity residual {resid:.1e}, verdicts {sorted(verdicts.values())}, zeros {cc.count} vs oracle {oracle}, dominating mass {lead}")
    assert resid <= 1e-12
    assert set(verdicts.values()) == {"outer"}
    assert cc.count == oracle == frozen
    assert lead == 8


def test_criterion_8_argument_principle(acceptance):
    rng = np.random.default_rng([SEED, 8])
    mismatches = 0
    for _ in range(100):
        deg = int(rng.integers(1, 9))
        roots = 0.9 * np.sqrt(rng.random(deg)) * np.exp(2j * np.pi * rng.random(deg))
        p = Polynomial.from_roots(roots)
        mismatches += count_zeros(p, 0, 0.95) != deg
        cc = contour_count(p, 0, float(rng.uniform(0.1, 0.9)))
        mismatches += cc.count != int(np.sum(np.abs(roots) < cc.radius))
    acceptance(8, "argument-principle exactness", mismatches == 0, f"{mismatches} mismatches over 200 contours")
    assert mismatches == 0


def test_criterion_9_determinism(tmp_path, acceptance, monkeypatch):
    same = {}
    for scenario in ("theorem-a", "theorem-1", "derivative-lemma", "frostman"):
        cfg = {"scenario": scenario, "seed": 5}
        monkeypatch.setenv("HARDYFACTOR_THREADS", "0")
        emit_report(run_scenario(cfg), tmp_path / scenario / "a")
        monkeypatch.setenv("HARDYFACTOR_THREADS", "3")
        emit_report(run_scenario(cfg), tmp_path / scenario / "b")
        a = (tmp_path / scenario / "a" / "report.json").read_bytes()
        b = (tmp_path / scenario / "b" / "report.json").read_bytes()
        same[scenario] = a == b
    acceptance(9, "determinism", all(same.values()), ", ".join(f"{k}: {'identical' if v else 'DIFFERENT'}" for k, v in same.items()))
    assert all(same.values()), same
