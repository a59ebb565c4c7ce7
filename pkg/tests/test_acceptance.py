"""End-to-end acceptance checks; one summary line per criterion at the end of the run."""
import itertools
import math
import os
import time
from fractions import Fraction

import numpy as np
import pytest
from sympy import factorint, kronecker_symbol

from resultant_sieve import sweeps
from resultant_sieve.classgroup import (
    BQF,
    S_minus,
    class_number_neg,
    fundamental_discriminants,
    group_structure,
    h_parts,
    is_reduced_neg,
    sminus_rows,
)
from resultant_sieve.cli import main
from resultant_sieve.conic import conic_C, find_point, has_rational_point, omega_member, witness_point_from_resultant
from resultant_sieve.pell import find_R
from resultant_sieve.resultant import QuadTriple, resultant
from resultant_sieve.sieve import L_sum, density_report, local_density, nplus_mask, omega_mask

JOBS = os.cpu_count() or 1
NONZERO8 = [v for v in range(-8, 9) if v]
NONZERO6 = [v for v in range(-6, 7) if v]


def brute_reduced(d):
    """Reduced primitive forms of disc d < 0 by scanning a, b, c directly."""
    out = []
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a, a + 1):
            num = b * b - d
            if num % (4 * a) == 0:
                f = BQF(a, b, num // (4 * a))
                if is_reduced_neg(f) and math.gcd(*f) == 1:
                    out.append(f)
        a += 1
    return out


def analytic_h(d):
    w = {-3: 6, -4: 4}.get(d, 2)
    return -w * sum(kronecker_symbol(d, a) * a for a in range(1, -d)) // (2 * -d)


def odd(n):
    while n % 2 == 0:
        n //= 2
    return n


@pytest.mark.criterion("1", "two-term identity equals det M on random (R, Q, i, j)")
def test_c1_two_term_sweep(record_property):
    t = time.time()
    r = sweeps.two_term_sweep(sweeps.SweepConfig(samples=10_000, degrees=(3, 5), box=9, seed=0, jobs=JOBS))
    dt = time.time() - t
    record_property("detail", f"passed={r.passed} failed={r.failed} singular={r.singular} {dt:.1f}s")
    assert r.passed + r.singular == 10_000 and r.failed == 0
    assert dt < 60


@pytest.mark.criterion("2", "cubic expansion equals the 5x5 determinant, box 2")
def test_c2_cubic_expansion(record_property):
    t = time.time()
    r = sweeps.cubic_expansion_sweep(2, JOBS)
    dt = time.time() - t
    record_property("detail", f"checked={r.passed + r.failed} failed={r.failed} {dt:.1f}s")
    assert r.passed == 4 * 25 * 5**4 and r.failed == 0
    assert dt < 60


@pytest.mark.criterion("3", "d_k recurrence, tridiagonal determinant and power sums agree")
def test_c3_d_seq(record_property):
    r = sweeps.d_seq_sweep(6, 12, JOBS)
    record_property("detail", f"checked={r.passed + r.failed} failed={r.failed}")
    assert r.passed == 13**3 * 12 and r.failed == 0


@pytest.mark.criterion("4", "Res(x^n, Q) = c^n for n = 3, 5, 7")
def test_c4_x_power(record_property):
    r = sweeps.x_power_sweep((3, 5, 7), 10, JOBS)
    record_property("detail", f"checked={r.passed + r.failed} failed={r.failed}")
    assert r.passed == 21**3 * 3 and r.failed == 0


@pytest.mark.criterion("5", "conic decision agrees with bounded search; soluble implies Omega")
def test_c5_conic_decision(record_property):
    mismatch, omega_bad, soluble = [], [], 0
    for a, b, c in itertools.product(NONZERO8, repeat=3):
        Q = QuadTriple(a, b, c)
        C = conic_C(Q)
        dec = has_rational_point(C)
        pt = find_point(C, 4 * abs(Q.disc * c) + 4)
        if dec != (pt is not None) or (pt is not None and not C.contains(pt)):
            mismatch.append(Q)
        if dec:
            soluble += 1
            if not omega_member(Q):
                omega_bad.append(Q)
    record_property("detail", f"triples=4096 soluble={soluble} mismatches={len(mismatch)} omega_violations={len(omega_bad)}")
    assert not mismatch and not omega_bad


@pytest.mark.criterion("6", "find_R hits give exact points on the conic")
def test_c6_witness_chain(record_property):
    hits, bad = 0, []
    for a, b, c in itertools.product(NONZERO6, repeat=3):
        Q = QuadTriple(a, b, c)
        R = find_R(Q, 3, 6)
        if R is None:
            continue
        hits += 1
        Qn, point = witness_point_from_resultant(R, Q)
        # Res = -1 moves the point to the conic of -Q; Res = 1 keeps Q
        expected = Q if resultant(R, Q) == 1 else -Q
        ok = Qn == expected and conic_C(Qn).contains(point)
        ok = ok and has_rational_point(conic_C(Qn)) and omega_member(Qn)
        if not ok:
            bad.append((Q, R))
    record_property("detail", f"hits={hits} failures={len(bad)}")
    assert hits > 0 and not bad


@pytest.mark.criterion("7", "N+ inside T as sets; ratio_N within a factor 3")
def test_c7_sieve_inequalities(record_property):
    t = time.time()
    grid = [5, 10, 20, 40]
    rows = density_report(grid, JOBS)
    for B in grid:
        assert not np.any(nplus_mask(B, JOBS) & ~omega_mask(B, B, B, JOBS))
    dt = time.time() - t
    ratios = [r.ratio_N for r in rows]
    spread = max(ratios) / min(ratios)
    record_property("detail", "ratio_N=" + ",".join(f"{v:.4f}" for v in ratios) + f" max/min={spread:.3f} {dt:.1f}s")
    assert all(r.Nplus <= r.T for r in rows)
    assert all(math.isfinite(v) and v > 0 for v in ratios)
    assert spread <= 3
    assert dt < 600


def _density_enumeration(p):
    # straight loop over (Z/p^2)^3, no numpy
    m = p * p
    S = 0
    nonres = {c for c in range(m) if c % p and pow(c, (p - 1) // 2, p) == p - 1}
    for a, b, c in itertools.product(range(m), repeat=3):
        if c in nonres:
            D = (b * b - 4 * a * c) % m
            if D % p == 0 and D:
                S += 1
    return S


@pytest.mark.criterion("8a", "exact S_p, complementarity and |2p w_p - 1| <= 8/p")
def test_c8a_local_densities(record_property):
    parts = []
    for p in (3, 5, 7, 11, 13):
        d = local_density(p)
        assert d.S_p + d.omega_count == p**6
        assert abs(2 * p * d.omega_p - 1) <= Fraction(8, p)
        if p <= 7:
            assert d.S_p == _density_enumeration(p)
        parts.append(f"S_{p}={d.S_p}")
    record_property("detail", " ".join(parts))


@pytest.mark.criterion("8b", "L(Q)/sqrt(ln Q) within [k, 3k], k taken at Q = 100")
def test_c8b_L_growth(record_property):
    ratios = {Q: float(L_sum(Q).value) / math.sqrt(math.log(Q)) for Q in (10**2, 10**3, 10**4)}
    kappa = ratios[100]
    record_property("detail", " ".join(f"Q={Q}:{v:.4f}" for Q, v in ratios.items()) + f" kappa={kappa:.4f}")
    assert all(kappa <= v <= 3 * kappa for v in ratios.values())


@pytest.mark.criterion("9", "class number table, Z/3 at -23, S-(25) = 12")
def test_c9_class_table(record_property):
    table = {-3: 1, -4: 1, -7: 1, -8: 1, -11: 1, -15: 2, -20: 2, -23: 3, -24: 2, -47: 5}
    for d, h in table.items():
        assert class_number_neg(d)[0] == h
        assert len(brute_reduced(d)) == h == analytic_h(d)
    assert group_structure(-23).invariant_factors == (3,)
    assert h_parts(-23)[1] == 3 == odd(len(brute_reduced(-23)))
    oracle = sum(odd(len(brute_reduced(d))) for d in range(-24, 0) if _fundamental_oracle(d))
    assert S_minus(25, "odd") == 12 == oracle
    record_property("detail", f"10 discriminants, S-(25)={oracle}")


def _fundamental_oracle(d):
    f = factorint(abs(d))
    if d % 4 == 1:
        return all(e == 1 for e in f.values())
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and all(e == 1 for e in factorint(abs(m)).values())
    return False


@pytest.mark.criterion("10", "genus bound h / h_odd >= 2^(w(d) - 1)")
def test_c10_genus(record_property):
    ds = fundamental_discriminants(-5000, -4)
    bad = []
    for d in ds:
        h, h_odd, _ = h_parts(d)
        if h // h_odd < 2 ** (len(factorint(-d)) - 1):
            bad.append(d)
    record_property("detail", f"discriminants={len(ds)} violations={len(bad)}")
    assert not bad


@pytest.mark.criterion("11", "S-(X) sqrt(ln X) / X^1.5 bounded, max/min <= 3")
def test_c11_sminus_trend(record_property):
    t = time.time()
    rows = sminus_rows([100, 1000, 10_000], JOBS)
    dt = time.time() - t
    ratios = [r["ratio"] for r in rows]
    spread = max(ratios) / min(ratios)
    record_property("detail", " ".join(f"X={r['X']}:{r['ratio']:.4f}" for r in rows) + f" max/min={spread:.3f} {dt:.1f}s")
    assert spread <= 3 and dt < 300


COUNTING = {
    "count": ["--grid", "5,10,20"],
    "localdensity": ["--grid", "100,1000"],
    "sminus": ["--grid", "100,1000"],
    "verify": ["--samples", "2000"],
    "searchr": ["--quad", "3,1,-2", "--height", "3"],
}


@pytest.mark.criterion("12", "counting commands identical for --jobs 1 and 8")
def test_c12_determinism(capsys, record_property):
    same = []
    for cmd, args in COUNTING.items():
        outs = []
        for jobs in ("1", "8"):
            for fmt in ("csv", "json"):
                assert main([cmd, *args, "--jobs", jobs, "--format", fmt]) == 0
                outs.append(capsys.readouterr().out)
        same.append(outs[0] == outs[2] and outs[1] == outs[3])
    record_property("detail", f"{sum(same)}/{len(same)} commands byte-identical")
    assert all(same)
