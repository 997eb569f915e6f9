"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s``. The shared 200-instance
corpus (with precomputed reference integrals) comes from the session fixture
in conftest; criterion timings that depend on it include its build time.
"""

import json
import subprocess
import sys
import time

import numpy as np
import pytest

from hh_bounds import (Fn2D, Interval, NestedDiscrete, Quadrature, Rect,
                       assemble_classic_terms, boundary_bound, centerline_bound,
                       classic_chain, deficit_upper, discrete_enclosure,
                       integral_enclosure, partition_chain, positive_upper,
                       refined_chain)
from hh_bounds.convexity import random_convex_1d
from hh_bounds.expr import eval_ast, parse, ParseError
from hh_bounds.oracle import reference_integral_1d

from expr_corpus import CORPUS, MALFORMED

UNIT2 = Rect(0.0, 1.0, 0.0, 1.0)
XY = Fn2D(eval=lambda x, y: x * y)
SCHEME = NestedDiscrete(16)


@pytest.fixture(scope="module")
def corpus(corpus_200):
    return corpus_200[0]


def _report(num, message):
    print(f"\nPASS criterion {num}: {message}")


def test_criterion_1_equality_case():
    start = time.perf_counter()
    chain3 = partition_chain(XY, UNIT2, 2, SCHEME)
    for _, v in chain3.terms:
        assert abs(v - 0.25) <= 1e-12
    for rep in (classic_chain(XY, UNIT2, SCHEME), refined_chain(XY, UNIT2, SCHEME)):
        for _, v in rep.terms:
            assert abs(v - 0.25) <= 1e-12
        assert rep.all_satisfied
    bp = discrete_enclosure(XY, UNIT2, 2, 2)
    assert abs(bp.lower - 0.25) <= 1e-12
    assert abs(bp.upper - 0.25) <= 1e-12
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    _report(1, f"f=xy equality across all operations ({elapsed:.2f}s)")


def test_criterion_2_n1_recapture(corpus):
    start = time.perf_counter()
    worst = 0.0
    for rect, fn, oracle, context in corpus[:50]:
        chain = classic_chain(fn, rect, SCHEME, integral=oracle.value)
        assembled = assemble_classic_terms(fn, rect, SCHEME, integral=oracle.value)
        for (name, cv), av in zip(chain.terms, assembled):
            rel = abs(av - cv) / max(1.0, abs(av), abs(cv))
            worst = max(worst, rel)
            assert rel <= 1e-12, f"{context} term={name}"
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    _report(2, f"50-instance n=1 recapture, worst rel diff {worst:.2e} ({elapsed:.2f}s)")


def test_criterion_3_enclosure_soundness(corpus_200):
    corpus, build_time = corpus_200
    start = time.perf_counter()
    checked = skipped = 0
    for rect, fn, oracle, context in corpus:
        integral = oracle.value
        tol = 1e-9 * max(1.0, abs(integral))
        for n in range(1, 9):
            for m in (1, 2, 4):
                bp = discrete_enclosure(fn, rect, n, m)
                if oracle.error_estimate > 1e-3 * bp.gap + 1e-12:
                    skipped += 1
                    continue
                checked += 1
                assert bp.lower - tol <= integral, f"{context} n={n} m={m}"
                assert integral <= bp.upper + tol, f"{context} n={n} m={m}"
    elapsed = time.perf_counter() - start
    assert checked >= 0.99 * (checked + skipped)
    assert build_time + elapsed < 60.0
    _report(3, f"enclosure sound on {checked} combos, {skipped} oracle-skips, "
               f"0 violations ({build_time + elapsed:.1f}s incl. corpus build)")


def test_criterion_4_one_sided_inequalities(corpus):
    start = time.perf_counter()
    counts = {"centerline": 0, "boundary": 0, "positive_upper": 0}
    quad = Quadrature(1e-9)
    for rect, fn, oracle, context in corpus:
        for n in (1, 2, 4):
            lhs, rhs = centerline_bound(fn, rect, n, SCHEME)
            assert lhs <= rhs + 1e-9 * max(1.0, abs(rhs)), f"{context} n={n}"
            counts["centerline"] += 1
            lhs, rhs = boundary_bound(fn, rect, n, SCHEME)
            assert lhs <= rhs + 1e-9 * max(1.0, abs(rhs)), f"{context} n={n}"
            counts["boundary"] += 1
        if fn.positive:
            for n in (1, 2, 4):
                bound = positive_upper(fn, rect, n, quad)
                assert oracle.value <= bound + 1e-9 * max(1.0, abs(bound)), \
                    f"{context} n={n}"
                counts["positive_upper"] += 1
    assert counts["positive_upper"] > 0
    elapsed = time.perf_counter() - start
    _report(4, f"one-sided inequalities hold: {counts} checks, 0 violations "
               f"({elapsed:.1f}s)")


def test_criterion_5_tightening(corpus):
    start = time.perf_counter()
    for rect, fn, oracle, context in corpus:
        c = classic_chain(fn, rect, SCHEME, integral=oracle.value).values
        r = refined_chain(fn, rect, SCHEME, integral=oracle.value).values
        assert r[3] <= c[3] + 1e-12 * max(1.0, abs(c[3])), context
        assert r[4] <= c[4] + 1e-12 * max(1.0, abs(c[4])), context
    sumsq = Fn2D(eval=lambda x, y: x * x + y * y)
    terms = classic_chain(sumsq, UNIT2, Quadrature(1e-12)).values
    expected = (0.5, 7.0 / 12.0, 2.0 / 3.0, 5.0 / 6.0, 1.0)
    for v, e in zip(terms, expected):
        assert abs(v - e) <= 1e-9
    elapsed = time.perf_counter() - start
    _report(5, f"refined chain tightens classic on 200 instances; sumsq terms "
               f"match closed forms ({elapsed:.1f}s)")


def test_criterion_6_convergence():
    start = time.perf_counter()
    expsum = Fn2D(eval=lambda x, y: np.exp(x + y))
    gaps = {n: discrete_enclosure(expsum, UNIT2, n, 64).gap for n in (32, 64, 128)}
    ratios = (gaps[64] / gaps[32], gaps[128] / gaps[64])
    for ratio in ratios:
        assert 0.2 <= ratio <= 0.3
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    _report(6, f"gap ratios {ratios[0]:.4f}, {ratios[1]:.4f} in [0.2, 0.3] "
               f"({elapsed:.1f}s)")


def test_criterion_7_one_dimensional_bounds():
    start = time.perf_counter()
    rng = np.random.default_rng(616)
    enclosure_checks = deficit_checks = 0
    for seed in range(100):
        lo = float(rng.uniform(-2.0, 1.0))
        iv = Interval(lo, lo + float(rng.uniform(0.5, 2.5)))
        fn = random_convex_1d(seed, iv, 1 + seed % 4)
        oracle = reference_integral_1d(fn, iv, 1024)
        tol = 1e-9 * max(1.0, abs(oracle.value))
        for n in range(1, 17):
            bp = integral_enclosure(fn, iv, n)
            if oracle.error_estimate > 1e-3 * bp.gap + 1e-12:
                continue
            assert bp.lower - tol <= oracle.value <= bp.upper + tol, f"seed={seed} n={n}"
            enclosure_checks += 1
    for seed in range(100):
        lo = float(rng.uniform(-2.0, 1.0))
        iv = Interval(lo, lo + float(rng.uniform(0.5, 2.5)))
        fn = random_convex_1d(seed, iv, 1 + seed % 3, ensure_positive=True)
        assert fn.positive
        oracle = reference_integral_1d(fn, iv, 1024)
        length = iv.length
        for n in (1, 2, 5):
            for t in np.linspace(iv.lo, iv.hi, 11):
                bound = deficit_upper(fn, iv, float(t), n)
                lhs = oracle.value - length * float(fn.eval(float(t)))
                assert lhs <= bound + 1e-9 * max(1.0, abs(bound)), \
                    f"seed={seed} n={n} t={t}"
                deficit_checks += 1
    elapsed = time.perf_counter() - start
    _report(7, f"{enclosure_checks} 1-D enclosure checks and {deficit_checks} "
               f"deficit-bound checks, 0 violations ({elapsed:.1f}s)")


def test_criterion_8_parser():
    assert len(CORPUS) >= 50 and len(MALFORMED) >= 20
    for src, expected in CORPUS:
        assert parse(src) == expected, src
    for src, (lo, hi) in MALFORMED:
        with pytest.raises(ParseError) as exc:
            parse(src)
        assert lo <= exc.value.position <= hi, src
    assert eval_ast(parse("2+3*4^2"), 0.0, 0.0) == 50.0
    assert eval_ast(parse("-x^2"), 2.0, 0.0) == -4.0
    _report(8, f"{len(CORPUS)} expressions parse to expected trees, "
               f"{len(MALFORMED)} malformed inputs report in-token positions")


def test_criterion_9_determinism():
    cmd = [sys.executable, "-m", "hh_bounds", "verify", "--cases", "50",
           "--seed", "7", "--output", "json"]
    a = subprocess.run(cmd, capture_output=True, text=True)
    b = subprocess.run(cmd, capture_output=True, text=True)
    assert a.returncode == 0, a.stderr
    assert b.returncode == 0
    assert a.stdout == b.stdout
    assert json.loads(a.stdout)["all_pass"] is True
    _report(9, "verify --cases 50 --seed 7 twice: byte-identical json, all pass")
