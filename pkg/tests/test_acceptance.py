"""The thirteen acceptance criteria, one test each.

A line per criterion is printed in the terminal summary (see conftest.py).
"""

import random
import time
from collections import Counter

import pytest

from houghton.complex import (RegionSpec, enumerate_region, window_top)
from houghton.core import (chi_component, compose, deficiency_f, generator_t, identity)
from houghton.fixtures import CLASSICAL
from houghton.harness import ALL_CHECKS, ExperimentConfig, run, stability_sweep
from houghton.homology import IntegerMatrix, acyclicity_bound, reduced_homology, smith_normal_form
from houghton.morse import descending_link

from oracles import as_function, naive_snf, random_injection, window_f

CHI2 = (-1, 0)
CHI3 = (-1, -1, 0)


@pytest.fixture(scope="module")
def report2():
    # W = 3: the smallest window past the sweep's first size with identical core components
    return run(ExperimentConfig(n=2, chi=CHI2, window=3, checks=ALL_CHECKS, name="acceptance-n2"))


@pytest.fixture(scope="module")
def report3():
    return run(ExperimentConfig(n=3, chi=CHI3, window=2, checks=ALL_CHECKS, jobs=4,
                                name="acceptance-n3"))


def passed(rep, name):
    c = rep.check(name)
    return c["status"] == "pass", c


def test_criterion_1_classical_homology(record_property):
    t0 = time.perf_counter()
    bad = []
    for name, (build, betti, torsion) in CLASSICAL.items():
        H = reduced_homology(build(), max_degree=len(betti) - 1)
        if (H.betti, H.torsion) != (betti, torsion):
            bad.append(name)
    dt = time.perf_counter() - t0
    record_property("detail", f"{len(CLASSICAL)} fixtures, {dt:.2f}s")
    assert not bad and dt < 1.0


def test_criterion_2_snf_oracle(record_property):
    rng = random.Random(2024)
    t0 = time.perf_counter()
    for _ in range(200):
        r, c = rng.randint(1, 10), rng.randint(1, 10)
        A = [[rng.randint(-5, 5) for _ in range(c)] for _ in range(r)]
        factors, _ = smith_normal_form(IntegerMatrix.from_dense(A))
        assert factors == naive_snf(A), A
    dt = time.perf_counter() - t0
    record_property("detail", f"200 matrices, {dt:.2f}s")
    assert dt < 10


def test_criterion_3_monoid_laws(record_property):
    rng = random.Random(3)
    t0 = time.perf_counter()
    count = 0
    while count < 1000:
        n, W = rng.randint(1, 4), rng.randint(2, 6)
        a, b = random_injection(rng, n, W), random_injection(rng, n, W)
        f = as_function(a, 3 * W)
        assert len(set(f.values())) == len(f)
        assert deficiency_f(a) == sum(a.translations) == window_f(a)
        ab = compose(a, b)
        for i in range(1, n + 1):
            assert chi_component(ab, i) == chi_component(a, i) + chi_component(b, i)
            up = compose(generator_t(i, n), a)
            for j in range(1, n + 1):
                assert chi_component(up, j) - chi_component(a, j) == (i == j)
            assert deficiency_f(up) == deficiency_f(a) + 1
        count += 1
    dt = time.perf_counter() - t0
    record_property("detail", f"{count} injections, {dt:.1f}s")
    assert dt < 30


def test_criterion_4_flag_links(report2, report3, record_property):
    ok2, c2 = passed(report2, "flag")
    ok3, c3 = passed(report3, "flag")
    record_property("detail", f"n=2: {c2['tested']} links, n=3: {c3['tested']} links")
    assert ok2 and ok3 and c2["tested"] and c3["tested"]


def test_criterion_5_blanket_convexity(report2, report3, record_property):
    ok2, c2 = passed(report2, "blanket_convexity")
    ok3, c3 = passed(report3, "blanket_convexity")
    record_property("detail", f"n=2: {c2['tested']}, n=3: {c3['tested']} vertex/blanket pairs")
    assert ok2 and ok3 and c3["tested"]


def test_criterion_6_blanket_intersections(report2, report3, record_property):
    ok2, _ = passed(report2, "blanket_intersections")
    ok3, c3 = passed(report3, "blanket_intersections")
    sweep = stability_sweep(ExperimentConfig(n=2, chi=CHI2, checks=("region", "blanket_intersections")),
                            [2, 3])
    record_property("detail", f"n=3: {c3['intersections']} intersections; sweep stable={sweep['stable']}")
    assert ok2 and ok3 and sweep["passed"] and sweep["stable"]


def _descending_sample(n, spec, seeds, levels, need):
    X = enumerate_region(seeds, spec)
    tested, bounds = 0, Counter()
    for v in X.vertices:
        if deficiency_f(v) not in levels:
            continue
        L = descending_link(X, None, v)          # refuses truncated vertices
        H = reduced_homology(L, need)
        b = acyclicity_bound(H, cap=need)
        assert not L.is_empty() and b >= need, v
        tested += 1
        bounds[b] += 1
    return tested


def test_criterion_7_f_descending_links(record_property):
    n2 = _descending_sample(2, RegionSpec(2, window=3, f_bound=6), [identity(2)], {4, 5, 6}, 0)
    spec3 = RegionSpec(3, window=(3, 2, 2), f_bound=7, f_floor=3)
    n3 = _descending_sample(3, spec3, [window_top(spec3)], {6, 7}, 1)
    record_property("detail", f"n=2: {n2} vertices, n=3: {n3} vertices")
    assert n2 >= 50 and n3 >= 20


def test_criterion_8_ascending_links(report2, report3, record_property):
    ok2, c2 = passed(report2, "ascending_links")
    ok3, c3 = passed(report3, "ascending_links")
    record_property("detail", f"n=2: {c2['tested']} nonempty, n=3: {c3['tested']} connected")
    assert ok2 and ok3 and c3["tested"] and c2["tested"]


def test_criterion_9_cover(report2, report3, record_property):
    ok2, _ = passed(report2, "cover")
    ok3, c3 = passed(report3, "cover")
    record_property("detail", f"n=3: {c3['pieces']} pieces over {report3.region['vertices']} vertices")
    assert ok2 and ok3
    ctx = report3.context
    assert set().union(*(p.vertices for p in ctx.pieces)) == set(ctx.region.vertices)


def test_criterion_10_strong_nerve(report3, record_property):
    ok, c = passed(report3, "strong_nerve")
    record_property("detail", f"{c['checked']} intersections; region H~ {c['region']['betti']}, "
                              f"nerve H~ {c['nerve']['betti']}")
    assert ok and c["region"]["betti"][0] == c["nerve"]["betti"][0]


def test_criterion_11_nerve_not_acyclic(report2, report3, record_property):
    ok2, n2 = passed(report2, "nerve")
    w2 = report2.check("witness")
    ok3, n3 = passed(report3, "nerve")
    w3 = report3.check("witness")
    record_property("detail", f"n=2: {n2['counts'][0]} nerve vertices, H~0={n2['betti'][0]}; "
                              f"n=3: H~1={n3['betti'][1]}")
    assert ok2 and n2["counts"][0] >= 2 and n2["betti"][0] > 0 and w2["status"] == "pass"
    assert ok3 and n3["betti"][1] > 0 and w3["status"] == "pass"
    wit = w3["witness"]
    assert len(wit["sphere_facets"]) == 4 and all(s > 0 for s in wit["intersections"].values())


def test_criterion_12_germ_certificate(report2, report3, record_property):
    ok2, _ = passed(report2, "germ")
    ok3, c3 = passed(report3, "germ")
    record_property("detail", f"n=3: {c3['edges']} edges checked")
    assert ok2 and ok3


def test_criterion_13_determinism(record_property):
    cfgs = [ExperimentConfig(n=2, chi=CHI2, window=3, checks=ALL_CHECKS, jobs=j) for j in (1, 4)]
    a, b = (run(c).to_json() for c in cfgs)
    record_property("detail", f"{len(a)} bytes, jobs 1 vs 4")
    assert a == b
