"""Acceptance criteria, one test per criterion; each prints a PASS/FAIL line."""
import math
import random
import time

import numpy as np
import pytest

from projmono.classify import classify_point, cone_check
from projmono.corpus import (CORPUS_CENTERS, load_family, load_points, load_poly,
                             random_rational_point, tangent_quadric_family)
from projmono.errors import CertificationFailure, NumericalFailure
from projmono.focal import focal_poly, tangency_focus_check
from projmono.groups import PermGroup, classify as group_flags
from projmono.monodromy import base_fiber, build_loops, loop_permutation, monodromy_generators
from projmono.pencil import branch_points, build_pencil, make_center
from projmono.scalars import QQi

from conftest import record
from oracles import as_block_sets, group_oracle, radical_oracle, random_gens, winding

pytestmark = pytest.mark.acceptance


def pt(*xs):
    return [QQi(x) for x in xs]


def random_center(rng, f, span=9):
    while True:
        P = [QQi(rng.randint(-span, span), rng.randint(-span, span)) for _ in range(f.num_vars)]
        if any(P):
            try:
                make_center(f, P)
                return P
            except Exception:
                continue


def test_criterion_01_fermat_galois_point():
    f = load_poly("fermat_quartic")
    t0 = time.perf_counter()
    rep = classify_point(f, pt(1, 0, 0))
    elapsed = time.perf_counter() - t0
    chart = build_pencil(f, make_center(f, pt(1, 0, 0)))
    bps = branch_points(chart)
    system = build_loops(bps)
    fiber = base_fiber(chart, system.base_t)
    oracle_ok = True
    for loop in system.loops:
        got = loop_permutation(chart, loop, fiber, bp=bps[loop.branch_index]).permutation
        oracle_ok &= got == radical_oracle(fiber, winding(lambda t: 1 + t ** 4, loop.vertices), 4)
    gens = [tuple(int(x) - 1 for x in g) for g in rep.per_section[0].generators]
    cyclic = any(len(PermGroup(4, [g]).orbit(0)) == 4 for g in gens)
    ok = (oracle_ok and rep.order == 4 and cyclic and rep.galois is True
          and rep.decomposable is True and rep.verdict == "non_uniform" and elapsed < 5)
    assert record(1, ok, f"order={rep.order} cyclic={cyclic} galois={rep.galois} "
                         f"decomposable={rep.decomposable} verdict={rep.verdict} "
                         f"radicals_match={oracle_ok} time={elapsed:.2f}s")


def test_criterion_02_prime_degree():
    t0 = time.perf_counter()
    rep = classify_point(load_poly("fermat_quintic"), pt(1, 0, 0))
    elapsed = time.perf_counter() - t0
    blocks = rep.per_section[0].flags["block_systems"]
    ok = rep.order == 5 and rep.galois is True and rep.decomposable is False and not blocks \
        and elapsed < 10
    assert record(2, ok, f"order={rep.order} galois={rep.galois} decomposable={rep.decomposable} "
                         f"blocks={blocks} time={elapsed:.2f}s")


SURFACE_CENTERS = {
    "cone_fermat_quartic": [(1, 0, 0, 1), (1, 2, 3, 5)],
    "fermat_quartic_surface": [(1, 0, 0, 0), (1, 2, 3, 5)],
    "generic_quartic_surface": [(1, 2, 3, 5)],
    "quadric": [(1, 2, 3, 5)],
    "asymptotic_cubic": [(1, 2, 3, 5)],
}


def test_criterion_03_cycle_type_certification():
    eligible = certified = failures = 0
    for name, centers in {**CORPUS_CENTERS, **SURFACE_CENTERS}.items():
        f = load_poly(name)
        for P in centers:
            try:
                rep = classify_point(f, pt(*P))
            except CertificationFailure:
                failures += 1
                continue
            for sec in rep.per_section:
                for loop in sec.loops:
                    if loop["status"] == "unclassified (singular)":
                        continue
                    eligible += 1
                    certified += loop["certified"]
    ok = failures == 0 and eligible > 0 and certified == eligible
    assert record(3, ok, f"certified {certified}/{eligible} loops avoiding singular points, "
                         f"{failures} certification failures")


def test_criterion_04_product_identity():
    rng = random.Random(2024)
    names = ["conic", "nodal_cubic", "cuspidal_cubic", "fermat_cubic", "fermat_quartic",
             "fermat_quintic", "generic_quartic"]
    polys = {n: load_poly(n) for n in names}
    good = bad = skipped = 0
    while good + bad < 200:
        f = polys[rng.choice(names)]
        P = random_center(rng, f)
        seed = rng.randrange(10**6)
        try:
            chart = build_pencil(f, make_center(f, P), seed=seed)
            mono = monodromy_generators(chart, seed=seed)
        except CertificationFailure:
            bad += 1
            continue
        except NumericalFailure:
            skipped += 1
            continue
        good += mono.product_check
        bad += not mono.product_check
    ok = bad == 0 and good >= 200
    assert record(4, ok, f"{good} runs with identity product, {bad} violations, "
                         f"{skipped} numerical failures excluded")


def test_criterion_05_generic_uniformity():
    rng = random.Random(7)
    t0 = time.perf_counter()
    curve = load_poly("generic_quartic")
    surface = load_poly("generic_quartic_surface")
    n_curve = sum(classify_point(curve, random_center(rng, curve)).verdict == "uniform"
                  for _ in range(20))
    reports = [classify_point(surface, random_center(rng, surface)) for _ in range(10)]
    n_surf = sum(r.verdict == "uniform" and r.order == 24 for r in reports)
    elapsed = time.perf_counter() - t0
    ok = n_curve == 20 and n_surf == 10 and elapsed < 300
    assert record(5, ok, f"curve {n_curve}/20 uniform, surface {n_surf}/10 uniform, "
                         f"time={elapsed:.1f}s")


def test_criterion_06_cone():
    f = load_poly("cone_fermat_quartic")
    pts = load_points("cone_line_points")
    reports = [classify_point(f, P) for P in pts]
    good = sum(r.verdict == "non_uniform" and all(s.order == 4 for s in r.per_section)
               for r in reports)
    cc = cone_check(f)
    vertex_ok = cc.is_cone and cc.vertex == pt(0, 0, 0, 1)
    ok = len(pts) == 5 and good == 5 and vertex_ok
    assert record(6, ok, f"{good}/{len(pts)} non_uniform with order-4 sections, "
                         f"vertex={[str(x) for x in cc.vertex or []]}")


def test_criterion_07_focal_degree():
    rng = random.Random(11)
    counts = {}
    roots_ok = True
    for name in ("skew_lines", "star", "tangent_quadric"):
        fam = load_family(name)
        good = 0
        for _ in range(50):
            spec = focal_poly(fam, random_rational_point(rng, fam.n))
            good += spec.focal_poly.degree() + spec.degree_drop == fam.n
            roots = sorted((c.center for c in spec.clusters for _ in range(c.multiplicity)),
                           key=lambda z: z.real)
            if name == "skew_lines":
                roots_ok &= len(roots) == 2 and np.allclose(roots, [0, 1], rtol=0, atol=1e-8)
            elif name == "star":
                roots_ok &= spec.multiplicities == [2] and abs(roots[0]) < 1e-8
        counts[name] = good
    ok = all(v == 50 for v in counts.values()) and roots_ok
    assert record(7, ok, f"conservation {counts}, hand-derived roots match={roots_ok}")


def test_criterion_08_tangency_focus():
    rng = random.Random(13)
    quadric = load_poly("quadric")
    fam = tangent_quadric_family(0)
    n_tan = sum(tangency_focus_check(fam, quadric, random_rational_point(rng, 2), tol=1e-6)["ok"]
                for _ in range(20))
    cubic = load_poly("asymptotic_cubic")
    afam = load_family("asymptotic_cubic")
    n_asym = 0
    for _ in range(10):
        out = tangency_focus_check(afam, cubic, random_rational_point(rng, 2), tol=1e-6)
        n_asym += out["asymptotic"] and out["multiplicity"] >= 2
    ok = n_tan == 20 and n_asym == 10
    assert record(8, ok, f"tangency focal root {n_tan}/20, asymptotic multiplicity>=2 {n_asym}/10")


def test_criterion_09_group_oracle():
    rng = random.Random(99)
    agree = 0
    for _ in range(100):
        n = rng.randint(2, 7)
        gens = random_gens(rng, n)
        order, transitive, _, blocks = group_oracle(gens, n)
        G = PermGroup(n, gens)
        same = G.order() == order and G.is_transitive() == transitive
        if same and transitive:
            same = as_block_sets(group_flags(G)["block_systems"]) == blocks
        agree += same
    assert record(9, agree == 100, f"{agree}/100 generator sets agree with brute force")


def test_criterion_10_transposition_evidence():
    offenders, checked = [], 0
    for name, centers in {**CORPUS_CENTERS, **SURFACE_CENTERS}.items():
        f = load_poly(name)
        if f.num_vars > 3 and cone_check(f).is_cone:
            continue
        d = f.degree()
        for P in centers:
            rep = classify_point(f, pt(*P))
            if rep.verdict != "non_uniform":
                continue
            checked += 1
            prime = d > 1 and all(d % k for k in range(2, math.isqrt(d) + 1))
            if not (rep.contains_transposition is True or (rep.order == d and prime)):
                offenders.append(f"{name}@{P}: order {rep.order}")
    ok = not offenders
    assert record(10, ok, f"{checked} non-uniform verdicts checked, offenders: {offenders or 'none'}")
