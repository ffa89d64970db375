"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line (visible with
``-s``) and the lines are repeated in the terminal summary.
"""
import time

import numpy as np
import pytest

from gyrokit import (
    ElementSubset,
    Permutation,
    check_corollary,
    classify_normal,
    classify_subgyrogroup,
    construct,
    double,
    enumerate_normals,
    enumerate_subgyrogroups,
    generate_normal_candidates,
    induced,
    is_degenerate,
    is_normal,
    kernel,
    quotient,
    subgyrogroups_by_generators,
    verify_axioms,
)
from gyrokit.errors import IllDefinedProduct
from gyrokit.catalog import K1_TABLE, data_text, fixture, golden_gyrations, golden_normals, golden_table
from gyrokit.fileformat import parse_table, serialize_table

import oracles

pytestmark = pytest.mark.acceptance

RESULTS = {}


def record(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[number] = line
    print(line)
    assert ok, line


def timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - start


def test_criterion_01_axioms_and_gyrations():
    (G, report), secs = timed(lambda: (construct(K1_TABLE), verify_axioms(K1_TABLE)))
    A = Permutation.from_cycles(8, [(4, 5), (6, 7)])
    in_IA = {G.gyr(a, b) for a in range(8) for b in range(8)} == {Permutation.identity(8), A}
    exact = np.array_equal(G.gyr_array, golden_gyrations("K1"))
    ok = report.valid and in_IA and exact and secs < 1.0
    record(1, ok, f"valid={report.valid} gyrations_exact={exact} values_in_IA={in_IA} {secs:.3f}s")


def test_criterion_02_doubling_fidelity():
    K1 = construct(K1_TABLE)
    D, secs = timed(lambda: double(K1))
    A = Permutation.from_cycles(16, [(4, 5), (6, 7), (12, 13), (14, 15)])
    ops = int((D.whole.table.entries == golden_table("K2").entries).sum())
    gyrs = int((D.whole.gyr_array == golden_gyrations("K2")).all(axis=2).sum())
    distinct = set(D.whole.distinct_gyrations) == {Permutation.identity(16), A}
    ok = ops == 256 and gyrs == 256 and distinct and secs < 1.0
    record(2, ok, f"operation entries {ops}/256, gyration entries {gyrs}/256, {secs:.3f}s")


def test_criterion_03_normal_enumeration():
    diffs = {}
    secs = {}
    for name in ("K1", "K2"):
        G = construct(golden_table(name))
        got, secs[name] = timed(lambda: enumerate_normals(G))
        want = list(golden_normals(name).sets)
        diffs[name] = (len(got), len(want), got == want)
    ok = diffs["K1"] == (6, 6, True) and diffs["K2"] == (19, 19, True) and secs["K2"] < 10.0
    record(3, ok, f"K1 {diffs['K1']}, K2 {diffs['K2']}, K2 scan {secs['K2']:.3f}s")


def test_criterion_04_normal_round_trip():
    D = double(construct(K1_TABLE))
    candidates = set(generate_normal_candidates(D))
    normals = enumerate_normals(D.whole)
    same = candidates == set(normals)
    covered = 0
    for M in normals:
        r = classify_normal(D, M)
        if r.clauses and all(r.reassemble(c) == M for c in r.clauses):
            covered += 1
    ok = same and covered == len(normals) == 19
    record(4, ok, f"candidates==normals {same}, classified and reassembled {covered}/{len(normals)}")


def test_criterion_05_subgyrogroup_completeness():
    D = double(construct(K1_TABLE))
    brute = oracles.brute_subgyrogroups(D.whole.table.rows())
    covered = 0
    for elems in brute:
        B = ElementSubset.of(sorted(elems), 16)
        r = classify_subgyrogroup(D, B)
        if r.clauses and r.clauses <= {"a", "b", "c"} and all(r.reassemble(c) == B for c in r.clauses):
            covered += 1
    agrees = oracles.canonical(brute) == [frozenset(s.elements()) for s in enumerate_subgyrogroups(D.whole)]
    ok = covered == len(brute) and agrees
    record(5, ok, f"classified and reassembled {covered}/{len(brute)}, scan agrees with brute force {agrees}")


def test_criterion_06_corollary():
    K1 = construct(K1_TABLE)
    parts = []
    ok = True
    for label, D in (("double(K1)", double(K1)), ("double(K2)", double(double(K1).whole))):
        rep = check_corollary(D)
        T = D.whole.table.rows()
        # independent triple-coset check of the same subsets
        brute = all(oracles.brute_is_normal(T, set(c.subset.elements())) for c in rep.checks)
        plus = oracles.brute_is_normal(T, set(range(D.n)))
        ok &= rep.passed and brute and plus
        parts.append(f"{label} {len(rep.checks)} checks passed={rep.passed} oracle={brute and plus}")
    record(6, ok, "; ".join(parts))


def _quotient_kernel_is(G, H):
    try:
        _, proj = quotient(G, H, check_normal=False)
    except IllDefinedProduct:
        return False
    return kernel(proj) == H


def test_criterion_07_normality_vs_kernels():
    K1 = construct(K1_TABLE)
    K2 = double(K1).whole
    total = agree = normal_count = 0
    for G in (K1, K2):
        T = G.table.rows()
        for H in enumerate_subgyrogroups(G):
            crit = is_normal(G, H)
            total += 1
            normal_count += crit
            agree += crit == oracles.brute_is_normal(T, set(H.elements())) == _quotient_kernel_is(G, H)
    ok = total == agree == 10 + 35
    record(7, ok, f"agreement on {agree}/{total} subgyrogroups ({normal_count} normal)")


def test_criterion_08_degeneracy():
    flags = {name: not is_degenerate(fixture(name).gyrogroup) for name in ("K1", "K2", "K3")}
    mismatches = 0
    for name in ("K1", "K2"):
        G = fixture(name).gyrogroup
        g = golden_normals(name)
        mismatches += sum((not is_degenerate(induced(G, S))) != bold for S, bold in zip(g.sets, g.nondegenerate))
    ok = all(flags.values()) and mismatches == 0
    record(8, ok, f"nondegenerate {flags}, bolding mismatches {mismatches}")


def test_criterion_09_scale():
    def build_and_check():
        K2 = double(construct(K1_TABLE)).whole
        D = double(K2)
        return D, verify_axioms(D.whole.table).valid, check_corollary(D).passed

    (D, valid, corollary), secs = timed(build_and_check)
    K3 = D.whole
    same_as_fixture = K3.table == fixture("K3").gyrogroup.table
    generated, complete = subgyrogroups_by_generators(K3, 3)
    generated_normals = {S for S in generated if is_normal(K3, S)}
    candidates = set(generate_normal_candidates(D))
    all_normal = all(is_normal(K3, M) for M in candidates)
    sub = generated_normals <= candidates
    sup = candidates & set(generated) <= generated_normals
    ok = valid and corollary and secs < 30.0 and same_as_fixture and all_normal and sub and sup
    record(
        9,
        ok,
        f"order {K3.order} valid={valid} corollary={corollary} {secs:.2f}s; "
        f"{len(candidates)} candidates, {len(generated_normals)} generated normals "
        f"(generation complete={complete}), round trip {sub and sup and all_normal}",
    )


def test_criterion_10_format_round_trip():
    identity = all(serialize_table(parse_table(data_text(f))) == data_text(f) for f in ("K1.gyro", "K2.gyro"))
    doubled = serialize_table(double(construct(K1_TABLE)).whole.table).encode()
    byte_equal = doubled == data_text("K2.gyro").encode()
    record(10, identity and byte_equal, f"parse-serialize identity {identity}, doubled K1 byte-equal {byte_equal}")
