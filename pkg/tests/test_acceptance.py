"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -s` to see the summary lines as
they are produced; without -s they appear in failure reports only.
"""
from __future__ import annotations

import io
import random
import time
from contextlib import redirect_stdout
from itertools import combinations

from oracles import naive_search, power_coefficients
from sumdiam.cli import main
from sumdiam.constructions import (
    add_isolated,
    add_vertex,
    bk_set,
    disjoint_union_scaled,
    disjoint_union_translated,
    is_bk_set,
    ispum_cycle_odd,
    ispum_matching,
    join,
    modify,
    sd_general,
    sd_path,
    spum_cycle4,
    spum_matching,
    spum_path_even,
)
from sumdiam.core import (
    SimpleGraph,
    graph,
    induce,
    isd_lower_bound,
    labeling,
    sd_lower_bound,
)
from sumdiam.families import FamilyKind, FamilySpec, generate
from sumdiam.hypergraph import hyper_general, hypergraph, induce_hyper
from sumdiam.search import (
    reproduce_table,
    search_isd,
    search_ispum,
    search_sd,
    search_spum,
)

K2 = graph(2, [(0, 1)])
P3 = graph(3, [(0, 1), (1, 2)])
K3 = graph(3, [(0, 1), (0, 2), (1, 2)])
TWO_K2 = graph(4, [(0, 1), (2, 3)])
P4 = graph(4, [(0, 1), (1, 2), (2, 3)])
STAR4 = graph(4, [(0, 1), (0, 2), (0, 3)])
C4 = graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
PAW = graph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
DIAMOND = graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
K4 = graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])

ALL_SMALL = (K2, P3, K3, TWO_K2, P4, STAR4, C4, PAW, DIAMOND, K4)

TABLE1 = {
    3: ((1, 2, 3, 4), 3),
    4: ((1, 2, 3, 4, 6), 5),
    5: ((1, 2, 4, 5, 6, 8), 7),
    6: ((1, 2, 4, 5, 7, 9, 10), 9),
    7: ((1, 2, 4, 6, 7, 9, 12, 13), 12),
    8: ((1, 2, 4, 6, 7, 9, 12, 15, 16), 15),
    9: ((1, 2, 4, 5, 8, 12, 15, 17, 18, 20), 19),
    10: ((1, 3, 5, 7, 9, 11, 13, 15, 16, 17, 20), 19),
    11: ((1, 3, 5, 7, 9, 11, 13, 15, 16, 17, 19, 24), 23),
    12: ((1, 3, 5, 7, 9, 11, 13, 15, 17, 19, 20, 21, 24), 23),
}
TABLE2 = {
    4: ((-10, -9, -8, -6, -5, -4, -3), 7),
    5: ((-3, -2, -1, 1, 2), 5),
    6: ((-5, -3, -2, -1, 2, 3), 8),
    7: ((-7, -5, -4, -3, 1, 2, 4), 11),
    8: ((-11, -10, -8, -7, -3, -1, 1, 3), 14),
    9: ((-9, -8, -7, -4, -2, 1, 2, 4, 8), 17),
    10: ((-13, -12, -10, -9, -4, -3, -2, 2, 3, 4), 17),
}


def _finish(name: str, failures: list[str], elapsed: float, limit: float) -> None:
    if elapsed > limit:
        failures.append(f"took {elapsed:.1f}s > {limit:.0f}s")
    verdict = "PASS" if not failures else "FAIL (" + "; ".join(failures) + ")"
    print(f"ACCEPTANCE {name}: {verdict}")
    assert not failures, f"{name}: {'; '.join(failures)}"


def _run_cli(*argv) -> str:
    out = io.StringIO()
    with redirect_stdout(out):
        code = main(list(argv))
    assert code == 0, out.getvalue()
    return out.getvalue()


def _random_graph(rng: random.Random, n: int) -> SimpleGraph:
    pool = list(combinations(range(n), 2))
    while True:
        edges = [e for e in pool if rng.random() < 0.5]
        g = graph(n, edges)
        if edges and not g.isolated_vertices():
            return g


def _random_hyper(rng: random.Random, n: int, k: int):
    pool = list(combinations(range(n), k))
    while True:
        edges = [e for e in pool if rng.random() < 0.5] or [rng.choice(pool)]
        h = hypergraph(n, k, edges)
        if not h.isolated_vertices():
            return h


def test_1_table_spum_paths():
    start = time.perf_counter()
    failures: list[str] = []
    out = _run_cli("table", "--name", "spum-paths", "--to", "12", "--format", "csv")
    expected = "".join(
        f'{n},"{",".join(str(v) for v in labels)}",{value}\n'
        for n, (labels, value) in sorted(TABLE1.items())
    )
    if out != expected:
        failures.append(f"table output mismatch: {out!r}")
    _finish("table-spum-paths", failures, time.perf_counter() - start, 600)


def test_2_table_ispum_cycles():
    start = time.perf_counter()
    failures: list[str] = []
    rows = reproduce_table("ispum-cycles", 10)
    for row in rows:
        labels, value = TABLE2[row.n]
        if row.value != value:
            failures.append(f"n={row.n}: value {row.value} != {value}")
        if row.labels != labels:
            failures.append(f"n={row.n}: witness {row.labels} != {labels}")
    _finish("table-ispum-cycles", failures, time.perf_counter() - start, 900)


def test_3_theorem_values():
    start = time.perf_counter()
    failures: list[str] = []

    def check(kind: str, got: int | None, want: int) -> None:
        if got != want:
            failures.append(f"{kind} = {got}, expected {want}")

    for n in range(4, 9):
        cycle = generate(FamilySpec(FamilyKind.CYCLE, n))
        cert = search_spum(cycle, 3 if n == 4 else 2)
        check(f"spum(cycle:{n})", cert.value, 2 * n - 1)
    for p in range(1, 5):
        m = generate(FamilySpec(FamilyKind.MATCHING, p))
        check(f"spum(matching:{p})", search_spum(m, 1).value, 4 * p - 2)
        want = {1: 1, 2: 4}.get(p, 4 * p - 3)
        check(f"ispum(matching:{p})", search_ispum(m, 0).value, want)
    for n in range(2, 6):
        comp = generate(FamilySpec(FamilyKind.COMPLETE, n))
        check(f"sd(complete:{n})", search_sd(comp).value, 4 * n - 6)
    for n, want in ((2, 1), (3, 2), (4, 10)):
        comp = generate(FamilySpec(FamilyKind.COMPLETE, n))
        check(f"isd(complete:{n})", search_isd(comp).value, want)
    for n in range(3, 8):
        path = generate(FamilySpec(FamilyKind.PATH, n))
        want = 2 * n - 3 if n <= 6 else 2 * n - 2
        check(f"sd(path:{n})", search_sd(path).value, want)
    _finish("theorem-values", failures, time.perf_counter() - start, 300 * 23)


def test_4_construction_sweep():
    start = time.perf_counter()
    failures: list[str] = []
    dense = list(range(1, 101)) + [2**k for k in range(7, 14)]

    def sweep(name, maker, formula, domain):
        for n in dense:
            if not domain(n):
                continue
            report = maker(n)
            if not report.valid:
                failures.append(f"{name}({n}) invalid")
            if report.achieved_range != formula(n):
                failures.append(
                    f"{name}({n}) range {report.achieved_range} != {formula(n)}"
                )

    sweep("spum-path-even", spum_path_even, lambda n: 2 * n - 1,
          lambda n: n >= 4 and n % 2 == 0)
    sweep("sd-path", sd_path, lambda n: 2 * n - 2, lambda n: n >= 3)
    sweep("spum-matching", spum_matching, lambda n: 4 * n - 2, lambda n: n >= 1)
    sweep("ispum-matching", ispum_matching, lambda n: 4 * n - 3, lambda n: n >= 3)
    # the odd-cycle construction needs odd n; take odd neighbors of the powers
    for n in [n for n in range(15, 101, 2)] + [2**k + 1 for k in range(7, 14)]:
        report = ispum_cycle_odd(n)
        if not report.valid or report.achieved_range != 8 * (n - 9):
            failures.append(f"ispum-cycle-odd({n}) failed")
    report = spum_cycle4()
    if not report.valid or report.achieved_range != 7:
        failures.append("spum-cycle4 failed")
    _finish("construction-sweep", failures, time.perf_counter() - start, 60)


def test_5_general_constructions():
    start = time.perf_counter()
    failures: list[str] = []
    rng = random.Random(50909)
    for i in range(200):
        g = _random_graph(rng, rng.randint(2, 8))
        report = sd_general(g)
        bound = 64 * g.n * g.n - 64 * g.n + 9
        result = induce(report.labeling)
        if not report.valid or result.isolate_count != len(g.edges):
            failures.append(f"sd_general sample {i} re-induction failed")
        if report.achieved_range > bound:
            failures.append(f"sd_general sample {i} range > {bound}")
    for i in range(100):
        k = rng.choice((3, 4))
        h = _random_hyper(rng, rng.randint(k, 6), k)
        report = hyper_general(h)
        result = induce_hyper(report.labeling, k)
        if not report.valid or result.isolate_count != len(h.edges):
            failures.append(f"hyper_general sample {i} re-induction failed")
        if report.achieved_range > report.claimed_range_bound:
            failures.append(f"hyper_general sample {i} exceeded claimed bound")
    _finish("general-constructions", failures, time.perf_counter() - start, 120)


def test_6_combinator_suite():
    start = time.perf_counter()
    failures: list[str] = []
    pool = [
        (labeling([1, 2, 3]), K2),
        (labeling([1, 2, 3, 4]), P3),
        (labeling([1, 2, 3, 4, 6]), P4),
        (spum_cycle4().labeling, C4),
        (search_spum(K3, 2).witness, K3),
    ]

    def note(tag, report):
        if not report.valid:
            failures.append(f"{tag} invalid")
        if report.achieved_range > report.claimed_range_bound:
            failures.append(f"{tag} exceeded claimed bound")

    for lab1, g1 in pool:
        for lab2, g2 in pool:
            note("union-scaled", disjoint_union_scaled(lab1, g1, lab2, g2))
            note("union-translated", disjoint_union_translated(lab1, g1, lab2, g2))
            note("join", join(lab1, g1, lab2, g2))
    for lab, g in pool:
        for k in (1, 3, 8):
            report = add_isolated(lab, g, k)
            note(f"add-isolated k={k}", report)
            if induce(report.labeling).isolate_count < k:
                failures.append(f"add-isolated k={k} produced too few isolates")
        for neighbors in ([0], list(range(g.n))):
            note("add-vertex", add_vertex(lab, g, neighbors))
    ran = {op: 0 for op in ("delete-vertex", "induced-subgraph", "delete-edge",
                            "contract-edge", "add-edge")}
    for lab, g in pool:
        for v in range(g.n):
            for op, kwargs in (
                ("delete-vertex", {"vertex": v}),
                ("induced-subgraph", {"vertices": [u for u in range(g.n) if u != v]}),
            ):
                try:
                    report = modify(lab, g, op, **kwargs)
                except ValueError:
                    continue
                note(f"modify-{op}", report)
                ran[op] += 1
        for u, v in combinations(range(g.n), 2):
            present = (u, v) in g.edges
            for op in (("delete-edge", "contract-edge") if present else ("add-edge",)):
                try:
                    report = modify(lab, g, op, edge=(u, v))
                except ValueError:
                    continue
                note(f"modify-{op}", report)
                ran[op] += 1
    for op, count in ran.items():
        if count == 0:
            failures.append(f"modify op {op} never ran")
    _finish("combinator-suite", failures, time.perf_counter() - start, 60)


def test_7_property_suites():
    start = time.perf_counter()
    failures: list[str] = []
    rng = random.Random(70091)

    # scale and negation invariance; max-label isolation for positive sets
    for i in range(1000):
        size = rng.randint(2, 12)
        if i % 2 == 0:
            labels = sorted(rng.sample(range(1, 80), size))
        else:
            labels = sorted(rng.sample(range(-40, 40), size))
        base = induce(labeling(labels))
        c = rng.choice((2, 3, 7))
        scaled = induce(labeling([c * v for v in labels]))
        if scaled.graph.edges != base.graph.edges:
            failures.append(f"scale invariance broke on {labels}")
            break
        negated = induce(labeling([-v for v in labels]))
        flip = {i: size - 1 - i for i in range(size)}
        remapped = {tuple(sorted((flip[u], flip[v]))) for u, v in negated.graph.edges}
        if remapped != set(base.graph.edges):
            failures.append(f"negation invariance broke on {labels}")
            break
        if labels[0] >= 1:
            deg = base.graph.degrees()
            if deg[size - 1] != 0:
                failures.append(f"max label not isolated in {labels}")
                break

    # naive-enumerator equivalence of all four searches on all n <= 4 graphs
    certs = []
    for g in ALL_SMALL:
        cap = 10 if g is K4 else 8
        edges = list(g.edges)
        for sigma in (1, 2):
            cert = search_spum(g, sigma, max_range=cap)
            naive = naive_search("spum", g.n, edges, sigma=sigma, max_range=cap)
            got = (cert.value, cert.witness.labels if cert.witness else None)
            if got != naive:
                failures.append(f"spum sigma={sigma} mismatch on {edges}: {got} != {naive}")
            certs.append((g, "spum", cert))
        for zeta in (0, 1):
            cert = search_ispum(g, zeta, max_range=cap)
            naive = naive_search("ispum", g.n, edges, zeta=zeta, max_range=cap)
            got = (cert.value, cert.witness.labels if cert.witness else None)
            if got != naive:
                failures.append(f"ispum zeta={zeta} mismatch on {edges}: {got} != {naive}")
            certs.append((g, "ispum", cert))
        for kind, runner in (("sd", search_sd), ("isd", search_isd)):
            cert = runner(g, max_range=cap)
            naive = naive_search(kind, g.n, edges, max_range=cap)
            got = (cert.value, cert.witness.labels if cert.witness else None)
            if got != naive:
                failures.append(f"{kind} mismatch on {edges}: {got} != {naive}")
            certs.append((g, kind, cert))

    # lower-bound consistency on every searched instance above
    for g, kind, cert in certs:
        if cert.value is None:
            continue
        floor = sd_lower_bound(g) if kind in ("spum", "sd") else isd_lower_bound(g)
        if cert.value < floor:
            failures.append(f"{kind} value {cert.value} below bound {floor}")

    # determinism under jobs in {1, 4}
    p6 = generate(FamilySpec(FamilyKind.PATH, 6))
    c6 = generate(FamilySpec(FamilyKind.CYCLE, 6))
    checks = (
        (lambda j: search_spum(p6, 1, jobs=j)),
        (lambda j: search_ispum(c6, 0, jobs=j)),
        (lambda j: search_sd(p6, jobs=j)),
        (lambda j: search_isd(K4, jobs=j)),
        (lambda j: reproduce_table("spum-paths", 6, jobs=j)),
    )
    for i, runner in enumerate(checks):
        if runner(1) != runner(4):
            failures.append(f"jobs determinism check {i} differed")
    _finish("property-suites", failures, time.perf_counter() - start, 300)


def test_8_bk_certification():
    start = time.perf_counter()
    failures: list[str] = []
    if is_bk_set((1, 2, 3), 3):
        failures.append("certifier accepted {1,2,3} as a B_3 set")
    for k in (2, 3, 4):
        for n in range(1, 13):
            elements = bk_set(n, k).elements
            if not is_bk_set(elements, k):
                failures.append(f"certifier rejected its own B_{k} set of size {n}")
            coeffs = power_coefficients(elements, k)
            limit = 1
            for i in range(2, k + 1):
                limit *= i
            if any(c > limit for c in coeffs.values()):
                failures.append(f"expansion found coefficient > {k}! for n={n}, k={k}")
    _finish("bk-certification", failures, time.perf_counter() - start, 60)
