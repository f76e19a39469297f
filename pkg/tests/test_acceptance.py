"""Acceptance criteria 1 to 10, one test each.

Every test records a one-line verdict; ``conftest.py`` prints the lines at the
end of the session.  Run this file directly for the lines alone.
"""

import time

import pytest

from ogspi.harness import SUITES, run_suite

RESULTS = {}


def record(n, ok, what):
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {what}"
    RESULTS[n] = line
    print(line)
    return ok


def summary(report):
    c = {s: report.count(s) for s in ("pass", "fail", "inconclusive", "info")}
    bad = [f"[{it.index}] {it.label}: {it.detail}" for it in report.items
           if it.status in ("fail", "inconclusive")]
    return f"{c['pass']} pass, {c['fail']} fail, {c['inconclusive']} open" + \
        ("".join("\n      " + b for b in bad[:5]))


def gate(n, name, params, what, expect_items):
    r = run_suite(name, params)
    for k, v in params.items():
        assert r.params[k] == v
    ok = r.outcome == "pass" and len(r.items) == expect_items
    assert record(n, ok, f"{what} ({summary(r)})"), summary(r)
    return r


def test_1_aogs_matches_output_prioritised_pi():
    t0 = time.perf_counter()
    r = run_suite("aogs-pi-op", {"count": 25, "size": 6, "depth": 3})
    took = time.perf_counter() - t0
    ok = r.outcome == "pass" and len(r.items) == 25 and took < 60
    assert record(1, ok, f"AOGS = πI output-prioritised, 25 terms, depth 3, {took:.1f}s "
                         f"({summary(r)})"), summary(r)


def test_2_cogs_matches_standard_pi():
    gate(2, "cogs-pi", {"count": 25, "size": 6, "depth": 3},
         "COGS = πI standard, 25 terms, depth 3", 25)


def test_3_wb_filter():
    gate(3, "wb-filter", {"count": 25, "depth": 4},
         "WBOGS = AOGS filtered by the pushdown, 25 terms, depth 4", 25)


def test_4_complete_iff_strongly_passive():
    gate(4, "complete-iff-sp", {"count": 25, "depth": 3},
         "complete traces = strongly passive endpoints, three LTSs, depth 3", 25)


def test_5_tensor_interleaving():
    gate(5, "tensor-interleave", {"count": 10, "depth": 4},
         "tensor traces = interleavings, 10 pairs, depth 4", 10)


def test_6_beta_v():
    gate(6, "beta-v", {"count": 25, "depth": 4}, "βv through the encoding, 25 redexes, depth 4",
         25)


def test_7_complete_trace_coincidence():
    gate(7, "ct-coincide", {"count": 20, "depth": 4},
         "AOGS/COGS/WBOGS complete-trace verdicts agree, 20 pairs, depth 4", 20)


def test_8_enf_vs_ogs():
    # inconclusive items are ignored by this criterion, failures are not
    r = run_suite("enf-vs-ogs", {"count": 20, "depth": 3})
    decided = r.count("pass")
    ok = not r.failed and len(r.items) == 20 and decided > 0
    assert record(8, ok, f"enf-bisimulation agrees with COGS bisimulation, 20 pairs, depth 3 "
                         f"({summary(r)})"), summary(r)


def test_9_counterexamples():
    r = run_suite("counterexamples")
    gating = [it for it in r.items if it.status != "info"]
    ok = len(gating) == 2 and all(it.status == "pass" for it in gating)
    info = [f"{it.label}: {it.detail}" for it in r.items if it.status == "info"]
    assert record(9, ok, f"swap pair equivalent at 5, AOGS pair distinguished at 4; "
                         f"{'; '.join(info)}"), summary(r)


def test_10_determinism():
    diff = [name for name in sorted(SUITES)
            if run_suite(name).dumps() != run_suite(name).dumps()]
    assert record(10, not diff, f"{len(SUITES)} suite reports byte-identical across two runs"
                  + (f", differing: {', '.join(diff)}" if diff else "")), diff


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
