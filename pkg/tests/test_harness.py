import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ogspi.harness import (SUITES, UnknownSuite, fixture_terms, gen_corpus, gen_pairs,
                           gen_redexes, run_suite, suite_params)
from ogspi.harness.suites import Item, Report
from ogspi.lam.terms import App, Lam, alpha_key, is_value, size, subst


def keys(ts):
    return [alpha_key(t) for t in ts]


def test_corpus_is_deterministic():
    assert keys(gen_corpus(7, 20)) == keys(gen_corpus(7, 20))
    assert keys(gen_corpus(7, 20)) != keys(gen_corpus(8, 20))


def test_fixtures_lead_the_corpus():
    fx = [t for _, t in fixture_terms()]
    corpus = gen_corpus(1, 25)
    assert len(corpus) == 25
    assert keys(corpus[:len(fx)]) == keys(fx)
    assert len(set(keys(corpus))) == 25


@settings(max_examples=15)
@given(st.integers(0, 10_000), st.integers(2, 8))
def test_generated_terms_respect_size(seed, bound):
    n = len(fixture_terms())
    for t in gen_corpus(seed, n + 10, bound)[n:]:
        assert size(t) <= bound


def test_corpus_modes():
    assert len(gen_corpus(1, 12, mode="cbn")) == 12
    with pytest.raises(ValueError):
        gen_corpus(1, 5, mode="lazy")


def test_redexes_are_beta_v_redexes():
    for m in gen_redexes(2, 15):
        assert type(m) is App and type(m.fun) is Lam and is_value(m.arg)
        subst(m.fun.body, m.fun.var, m.arg)


def test_pairs_shape():
    pairs = gen_pairs(4, 10)
    assert len(pairs) == 10
    assert pairs == gen_pairs(4, 10)


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("no-such-suite")
    with pytest.raises(UnknownSuite):
        suite_params("no-such-suite")


def test_params_merge():
    p = suite_params("wb-filter", {"seed": 9, "depth": None, "jobs": 3})
    assert p["seed"] == 9 and p["depth"] == 4 and "jobs" not in p


def test_report_outcomes():
    r = Report("x", {}, [Item(0, "a", "pass"), Item(1, "b", "info")])
    assert r.outcome == "pass" and r.ok
    r.items.append(Item(2, "c", "inconclusive"))
    assert r.outcome == "inconclusive" and r.ok
    r.items.append(Item(3, "d", "fail"))
    assert r.outcome == "fail" and r.failed


@pytest.mark.parametrize("name", ["beta-v", "counterexamples", "alternating-subset"])
def test_report_is_byte_identical(name):
    params = {"count": 6}
    a, b = run_suite(name, params), run_suite(name, params)
    assert a.dumps() == b.dumps()
    data = json.loads(a.dumps())
    assert data["suite"] == name and len(data["items"]) == len(a.items)


def test_parallel_run_matches_serial():
    params = {"count": 8, "seed": 5}
    assert run_suite("cogs-pi", params, jobs=3).dumps() == run_suite("cogs-pi", params).dumps()


def test_every_suite_is_registered_with_defaults():
    for name in SUITES:
        p = suite_params(name)
        assert {"seed", "count", "size", "depth", "fuel"} <= set(p)


def test_text_rendering():
    r = run_suite("counterexamples")
    txt = r.text()
    assert "counterexamples" in txt
    assert len(txt.splitlines()) >= len(r.items)
