import pytest
from hypothesis import given

from ogspi.actions import Action, inp, out
from ogspi.lam.parser import parse_term
from ogspi.lam.terms import Lam, Var
from ogspi.names import Kind, cont, var
from ogspi.ogs.config import (Active, Concurrent, IncompatibleConfigurations, Initial,
                              InvalidInterleaving, Passive, Stacked, config_key, empty_config,
                              env_remove, erase, initial, is_strongly_passive, occurring_names,
                              player_names, polarity, rename_config, to_concurrent)
from ogspi.ogs.literal import parse_config
from ogspi.ogs.lts import aogs_step, cbn_transitions, cogs_step, initial_stacked, wbogs_step
from ogspi.ogs.tensor import (compatible, decompose_singletons, fold_tensor, support_equivalent,
                              tensor)
from ogspi.ogs.traces import full_stack, is_complete_trace, pushdown_accepts
from strategies import X0, lam_terms

IDENT = parse_term(r"\x. x")
OMEGA = r"(\w. w w) (\w. w w)"


def walk(step, f, n):
    """All configurations reachable in at most ``n`` transitions, with the actions taken."""
    seen, frontier = [], [f]
    for _ in range(n):
        nxt = []
        for g in frontier:
            for a, h in step(g):
                seen.append((g, a, h))
                nxt.append(h)
        frontier = nxt[:40]
    return seen


def test_aogs_first_moves():
    f = Initial(IDENT, frozenset())
    (a, g), = aogs_step(f)
    assert a.label == "IOQ" and type(g) is Active and g.cont == a.objects[0]
    (b, h), = aogs_step(g)
    assert b.label == "PA" and b.subject == g.cont
    assert type(h) is Passive and h.env == ((b.objects[0], IDENT),)
    (c, k), = aogs_step(h)
    assert c.label == "OQ" and c.subject == b.objects[0]
    y, q = c.objects
    assert y.kind is Kind.VAR and q.kind is Kind.CONT
    assert type(k) is Active and k.cont == q and k.term.arg == Var(y)


def test_omega_has_only_silent_moves():
    f = parse_config(f"<p0 |-> {OMEGA} | names: p0>", "cogs")
    for _, a, _ in walk(cogs_step, f, 5):
        assert not a.visible


def test_cogs_thread_moves():
    f = parse_config(r"<p1 |-> (\x. x) (\y. y) ; p2 |-> x0 (\y. y) | names: x0, p1, p2>")
    labels = sorted(a.label for a, _ in cogs_step(f))
    assert labels == ["PQ", "Tau"]


def test_pq_stores_context():
    f = parse_config(f"<p0 |-> (\\z. {OMEGA}) (x0 (\\y. y)) | names: x0, p0>", "aogs")
    (a, g), = aogs_step(f)
    assert a.label == "PQ" and a.subject == X0
    y, q = a.objects
    assert type(g) is Passive
    entries = dict(g.env)
    assert entries[q].cont == cont(0)
    assert y in entries


def test_wbogs_answers_only_the_top():
    f = parse_config(r"<q1 |-> ((\z. z) [], p0) ; q2 |-> ((\z. z) [], p0) | "
                     r"names: p0, q1, q2 | stack: q1>", "wbogs")
    answers = [a for a, _ in wbogs_step(f) if a.is_answer]
    assert answers and all(a.subject == cont(1) for a in answers)
    g = erase(f)
    assert {a.subject for a, _ in aogs_step(g) if a.is_answer} == {cont(1), cont(2)}


def _drop_entry(f, name):
    if type(f) is Active:
        return Active(f.term, f.cont, env_remove(f.env, name), f.names)
    if type(f) is Passive:
        return Passive(env_remove(f.env, name), f.names)
    return f


@given(lam_terms(6))
def test_wbogs_erases_to_aogs(m):
    # the well-bracketed game keeps answered context entries around; compare without them
    f = initial_stacked(m, {X0})
    for g, a, h in walk(wbogs_step, f, 4):
        matches = [h2 for b, h2 in aogs_step(erase(g)) if b == a]
        want = erase(h)
        if a.is_answer:
            want = _drop_entry(want, a.subject)
            matches = [_drop_entry(h2, a.subject) for h2 in matches]
        assert any(config_key(h2) == config_key(want) for h2 in matches)


@given(lam_terms(6))
def test_bound_names_are_fresh(m):
    f = initial(m, {X0})
    for step in (aogs_step, cogs_step):
        for g, a, _ in walk(step, f, 4):
            assert not set(a.objects) & occurring_names(g)
            assert len(set(a.objects)) == len(a.objects)


@given(lam_terms(6))
def test_polarity_of_actions(m):
    for g, a, _ in walk(cogs_step, initial(m, {X0}), 4):
        if not a.visible:
            continue
        assert a.polarity == ("P" if a.dir == "out" else "O")
        if a.is_answer:
            assert a.subject.kind is Kind.CONT
        elif a.dir != "abs":
            assert a.subject.kind is Kind.VAR


def test_cbn_moves():
    f = parse_config(r"<p0 |-> x0 (\y. y) | names: x0, p0>", "aogs", "cbn")
    (a, g), = cbn_transitions(f)
    assert a.label == "PTQ" and a.subject == X0
    f = parse_config(r"<p0 |-> \x. x | names: p0>", "aogs", "cbn")
    (a, g), = cbn_transitions(f)
    assert a.label == "PA" and a.objects[0].kind is Kind.VAL
    (b, h), = cbn_transitions(g)
    assert b.label == "OVQ"
    f = parse_config(r"<x0 |-> \y. y | names: x0, p0>", "aogs", "cbn")
    moves = cbn_transitions(f)
    assert any(a.label == "OTQ" for a, _ in moves)


def test_full_stack_examples():
    f = Stacked(Active(IDENT, cont(0), (), frozenset({cont(0)})), ())
    assert full_stack(f) == (cont(0),)
    g = parse_config(r"<q0 |-> ((\z. z) [], p5) | names: p5, q0 | stack: q0>", "wbogs")
    assert full_stack(g) == (cont(0), cont(5))
    h = parse_config(r"<p1 |-> \x. x ; q0 |-> ((\z. z) [], p5) | names: p1, p5, q0 | "
                     r"stack: q0>", "wbogs")
    assert full_stack(h) == (cont(1), cont(0), cont(5))


def test_pushdown_examples():
    c, c1, c2 = cont(0), cont(1), cont(2)
    w, x, y, z, w1 = var(0), var(1), var(2), var(3), var(4)
    t = (inp(c, w), out(x, y, c1), inp(c1, z), out(c2, w1))
    assert pushdown_accepts(t, (c, c2)) == ()
    p = cont(7)
    assert pushdown_accepts((Action("abs", None, (p,)), out(p, x)), ()) == ()
    q = cont(8)
    assert pushdown_accepts((out(x, y, q), out(p, z)), (p,)) is None


def test_strongly_passive_examples():
    assert is_strongly_passive(Passive(((X0, IDENT),), frozenset({X0})))
    g = parse_config(r"<q0 |-> ((\z. z) [], p5) | names: p5, q0>", "aogs")
    assert not is_strongly_passive(g)
    busy = Concurrent(((cont(0), IDENT),), (), frozenset({cont(0)}))
    assert not is_strongly_passive(busy)


def test_complete_trace_examples():
    f = Initial(IDENT, frozenset())
    p, x = cont(0), var(0)
    assert is_complete_trace((Action("abs", None, (p,)), out(p, x)), f)
    assert not is_complete_trace((Action("abs", None, (p,)),), f)
    g = parse_config(r"<q0 |-> ((\z. z) [], p5) | names: p5, q0>", "aogs")
    assert not is_complete_trace((), g)


def test_tensor_examples():
    a = parse_config(r"<p1 |-> x0 (\y. y) ; x5 |-> \z. z | names: x0, p1, x5>")
    b = parse_config(r"<p2 |-> \y. y | names: x0, p2>")
    ab = tensor(a, b)
    assert {p for p, _ in ab.threads} == {cont(1), cont(2)}
    assert ab.env == a.env + b.env and ab.names == a.names | b.names
    assert tensor(a, empty_config()) == a
    act = parse_config(r"<p1 |-> x0 | names: x0, p1>", "aogs")
    act2 = parse_config(r"<p2 |-> x0 | names: x0, p2>", "aogs")
    with pytest.raises(IncompatibleConfigurations):
        tensor(act, act2)


def test_tensor_stacks_need_an_interleaving():
    f = parse_config(r"<q1 |-> ([], p5) | names: p5, q1 | stack: q1>", "wbogs")
    g = parse_config(r"<q2 |-> ([], p6) | names: p6, q2 | stack: q2>", "wbogs")
    assert tensor(f, g, (cont(2), cont(1))).stack == (cont(2), cont(1))
    with pytest.raises(InvalidInterleaving):
        tensor(f, g, (cont(1), cont(1)))


def test_compatibility():
    f = parse_config(r"<x1 |-> \y. y | names: x0, x1>")
    assert compatible(f, f) and support_equivalent(f, f)
    g = parse_config(r"<p1 |-> x1 | names: x1, p1>")  # x1 is an Opponent name here
    assert polarity(f)[var(1)] != polarity(g)[var(1)]
    assert not compatible(f, g)
    h = parse_config(r"<q1 |-> ([], p5) ; q2 |-> ([], p6) | names: p5, p6, q1, q2>")
    k = parse_config(r"<q1 |-> ([], p6) ; q2 |-> ([], p5) | names: p5, p6, q1, q2>")
    assert polarity(h) == polarity(k)
    assert not support_equivalent(h, k)


def test_decompose_examples():
    f = parse_config(r"<p1 |-> x0 ; x2 |-> \y. y | names: x0, p1, x2>")
    pieces = decompose_singletons(f)
    assert len(pieces) == 2
    assert [player_names(p) for p in pieces] == [frozenset({cont(1)}), frozenset({var(2)})]
    assert decompose_singletons(Concurrent((), (), frozenset({X0}))) == []
    single = parse_config(r"<x2 |-> \y. y | names: x0, x2>")
    assert decompose_singletons(single) == [single]


@given(lam_terms(5), lam_terms(5))
def test_decompose_then_fold_is_identity(m, n):
    v = m if type(m) is Lam else Lam(var(77), m)
    f = Concurrent(((cont(1), n),), ((var(90), v),), frozenset({X0, cont(1), var(90)}))
    back = fold_tensor(decompose_singletons(f))
    assert config_key(back) == config_key(f)


@given(lam_terms(6))
def test_rename_config_respects_keys(m):
    f = to_concurrent(Active(m, cont(3), (), frozenset({X0, cont(3)})))
    g = rename_config(f, {cont(3): cont(9)})
    assert config_key(g) != config_key(f)
    assert config_key(rename_config(g, {cont(9): cont(3)})) == config_key(f)
