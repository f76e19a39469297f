import pytest
from hypothesis import given

from ogspi.encode import encode_cbv, encode_term_at
from ogspi.equiv.steppers import PI_OP, PI_OP_FULL, PI_STD, PI_STD_FULL
from ogspi.equiv.traces import enumerate_traces
from ogspi.names import Kind, Supply, cont, var
from ogspi.pii import (NIL, Apply, KindMismatch, Literal, Rep, all_names, cannot_interact,
                       forwarder, free_names, is_input_reactive, normalize, par, parse_process,
                       pi_op_transitions, pi_transitions, process_key, rename, res, unfold)
from ogspi.pii.confluence import confluent_step
from ogspi.lam.terms import all_names as term_names
from strategies import lam_terms

PP = parse_process

# a process that can always do another internal step
TAU_LOOP = "nu c. (!c(u).c^(w).0 | c^(w).0)"


def labels(ts):
    return sorted((a.dir, str(a.subject)) for a, _ in ts)


def test_communication():
    p = PP("a^(x).0 | a(y).0")
    taus = [q for a, q in pi_transitions(p) if not a.visible]
    assert len(taus) == 1
    assert process_key(taus[0]) == process_key(NIL)


def test_abstraction_move():
    lit = PP("(p) p^(x).0")
    assert type(lit) is Literal
    (a, q), = pi_transitions(lit)
    assert a.dir == "abs" and len(a.objects) == 1
    assert q.subject == a.objects[0]


def test_replicated_input_stays():
    p = PP("!a(b).b^(c).0")
    (a, q), = pi_transitions(p)
    assert a.dir == "in"
    assert any(type(c) is Rep for c in (q.left, q.right))


def test_output_prioritised_lts():
    assert labels(pi_op_transitions(PP("a(x).0"))) == [("in", "x0")]
    blocked = PP(f"a(x).0 | {TAU_LOOP}")
    assert all(a.dir != "in" for a, _ in pi_op_transitions(blocked))
    assert any(a.dir == "in" for a, _ in pi_transitions(blocked))
    mixed = PP("a^(x).0 | b(y).0")
    assert [a.dir for a, _ in pi_op_transitions(mixed)] == ["out"]


def test_input_reactive_examples():
    assert is_input_reactive(NIL)
    assert not is_input_reactive(PP("a^(x).0"))
    assert is_input_reactive(PP("a(x).0 | b(y).0"))


def test_normal_forms():
    lit = PP("(x) x^(y).0")
    a = var(5)
    assert process_key(unfold(Apply(lit, (a,)))) == process_key(PP("x5^(y).0"))
    p = PP("a(x).0")
    assert process_key(par(p, NIL)) == process_key(p)
    assert process_key(res([var(9)], NIL)) == process_key(NIL)
    assert process_key(PP("nu a. 0")) == process_key(NIL)


def test_forwarders():
    f = forwarder(cont(1), cont(2))
    (a, q), = pi_transitions(f)
    assert a.dir == "in" and a.subject == cont(1)
    (b, _), = pi_transitions(q)
    assert b.dir == "out" and b.subject == cont(2)
    g = forwarder(var(1), var(2))
    (a, q), = pi_transitions(g)
    assert a.dir == "in" and len(a.objects) == 2
    with pytest.raises(KindMismatch):
        forwarder(var(1), cont(2))


def test_cannot_interact_examples():
    assert not cannot_interact(PP("a^(x).0"), PP("a(y).0"))
    assert cannot_interact(PP("a^(x).0"), PP("a^(y).0"))
    closed = PP("nu a. (a^(x).0 | a(y).0)")
    assert cannot_interact(closed, PP("b(z).0"))


def _encode(m):
    p = Supply(term_names(m)).fresh(Kind.CONT)
    return encode_term_at(m, p)


@given(lam_terms(6))
def test_key_ignores_component_order(m):
    a = _encode(m)
    b = PP("x0(u).0")
    assert process_key(par(a, b)) == process_key(par(b, a))


@given(lam_terms(6))
def test_key_ignores_bound_names(m):
    a = _encode(m)
    n = normalize(a)
    assert process_key(n) == process_key(a)


@given(lam_terms(6))
def test_emitted_names_are_fresh(m):
    a = _encode(m)
    frontier = [a]
    for _ in range(3):
        nxt = []
        for q in frontier:
            for act, r in pi_transitions(q):
                assert not set(act.objects) & all_names(q)
                nxt.append(r)
        frontier = nxt[:20]


@given(lam_terms(6))
def test_free_name_polarity(m):
    # Opponent variables are only ever called, the result continuation only answered
    p = Supply(term_names(m)).fresh(Kind.CONT)
    a = encode_term_at(m, p)
    fn = free_names(a)
    assert fn <= term_names(m) | {p}
    for act, _ in pi_transitions(a):
        if act.visible and act.subject in fn:
            assert act.dir == "out"


@given(lam_terms(5))
def test_confluent_steps_preserve_traces(m):
    a = encode_cbv(m)
    for fast, full in ((PI_STD, PI_STD_FULL), (PI_OP, PI_OP_FULL)):
        t1 = enumerate_traces(fast, a, 2)
        t2 = enumerate_traces(full, a, 2)
        if not (t1.clipped or t2.clipped):
            assert t1.traces == t2.traces
            assert t1.complete == t2.complete


@given(lam_terms(6))
def test_output_prioritised_traces_are_standard_traces(m):
    a = encode_cbv(m)
    op = enumerate_traces(PI_OP, a, 3)
    std = enumerate_traces(PI_STD, a, 3)
    if not (op.clipped or std.clipped):
        assert op.traces <= std.traces


def test_confluent_step_only_on_restricted_names():
    assert confluent_step(PP("a^(x).0 | a(y).0")) is None
    assert confluent_step(PP("nu a. (a^(x).0 | a(y).0)")) is not None
    # two competing receivers: not confluent
    assert confluent_step(PP("nu a. (a^(x).0 | a(y).0 | a(z).0)")) is None


@given(lam_terms(6))
def test_renaming_round_trip(m):
    a = _encode(m)
    fresh = Supply(all_names(a))
    ren = {n: fresh.fresh(n.kind) for n in sorted(free_names(a))}
    back = {v: k for k, v in ren.items()}
    assert process_key(rename(rename(a, ren), back)) == process_key(a)
