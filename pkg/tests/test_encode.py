from hypothesis import given, settings

from ogspi.encode import (encode_cbn, encode_cbv, encode_config, encode_term_at,
                          encode_value_at)
from ogspi.equiv import PI_STD, bounded_weak_bisim, enumerate_traces
from ogspi.lam.parser import parse_term
from ogspi.lam.terms import Lam, Var, all_names
from ogspi.names import Kind, Supply, cont, var
from ogspi.ogs.config import Concurrent, empty_config
from ogspi.ogs.literal import parse_config
from ogspi.ogs.tensor import tensor
from ogspi.pii import NIL, Literal, par, pi_transitions, process_key, show
from strategies import lam_terms


def P(s, mode="cbv"):
    return parse_term(s, mode, literal_names=True)


def test_variable():
    assert show(encode_cbv(P("x0"))) == "(p0) p0^(x1).fwd_x<x1,x0>"


def test_identity():
    e = encode_cbv(P(r"\x. x"))
    assert type(e) is Literal
    (a, body), = pi_transitions(e)
    p = a.objects[0]
    (b, server), = pi_transitions(body)
    assert b.dir == "out" and b.subject == p and len(b.objects) == 1
    (c, _), = pi_transitions(server)
    assert c.dir == "in" and c.subject == b.objects[0]
    assert [o.kind for o in c.objects] == [Kind.VAR, Kind.CONT]


def test_application_answers():
    ts = enumerate_traces(PI_STD, encode_cbv(P(r"(\x. x)(\y. y)")), 2)
    assert {tuple(a.dir for a in t) for t in ts.traces} == {(), ("abs",), ("abs", "out")}
    (t,) = [t for t in ts.traces if len(t) == 2]
    assert t[1].subject == t[0].objects[0]


def test_cbn_variable_is_a_thunk_call():
    e = encode_cbn(P("x0", "cbn"))
    (_, body), = pi_transitions(e)
    (a, _), = pi_transitions(body)
    assert a.dir == "out" and a.subject == var(0)
    assert [o.kind for o in a.objects] == [Kind.CONT]


@given(lam_terms(7))
def test_free_names_are_term_names_plus_continuation(m):
    from ogspi.pii import free_names
    p = Supply(all_names(m)).fresh(Kind.CONT)
    assert free_names(encode_term_at(m, p)) <= all_names(m) | {p}


@settings(max_examples=50)
@given(lam_terms(8))
def test_optimised_matches_plain(m):
    v = bounded_weak_bisim(PI_STD, encode_cbv(m), PI_STD, encode_cbv(m, optimised=True), 4)
    assert v.kind != "distinguished", v.show()


def test_optimised_on_a_redex_is_smaller():
    m = P(r"(\x. x)(\y. y)")
    assert len(show(encode_cbv(m, True))) < len(show(encode_cbv(m)))


def test_config_tensor_is_parallel():
    a = parse_config(r"<p1 |-> x0 (\y. y) | names: x0, p1>")
    b = parse_config(r"<x5 |-> \z. z | names: x0, x5>")
    got = encode_config(tensor(a, b))
    want = par(encode_config(a), encode_config(b))
    assert process_key(got) == process_key(want)


def test_empty_config():
    assert process_key(encode_config(empty_config())) == process_key(NIL)


def test_config_entries():
    v = Lam(var(9), Var(var(9)))
    f = Concurrent((), ((var(5), v),), frozenset({var(5)}))
    assert process_key(encode_config(f)) == process_key(encode_value_at(v, var(5)))
    g = Concurrent(((cont(3), v),), (), frozenset({cont(3)}))
    assert process_key(encode_config(g)) == process_key(encode_term_at(v, cont(3)))
