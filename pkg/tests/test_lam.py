import pytest
from hypothesis import given
from hypothesis import strategies as st

from ogspi.lam.parser import ParseError, parse_term
from ogspi.lam.reduce import (FuelExhausted, Redex, Stuck, Value, decompose_cbv, eval_enf,
                              run_rho, step_cbn, step_cbv, step_rho)
from ogspi.lam.terms import (App, AppRight, Deref, Lam, Loc, RhoNew, Var, alpha_key, all_names,
                             free_names, plug, rename_names, show, size, subst)
from ogspi.names import Kind, Name, val, var
from strategies import X0, lam_terms, lam_values

P = parse_term


def db(t, env=()):
    """De Bruijn form: bound variables become indices, free ones keep their name."""
    if type(t) is Var:
        if t.name in env:
            return ("i", env.index(t.name))
        return ("f", t.name)
    if type(t) is Lam:
        return ("l", db(t.body, (t.var,) + env))
    return ("a", db(t.fun, env), db(t.arg, env))


# A reference evaluator on de Bruijn terms, written without the production code.

def _shift(t, d, c=0):
    if t[0] == "i":
        return ("i", t[1] + d) if t[1] >= c else t
    if t[0] == "f":
        return t
    if t[0] == "l":
        return ("l", _shift(t[1], d, c + 1))
    return ("a", _shift(t[1], d, c), _shift(t[2], d, c))


def _sub(t, j, s):
    if t[0] == "i":
        return s if t[1] == j else t
    if t[0] == "f":
        return t
    if t[0] == "l":
        return ("l", _sub(t[1], j + 1, _shift(s, 1)))
    return ("a", _sub(t[1], j, s), _sub(t[2], j, s))


def _beta(body, arg):
    return _shift(_sub(body, 0, _shift(arg, 1)), -1)


def _is_val(t):
    return t[0] in ("l", "f", "i")


def ref_step(t):
    if t[0] != "a":
        return None
    f, a = t[1], t[2]
    if not _is_val(f):
        s = ref_step(f)
        return None if s is None else ("a", s, a)
    if not _is_val(a):
        s = ref_step(a)
        return None if s is None else ("a", f, s)
    if f[0] == "l":
        return _beta(f[1], a)
    return None


def ref_eval(t, fuel):
    for n in range(fuel + 1):
        s = ref_step(t)
        if s is None:
            return t, n
        t = s
    return None, fuel


def test_parse_examples():
    assert P(r"\x. x") == Lam(var(0), Var(var(0)))
    omega = P(r"(\x. x x)(\x. x x)")
    assert type(omega) is App and type(omega.fun) is Lam and type(omega.arg) is Lam
    assert P("λx. x") == P(r"\x. x")
    r = P(r"rho {l = \x.x}. (!l) (\y.y)", "rho")
    assert type(r) is RhoNew and type(r.body.fun) is Deref


def test_parse_errors():
    with pytest.raises(ParseError):
        P(r"\x. (")
    with pytest.raises(ParseError):
        P("!l", "rho")  # unbound location
    with pytest.raises(ParseError) as e:
        P("x )")
    assert "column" in str(e.value)


def test_literal_names_keep_ids():
    t = P(r"x3 (\y. y)", literal_names=True)
    assert t.fun == Var(var(3))
    assert t.arg.var.id > 3


def test_step_examples():
    assert alpha_key(step_cbv(P(r"(\x. x)(\y. y)"))) == alpha_key(P(r"\y. y"))
    assert step_cbv(P(r"\y. y")) is None
    rem = parse_term(r"(\z. (\w. w w) (\w. w w)) (x0 (\y. y))", literal_names=True)
    assert step_cbv(rem) is None
    d = decompose_cbv(rem)
    assert type(d) is Stuck and d.var == X0 and d.ctx == (AppRight(rem.fun),)


def test_eval_enf_examples():
    r = eval_enf(P(r"(\x. x)(\y. y)"), 10)
    assert type(r) is Value and alpha_key(r.term) == alpha_key(P(r"\y. y"))
    assert type(eval_enf(P(r"(\x. x x)(\x. x x)"), 100)) is FuelExhausted
    r = eval_enf(P(r"x (\y. y)"), 10)
    assert type(r) is Stuck and r.ctx == () and r.var == var(0)


def test_subst_examples():
    x, y, z = var(0), var(1), var(2)
    ident = Lam(y, Var(y))
    assert subst(Var(x), x, ident) == ident
    assert subst(Lam(x, Var(x)), x, Var(z)) == Lam(x, Var(x))
    assert subst(App(Var(x), Var(z)), x, ident) == App(ident, Var(z))


def test_subst_avoids_capture():
    x, y = var(0), var(1)
    # (λy. x){x := y} must not capture y
    out = subst(Lam(y, Var(x)), x, Var(y))
    assert type(out) is Lam and out.var != y and out.body == Var(y)


def test_cbn_examples():
    k = P(r"(\x. \y. x) ((\w. w w) (\w. w w))", "cbn")
    assert db(step_cbn(k)) == db(P(r"\y. (\w. w w) (\w. w w)", "cbn"))
    vm = App(Var(val(0)), P(r"\y. y"))
    assert step_cbn(vm) is None
    assert step_cbn(P(r"(\x. x) z", "cbn")) == P("z", "cbn")


def test_rho_examples():
    ident = Lam(var(0), Var(var(0)))
    l0 = Loc(0)
    m, s = step_rho(RhoNew(((l0, ident),), Deref(l0)), ())
    assert m == Deref(l0) and s == ((l0, ident),)
    m, s = step_rho(m, s)
    assert m == ident
    a = P(r"l := \y.y; !l", "rho", free_locations=("l",))
    m2, s2 = step_rho(a, ((l0, ident),))
    assert m2 == Deref(l0) and dict(s2)[l0] == Lam(a.value.var, Var(a.value.var))
    assert run_rho(Deref(l0), ()).kind == "deref"


def test_rho_allocation_is_fresh():
    ident = Lam(var(0), Var(var(0)))
    l0 = Loc(0)
    prog = RhoNew(((l0, ident),), Deref(l0))
    _, s = step_rho(prog, ((l0, ident),))
    locs = [l for l, _ in s]
    assert len(set(locs)) == len(locs) == 2


@given(lam_terms(8))
def test_decomposition_unique(m):
    d = decompose_cbv(m)
    if type(d) is Redex:
        assert plug(d.ctx, App(d.fun, d.arg)) == m
    elif type(d) is Stuck:
        assert plug(d.ctx, App(Var(d.var), d.value)) == m
    else:
        assert type(d) is Value and d.term == m


@given(lam_terms(8))
def test_eval_agrees_with_reference(m):
    nf, n = ref_eval(db(m), 60)
    if nf is None:
        assert type(eval_enf(m, 30)) is FuelExhausted
        return
    r = eval_enf(m, 200)
    assert type(r) is not FuelExhausted
    out = r.term if type(r) is Value else plug(r.ctx, App(Var(r.var), r.value))
    assert db(out) == nf


@given(lam_terms(7), lam_values(5))
def test_subst_matches_reference(m, v):
    if type(m) is not Lam:
        return
    got = subst(m.body, m.var, v)
    assert db(got) == _beta(db(m.body, (m.var,)), db(v))


@given(lam_terms(8))
def test_alpha_key_ignores_binder_names(m):
    names = sorted(all_names(m) - free_names(m), key=lambda n: n.id)
    ren = {n: Name(Kind.VAR, 500 + i) for i, n in enumerate(reversed(names))}
    assert alpha_key(rename_names(m, ren)) == alpha_key(m)


@given(lam_terms(8))
def test_show_parse_roundtrip(m):
    again = parse_term(show(m), literal_names=True)
    assert alpha_key(again) == alpha_key(m)
    assert size(again) == size(m)


@given(st.integers(0, 5))
def test_size_counts_nodes(k):
    t = Var(var(0))
    for i in range(k):
        t = Lam(var(i + 1), t)
    assert size(t) == k + 1
