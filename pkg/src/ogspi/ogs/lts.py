"""Transition functions of the alternating, concurrent and well-bracketed games.

Every function returns the list of ``(action, successor)`` pairs of a
configuration.  Fresh names come from the configuration's own support: the
next id of a kind is one above the largest id of that kind in use, and the
payload variable is drawn before the continuation.
"""

from ..actions import TAU, Action
from ..lam.reduce import (Callback, Redex, Stuck, Value, decompose_cbn, decompose_cbv)
from ..lam.terms import App, Var, plug, subst
from ..names import Kind, Supply
from .config import (Active, Concurrent, ContEntry, Initial, InvalidConfiguration, Passive,
                     Stacked, env_remove, validate)


def _player_step(term, p, env, names, calculus):
    """The unique Player move of a running term: (action, new env, names, next term).

    ``next term`` is None when the term is handed over to Opponent.
    """
    if calculus == "cbv":
        d = decompose_cbv(term)
        td = type(d)
        if td is Redex:
            return TAU, env, names, plug(d.ctx, subst(d.fun.body, d.fun.var, d.arg))
        sup = Supply(names)
        if td is Value:
            x = sup.fresh(Kind.VAR)
            return Action("out", p, (x,)), env + ((x, d.term),), names | {x}, None
        if td is Stuck:
            y = sup.fresh(Kind.VAR)
            q = sup.fresh(Kind.CONT)
            env2 = env + ((y, d.value), (q, ContEntry(d.ctx, p)))
            return Action("out", d.var, (y, q)), env2, names | {y, q}, None
        raise InvalidConfiguration(f"cannot run {term} in the call-by-value game")
    d = decompose_cbn(term)
    td = type(d)
    if td is Redex:
        return TAU, env, names, plug(d.ctx, subst(d.fun.body, d.fun.var, d.arg))
    sup = Supply(names)
    if td is Value:
        v = sup.fresh(Kind.VAL)
        return Action("out", p, (v,)), env + ((v, d.term),), names | {v}, None
    if td is Callback:
        y = sup.fresh(Kind.VAR)
        q = sup.fresh(Kind.CONT)
        env2 = env + ((y, d.arg), (q, ContEntry(d.ctx, p)))
        return Action("out", d.name, (y, q)), env2, names | {y, q}, None
    if td is Stuck:
        q = sup.fresh(Kind.CONT)
        return Action("out", d.var, (q,)), env + ((q, ContEntry(d.ctx, p)),), names | {q}, None
    raise InvalidConfiguration(f"cannot run {term} in the call-by-name game")


def _opponent_moves(env, names, calculus, allowed_answer=None, keep_answered=False):
    """Opponent moves on an environment: (action, term, continuation, env, names).

    ``allowed_answer`` restricts answers to one continuation (the top of a
    stack); ``keep_answered`` keeps the answered entry (well-bracketed game).
    """
    moves = []
    for n, e in env:
        sup = Supply(names)
        if type(e) is ContEntry:
            if allowed_answer is not False and allowed_answer is not None and n != allowed_answer:
                continue
            if allowed_answer is False:
                continue
            x = sup.fresh(Kind.VAR if calculus == "cbv" else Kind.VAL)
            env2 = env if keep_answered else env_remove(env, n)
            moves.append((Action("in", n, (x,)), plug(e.ctx, Var(x)), e.cont, env2, names | {x}))
        elif calculus == "cbv" or n.kind is Kind.VAL:
            y = sup.fresh(Kind.VAR)
            p = sup.fresh(Kind.CONT)
            env2 = env if calculus == "cbv" else env_remove(env, n)
            moves.append((Action("in", n, (y, p)), App(e, Var(y)), p, env2, names | {y, p}))
        else:
            p = sup.fresh(Kind.CONT)
            moves.append((Action("in", n, (p,)), e, p, env, names | {p}))
    return moves


def _initial_move(f):
    p = Supply(f.names).fresh(Kind.CONT)
    return Action("abs", None, (p,)), p


def aogs_step(f, calculus="cbv"):
    t = type(f)
    if t is Initial:
        a, p = _initial_move(f)
        return [(a, Active(f.term, p, (), f.names | {p}))]
    if t is Active:
        a, env, names, nxt = _player_step(f.term, f.cont, f.env, f.names, calculus)
        if nxt is not None:
            return [(a, Active(nxt, f.cont, env, names))]
        return [(a, Passive(env, names))]
    if t is Passive:
        return [(a, Active(m, p, env, names))
                for a, m, p, env, names in _opponent_moves(f.env, f.names, calculus)]
    raise InvalidConfiguration(f"not an alternating configuration: {t.__name__}")


def cogs_step(f, calculus="cbv"):
    t = type(f)
    if t is Initial:
        a, p = _initial_move(f)
        return [(a, Concurrent(((p, f.term),), (), f.names | {p}))]
    if t is Active or t is Passive:
        from .config import to_concurrent
        f = to_concurrent(f)
    elif t is not Concurrent:
        raise InvalidConfiguration(f"not a concurrent configuration: {t.__name__}")
    out = []
    threads = f.threads
    for i, (p, m) in enumerate(threads):
        a, env, names, nxt = _player_step(m, p, f.env, f.names, calculus)
        if nxt is not None:
            th = threads[:i] + ((p, nxt),) + threads[i + 1:]
        else:
            th = threads[:i] + threads[i + 1:]
        out.append((a, Concurrent(th, env, names)))
    for a, m, p, env, names in _opponent_moves(f.env, f.names, calculus):
        out.append((a, Concurrent(tuple(sorted(threads + ((p, m),))), env, names)))
    return out


def wbogs_step(f):
    if type(f) is not Stacked:
        raise InvalidConfiguration("the well-bracketed game runs on stacked configurations")
    b, stack = f.base, f.stack
    t = type(b)
    if t is Initial:
        a, p = _initial_move(b)
        return [(a, Stacked(Active(b.term, p, (), b.names | {p}), stack))]
    if t is Active:
        a, env, names, nxt = _player_step(b.term, b.cont, b.env, b.names, "cbv")
        if nxt is not None:
            return [(a, Stacked(Active(nxt, b.cont, env, names), stack))]
        if a.subject.kind is Kind.VAR:  # question: push the new continuation
            stack = (a.objects[1],) + stack
        return [(a, Stacked(Passive(env, names), stack))]
    if t is Passive:
        top = stack[0] if stack else False
        out = []
        for a, m, p, env, names in _opponent_moves(b.env, b.names, "cbv", allowed_answer=top,
                                                   keep_answered=True):
            st = stack[1:] if a.subject.kind is Kind.CONT else stack
            out.append((a, Stacked(Active(m, p, env, names), st)))
        return out
    raise InvalidConfiguration(f"not a stacked configuration: {t.__name__}")


def aogs_transitions(f, calculus="cbv"):
    validate(f)
    return aogs_step(f, calculus)


def cogs_transitions(f, calculus="cbv"):
    validate(f)
    return cogs_step(f, calculus)


def wbogs_transitions(f):
    validate(f)
    return wbogs_step(f)


def cbn_transitions(f, concurrent=False):
    validate(f)
    return cogs_step(f, "cbn") if concurrent else aogs_step(f, "cbn")


def initial_stacked(term, names=()):
    from .config import initial
    return Stacked(initial(term, names), ())
