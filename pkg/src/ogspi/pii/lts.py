"""The standard and the output-prioritised transition systems of πI."""

from ..actions import TAU, Action
from ..names import Kind, Name
from .syntax import (Apply, ArityMismatch, Inp, Literal, Nil, Out, Par, Rep, Res, rename, unfold)


def _fresh_base(p):
    """Next free id per kind, above every non-negative id occurring in ``p``."""
    from .syntax import all_names
    nxt = {Kind.VAR: 0, Kind.CONT: 0, Kind.VAL: 0}
    for n in all_names(p):
        if n.id >= nxt[n.kind]:
            nxt[n.kind] = n.id + 1
    return nxt


def _fresh_for(params, base):
    used = dict(base)
    out = []
    for x in params:
        out.append(Name(x.kind, used[x.kind]))
        used[x.kind] += 1
    return tuple(out)


def pi_transitions(agent):
    """All transitions of ``agent`` under the standard LTS.

    Bound names of emitted actions are fresh for the whole agent; a
    communication restricts the exchanged names around both residuals.
    """
    return _trans(agent, _fresh_base(agent))


def _trans(p, base):
    t = type(p)
    if t is Nil:
        return []
    if t is Inp or t is Out:
        fresh = _fresh_for(p.params, base)
        body = rename(p.body, dict(zip(p.params, fresh)))
        return [(Action("in" if t is Inp else "out", p.subject, fresh), body)]
    if t is Rep:
        fresh = _fresh_for(p.params, base)
        body = rename(p.body, dict(zip(p.params, fresh)))
        return [(Action("in", p.subject, fresh), Par(body, p))]
    if t is Res:
        x = p.name
        return [(a, Res(x, q)) for a, q in _trans(p.body, base) if a.subject != x]
    if t is Par:
        left = _trans(p.left, base)
        right = _trans(p.right, base)
        out = [(a, Par(q, p.right)) for a, q in left]
        out.extend((a, Par(p.left, q)) for a, q in right)
        for a, q in left:
            if a.dir != "in" and a.dir != "out":
                continue
            for b, r in right:
                if b.subject != a.subject or b.dir == a.dir or b.dir == "tau":
                    continue
                if a.objects != b.objects:
                    raise ArityMismatch(f"{a} cannot synchronise with {b}")
                body = Par(q, r)
                for o in reversed(a.objects):
                    body = Res(o, body)
                out.append((TAU, body))
        return out
    if t is Apply:
        return _trans(unfold(p), base)
    if t is Literal:
        fresh = _fresh_for(p.params, base)
        return [(Action("abs", None, fresh), rename(p.body, dict(zip(p.params, fresh))))]
    raise TypeError(p)


def is_input_reactive(p) -> bool:
    return all(a.dir == "in" for a, _ in pi_transitions(p))


def pi_op_transitions(agent):
    """Output-prioritised LTS: inputs only from input-reactive processes."""
    ts = pi_transitions(agent)
    if all(a.dir == "in" for a, _ in ts):
        return ts
    return [(a, q) for a, q in ts if a.dir != "in"]
