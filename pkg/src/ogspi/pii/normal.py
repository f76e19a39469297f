"""Normal forms of πI processes, used to recognise states already visited.

A process is brought to the shape ``nu r1..rk (C1 | ... | Cn)`` where each
component is a prefix, a replication or a constant application.  Literal
applications are contracted, ``0`` components vanish, clashing restricted
names are renamed apart, unused restrictions are dropped and components
that can never fire are discarded: an input on a restricted name that no
component can ever output on (or an output nobody can ever receive) is
inert forever, so dropping it preserves strong bisimilarity.  Components
that still mention a free continuation name are kept so that completeness
of traces is unaffected.  The key renders the result up to α-conversion
and the order of components.
"""

from ..names import Kind, Supply
from .syntax import (Apply, Constant, Inp, Literal, Nil, Out, Par, Rep, Res, all_names,
                     capabilities, free_names, par, rename, res, unfold)


def _flatten(p, rs, comps, taken, sup):
    stack = [p]
    while stack:
        p = stack.pop()
        t = type(p)
        if t is Nil:
            continue
        if t is Par:
            stack.append(p.right)
            stack.append(p.left)
        elif t is Res:
            x, body = p.name, p.body
            if x in taken:
                y = sup.fresh(x.kind)
                body = rename(body, {x: y})
                x = y
            taken.add(x)
            rs.append(x)
            stack.append(body)
        elif t is Apply and type(p.abstraction) is Literal:
            stack.append(unfold(p))
        else:
            comps.append(p)


def _top_prefix(c):
    """The outermost prefix of a component (unfolding constants)."""
    seen = 0
    while type(c) is Apply and seen < 8:
        c = unfold(c)
        seen += 1
    return c


def _collect_garbage(rs, comps):
    rset = set(rs)
    if not rset:
        return comps
    while True:
        ins, outs = set(), set()
        for c in comps:
            ci, co = capabilities(c)
            ins |= ci
            outs |= co
        keep = []
        changed = False
        for c in comps:
            top = _top_prefix(c)
            t = type(top)
            dead = False
            if t is Inp or t is Rep:
                s = top.subject
                dead = s in rset and s not in outs
            elif t is Out:
                s = top.subject
                dead = s in rset and s not in ins
            if dead and any(n.kind is Kind.CONT and n not in rset for n in free_names(c)):
                dead = False
            if dead:
                changed = True
            else:
                keep.append(c)
        comps = keep
        if not changed:
            return comps


def flatten(p):
    """Return ``(restricted names, components)`` of ``p``."""
    taken = set(free_names(p))
    sup = Supply(n for n in all_names(p) if n.id >= 0)
    rs, comps = [], []
    _flatten(p, rs, comps, taken, sup)
    return rs, comps


def canonical(p):
    """Return ``(representative, key)`` for a process or an abstraction."""
    if type(p) is Literal:
        rep, key = canonical(p.body)
        binders = {x: f"@{i}" for i, x in enumerate(p.params)}
        # the key of an abstraction re-renders the body with its parameters bound
        parts = []
        rs, comps = flatten(rep)
        _render(rs, comps, binders, parts)
        return Literal(p.params, rep), "(" + ",".join(f"{x.kind.value}" for x in p.params) + ")" + "".join(parts)
    rs, comps = flatten(p)
    comps = _collect_garbage(rs, comps)
    used = set()
    for c in comps:
        used |= free_names(c)
    rs = [r for r in rs if r in used]
    rset = set(rs)
    # order components by their shape, restricted names blurred
    blurred = {r: f"*{r.kind.value}" for r in rs}
    decorated = []
    for c in comps:
        parts = []
        _pkey(c, blurred, [], parts)
        decorated.append(("".join(parts), c))
    decorated.sort(key=lambda dc: dc[0])
    comps = [c for _, c in decorated]
    env = {}
    parts = []
    for c in comps:
        _pkey(c, env, [], parts, rset)
        parts.append("|")
    order = sorted(rs, key=lambda r: env.get(r, ""))
    rep = res(order, par(*comps))
    return rep, "".join(parts)


def _render(rs, comps, binders, parts):
    env = dict(binders)
    rset = set(rs)
    for c in comps:
        _pkey(c, env, [], parts, rset)
        parts.append("|")


def _name(n, env, stack, rset, parts):
    for i in range(len(stack) - 1, -1, -1):
        if stack[i] == n:
            parts.append(f"#{len(stack) - 1 - i}")
            return
    tok = env.get(n)
    if tok is None and rset is not None and n in rset:
        tok = f"${len(env)}{n.kind.value}"
        env[n] = tok
    parts.append(tok if tok is not None else str(n))


def _pkey(p, env, stack, parts, rset=None):
    t = type(p)
    if t is Nil:
        parts.append("0")
    elif t is Inp or t is Out or t is Rep:
        parts.append({Inp: "i", Out: "o", Rep: "!"}[t])
        _name(p.subject, env, stack, rset, parts)
        parts.append("(" + ",".join(x.kind.value for x in p.params) + ").")
        stack.extend(p.params)
        _pkey(p.body, env, stack, parts, rset)
        del stack[len(stack) - len(p.params):]
    elif t is Res:
        parts.append("v" + p.name.kind.value + ".")
        stack.append(p.name)
        _pkey(p.body, env, stack, parts, rset)
        stack.pop()
    elif t is Par:
        parts.append("[")
        _pkey(p.left, env, stack, parts, rset)
        parts.append("|")
        _pkey(p.right, env, stack, parts, rset)
        parts.append("]")
    elif t is Apply:
        ab = p.abstraction
        if type(ab) is Constant:
            parts.append(ab.ident)
        else:
            parts.append("(")
            stack.extend(ab.params)
            _pkey(ab.body, env, stack, parts, rset)
            del stack[len(stack) - len(ab.params):]
            parts.append(")")
        parts.append("<")
        for a in p.args:
            _name(a, env, stack, rset, parts)
            parts.append(",")
        parts.append(">")
    else:
        raise TypeError(p)


def normalize(p):
    return canonical(p)[0]


def process_key(p) -> str:
    return canonical(p)[1]


def io_subjects(p):
    """Free names used as input subjects and as output subjects."""
    ins, outs = capabilities(p)
    fn = free_names(p)
    return ins & fn, outs & fn


def cannot_interact(p, q) -> bool:
    """No free name is an input subject on one side and an output subject on the other."""
    pi, po = io_subjects(p)
    qi, qo = io_subjects(q)
    return not (pi & qo) and not (po & qi)
