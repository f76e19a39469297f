"""Call-by-name terms and game configurations as πI processes.

Function arguments become replicated servers ``!x(q).[M]q``; an abstraction
answers with a single-use value name ``p^(v).v(x,q).[M]q``.  Terms whose
head is an Opponent value name call back into the environment.
"""

from ..lam.terms import App, Lam, Var, all_names
from ..names import Kind, Supply
from ..ogs.config import (Active, Concurrent, ContEntry, Initial, Stacked, env_names,
                          validate)
from ..lam.reduce import Callback, Value, decompose_cbn
from ..pii.syntax import NIL, Inp, Literal, Out, Par, Rep, Res, forwarder, par


def _fwd(a, b):
    return forwarder(a, b, "cbn")


class _Encoder:
    def __init__(self, supply):
        self.sup = supply

    def fresh(self, kind):
        return self.sup.fresh(kind)

    def server(self, x, m):
        q = self.fresh(Kind.CONT)
        return Rep(x, (q,), self.term(m, q))

    def term(self, m, p):
        head = m
        while type(head) is App:
            head = head.fun
        if type(head) is Var and head.name.kind is Kind.VAL:
            d = decompose_cbn(m)
            if type(d) is Value:
                w = self.fresh(Kind.VAL)
                return Out(p, (w,), _fwd(w, head.name))
            assert type(d) is Callback
            x, r = self.fresh(Kind.VAR), self.fresh(Kind.CONT)
            return Out(d.name, (x, r), Par(self.context(r, d.ctx, p), self.server(x, d.arg)))
        t = type(m)
        if t is Lam:
            v, q = self.fresh(Kind.VAL), self.fresh(Kind.CONT)
            return Out(p, (v,), Inp(v, (m.var, q), self.term(m.body, q)))
        if t is Var:
            r = self.fresh(Kind.CONT)
            return Out(m.name, (r,), _fwd(r, p))
        q, v, x, p2 = (self.fresh(Kind.CONT), self.fresh(Kind.VAL), self.fresh(Kind.VAR),
                       self.fresh(Kind.CONT))
        return Res(q, Par(self.term(m.fun, q),
                          Inp(q, (v,), Out(v, (x, p2), Par(_fwd(p2, p), self.server(x, m.arg))))))

    def context(self, q, ctx, p):
        """The entry ``[q -> (E, p)]``; frames are innermost first."""
        if not ctx:
            return _fwd(q, p)
        arg = ctx[0].arg
        v, x, r = self.fresh(Kind.VAL), self.fresh(Kind.VAR), self.fresh(Kind.CONT)
        return Inp(q, (v,), Out(v, (x, r), Par(self.context(r, ctx[1:], p), self.server(x, arg))))

    def env(self, env):
        parts = []
        for n, e in env:
            if type(e) is ContEntry:
                parts.append(self.context(n, e.ctx, e.cont))
            elif n.kind is Kind.VAL:
                if type(e) is Lam:
                    q = self.fresh(Kind.CONT)
                    parts.append(Inp(n, (e.var, q), self.term(e.body, q)))
                else:
                    parts.append(_fwd(n, e.name))
            else:
                parts.append(self.server(n, e))
        return parts


def _supply(names):
    return Supply(n for n in names if n.id >= 0)


def encode_cbn(m):
    sup = _supply(all_names(m))
    p = sup.fresh(Kind.CONT)
    return Literal((p,), _Encoder(sup).term(m, p))


def encode_cbn_term_at(m, p):
    return _Encoder(_supply(all_names(m) | {p})).term(m, p)


def encode_cbn_config(f):
    """Call-by-name configurations: running terms on their continuation, entries as servers."""
    validate(f)
    b = f.base if type(f) is Stacked else f
    if type(b) is Initial:
        return encode_cbn(b.term)
    names = set(b.names)
    env_names(b.env, names)
    if type(b) is Active:
        all_names(b.term, names)
    elif type(b) is Concurrent:
        for _, m in b.threads:
            all_names(m, names)
    enc = _Encoder(_supply(names))
    parts = []
    if type(b) is Active:
        parts.append(enc.term(b.term, b.cont))
    elif type(b) is Concurrent:
        parts.extend(enc.term(m, p) for p, m in b.threads)
    parts.extend(enc.env(b.env))
    return par(*parts) if parts else NIL
