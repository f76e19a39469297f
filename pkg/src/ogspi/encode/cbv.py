"""Call-by-value λ-terms and game configurations as πI processes.

Values are servers: ``V[λx.M]y = !y(x,q).[M]q`` and ``V[x]y = y -> x``.
A term ``[M]p`` answers its value on ``p``.  Two encodings are provided: the
plain one treats every application the same way, the optimised one avoids
administrative communications whenever a side of an application is already
a value.
"""

from ..lam.terms import Var, all_names, is_value, plug
from ..names import Kind, Supply
from ..ogs.config import (Active, Concurrent, ContEntry, Initial, Stacked,
                          env_names, validate)
from ..pii.syntax import NIL, Inp, Literal, Out, Par, Rep, Res, forwarder, par


def _fwd(a, b):
    return forwarder(a, b, "cbv")


class _Encoder:
    def __init__(self, supply, optimised):
        self.sup = supply
        self.opt = optimised

    def fresh(self, kind):
        return self.sup.fresh(kind)

    def value(self, v, y):
        if type(v) is Var:
            return _fwd(y, v.name)
        q = self.fresh(Kind.CONT)
        return Rep(y, (v.var, q), self.term(v.body, q))

    def term(self, m, p):
        if is_value(m):
            y = self.fresh(Kind.VAR)
            return Out(p, (y,), self.value(m, y))
        if self.opt:
            return self._opt_app(m, p)
        return self._plain_app(m.fun, m.arg, p)

    def _call(self, y, w, p):
        """``y^(w',p').(w' -> w | p' -> p)``"""
        w2, p2 = self.fresh(Kind.VAR), self.fresh(Kind.CONT)
        return Out(y, (w2, p2), Par(_fwd(w2, w), _fwd(p2, p)))

    def _plain_app(self, m, n, p):
        q, y, r, w = (self.fresh(Kind.CONT), self.fresh(Kind.VAR), self.fresh(Kind.CONT),
                      self.fresh(Kind.VAR))
        call = self._call(y, w, p)
        inner = Res(r, Par(self.term(n, r), Inp(r, (w,), call)))
        return Res(q, Par(self.term(m, q), Inp(q, (y,), inner)))

    def _opt_app(self, t, p):
        m, n = t.fun, t.arg
        mv, nv = is_value(m), is_value(n)
        if mv and nv and type(m) is Var:
            z, q = self.fresh(Kind.VAR), self.fresh(Kind.CONT)
            return Out(m.name, (z, q), Par(self.value(n, z), _fwd(q, p)))
        if mv and nv:
            y, w = self.fresh(Kind.VAR), self.fresh(Kind.VAR)
            return Res(y, Res(w, Par(self.value(m, y), Par(self.value(n, w), self._call(y, w, p)))))
        if mv:
            y, r, w = self.fresh(Kind.VAR), self.fresh(Kind.CONT), self.fresh(Kind.VAR)
            return Res(y, Par(self.value(m, y),
                              Res(r, Par(self.term(n, r), Inp(r, (w,), self._call(y, w, p))))))
        if nv:
            q, y, w = self.fresh(Kind.CONT), self.fresh(Kind.VAR), self.fresh(Kind.VAR)
            return Res(q, Par(self.term(m, q),
                              Inp(q, (y,), Res(w, Par(self.value(n, w), self._call(y, w, p))))))
        return self._plain_app(m, n, p)

    def env(self, env):
        parts = []
        for n, e in env:
            if type(e) is ContEntry:
                x = self.fresh(Kind.VAR)
                parts.append(Inp(n, (x,), self.term(plug(e.ctx, Var(x)), e.cont)))
            else:
                parts.append(self.value(e, n))
        return parts


def _supply_for(names):
    return Supply(n for n in names if n.id >= 0)


def encode_cbv(m, optimised=False):
    """``[M]`` as an abstraction over its result continuation."""
    sup = _supply_for(all_names(m))
    p = sup.fresh(Kind.CONT)
    return Literal((p,), _Encoder(sup, optimised).term(m, p))


def encode_cbv_opt(m):
    return encode_cbv(m, optimised=True)


def encode_term_at(m, p, optimised=False):
    """``[M]p`` for a given continuation name ``p``."""
    sup = _supply_for(all_names(m) | {p})
    return _Encoder(sup, optimised).term(m, p)


def encode_value_at(v, y, optimised=False):
    sup = _supply_for(all_names(v) | {y})
    return _Encoder(sup, optimised).value(v, y)


def _config_names(f):
    b = f.base if type(f) is Stacked else f
    names = set(b.names)
    if type(b) is Initial:
        return names | all_names(b.term)
    env_names(b.env, names)
    if type(b) is Active:
        all_names(b.term, names)
    elif type(b) is Concurrent:
        for _, m in b.threads:
            all_names(m, names)
    return names


def encode_config(f, variant="plain"):
    """Translate a call-by-value configuration into a πI agent.

    Environment entries become servers and waiting contexts, running terms
    are encoded on their continuation, and an initial configuration becomes
    the bare abstraction ``[M]``.
    """
    validate(f)
    opt = variant == "opt"
    b = f.base if type(f) is Stacked else f
    if type(b) is Initial:
        return encode_cbv(b.term, optimised=opt)
    enc = _Encoder(_supply_for(_config_names(f)), opt)
    parts = []
    if type(b) is Active:
        parts.append(enc.term(b.term, b.cont))
    elif type(b) is Concurrent:
        parts.extend(enc.term(m, p) for p, m in b.threads)
    parts.extend(enc.env(b.env))
    return par(*parts) if parts else NIL
