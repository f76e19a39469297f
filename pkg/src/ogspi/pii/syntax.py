"""Internal π-calculus agents, the constants table and forwarders."""

from dataclasses import dataclass

from ..names import Kind, Name, reserved


class ArityMismatch(ValueError):
    pass


class KindMismatch(ValueError):
    pass


class Proc:
    __slots__ = ()

    def __str__(self):
        return show(self)


@dataclass(frozen=True, slots=True)
class Nil(Proc):
    def __str__(self):
        return "0"


@dataclass(frozen=True, slots=True)
class Inp(Proc):
    subject: Name
    params: tuple
    body: Proc

    def __str__(self):
        return show(self)


@dataclass(frozen=True, slots=True)
class Out(Proc):
    """Bound output ``a^(b).P``."""
    subject: Name
    params: tuple
    body: Proc

    def __str__(self):
        return show(self)


@dataclass(frozen=True, slots=True)
class Rep(Proc):
    """Replicated input ``!a(b).P``."""
    subject: Name
    params: tuple
    body: Proc

    def __str__(self):
        return show(self)


@dataclass(frozen=True, slots=True)
class Res(Proc):
    name: Name
    body: Proc

    def __str__(self):
        return show(self)


@dataclass(frozen=True, slots=True)
class Par(Proc):
    left: Proc
    right: Proc

    def __str__(self):
        return show(self)


@dataclass(frozen=True, slots=True)
class Literal:
    """An abstraction ``(a1,...,an) P``; also an agent in its own right."""
    params: tuple
    body: Proc

    def __str__(self):
        return f"({','.join(map(str, self.params))}) {show(self.body)}"


@dataclass(frozen=True, slots=True)
class Constant:
    ident: str

    def __str__(self):
        return self.ident


@dataclass(frozen=True, slots=True)
class Apply(Proc):
    abstraction: object  # Literal or Constant
    args: tuple

    def __str__(self):
        return show(self)


NIL = Nil()


def par(*procs):
    """Right-nested parallel composition, dropping 0."""
    ps = [p for p in procs if type(p) is not Nil]
    if not ps:
        return NIL
    acc = ps[-1]
    for p in reversed(ps[:-1]):
        acc = Par(p, acc)
    return acc


def res(names, body):
    for n in reversed(tuple(names)):
        body = Res(n, body)
    return body


# Constants ---------------------------------------------------------------

CONSTANTS: dict = {}
# For every constant, which parameter positions are used as input subjects
# and which as output subjects (computed once the table is complete).
INPUT_PARAMS: dict = {}
OUTPUT_PARAMS: dict = {}


def _r(kind, i):
    return reserved(kind, i)


def _define_forwarders():
    X, P, V = Kind.VAR, Kind.CONT, Kind.VAL
    # call-by-value continuation: a(x).b^(y).(y -> x)
    a, b, x, y = _r(P, 0), _r(P, 1), _r(X, 2), _r(X, 3)
    CONSTANTS["fwd_p"] = Literal((a, b), Inp(a, (x,), Out(b, (y,), Apply(Constant("fwd_x"), (y, x)))))
    # call-by-value variable: !a(z,p).b^(w,q).(q -> p | w -> z)
    a, b, z, p, w, q = _r(X, 0), _r(X, 1), _r(X, 2), _r(P, 3), _r(X, 4), _r(P, 5)
    CONSTANTS["fwd_x"] = Literal((a, b), Rep(a, (z, p), Out(b, (w, q), Par(
        Apply(Constant("fwd_p"), (q, p)), Apply(Constant("fwd_x"), (w, z))))))
    # call-by-name variable: !a(p).b^(q).(q -> p)
    a, b, p, q = _r(X, 0), _r(X, 1), _r(P, 2), _r(P, 3)
    CONSTANTS["nfwd_x"] = Literal((a, b), Rep(a, (p,), Out(b, (q,), Apply(Constant("nfwd_p"), (q, p)))))
    # call-by-name continuation: a(v).b^(w).(w -> v)
    a, b, v, w = _r(P, 0), _r(P, 1), _r(V, 2), _r(V, 3)
    CONSTANTS["nfwd_p"] = Literal((a, b), Inp(a, (v,), Out(b, (w,), Apply(Constant("nfwd_v"), (w, v)))))
    # call-by-name value name: a(x,p).b^(y,q).(y -> x | q -> p)
    a, b, x, p, y, q = _r(V, 0), _r(V, 1), _r(X, 2), _r(P, 3), _r(X, 4), _r(P, 5)
    CONSTANTS["nfwd_v"] = Literal((a, b), Inp(a, (x, p), Out(b, (y, q), Par(
        Apply(Constant("nfwd_x"), (y, x)), Apply(Constant("nfwd_p"), (q, p))))))


def define_constant(ident, literal):
    """Add a name-closed definition; recomputes the capability tables."""
    if free_names(literal.body) - set(literal.params):
        raise ValueError(f"definition of {ident} is not name-closed")
    CONSTANTS[ident] = literal
    _compute_capabilities()


def _compute_capabilities():
    for k in CONSTANTS:
        INPUT_PARAMS[k] = frozenset()
        OUTPUT_PARAMS[k] = frozenset()
    changed = True
    while changed:
        changed = False
        for k, lit in CONSTANTS.items():
            ins, outs = set(), set()
            _capabilities(lit.body, ins, outs)
            ip = frozenset(i for i, n in enumerate(lit.params) if n in ins)
            op = frozenset(i for i, n in enumerate(lit.params) if n in outs)
            if ip != INPUT_PARAMS[k] or op != OUTPUT_PARAMS[k]:
                INPUT_PARAMS[k], OUTPUT_PARAMS[k] = ip, op
                changed = True


def _capabilities(p, ins, outs):
    """Names occurring in input / output subject position anywhere in ``p``."""
    stack = [p]
    while stack:
        p = stack.pop()
        t = type(p)
        if t is Inp or t is Rep:
            ins.add(p.subject)
            stack.append(p.body)
        elif t is Out:
            outs.add(p.subject)
            stack.append(p.body)
        elif t is Res:
            stack.append(p.body)
        elif t is Par:
            stack.append(p.left)
            stack.append(p.right)
        elif t is Apply:
            ab = p.abstraction
            if type(ab) is Constant:
                for i in INPUT_PARAMS.get(ab.ident, ()):
                    ins.add(p.args[i])
                for i in OUTPUT_PARAMS.get(ab.ident, ()):
                    outs.add(p.args[i])
            else:
                sub_in, sub_out = set(), set()
                _capabilities(ab.body, sub_in, sub_out)
                ren = dict(zip(ab.params, p.args))
                ins.update(ren.get(n, n) for n in sub_in)
                outs.update(ren.get(n, n) for n in sub_out)
        elif t is Literal:
            stack.append(p.body)


def capabilities(p):
    ins, outs = set(), set()
    _capabilities(p, ins, outs)
    return ins, outs


_FWD = {("cbv", Kind.CONT): "fwd_p", ("cbv", Kind.VAR): "fwd_x",
        ("cbn", Kind.VAR): "nfwd_x", ("cbn", Kind.CONT): "nfwd_p", ("cbn", Kind.VAL): "nfwd_v"}


def forwarder(a: Name, b: Name, calculus="cbv") -> Proc:
    """The link ``a -> b``: inputs at ``a`` are re-emitted as outputs at ``b``."""
    if a.kind is not b.kind:
        raise KindMismatch(f"cannot link {a} to {b}")
    ident = _FWD.get((calculus, a.kind))
    if ident is None:
        raise KindMismatch(f"no {calculus} forwarder for {a.kind.name} names")
    return Apply(Constant(ident), (a, b))


def unfold(p: Apply) -> Proc:
    ab = p.abstraction
    lit = CONSTANTS[ab.ident] if type(ab) is Constant else ab
    if len(lit.params) != len(p.args):
        raise ArityMismatch(f"{ab} expects {len(lit.params)} names, got {len(p.args)}")
    return rename(lit.body, dict(zip(lit.params, p.args)))


# Names -------------------------------------------------------------------

def free_names(p, bound=frozenset()) -> set:
    out = set()
    _fn(p, bound, out)
    return out


def _fn(p, bound, out):
    while True:
        t = type(p)
        if t is Inp or t is Out or t is Rep:
            if p.subject not in bound:
                out.add(p.subject)
            bound = bound | set(p.params)
            p = p.body
        elif t is Res:
            bound = bound | {p.name}
            p = p.body
        elif t is Par:
            _fn(p.left, bound, out)
            p = p.right
        elif t is Apply:
            for a in p.args:
                if a not in bound:
                    out.add(a)
            if type(p.abstraction) is Literal:
                lit = p.abstraction
                _fn(lit.body, bound | set(lit.params), out)
            return
        elif t is Literal:
            bound = bound | set(p.params)
            p = p.body
        else:
            return


def all_names(p, out=None) -> set:
    if out is None:
        out = set()
    stack = [p]
    while stack:
        p = stack.pop()
        t = type(p)
        if t is Inp or t is Out or t is Rep:
            out.add(p.subject)
            out.update(p.params)
            stack.append(p.body)
        elif t is Res:
            out.add(p.name)
            stack.append(p.body)
        elif t is Par:
            stack.append(p.left)
            stack.append(p.right)
        elif t is Apply:
            out.update(p.args)
            if type(p.abstraction) is Literal:
                stack.append(p.abstraction)
        elif t is Literal:
            out.update(p.params)
            stack.append(p.body)
    return out


def rename(p, ren: dict):
    """Rename free names; binders shadow.

    Targets are assumed never to occur as binders in ``p`` (they are fresh,
    placeholders, or free names of the enclosing agent), so no capture can
    happen.
    """
    if not ren:
        return p
    t = type(p)
    if t is Inp or t is Out or t is Rep:
        s = ren.get(p.subject, p.subject)
        r = ren
        if any(x in ren for x in p.params):
            r = {k: v for k, v in ren.items() if k not in p.params}
        return t(s, p.params, rename(p.body, r))
    if t is Res:
        if p.name in ren:
            r = {k: v for k, v in ren.items() if k != p.name}
            return Res(p.name, rename(p.body, r))
        return Res(p.name, rename(p.body, ren))
    if t is Par:
        return Par(rename(p.left, ren), rename(p.right, ren))
    if t is Apply:
        ab = p.abstraction
        if type(ab) is Literal:
            ab = rename(ab, ren)
        return Apply(ab, tuple(ren.get(a, a) for a in p.args))
    if t is Literal:
        r = {k: v for k, v in ren.items() if k not in p.params}
        return Literal(p.params, rename(p.body, r))
    return p


# Printing ----------------------------------------------------------------

def show(p) -> str:
    t = type(p)
    if t is Nil:
        return "0"
    if t is Literal:
        return f"({','.join(map(str, p.params))}) {show(p.body)}"
    if t is Inp:
        return f"{p.subject}({','.join(map(str, p.params))}).{_guarded(p.body)}"
    if t is Out:
        return f"{p.subject}^({','.join(map(str, p.params))}).{_guarded(p.body)}"
    if t is Rep:
        return f"!{p.subject}({','.join(map(str, p.params))}).{_guarded(p.body)}"
    if t is Res:
        names = [p.name]
        body = p.body
        while type(body) is Res:
            names.append(body.name)
            body = body.body
        return f"nu {','.join(map(str, names))}. {_guarded(body)}"
    if t is Par:
        return f"{_par_item(p.left)} | {show(p.right)}"
    if t is Apply:
        ab = p.abstraction
        args = ",".join(map(str, p.args))
        if type(ab) is Constant:
            return f"{ab.ident}<{args}>"
        return f"({show(ab)})<{args}>"
    raise TypeError(p)


def _guarded(p):
    return f"({show(p)})" if type(p) is Par else show(p)


def _par_item(p):
    return f"({show(p)})" if type(p) in (Par, Res) else show(p)


_define_forwarders()
_compute_capabilities()
