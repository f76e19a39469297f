"""Small-step reduction: call-by-value, call-by-name and λρ with a store."""

from dataclasses import dataclass

from ..names import Kind, Name
from .terms import (App, AppLeft, AppRight, Assign, Deref, Lam, Loc, RhoNew, Term, Var,
                    is_value, locations, plug, rename_locations, subst)


# Decomposition results ---------------------------------------------------

@dataclass(frozen=True, slots=True)
class Redex:
    ctx: tuple
    fun: Lam
    arg: Term


@dataclass(frozen=True, slots=True)
class Value:
    term: Term


@dataclass(frozen=True, slots=True)
class Stuck:
    """``E[x V]`` in call-by-value, ``E[x]`` in call-by-name (``value`` is None)."""
    ctx: tuple
    var: Name
    value: Term | None = None


@dataclass(frozen=True, slots=True)
class Callback:
    """Call-by-name ``E[v M]`` with ``v`` a value name."""
    ctx: tuple
    name: Name
    arg: Term


@dataclass(frozen=True, slots=True)
class StoreOp:
    ctx: tuple
    term: Term


@dataclass(frozen=True, slots=True)
class FuelExhausted:
    term: Term
    steps: int


class StuckDeref(Exception):
    """A dereference or assignment on a location outside the store."""

    def __init__(self, loc):
        super().__init__(f"location {loc} is not allocated")
        self.loc = loc


def decompose_cbv(m: Term):
    """Split ``m`` into an evaluation context and its next redex.

    The function position is evaluated before the argument.  Returns one of
    Value, Redex, Stuck (an open call ``E[x V]``) or StoreOp for λρ terms.
    """
    frames = []
    t = m
    while True:
        tt = type(t)
        if tt is App:
            f, a = t.fun, t.arg
            if not is_value(f):
                frames.append(AppLeft(a))
                t = f
                continue
            if not is_value(a):
                frames.append(AppRight(f))
                t = a
                continue
            frames.reverse()
            if type(f) is Lam:
                return Redex(tuple(frames), f, a)
            return Stuck(tuple(frames), f.name, a)
        if tt is RhoNew or tt is Assign or tt is Deref:
            frames.reverse()
            return StoreOp(tuple(frames), t)
        if frames:
            raise AssertionError("decomposition reached a value below a frame")
        if not is_value(t):
            raise TypeError(f"not a call-by-value term: {t}")
        return Value(t)


def step_cbv(m: Term):
    """One βv step, or None when ``m`` is a value or a stuck call."""
    d = decompose_cbv(m)
    if type(d) is Redex:
        return plug(d.ctx, subst(d.fun.body, d.fun.var, d.arg))
    if type(d) is StoreOp:
        raise TypeError("store operations need step_rho")
    return None


def eval_enf(m: Term, fuel: int):
    """Reduce to an eager normal form: Value, Stuck, or FuelExhausted."""
    steps = 0
    while True:
        d = decompose_cbv(m)
        if type(d) is not Redex:
            if type(d) is StoreOp:
                raise TypeError("store operations need step_rho")
            return d
        if steps >= fuel:
            return FuelExhausted(m, steps)
        m = plug(d.ctx, subst(d.fun.body, d.fun.var, d.arg))
        steps += 1


def decompose_cbn(t: Term):
    """Head decomposition for call-by-name extended terms.

    Returns Redex, Value (an abstraction or a bare value name), Stuck
    (``E[x]``, value None) or Callback (``E[v M]``).
    """
    spine = []
    while type(t) is App:
        spine.append(AppLeft(t.arg))
        t = t.fun
    spine.reverse()  # innermost first
    if type(t) is Lam:
        if spine:
            return Redex(tuple(spine[1:]), t, spine[0].arg)
        return Value(t)
    if type(t) is Var:
        if t.name.kind is Kind.VAL:
            if spine:
                return Callback(tuple(spine[1:]), t.name, spine[0].arg)
            return Value(t)
        return Stuck(tuple(spine), t.name)
    raise TypeError(f"not a call-by-name term: {t}")


def step_cbn(t: Term):
    d = decompose_cbn(t)
    if type(d) is Redex:
        return plug(d.ctx, subst(d.fun.body, d.fun.var, d.arg))
    return None


def is_cbn_value(t: Term) -> bool:
    return type(t) is Lam or (type(t) is Var and t.name.kind is Kind.VAL)


# λρ --------------------------------------------------------------------

def store_get(store, loc):
    for l, v in store:
        if l == loc:
            return v
    return None


def store_set(store, loc, value):
    return tuple((l, value if l == loc else v) for l, v in store)


def store_locations(store):
    out = set()
    for l, v in store:
        out.add(l)
        locations(v, out)
    return out


def step_rho(m: Term, store: tuple = ()):
    """One λρ step on ``(m, store)``.

    Returns the successor pair, or None on a normal form.  Raises StuckDeref
    when a dereference or assignment targets an unallocated location.
    """
    d = decompose_cbv(m)
    tt = type(d)
    if tt is Redex:
        return plug(d.ctx, subst(d.fun.body, d.fun.var, d.arg)), store
    if tt is not StoreOp:
        return None
    t = d.term
    if type(t) is Deref:
        v = store_get(store, t.loc)
        if v is None:
            raise StuckDeref(t.loc)
        return plug(d.ctx, v), store
    if type(t) is Assign:
        if store_get(store, t.loc) is None:
            raise StuckDeref(t.loc)
        return plug(d.ctx, t.body), store_set(store, t.loc, t.value)
    # allocation: only locations clashing with the store or the context move
    clash = store_locations(store)
    for fr in d.ctx:
        locations(fr.arg if type(fr) is AppLeft else fr.fun, clash)
    top = max((l.id for l in clash | locations(t)), default=-1) + 1
    ren = {}
    for l, _ in t.store:
        if l in clash:
            ren[l] = Loc(top)
            top += 1
    fresh = rename_locations(t, ren)
    return plug(d.ctx, fresh.body), store + fresh.store


@dataclass(frozen=True, slots=True)
class RhoResult:
    """Outcome of running a λρ program: kind is value, stuck, deref or fuel."""
    kind: str
    term: Term
    store: tuple
    steps: int


def run_rho(m: Term, store: tuple = (), fuel: int = 1000) -> RhoResult:
    steps = 0
    while True:
        try:
            nxt = step_rho(m, store)
        except StuckDeref:
            return RhoResult("deref", m, store, steps)
        if nxt is None:
            kind = "value" if is_value(m) else "stuck"
            return RhoResult(kind, m, store, steps)
        if steps >= fuel:
            return RhoResult("fuel", m, store, steps)
        m, store = nxt
        steps += 1
