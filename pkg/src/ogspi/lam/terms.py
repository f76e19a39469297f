"""Term syntax shared by the call-by-value, call-by-name and λρ calculi."""

from dataclasses import dataclass
from typing import Union

from ..names import Kind, Name, Supply


class Term:
    __slots__ = ()

    def __str__(self):
        return show(self)


@dataclass(frozen=True, slots=True)
class Var(Term):
    name: Name

    def __str__(self):
        return str(self.name)


@dataclass(frozen=True, slots=True)
class Lam(Term):
    var: Name
    body: Term

    def __str__(self):
        return show(self)


@dataclass(frozen=True, slots=True)
class App(Term):
    fun: Term
    arg: Term

    def __str__(self):
        return show(self)


@dataclass(frozen=True, slots=True)
class Hole(Term):
    """The hole of a context, only ever used for printing."""

    def __str__(self):
        return "[]"


@dataclass(frozen=True, slots=True)
class Loc:
    id: int

    def __str__(self):
        return f"l{self.id}"


@dataclass(frozen=True, slots=True)
class RhoNew(Term):
    store: tuple  # of (Loc, value) pairs
    body: Term

    def __str__(self):
        return show(self)


@dataclass(frozen=True, slots=True)
class Assign(Term):
    loc: Loc
    value: Term
    body: Term

    def __str__(self):
        return show(self)


@dataclass(frozen=True, slots=True)
class Deref(Term):
    loc: Loc

    def __str__(self):
        return f"!{self.loc}"


# Evaluation-context frames.  A context is a tuple of frames, innermost first.
@dataclass(frozen=True, slots=True)
class AppLeft:
    """``E M``: the hole is in function position."""
    arg: Term


@dataclass(frozen=True, slots=True)
class AppRight:
    """``V E``: the hole is in argument position."""
    fun: Term


Frame = Union[AppLeft, AppRight]
HOLE = Hole()


def plug(ctx, t: Term) -> Term:
    for fr in ctx:
        if type(fr) is AppLeft:
            t = App(t, fr.arg)
        else:
            t = App(fr.fun, t)
    return t


def show_ctx(ctx) -> str:
    return show(plug(ctx, HOLE))


def is_value(t: Term) -> bool:
    """CBV values: variables and abstractions."""
    return type(t) is Lam or (type(t) is Var and t.name.kind is Kind.VAR)


def free_names(t: Term) -> frozenset:
    out = set()
    _free(t, frozenset(), out)
    return frozenset(out)


def _free(t, bound, out):
    while True:
        tt = type(t)
        if tt is Var:
            if t.name not in bound:
                out.add(t.name)
            return
        if tt is Lam:
            bound = bound | {t.var}
            t = t.body
        elif tt is App:
            _free(t.fun, bound, out)
            t = t.arg
        elif tt is RhoNew:
            for _, v in t.store:
                _free(v, bound, out)
            t = t.body
        elif tt is Assign:
            _free(t.value, bound, out)
            t = t.body
        else:
            return


def free_vars(t: Term) -> frozenset:
    return free_names(t)


def ctx_free_names(ctx) -> frozenset:
    out = set()
    for fr in ctx:
        _free(fr.arg if type(fr) is AppLeft else fr.fun, frozenset(), out)
    return frozenset(out)


def all_names(t: Term, out=None) -> set:
    """Every name occurring in ``t``, free or bound."""
    if out is None:
        out = set()
    stack = [t]
    while stack:
        t = stack.pop()
        tt = type(t)
        if tt is Var:
            out.add(t.name)
        elif tt is Lam:
            out.add(t.var)
            stack.append(t.body)
        elif tt is App:
            stack.append(t.fun)
            stack.append(t.arg)
        elif tt is RhoNew:
            stack.extend(v for _, v in t.store)
            stack.append(t.body)
        elif tt is Assign:
            stack.append(t.value)
            stack.append(t.body)
    return out


def ctx_all_names(ctx, out=None) -> set:
    if out is None:
        out = set()
    for fr in ctx:
        all_names(fr.arg if type(fr) is AppLeft else fr.fun, out)
    return out


def size(t: Term) -> int:
    tt = type(t)
    if tt is Lam:
        return 1 + size(t.body)
    if tt is App:
        return 1 + size(t.fun) + size(t.arg)
    if tt is RhoNew:
        return 1 + size(t.body) + sum(size(v) for _, v in t.store)
    if tt is Assign:
        return 1 + size(t.value) + size(t.body)
    return 1


def locations(t: Term, out=None) -> set:
    if out is None:
        out = set()
    tt = type(t)
    if tt is Lam:
        locations(t.body, out)
    elif tt is App:
        locations(t.fun, out)
        locations(t.arg, out)
    elif tt is RhoNew:
        for l, v in t.store:
            out.add(l)
            locations(v, out)
        locations(t.body, out)
    elif tt is Assign:
        out.add(t.loc)
        locations(t.value, out)
        locations(t.body, out)
    elif tt is Deref:
        out.add(t.loc)
    return out


def subst(t: Term, x: Name, n: Term) -> Term:
    """Capture-avoiding substitution t{x := n}."""
    fv = free_names(n)
    supply = None
    locs = None
    top = t

    def go(t):
        nonlocal supply, locs
        tt = type(t)
        if tt is Var:
            return n if t.name == x else t
        if tt is Lam:
            if t.var == x:
                return t
            if t.var in fv:
                if supply is None:
                    supply = Supply(all_names(top)).avoid(all_names(n)).avoid([x])
                y = supply.fresh(Kind.VAR)
                body = rename_free(t.body, {t.var: y})
                return Lam(y, go(body))
            return Lam(t.var, go(t.body))
        if tt is App:
            return App(go(t.fun), go(t.arg))
        if tt is RhoNew:
            if locs is None:
                locs = locations(n)
            if locs and any(l in locs for l, _ in t.store):
                t = _rename_rho_binders(t, locs)
            return RhoNew(tuple((l, go(v)) for l, v in t.store), go(t.body))
        if tt is Assign:
            return Assign(t.loc, go(t.value), go(t.body))
        return t

    return go(t)


def _rename_rho_binders(t, avoid):
    top = max([l.id for l in avoid | locations(t)], default=-1) + 1
    ren = {}
    for l, _ in t.store:
        if l in avoid:
            ren[l] = Loc(top)
            top += 1
    return rename_locations(t, ren)


def rename_locations(t: Term, ren: dict) -> Term:
    """Rename locations (free or bound); used only with fresh targets."""
    if not ren:
        return t
    tt = type(t)
    if tt is Lam:
        return Lam(t.var, rename_locations(t.body, ren))
    if tt is App:
        return App(rename_locations(t.fun, ren), rename_locations(t.arg, ren))
    if tt is RhoNew:
        return RhoNew(tuple((ren.get(l, l), rename_locations(v, ren)) for l, v in t.store),
                      rename_locations(t.body, ren))
    if tt is Assign:
        return Assign(ren.get(t.loc, t.loc), rename_locations(t.value, ren),
                      rename_locations(t.body, ren))
    if tt is Deref:
        return Deref(ren.get(t.loc, t.loc))
    return t


def rename_free(t: Term, ren: dict) -> Term:
    """Rename free names by a map whose targets never occur bound in ``t``."""
    if not ren:
        return t
    tt = type(t)
    if tt is Var:
        m = ren.get(t.name)
        return t if m is None else Var(m)
    if tt is Lam:
        if t.var in ren:
            r = dict(ren)
            del r[t.var]
            return Lam(t.var, rename_free(t.body, r))
        return Lam(t.var, rename_free(t.body, ren))
    if tt is App:
        return App(rename_free(t.fun, ren), rename_free(t.arg, ren))
    if tt is RhoNew:
        return RhoNew(tuple((l, rename_free(v, ren)) for l, v in t.store), rename_free(t.body, ren))
    if tt is Assign:
        return Assign(t.loc, rename_free(t.value, ren), rename_free(t.body, ren))
    return t


def rename_names(t: Term, ren: dict) -> Term:
    """Rename free names; bound names colliding with targets are refreshed."""
    if not ren:
        return t
    targets = set(ren.values())
    if targets & _binders(t):
        supply = Supply(all_names(t)).avoid(targets).avoid(ren)
        t = _refresh_binders(t, targets, supply)
    return rename_free(t, ren)


def _binders(t, out=None):
    if out is None:
        out = set()
    tt = type(t)
    if tt is Lam:
        out.add(t.var)
        _binders(t.body, out)
    elif tt is App:
        _binders(t.fun, out)
        _binders(t.arg, out)
    elif tt is RhoNew:
        for _, v in t.store:
            _binders(v, out)
        _binders(t.body, out)
    elif tt is Assign:
        _binders(t.value, out)
        _binders(t.body, out)
    return out


def _refresh_binders(t, bad, supply):
    tt = type(t)
    if tt is Lam:
        body = _refresh_binders(t.body, bad, supply)
        if t.var in bad:
            y = supply.fresh(Kind.VAR)
            return Lam(y, rename_free(body, {t.var: y}))
        return Lam(t.var, body)
    if tt is App:
        return App(_refresh_binders(t.fun, bad, supply), _refresh_binders(t.arg, bad, supply))
    if tt is RhoNew:
        return RhoNew(tuple((l, _refresh_binders(v, bad, supply)) for l, v in t.store),
                      _refresh_binders(t.body, bad, supply))
    if tt is Assign:
        return Assign(t.loc, _refresh_binders(t.value, bad, supply),
                      _refresh_binders(t.body, bad, supply))
    return t


def rename_ctx(ctx, ren: dict):
    out = []
    for fr in ctx:
        if type(fr) is AppLeft:
            out.append(AppLeft(rename_names(fr.arg, ren)))
        else:
            out.append(AppRight(rename_names(fr.fun, ren)))
    return tuple(out)


def alpha_key(t: Term, bound=()) -> str:
    """A rendering invariant under renaming of bound variables."""
    parts = []
    _key(t, list(bound), parts)
    return "".join(parts)


def _key(t, stack, parts):
    tt = type(t)
    if tt is Var:
        for i in range(len(stack) - 1, -1, -1):
            if stack[i] == t.name:
                parts.append(f"#{len(stack) - 1 - i}")
                return
        parts.append(str(t.name))
    elif tt is Lam:
        parts.append("\\")
        stack.append(t.var)
        _key(t.body, stack, parts)
        stack.pop()
    elif tt is App:
        parts.append("(")
        _key(t.fun, stack, parts)
        parts.append(" ")
        _key(t.arg, stack, parts)
        parts.append(")")
    elif tt is Hole:
        parts.append("[]")
    elif tt is Deref:
        parts.append(f"!{t.loc}")
    elif tt is Assign:
        parts.append(f"({t.loc}:=")
        _key(t.value, stack, parts)
        parts.append(";")
        _key(t.body, stack, parts)
        parts.append(")")
    elif tt is RhoNew:
        parts.append("(rho{")
        for l, v in t.store:
            parts.append(f"{l}=")
            _key(v, stack, parts)
            parts.append(",")
        parts.append("}")
        _key(t.body, stack, parts)
        parts.append(")")
    else:
        raise TypeError(t)


def ctx_key(ctx) -> str:
    return alpha_key(plug(ctx, HOLE))


def show(t: Term) -> str:
    tt = type(t)
    if tt is Var:
        return str(t.name)
    if tt is Hole:
        return "[]"
    if tt is Deref:
        return f"!{t.loc}"
    if tt is Lam:
        return f"λ{t.var}. {show(t.body)}"
    if tt is RhoNew:
        store = ", ".join(f"{l} = {show(v)}" for l, v in t.store)
        return f"rho {{{store}}}. {show(t.body)}"
    if tt is Assign:
        return f"{t.loc} := {_atom(t.value)}; {show(t.body)}"
    if tt is App:
        f = t.fun
        fs = show(f) if type(f) is App else _atom(f)
        return f"{fs} {_atom(t.arg)}"
    raise TypeError(t)


def _atom(t):
    if type(t) in (Var, Hole, Deref):
        return show(t)
    return f"({show(t)})"
