"""Game configurations: alternating, concurrent and stacked."""

from dataclasses import dataclass

from ..lam.terms import (Term, alpha_key, ctx_all_names, ctx_free_names, ctx_key, free_names,
                         all_names, rename_ctx, rename_names, show, show_ctx)
from ..names import Kind, Name


class InvalidConfiguration(ValueError):
    pass


class IncompatibleConfigurations(ValueError):
    pass


class InvalidInterleaving(ValueError):
    pass


class MissingContinuationEntry(KeyError):
    pass


@dataclass(frozen=True, slots=True)
class ContEntry:
    """A stored evaluation context together with the continuation it returns to."""
    ctx: tuple
    cont: Name

    def __str__(self):
        return f"({show_ctx(self.ctx)}, {self.cont})"


@dataclass(frozen=True, slots=True)
class Initial:
    term: Term
    names: frozenset


@dataclass(frozen=True, slots=True)
class Active:
    term: Term
    cont: Name
    env: tuple
    names: frozenset


@dataclass(frozen=True, slots=True)
class Passive:
    env: tuple
    names: frozenset


@dataclass(frozen=True, slots=True)
class Concurrent:
    threads: tuple  # (continuation, term) pairs sorted by continuation
    env: tuple
    names: frozenset


@dataclass(frozen=True, slots=True)
class Stacked:
    base: object  # Initial, Active or Passive
    stack: tuple  # top first


def initial(term, names=()):
    return Initial(term, frozenset(names) | free_names(term))


def empty_config():
    return Concurrent((), (), frozenset())


def env_get(env, name):
    for n, e in env:
        if n == name:
            return e
    return None


def env_remove(env, name):
    return tuple((n, e) for n, e in env if n != name)


def env_names(env, out=None):
    """All names occurring in stored values and contexts (free or bound)."""
    if out is None:
        out = set()
    for n, e in env:
        out.add(n)
        if type(e) is ContEntry:
            out.add(e.cont)
            ctx_all_names(e.ctx, out)
        else:
            all_names(e, out)
    return out


def cont_structure(env):
    return frozenset((n, e.cont) for n, e in env if type(e) is ContEntry)


def is_initial(f):
    return type(f) is Initial or (type(f) is Stacked and type(f.base) is Initial)


def base_of(f):
    return f.base if type(f) is Stacked else f


def config_env(f):
    f = base_of(f)
    return () if type(f) is Initial else f.env


def player_names(f) -> frozenset:
    f = base_of(f)
    if type(f) is Initial:
        return frozenset()
    names = {n for n, _ in f.env}
    if type(f) is Concurrent:
        names.update(p for p, _ in f.threads)
    return frozenset(names)


def polarity(f) -> dict:
    """Player/Opponent polarity of the available names of ``f``.

    Player names are the domain of the environment (and the running threads
    of a concurrent configuration).  Opponent names are the remaining
    variables and value names of the support together with the continuation
    names still waiting for an answer; continuation names that have already
    been answered are no longer available and have no polarity.
    """
    f = base_of(f)
    if type(f) is Initial:
        return {n: "O" for n in f.names}
    pol = {}
    pnames = player_names(f)
    for n in f.names:
        if n in pnames:
            pol[n] = "P"
        elif n.kind is not Kind.CONT:
            pol[n] = "O"
    for _, e in f.env:
        if type(e) is ContEntry and e.cont not in pnames:
            pol[e.cont] = "O"
    if type(f) is Active:
        pol[f.cont] = "O"
    return pol


def pending_continuations(f) -> frozenset:
    """Continuation names whose answer a complete trace has to provide."""
    f = base_of(f)
    if type(f) is Initial:
        return frozenset()
    pend = {n for n, e in f.env if type(e) is ContEntry}
    if type(f) is Active:
        pend.add(f.cont)
    elif type(f) is Concurrent:
        pend.update(p for p, _ in f.threads)
    return frozenset(pend)


def is_strongly_passive(f) -> bool:
    if type(f) is Stacked:
        return type(f.base) is Passive and not f.stack
    if type(f) is Passive:
        return not any(type(e) is ContEntry for _, e in f.env)
    if type(f) is Concurrent:
        return not f.threads and not any(type(e) is ContEntry for _, e in f.env)
    return False


def is_passive(f) -> bool:
    f = base_of(f)
    return type(f) is Passive or (type(f) is Concurrent and not f.threads)


def occurring_names(f) -> set:
    f0 = base_of(f)
    out = set()
    if type(f0) is Initial:
        out |= free_names(f0.term)
        return out
    for n, e in f0.env:
        out.add(n)
        if type(e) is ContEntry:
            out.add(e.cont)
            out |= ctx_free_names(e.ctx)
        else:
            out |= free_names(e)
    if type(f0) is Active:
        out.add(f0.cont)
        out |= free_names(f0.term)
    elif type(f0) is Concurrent:
        for p, m in f0.threads:
            out.add(p)
            out |= free_names(m)
    if type(f) is Stacked:
        out.update(f.stack)
    return out


def validate(f):
    """Raise InvalidConfiguration unless ``f`` satisfies the validity conditions."""
    f0 = base_of(f)
    names = f0.names
    occ = occurring_names(f)
    missing = occ - names
    if missing:
        raise InvalidConfiguration(f"names {sorted(map(str, missing))} are not in the support")
    if type(f0) is Initial:
        if type(f) is Stacked and f.stack:
            raise InvalidConfiguration("an initial configuration has an empty stack")
        return f
    dom = [n for n, _ in f0.env]
    if len(set(dom)) != len(dom):
        raise InvalidConfiguration("environment domain has duplicates")
    pnames = player_names(f0)
    if type(f0) is Concurrent:
        threads = [p for p, _ in f0.threads]
        if len(set(threads)) != len(threads):
            raise InvalidConfiguration("duplicate running thread")
        if set(threads) & set(dom):
            raise InvalidConfiguration("threads and environment must have disjoint domains")
        for p, m in f0.threads:
            if p.kind is not Kind.CONT:
                raise InvalidConfiguration(f"thread name {p} is not a continuation")
            if free_names(m) & pnames:
                raise InvalidConfiguration(f"thread {p} mentions a Player name")
    if type(f0) is Active:
        if f0.cont in pnames:
            raise InvalidConfiguration("the running continuation must be an Opponent name")
        if free_names(f0.term) & pnames:
            raise InvalidConfiguration("the running term mentions a Player name")
    for n, e in f0.env:
        if type(e) is ContEntry:
            if n.kind is not Kind.CONT:
                raise InvalidConfiguration(f"context stored under non-continuation {n}")
            inner = ctx_free_names(e.ctx) | {e.cont}
        else:
            if n.kind is Kind.CONT:
                raise InvalidConfiguration(f"term stored under continuation {n}")
            inner = free_names(e)
        if inner & pnames:
            raise InvalidConfiguration(f"entry {n} mentions a Player name")
    if type(f) is Stacked:
        if len(set(f.stack)) != len(f.stack):
            raise InvalidConfiguration("stack names must be distinct")
        for q in f.stack:
            if type(env_get(f0.env, q)) is not ContEntry:
                raise InvalidConfiguration(f"stack name {q} has no continuation entry")
    return f


def _env_key(env):
    parts = []
    for n, e in sorted(env, key=lambda ne: ne[0]):
        if type(e) is ContEntry:
            parts.append(f"{n}:[{ctx_key(e.ctx)},{e.cont}]")
        else:
            parts.append(f"{n}:{alpha_key(e)}")
    return ";".join(parts)


def config_key(f) -> str:
    """A rendering that identifies configurations up to α and environment order."""
    t = type(f)
    names = ",".join(map(str, sorted(f.names))) if t is not Stacked else ""
    if t is Initial:
        return f"I<{alpha_key(f.term)}|{names}>"
    if t is Active:
        return f"A<{alpha_key(f.term)},{f.cont}|{_env_key(f.env)}|{names}>"
    if t is Passive:
        return f"P<{_env_key(f.env)}|{names}>"
    if t is Concurrent:
        th = ";".join(f"{p}:{alpha_key(m)}" for p, m in f.threads)
        return f"C<{th}|{_env_key(f.env)}|{names}>"
    if t is Stacked:
        return f"S<{config_key(f.base)}|{','.join(map(str, f.stack))}>"
    raise TypeError(f)


def _rename_env(env, ren):
    out = []
    for n, e in env:
        if type(e) is ContEntry:
            out.append((ren.get(n, n), ContEntry(rename_ctx(e.ctx, ren), ren.get(e.cont, e.cont))))
        else:
            out.append((ren.get(n, n), rename_names(e, ren)))
    return tuple(out)


def rename_config(f, ren: dict):
    """Rename free names everywhere, including the support."""
    if not ren:
        return f
    t = type(f)
    if t is Stacked:
        return Stacked(rename_config(f.base, ren), tuple(ren.get(q, q) for q in f.stack))
    names = frozenset(ren.get(n, n) for n in f.names)
    if t is Initial:
        return Initial(rename_names(f.term, ren), names)
    if t is Active:
        return Active(rename_names(f.term, ren), ren.get(f.cont, f.cont), _rename_env(f.env, ren),
                      names)
    if t is Passive:
        return Passive(_rename_env(f.env, ren), names)
    if t is Concurrent:
        threads = tuple(sorted((ren.get(p, p), rename_names(m, ren)) for p, m in f.threads))
        return Concurrent(threads, _rename_env(f.env, ren), names)
    raise TypeError(f)


def _show_env(env):
    out = []
    for n, e in env:
        out.append(f"{n} |-> {e}" if type(e) is ContEntry else f"{n} |-> {show(e)}")
    return out


def show_config(f) -> str:
    t = type(f)
    if t is Stacked:
        inner = show_config(f.base)
        return inner[:-1] + f" | stack: {', '.join(map(str, f.stack))}>"
    names = ", ".join(map(str, sorted(f.names)))
    if t is Initial:
        return f"<init {show(f.term)} | names: {names}>"
    entries = []
    if t is Active:
        entries.append(f"{f.cont} |-> {show(f.term)}")
    if t is Concurrent:
        entries.extend(f"{p} |-> {show(m)}" for p, m in f.threads)
    entries.extend(_show_env(f.env))
    return f"<{' ; '.join(entries)} | names: {names}>"


def to_concurrent(f):
    """View an alternating configuration as a concurrent one."""
    t = type(f)
    if t is Concurrent or t is Initial:
        return f
    if t is Active:
        return Concurrent(((f.cont, f.term),), f.env, f.names)
    if t is Passive:
        return Concurrent((), f.env, f.names)
    if t is Stacked:
        return to_concurrent(f.base)
    raise TypeError(f)


def to_alternating(f):
    """View a concurrent configuration with at most one thread as alternating."""
    t = type(f)
    if t is Concurrent:
        if len(f.threads) > 1:
            raise InvalidConfiguration("more than one running thread")
        if f.threads:
            (p, m), = f.threads
            return Active(m, p, f.env, f.names)
        return Passive(f.env, f.names)
    if t is Stacked:
        return f.base
    return f


def erase(f):
    """Forget the stack of a stacked configuration."""
    return f.base if type(f) is Stacked else f
