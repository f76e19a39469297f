"""Tensor products of configurations and the singleton decomposition."""

from .config import (Active, Concurrent, IncompatibleConfigurations, Initial,
                     InvalidInterleaving, Passive, Stacked, cont_structure, player_names,
                     polarity)


def compatible(f, g) -> bool:
    """Polarities agree on every name both configurations know."""
    pf, pg = polarity(f), polarity(g)
    return all(pg[n] == pol for n, pol in pf.items() if n in pg)


def continuation_structure(f):
    b = f.base if type(f) is Stacked else f
    if type(b) is Initial:
        return frozenset()
    cs = set(cont_structure(b.env))
    if type(b) is Active:
        cs.add(("running", b.cont))
    elif type(b) is Concurrent:
        cs.update(("running", p) for p, _ in b.threads)
    return frozenset(cs)


def support_equivalent(f, g) -> bool:
    if polarity(f) != polarity(g):
        return False
    if continuation_structure(f) != continuation_structure(g):
        return False
    if type(f) is Stacked or type(g) is Stacked:
        return type(f) is type(g) and f.stack == g.stack
    return True


def is_interleaving(s, a, b) -> bool:
    """Is ``s`` an order-preserving merge of sequences ``a`` and ``b``?"""
    if len(s) != len(a) + len(b):
        return False
    reach = {(0, 0)}
    for x in s:
        nxt = set()
        for i, j in reach:
            if i < len(a) and a[i] == x:
                nxt.add((i + 1, j))
            if j < len(b) and b[j] == x:
                nxt.add((i, j + 1))
        if not nxt:
            return False
        reach = nxt
    return (len(a), len(b)) in reach


def _check_disjoint(f, g):
    if not compatible(f, g):
        raise IncompatibleConfigurations("polarities disagree on a shared name")
    if player_names(f) & player_names(g):
        raise IncompatibleConfigurations("Player names overlap")


def tensor(f, g, sigma=None):
    """Merge two compatible configurations.

    Concurrent configurations merge threads and environments; alternating
    ones allow at most one running term; stacked ones need ``sigma``, an
    interleaving of both stacks (defaults to their concatenation).
    """
    tf, tg = type(f), type(g)
    if tf is Initial or tg is Initial:
        raise IncompatibleConfigurations("initial configurations have no tensor product")
    _check_disjoint(f, g)
    if tf is Stacked or tg is Stacked:
        if tf is not Stacked or tg is not Stacked:
            raise IncompatibleConfigurations("cannot mix stacked and unstacked configurations")
        if set(f.stack) & set(g.stack):
            raise IncompatibleConfigurations("stacks must be disjoint")
        if sigma is None:
            sigma = f.stack + g.stack
        sigma = tuple(sigma)
        if not is_interleaving(sigma, f.stack, g.stack):
            raise InvalidInterleaving("stack is not an interleaving of the two stacks")
        return Stacked(tensor(f.base, g.base), sigma)
    names = f.names | g.names
    if tf is Concurrent or tg is Concurrent:
        from .config import to_concurrent
        cf, cg = to_concurrent(f), to_concurrent(g)
        return Concurrent(tuple(sorted(cf.threads + cg.threads)), cf.env + cg.env, names)
    if tf is Active and tg is Active:
        raise IncompatibleConfigurations("at most one configuration may be active")
    if tf is Active:
        return Active(f.term, f.cont, f.env + g.env, names)
    if tg is Active:
        return Active(g.term, g.cont, f.env + g.env, names)
    return Passive(f.env + g.env, names)


def decompose_singletons(f) -> list:
    """Split a concurrent configuration into one configuration per Player name.

    Each piece keeps the Opponent names of ``f`` plus its own Player name,
    so folding the pieces back with ``tensor`` rebuilds ``f``.
    """
    if type(f) in (Active, Passive):
        from .config import to_concurrent
        f = to_concurrent(f)
    if type(f) is not Concurrent:
        raise TypeError("decompose_singletons needs a concurrent configuration")
    pn = player_names(f)
    shared = f.names - pn
    out = []
    for p, m in f.threads:
        out.append(Concurrent(((p, m),), (), shared | {p}))
    for n, e in f.env:
        out.append(Concurrent((), ((n, e),), shared | {n}))
    return out


def fold_tensor(configs, start=None):
    acc = start if start is not None else Concurrent((), (), frozenset())
    for c in configs:
        acc = tensor(acc, c)
    return acc


def is_singleton(f) -> bool:
    return len(player_names(f)) == 1

