"""Confluent internal communications.

A communication on a restricted name ``a`` commutes with every other
transition when nobody else can compete for it: ``a`` has a single input
capability and either that input is a replicated server, or ``a`` also has
a single output capability and neither sits under a replication.  Such a τ
is inert, so following it alone (and ignoring the other transitions of the
state) preserves weak traces and weak bisimilarity while collapsing the
interleavings of independent administrative steps.
"""

from ..names import Supply
from .normal import flatten
from .syntax import (INPUT_PARAMS, OUTPUT_PARAMS, Apply, Inp, Literal, Out, Par, Rep, Res,
                     all_names, par, rename, res, unfold)

_MANY = 2


def _top(c):
    for _ in range(8):
        if type(c) is not Apply:
            return c
        c = unfold(c)
    return c


def _occurrences(comps):
    """name -> [(direction, component index or None, replicated prefix)]"""
    occ = {}

    def note(n, d, where, rep):
        occ.setdefault(n, []).append((d, where, rep))

    def walk(p, where, under_rep):
        while True:
            t = type(p)
            if t is Inp or t is Out or t is Rep:
                d = "out" if t is Out else "in"
                note(p.subject, d, where if not under_rep else None, t is Rep)
                under_rep = under_rep or t is Rep
                where = None
                p = p.body
            elif t is Res:
                p = p.body
            elif t is Par:
                walk(p.left, where, under_rep)
                p = p.right
            elif t is Apply:
                ab = p.abstraction
                if type(ab) is Literal:
                    p = unfold(p)
                    continue
                for i in INPUT_PARAMS.get(ab.ident, ()):
                    for _ in range(_MANY):
                        note(p.args[i], "in", None, True)
                for i in OUTPUT_PARAMS.get(ab.ident, ()):
                    for _ in range(_MANY):
                        note(p.args[i], "out", None, True)
                return
            else:
                return

    for i, c in enumerate(comps):
        walk(_top(c), i, False)
    return occ


def confluent_step(p):
    """The successor of ``p`` along its first confluent τ, or None."""
    if type(p) is Literal:
        return None
    rs, comps = flatten(p)
    if not rs:
        return None
    tops = [_top(c) for c in comps]
    occ = _occurrences(comps)
    for a in rs:
        uses = occ.get(a, ())
        ins = [u for u in uses if u[0] == "in"]
        outs = [u for u in uses if u[0] == "out"]
        if len(ins) != 1 or not outs or ins[0][1] is None:
            continue
        i = ins[0][1]
        if ins[0][2]:
            active = [u for u in outs if u[1] is not None]
            if not active:
                continue
            o = active[0][1]
        else:
            if len(outs) != 1 or outs[0][1] is None:
                continue
            o = outs[0][1]
        sender, receiver = tops[o], tops[i]
        if type(sender) is not Out or sender.subject != a or receiver.subject != a:
            continue
        if type(receiver) not in (Inp, Rep) or len(receiver.params) != len(sender.params):
            continue
        sup = Supply(n for n in all_names(p) if n.id >= 0)
        fresh = tuple(sup.fresh(x.kind) for x in sender.params)
        left = rename(sender.body, dict(zip(sender.params, fresh)))
        right = rename(receiver.body, dict(zip(receiver.params, fresh)))
        rest = [c for j, c in enumerate(comps) if j != o and (j != i or type(receiver) is Rep)]
        return res(list(rs) + list(fresh), par(left, right, *rest))
    return None

