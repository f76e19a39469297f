"""Bounded weak-trace enumeration and trace-based equivalences."""

from dataclasses import dataclass

from ..actions import show_trace
from .explore import Explorer, bound_count
from .verdict import Distinguished, Equivalent, Inconclusive


@dataclass(frozen=True)
class TraceSet:
    depth: int
    traces: frozenset
    complete: frozenset
    clipped: frozenset  # traces after which a τ-closure hit the fuel bound

    @property
    def divergence_suspected(self) -> bool:
        return bool(self.clipped)

    def sorted(self, which="traces"):
        return sorted(getattr(self, which), key=trace_order)


def trace_order(t):
    return (len(t), show_trace(t))


def enumerate_traces(stepper, s0, depth, fuel=64, explorer=None) -> TraceSet:
    """All weak traces of at most ``depth`` visible actions from ``s0``.

    A trace is complete when some state τ-reachable after it is final.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    ex = explorer or Explorer(stepper, fuel)
    level = {(): {ex.add(s0): None}}
    traces, complete, clipped = set(), set(), set()
    for d in range(depth + 1):
        nxt = {}
        for t in sorted(level, key=trace_order):
            traces.add(t)
            closure = {}
            for k in level[t]:
                c, cl = ex.closure(k)
                if cl:
                    clipped.add(t)
                closure.update(dict.fromkeys(c))
            if any(ex.is_final(k) for k in closure):
                complete.add(t)
            if d == depth:
                continue
            nb = bound_count(t)
            for k in closure:
                for a, k2 in ex.visible(k, nb):
                    nxt.setdefault(t + (a,), {})[k2] = None
        level = nxt
    return TraceSet(depth, frozenset(traces), frozenset(complete), frozenset(clipped))


def replay(stepper, s0, trace, fuel=64) -> bool | None:
    """Can ``trace`` (canonical) be performed weakly from ``s0``?

    None when a clipped τ-closure leaves the answer open.
    """
    ex = Explorer(stepper, fuel)
    cur = {ex.add(s0): None}
    unsure = False
    nb = 0
    for a in trace:
        nxt = {}
        for k in cur:
            c, cl = ex.closure(k)
            unsure = unsure or cl
            for k1 in c:
                for b, k2 in ex.visible(k1, nb):
                    if b == a:
                        nxt[k2] = None
        if not nxt:
            return None if unsure else False
        cur = nxt
        nb += len(a.objects)
    return True


def _blocked(ts, w, complete):
    """Could side ``ts`` still exhibit ``w`` beyond what the fuel let us see?"""
    if any(w[:i] in ts.clipped for i in range(len(w))):
        return True
    return complete and w in ts.clipped


def _compare(ta, tb, which, names):
    sa, sb = getattr(ta, which), getattr(tb, which)
    complete = which == "complete"
    depth = ta.depth
    div = ta.divergence_suspected or tb.divergence_suspected
    if sa == sb:
        # a clip strictly inside the bound could hide further traces
        relevant = [t for t in ta.clipped | tb.clipped if complete or len(t) < depth]
        if relevant:
            return Inconclusive(depth, reason="fuel", divergence_suspected=True)
        return Equivalent(depth, divergence_suspected=div)
    cands = []
    for w in sa - sb:
        if not _blocked(tb, w, complete):
            cands.append((trace_order(w), w, names[0]))
    for w in sb - sa:
        if not _blocked(ta, w, complete):
            cands.append((trace_order(w), w, names[1]))
    if not cands:
        return Inconclusive(depth, reason="fuel", divergence_suspected=True)
    _, w, side = min(cands, key=lambda c: (c[0], c[2]))
    return Distinguished(depth, witness=w, side=side, divergence_suspected=div)


def trace_equiv(sys_a, a, sys_b, b, depth, fuel=64):
    ta = enumerate_traces(sys_a, a, depth, fuel)
    tb = enumerate_traces(sys_b, b, depth, fuel)
    return _compare(ta, tb, "traces", ("left", "right"))


def complete_trace_equiv(sys_a, a, sys_b, b, depth, fuel=64):
    ta = enumerate_traces(sys_a, a, depth, fuel)
    tb = enumerate_traces(sys_b, b, depth, fuel)
    return _compare(ta, tb, "complete", ("left", "right"))
