"""Well-bracketing and completeness of traces."""

from ..names import Kind
from .config import (Active, ContEntry, Initial, MissingContinuationEntry, Stacked,
                     env_get, pending_continuations)


def full_stack(f) -> tuple:
    """Interleave the Player stack with the continuations its entries return to.

    For an active ``<M, p0>`` with stack ``p1..pn`` this is
    ``p0 p1 q1 ... pn qn`` where ``qj`` is the continuation stored with
    ``pj``; a passive configuration omits ``p0``.
    """
    if type(f) is not Stacked:
        raise TypeError("full_stack needs a stacked configuration")
    b = f.base
    if type(b) is Initial:
        return ()
    out = [b.cont] if type(b) is Active else []
    for pj in f.stack:
        e = env_get(b.env, pj)
        if type(e) is not ContEntry:
            raise MissingContinuationEntry(str(pj))
        out.append(pj)
        out.append(e.cont)
    return tuple(out)


def pushdown_accepts(trace, stack=()):
    """Run the bracketing pushdown over ``trace`` from ``stack`` (top first).

    Questions (including the initial one) push the continuation they
    introduce; answers pop and must answer the current top.  Returns the
    final stack, or None when the trace is rejected.
    """
    st = list(stack)
    st.reverse()  # top at the end
    for a in trace:
        if a.dir == "tau":
            continue
        if a.is_answer:
            if not st or st[-1] != a.subject:
                return None
            st.pop()
        else:
            for o in a.objects:
                if o.kind is Kind.CONT:
                    st.append(o)
    st.reverse()
    return tuple(st)


def is_well_bracketed(trace, stack=()) -> bool:
    return pushdown_accepts(trace, stack) is not None


def justified_answers(trace):
    """Split the answers of ``trace`` into (justified, unjustified) subject lists."""
    bound = set()
    just, unjust = [], []
    for a in trace:
        if a.dir == "tau":
            continue
        if a.is_answer:
            (just if a.subject in bound else unjust).append(a.subject)
        bound.update(a.objects)
    return just, unjust


def is_complete_trace(trace, f) -> bool:
    """Definition-based completeness of ``trace`` from configuration ``f``.

    Every question asked in the trace is answered, and the answers whose
    question lies outside the trace answer exactly the pending Player
    continuation names of ``f``.  From an initial configuration the initial
    question must be played.  For stacked configurations the trace has to
    empty the full stack through the bracketing pushdown.
    """
    trace = [a for a in trace if a.dir != "tau"]
    init = type(f) is Initial or (type(f) is Stacked and type(f.base) is Initial)
    if init and (not trace or trace[0].dir != "abs"):
        return False
    if type(f) is Stacked:
        return pushdown_accepts(trace, full_stack(f)) == ()
    just, unjust = justified_answers(trace)
    if len(set(unjust)) != len(unjust) or set(unjust) != set(pending_continuations(f)):
        return False
    introduced = set()
    for a in trace:
        if a.is_question:
            introduced.update(o for o in a.objects if o.kind is Kind.CONT)
    return introduced <= set(just)
