"""Shuffles of traces, as produced by composing independent configurations."""

from itertools import combinations

from ..actions import canonical_trace, is_alternating
from ..names import placeholder, placeholder_index
from ..ogs.traces import pushdown_accepts


def _shift(trace, offset):
    def mv(n):
        return placeholder(n.kind, placeholder_index(n) + offset) if n.is_placeholder else n
    return tuple(a.rename({n: mv(n) for n in (a.subject, *a.objects) if n is not None})
                 for a in trace)


def _placeholder_span(trace):
    idx = [placeholder_index(n) for a in trace for n in (a.subject, *a.objects)
           if n is not None and n.is_placeholder]
    return max(idx) + 1 if idx else 0


def shuffles(t1, t2):
    n, k = len(t1) + len(t2), len(t1)
    for pos in combinations(range(n), k):
        chosen = set(pos)
        i = j = 0
        out = []
        for slot in range(n):
            if slot in chosen:
                out.append(t1[i])
                i += 1
            else:
                out.append(t2[j])
                j += 1
        yield tuple(out)


def interleavings(t1, t2, mode="free", sigma=(), active=None):
    """Canonical order-preserving merges of two canonical traces.

    ``mode`` is ``free``, ``alternating`` (polarities alternate and, when the
    composite is active, a non-empty merge starts with an output) or ``wb``
    (alternating, and accepted by the bracketing pushdown from ``sigma``).
    Without ``active`` the composite counts as active when either trace
    starts with an output.
    """
    if mode not in ("free", "alternating", "wb"):
        raise ValueError(f"unknown interleaving mode {mode!r}")
    t2 = _shift(tuple(t2), _placeholder_span(t1))
    out = set()
    must_start_out = active
    if must_start_out is None:
        must_start_out = any(t and t[0].polarity == "P" for t in (t1, t2))
    for s in shuffles(tuple(t1), t2):
        if mode != "free":
            if not is_alternating(s):
                continue
            if must_start_out and s and s[0].polarity != "P":
                continue
            if mode == "wb" and pushdown_accepts(s, sigma) is None:
                continue
        out.add(canonical_trace(s))
    return out
