"""Text syntax for configurations.

``<p0 |-> M ; x1 |-> V ; q2 |-> (E, p3) | stack: q2 | names: x0, p1>``

An entry ``p |-> M`` on a continuation name is a running term, ``q |-> (E, p)``
stores a context (``[]`` marks the hole) and any other entry stores a value
(or, in call-by-name, a term).  Free identifiers in terms must be names such
as ``x0`` or ``v1``.  ``q`` is accepted as a spelling of continuation names.
``<init M | names: ...>`` is an initial configuration.  The support defaults
to every name mentioned.
"""

import re

from ..lam.parser import ParseError, parse_term
from ..lam.terms import App, AppLeft, AppRight, Hole, is_value
from ..names import Kind, parse_name
from .config import (Active, Concurrent, ContEntry, Initial, InvalidConfiguration, Passive,
                     Stacked, occurring_names, validate)

_SECTION = re.compile(r"\|(?!->)")


def _split_top(text, sep):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def term_to_context(t, calculus="cbv"):
    """Turn a term containing one hole into a tuple of frames (innermost first)."""
    frames = []
    while type(t) is not Hole:
        if type(t) is not App:
            raise ParseError("the hole must sit in an evaluation position")
        if _has_hole(t.fun):
            frames.append(AppLeft(t.arg))
            t = t.fun
        elif _has_hole(t.arg):
            if calculus != "cbv" or not is_value(t.fun):
                raise ParseError("the hole must sit in an evaluation position")
            frames.append(AppRight(t.fun))
            t = t.arg
        else:
            raise ParseError("a context needs a hole []")
    frames.reverse()
    return tuple(frames)


def _has_hole(t):
    if type(t) is Hole:
        return True
    if type(t) is App:
        return _has_hole(t.fun) or _has_hole(t.arg)
    return False


def parse_config(text: str, flavor: str = "cogs", calculus: str = "cbv"):
    """Parse a configuration literal for the given game flavor.

    ``flavor`` is ``aogs``, ``cogs`` or ``wbogs``.
    """
    s = text.strip()
    if not (s.startswith("<") and s.endswith(">")):
        raise ParseError("a configuration is written between < and >")
    sections = _SECTION.split(s[1:-1])
    body, stack, names = sections[0].strip(), None, None
    for sec in sections[1:]:
        key, _, val = sec.partition(":")
        key = key.strip()
        items = [parse_name(v) for v in val.split(",") if v.strip()]
        if key == "stack":
            stack = tuple(items)
        elif key == "names":
            names = frozenset(items)
        else:
            raise ParseError(f"unknown section {key!r}")
    mode = "cbn" if calculus == "cbn" else "cbv"
    # binders of every entry stay clear of all names written in the literal
    base = max((int(d) + 1 for d in re.findall(r"\bx(\d+)\b", s)), default=0)
    if body.startswith("init "):
        f = Initial(parse_term(body[5:], mode, literal_names=True, binder_base=base), frozenset())
        if stack:
            raise InvalidConfiguration("an initial configuration has no stack")
        f = Initial(f.term, names if names is not None else frozenset(occurring_names(f)))
        if flavor == "wbogs":
            f = Stacked(f, ())
        return validate(f)
    threads, env = [], []
    for entry in _split_top(body, ";"):
        entry = entry.strip()
        if not entry:
            continue
        lhs, sep, rhs = entry.partition("|->")
        if not sep:
            raise ParseError(f"entry {entry!r} lacks |->")
        n = parse_name(lhs)
        rhs = rhs.strip()
        if n.kind is Kind.CONT and "[]" in rhs.replace(" ", ""):
            inner = rhs
            if not (inner.startswith("(") and inner.endswith(")")):
                raise ParseError(f"context entry {entry!r} must be (E, p)")
            parts = _split_top(inner[1:-1], ",")
            if len(parts) != 2:
                raise ParseError(f"context entry {entry!r} must be (E, p)")
            ctx_term = parse_term(parts[0], mode, literal_names=True, allow_hole=True, binder_base=base)
            env.append((n, ContEntry(term_to_context(ctx_term, calculus), parse_name(parts[1]))))
        elif n.kind is Kind.CONT:
            threads.append((n, parse_term(rhs, mode, literal_names=True, binder_base=base)))
        else:
            t = parse_term(rhs, mode, literal_names=True, binder_base=base)
            if calculus == "cbv" and not is_value(t):
                raise InvalidConfiguration(f"entry {n} must store a value")
            env.append((n, t))
    env = tuple(env)
    if flavor == "cogs":
        f = Concurrent(tuple(sorted(threads)), env, frozenset())
    else:
        if len(threads) > 1:
            raise InvalidConfiguration("an alternating configuration runs at most one term")
        if threads:
            (p, m), = threads
            f = Active(m, p, env, frozenset())
        else:
            f = Passive(env, frozenset())
    if flavor == "wbogs":
        f = Stacked(f, stack or ())
    elif stack:
        raise InvalidConfiguration("only well-bracketed configurations carry a stack")
    if names is None:
        names = frozenset(occurring_names(f))
    f = _with_names(f, names)
    return validate(f)


def _with_names(f, names):
    t = type(f)
    if t is Stacked:
        return Stacked(_with_names(f.base, names), f.stack)
    if t is Active:
        return Active(f.term, f.cont, f.env, names)
    if t is Passive:
        return Passive(f.env, names)
    if t is Concurrent:
        return Concurrent(f.threads, f.env, names)
    return Initial(f.term, names)
