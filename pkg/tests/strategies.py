"""Hypothesis strategies for small well-scoped λ-terms."""

import hypothesis.strategies as st

from ogspi.lam.terms import App, Lam, Var
from ogspi.names import Kind, Name

X0 = Name(Kind.VAR, 0)


@st.composite
def lam_terms(draw, max_size=7, open_=True):
    """Well-scoped λ-terms of at most ``max_size`` nodes; ``x0`` may occur free."""
    counter = [1]

    def build(budget, env):
        scope = env + ([X0] if open_ else [])
        choices = []
        if scope:
            choices.append("var")
        if budget >= 2:
            choices.append("lam")
        if budget >= 3:
            choices.append("app")
        if not choices:
            return None
        kind = draw(st.sampled_from(choices))
        if kind == "var":
            return Var(draw(st.sampled_from(scope)))
        if kind == "lam":
            x = Name(Kind.VAR, counter[0])
            counter[0] += 1
            body = build(budget - 1, env + [x])
            if body is None:
                return Lam(x, Var(x))
            return Lam(x, body)
        left = draw(st.integers(1, budget - 2))
        f = build(left, env)
        a = build(budget - 1 - left, env)
        if f is None or a is None:
            x = Name(Kind.VAR, counter[0])
            counter[0] += 1
            return Lam(x, Var(x))
        return App(f, a)

    t = build(draw(st.integers(1 if open_ else 2, max_size)), [])
    if t is None:
        x = Name(Kind.VAR, counter[0])
        t = Lam(x, Var(x))
    return t


@st.composite
def lam_values(draw, max_size=6, open_=True):
    x = Name(Kind.VAR, 10_000)
    t = draw(lam_terms(max_size - 1, open_))
    if type(t) is Lam:
        return t
    return Lam(x, t)
