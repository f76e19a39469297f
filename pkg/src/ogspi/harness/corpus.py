"""Seeded corpora of small λ-terms, redexes and term pairs.

Generated terms are closed or mention the single free variable ``x0``.
Everything is drawn from ``random.Random`` seeded with a string built from
the seed and the kind of corpus, so a corpus is reproducible bit for bit.
"""

import random

from ..lam.parser import parse_term
from ..lam.terms import App, Lam, Var, all_names, alpha_key, is_value, size
from ..names import Kind, Name

X0 = Name(Kind.VAR, 0)

_OMEGA = r"(\w. w w) (\w. w w)"

FIXTURE_SOURCES = (
    ("I", r"\x. x"),
    ("Omega", _OMEGA),
    ("callback-div", rf"(\z. {_OMEGA}) (x0 (\y. {_OMEGA}))"),
    ("callback-id", rf"(\z. {_OMEGA}) (x0 (\y. y))"),
    ("true", r"\x. \y. x"),
    ("false", r"\x. \y. y"),
)


def fixture_terms():
    return [(name, parse_term(src, literal_names=True)) for name, src in FIXTURE_SOURCES]


class _Gen:
    def __init__(self, rng):
        self.rng = rng
        self.next_id = 1

    def binder(self):
        n = Name(Kind.VAR, self.next_id)
        self.next_id += 1
        return n

    def term(self, n, env, free):
        """A term of exactly ``n`` nodes over the variables in scope, or None."""
        vars_ = list(env) + ([X0] if free else [])
        if n == 1:
            return Var(self.rng.choice(vars_)) if vars_ else None
        shapes = ["lam"] + (["app"] if n >= 3 else [])
        if self.rng.choice(shapes) == "lam":
            x = self.binder()
            body = self.term(n - 1, env + [x], free)
            return Lam(x, body) if body is not None else None
        k = self.rng.randint(1, n - 2)
        f = self.term(k, env, free)
        a = self.term(n - 1 - k, env, free)
        return App(f, a) if f is not None and a is not None else None

    def value(self, n, env, free):
        if n == 1:
            return self.term(1, env, free)
        x = self.binder()
        body = self.term(n - 1, env + [x], free)
        return Lam(x, body) if body is not None else None


def _rng(seed, what):
    return random.Random(f"ogspi:{what}:{seed}")


def gen_terms(seed, count, max_size=6, what="terms", avoid=()):
    """``count`` distinct generated terms of at most ``max_size`` nodes, none α-equal to ``avoid``."""
    rng = _rng(seed, what)
    out, seen = [], {alpha_key(t) for t in avoid}
    attempts = 0
    while len(out) < count and attempts < 200 * (count + 1):
        attempts += 1
        g = _Gen(rng)
        n = rng.randint(1, max_size)
        t = g.term(n, [], free=rng.random() < 0.5)
        if t is None:
            continue
        k = alpha_key(t)
        if k in seen:
            continue
        seen.add(k)
        out.append(t)
    return out


def gen_corpus(seed, count, max_size=6, mode="cbv", fixtures=True):
    """Fixtures followed by generated terms, ``count`` terms in total.

    The size bound applies to the generated terms; fixtures are fixed.
    """
    if mode not in ("cbv", "cbn"):
        raise ValueError(f"unknown corpus mode {mode!r}")
    items = [t for _, t in fixture_terms()] if fixtures else []
    items = items[:count]
    return items + gen_terms(seed, count - len(items), max_size, what=f"corpus-{mode}",
                             avoid=items)


def gen_redexes(seed, count, max_size=6):
    """βv-redexes ``(λx.M) V`` of at most ``max_size`` nodes, with the substituted term."""
    rng = _rng(seed, "redexes")
    out, seen = [], set()
    attempts = 0
    while len(out) < count and attempts < 200 * (count + 1):
        attempts += 1
        g = _Gen(rng)
        free = rng.random() < 0.5
        total = rng.randint(4, max(4, max_size))
        vsize = rng.randint(1, max(1, total - 3))
        x = g.binder()
        body = g.term(total - 2 - vsize, [x], free)
        v = g.value(vsize, [], free)
        if body is None or v is None:
            continue
        redex = App(Lam(x, body), v)
        k = alpha_key(redex)
        if k in seen or size(redex) > max_size:
            continue
        seen.add(k)
        out.append(redex)
    return out


def _variant(rng, m, g):
    """A term that should behave like ``m``."""
    choice = rng.randrange(3)
    z = g.binder()
    if choice == 0:
        return App(Lam(z, Var(z)), m)
    if choice == 1 and is_value(m) and type(m) is Lam:
        y = g.binder()
        return Lam(y, App(m, Var(y)))
    w = g.binder()
    return App(Lam(z, m), Lam(w, Var(w)))


def gen_pairs(seed, count, max_size=6):
    """Pairs of terms: half unrelated, half with an equivalence-preserving rewrite."""
    terms = gen_terms(seed, 2 * count + 2, max_size, what="pairs")
    rng = _rng(seed, "pair-shape")
    out = []
    for i in range(count):
        m = terms[2 * i]
        if i % 2 == 0:
            g = _Gen(rng)
            g.next_id = 1 + max((n.id for n in all_names(m)), default=0)
            out.append((m, _variant(rng, m, g)))
        else:
            out.append((m, terms[2 * i + 1]))
    return out
