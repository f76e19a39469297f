"""Eager normal-form bisimulation for call-by-value terms, cut off at a depth.

Terms are related when both diverge, or both reach related eager normal
forms: two values, or two stuck calls ``E[x V]`` on the same variable with
related arguments and related contexts.  Values are compared by applying
them to a fresh variable, contexts by plugging one in.  The depth counts how
many normal forms deep the comparison goes: in game terms, one Player move
together with the Opponent move that follows it.
"""

from ..lam.reduce import FuelExhausted, Stuck, Value, eval_enf
from ..lam.terms import App, Var, all_names, plug, show
from ..names import Kind, Supply
from .verdict import Distinguished, Equivalent, Inconclusive

_UNKNOWN = None


def _both(a, b):
    if a is False or b is False:
        return False
    if a is _UNKNOWN or b is _UNKNOWN:
        return _UNKNOWN
    return True


class _Enf:
    def __init__(self, fuel, supply):
        self.fuel = fuel
        self.sup = supply
        self.witness = ()

    def fail(self, path, why):
        if not self.witness:
            self.witness = tuple(path) + (why,)
        return False

    def term(self, m, n, d, path):
        if d <= 0:
            return True
        rm, rn = eval_enf(m, self.fuel), eval_enf(n, self.fuel)
        fm, fn = type(rm) is FuelExhausted, type(rn) is FuelExhausted
        if fm and fn:
            return _UNKNOWN
        if fm or fn:
            side = "left" if fn else "right"
            return self.fail(path, f"only the {side} term reaches a normal form")
        if type(rm) is Value and type(rn) is Value:
            return self.value(rm.term, rn.term, d - 1, path + [f"value {show(rm.term)} ~ {show(rn.term)}"])
        if type(rm) is Stuck and type(rn) is Stuck:
            if rm.var != rn.var:
                return self.fail(path, f"calls on different variables {rm.var} and {rn.var}")
            here = path + [f"call {rm.var}"]
            args = self.value(rm.value, rn.value, d - 1, here + ["argument"])
            if args is False:
                return False
            return _both(args, self.context(rm.ctx, rn.ctx, d - 1, here + ["context"]))
        return self.fail(path, f"normal forms of different shapes: {_shape(rm)} vs {_shape(rn)}")

    def value(self, v, w, d, path):
        y = Var(self.sup.fresh(Kind.VAR))
        return self.term(App(v, y), App(w, y), d, path + [f"apply to {y}"])

    def context(self, e, f, d, path):
        z = Var(self.sup.fresh(Kind.VAR))
        return self.term(plug(e, z), plug(f, z), d, path + [f"return {z}"])


def _shape(r):
    return "value" if type(r) is Value else f"call on {r.var}"


def enf_bisim(m, n, depth, fuel=64):
    """Compare two terms up to ``depth`` nested normal forms.

    Exhausting ``fuel`` on both sides is taken as joint divergence and left
    undecided; exhausting it on one side only counts as a difference.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    sup = Supply(all_names(m) | all_names(n))
    game = _Enf(fuel, sup)
    ok = game.term(m, n, depth, [])
    if ok is True:
        return Equivalent(depth)
    if ok is False:
        return Distinguished(depth, witness=game.witness)
    return Inconclusive(depth, reason="fuel", divergence_suspected=True)
