"""State-space exploration shared by trace enumeration and the bisimulation games.

States are interned by key.  After a visible step the bound objects of the
action are renamed to placeholders numbered by how many bound names the
path has seen so far; traces come out canonical and states reached along
α-equivalent paths coincide.
"""

from collections import deque

from ..names import placeholder

DEFAULT_STATE_CAP = 20_000


class Explorer:
    def __init__(self, stepper, fuel=64, state_cap=DEFAULT_STATE_CAP):
        if fuel < 0:
            raise ValueError("fuel must be non-negative")
        self.stepper = stepper
        self.fuel = fuel
        self.state_cap = state_cap
        self.states = {}
        self._succ = {}
        self._closure = {}
        self._visible = {}
        self._weak = {}

    def add(self, s) -> str:
        rep, k = self.stepper.norm(s)
        if k not in self.states:
            self.states[k] = rep
        return k

    def succ(self, k):
        """Strong transitions of a state as ``(action, key)`` pairs."""
        out = self._succ.get(k)
        if out is None:
            out = [(a, self.add(q)) for a, q in self.stepper.transitions(self.states[k])]
            self._succ[k] = out
        return out

    def closure(self, k):
        """States reachable by at most ``fuel`` τ-steps, and whether the bound cut anything off."""
        hit = self._closure.get(k)
        if hit is not None:
            return hit
        seen = {k: 0}
        order = [k]
        clipped = False
        todo = deque([k])
        while todo:
            c = todo.popleft()
            d = seen[c]
            for a, nxt in self.succ(c):
                if a.visible or nxt in seen:
                    continue
                if d >= self.fuel or len(seen) >= self.state_cap:
                    clipped = True
                    continue
                seen[nxt] = d + 1
                order.append(nxt)
                todo.append(nxt)
        hit = (tuple(order), clipped)
        self._closure[k] = hit
        return hit

    def visible(self, k, nb):
        """Visible steps with bound objects renamed to placeholders from ``nb``."""
        key = (k, nb)
        out = self._visible.get(key)
        if out is None:
            out = []
            for a, nxt in self.succ(k):
                if not a.visible:
                    continue
                ren = {o: placeholder(o.kind, nb + i) for i, o in enumerate(a.objects)}
                out.append((a.rename(ren), self.add(self.stepper.rename(self.states[nxt], ren))))
            self._visible[key] = out
        return out

    def is_final(self, k) -> bool:
        return self.stepper.is_final(self.states[k])

    def weak(self, k, nb):
        """``{action: keys}`` reachable by τ* · action · τ*, plus a clipping flag."""
        hit = self._weak.get((k, nb))
        if hit is not None:
            return hit
        c, clipped = self.closure(k)
        out = {}
        for k1 in c:
            for a, k2 in self.visible(k1, nb):
                bucket = out.setdefault(a, {})
                c2, cl2 = self.closure(k2)
                clipped = clipped or cl2
                for k3 in c2:
                    bucket[k3] = None
        hit = ({a: tuple(ks) for a, ks in out.items()}, clipped)
        self._weak[(k, nb)] = hit
        return hit


def bound_count(trace) -> int:
    return sum(len(a.objects) for a in trace)
