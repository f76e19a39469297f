"""Depth-bounded weak bisimulation games.

``s ~d t`` holds when every challenge, τ or visible, from either side can be
answered weakly, visible answers continuing at depth ``d - 1``.  τ-moves are
free, so each depth level is a greatest fixpoint over pairs of
τ-closures.  When a τ-closure is cut off by the fuel bound the game is
played twice: once treating the unknown part as a loss (a lower bound on the
relation) and once as a win (an upper bound).  Equal bounds give a definite
verdict.
"""

from ..ogs.config import Concurrent, player_names
from ..ogs.tensor import decompose_singletons
from .explore import Explorer
from .steppers import COGS
from .verdict import Distinguished, Equivalent, Inconclusive


class _Game:
    def __init__(self, ea, eb, optimistic):
        self.ea, self.eb = ea, eb
        self.optimistic = optimistic
        # pair -> (deepest level known related, shallowest level known unrelated)
        self.memo = {}
        self.hits = 0

    def _lookup(self, x, y, d):
        hit = self.memo.get((x, y))
        if hit is None:
            return None
        yes, no = hit
        if yes >= d:
            return True
        if no <= d:
            return False
        return None

    def _store(self, x, y, d, ok):
        yes, no = self.memo.get((x, y), (-1, 1 << 30))
        if ok:
            yes = max(yes, d)
        else:
            no = min(no, d)
        self.memo[(x, y)] = (yes, no)

    def related(self, x, y, d, nb):
        if d <= 0:
            return True
        known = self._lookup(x, y, d)
        if known is not None:
            self.hits += 1
            return known
        ca, cla = self.ea.closure(x)
        cb, clb = self.eb.closure(y)
        if cla or clb:
            self._store(x, y, d, self.optimistic)
            return self.optimistic
        rel = {(a, b) for a in ca for b in cb if self._visible_ok(a, b, d, nb)}
        changed = True
        while changed:
            changed = False
            for pair in sorted(rel):
                if not self._tau_ok(pair, rel):
                    rel.discard(pair)
                    changed = True
        for a in ca:
            for b in cb:
                self._store(a, b, d, (a, b) in rel)
        return (x, y) in rel

    def _tau_ok(self, pair, rel):
        a, b = pair
        for act, a2 in self.ea.succ(a):
            if not act.visible and not any((a2, b2) in rel for b2 in self.eb.closure(b)[0]):
                return False
        for act, b2 in self.eb.succ(b):
            if not act.visible and not any((a2, b2) in rel for a2 in self.ea.closure(a)[0]):
                return False
        return True

    def _visible_ok(self, a, b, d, nb):
        return (self._challenges_met(a, b, d, nb, flip=False)
                and self._challenges_met(b, a, d, nb, flip=True))

    def _answers(self, y, act, nb, flip):
        e = self.ea if flip else self.eb
        weak, clipped = e.weak(y, nb)
        return weak.get(act, ()), clipped

    def _challenges_met(self, x, y, d, nb, flip):
        e = self.eb if flip else self.ea
        for act, x2 in e.visible(x, nb):
            answers, clipped = self._answers(y, act, nb, flip)
            if clipped and self.optimistic:
                continue
            nb2 = nb + len(act.objects)
            if flip:
                ok = any(self.continue_at(a2, x2, d - 1, nb2) for a2 in answers)
            else:
                ok = any(self.continue_at(x2, b2, d - 1, nb2) for b2 in answers)
            if not ok:
                return False
        return True

    def continue_at(self, x, y, d, nb):
        return self.related(x, y, d, nb)

    def explain(self, x, y, d, nb):
        """A challenge sequence along which the optimistic game fails.

        Challenges are taken from the whole τ-closure of the challenger;
        the first failing answer is followed.
        """
        path, side = [], None
        while d > 0:
            step = self._failing_challenge(x, y, d, nb)
            if step is None:
                break
            who, act, x2, y2 = step
            side = side or who
            path.append(act)
            if y2 is None:
                break
            x, y, d, nb = x2, y2, d - 1, nb + len(act.objects)
        return tuple(path), side

    def _failing_challenge(self, x, y, d, nb):
        for flip, (cx, cy) in ((False, (x, y)), (True, (y, x))):
            ex = self.eb if flip else self.ea
            ey = self.ea if flip else self.eb
            for c in ex.closure(cx)[0]:
                for act, c2 in ex.visible(c, nb):
                    answers, _ = ey.weak(cy, nb)
                    answers = answers.get(act, ())
                    nb2 = nb + len(act.objects)
                    pairs = [((a2, c2) if flip else (c2, a2)) for a2 in answers]
                    if all(not self.related(p, q, d - 1, nb2) for p, q in pairs):
                        who = "right" if flip else "left"
                        if not pairs:
                            return who, act, None, None
                        return who, act, pairs[0][0], pairs[0][1]
        return None


class _UptoGame(_Game):
    """After every matched visible step the configurations are split into
    singletons, paired by Player name, and the pieces are compared on their
    own."""

    def continue_at(self, x, y, d, nb):
        if d <= 0:
            return True
        sx, sy = self.ea.states[x], self.eb.states[y]
        if type(sx) is Concurrent and type(sy) is Concurrent:
            px, py = _pieces(sx), _pieces(sy)
            if len(px) > 1 and px.keys() == py.keys():
                return all(self.related(self.ea.add(px[k]), self.eb.add(py[k]), d, nb)
                           for k in sorted(px, key=lambda ns: sorted(ns)))
        return self.related(x, y, d, nb)


def _pieces(f):
    out = {}
    for piece in decompose_singletons(f):
        out[frozenset(player_names(piece))] = piece
    return out


def _play(game_cls, ea, eb, ka, kb, depth):
    low = game_cls(ea, eb, optimistic=False)
    if low.continue_at(ka, kb, depth, 0):
        return Equivalent(depth, stats={"memo_hits": low.hits, "pairs": len(low.memo)}), low
    high = game_cls(ea, eb, optimistic=True)
    if not high.continue_at(ka, kb, depth, 0):
        witness, side = high.explain(ka, kb, depth, 0)
        return Distinguished(depth, witness=witness, side=side,
                             stats={"memo_hits": high.hits, "pairs": len(high.memo)}), high
    return Inconclusive(depth, reason="fuel", divergence_suspected=True,
                        stats={"memo_hits": low.hits + high.hits}), low


def bounded_weak_bisim(sys_a, a, sys_b, b, depth, fuel=64):
    if depth < 0:
        raise ValueError("depth must be non-negative")
    ea = Explorer(sys_a, fuel)
    eb = ea if sys_b is sys_a else Explorer(sys_b, fuel)
    verdict, _ = _play(_Game, ea, eb, ea.add(a), eb.add(b), depth)
    return verdict


def bisim_upto_composition(f, g, depth, fuel=64, stepper=COGS):
    """Weak bisimilarity of concurrent configurations, up to composition.

    Decomposition can only confirm equivalence; when the pieces do not all
    match, the plain game decides.
    """
    from ..ogs.tensor import support_equivalent
    if not support_equivalent(f, g):
        raise ValueError("configurations are not support-equivalent")
    ex = Explorer(stepper, fuel)
    ka, kb = ex.add(f), ex.add(g)
    game = _UptoGame(ex, ex, optimistic=False)
    if game.continue_at(ka, kb, depth, 0):
        return Equivalent(depth, stats={"memo_hits": game.hits, "pairs": len(game.memo)})
    verdict, _ = _play(_Game, ex, ex, ka, kb, depth)
    verdict.stats["memo_hits"] = verdict.stats.get("memo_hits", 0) + game.hits
    return verdict
