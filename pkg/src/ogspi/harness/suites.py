"""Property suites over seeded corpora.

Each suite turns its parameters into a list of independent items, checks
every item on its own and collects the outcomes into a ``Report``.  Items
can run in worker processes; results are merged back by index, so a report
never depends on scheduling.  Reports carry no timings and render
byte-identically for identical parameters.
"""

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product

from ..actions import show_trace
from ..encode import encode_cbv, encode_term_at
from ..equiv.bisim import bisim_upto_composition, bounded_weak_bisim
from ..equiv.enf import enf_bisim
from ..equiv.interleave import interleavings
from ..equiv.steppers import AOGS, COGS, PI_OP, PI_STD, WBOGS
from ..equiv.traces import complete_trace_equiv, enumerate_traces, trace_equiv, trace_order
from ..lam.parser import parse_term
from ..lam.reduce import run_rho
from ..lam.terms import (App, Assign, Deref, Lam, Loc, RhoNew, Var, all_names, free_names,
                         is_value, show, subst)
from ..names import Kind, Name, Supply
from ..ogs.config import Active, Passive, Stacked, initial, to_concurrent
from ..ogs.literal import parse_config
from ..ogs.lts import initial_stacked
from ..ogs.tensor import tensor
from ..ogs.traces import full_stack, pushdown_accepts
from ..pii.lts import pi_transitions
from ..pii.normal import cannot_interact
from ..pii.syntax import par
from ..pii.syntax import all_names as pi_names
from ..pii.syntax import rename as pi_rename
from .corpus import X0, fixture_terms, gen_corpus, gen_pairs, gen_redexes, gen_terms


class UnknownSuite(KeyError):
    pass


@dataclass(frozen=True)
class Item:
    index: int
    label: str
    status: str  # pass, fail, inconclusive or info
    detail: str = ""
    witness: tuple = ()


@dataclass
class Report:
    suite: str
    params: dict
    items: list = field(default_factory=list)

    def count(self, status):
        return sum(1 for it in self.items if it.status == status)

    @property
    def failed(self):
        return self.count("fail") > 0

    @property
    def ok(self):
        return not self.failed

    @property
    def outcome(self):
        """``fail``, ``inconclusive`` (nothing failed but something is open) or ``pass``."""
        if self.failed:
            return "fail"
        if self.count("inconclusive"):
            return "inconclusive"
        return "pass"

    def to_json(self):
        return {"suite": self.suite,
                "params": dict(sorted(self.params.items())),
                "outcome": self.outcome,
                "counts": {s: self.count(s) for s in ("pass", "fail", "inconclusive", "info")},
                "items": [{"index": it.index, "label": it.label, "status": it.status,
                           "detail": it.detail, "witness": list(it.witness)}
                          for it in self.items]}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, ensure_ascii=False, indent=1)

    def text(self):
        ps = " ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        c = self.to_json()["counts"]
        lines = [f"suite {self.suite} ({ps})"]
        for it in self.items:
            line = f"  [{it.index:3}] {it.status:12} {it.label}"
            if it.detail:
                line += f" : {it.detail}"
            lines.append(line)
            if it.witness:
                lines.append("        witness: " + " · ".join(it.witness))
        lines.append(f"{self.outcome}: {c['pass']} passed, {c['fail']} failed, "
                     f"{c['inconclusive']} inconclusive, {c['info']} informational")
        return "\n".join(lines)


# helpers -----------------------------------------------------------------

def _shortest(ts):
    return min(ts, key=trace_order) if ts else None


def _compare_sets(index, label, got, want, clipped=False, names=("left", "right")):
    """Exact set comparison; a clipped exploration turns a mismatch into an open item."""
    if got == want:
        return Item(index, label, "pass", f"{len(got)} traces")
    extra, missing = got - want, want - got
    w = _shortest(extra) if extra and (not missing or
                                      trace_order(_shortest(extra)) <= trace_order(_shortest(missing))) \
        else _shortest(missing)
    side = names[0] if w in extra else names[1]
    detail = f"{len(extra)} only {names[0]}, {len(missing)} only {names[1]}; shortest on {side}"
    status = "inconclusive" if clipped else "fail"
    return Item(index, label, status, detail, (show_trace(w),))


def _names_of(*terms):
    out = {X0}
    for t in terms:
        out |= free_names(t)
    return frozenset(out)


def _merged(ta, tb, depth, mode, sigma=(), active=None):
    out = set()
    for t1 in ta:
        for t2 in tb:
            if len(t1) + len(t2) <= depth:
                out |= interleavings(t1, t2, mode, sigma, active=active)
    return out


def _traces(stepper, s, depth, fuel):
    ts = enumerate_traces(stepper, s, depth, fuel)
    return ts.traces, ts


def _verdict_item(index, label, v, expect):
    status = "pass" if v.kind == expect else ("inconclusive" if v.kind == "inconclusive" else "fail")
    return Item(index, label, status, v.kind, tuple(str(a) for a in v.witness))


# correspondence suites ---------------------------------------------------

def _corpus_items(p):
    return [show(t) for t in gen_corpus(p["seed"], p["count"], p["size"])]


def _corpus_term(p, i):
    return gen_corpus(p["seed"], p["count"], p["size"])[i]


def _correspondence(game, pi, p, i, label):
    m = _corpus_term(p, i)
    a, ta = _traces(game, initial(m, _names_of(m)), p["depth"], p["fuel"])
    b, tb = _traces(pi, encode_cbv(m), p["depth"], p["fuel"])
    return _compare_sets(i, label, a, b, ta.divergence_suspected or tb.divergence_suspected,
                         (game.name, pi.name))


def _check_aogs_pi_op(p, i, label):
    return _correspondence(AOGS, PI_OP, p, i, label)


def _check_cogs_pi(p, i, label):
    return _correspondence(COGS, PI_STD, p, i, label)


def _check_alternating(p, i, label):
    m = _corpus_term(p, i)
    f = initial(m, _names_of(m))
    a, ta = _traces(AOGS, f, p["depth"], p["fuel"])
    c, tc = _traces(COGS, f, p["depth"], p["fuel"])
    alt = {t for t in c if all(x.polarity != y.polarity for x, y in zip(t, t[1:]))}
    return _compare_sets(i, label, a, alt, ta.divergence_suspected or tc.divergence_suspected,
                         ("aogs", "alternating cogs"))


def _check_wb_filter(p, i, label):
    m = _corpus_term(p, i)
    f = initial_stacked(m, _names_of(m))
    w, tw = _traces(WBOGS, f, p["depth"], p["fuel"])
    a, ta = _traces(AOGS, f.base, p["depth"], p["fuel"])
    sigma = full_stack(f)
    accepted = {t for t in a if pushdown_accepts(t, sigma) is not None}
    return _compare_sets(i, label, w, accepted, tw.divergence_suspected or ta.divergence_suspected,
                         ("wbogs", "bracketed aogs"))


def _check_complete_sp(p, i, label):
    m = _corpus_term(p, i)
    names = _names_of(m)
    bad, open_ = [], 0
    for stepper, s0 in ((AOGS, initial(m, names)), (COGS, initial(m, names)),
                        (WBOGS, initial_stacked(m, names))):
        ts = enumerate_traces(stepper, s0, p["depth"], p["fuel"])
        for t in ts.sorted():
            by_state = t in ts.complete
            by_def = stepper.complete_from(t, s0)
            if by_state == by_def:
                continue
            if not by_state and t in ts.clipped:
                open_ += 1
                continue
            bad.append((trace_order(t), stepper.name, t, by_state))
    if bad:
        _, name, t, by_state = min(bad)
        side = "strongly passive endpoint only" if by_state else "definition only"
        return Item(i, label, "fail", f"{len(bad)} mismatches; first in {name} ({side})",
                    (show_trace(t),))
    if open_:
        return Item(i, label, "inconclusive", f"{open_} traces left open by the fuel bound")
    return Item(i, label, "pass", "oracles agree")


# tensor products ---------------------------------------------------------

def _tensor_terms(p):
    terms = gen_terms(p["seed"], 2 * p["count"], max(2, p["size"] - 1), what="tensor")
    return [(terms[2 * i], terms[2 * i + 1]) for i in range(len(terms) // 2)]


def _tensor_items(p):
    out = []
    for i, (a, b) in enumerate(_tensor_terms(p)):
        shape = "active⊗passive" if i % 2 == 0 else "passive⊗passive"
        out.append(f"{shape} {show(a)} ; {show(b)}")
    return out


def _as_value(t, sup):
    if is_value(t):
        return t
    return Lam(sup.fresh(Kind.VAR), t)


def _tensor_pair(p, i):
    a, b = _tensor_terms(p)[i]
    sup = Supply(all_names(a) | all_names(b) | {X0})
    if i % 2 == 0:
        k, x = sup.fresh(Kind.CONT), sup.fresh(Kind.VAR)
        f = Active(a, k, (), frozenset({X0, k}))
        g = Passive(((x, _as_value(b, sup)),), frozenset({X0, x}))
        return f, g, True
    x1, x2 = sup.fresh(Kind.VAR), sup.fresh(Kind.VAR)
    f = Passive(((x1, _as_value(a, sup)),), frozenset({X0, x1}))
    g = Passive(((x2, _as_value(b, sup)),), frozenset({X0, x2}))
    return f, g, False


def _check_tensor(p, i, label):
    f, g, active = _tensor_pair(p, i)
    d, fuel = p["depth"], p["fuel"]
    notes, fails, open_ = [], [], False
    cases = ((COGS, "free", to_concurrent(f), to_concurrent(g)),
             (AOGS, "alternating", f, g),
             (WBOGS, "wb", Stacked(f, ()), Stacked(g, ())))
    for stepper, mode, x, y in cases:
        fg = tensor(x, y)
        sigma = full_stack(fg) if stepper is WBOGS else ()
        tf, sf = _traces(stepper, x, d, fuel)
        tg, sg = _traces(stepper, y, d, fuel)
        tt, st = _traces(stepper, fg, d, fuel)
        want = _merged(tf, tg, d, mode, sigma, active=active if mode != "free" else None)
        r = _compare_sets(i, label, tt, want,
                          sf.divergence_suspected or sg.divergence_suspected
                          or st.divergence_suspected, ("tensor", "interleavings"))
        notes.append(f"{stepper.name} {len(tt)}")
        if r.status == "fail":
            fails.append((stepper.name, r))
        open_ = open_ or r.status == "inconclusive"
    if fails:
        name, r = fails[0]
        return Item(i, label, "fail", f"{name}: {r.detail}", r.witness)
    return Item(i, label, "inconclusive" if open_ else "pass", ", ".join(notes))


# equivalence suites ------------------------------------------------------

def _pair_items(p):
    return [f"{show(m)} ~ {show(n)}" for m, n in gen_pairs(p["seed"], p["count"], p["size"])]


def _pair(p, i):
    return gen_pairs(p["seed"], p["count"], p["size"])[i]


def _check_ct_coincide(p, i, label):
    m, n = _pair(p, i)
    names = _names_of(m, n)
    vs = {}
    for stepper, mk in ((AOGS, initial), (COGS, initial), (WBOGS, initial_stacked)):
        vs[stepper.name] = complete_trace_equiv(stepper, mk(m, names), stepper, mk(n, names),
                                                p["depth"], p["fuel"])
    kinds = {v.kind for v in vs.values()}
    detail = ", ".join(f"{k} {v.kind}" for k, v in vs.items())
    if "inconclusive" in kinds:
        return Item(i, label, "inconclusive", detail)
    if len(kinds) > 1:
        wit = next((v.witness for v in vs.values() if v.witness), ())
        return Item(i, label, "fail", detail, tuple(str(a) for a in wit))
    return Item(i, label, "pass", detail)


def _redex_items(p):
    return [show(r) for r in gen_redexes(p["seed"], p["count"], p["size"])]


def _check_beta_v(p, i, label):
    r = gen_redexes(p["seed"], p["count"], p["size"])[i]
    contractum = subst(r.fun.body, r.fun.var, r.arg)
    k = Supply(all_names(r)).fresh(Kind.CONT)
    v = bounded_weak_bisim(PI_STD, encode_term_at(r, k), PI_STD, encode_term_at(contractum, k),
                           p["depth"], p["fuel"])
    return _verdict_item(i, label + " → " + show(contractum), v, "equivalent")


def _check_enf_ogs(p, i, label):
    m, n = _pair(p, i)
    names = _names_of(m, n)
    e = enf_bisim(m, n, p["depth"], p["fuel"])
    g = bounded_weak_bisim(COGS, initial(m, names), COGS, initial(n, names), 2 * p["depth"],
                           p["fuel"])
    detail = f"enf {e.kind}, cogs {g.kind}"
    if "inconclusive" in (e.kind, g.kind):
        return Item(i, label, "inconclusive", detail)
    if e.kind != g.kind:
        wit = g.witness or e.witness
        return Item(i, label, "fail", detail, tuple(str(a) for a in wit))
    return Item(i, label, "pass", detail)


# non-interacting processes -----------------------------------------------

def _noninteract_items(p):
    return [f"{show(m)} | {show(n)}" for m, n in _noninteract_terms(p)]


def _noninteract_terms(p):
    terms = gen_terms(p["seed"], 2 * p["count"], p["size"], what="noninteract")
    return [(terms[2 * i], terms[2 * i + 1]) for i in range(len(terms) // 2)]


def _noninteract_procs(p, i):
    m, n = _noninteract_terms(p)[i]
    sup = Supply(all_names(m) | all_names(n))
    p1, p2 = sup.fresh(Kind.CONT), sup.fresh(Kind.CONT)
    return encode_term_at(m, p1), encode_term_at(n, p2)


def _taus(proc):
    return sum(1 for a, _ in pi_transitions(proc) if not a.visible)


def _joint_walk(a, b, depth, cap=400):
    """Walk ``a | b`` keeping the two sides apart.

    Yields every reachable pair within ``depth`` visible steps (at most
    ``cap`` pairs).  Bound names of a move are made fresh for both sides.
    """
    seen, todo = set(), [(a, b, 0)]
    while todo and len(seen) < cap:
        x, y, d = todo.pop(0)
        key = (str(x), str(y))
        if key in seen:
            continue
        seen.add(key)
        yield x, y
        for left in (True, False):
            me, other = (x, y) if left else (y, x)
            for act, nxt in pi_transitions(me):
                if act.visible and d >= depth:
                    continue
                sup = Supply(n for n in pi_names(me) | pi_names(other) if n.id >= 0)
                ren = {o: sup.fresh(o.kind) for o in act.objects}
                nxt = pi_rename(nxt, ren)
                pair = (nxt, other) if left else (other, nxt)
                todo.append((*pair, d + act.visible))


def _check_noninteract(p, i, label):
    a, b = _noninteract_procs(p, i)
    if not cannot_interact(a, b):
        return Item(i, label, "fail", "the encoded pair can interact")
    for x, y in _joint_walk(a, b, min(p["depth"], 2)):
        if not cannot_interact(x, y):
            return Item(i, label, "fail", "interaction became possible", (str(x), str(y)))
        if _taus(par(x, y)) != _taus(x) + _taus(y):
            return Item(i, label, "fail", "a communication between the sides exists",
                        (str(x), str(y)))
    d, fuel = p["depth"], p["fuel"]
    ta, sa = _traces(PI_STD, a, d, fuel)
    tb, sb = _traces(PI_STD, b, d, fuel)
    tab, sab = _traces(PI_STD, par(a, b), d, fuel)
    r = _compare_sets(i, label, tab, _merged(ta, tb, d, "free"),
                      sa.divergence_suspected or sb.divergence_suspected
                      or sab.divergence_suspected, ("composite", "interleavings"))
    return r


# fixed counterexample pairs ------------------------------------------------

_OMEGA = r"(\w. w w) (\w. w w)"
_M_DIV = rf"(\z. {_OMEGA}) (x0 (\y. {_OMEGA}))"
_M_ID = rf"(\z. {_OMEGA}) (x0 (\y. y))"
SWAP_LEFT = f"<p1 |-> {_M_DIV} ; p2 |-> {_OMEGA} | names: x0, p1, p2>"
SWAP_RIGHT = f"<p1 |-> {_OMEGA} ; p2 |-> {_M_DIV} | names: x0, p1, p2>"

_COUNTEREXAMPLES = ("cogs swap pair, depth 5",
                    "aogs callback pair, depth 4",
                    "wbogs callback pair, depth 4 (informational)")


def _check_counterexample(p, i, label):
    if i == 0:
        f, g = parse_config(SWAP_LEFT, "cogs"), parse_config(SWAP_RIGHT, "cogs")
        v = bisim_upto_composition(f, g, 5, p["fuel"])
        t = trace_equiv(COGS, f, COGS, g, 5, p["fuel"])
        if v.kind == t.kind == "equivalent":
            return Item(i, label, "pass", "bisimilar up to composition and trace equivalent")
        return _verdict_item(i, label, v if v.kind != "equivalent" else t, "equivalent")
    m, n = parse_term(_M_DIV, literal_names=True), parse_term(_M_ID, literal_names=True)
    names = _names_of(m, n)
    if i == 1:
        v = trace_equiv(AOGS, initial(m, names), AOGS, initial(n, names), 4, p["fuel"])
        return _verdict_item(i, label, v, "distinguished")
    v = trace_equiv(WBOGS, initial_stacked(m, names), WBOGS, initial_stacked(n, names), 4,
                    p["fuel"])
    return Item(i, label, "info", v.kind, tuple(str(a) for a in v.witness))


# λρ contexts ----------------------------------------------------------------

_L = Loc(0)


def _rho_values(y, z):
    """A small pool of argument values, some of which use the location ``l0``."""
    omega = parse_term(_OMEGA)
    return (("λy.y", Lam(y, Var(y))),
            ("λy.Ω", Lam(y, omega)),
            ("λy.λz.y", Lam(y, Lam(z, Var(y)))),
            ("λy.λz.z", Lam(y, Lam(z, Var(z)))),
            ("λy.(l0 := y; y)", Lam(y, Assign(_L, Var(y), Var(y)))),
            ("λy.!l0 y", Lam(y, App(Deref(_L), Var(y)))))


def _rho_contexts(max_args):
    """``ρ{l0 = λy.y}. (λx0.[·]) V A1 .. Ak`` for pool values, k up to ``max_args``.

    Yields a description and a function plugging a term into the context.
    """
    y, z = Name(Kind.VAR, 900_000), Name(Kind.VAR, 900_001)
    pool = _rho_values(y, z)
    ident = Lam(y, Var(y))

    def build(v, args):
        def plug(m):
            t = App(Lam(X0, m), v)
            for _, a in args:
                t = App(t, a)
            return RhoNew(((_L, ident),), t)
        return plug

    seqs = [args for k in range(max_args + 1) for args in product(pool, repeat=k)]
    for vname, v in pool:
        for args in seqs:
            desc = f"ρ{{l0 = λy.y}}. (λx0.[·]) ({vname})" + "".join(f" ({n})" for n, _ in args)
            yield desc, build(v, args)


def _converges(t, fuel):
    return run_rho(t, (), fuel).kind == "value"


def _rho_pairs(p):
    fx = fixture_terms()
    return [(a, b) for a, b in combinations(fx, 2)]


def _rho_items(p):
    return [f"{a[0]} vs {b[0]}" for a, b in _rho_pairs(p)]


def _check_rho(p, i, label):
    (_, m), (_, n) = _rho_pairs(p)[i]
    names = _names_of(m, n)
    v = complete_trace_equiv(WBOGS, initial_stacked(m, names), WBOGS, initial_stacked(n, names),
                             p["depth"], p["fuel"])
    if v.kind != "distinguished":
        return Item(i, label, "info", f"complete well-bracketed traces: {v.kind}")
    fuel = 10 * p["fuel"]
    for desc, plug in _rho_contexts(2):
        cm, cn = _converges(plug(m), fuel), _converges(plug(n), fuel)
        if cm != cn:
            who = "left" if cm else "right"
            return Item(i, label, "pass", f"only the {who} term converges", (desc,))
    return Item(i, label, "inconclusive", "no template context separates the pair",
                tuple(str(a) for a in v.witness))


# table -------------------------------------------------------------------

@dataclass(frozen=True)
class Suite:
    name: str
    items: object
    check: object
    defaults: dict


_BASE = {"seed": 1, "count": 25, "size": 6, "depth": 3, "fuel": 64}

SUITES = {s.name: s for s in (
    Suite("aogs-pi-op", _corpus_items, _check_aogs_pi_op, {}),
    Suite("cogs-pi", _corpus_items, _check_cogs_pi, {}),
    Suite("alternating-subset", _corpus_items, _check_alternating, {}),
    Suite("wb-filter", _corpus_items, _check_wb_filter, {"depth": 4}),
    Suite("complete-iff-sp", _corpus_items, _check_complete_sp, {}),
    Suite("tensor-interleave", _tensor_items, _check_tensor, {"count": 10, "depth": 4}),
    Suite("ct-coincide", _pair_items, _check_ct_coincide, {"count": 20, "depth": 4}),
    Suite("beta-v", _redex_items, _check_beta_v, {"depth": 4}),
    Suite("enf-vs-ogs", _pair_items, _check_enf_ogs, {"count": 20}),
    Suite("pi-noninteract", _noninteract_items, _check_noninteract, {"count": 10}),
    Suite("counterexamples", lambda p: list(_COUNTEREXAMPLES), _check_counterexample, {}),
    Suite("rho-context", _rho_items, _check_rho, {"depth": 6}),
)}


def suite_params(name, params=None):
    """Defaults for ``name`` overridden by the non-None entries of ``params``."""
    if name not in SUITES:
        raise UnknownSuite(name)
    out = dict(_BASE)
    out.update(SUITES[name].defaults)
    for k, v in (params or {}).items():
        if v is not None and k != "jobs":
            out[k] = v
    return out


def _run_item(job):
    name, params, i, label = job
    return SUITES[name].check(params, i, label)


def run_suite(name, params=None, jobs=1) -> Report:
    """Run suite ``name``; ``params`` may hold seed, count, size, depth and fuel."""
    if name not in SUITES:
        raise UnknownSuite(name)
    p = suite_params(name, params)
    labels = SUITES[name].items(p)
    work = [(name, p, i, label) for i, label in enumerate(labels)]
    if jobs and jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            items = list(pool.map(_run_item, work))
    else:
        items = [_run_item(w) for w in work]
    items.sort(key=lambda it: it.index)
    return Report(name, p, items)
