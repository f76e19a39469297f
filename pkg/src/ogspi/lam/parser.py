"""Text syntax for λ-terms.

``\\x. M`` or ``λx. M`` abstracts (several binders may share one ``\\``),
application is juxtaposition and associates to the left.  In rho mode the
grammar adds ``rho {l = V, ...}. M``, ``l := V; M`` and ``!l``.
"""

import re
from dataclasses import dataclass

from ..names import Kind, Name
from .terms import App, Assign, Deref, Hole, Lam, Loc, RhoNew, Var, is_value


class ParseError(ValueError):
    def __init__(self, msg, line=1, col=1):
        super().__init__(f"{msg} at line {line}, column {col}")
        self.msg = msg
        self.line = line
        self.col = col


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<lam>\\|λ)
  | (?P<hole>\[\s*\])
  | (?P<assign>:=)
  | (?P<ident>[a-z][A-Za-z0-9_]*)
  | (?P<punct>[().{}=,;!])
""", re.VERBOSE)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text):
    toks = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            nl = chunk.count("\n")
            if nl:
                line += nl
                line_start = pos + chunk.rindex("\n") + 1
        else:
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


# Raw syntax: identifiers are still strings.
@dataclass(frozen=True)
class _RVar:
    ident: str


@dataclass(frozen=True)
class _RLam:
    ident: str
    body: object


@dataclass(frozen=True)
class _RApp:
    fun: object
    arg: object


@dataclass(frozen=True)
class _RRho:
    store: tuple
    body: object


@dataclass(frozen=True)
class _RAssign:
    loc: str
    value: object
    body: object


@dataclass(frozen=True)
class _RDeref:
    loc: str


class _Parser:
    def __init__(self, text, mode, allow_hole):
        self.toks = _tokenize(text)
        self.i = 0
        self.mode = mode
        self.allow_hole = allow_hole

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.line, tok.col)

    def expect(self, text):
        t = self.peek()
        if t.text != text or t.kind == "eof":
            self.error(f"expected {text!r}, found {t.text or 'end of input'!r}")
        return self.next()

    def parse(self):
        t = self.term()
        if self.peek().kind != "eof":
            self.error(f"unexpected {self.peek().text!r}")
        return t

    def term(self):
        t = self.peek()
        if t.kind == "lam":
            return self.lam()
        if self.mode == "rho":
            if t.kind == "ident" and t.text == "rho" and self.peek(1).text == "{":
                return self.rho()
            if t.kind == "ident" and self.peek(1).kind == "assign":
                return self.assign()
        return self.app()

    def lam(self):
        self.next()
        idents = []
        while self.peek().kind == "ident":
            idents.append(self.next().text)
        if not idents:
            self.error("expected a binder after λ")
        self.expect(".")
        body = self.term()
        for x in reversed(idents):
            body = _RLam(x, body)
        return body

    def location(self):
        t = self.peek()
        if t.kind != "ident" or not t.text.startswith("l"):
            self.error("expected a location (identifier starting with 'l')")
        return self.next().text

    def rho(self):
        self.next()
        self.expect("{")
        store = []
        if self.peek().text != "}":
            while True:
                loc = self.location()
                self.expect("=")
                vtok = self.peek()
                v = self.term()
                if not _raw_is_value(v):
                    self.error("store entries must be values", vtok)
                store.append((loc, v))
                if self.peek().text == ",":
                    self.next()
                    continue
                break
        self.expect("}")
        self.expect(".")
        return _RRho(tuple(store), self.term())

    def assign(self):
        loc = self.location()
        self.next()
        vtok = self.peek()
        v = self.term()
        if not _raw_is_value(v):
            self.error("assigned expressions must be values", vtok)
        self.expect(";")
        return _RAssign(loc, v, self.term())

    def app(self):
        t = self.atom()
        while True:
            nk = self.peek()
            if nk.kind == "lam":
                return _RApp(t, self.lam())
            if nk.kind in ("ident", "hole") or nk.text in ("(", "!"):
                if self.mode == "rho" and nk.kind == "ident" and self.peek(1).kind == "assign":
                    return _RApp(t, self.assign())
                t = _RApp(t, self.atom())
            else:
                return t

    def atom(self):
        t = self.peek()
        if t.kind == "ident":
            if t.text == "rho" and self.mode == "rho" and self.peek(1).text == "{":
                return self.rho()
            self.next()
            return _RVar(t.text)
        if t.kind == "hole":
            if not self.allow_hole:
                self.error("a hole [] is only allowed inside contexts")
            self.next()
            return Hole()
        if t.text == "(":
            self.next()
            inner = self.term()
            self.expect(")")
            return inner
        if t.text == "!" and self.mode == "rho":
            self.next()
            return _RDeref(self.location())
        self.error(f"unexpected {t.text or 'end of input'!r}")


def _raw_is_value(t):
    return isinstance(t, (_RVar, _RLam))


_LITERAL = re.compile(r"([xv])(\d+)$")


class _Resolver:
    def __init__(self, literal, free_locations, binder_base=0):
        self.literal = literal
        self.binder_base = binder_base
        self.free_ids = {}
        self.free_locations = set(free_locations)
        self.locs = {}
        self.next_binder = 0
        self.has_hole = False

    def loc(self, ident, scope):
        if ident not in scope and ident not in self.free_locations:
            raise ParseError(f"unbound location {ident!r}")
        return self.locs[ident]

    def collect_free(self, t, bound):
        tt = type(t)
        if tt is _RVar:
            if t.ident not in bound and t.ident not in self.free_ids:
                self.free_ids[t.ident] = None
        elif tt is _RLam:
            self.collect_free(t.body, bound | {t.ident})
        elif tt is _RApp:
            self.collect_free(t.fun, bound)
            self.collect_free(t.arg, bound)
        elif tt is _RRho:
            for _, v in t.store:
                self.collect_free(v, bound)
            self.collect_free(t.body, bound)
        elif tt is _RAssign:
            self.collect_free(t.value, bound)
            self.collect_free(t.body, bound)

    def collect_locs(self, t, out):
        tt = type(t)
        if tt is _RLam:
            self.collect_locs(t.body, out)
        elif tt is _RApp:
            self.collect_locs(t.fun, out)
            self.collect_locs(t.arg, out)
        elif tt is _RRho:
            for l, v in t.store:
                out[l] = None
                self.collect_locs(v, out)
            self.collect_locs(t.body, out)
        elif tt is _RAssign:
            out[t.loc] = None
            self.collect_locs(t.value, out)
            self.collect_locs(t.body, out)
        elif tt is _RDeref:
            out[t.loc] = None
        return out

    def run(self, raw):
        order = self.collect_locs(raw, {})
        self.locs = {ident: Loc(i) for i, ident in enumerate(order)}
        self.collect_free(raw, frozenset())
        if self.literal:
            top = -1
            for ident in self.free_ids:
                m = _LITERAL.match(ident)
                if not m:
                    raise ParseError(f"free identifier {ident!r} is not a name like x3 or v1")
                kind = Kind.VAR if m.group(1) == "x" else Kind.VAL
                self.free_ids[ident] = Name(kind, int(m.group(2)))
                if kind is Kind.VAR:
                    top = max(top, int(m.group(2)))
            self.next_binder = max(top + 1, self.binder_base)
        else:
            for i, ident in enumerate(self.free_ids):
                self.free_ids[ident] = Name(Kind.VAR, i)
            self.next_binder = len(self.free_ids)
        return self.build(raw, {}, frozenset())

    def build(self, t, env, lscope):
        tt = type(t)
        if tt is _RVar:
            n = env.get(t.ident)
            return Var(n if n is not None else self.free_ids[t.ident])
        if tt is _RLam:
            x = Name(Kind.VAR, self.next_binder)
            self.next_binder += 1
            return Lam(x, self.build(t.body, {**env, t.ident: x}, lscope))
        if tt is _RApp:
            return App(self.build(t.fun, env, lscope), self.build(t.arg, env, lscope))
        if tt is Hole:
            if self.has_hole:
                raise ParseError("a context has exactly one hole")
            self.has_hole = True
            return t
        if tt is _RRho:
            inner = lscope | {l for l, _ in t.store}
            store = tuple((self.loc(l, inner), self.build(v, env, inner)) for l, v in t.store)
            return RhoNew(store, self.build(t.body, env, inner))
        if tt is _RAssign:
            loc = self.loc(t.loc, lscope)
            return Assign(loc, self.build(t.value, env, lscope), self.build(t.body, env, lscope))
        if tt is _RDeref:
            return Deref(self.loc(t.loc, lscope))
        raise TypeError(t)


def parse_term(text: str, mode: str = "cbv", *, literal_names=False, free_locations=(),
               allow_hole=False, binder_base=0):
    """Parse a term.

    Free identifiers get Variable ids 0, 1, ... in order of first occurrence,
    then every binder gets the next id in textual order.  With
    ``literal_names`` free identifiers must already be names (``x3``, ``v1``)
    and keep their ids; binders then start at ``binder_base`` or above the
    largest literal variable, whichever is higher.  In rho mode a location must be bound by an enclosing
    ``rho`` unless listed in ``free_locations``.
    """
    if mode not in ("cbv", "cbn", "rho"):
        raise ValueError(f"unknown mode {mode!r}")
    raw = _Parser(text, mode, allow_hole).parse()
    return _Resolver(literal_names, free_locations, binder_base).run(raw)


def parse_value(text, **kw):
    t = parse_term(text, **kw)
    if not is_value(t):
        raise ParseError("expected a value")
    return t
