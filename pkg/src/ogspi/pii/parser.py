"""Text syntax for πI processes.

``a(x,y).P`` input, ``a^(x,y).P`` bound output, ``nu x. P`` (or
``nu x,y. P``), ``P | Q``, ``!a(x).P``, ``0``, constant applications
``fwd_x<a,b>`` and, at the top, abstractions ``(p) P``.  A prefix without a
continuation (``a(x)``) stands for ``a(x).0``.

Identifiers spelled like names (``x3``, ``p0``, ``v1``) denote those names.
Other identifiers are kinded by their first letter: ``p``/``q`` continuation,
``v`` value name, anything else a variable.
"""

import re

from ..lam.parser import ParseError
from ..names import Kind, Name
from .syntax import CONSTANTS, NIL, Apply, Constant, Inp, Literal, Out, Par, Rep, Res

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<zero>0)
  | (?P<punct>[()^.,|!<>])
""", re.VERBOSE)

_LITERAL = re.compile(r"([xpqv])(\d+)$")


def _tokenize(text):
    toks, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", 1, pos + 1)
        if m.lastgroup != "ws":
            toks.append((m.lastgroup, m.group(), pos + 1))
        pos = m.end()
    toks.append(("eof", "", pos + 1))
    return toks


class _PiParser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0
        self.names = {}
        self._kind_next = {Kind.VAR: 0, Kind.CONT: 0, Kind.VAL: 0}
        for kind, text_, _ in self.toks:
            if kind == "ident":
                m = _LITERAL.match(text_)
                if m:
                    k = _kind_of(m.group(1))
                    self._kind_next[k] = max(self._kind_next[k], int(m.group(2)) + 1)

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg):
        raise ParseError(msg, 1, self.peek()[2])

    def expect(self, text):
        if self.peek()[1] != text:
            self.error(f"expected {text!r}, found {self.peek()[1] or 'end of input'!r}")
        return self.next()

    def name(self):
        kind, text, _ = self.peek()
        if kind != "ident":
            self.error("expected a name")
        self.next()
        n = self.names.get(text)
        if n is None:
            m = _LITERAL.match(text)
            if m:
                n = Name(_kind_of(m.group(1)), int(m.group(2)))
            else:
                k = _kind_of(text[0])
                n = Name(k, self._kind_next[k])
                self._kind_next[k] += 1
            self.names[text] = n
        return n

    def name_list(self, close=")"):
        out = []
        if self.peek()[1] != close:
            out.append(self.name())
            while self.peek()[1] == ",":
                self.next()
                out.append(self.name())
        return tuple(out)

    def agent(self):
        # abstraction: ( names ) P
        if self.peek()[1] == "(" and self._looks_like_params():
            self.next()
            params = self.name_list()
            self.expect(")")
            body = self.proc()
            return Literal(params, body)
        return self.proc()

    def _looks_like_params(self):
        j = self.i + 1
        while True:
            kind, text, _ = self.toks[j]
            if kind == "ident":
                j += 1
                if self.toks[j][1] == ",":
                    j += 1
                    continue
                return self.toks[j][1] == ")" and self.toks[j + 1][0] != "eof"
            return text == ")" and self.toks[j + 1][0] != "eof"

    def proc(self):
        left = self.seq()
        if self.peek()[1] == "|":
            self.next()
            return Par(left, self.proc())
        return left

    def cont(self):
        if self.peek()[1] == ".":
            self.next()
            return self.seq()
        return NIL

    def seq(self):
        kind, text, _ = self.peek()
        if kind == "zero":
            self.next()
            return NIL
        if text == "(":
            self.next()
            p = self.proc()
            self.expect(")")
            return p
        if text == "!":
            self.next()
            a = self.name()
            self.expect("(")
            params = self.name_list()
            self.expect(")")
            return Rep(a, params, self.cont())
        if kind == "ident" and text == "nu":
            self.next()
            names = [self.name()]
            while self.peek()[1] == ",":
                self.next()
                names.append(self.name())
            self.expect(".")
            body = self.seq_or_proc()
            for n in reversed(names):
                body = Res(n, body)
            return body
        if kind == "ident":
            if self.peek(1)[1] == "<":
                if text not in CONSTANTS:
                    self.error(f"unknown constant {text!r}")
                self.next()
                self.next()
                args = self.name_list(">")
                self.expect(">")
                return Apply(Constant(text), args)
            a = self.name()
            out = False
            if self.peek()[1] == "^":
                self.next()
                out = True
            self.expect("(")
            params = self.name_list()
            self.expect(")")
            body = self.cont()
            return Out(a, params, body) if out else Inp(a, params, body)
        self.error(f"unexpected {text or 'end of input'!r}")

    def seq_or_proc(self):
        # the scope of nu extends as far right as possible
        return self.proc()


def _kind_of(c):
    return {"p": Kind.CONT, "q": Kind.CONT, "v": Kind.VAL}.get(c, Kind.VAR)


def parse_process(text: str):
    p = _PiParser(text)
    out = p.agent()
    if p.peek()[0] != "eof":
        p.error(f"unexpected {p.peek()[1]!r}")
    return out
