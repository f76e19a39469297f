"""Kinded names and the deterministic fresh-name supply.

A name is a pair (kind, id).  Ordinary names have non-negative ids.  Negative
ids are reserved: ids in ``[-PLACEHOLDER_LIMIT, -1]`` are trace placeholders
(bound names replaced by their binding index) and ids below that range are
used as binders inside constant definitions, so that neither can ever be
captured by an ordinary name.
"""

from enum import Enum
from typing import Iterable, NamedTuple


class Kind(str, Enum):
    VAR = "x"
    CONT = "p"
    VAL = "v"


PLACEHOLDER_LIMIT = 1_000_000


class Name(NamedTuple):
    kind: Kind
    id: int

    def __str__(self):
        if self.id >= 0:
            return f"{self.kind.value}{self.id}"
        if self.id >= -PLACEHOLDER_LIMIT:
            return f"{self.kind.value}_{-self.id - 1}"
        return f"{self.kind.value}'{-self.id - PLACEHOLDER_LIMIT - 1}"

    def __repr__(self):
        return str(self)

    @property
    def is_placeholder(self):
        return -PLACEHOLDER_LIMIT <= self.id < 0


def var(i: int) -> Name:
    return Name(Kind.VAR, i)


def cont(i: int) -> Name:
    return Name(Kind.CONT, i)


def val(i: int) -> Name:
    return Name(Kind.VAL, i)


def placeholder(kind: Kind, index: int) -> Name:
    return Name(kind, -index - 1)


def placeholder_index(n: Name) -> int:
    return -n.id - 1


def reserved(kind: Kind, index: int) -> Name:
    """Binder names used inside constant definitions."""
    return Name(kind, -PLACEHOLDER_LIMIT - 1 - index)


_NAME_TEXT = {"x": Kind.VAR, "p": Kind.CONT, "q": Kind.CONT, "v": Kind.VAL}


def parse_name(text: str) -> Name:
    """Parse the rendering of a name (``x3``, ``p0``, ``v2``, ``p_1``).

    ``q`` is accepted as an alias for the continuation kind since the
    literature writes continuation names both ways.
    """
    text = text.strip()
    if len(text) < 2 or text[0] not in _NAME_TEXT:
        raise ValueError(f"not a name: {text!r}")
    kind = _NAME_TEXT[text[0]]
    rest = text[1:]
    if rest.startswith("_") and rest[1:].isdigit():
        return placeholder(kind, int(rest[1:]))
    if not rest.isdigit():
        raise ValueError(f"not a name: {text!r}")
    return Name(kind, int(rest))


class Supply:
    """Fresh names above every non-negative id already in use, per kind.

    The supply is a plain value: it is derived from the set of names in use
    and advanced explicitly, so there is no hidden global counter.
    """

    __slots__ = ("next",)

    def __init__(self, used: Iterable[Name] = ()):
        nxt = {Kind.VAR: 0, Kind.CONT: 0, Kind.VAL: 0}
        for n in used:
            if n.id >= nxt[n.kind]:
                nxt[n.kind] = n.id + 1
        self.next = nxt

    def fresh(self, kind: Kind) -> Name:
        i = self.next[kind]
        self.next[kind] = i + 1
        return Name(kind, i)

    def avoid(self, names: Iterable[Name]):
        for n in names:
            if n.id >= self.next[n.kind]:
                self.next[n.kind] = n.id + 1
        return self
