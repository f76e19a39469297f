"""Visible and silent actions shared by the game LTSs and the π-calculus.

An action is an input, an output, an abstraction (the initial question) or
τ.  All objects of inputs, outputs and abstractions are bound.  The game
label (PA, OQ, ...) is derived from the direction and the subject's kind.
"""

from dataclasses import dataclass

from .names import Kind, Name, placeholder


@dataclass(frozen=True, slots=True)
class Action:
    dir: str  # "in", "out", "abs" or "tau"
    subject: Name | None = None
    objects: tuple = ()

    @property
    def visible(self):
        return self.dir != "tau"

    @property
    def polarity(self):
        if self.dir == "out":
            return "P"
        if self.dir in ("in", "abs"):
            return "O"
        return None

    @property
    def label(self):
        d = self.dir
        if d == "tau":
            return "Tau"
        if d == "abs":
            return "IOQ"
        side = "P" if d == "out" else "O"
        k = self.subject.kind
        if k is Kind.CONT:
            return side + "A"
        if k is Kind.VAL:
            return side + "VQ"
        if len(self.objects) == 1 and self.objects[0].kind is Kind.CONT:
            return side + "TQ"
        return side + "Q"

    @property
    def is_answer(self):
        return self.dir in ("in", "out") and self.subject.kind is Kind.CONT

    @property
    def is_question(self):
        return self.dir == "abs" or (self.dir in ("in", "out") and self.subject.kind is not Kind.CONT)

    def rename(self, ren):
        if not ren:
            return self
        s = self.subject
        return Action(self.dir, ren.get(s, s) if s is not None else None,
                      tuple(ren.get(o, o) for o in self.objects))

    def __str__(self):
        objs = ",".join(str(o) for o in self.objects)
        if self.dir == "tau":
            return "τ"
        if self.dir == "abs":
            return f"({objs})"
        if self.dir == "out":
            return f"{self.subject}^({objs})"
        return f"{self.subject}({objs})"

    def to_json(self):
        return {"kind": self.label,
                "subject": str(self.subject) if self.subject is not None else None,
                "objects": [str(o) for o in self.objects],
                "polarity": self.polarity}


TAU = Action("tau")


def out(subject, *objects):
    return Action("out", subject, tuple(objects))


def inp(subject, *objects):
    return Action("in", subject, tuple(objects))


def abs_(*objects):
    return Action("abs", None, tuple(objects))


def canonical_renaming(action: Action, start: int) -> dict:
    """Map the bound objects of ``action`` to placeholders from ``start``."""
    return {o: placeholder(o.kind, start + i) for i, o in enumerate(action.objects)}


def canonical_trace(trace) -> tuple:
    """Replace bound names by placeholders numbered in binding order."""
    ren = {}
    out_ = []
    for a in trace:
        for o in a.objects:
            ren[o] = placeholder(o.kind, len(ren))
        out_.append(a.rename(ren))
    return tuple(out_)


def show_trace(trace) -> str:
    return "·".join(str(a) for a in trace) if trace else "ε"


def trace_to_json(trace):
    return [a.to_json() for a in trace]


def is_alternating(trace) -> bool:
    for a, b in zip(trace, trace[1:]):
        if a.polarity == b.polarity:
            return False
    return True
