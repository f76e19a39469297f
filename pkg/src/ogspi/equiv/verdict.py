"""Outcomes of bounded equivalence checks."""

import json
from dataclasses import dataclass, field

from ..actions import Action


@dataclass(frozen=True)
class Verdict:
    depth: int
    witness: tuple = ()
    side: str | None = None
    reason: str | None = None
    divergence_suspected: bool = False
    stats: dict = field(default_factory=dict, compare=False)

    kind = "?"

    def __bool__(self):
        return self.kind == "equivalent"

    def to_json(self) -> dict:
        return {"verdict": self.kind,
                "depth": self.depth,
                "witness": [_witness_item(a) for a in self.witness],
                "side": self.side,
                "reason": self.reason,
                "divergence_suspected": self.divergence_suspected}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def show(self) -> str:
        head = f"{self.kind} (depth {self.depth})"
        if self.witness:
            head += ": " + " · ".join(str(a) for a in self.witness)
            if self.side:
                head += f" [exhibited by {self.side}]"
        if self.reason:
            head += f" [{self.reason}]"
        return head


def _witness_item(a):
    return a.to_json() if isinstance(a, Action) else str(a)


class Equivalent(Verdict):
    kind = "equivalent"


class Distinguished(Verdict):
    kind = "distinguished"


class Inconclusive(Verdict):
    kind = "inconclusive"
