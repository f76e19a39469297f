"""A uniform view of the six transition systems.

A stepper lists successors in a fixed order, gives every state a key that
identifies it up to α-conversion, renames free names, and says when a state
is an endpoint of a complete trace.  ``norm`` picks the representative of a
state that exploration continues from, together with its key.
"""

from ..actions import TAU
from ..names import Kind
from ..ogs.config import config_key, is_strongly_passive, rename_config
from ..ogs.lts import aogs_step, cogs_step, wbogs_step
from ..ogs.traces import is_complete_trace
from ..pii import lts as pi_lts
from ..pii.confluence import confluent_step
from ..pii.normal import canonical
from ..pii.syntax import Literal, free_names
from ..pii.syntax import rename as pi_rename


class Stepper:
    name = "?"

    def transitions(self, s):
        raise NotImplementedError

    def key(self, s) -> str:
        raise NotImplementedError

    def rename(self, s, ren):
        raise NotImplementedError

    def norm(self, s):
        """``(representative, key)`` of a state."""
        return s, self.key(s)

    def is_final(self, s) -> bool:
        raise NotImplementedError

    def complete_from(self, trace, s0) -> bool | None:
        """Definition-based completeness, when the system has one."""
        return None

    def __repr__(self):
        return f"<{self.name} stepper>"


class _GameStepper(Stepper):
    def __init__(self, name, step):
        self.name = name
        self._step = step

    def transitions(self, s):
        return self._step(s)

    def key(self, s):
        return config_key(s)

    def rename(self, s, ren):
        return rename_config(s, ren)

    def is_final(self, s):
        return is_strongly_passive(s)

    def complete_from(self, trace, s0):
        return is_complete_trace(trace, s0)


class _PiStepper(Stepper):
    """πI under the standard or output-prioritised LTS.

    With ``reduce`` set, a state with a confluent internal communication
    offers only that τ (see ``pii.confluence``).
    """

    def __init__(self, name, step, reduce=True):
        self.name = name
        self._step = step
        self.reduce = reduce

    def transitions(self, s):
        if self.reduce:
            nxt = confluent_step(s)
            if nxt is not None:
                return [(TAU, nxt)]
        return self._step(s)

    def key(self, s):
        return canonical(s)[1]

    def norm(self, s):
        return canonical(s)

    def rename(self, s, ren):
        return pi_rename(s, ren)

    def is_final(self, s):
        if type(s) is Literal:
            return False
        return not any(n.kind is Kind.CONT for n in free_names(s))


AOGS = _GameStepper("aogs", lambda f: aogs_step(f, "cbv"))
COGS = _GameStepper("cogs", lambda f: cogs_step(f, "cbv"))
WBOGS = _GameStepper("wbogs", wbogs_step)
CBN_AOGS = _GameStepper("cbn-aogs", lambda f: aogs_step(f, "cbn"))
CBN_COGS = _GameStepper("cbn-cogs", lambda f: cogs_step(f, "cbn"))
PI_STD = _PiStepper("pi", pi_lts.pi_transitions)
PI_OP = _PiStepper("pi-op", pi_lts.pi_op_transitions)
PI_STD_FULL = _PiStepper("pi-full", pi_lts.pi_transitions, reduce=False)
PI_OP_FULL = _PiStepper("pi-op-full", pi_lts.pi_op_transitions, reduce=False)

STEPPERS = {s.name: s for s in (AOGS, COGS, WBOGS, CBN_AOGS, CBN_COGS, PI_STD, PI_OP,
                                      PI_STD_FULL, PI_OP_FULL)}


def get_stepper(name: str) -> Stepper:
    try:
        return STEPPERS[name]
    except KeyError:
        raise ValueError(f"unknown transition system {name!r}; choose from "
                         f"{', '.join(sorted(STEPPERS))}") from None
