"""Bounded equivalence checking over the game and π-calculus transition systems."""

from .bisim import bisim_upto_composition, bounded_weak_bisim
from .enf import enf_bisim
from .explore import Explorer
from .interleave import interleavings, shuffles
from .steppers import (AOGS, CBN_AOGS, CBN_COGS, COGS, PI_OP, PI_STD, STEPPERS, WBOGS, Stepper,
                       get_stepper)
from .traces import (TraceSet, complete_trace_equiv, enumerate_traces, replay, trace_equiv,
                     trace_order)
from .verdict import Distinguished, Equivalent, Inconclusive, Verdict
