"""The internal π-calculus."""

from .lts import is_input_reactive, pi_op_transitions, pi_transitions
from .normal import cannot_interact, canonical, flatten, normalize, process_key
from .parser import parse_process
from .syntax import (CONSTANTS, NIL, Apply, ArityMismatch, Constant, Inp, KindMismatch, Literal,
                     Nil, Out, Par, Rep, Res, all_names, define_constant, forwarder, free_names,
                     par, rename, res, show, unfold)
