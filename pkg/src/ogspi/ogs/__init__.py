"""Game configurations and their transition systems."""

from .config import (Active, Concurrent, ContEntry, IncompatibleConfigurations, Initial,
                     InvalidConfiguration, InvalidInterleaving, MissingContinuationEntry,
                     Passive, Stacked, config_key, empty_config, erase, initial, is_passive,
                     is_strongly_passive, pending_continuations, player_names, polarity,
                     rename_config, show_config, to_alternating, to_concurrent, validate)
from .literal import parse_config
from .lts import (aogs_step, aogs_transitions, cbn_transitions, cogs_step, cogs_transitions,
                  initial_stacked, wbogs_step, wbogs_transitions)
from .tensor import (compatible, decompose_singletons, fold_tensor, is_interleaving,
                     is_singleton, support_equivalent, tensor)
from .traces import (full_stack, is_complete_trace, is_well_bracketed, justified_answers,
                     pushdown_accepts)
