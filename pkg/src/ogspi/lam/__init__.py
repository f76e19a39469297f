"""λ-calculi: syntax, parsing and reduction."""

from .parser import ParseError, parse_term, parse_value
from .reduce import (Callback, FuelExhausted, Redex, RhoResult, StoreOp, Stuck, StuckDeref,
                     Value, decompose_cbn, decompose_cbv, eval_enf, is_cbn_value, run_rho,
                     step_cbn, step_cbv, step_rho)
from .terms import (HOLE, App, AppLeft, AppRight, Assign, Deref, Hole, Lam, Loc, RhoNew, Term,
                    Var, all_names, alpha_key, ctx_key, free_names, free_vars, is_value, plug,
                    rename_names, show, show_ctx, size, subst)
