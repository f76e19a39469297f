"""Translations of λ-terms and game configurations into the internal π-calculus."""

from .cbn import encode_cbn, encode_cbn_config, encode_cbn_term_at
from .cbv import encode_cbv, encode_cbv_opt, encode_config, encode_term_at, encode_value_at
