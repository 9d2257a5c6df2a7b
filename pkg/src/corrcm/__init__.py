"""Collision models with sequentially correlated ancillas."""

from .ccm_maps import CollisionMap, cptp_check, iterate_reduced, iterate_states
from .collision_model import (
    AncillaState,
    ModelParams,
    chain_reduced_state_oracle,
    pair_state_rho_AA,
)
from .liouville_rep import (
    d_closed_form_plus,
    d_from_state_sequence,
    d_via_transfer,
    d_via_xi,
    dprime_series,
)
from .nonmarkov_measures import blp_from_series, blp_sweep, pair_correlation_series

__version__ = "0.1.0"
