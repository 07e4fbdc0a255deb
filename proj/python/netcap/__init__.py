"""Capacity analysis for structured feed-forward networks.

Thin Python surface over the C++ core. The compiled module lives next to
this package in an installed wheel; in a plain build tree it sits on
PYTHONPATH as a top-level extension.
"""

try:
    from ._netcap import (
        __version__,
        activation_value,
        analyze_architecture,
        bump_l1_norm,
        bump_value,
        choose_nstar,
        constant_ledger,
        covering_bound,
        deep_net_lower_bound,
        dense_param_count,
        gv_code,
        relation_lower_bound,
    )
except ImportError:  # build-tree layout: extension is top-level
    from _netcap import (
        __version__,
        activation_value,
        analyze_architecture,
        bump_l1_norm,
        bump_value,
        choose_nstar,
        constant_ledger,
        covering_bound,
        deep_net_lower_bound,
        dense_param_count,
        gv_code,
        relation_lower_bound,
    )

__all__ = [
    "__version__",
    "activation_value",
    "analyze_architecture",
    "bump_l1_norm",
    "bump_value",
    "choose_nstar",
    "constant_ledger",
    "covering_bound",
    "deep_net_lower_bound",
    "dense_param_count",
    "gv_code",
    "relation_lower_bound",
]
