"""Finite-field arithmetic in F_16^13 via interpolation on a genus-2 curve."""

try:
    from ._ccma import (  # noqa: F401
        Instance,
        Ledger,
        default_params,
        embedded_instance_text,
        frobenius,
        simulate_trace,
        vzg_depth_bound,
    )
except ImportError:  # extension built out-of-tree, e.g. in a CMake build dir
    from _ccma import (  # noqa: F401
        Instance,
        Ledger,
        default_params,
        embedded_instance_text,
        frobenius,
        simulate_trace,
        vzg_depth_bound,
    )

__all__ = [
    "Instance",
    "Ledger",
    "default_params",
    "embedded_instance_text",
    "frobenius",
    "simulate_trace",
    "vzg_depth_bound",
]
