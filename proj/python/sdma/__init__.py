"""Limited-feedback SDMA downlink simulation.

Thin python surface over the C++ core: Monte Carlo goodput cells, whole
experiment specs, rate adaptation tables, and feedback channel matrices.
"""

from ._core import (
    ConfigError,
    __version__,
    psk_transition,
    rate_table,
    run_spec,
    simulate,
)

__all__ = [
    "ConfigError",
    "__version__",
    "psk_transition",
    "rate_table",
    "run_spec",
    "simulate",
]
