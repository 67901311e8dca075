"""Matrix representations of transversal matroids over exact fields.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from ._core import (
    FieldExhausted,
    ParseError,
    SetSystem,
    matching,
    max_independent_sets,
    rank,
    represent,
    represent_uniform,
    trace,
    uniform_system,
    verify,
)

__all__ = [
    "FieldExhausted",
    "ParseError",
    "SetSystem",
    "matching",
    "max_independent_sets",
    "rank",
    "represent",
    "represent_uniform",
    "trace",
    "uniform_system",
    "verify",
]

__version__ = getattr(__import__("transrep._core", fromlist=["__version__"]), "__version__", "dev")
