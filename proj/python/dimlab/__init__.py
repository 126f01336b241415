from ._dimlab import (
    InfeasibleError,
    InputError,
    __version__,
    estimate,
    methods,
    sample,
    sphere,
    stable_window,
    tuned_estimate,
    w1,
)

__all__ = [
    "InfeasibleError",
    "InputError",
    "estimate",
    "methods",
    "sample",
    "sphere",
    "stable_window",
    "tuned_estimate",
    "w1",
]
