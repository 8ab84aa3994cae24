"""visilin: LTI system identifiability toolkit.

A clean architecture implementation for deciding which part of a linear
time-invariant system a single experiment (x0, u) can identify.
"""

__version__ = "1.0.0"
