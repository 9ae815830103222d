"""smallsys: exact-arithmetic toolkit for small-systole hyperbolic gluing
constructions over Q(sqrt 2) and its quadratic towers."""

__version__ = "0.1.0"
