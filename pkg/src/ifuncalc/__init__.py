"""I-function numerics and fractional operator calculus."""

__version__ = "0.1.0"
