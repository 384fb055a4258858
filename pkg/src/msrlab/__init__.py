"""Minimum semidefinite rank (msr) of small graphs: certificates, bounds and refutations."""

__version__ = "0.1.0"
