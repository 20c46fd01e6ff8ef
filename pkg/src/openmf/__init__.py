"""Exact open modular functor computations."""
