"""Exact-arithmetic engine for quasi-particle bases of principal
subspaces of integrable highest-weight modules in type A."""

__version__ = "0.1.0"
