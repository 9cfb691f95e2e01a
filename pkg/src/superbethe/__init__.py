"""Exact verification of graded Bethe vectors on composite superspin chains."""

__version__ = "0.1.0"

from .graded import GL12, GL21, Signature  # noqa: F401
from .monodromy import ChainModel, ChainSpec  # noqa: F401
from .composite import CompositeModel, SplitChain  # noqa: F401
