"""Symbolic computation toolkit for self-similar ultragraph systems.

Represents a group acting on an ultragraph together with a 1-cocycle,
builds the associated inverse semigroup of quadruples and its partial
action on tight filters, and runs bounded checkers for the sufficient
conditions (cofinality, entrances, the star condition) behind minimality,
effectiveness, and simplicity of the associated structures, plus the
trivial-cocycle crossed-product correspondence on the algebra side.
"""

__version__ = "0.1.0"
