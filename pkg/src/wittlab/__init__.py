"""wittlab: exact computational algebra for truncated Witt vectors,
monoid-algebra completions, module classification, and Tor checks over
finite-dimensional F_p-algebras."""

__version__ = "0.1.0"
