"""Computational checks of congruences for central trinomial coefficient sums.

Modules:

* ``modring`` -- residues modulo p^E, valuated residues, Legendre symbols
* ``comb`` -- trinomial, binomial and harmonic sequences (exact and modular)
* ``exact`` -- Fraction-based oracle and finite identity checkers
* ``claims`` -- the claim catalog and prime sweeps
* ``cli`` -- command-line front end
"""

from .claims import list_claims, sweep, verify, verify_range
from .exact import oracle_claim

__all__ = ["list_claims", "sweep", "verify", "verify_range", "oracle_claim"]
__version__ = "0.1.0"
