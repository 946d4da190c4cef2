"""Groupoid-flavoured classification of relativistic elementary systems.

Subpackages: spacetime (metrics and tetrads), groupoid (Wigner morphisms and
orbits), cohomology (exact Chevalley-Eilenberg H^2), covering (projective
cover of E(2)), mackey (classification tables), repcheck (finite
representation witnesses), verify (aggregated check suite), cli.
"""

from . import cohomology, covering, groupoid, mackey, repcheck, spacetime, verify
from .errors import WigneroidError

__version__ = "0.1.0"

__all__ = [
    "cohomology",
    "covering",
    "groupoid",
    "mackey",
    "repcheck",
    "spacetime",
    "verify",
    "WigneroidError",
    "__version__",
]
