"""Rank-two distributions of Cartan type on five-dimensional charts.

Subpackage map:

- `expr`: expression parsing, differentiation, evaluation
- `fields`: vector fields, Lie brackets, growth vectors
- `certify`: graph-form distributions and grid certification reports
- `connections`: Lie-algebra valued connection forms, curvature
  criteria, suspensions to five-dimensional distributions
- `extension`: loop integrals and the convex-cone extension decision
- `topology`: homotopy-formality predicates on manifold invariants
- `cli`: the `cartan235` command line interface
"""

from .engine import available_backends, backend, set_backend

__version__ = "0.1.0"

__all__ = ["backend", "available_backends", "set_backend", "__version__"]
