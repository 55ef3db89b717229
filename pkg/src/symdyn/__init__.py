"""Symbolic dynamics workbench.

Subpackages:
    onedim   - sofic shift calculus (derivatives, ranks, countability)
    machines - nondeterministic counter machines and reversibilization
    conecc   - compilation of counter machines to computation-cone rows/tiles
    twodim   - 2D SFT engine (validity, enumeration, probes, transforms)
    poset    - subpattern preorder and poset analysis
"""

from .errors import ResourceError, DomainError

__version__ = "0.1.0"

__all__ = ["ResourceError", "DomainError", "__version__"]
