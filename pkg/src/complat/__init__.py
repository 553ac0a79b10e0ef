"""complat: component lattices of quotient stacks, exactly.

The package computes the wall-and-chamber geometry that controls graded
and filtered points of a stack: special faces and their closures, special
cones and attractor data, Hall categories with Tits composition, and the
counting Hall algebras of quiver representations over small finite
fields. All arithmetic is exact (rationals / finite fields); outputs are
canonical so repeated runs agree byte for byte.
"""

from .errors import CapExceeded, SpecError

__version__ = "0.1.0"

__all__ = ["CapExceeded", "SpecError", "__version__"]
