"""lcqft: the locally covariant free Klein-Gordon field at desk scale.

Flat 1+1D spacetime windows and cylinders, validated isometric
embeddings, Green operators at unit CFL ratio, the Weyl algebra over the
solution symplectic space, the induced covariant algebra assignment with
executable axiom checks, local S-matrices with causal factorization, and
a finite-dimensional modular-theory lab.
"""

from ._core import backend_name
from .errors import LcqftError
from .functor import algebra_of, alpha, local_algebra
from .greens import advanced, causal_propagator, cauchy_data, retarded, symplectic
from .modular import StandardPair, check_standard, tomita_operators
from .natfield import s_matrix, weyl_field
from .spacetime import (
    CausalClass,
    Embedding,
    Region,
    Spacetime2D,
    causal_relation,
    compose_embeddings,
    cylinder,
    double_cone,
    grid_set,
    identity_embedding,
    is_causally_convex,
    minkowski_plane,
    time_slab,
    translation_embedding,
    validate_embedding,
)
from .testfun import TestFunction, bump, pushforward
from .weyl import (
    QuasiFreeState,
    WeylElement,
    adjoint,
    cylinder_vacuum,
    generator,
    label_space,
    multiply,
    unit,
)

__version__ = "0.1.0"
