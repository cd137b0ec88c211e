"""Exact computation of Weitzenboeck-derivation constants.

Three algebras share one derivation shape (each variable pair has an
upper element mapped to its lower partner, which is killed): the
polynomial algebra, the free metabelian associative algebra and the
relatively free algebra of the variety cut out by the triple-commutator
identity.  The package computes homogeneous kernels by exact nullspace,
organizes the known generator systems and canonical bases, and certifies
generation degree by degree.
"""

from .linalg import IncrementalSpan, QMatrix, nullspace, rank, rref, span_membership
from .poly import CommPoly, VarAlphabet, nowicki_generators, uv_alphabet, x_alphabet, y_alphabet
from .metabelian import MetaElement, MetaMonomial
from .wreath import ModuleElement, WreathElement, commutator_image, embed, pullback
from .uvconstants import (
    CanonicalMonomial,
    ConstGen,
    algebra_generators,
    canonical_basis,
    completed_module_generators,
    covers,
    intersects,
    module_generators,
    straighten,
    verify_relation,
)
from .grassmann import (
    GrassElement,
    GrassMonomial,
    completed_grassmann_generators,
    grassmann_generators,
    integrated_hooks,
    lemma_elements,
)
from .kernel import (
    GradedComponent,
    SpanReport,
    component_basis,
    derivation_matrix,
    kernel_basis,
    module_span_check,
    span_check,
)
from .exprio import from_json, parse, render, to_json

__version__ = "0.1.0"
