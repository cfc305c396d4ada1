"""Integral equivariant cohomology of weighted projective spaces.

The ring is modelled as integral piecewise polynomials on the fan of the
space. Submodules:

``lattice``      integer normal forms, kernels, p-contents
``polynomial``   sparse integer polynomials
``fan``          the fan of a weight vector
``piecewise``    piecewise polynomials, Courant functions, b-forms, a_I
``cohomology``   structure constants and the ring presentation
``weights``      normalisation and weight recovery
``bundle``       pull-back fan and the weighted Chern relation
"""

from weightedproj._kernels import IMPLEMENTATION as KERNELS
from weightedproj.fan import Fan, fan_from_rays, fan_from_weights
from weightedproj.piecewise import PiecewisePolynomial, a_subset, b_form, courant
from weightedproj.polynomial import Polynomial
from weightedproj.weights import normalize, recover_weights

__version__ = "0.1.0"
