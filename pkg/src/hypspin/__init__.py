"""Exact Clifford algebra of a split hyperbolic form, its exterior spinor
model, explicit spin lifts of split Levi elements, and the square-determinant
spin-image decision with JSON certificates."""
from .certificates import SpinLiftCertificate
from .clifford_core import CliffordElement, cl_conj, cl_inverse, cl_mul, embed_vector, parity_split, spin_check
from .exterior_model import ExteriorElement, ExteriorOperator, contract, exterior_functor, vacuum_test, wedge
from .field_core import GF, QQ, PrimeField, Rationals, invert_scalar, parse_field, same_square_class, sqrt_in_field
from .image_decision import (
    levi_decide,
    projector_converse_check,
    split_line_decide,
    split_line_image_form,
    vacuum_scalar,
    verify_certificate,
)
from .levi_lifts import (
    assemble_lift,
    block_scaling_factorization,
    elementary_levi_lift,
    line_scaling_lift,
    pair_generator,
    square_det_factor,
    transvection_lift,
    transvection_reduce,
)
from .orthogonal_group import (
    HyperbolicVector,
    OrthoMap,
    is_isometry,
    levi_embed,
    line_scaling_map,
    pairing,
    q_value,
    reflection,
    transvection_map,
)
from .spin_rep import matrix_unit, occupation_projectors, projector, rho, rho_preimage

__version__ = "0.1.0"
