"""Finite polarities, sorted relations and canonical frames of lattice expansions."""

from .canonical import (
    CanonicalFrame,
    canonical_extension_check,
    canonical_frame,
    canonical_polarity,
    canonical_relation,
    hat_point_operator,
    pi_extension,
    represent_operator,
    representation_check,
    sigma_check,
    sigma_extension,
    sigma_extension_galois,
    verify_canonical_lemmas,
    zeta1,
    zeta_d,
)
from .errors import *  # noqa: F401,F403
from .formats import parse_frame_doc, parse_lattice_doc, serialize_frame_doc, serialize_lattice_doc
from .generate import random_lattice, random_polarity, random_relation, random_stable_relation
from .lattice import (
    Lattice,
    LatticeExpansion,
    NormalOperator,
    build_lattice,
    chain,
    enumerate_filters,
    enumerate_ideals,
    join,
    make_flew_chain,
    meet,
    validate_normal_operator,
)
from .polarity import (
    GaloisSet,
    Polarity,
    StableLattice,
    all_stable_sets,
    clopen_witness,
    closed_element,
    closure,
    dm_completion_check,
    enumerate_galois_sets,
    is_clopen,
    is_reduced,
    is_separated,
    open_element,
    polar_left,
    polar_right,
    preorder,
    z_order,
)
from .relations import (
    HOLE,
    SortedRelation,
    check_complete_additivity,
    closed_image,
    complex_algebra,
    conjugate_operator,
    conjugate_relation_from,
    conjugate_residual_report,
    galois_dual,
    goldblatt_operator,
    image_operator,
    is_conjugate_pair,
    residual_forms,
    residual_galois,
    residual_sets,
    section,
    sections_all_stable,
)
from .report import Check
from .sorts import DUAL, ONE, DistributionType, Sort, SortType

__version__ = "0.1.0"
