"""Exact characters and tensor decompositions for osp(2m|2) and osp(2m+1|2).

The public surface, by layer:

* :mod:`ospchar.weights` -- root data, dominance, atypicality, blocks;
* :mod:`ospchar.characters` -- truncated formal characters, o(n) characters,
  generalized Verma characters, the closed typical formula;
* :mod:`ospchar.expansion` -- ch L as a signed sum of Verma characters, with
  evaluation and exact dimensions;
* :mod:`ospchar.tensor` -- decomposition of L tensor the natural module;
* :mod:`ospchar.verify` -- independent oracles for all of the above;
* :mod:`ospchar.cli` -- the ``ospchar`` command.

Everything is exact: weights are half-integer vectors over plain ints and
characters carry integer coefficients; no floating point appears anywhere.
"""

from .characters import (
    Character,
    character_from_json,
    character_to_json,
    kac_typical_character,
    o_n_character,
    o_n_dimension,
    verma_character,
)
from .expansion import (
    ExpansionCache,
    VermaExpansion,
    VermaSeries,
    dimension,
    expansion_from_json,
    expansion_to_json,
    irreducible_character,
    lambda_jq,
    mirror_expansion,
    phi,
    tail_typical,
    verma_expansion,
)
from .tensor import (
    TensorDecomposition,
    o_n_pieri,
    p_lambda,
    tensor_decompose,
    tensor_to_json,
    verma_tensor_natural,
)
from .verify import (
    VerificationReport,
    brute_force_block,
    check_tensor_identity,
    check_trivial_cohomology,
    check_trivial_telescoping,
    check_typical,
)
from .weights import (
    Algebra,
    DomainError,
    Weight,
    WeylElement,
    atypical_roots,
    block_key,
    block_order,
    delta_involution,
    dominant_weights,
    form,
    height,
    is_dominant_integral,
    is_typical,
    mirror,
    natural_order,
    positive_roots,
    rho,
    same_block,
    simple_roots,
    t_alpha,
    t_w,
    weyl_group,
)

__version__ = "0.1.0"
