"""Spin-chain Hamiltonians, structured-matrix transforms, and
symmetry-adapted matrix product states, verified by brute-force oracles at
desk scale."""

from .errors import SymttError
from .hamiltonian import (
    HamiltonianSpec,
    LocalTermSpec,
    SpectrumReport,
    anisotropic_xy_transform,
    assemble,
    certify_structure,
    closed_form_hx_spectrum,
    fourier_conjugate,
    ground_state,
    model,
    pauli,
    spin1,
)
from .linalg import (
    EPS_LIN,
    EPS_RANK,
    EighResult,
    SvdResult,
    eigh,
    exchange_matrix,
    fourier_matrix,
    kron,
    schur,
    svd,
)
from .mps import (
    GaugeReport,
    MPSState,
    VidalForm,
    check_gauge,
    check_vidal,
    eval_component,
    from_vector,
    strong_normalize,
    to_vector,
    truncate,
    two_site_sweep,
    vidal_from_vector,
    vidal_to_a,
)
from .structured import (
    EPS_STRUCT,
    BlockPair,
    ClassifiedEigenbasis,
    StructureFlags,
    block_diagonalize,
    circulant_eigenvalues,
    classified_eigenbasis,
    classify,
    corner_blocks,
    omega_to_circulant,
    persym_split,
)
from .symmetry import (
    EPS_SYM,
    DofReport,
    OrbitReport,
    ReverseNormalForm,
    SymmetryWitness,
    bitflip_construct,
    bitflip_normal_form,
    detect_vector_symmetries,
    dof_count,
    firstsite_construct,
    fullbit_normal_form,
    fullbit_state,
    lastsite_construct,
    orbits,
    reverse_construct,
    reverse_normal_form,
    symmetrize_flip,
    symmetrize_reverse,
    symmetrize_shift,
    ti_construct,
    ti_normal_form,
    verify_relation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
