"""Closed-form objects of the delta-interacting Bose gas on the line and
numerical certification that all of their independent evaluation routes
coincide."""

from .errors import (
    DeltaGasError,
    DomainError,
    LengthMismatch,
    QuadratureFailure,
    SamplingExhausted,
    SingularArgument,
    SizeLimit,
    UnknownIdentity,
)
from .kernels import (
    Bipartition,
    Coupling,
    Permutation,
    PositionSet,
    RapiditySet,
    apply_permutation,
    big_f,
    enumerate_bipartitions,
    enumerate_permutations,
    kernel,
    kernel_f,
    kernel_g,
    kernel_h,
    kernel_t,
    set_inner,
    set_product,
    shifted_set,
)
from .detlib import (
    MepnoValue,
    cauchy_det,
    cauchy_det_factorized,
    det_complex,
    ik_det,
    ik_det_factorized,
    mepno_det,
)
from .wavefunction import (
    BetheState,
    cusp_residual,
    energy,
    plane_wave_sum,
    psi_fundamental,
    psi_symmetric,
)
from .oracles import (
    gaudin_sum,
    lemma2_sides,
    mepno_integral_oracle,
    mepno_route_a,
    mepno_route_a_regrouped,
    mepno_route_b,
    mepno_route_c,
    residue_probe,
    richardson_extrapolate,
)
from .harness import (
    REGISTRY,
    IdentityReport,
    SampleConfig,
    bench_routes,
    default_config,
    relative_error,
    run_identity,
    sample_configuration,
    sample_stream,
)

__version__ = "0.1.0"

__all__ = [
    "Bipartition",
    "BetheState",
    "Coupling",
    "DeltaGasError",
    "DomainError",
    "IdentityReport",
    "LengthMismatch",
    "MepnoValue",
    "Permutation",
    "PositionSet",
    "QuadratureFailure",
    "RapiditySet",
    "REGISTRY",
    "SampleConfig",
    "SamplingExhausted",
    "SingularArgument",
    "SizeLimit",
    "UnknownIdentity",
    "apply_permutation",
    "bench_routes",
    "big_f",
    "cauchy_det",
    "cauchy_det_factorized",
    "cusp_residual",
    "default_config",
    "det_complex",
    "energy",
    "enumerate_bipartitions",
    "enumerate_permutations",
    "gaudin_sum",
    "ik_det",
    "ik_det_factorized",
    "kernel",
    "kernel_f",
    "kernel_g",
    "kernel_h",
    "kernel_t",
    "lemma2_sides",
    "mepno_det",
    "mepno_integral_oracle",
    "mepno_route_a",
    "mepno_route_a_regrouped",
    "mepno_route_b",
    "mepno_route_c",
    "plane_wave_sum",
    "psi_fundamental",
    "psi_symmetric",
    "relative_error",
    "residue_probe",
    "richardson_extrapolate",
    "run_identity",
    "sample_configuration",
    "sample_stream",
    "set_inner",
    "set_product",
    "shifted_set",
]
