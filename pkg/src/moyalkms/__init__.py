"""Thermal n-point functions of deformed free scalar fields on Moyal Minkowski space."""

from .conventions import LEDGER_VERSION, ledger_hash
from .minkowski import (
    LorentzTransform,
    OnShellMomentum,
    SkewMatrix,
    ThetaOrbit,
    conjugate_theta,
    energy,
    mdot,
    orbit_samples,
    pdot,
    theta_contract,
)
from .packets import GaussianPacket, TwistedProductFunction, twisted_tensor
from .algebra import (
    FieldOp,
    FieldPolynomial,
    Monomial,
    SharpFieldOp,
    SpectralFnOp,
    TranslationOp,
    field,
    heisenberg,
    polynomial_from_doc,
    polynomial_to_doc,
    rieffel_product,
    sharp_field,
    star,
    translate,
    translation_unitary,
    unit,
    vacuum_projection_approximant,
    warp,
)
from .modes import ModeSet, cutoff_for
from .functionals import (
    Contraction,
    DiracMeasure,
    EvalResult,
    GaussianMeasure,
    QuadratureSettings,
    ThermalFunctional,
    ZeroMeasure,
    bose,
    covariant_functional,
    enumerate_contractions,
    fiber_state,
    omega0_kernel,
    omega_sigma_kernel,
    omega_smeared,
    omega_theta_kernel,
    pair_kernel,
    sigma_hat,
    zero_fiber_state,
)

__version__ = "0.1.0"
