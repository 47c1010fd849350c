"""Minkowski kinematics: four-vectors, the mass shell, Lorentz maps, skew matrices.

Conventions (see :mod:`moyalkms.conventions`): signature (-,+,+,+) for the
metric product ``mdot``; all unitary/twist phases use the dynamical pairing
``pdot(p, x) = p0 x0 - p.x``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

METRIC = np.diag([-1.0, 1.0, 1.0, 1.0])

#: absolute tolerance (relative to matrix scale) for structural matrix checks
_STRUCT_TOL = 1e-12


def as_four(v) -> np.ndarray:
    """Validate and return a four-vector as a length-4 ndarray.

    Complex time components are admitted (needed for analytic continuation);
    NaN/Inf are rejected.
    """
    a = np.asarray(v)
    if a.shape != (4,):
        raise ValueError(f"four-vector must have shape (4,), got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("four-vector components must be finite")
    return a


def four_vector(p0, k) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    if k.shape != (3,):
        raise ValueError("spatial part must have 3 components")
    dtype = complex if np.iscomplexobj(np.asarray(p0)) else float
    return as_four(np.concatenate(([p0], k)).astype(dtype))


def mdot(p, q):
    """Signature product -p0 q0 + p.q (bilinear, no conjugation)."""
    p = np.asarray(p)
    q = np.asarray(q)
    return -p[..., 0] * q[..., 0] + np.sum(p[..., 1:] * q[..., 1:], axis=-1)


def pdot(p, x):
    """Dynamical pairing p0 x0 - p.x, used in every phase factor."""
    p = np.asarray(p)
    x = np.asarray(x)
    return p[..., 0] * x[..., 0] - np.sum(p[..., 1:] * x[..., 1:], axis=-1)


def energy(k, m: float):
    """Single-particle energy sqrt(m^2 + |k|^2); requires m > 0."""
    if m <= 0:
        raise ValueError(f"mass must be positive, got {m}")
    k = np.asarray(k, dtype=float)
    return np.sqrt(m * m + np.sum(k * k, axis=-1))


@dataclass(frozen=True)
class OnShellMomentum:
    """Signed point on the mass shell: p = sign * (eps(k), k)."""

    sign: int
    k: tuple
    m: float

    def __post_init__(self):
        if self.sign not in (+1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.m <= 0:
            raise ValueError("mass must be positive")
        object.__setattr__(self, "k", tuple(float(c) for c in self.k))
        if len(self.k) != 3:
            raise ValueError("k must have 3 components")

    @property
    def vector(self) -> np.ndarray:
        karr = np.asarray(self.k)
        return self.sign * four_vector(energy(karr, self.m), karr)


def is_on_shell(p, m: float, rtol: float = 1e-9) -> bool:
    p = as_four(p)
    return abs(mdot(p, p) + m * m) <= rtol * m * m


@dataclass(frozen=True, eq=False)
class SkewMatrix:
    """Lorentz-skew deformation matrix theta, stored as the mixed tensor.

    (theta q)^mu = theta^mu_nu q^nu, with eta @ theta antisymmetric, so that
    the twist contraction vanishes on the diagonal: pdot(p, theta p) = 0.
    """

    m: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.m, dtype=float)
        if a.shape != (4, 4):
            raise ValueError("theta must be a 4x4 real matrix")
        lowered = METRIC @ a
        scale = max(np.abs(a).max(), 1.0)
        if np.abs(lowered + lowered.T).max() > _STRUCT_TOL * scale:
            raise ValueError("eta @ theta is not antisymmetric (theta not Lorentz-skew)")
        a = a.copy()
        a.flags.writeable = False
        object.__setattr__(self, "m", a)

    def __eq__(self, other):
        return isinstance(other, SkewMatrix) and np.array_equal(self.m, other.m)

    def __hash__(self):
        return hash(self.m.tobytes())

    @property
    def is_zero(self) -> bool:
        return not self.m.any()

    @staticmethod
    def zero() -> "SkewMatrix":
        return SkewMatrix(np.zeros((4, 4)))

    @staticmethod
    def reference(kappa: float) -> "SkewMatrix":
        """Electric-type reference matrix: only the (0,1)/(1,0) block, strength kappa."""
        a = np.zeros((4, 4))
        a[0, 1] = kappa
        a[1, 0] = -kappa
        return SkewMatrix(METRIC @ a)


def theta_contract(p, theta: SkewMatrix, q):
    """Twist contraction pdot(p, theta q); antisymmetric in (p, q)."""
    return pdot(p, theta.m @ np.asarray(q))


@dataclass(frozen=True, eq=False)
class LorentzTransform:
    """Proper orthochronous Lorentz matrix."""

    m: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.m, dtype=float)
        if a.shape != (4, 4):
            raise ValueError("Lorentz matrix must be 4x4")
        if np.abs(a.T @ METRIC @ a - METRIC).max() > 1e-12 * max(np.abs(a).max() ** 2, 1.0):
            raise ValueError("matrix does not preserve the metric")
        if np.linalg.det(a) < 0:
            raise ValueError("matrix is not proper (det != +1)")
        if a[0, 0] < 1.0 - 1e-12:
            raise ValueError("matrix is not orthochronous")
        a = a.copy()
        a.flags.writeable = False
        object.__setattr__(self, "m", a)

    @staticmethod
    def identity() -> "LorentzTransform":
        return LorentzTransform(np.eye(4))

    @staticmethod
    def boost(rapidity: float, axis: int = 1) -> "LorentzTransform":
        if axis not in (1, 2, 3):
            raise ValueError("boost axis must be 1, 2 or 3")
        a = np.eye(4)
        c, s = np.cosh(rapidity), np.sinh(rapidity)
        a[0, 0] = a[axis, axis] = c
        a[0, axis] = a[axis, 0] = s
        return LorentzTransform(a)

    @staticmethod
    def rotation(angle: float, axis: int = 3) -> "LorentzTransform":
        if axis not in (1, 2, 3):
            raise ValueError("rotation axis must be 1, 2 or 3")
        i, j = [x for x in (1, 2, 3) if x != axis]
        a = np.eye(4)
        c, s = np.cos(angle), np.sin(angle)
        a[i, i] = a[j, j] = c
        a[i, j] = -s
        a[j, i] = s
        return LorentzTransform(a)

    def __matmul__(self, other: "LorentzTransform") -> "LorentzTransform":
        return LorentzTransform(self.m @ other.m)

    @property
    def inverse_matrix(self) -> np.ndarray:
        # Lambda^{-1} = eta Lambda^T eta, exact for metric-preserving matrices.
        return METRIC @ self.m.T @ METRIC

    def apply(self, p):
        return self.m @ np.asarray(p)


def conjugate_theta(lam: LorentzTransform, theta: SkewMatrix) -> SkewMatrix:
    """Orbit action theta -> Lambda theta Lambda^{-1}; preserves Lorentz-skewness."""
    return SkewMatrix(lam.m @ theta.m @ lam.inverse_matrix)


@dataclass(frozen=True)
class ThetaOrbit:
    """Reference matrix plus a deterministic sample of its Lorentz orbit."""

    theta0: SkewMatrix
    samples: tuple = field(default_factory=tuple)  # of (LorentzTransform, SkewMatrix)

    def matrices(self) -> list:
        return [self.theta0] + [t for (_, t) in self.samples]


def orbit_samples(
    theta0: SkewMatrix,
    rapidities=(),
    angles=(),
    boost_axis: int = 1,
    rotation_axis: int = 3,
) -> ThetaOrbit:
    """Sample the orbit on the grid {boost(r)} x {rotation(a)}.

    Empty parameter lists contribute the identity, so with both lists empty the
    orbit contains only theta0.
    """
    raps = list(rapidities) or [0.0]
    angs = list(angles) or [0.0]
    samples = []
    for r in raps:
        for a in angs:
            lam = LorentzTransform.rotation(a, rotation_axis) @ LorentzTransform.boost(r, boost_axis)
            samples.append((lam, conjugate_theta(lam, theta0)))
    return ThetaOrbit(theta0=theta0, samples=tuple(samples))
