"""Gaussian momentum-space test functions and the twisted tensor product.

The test-function class is restricted to finite combinations of Gaussian
packets: their Fourier transforms are explicit Gaussians, entire in the energy
component, which is what the analytic continuation in the equilibrium boundary
checks requires.

A packet is

    f(x) = amplitude * exp(i pdot(q0, x - x0)) * exp(-|x - x0|^2 / (2 w^2)),

with |.|^2 the Euclidean square over all four components, and its transform
under f~(p) = (2 pi)^{-2} int f(x) exp(-i pdot(p, x)) dx is

    f~(p) = amplitude * w^4 * exp(-i pdot(p, x0)) * exp(-w^2/2 * sum_mu (p - q0)_mu^2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .minkowski import SkewMatrix, as_four, pdot, theta_contract


@dataclass(frozen=True, eq=False)
class GaussianPacket:
    """Gaussian wave packet; ``x0`` may be complex (continued time), ``q0`` is real."""

    x0: np.ndarray
    q0: np.ndarray
    width: float
    amplitude: complex = 1.0

    def __post_init__(self):
        x0 = as_four(self.x0)
        q0 = as_four(self.q0)
        if np.iscomplexobj(q0):
            raise ValueError("momentum center q0 must be real")
        if self.width <= 0:
            raise ValueError("width must be positive")
        object.__setattr__(self, "x0", x0.astype(complex))
        object.__setattr__(self, "q0", q0.astype(float))
        object.__setattr__(self, "amplitude", complex(self.amplitude))

    def fourier(self, p):
        """Closed-form Fourier value; entire in a complex p0 component.

        Vectorized: ``p`` may be an array of shape (..., 4).
        """
        p = np.asarray(p)
        d = p - self.q0
        quad = np.sum(d * d, axis=-1)
        w2 = self.width * self.width
        return (
            self.amplitude
            * w2
            * w2
            * np.exp(-1j * pdot(p, self.x0) - 0.5 * w2 * quad)
        )

    def conjugate(self) -> "GaussianPacket":
        """Packet of the complex-conjugate function."""
        return GaussianPacket(
            x0=np.conj(self.x0),
            q0=-self.q0,
            width=self.width,
            amplitude=np.conj(self.amplitude),
        )

    def translated(self, y) -> "GaussianPacket":
        """Packet shifted by y: multiplies the transform by exp(-i pdot(p, y))."""
        return GaussianPacket(
            x0=self.x0 + as_four(y),
            q0=self.q0,
            width=self.width,
            amplitude=self.amplitude,
        )

    def scaled(self, c: complex) -> "GaussianPacket":
        return GaussianPacket(self.x0, self.q0, self.width, self.amplitude * c)

    @property
    def is_real(self) -> bool:
        """True when the position-space function is real-valued."""
        return (
            self.amplitude.imag == 0.0
            and not self.q0.any()
            and not self.x0.imag.any()
        )

    def key(self):
        return (
            "packet",
            self.x0.tobytes(),
            self.q0.tobytes(),
            float(self.width),
            complex(self.amplitude),
        )


@dataclass(frozen=True, eq=False)
class TwistedProductFunction:
    """Multi-variable test function built from packets with twist phases.

    ``factors`` is an ordered tuple of (GaussianPacket, SkewMatrix).  The
    Fourier transform at (p_1, ..., p_n) is

        prod_l f_l~(p_l) * prod_{l<r} exp(i pdot(p_l, theta_l p_r)),

    where theta_l is the matrix attached to the *left* factor of each pair.
    Left attachment means a product function can only absorb further twisted
    factors when all its matrices already equal the product matrix; the
    constructors below enforce that.
    """

    factors: tuple

    def __post_init__(self):
        fs = tuple(self.factors)
        if not fs:
            raise ValueError("a product function needs at least one factor")
        for f, th in fs:
            if not isinstance(f, GaussianPacket) or not isinstance(th, SkewMatrix):
                raise TypeError("factors must be (GaussianPacket, SkewMatrix) pairs")
        object.__setattr__(self, "factors", fs)

    @staticmethod
    def of(packet: GaussianPacket, theta: SkewMatrix | None = None) -> "TwistedProductFunction":
        return TwistedProductFunction(((packet, theta or SkewMatrix.zero()),))

    @property
    def n_legs(self) -> int:
        return len(self.factors)

    def uniform_theta(self) -> SkewMatrix | None:
        """The common matrix of all factors, or None if they differ.

        The last factor's matrix never enters any phase, so it is ignored.
        """
        mats = [th for (_, th) in self.factors[:-1]]
        if not mats:
            return self.factors[-1][1]
        if all(m == mats[0] for m in mats[1:]):
            return mats[0]
        return None

    def fourier(self, momenta) -> complex:
        """Transform value at a list of n four-vectors."""
        ps = [np.asarray(p) for p in momenta]
        if len(ps) != self.n_legs:
            raise ValueError(f"expected {self.n_legs} momenta, got {len(ps)}")
        value = 1.0 + 0.0j
        for (f, _), p in zip(self.factors, ps):
            value *= f.fourier(p)
        phase = 0.0
        for l in range(len(ps)):
            th = self.factors[l][1]
            for r in range(l + 1, len(ps)):
                phase = phase + theta_contract(ps[l], th, ps[r])
        return value * np.exp(1j * phase)

    def conjugate(self) -> "TwistedProductFunction":
        """Adjoint content: conjugated packets in reversed order.

        Only defined for uniform matrices (reversal swaps left/right
        attachment, which is invisible exactly in the uniform case).
        """
        th = self.uniform_theta()
        if th is None:
            raise ValueError("conjugate of a mixed-matrix product function is not representable")
        return TwistedProductFunction(
            tuple((f.conjugate(), th) for (f, _) in reversed(self.factors))
        )

    def translated(self, y) -> "TwistedProductFunction":
        return TwistedProductFunction(
            tuple((f.translated(y), th) for (f, th) in self.factors)
        )

    def scaled(self, c: complex) -> "TwistedProductFunction":
        head = self.factors[0]
        return TwistedProductFunction(((head[0].scaled(c), head[1]),) + self.factors[1:])

    def key(self):
        return ("tpf",) + tuple((f.key(), th.m.tobytes()) for (f, th) in self.factors)


def twisted_tensor(
    fn: TwistedProductFunction,
    gm: TwistedProductFunction,
    theta: SkewMatrix,
) -> TwistedProductFunction:
    """Twisted tensor product: concatenation with cross phases exp(i pdot(p_l, theta q_r)).

    Every left factor must already carry ``theta`` (a single left factor is
    adopted), otherwise the left-attached phase bookkeeping cannot represent
    the result.  The right operand is taken as-is.
    """
    if fn.n_legs > 1:
        for _, th in fn.factors[:-1]:
            if th != theta:
                raise ValueError(
                    "left operand of the twisted tensor product must carry the product matrix"
                )
    left = tuple((f, theta) for (f, _) in fn.factors)
    return TwistedProductFunction(left + gm.factors)
