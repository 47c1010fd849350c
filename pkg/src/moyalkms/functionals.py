"""Candidate equilibrium functionals and their evaluation.

Three families are implemented, all at inverse temperature beta > 0:

* ``zero_fiber``  -- the equilibrium state of the undeformed field,
* ``fiber``       -- the unique equilibrium state of a fixed-theta fiber,
* ``covariant``   -- the sigma-parametrized family on the full algebra.

Both a kernel mode (deltas stripped, sharp on-shell momenta supplied by the
caller) and a smeared mode (packets integrated over the mass shell, either by
quadrature or on a discrete mode set) are provided.  All conventions,
including the oracle-fixed sign of the stripped pair kernel, are spelled out
in :mod:`moyalkms.conventions`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    FieldOp,
    FieldPolynomial,
    SharpFieldOp,
    SpectralFnOp,
    TranslationOp,
    expand_spectral,
)
from .errors import QuadratureError, SingularEvaluationError
from .minkowski import SkewMatrix, as_four, energy, is_on_shell, pdot
from .modes import ModeSet
from .packets import GaussianPacket
from .quadrature import gauss_grid_3d, pairwise_sum, sobol_gaussian

_POLE_TOL = 1e-12


# ---------------------------------------------------------------------------
# thermal factors and contractions


def bose(beta: float, z) -> complex:
    """Thermal weight 1 / (1 - e^{beta z}); complex arguments admitted."""
    if beta <= 0:
        raise ValueError("beta must be positive")
    return bose_w(beta * np.asarray(z))


def bose_w(w):
    """1 / (1 - e^w) with a pole guard."""
    denom = 1.0 - np.exp(np.asarray(w, dtype=complex))
    if np.abs(denom).min() < _POLE_TOL:
        raise SingularEvaluationError("thermal factor evaluated too close to a pole")
    return 1.0 / denom


def pair_kernel(beta: float, p) -> complex:
    """Stripped two-point kernel K2(p) = -sgn(p0) * bose(beta, p0) on shell."""
    p0 = np.real(np.asarray(p)[..., 0])
    return -np.sign(p0) * bose(beta, p0)


@dataclass(frozen=True)
class Contraction:
    """Perfect pairing of {0, ..., 2n-1} with l_1 < l_2 < ..., l_k < r_k."""

    pairs: tuple  # of (l, r)

    @property
    def left(self):
        return tuple(l for (l, _) in self.pairs)

    @property
    def right(self):
        return tuple(r for (_, r) in self.pairs)


def enumerate_contractions(order: int) -> list:
    """All (order-1)!! pairings of {0, ..., order-1}; order must be even."""
    if order < 0 or order % 2:
        raise ValueError(f"contractions need an even number of slots, got {order}")

    def rec(slots):
        if not slots:
            yield ()
            return
        first = slots[0]
        for j in range(1, len(slots)):
            rest = slots[1:j] + slots[j + 1 :]
            for tail in rec(rest):
                yield ((first, slots[j]),) + tail

    return [Contraction(p) for p in rec(tuple(range(order)))]


# ---------------------------------------------------------------------------
# sigma measures


@dataclass(frozen=True)
class ZeroMeasure:
    """The zero measure: sigma_hat vanishes away from x = 0."""


@dataclass(frozen=True)
class DiracMeasure:
    """Unit point mass at q in the closed forward cone."""

    q: np.ndarray

    def __post_init__(self):
        q = as_four(self.q).astype(float)
        if q[0] < np.linalg.norm(q[1:]) - 1e-12:
            raise ValueError("Dirac point must lie in the closed forward cone")
        q = q.copy()
        q.flags.writeable = False
        object.__setattr__(self, "q", q)


@dataclass(frozen=True)
class GaussianMeasure:
    """Gaussian density with mass <= 1, centered well inside the forward cone.

    The closed-form transform ignores the (required-to-be-negligible) mass
    outside the cone; the constructor enforces a 6-sigma separation of the
    mean from the cone boundary.
    """

    mean: np.ndarray
    covariance: np.ndarray
    mass: float = 1.0

    def __post_init__(self):
        mean = as_four(self.mean).astype(float)
        cov = np.asarray(self.covariance, dtype=float)
        if cov.shape != (4, 4) or np.abs(cov - cov.T).max() > 1e-12:
            raise ValueError("covariance must be a symmetric 4x4 matrix")
        eig = np.linalg.eigvalsh(cov)
        if eig.min() < 0:
            raise ValueError("covariance must be positive semidefinite")
        if not 0 < self.mass <= 1.0:
            raise ValueError("total mass must lie in (0, 1]")
        margin = mean[0] - np.linalg.norm(mean[1:])
        if margin < 6.0 * np.sqrt(max(eig.max(), 0.0)):
            raise ValueError("Gaussian measure must sit 6 sigma inside the forward cone")
        mean = mean.copy()
        mean.flags.writeable = False
        cov = cov.copy()
        cov.flags.writeable = False
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "covariance", cov)


SigmaMeasure = (ZeroMeasure, DiracMeasure, GaussianMeasure)


def _pairing_vector(x):
    """u(x) with pdot(q, x) = q . u(x) componentwise."""
    x = np.asarray(x)
    u = np.array(x, dtype=x.dtype)
    u[..., 1:] = -u[..., 1:]
    return u


def sigma_hat(sigma, x):
    """sigma_hat(x): the transform of sigma patched to 1 at the origin.

    Vectorized over a trailing (..., 4) axis for Dirac/Gaussian measures.
    """
    x = np.asarray(x)
    scalar = x.ndim == 1
    if isinstance(sigma, ZeroMeasure):
        if scalar:
            return 1.0 + 0.0j if not x.any() else 0.0 + 0.0j
        return np.where(np.any(x != 0, axis=-1), 0.0 + 0.0j, 1.0 + 0.0j)
    if isinstance(sigma, DiracMeasure):
        val = np.exp(1j * pdot(sigma.q, x))
    elif isinstance(sigma, GaussianMeasure):
        u = _pairing_vector(x)
        quad = np.einsum("...i,ij,...j->...", u, sigma.covariance, u)
        val = sigma.mass * np.exp(1j * pdot(sigma.mean, x) - 0.5 * quad)
    else:
        raise TypeError(f"unknown measure {sigma!r}")
    at_origin = ~np.any(x != 0, axis=-1)
    if scalar:
        return 1.0 + 0.0j if at_origin else complex(val)
    return np.where(at_origin, 1.0 + 0.0j, val)


# ---------------------------------------------------------------------------
# functionals


@dataclass(frozen=True)
class ThermalFunctional:
    """A candidate equilibrium functional: (beta, family)."""

    beta: float
    kind: str  # "zero_fiber" | "fiber" | "covariant"
    theta: SkewMatrix | None = None
    sigma: object | None = None

    def __post_init__(self):
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if self.kind == "fiber":
            if self.theta is None:
                raise ValueError("fiber functionals need a theta")
        elif self.kind == "zero_fiber":
            object.__setattr__(self, "theta", SkewMatrix.zero())
        elif self.kind == "covariant":
            if self.sigma is None or not isinstance(self.sigma, SigmaMeasure):
                raise ValueError("covariant functionals need a sigma measure")
        else:
            raise ValueError(f"unknown functional kind {self.kind!r}")


def zero_fiber_state(beta: float) -> ThermalFunctional:
    return ThermalFunctional(beta, "zero_fiber")


def fiber_state(beta: float, theta: SkewMatrix) -> ThermalFunctional:
    return ThermalFunctional(beta, "fiber", theta=theta)


def covariant_functional(beta: float, sigma) -> ThermalFunctional:
    return ThermalFunctional(beta, "covariant", sigma=sigma)


# ---------------------------------------------------------------------------
# kernel mode


def _validate_momenta(momenta, mass: float):
    ps = [as_four(p) for p in momenta]
    for p in ps:
        if np.iscomplexobj(p):
            raise ValueError("kernel momenta must be real")
        if not is_on_shell(p, mass):
            raise ValueError(f"momentum {p} is not on the mass-{mass} shell")
    return ps


def _matching_contractions(ps, tol_scale: float = 1e-9):
    """Contractions whose pairing constraints p_r = -p_l hold on this configuration."""
    n = len(ps)
    scale = max(float(np.abs(np.asarray(ps)).max()), 1.0)
    out = []
    for c in enumerate_contractions(n):
        if all(np.abs(ps[l] + ps[r]).max() <= tol_scale * scale for (l, r) in c.pairs):
            out.append(c)
    return out


def omega0_kernel(momenta, beta: float, mass: float) -> complex:
    """Stripped even-point kernel of the undeformed equilibrium state.

    The caller supplies a contraction-compatible configuration (per matching
    pairing p_r = -p_l, on shell); the value is the sum over matching pairings
    of products of stripped pair kernels.
    """
    ps = _validate_momenta(momenta, mass)
    if len(ps) % 2:
        return 0.0 + 0.0j
    if not ps:
        return 1.0 + 0.0j
    matches = _matching_contractions(ps)
    if not matches:
        raise ValueError("configuration is not paired for any contraction")
    total = 0.0 + 0.0j
    for c in matches:
        term = 1.0 + 0.0j
        for (l, _r) in c.pairs:
            term *= pair_kernel(beta, ps[l])
        total += term
    return total


def omega_sigma_kernel(fibers, momenta, sigma, beta: float, mass: float) -> complex:
    """Stripped even-point kernel of the covariant family.

    ``sigma=None`` evaluates the fiber formula (no sigma_hat factor); this is
    what ``omega_theta_kernel`` uses with a uniform fiber assignment.
    """
    ps = _validate_momenta(momenta, mass)
    if len(fibers) != len(ps):
        raise ValueError("need one fiber per momentum")
    if len(ps) % 2:
        return 0.0 + 0.0j
    if not ps:
        return 1.0 + 0.0j if sigma is None else complex(sigma_hat(sigma, np.zeros(4)))
    matches = _matching_contractions(ps)
    if not matches:
        raise ValueError("configuration is not paired for any contraction")

    z = -sum(th.m @ p for th, p in zip(fibers, ps))
    prefactor = 1.0 + 0.0j
    if sigma is not None:
        prefactor = complex(sigma_hat(sigma, z))
        if prefactor == 0.0:
            return 0.0 + 0.0j
    phase = 0.0
    for l in range(len(ps)):
        for r in range(l + 1, len(ps)):
            phase += pdot(ps[l], fibers[l].m @ ps[r])
    prefactor *= np.exp(1j * phase)

    total = 0.0 + 0.0j
    for c in matches:
        term = 1.0 + 0.0j
        for (l, _r) in c.pairs:
            w = beta * ps[l][0] - 1j * pdot(ps[l], z)
            term *= -np.sign(ps[l][0]) * bose_w(w)
        total += term
    return prefactor * total


def omega_theta_kernel(theta: SkewMatrix, momenta, beta: float, mass: float) -> complex:
    """Fixed-fiber even-point kernel, via the general covariant machinery."""
    return omega_sigma_kernel([theta] * len(momenta), momenta, None, beta, mass)


# ---------------------------------------------------------------------------
# smeared mode


@dataclass(frozen=True)
class QuadratureSettings:
    """Adaptive tensor Gauss-Hermite with a quasi-random fallback above 2 pairs."""

    base_nodes: int = 24
    base_nodes_coupled: int = 14
    step: int = 6
    max_nodes: int = 60
    target: float = 1e-8
    mc_samples: int = 1 << 15
    mc_target: float = 1e-3
    seed: int = 0
    chunk: int = 1 << 16
    strict: bool = False


@dataclass
class _Leg:
    packet: GaussianPacket
    fiber: SkewMatrix
    within: SkewMatrix
    gen: int


@dataclass
class MonomialReport:
    coeff: complex
    n_legs: int
    n_terms: int
    value: complex
    error: float
    note: str = ""


@dataclass
class EvalResult:
    value: complex
    error: float
    monomials: list = field(default_factory=list)


def _normal_form(word):
    """Move every translation to the right: legs with shifted packets + total shift."""
    y = np.zeros(4)
    legs = []
    gen_id = 0
    for g in word:
        if isinstance(g, TranslationOp):
            y = y + g.x
        elif isinstance(g, FieldOp):
            for (f, th) in g.content.factors:
                legs.append(
                    _Leg(packet=f.translated(y) if y.any() else f, fiber=g.theta, within=th, gen=gen_id)
                )
            gen_id += 1
        elif isinstance(g, SharpFieldOp):
            raise ValueError("sharp fields are kernel-mode only; smear them first")
        else:
            raise TypeError(f"unexpected generator {g!r}")
    return legs, y


def _assignment_values(legs, pairs, signs, functional, y, dynamic_z, k_arr, mass):
    """Integrand on explicit pair-momentum assignments, excluding measure weights.

    k_arr: (Q, P, 3) spatial momenta, one 3-vector per pair.  Returns (Q,).
    """
    q_count, n_pairs = k_arr.shape[0], k_arr.shape[1]
    n_legs = 2 * n_pairs
    eps = energy(k_arr, mass)  # (Q, P)
    p = np.zeros((q_count, n_legs, 4))
    for pk, (l, r) in enumerate(pairs):
        p[:, l, 0] = signs[pk] * eps[:, pk]
        p[:, l, 1:] = signs[pk] * k_arr[:, pk, :]
        p[:, r, :] = -p[:, l, :]

    vals = np.ones(q_count, dtype=complex)
    for j, leg in enumerate(legs):
        vals = vals * leg.packet.fourier(-p[:, j, :])

    phase = np.zeros(q_count)
    for l in range(n_legs):
        for r in range(l + 1, n_legs):
            mat = legs[l].within if legs[l].gen == legs[r].gen else legs[l].fiber
            if mat.is_zero:
                continue
            phase = phase + pdot(p[:, l, :], p[:, r, :] @ mat.m.T)
    if phase.any():
        vals = vals * np.exp(1j * phase)

    z = None
    if dynamic_z:
        z = np.broadcast_to(y, (q_count, 4)).copy()
        for j, leg in enumerate(legs):
            if not leg.fiber.is_zero:
                z -= p[:, j, :] @ leg.fiber.m.T
        vals = vals * sigma_hat(functional.sigma, z)

    for pk, (l, _r) in enumerate(pairs):
        w = functional.beta * p[:, l, 0].astype(complex)
        if z is not None:
            w = w - 1j * pdot(p[:, l, :], z)
        vals = vals * (-float(signs[pk])) * bose_w(w)
    return vals


def _product_sum(legs, pairs, signs, functional, y, dynamic_z, grids, mass, chunk):
    """Sum the integrand over the tensor product of per-pair grids, chunked."""
    sizes = [len(w) for (_, w) in grids]
    total = int(np.prod(sizes))
    acc = []
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total))
        sub = np.unravel_index(idx, sizes)
        k_arr = np.stack([grids[pk][0][sub[pk]] for pk in range(len(grids))], axis=1)
        w_arr = np.ones(len(idx))
        for pk in range(len(grids)):
            w_arr = w_arr * grids[pk][1][sub[pk]]
        vals = _assignment_values(legs, pairs, signs, functional, y, dynamic_z, k_arr, mass)
        acc.append(np.sum(w_arr * vals))
    return pairwise_sum(np.asarray(acc, dtype=complex))


_PAIRING_SIGNS = np.diag([1.0, -1.0, -1.0, -1.0])  # pdot(x, y) = x @ S @ y


def _pair_vector(legs, pair, sign, beta, grid, mass):
    """Per-pair factor of a decoupled contraction term on one grid.

    Returns (p_l (Q,4), v (Q,)) where v bundles measure weight, the two leg
    values, the stripped commutator sign and the plain thermal factor.
    """
    pts, wts = grid
    eps = energy(pts, mass)
    p_l = np.empty((len(wts), 4))
    p_l[:, 0] = sign * eps
    p_l[:, 1:] = sign * pts
    l, r = pair
    v = (
        wts
        * legs[l].packet.fourier(-p_l)
        * legs[r].packet.fourier(p_l)
        * (-float(sign))
        * bose_w(beta * p_l[:, 0].astype(complex))
    )
    return p_l, v


def _cross_matrix(legs, pair_a, pair_b):
    """W with cross-pair twist phase exponent p_A^T W p_B (p_A the left-leg momentum)."""
    w = np.zeros((4, 4))
    for ja, sa in ((pair_a[0], +1.0), (pair_a[1], -1.0)):
        for jb, sb in ((pair_b[0], +1.0), (pair_b[1], -1.0)):
            first, second = (ja, jb) if ja < jb else (jb, ja)
            mat = legs[first].within if legs[first].gen == legs[second].gen else legs[first].fiber
            if mat.is_zero:
                continue
            sm = _PAIRING_SIGNS @ mat.m
            w += sa * sb * (sm if ja < jb else sm.T)
    return w


def _coupled_pair_sum(legs, pairs, signs, beta, grids, mass, chunk):
    """Two decoupled-measure pairs coupled only by a bilinear twist phase."""
    p_a, v_a = _pair_vector(legs, pairs[0], signs[0], beta, grids[0], mass)
    p_b, v_b = _pair_vector(legs, pairs[1], signs[1], beta, grids[1], mass)
    w = _cross_matrix(legs, pairs[0], pairs[1])
    if not w.any():
        return complex(np.sum(v_a) * np.sum(v_b))
    rows = max(chunk // max(len(v_b), 1), 1)
    lhs = p_a @ w
    acc = []
    for start in range(0, len(v_a), rows):
        stop = min(start + rows, len(v_a))
        block = np.exp(1j * (lhs[start:stop] @ p_b.T)) @ v_b
        acc.append(np.dot(v_a[start:stop], block))
    return complex(pairwise_sum(np.asarray(acc, dtype=complex)))


def _contraction_sum(legs, pairs, signs, functional, y, dynamic_z, grids, mass, chunk):
    if len(pairs) == 2 and not dynamic_z:
        return _coupled_pair_sum(legs, pairs, signs, functional.beta, grids, mass, chunk)
    return _product_sum(legs, pairs, signs, functional, y, dynamic_z, grids, mass, chunk)


def _pair_grid(legs, pair, sign, mass, n_nodes):
    """Gauss-Hermite grid adapted to the two packets of a contracted pair."""
    l, r = pair
    wl, wr = legs[l].packet.width, legs[r].packet.width
    w2 = wl * wl + wr * wr
    center = sign * (wr * wr * legs[r].packet.q0[1:] - wl * wl * legs[l].packet.q0[1:]) / w2
    scale = 1.0 / np.sqrt(w2)
    pts, wts = gauss_grid_3d(center, scale, n_nodes)
    wts = wts / (2.0 * energy(pts, mass))  # mass-shell measure
    return pts, wts


class _QuadEngine:
    def __init__(self, settings: QuadratureSettings, mass: float):
        self.s = settings
        self.mass = mass

    def contraction_value(self, legs, pairs, functional, y, dynamic_z):
        n_pairs = len(pairs)
        if n_pairs > 2:
            return self._mc(legs, pairs, functional, y, dynamic_z)
        base = self.s.base_nodes if n_pairs == 1 else self.s.base_nodes_coupled
        return self._gh_adaptive(legs, pairs, functional, y, dynamic_z, base)

    def _gh_value(self, legs, pairs, functional, y, dynamic_z, n_nodes):
        total = 0.0 + 0.0j
        for signs in itertools.product((+1, -1), repeat=len(pairs)):
            grids = [
                self._grid(legs, pair, s, n_nodes) for pair, s in zip(pairs, signs)
            ]
            total += _contraction_sum(
                legs, pairs, signs, functional, y, dynamic_z, grids, self.mass, self.s.chunk
            )
        return total

    def _grid(self, legs, pair, sign, n_nodes):
        return _pair_grid(legs, pair, sign, self.mass, n_nodes)

    def _gh_adaptive(self, legs, pairs, functional, y, dynamic_z, base):
        n = base
        prev = self._gh_value(legs, pairs, functional, y, dynamic_z, n)
        while True:
            n_next = min(n + self.s.step, self.s.max_nodes)
            cur = self._gh_value(legs, pairs, functional, y, dynamic_z, n_next)
            err = abs(cur - prev)
            if err <= self.s.target * max(abs(cur), 1e-30) or n_next >= self.s.max_nodes:
                return cur, err
            n, prev = n_next, cur

    def _mc(self, legs, pairs, functional, y, dynamic_z):
        centers, scales = [], []
        for pair in pairs:
            l, r = pair
            wl, wr = legs[l].packet.width, legs[r].packet.width
            w2 = wl * wl + wr * wr
            centers.append((wr * wr * legs[r].packet.q0[1:] - wl * wl * legs[l].packet.q0[1:]) / w2)
            scales.append(1.0 / np.sqrt(w2))
        total = 0.0 + 0.0j
        err2 = 0.0
        for signs in itertools.product((+1, -1), repeat=len(pairs)):
            sc = [s * c for s, c in zip(signs, centers)]
            pts, wts = sobol_gaussian(sc, scales, self.s.mc_samples, self.s.seed)
            wts = wts / np.prod(2.0 * energy(pts, self.mass), axis=1)
            vals = _assignment_values(
                legs, pairs, signs, functional, y, dynamic_z, pts, self.mass
            )
            contrib = wts * vals
            n_batch = 8
            size = len(contrib) // n_batch
            batches = np.array(
                [pairwise_sum(contrib[i * size : (i + 1) * size]) for i in range(n_batch)]
            )
            total += pairwise_sum(batches)
            err2 += np.var(batches * n_batch) / n_batch
        return total, float(np.sqrt(err2))


class _DiscreteEngine:
    """Exact mode-sum evaluation on a shared discrete mass shell."""

    def __init__(self, ms: ModeSet, chunk: int = 1 << 16):
        self.ms = ms
        self.chunk = chunk

    def contraction_value(self, legs, pairs, functional, y, dynamic_z):
        grid = (self.ms.momenta, self.ms.weights)
        total = 0.0 + 0.0j
        for signs in itertools.product((+1, -1), repeat=len(pairs)):
            total += _contraction_sum(
                legs,
                pairs,
                signs,
                functional,
                y,
                dynamic_z,
                [grid] * len(pairs),
                self.ms.mass,
                self.chunk,
            )
        return total, 0.0


def _word_guard(word, functional):
    if functional.kind != "covariant":
        for g in word:
            if isinstance(g, (TranslationOp, SpectralFnOp)):
                raise ValueError(
                    "translation/spectral generators are only admitted by covariant functionals"
                )
            if isinstance(g, FieldOp) and g.theta != functional.theta:
                raise ValueError("all fields must live on the functional's fiber")


def _surviving(contractions, legs, zero_sigma: bool):
    if not zero_sigma:
        return contractions
    return [
        c
        for c in contractions
        if all(legs[l].fiber == legs[r].fiber for (l, r) in c.pairs)
    ]


def omega_smeared(
    poly: FieldPolynomial,
    functional: ThermalFunctional,
    *,
    modes: ModeSet | None = None,
    quadrature: QuadratureSettings | None = None,
    mass: float | None = None,
) -> EvalResult:
    """Smeared-mode expectation of a field polynomial.

    Exactly one integration backend applies: a discrete mode set (exact sums)
    or continuum quadrature (needs ``mass``).  Sharp fields are rejected.
    """
    if modes is None and mass is None:
        raise ValueError("continuum evaluation needs the mass parameter")
    engine = (
        _DiscreteEngine(modes)
        if modes is not None
        else _QuadEngine(quadrature or QuadratureSettings(), mass)
    )
    expanded = expand_spectral(poly)
    zero_sigma = functional.kind == "covariant" and isinstance(functional.sigma, ZeroMeasure)
    dynamic_z = functional.kind == "covariant" and not zero_sigma

    total = 0.0 + 0.0j
    total_err = 0.0
    reports = []
    for t in expanded.terms:
        _word_guard(t.word, functional)
        legs, y = _normal_form(t.word)
        if len(legs) % 2:
            reports.append(MonomialReport(t.coeff, len(legs), 0, 0.0, 0.0, "odd"))
            continue
        if not legs:
            val = (
                complex(sigma_hat(functional.sigma, y))
                if functional.kind == "covariant"
                else 1.0 + 0.0j
            )
            total += t.coeff * val
            reports.append(MonomialReport(t.coeff, 0, 1, val, 0.0, "scalar"))
            continue
        if zero_sigma and y.any():
            reports.append(
                MonomialReport(t.coeff, len(legs), 0, 0.0, 0.0, "sigma_hat vanishes")
            )
            continue
        contractions = _surviving(enumerate_contractions(len(legs)), legs, zero_sigma)
        value = 0.0 + 0.0j
        err = 0.0
        pair_list = [c.pairs for c in contractions]
        for pairs in pair_list:
            v, e = engine.contraction_value(legs, pairs, functional, y, dynamic_z)
            value += v
            err += e
        total += t.coeff * value
        total_err += abs(t.coeff) * err
        reports.append(MonomialReport(t.coeff, len(legs), len(contractions), value, err))

    result = EvalResult(total, total_err, reports)
    if quadrature is not None and quadrature.strict and total_err > quadrature.target * max(
        abs(total), 1e-30
    ):
        raise QuadratureError(
            f"integration error {total_err:.3e} above target", value=result, achieved=total_err
        )
    return result
