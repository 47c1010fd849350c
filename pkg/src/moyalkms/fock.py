"""Truncated Fock-space oracle: explicit operator matrices and Gibbs traces.

Everything here is brute force on a finite mode set with an occupation cutoff:
ladder matrices, diagonal momentum operators, translation unitaries, deformed
field matrices, Gibbs and vacuum expectations, and the doubled-space thermal
representation.  Identities hold exactly below the cutoff; truncation defects
are confined to top occupation levels and bounded by e^{-(N+1) beta eps_min}.
"""

from __future__ import annotations

import itertools

import numpy as np

from .algebra import (
    FieldOp,
    FieldPolynomial,
    Monomial,
    SharpFieldOp,
    SpectralFnOp,
    TranslationOp,
)
from .errors import DimensionBoundError
from .minkowski import SkewMatrix, pdot, theta_contract
from .modes import ModeSet
from .packets import TwistedProductFunction


# ---------------------------------------------------------------------------
# basis and elementary operators


def occupations(ms: ModeSet) -> np.ndarray:
    """(dim, M) occupation numbers; state 0 is the vacuum."""
    levels = ms.cutoff + 1
    occ = np.zeros((ms.dim, ms.n_modes), dtype=int)
    idx = np.arange(ms.dim)
    for i in range(ms.n_modes - 1, -1, -1):
        occ[:, i] = idx % levels
        idx //= levels
    return occ


def ladder(ms: ModeSet, i: int):
    """Truncated (a_i, a_i_dagger) pair as dense complex matrices."""
    if not 0 <= i < ms.n_modes:
        raise ValueError(f"mode index {i} out of range")
    occ = occupations(ms)
    levels = ms.cutoff + 1
    stride = levels ** (ms.n_modes - 1 - i)
    dim = ms.dim
    a = np.zeros((dim, dim), dtype=complex)
    rows = np.arange(dim)[occ[:, i] > 0]
    # a |n> = sqrt(n) |n-1>: row n-1, column n
    a[rows - stride, rows] = np.sqrt(occ[rows, i])
    return a, a.conj().T


def momentum_diagonal(ms: ModeSet) -> np.ndarray:
    """(dim, 4) total four-momentum of each basis state."""
    occ = occupations(ms)
    p_modes = np.column_stack([ms.energies, ms.momenta])  # (M, 4)
    return occ @ p_modes


def translation(ms: ModeSet, x) -> np.ndarray:
    """Diagonal unitary U(x) = exp(i pdot(x, P))."""
    x = np.asarray(x)
    return np.diag(np.exp(1j * pdot(momentum_diagonal(ms), x)))


def gibbs_weights(ms: ModeSet, beta: float) -> np.ndarray:
    if beta <= 0:
        raise ValueError("beta must be positive")
    e = momentum_diagonal(ms)[:, 0]
    w = np.exp(-beta * (e - e.min()))
    return w / w.sum()


def gibbs_expect(ms: ModeSet, beta: float, matrix: np.ndarray) -> complex:
    """Tr(rho_beta F) on the truncated space."""
    return complex(np.dot(gibbs_weights(ms, beta), np.diagonal(matrix)))


def vacuum_expect(matrix: np.ndarray) -> complex:
    return complex(matrix[0, 0])


def sub_cutoff_norm(ms: ModeSet, matrix: np.ndarray, margin: int = 1) -> float:
    """Spectral norm of a matrix compressed to states with n_i <= N - margin."""
    occ = occupations(ms)
    keep = np.all(occ <= ms.cutoff - margin, axis=1)
    block = matrix[np.ix_(keep, keep)]
    return float(np.linalg.norm(block, 2)) if block.size else 0.0


# ---------------------------------------------------------------------------
# field matrices


class _Workspace:
    """Per-mode-set cache of ladder matrices and the momentum diagonal."""

    def __init__(self, ms: ModeSet):
        self.ms = ms
        self.p_diag = momentum_diagonal(ms)
        self.ladders = [ladder(ms, i) for i in range(ms.n_modes)]

    def u_matrix_diag(self, x) -> np.ndarray:
        return np.exp(1j * pdot(self.p_diag, np.asarray(x)))

    def leg_matrix(self, i: int, sign: int) -> np.ndarray:
        a, adag = self.ladders[i]
        return adag if sign > 0 else a


def sharp_field_matrix(ws: _Workspace, theta: SkewMatrix, sign: int, i: int) -> np.ndarray:
    """phi~_theta at the sharp momentum sign * khat_i: bare ladder times U(-theta p)."""
    p = ws.ms.momentum_vector(i, sign)
    return ws.leg_matrix(i, sign) * ws.u_matrix_diag(-theta.m @ p)[None, :]


def field_matrix(ws: _Workspace, theta: SkewMatrix, content: TwistedProductFunction) -> np.ndarray:
    """Deformed smeared field on the mode set.

    Packet legs are sampled with sqrt(w_i) weights; the whole word carries a
    single trailing U(-theta sum p) and the content's internal twist phases.
    """
    ms = ws.ms
    sqw = np.sqrt(ms.weights)
    n = content.n_legs
    dim = ms.dim
    out = np.zeros((dim, dim), dtype=complex)
    legs = list(content.factors)
    for assign in itertools.product(range(ms.n_modes), (+1, -1), repeat=n):
        modes = assign[0::2]
        signs = assign[1::2]
        ps = [ms.momentum_vector(i, s) for i, s in zip(modes, signs)]
        coeff = 1.0 + 0.0j
        for (f, _), i, p in zip(legs, modes, ps):
            coeff *= sqw[i] * f.fourier(-p)
        if coeff == 0.0:
            continue
        phase = 0.0
        for l in range(n):
            for r in range(l + 1, n):
                phase += theta_contract(ps[l], legs[l][1], ps[r])
        coeff *= np.exp(1j * phase)
        mat = ws.leg_matrix(modes[0], signs[0]).copy()
        for i, s in zip(modes[1:], signs[1:]):
            mat = mat @ ws.leg_matrix(i, s)
        if not theta.is_zero:
            mat = mat * ws.u_matrix_diag(-theta.m @ sum(ps))[None, :]
        out += coeff * mat
    return out


def generator_matrix(ws: _Workspace, g) -> np.ndarray:
    if isinstance(g, FieldOp):
        return field_matrix(ws, g.theta, g.content)
    if isinstance(g, SharpFieldOp):
        k = np.asarray(g.p.k)
        hits = [i for i in range(ws.ms.n_modes) if np.allclose(ws.ms.momenta[i], k, atol=1e-12)]
        if not hits:
            raise ValueError(f"sharp momentum {g.p.k} is not in the mode set")
        if abs(g.p.m - ws.ms.mass) > 1e-12:
            raise ValueError("sharp-field mass differs from the mode-set mass")
        return sharp_field_matrix(ws, g.theta, g.p.sign, hits[0])
    if isinstance(g, TranslationOp):
        return np.diag(ws.u_matrix_diag(g.x))
    if isinstance(g, SpectralFnOp):
        diag = sum(c * ws.u_matrix_diag(np.asarray(x)) for (c, x) in g.terms)
        return np.diag(diag)
    raise TypeError(f"unknown generator {g!r}")


def polynomial_matrix(ms: ModeSet, poly: FieldPolynomial) -> np.ndarray:
    """Compile a field polynomial to its dense matrix."""
    ws = _Workspace(ms)
    cache: dict = {}
    out = np.zeros((ms.dim, ms.dim), dtype=complex)
    for t in poly.terms:
        mat = np.eye(ms.dim, dtype=complex)
        for g in t.word:
            key = g.key()
            if key not in cache:
                cache[key] = generator_matrix(ws, g)
            mat = mat @ cache[key]
        out += t.coeff * mat
    return out


def gibbs_polynomial_expect(ms: ModeSet, beta: float, poly: FieldPolynomial) -> complex:
    return gibbs_expect(ms, beta, polynomial_matrix(ms, poly))


# ---------------------------------------------------------------------------
# Araki-Woods doubled representation


class ArakiWoods:
    """Doubled-space thermal representation of the zero fiber on a mode set.

    The representation space is the tensor product of the truncated Fock space
    with its conjugate; the thermal vector is the doubled vacuum; fields act
    with the (1+rho)^(1/2) / rho^(1/2) multipliers, rho = 1/(e^{beta eps}-1).
    """

    def __init__(self, ms: ModeSet, beta: float):
        if (ms.cutoff + 1) ** (2 * ms.n_modes) > ms.max_dim:
            raise DimensionBoundError(
                "doubled space exceeds the dimension bound; lower the cutoff"
            )
        if beta <= 0:
            raise ValueError("beta must be positive")
        self.ms = ms
        self.beta = beta
        self.rho = 1.0 / (np.exp(beta * ms.energies) - 1.0)
        self.dim = ms.dim * ms.dim
        ws = _Workspace(ms)
        eye = np.eye(ms.dim)
        self._a = [np.kron(ws.ladders[i][0], eye) for i in range(ms.n_modes)]
        self._b = [np.kron(eye, ws.ladders[i][0]) for i in range(ms.n_modes)]
        self._p_diag = momentum_diagonal(ms)

    def represent_field(self, content: TwistedProductFunction) -> np.ndarray:
        if content.n_legs != 1:
            raise ValueError("doubled-space fields are built leg by leg")
        f = content.factors[0][0]
        ms = self.ms
        sqw = np.sqrt(ms.weights)
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for i in range(ms.n_modes):
            khat = ms.momentum_vector(i, +1)
            fp, fm = f.fourier(khat), f.fourier(-khat)
            a, b = self._a[i], self._b[i]
            up = np.sqrt(1.0 + self.rho[i])
            dn = np.sqrt(self.rho[i])
            out += sqw[i] * (
                up * (fm * a.conj().T + fp * a) + dn * (fp * b.conj().T + fm * b)
            )
        return out

    def represent_translation(self, x) -> np.ndarray:
        ph = np.exp(1j * pdot(self._p_diag, np.asarray(x)))
        return np.diag(np.kron(ph, ph.conj()))

    def represent(self, poly: FieldPolynomial) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for t in poly.terms:
            mat = np.eye(self.dim, dtype=complex)
            for g in t.word:
                if isinstance(g, FieldOp):
                    if not g.theta.is_zero:
                        raise ValueError("the doubled representation is for the zero fiber")
                    if g.content.n_legs == 1:
                        mat = mat @ self.represent_field(g.content)
                    else:
                        th = g.content.uniform_theta()
                        if th is None or not th.is_zero:
                            raise ValueError("multi-leg content must be a plain product here")
                        for f, _ in g.content.factors:
                            mat = mat @ self.represent_field(TwistedProductFunction.of(f))
                elif isinstance(g, TranslationOp):
                    mat = mat @ self.represent_translation(g.x)
                elif isinstance(g, SpectralFnOp):
                    acc = np.zeros((self.dim, self.dim), dtype=complex)
                    for c, x in g.terms:
                        acc += c * self.represent_translation(np.asarray(x))
                    mat = mat @ acc
                else:
                    raise ValueError("sharp fields are not supported in the doubled space")
            out += t.coeff * mat
        return out

    def expect(self, poly: FieldPolynomial) -> complex:
        """Expectation in the doubled vacuum vector."""
        return complex(self.represent(poly)[0, 0])


def araki_woods_expect(ms: ModeSet, beta: float, poly: FieldPolynomial) -> complex:
    return ArakiWoods(ms, beta).expect(poly)


# ---------------------------------------------------------------------------
# packaged oracle identity checks


def twisted_ccr_defect(
    ms: ModeSet, theta: SkewMatrix, theta2: SkewMatrix, sign: int, i: int, sign2: int, j: int
) -> float:
    """Sub-cutoff norm of the twisted commutation-relation defect.

    phi~_a(p) phi~_b(p') - e^{i pdot(p, (a+b) p')} phi~_b(p') phi~_a(p)
    must equal C2 * e^{i pdot(p, (a-b) P)}, with C2 the stripped commutator
    (-sign for a coinciding opposite pair, zero otherwise).
    """
    ws = _Workspace(ms)
    p = ms.momentum_vector(i, sign)
    p2 = ms.momentum_vector(j, sign2)
    fa = sharp_field_matrix(ws, theta, sign, i)
    fb = sharp_field_matrix(ws, theta2, sign2, j)
    twist = np.exp(1j * pdot(p, (theta.m + theta2.m) @ p2))
    lhs = fa @ fb - twist * fb @ fa
    if i == j and sign == -sign2:
        c2 = -float(sign)
        rhs = c2 * np.diag(ws.u_matrix_diag((theta2.m - theta.m) @ p))
    else:
        rhs = np.zeros_like(lhs)
    return sub_cutoff_norm(ms, lhs - rhs, margin=1)


def warp_identities_defect(
    ms: ModeSet,
    theta: SkewMatrix,
    f0: FieldPolynomial,
    g0: FieldPolynomial,
    beta: float,
    x=(0.7, 0.3, -0.4, 0.2),
):
    """Defects of the warped-map identities on the oracle.

    Returns a dict with the homomorphism, unit, star, translation-equivariance
    and trace-invariance defects.
    """
    from .algebra import rieffel_product, star, translate, unit, warp

    prod_matrix = polynomial_matrix(ms, warp(theta, rieffel_product(f0, g0, theta)))
    split_matrix = polynomial_matrix(ms, warp(theta, f0)) @ polynomial_matrix(ms, warp(theta, g0))
    hom = sub_cutoff_norm(ms, prod_matrix - split_matrix, margin=2)

    unit_defect = float(
        np.abs(polynomial_matrix(ms, warp(theta, unit())) - np.eye(ms.dim)).max()
    )

    star_defect = sub_cutoff_norm(
        ms,
        polynomial_matrix(ms, warp(theta, star(f0)))
        - polynomial_matrix(ms, warp(theta, f0)).conj().T,
        margin=1,
    )

    x = np.asarray(x, dtype=float)
    u = translation(ms, x)
    equiv = sub_cutoff_norm(
        ms,
        polynomial_matrix(ms, translate(warp(theta, f0), x))
        - u @ polynomial_matrix(ms, warp(theta, f0)) @ u.conj().T,
        margin=1,
    )

    trace_lhs = gibbs_polynomial_expect(ms, beta, rieffel_product(f0, g0, theta))
    trace_rhs = gibbs_polynomial_expect(ms, beta, f0 * g0)
    trace = abs(trace_lhs - trace_rhs)

    vac = float(
        np.abs(
            (polynomial_matrix(ms, warp(theta, f0)) - polynomial_matrix(ms, f0))[:, 0]
        ).max()
    )

    return {
        "homomorphism": hom,
        "unit": unit_defect,
        "star": star_defect,
        "translation_equivariance": equiv,
        "trace_invariance": trace,
        "vacuum_cyclicity": vac,
    }
