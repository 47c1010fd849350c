"""Sign and normalization conventions used throughout the package.

Every formula in this codebase is written against the following fixed choices.
Changing any one of them silently breaks cross-validation against the Fock
oracle, so they are collected here, versioned, and their hash is embedded in
every report.

1. Metric.  Signature (-,+,+,+), eta = diag(-1,1,1,1).  ``mdot(p, q)`` is the
   signature product -p0*q0 + p.q; an on-shell momentum satisfies
   mdot(p, p) = -m**2.

2. Phase pairing.  All plane waves, translation unitaries, twist phases and
   sigma transforms use the dynamical pairing ``pdot(p, x) = p0*x0 - p.x``
   (equal to -mdot).  This is the unique bilinear choice for which

       * U(x) = exp(i pdot(x, P)) gives the forward Heisenberg flow
         U((t,0,0,0)) = exp(i t H) on a positive-energy Fock space, and
       * the twisted commutation relation of deformed fields closes with the
         phase exp(i pdot(p, (theta + theta') p')).

   In particular ``theta_contract(p, theta, q) = pdot(p, theta q)``, which is
   antisymmetric in (p, q) and vanishes at q = p for every Lorentz-skew theta.

3. Deformation matrices.  theta is stored as the mixed tensor acting on
   contravariant momenta, (theta q)^mu = theta^mu_nu q^nu, with eta @ theta
   antisymmetric ("Lorentz-skew").  Lorentz conjugation acts as
   theta -> L theta L^{-1}.

4. Fourier transform.  f~(p) = (2 pi)^{-2} integral f(x) exp(-i pdot(p, x)) dx,
   so a smeared field reads phi(f) = integral phi~(p) f~(-p) d^4p and shifting
   a packet center by y multiplies f~(p) by exp(-i pdot(p, y)).

5. Field branches.  With conventions 2 and 4 the positive mass-shell branch of
   phi~(p) is a creation operator (it raises the energy:
   tau_t(phi~(p)) = exp(i t p0) phi~(p)).

6. Stripped thermal pair kernel.  With deltas stripped and the pair constraint
   q = -p, p on shell, the two-point kernel of the equilibrium functional at
   inverse temperature beta is

       K2(p) = -sgn(p0) / (1 - exp(beta * p0)) = -sgn(p0) * bose(beta, p0).

   The overall sign is fixed by exact agreement with the truncated-Fock Gibbs
   trace: K2(+shell) = 1/(e^{beta eps} - 1) (occupation number) and
   K2(-shell) = 1 + occupation.  Correspondingly the stripped commutator
   kernel is C2(p) = -sgn(p0).  K2 satisfies exp(beta p0) K2(p) = K2(-p),
   which is the two-point equilibrium boundary condition in kernel form.

7. Deformed fields.  phi~_theta(p) = phi~(p) U(-theta p).  A deformed
   multi-leg field carries a single trailing unitary,

       phi_theta(f_n) = integral f_n~(-p_1,...,-p_n)
                        phi~(p_1)...phi~(p_n) U(-theta (p_1+...+p_n)),

   which is the unique extension making the warped map multiplicative with
   respect to the twisted product.

8. Mixed-fiber kernels.  Expectation values of words of deformed fields times
   translations are reduced by moving every unitary to the right; with
   z = (accumulated translation) - sum_j theta_j p_j the even-point kernel is

       sigma_hat(z) * prod_{j<r} exp(i pdot(p_j, theta_j p_r))
         * sum_{pairings} prod_k C2(p_{l_k}) * bose(beta p0_{l_k}
                                                    - i pdot(p_{l_k}, z)).

   The two-point version carries an extra prefactor exp(i pdot(p, theta p'))
   in some orderings of the derivation; it equals 1 on the pairing surface
   p' = -p, so the general formula above is normative and both agree wherever
   the kernel is defined.

9. Sigma transforms.  sigma~(x) = integral exp(i pdot(q, x)) dsigma(q);
   sigma_hat equals sigma~ except that sigma_hat(0) = 1 exactly.

10. Discrete mass shell.  A mode k_i with energy eps_i carries the weight
    w_i = delta3k / (2 eps_i); smeared fields on a mode set use sqrt(w_i)
    per leg so the commutator reproduces the continuum pairing under the
    same quadrature.
"""

from __future__ import annotations

import hashlib

LEDGER_VERSION = "1"


def ledger_hash() -> str:
    """Hash of the convention ledger text; embedded in every report."""
    text = (__doc__ or "") + LEDGER_VERSION
    return hashlib.sha256(text.encode()).hexdigest()[:16]
