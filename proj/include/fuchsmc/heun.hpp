#pragma once

#include <array>

#include "fuchsmc/elliptic.hpp"
#include "fuchsmc/fuchsian.hpp"
#include "fuchsmc/transport.hpp"

namespace fuchsmc {

// gamma/delta/epsilon/alpha/beta/q with the accessory normalization
// gamma + delta + epsilon = alpha + beta + 1.
struct HeunParams {
  cplx gamma, delta, epsilon, alpha, beta, q;
  cplx t;

  cplx fuchs_defect() const { return gamma + delta + epsilon - alpha - beta - 1.0; }
};

struct EllipticHeunParams {
  cplx l0, l1, l2, l3;  // coupling constants (integers or half-integers)
  cplx E;               // accessory (spectral) parameter
  cplx t;               // carried for the round trip
};

SecondOrderODE heun_ode(const HeunParams& p);

// Coupling dictionary: l0 = alpha - beta - 1/2, l1 = -gamma + 1/2,
// l2 = -delta + 1/2, l3 = -epsilon + 1/2, and the affine E <-> q relation
// with slope -4(e2 - e1).
EllipticHeunParams heun_to_elliptic(const HeunParams& p, const PeriodLattice& L);
HeunParams elliptic_to_heun(const EllipticHeunParams& ep, const PeriodLattice& L);

// gamma = delta = epsilon = 1, alpha = 3/2, beta = 1/2,
// q = -(3 e1 - kt^2)/(4 (e2 - e1)).
HeunParams special_heun_kappa_tilde(cplx kappa_tilde, const PeriodLattice& L);

// e[i] = exp(2 w_i (kappa + zeta(alpha)) - 2 eta_i alpha); the alpha -> 0
// limit (kappa = -zeta(alpha) + kt) degenerates to exp(2 w_i kt).
std::array<cplx, 4> e_factors(cplx alpha, cplx kappa, const PeriodLattice& L);
std::array<cplx, 4> e_factors_kt(cplx kappa_tilde, const PeriodLattice& L);

// Closed-form monodromy on the (f0, f1) basis for the loops around
// x = 0, w1, w2, w3.  The gamma_0/gamma_1 matrices are
//   [[1, 2(1-e1)],[0,1]] and [[1,0],[-2(1-1/e1),1]].
// For gamma_2/gamma_3 two variants exist: `display` reproduces the published
// rational expressions in (e[1]-e[j]); `canonical` replaces (e[1]-e[j]) by
// (e[1]+e[j]) with a per-loop orientation, which is what the continuously
// tracked square-root realization of the contour integrals actually
// satisfies (the two differ by endpoint-gluing signs that no per-function
// normalization can absorb).  The numeric cross-validation uses `canonical`.
enum class MonodromyForm { Canonical, Display };
std::array<Matrix2, 4> closed_form_monodromy_0001(cplx alpha, cplx kappa,
                                                  const PeriodLattice& L,
                                                  MonodromyForm form = MonodromyForm::Canonical);
std::array<Matrix2, 4> closed_form_monodromy_heun(cplx kappa_tilde,
                                                  const PeriodLattice& L,
                                                  MonodromyForm form = MonodromyForm::Canonical);

// --------------------------------------------------- x-plane pullback fields

// Scalar second-order operators in the x variable satisfied by the contour
// integrals; all coefficients are elliptic-function expressions.
CoefficientFn x_field_alpha(cplx alpha, cplx kappa, const PeriodLattice& L);
CoefficientFn x_field_kappa_tilde(cplx kappa_tilde, const PeriodLattice& L);
CoefficientFn x_field_omega_shift(int j, cplx kappa, const PeriodLattice& L);

// Scalar P, Q in x (y'' + P y' + Q y = 0) for residual checks.
std::pair<cplx, cplx> x_coeffs_alpha(cplx x, cplx alpha, cplx kappa,
                                     const PeriodLattice& L);
std::pair<cplx, cplx> x_coeffs_kappa_tilde(cplx x, cplx kappa_tilde,
                                           const PeriodLattice& L);
std::pair<cplx, cplx> x_coeffs_omega_shift(cplx x, int j, cplx kappa,
                                           const PeriodLattice& L);

// ------------------------------------------------------- flagship comparison

struct MonodromyComparison {
  std::array<Matrix2, 4> numeric;
  std::array<Matrix2, 4> closed;
  double max_deviation = 0.0;
  int frame_sign = +1;  // the single branch scalar fixed on the gamma_0 loop
};

// Numeric monodromy of the four x-plane loops on the quadrature-seeded
// (f0, f1) frame at x0 = 0.37 w1 + 0.29 w3, against the closed forms.
MonodromyComparison compare_monodromy_alpha(cplx alpha, cplx kappa,
                                            const PeriodLattice& L,
                                            int order = 64, double tol = 1e-9);
MonodromyComparison compare_monodromy_kt(cplx kappa_tilde, const PeriodLattice& L,
                                         int order = 64, double tol = 1e-9);

// --------------------------------------------------------- confluent limits

// Heun equation reached when the extra apparent point is pushed to infinity
// (accessory data lambda enters the q-coefficient).
SecondOrderODE mu_zero_limit(const ThetaParams& tilde, cplx lambda, cplx t);
// Variant for tilde_theta_inf = 1 with mu = b s^2, lambda = c/s, s -> 0.
SecondOrderODE mu_zero_limit_bc(const ThetaParams& tilde, cplx bc2, cplx t);
// Apparent point sent to the finite singularity i (0, 1 or t).
SecondOrderODE lambda_to_singularity(int i, const ThetaParams& tilde, cplx mu, cplx t);
// s -> 0 variants at theta_i = 0.
SecondOrderODE lambda_to_singularity_bc(int i, const ThetaParams& tilde, cplx bc2,
                                        cplx t);

// Accessory position entering mu_zero_limit for prescribed Heun data:
// lambda = (t(alpha-epsilon) + (alpha-delta) - q/beta)/(alpha - beta - 1).
cplx lambda_for_heun(const HeunParams& p);

}  // namespace fuchsmc
