#pragma once

#include "fuchsmc/elliptic.hpp"

namespace fuchsmc {

// Translation/rate data of the exponential-times-sigma-quotient solution form
// f(x) = b0 exp(kappa x) Phi_0(x, alpha).
struct HKData {
  cplx alpha;
  cplx kappa;
  const PeriodLattice* lattice = nullptr;
  cplx b0{1.0, 0.0};
};

// Phi_i(x, alpha) = sigma(x + w_i - alpha)/sigma(x + w_i) * exp(zeta(alpha) x)
cplx phi(int i, cplx x, cplx alpha, const PeriodLattice& L);

// Accessory (lambda, mu) -> (alpha, kappa) for the l = 0 family:
//   wp(alpha) = e1 + (e2-e1)(lambda - 1/(2 mu)),
//   wp'(alpha) = -(e2-e1)^2 sqrt(-Q)/(2 mu^2),
//   kappa      =  (e2-e1) sqrt(-Q)/(2 mu),
//   Q = -2 mu (2 lam mu - 1)(2(lam-1) mu - 1)(2(lam-t) mu - 1)/(e2-e1).
// The square-root branch is the principal one; the pair (alpha, kappa) is
// fixed so the inverse map returns (lambda, mu).
HKData hk_from_accessory(cplx lambda, cplx mu, const PeriodLattice& L);

// Inverse map: lambda = [wp(a) - e1 - wp'(a)/(2 kappa)]/(e2-e1),
//              mu = -(e2-e1) kappa / wp'(alpha).
std::pair<cplx, cplx> accessory_from_hk(const HKData& hk);

// Q(lambda, mu) as above.
cplx hk_discriminant(cplx lambda, cplx mu, const PeriodLattice& L);

// Accessory data of the theta=(0,0,0,1) system solved by the sigma-quotient
// integrals: lambda = tilde_wp(alpha), mu = -(e2-e1) kappa / wp'(alpha).
// (This differs from accessory_from_hk by the wp'/(2 kappa) shift; both maps
// appear in the construction and are kept distinct on purpose.)
std::pair<cplx, cplx> accessory_0001(cplx alpha, cplx kappa, const PeriodLattice& L);

cplx f_hk(cplx x, const HKData& hk);
cplx d_f_hk(cplx x, const HKData& hk);
cplx d2_f_hk(cplx x, const HKData& hk);

}  // namespace fuchsmc
