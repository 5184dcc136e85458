#pragma once

#include <functional>

#include "fuchsmc/elliptic.hpp"
#include "fuchsmc/fuchsian.hpp"

namespace fuchsmc {

// Two-parameter family of exact solutions at theta = (0,0,0,1):
// alpha(tau) = C3 w1 - C1 w3, kappa(tau) = zeta(C1 w3 - C3 w1) + C3 eta1 - C1 eta3.
struct PicardData {
  cplx C1, C3;
};

struct PicardPoint {
  cplx alpha, kappa, lambda, mu, t;
};

// The Hamiltonian of the sixth Painleve system (with the theta_t - 1 shift in
// the linear term).
cplx p6_hamiltonian(const ThetaParams& p, cplx lambda, cplx mu, cplx t);

// |lambda'' - RHS| of the sixth Painleve equation by central differences at
// step h; one Richardson step (h and h/2) is applied when richardson = true.
double p6_residual(const std::function<cplx(cplx)>& lambda_of_t,
                   const ThetaParams& p, cplx t, double h, bool richardson = true);

// Evaluates the family at tau (lattice normalized to w1 = 1/2, w3 = tau/2).
PicardPoint picard_solution(const PicardData& pd, cplx tau);

// lambda as a function of t along the family: inverts t(tau) by Newton seeded
// at tau_seed, then evaluates the solution there.
cplx picard_lambda_of_t(const PicardData& pd, cplx t, cplx tau_seed);
cplx picard_t_of_tau(cplx tau);

}  // namespace fuchsmc
