#include "fuchsmc/painleve.hpp"

#include <cmath>

namespace fuchsmc {

cplx p6_hamiltonian(const ThetaParams& p, cplx lambda, cplx mu, cplx t) {
  require(std::abs(t) > 1e-14 && std::abs(t - 1.0) > 1e-14, "PARAM_T",
          "t must avoid 0 and 1");
  cplx k1 = p.kappa1(), k2 = p.kappa2();
  return (lambda * (lambda - 1.0) * (lambda - t) * mu * mu -
          (p.th0 * (lambda - 1.0) * (lambda - t) + p.th1 * lambda * (lambda - t) +
           (p.tht - 1.0) * lambda * (lambda - 1.0)) * mu +
          k1 * (k2 + 1.0) * (lambda - t)) / (t * (t - 1.0));
}

namespace {

cplx p6_rhs(const ThetaParams& p, cplx lam, cplx dlam, cplx t) {
  cplx A = 0.5 * (1.0 / lam + 1.0 / (lam - 1.0) + 1.0 / (lam - t)) * dlam * dlam;
  cplx B = (1.0 / t + 1.0 / (t - 1.0) + 1.0 / (lam - t)) * dlam;
  cplx th0 = p.th0, th1 = p.th1, tht = p.tht, thinf = p.thinf;
  cplx C = lam * (lam - 1.0) * (lam - t) / (t * t * (t - 1.0) * (t - 1.0)) *
           ((1.0 - thinf) * (1.0 - thinf) / 2.0 -
            th0 * th0 / 2.0 * t / (lam * lam) +
            th1 * th1 / 2.0 * (t - 1.0) / ((lam - 1.0) * (lam - 1.0)) +
            (1.0 - tht * tht) / 2.0 * t * (t - 1.0) / ((lam - t) * (lam - t)));
  return A - B + C;
}

cplx resid_at(const std::function<cplx(cplx)>& lam, const ThetaParams& p, cplx t,
              double h) {
  cplx l0 = lam(t), lp = lam(t + h), lm = lam(t - h);
  cplx dl = (lp - lm) / (2.0 * h);
  cplx d2l = (lp - 2.0 * l0 + lm) / (h * h);
  return d2l - p6_rhs(p, l0, dl, t);
}

}  // namespace

double p6_residual(const std::function<cplx(cplx)>& lambda_of_t,
                   const ThetaParams& p, cplx t, double h, bool richardson) {
  require(h > 0, "PARAM_H", "step must be positive");
  cplx r_h = resid_at(lambda_of_t, p, t, h);
  if (!richardson) return std::abs(r_h);
  // the truncation error is O(h^2); h and h/2 combine to the extrapolant
  cplx r_h2 = resid_at(lambda_of_t, p, t, h / 2.0);
  return std::abs((4.0 * r_h2 - r_h) / 3.0);
}

PicardPoint picard_solution(const PicardData& pd, cplx tau) {
  require(tau.imag() > 0, "LATTICE_IM_TAU", "Im tau must be positive");
  PeriodLattice L = lattice_from_tau(tau);
  PicardPoint out;
  out.alpha = pd.C3 * L.omega1() - pd.C1 * L.omega3();
  require(!L.on_lattice(out.alpha), "PICARD_DEGENERATE",
          "alpha(tau) lands on the lattice");
  out.kappa = L.zeta(pd.C1 * L.omega3() - pd.C3 * L.omega1()) +
              pd.C3 * L.eta1() - pd.C1 * L.eta3();
  cplx wpa = L.wp(out.alpha), wppa = L.wp_prime(out.alpha);
  require(std::abs(wppa) > 1e-12, "PICARD_HALF_PERIOD",
          "alpha(tau) at a half-period");
  out.lambda = (wpa - L.e1()) / (L.e2() - L.e1());
  out.mu = -(L.e2() - L.e1()) * out.kappa / wppa;
  out.t = L.cross_ratio();
  return out;
}

cplx picard_t_of_tau(cplx tau) { return lattice_from_tau(tau).cross_ratio(); }

cplx picard_lambda_of_t(const PicardData& pd, cplx t, cplx tau_seed) {
  cplx tau = tau_seed;
  bool ok = false;
  for (int it = 0; it < 60; ++it) {
    cplx f = picard_t_of_tau(tau) - t;
    if (std::abs(f) < 1e-13 * (1.0 + std::abs(t))) {
      ok = true;
      break;
    }
    double h = 1e-6;
    cplx d = (picard_t_of_tau(tau + h) - picard_t_of_tau(tau - h)) / (2.0 * h);
    tau -= f / d;
    require(tau.imag() > 0.05, "PICARD_TAU", "tau inversion left the upper half plane");
  }
  require(ok, "PICARD_TAU", "t -> tau inversion did not converge");
  return picard_solution(pd, tau).lambda;
}

}  // namespace fuchsmc
