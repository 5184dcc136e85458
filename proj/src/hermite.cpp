#include "fuchsmc/hermite.hpp"

namespace fuchsmc {

cplx phi(int i, cplx x, cplx alpha, const PeriodLattice& L) {
  require(!L.on_lattice(alpha), "ALPHA_ON_LATTICE", "alpha must be off-lattice");
  cplx wi = L.omega(i);
  require(!L.on_lattice(x + wi), "PHI_POLE", "x + omega_i lies on the lattice");
  return L.sigma(x + wi - alpha) / L.sigma(x + wi) * std::exp(L.zeta(alpha) * x);
}

cplx hk_discriminant(cplx lambda, cplx mu, const PeriodLattice& L) {
  cplx t = L.cross_ratio();
  return -2.0 * mu * (2.0 * lambda * mu - 1.0) * (2.0 * (lambda - 1.0) * mu - 1.0) *
         (2.0 * (lambda - t) * mu - 1.0) / (L.e2() - L.e1());
}

HKData hk_from_accessory(cplx lambda, cplx mu, const PeriodLattice& L) {
  require(std::abs(mu) > 1e-14, "MU_ZERO", "the translation form needs mu != 0");
  cplx de = L.e2() - L.e1();
  cplx Q = hk_discriminant(lambda, mu, L);
  cplx sq = std::sqrt(-Q);
  cplx wpa = L.e1() + de * (lambda - 1.0 / (2.0 * mu));
  cplx wppa = -de * de * sq / (2.0 * mu * mu);
  cplx kappa = de * sq / (2.0 * mu);
  HKData hk;
  hk.alpha = wp_inverse(wpa, L, wppa);
  hk.kappa = kappa;
  hk.lattice = &L;
  // per-call branch calibration: flip (alpha, kappa) jointly if the inverse
  // map does not return the inputs
  auto [lam_back, mu_back] = accessory_from_hk(hk);
  if (std::abs(lam_back - lambda) + std::abs(mu_back - mu) >
      1e-6 * (1.0 + std::abs(lambda) + std::abs(mu))) {
    hk.alpha = -hk.alpha;
    hk.kappa = -hk.kappa;
  }
  return hk;
}

std::pair<cplx, cplx> accessory_from_hk(const HKData& hk) {
  const PeriodLattice& L = *hk.lattice;
  cplx wpa = L.wp(hk.alpha), wppa = L.wp_prime(hk.alpha);
  require(std::abs(hk.kappa) > 1e-14, "KAPPA_ZERO", "branch degenerates at kappa = 0");
  require(std::abs(wppa) > 1e-14, "WP_PRIME_ZERO",
          "branch degenerates at a half-period alpha");
  cplx de = L.e2() - L.e1();
  cplx lambda = (wpa - L.e1() - wppa / (2.0 * hk.kappa)) / de;
  cplx mu = -de * hk.kappa / wppa;
  return {lambda, mu};
}

std::pair<cplx, cplx> accessory_0001(cplx alpha, cplx kappa, const PeriodLattice& L) {
  cplx wppa = L.wp_prime(alpha);
  require(std::abs(wppa) > 1e-14, "WP_PRIME_ZERO",
          "alpha at a half-period is outside this chart");
  cplx de = L.e2() - L.e1();
  return {L.tilde_wp(alpha), -de * kappa / wppa};
}

cplx f_hk(cplx x, const HKData& hk) {
  const PeriodLattice& L = *hk.lattice;
  return hk.b0 * std::exp(hk.kappa * x) * phi(0, x, hk.alpha, L);
}

cplx d_f_hk(cplx x, const HKData& hk) {
  const PeriodLattice& L = *hk.lattice;
  return f_hk(x, hk) *
         (hk.kappa + L.zeta(hk.alpha) + L.zeta(x - hk.alpha) - L.zeta(x));
}

cplx d2_f_hk(cplx x, const HKData& hk) {
  const PeriodLattice& L = *hk.lattice;
  cplx u = hk.kappa + L.zeta(hk.alpha) + L.zeta(x - hk.alpha) - L.zeta(x);
  cplx du = -L.wp(x - hk.alpha) + L.wp(x);
  return f_hk(x, hk) * (u * u + du);
}

}  // namespace fuchsmc
