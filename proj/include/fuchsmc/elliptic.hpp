#pragma once

#include <array>
#include <optional>
#include <vector>

#include "fuchsmc/types.hpp"

namespace fuchsmc {

// Weierstrass function kernel over a period lattice (2w1, 2w3), evaluated by
// theta series in the nome q = exp(i pi tau) with argument reduction into the
// fundamental cell.  Branch values e_i = wp(w_i), quasi-periods eta_i =
// zeta_w(w_i).  The singularity position realized by the lattice is
// t = (e3 - e1)/(e2 - e1) = tilde_wp(w3), so that tilde_wp maps
// (w1, w2, w3) -> (0, 1, t).
class PeriodLattice {
 public:
  PeriodLattice(cplx omega1, cplx omega3);

  cplx omega(int i) const;  // i in 0..3, omega0 = 0, omega2 = -omega1-omega3
  cplx eta(int i) const;    // eta0 = 0
  cplx omega1() const { return om1_; }
  cplx omega3() const { return om3_; }
  cplx omega2() const { return -om1_ - om3_; }
  cplx eta1() const { return eta1_; }
  cplx eta3() const { return eta3_; }
  cplx eta2() const { return -eta1_ - eta3_; }
  cplx tau() const { return tau_; }
  cplx e1() const { return e1_; }
  cplx e2() const { return e2_; }
  cplx e3() const { return e3_; }
  cplx e(int i) const;  // i in 1..3
  cplx g2() const { return g2_; }
  cplx g3() const { return g3_; }

  cplx cross_ratio() const { return (e3_ - e1_) / (e2_ - e1_); }

  // Writes z = z0 + 2m w1 + 2n w3 with z0 in the centered fundamental cell.
  void reduce(cplx z, cplx& z0, long& m, long& n) const;
  bool on_lattice(cplx z, double tol = 1e-12) const;
  // Distance scale of the lattice (min over the six shortest periods).
  double scale() const { return scale_; }

  cplx sigma(cplx z) const;
  cplx sigma_prime(cplx z) const;
  cplx sigma_second(cplx z) const;
  cplx zeta(cplx z) const;   // pole at lattice points
  cplx wp(cplx z) const;
  cplx wp_prime(cplx z) const;
  cplx wp_second(cplx z) const { cplx w = wp(z); return 6.0 * w * w - g2_ / 2.0; }
  cplx tilde_wp(cplx z) const { return (wp(z) - e1_) / (e2_ - e1_); }

  // co-sigma: sigma_j(z) = exp(-eta_j z) sigma(z + w_j) / sigma(w_j); entire,
  // and (sigma_j/sigma)^2 = wp - e_j.  Used as the fixed square-root branch
  // of (wp - e_j).
  cplx cosigma(int j, cplx z) const;
  cplx sqrt_wp_minus_e(int j, cplx z) const { return cosigma(j, z) / sigma(z); }

 private:
  struct Theta {  // theta_1 derivatives at the reduced argument
    cplx t0, t1, t2, t3;
  };
  Theta theta1(cplx u, int kmax) const;
  void check_pole(cplx z0, const char* what) const;

  cplx om1_, om3_, tau_, q_;
  cplx eta1_, eta3_;
  cplx e1_, e2_, e3_, g2_, g3_;
  cplx t1p0_;  // theta_1'(0)
  double scale_;
};

// Normalized constructor: omega1 = scale/2, omega3 = scale*tau/2.
PeriodLattice lattice_from_tau(cplx tau, cplx scale = 1.0);

// Solves (e3-e1)/(e2-e1) = t by Newton on tau seeded over a fixed grid.
// The representative returned is the first converged root scanning the seed
// list (deterministic); roots with Im tau < 0.15 are rejected.
PeriodLattice lattice_from_t(cplx t);

// wp and helpers as free functions (thin wrappers; keeps call sites terse).
inline cplx wp(cplx x, const PeriodLattice& L) { return L.wp(x); }
inline cplx wp_prime(cplx x, const PeriodLattice& L) { return L.wp_prime(x); }
inline cplx sigma_w(cplx x, const PeriodLattice& L) { return L.sigma(x); }
inline cplx zeta_w(cplx x, const PeriodLattice& L) { return L.zeta(x); }
inline cplx tilde_wp(cplx x, const PeriodLattice& L) { return L.tilde_wp(x); }

// Inverts wp(x) = w on the fundamental cell (coarse grid seed + Newton).
// If wp_prime_target is given the sheet is chosen to match it, otherwise the
// representative with Re wp'(x) > 0 (ties by Im > 0) is returned.
cplx wp_inverse(cplx w, const PeriodLattice& L,
                std::optional<cplx> wp_prime_target = std::nullopt);

// branch = +1 / -1 selects between the two sheets x, -x via the sign rule on
// wp'(x) described at wp_inverse.
cplx tilde_wp_inverse(cplx z, const PeriodLattice& L, int branch = +1);

}  // namespace fuchsmc
