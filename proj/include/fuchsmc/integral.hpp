#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fuchsmc/elliptic.hpp"
#include "fuchsmc/hermite.hpp"

namespace fuchsmc {

// Kernel selector for the CLI-facing description of one integral.
enum class KernelKind { Alpha, GAlpha, KappaTilde, OmegaShift, General };

struct IntegralSpec {
  KernelKind kind = KernelKind::Alpha;
  int i = 0;            // endpoint index: contour from -x + 2 w_i to x
  int shift_index = 1;  // omega-shift kernels: which half-period enters
  cplx x;               // evaluation point in the x-plane
  cplx alpha, kappa, kappa_tilde, k_sys{1.0};
  std::array<int, 4> l{0, 0, 0, 0};
  cplx lambda, mu;      // general-integrand accessory data
  int order = 64;       // nodes per quadrature leg
  double clearance_factor = 0.05;
  int branch_seed = +1; // sign applied to the midpoint-principal anchor
};

struct IntegralValue {
  cplx value;
  cplx d1;              // d/dx
  std::optional<cplx> d2;
  double error_estimate = 0.0;
};

// Integrand data at fixed x: amplitude and partial derivatives.  The full
// integrand is A(xi)/sqrt(sigma(x-xi) sigma(x+xi)) with the square root
// tracked continuously along the contour from the midpoint anchor.
struct AmpFns {
  std::function<cplx(cplx)> A;
  std::function<cplx(cplx)> A_xi;   // partial d/dxi
  std::function<cplx(cplx)> A_x;    // partial d/dx
  std::function<cplx(cplx)> A_xx, A_xxi, A_xixi;  // second partials (optional)
  bool has_second = false;
};

// Evaluates one contour integral from -x + 2 w_i to x.  Routes around nearby
// features (lattice points, the moving branch zeros xi = +-x mod the period
// lattice, caller extras), applies per-leg Gauss rules with the inverse
// square-root endpoint behavior absorbed, and differentiates the integrand
// analytically on the frozen normalized path for d/dx (and d2/dx2 when
// second partials are supplied).
class ContourIntegrator {
 public:
  ContourIntegrator(const PeriodLattice& L, int i, AmpFns amp,
                    std::vector<cplx> extra_features = {}, int order = 64,
                    double clearance_factor = 0.05, int branch_seed = +1,
                    bool endpoint_singular = true);

  IntegralValue evaluate(cplx x, bool want_d2 = false) const;

 private:
  const PeriodLattice& L_;
  int i_;
  AmpFns amp_;
  std::vector<cplx> extra_;
  int order_;
  double cfac_;
  int seed_sign_;
  bool endpoint_singular_;
};

// ------------------------------------------------------- concrete kernels

// A = exp((kappa + zeta(alpha)) xi) sigma(x) sigma(xi - alpha); the first
// component of the theta=(0,0,0,1) solution pair.
IntegralValue f_alpha(int i, cplx x, cplx alpha, cplx kappa, const PeriodLattice& L,
                      int order = 64, bool want_d2 = false);

// Second component: kernel multiplied by
// kappa^2 + 2 kappa (zeta(xi-alpha) - zeta(xi) + zeta(alpha)) + 2 wp(xi) + wp(alpha)
// and the 1/(4 k (e2-e1)) prefactor.  The lattice poles of the bracket have
// zero residue; the contour routes around them.
IntegralValue g_alpha(int i, cplx x, cplx alpha, cplx kappa, cplx k_sys,
                      const PeriodLattice& L, int order = 64);

// A = exp(kappa_tilde xi) sigma(x) sigma(xi); alpha -> 0 limit.
IntegralValue f_kappa_tilde(int i, cplx x, cplx kappa_tilde, const PeriodLattice& L,
                            int order = 64, bool want_d2 = false);

// A = exp((kappa + eta_j) xi) sigma(x) sigma(xi - w_j); alpha -> w_j limit.
// i_prime selects the contour endpoint, j the shifted half-period.
IntegralValue f_omega_shift(int i_prime, cplx x, int j, cplx kappa,
                            const PeriodLattice& L, int order = 64,
                            bool want_d2 = false);

// ------------------------------------------------ general integrand family

// Integrand of the transformed solution for integer l with even sum:
//   [ {kappa1/(e2-e1) + (tw(xi) - lambda - kappa1/mu) sum_j l_j/(2(wp-e_j))} wp' f
//     + (tw(xi) - lambda - kappa1/mu) f' ] prod_j (wp-e_j)^{l_j/2}
//     (z - tw(xi))^{kappa1} / (tw(xi) - lambda),
// kappa1 = -(l0+l1+l2+l3+1)/2.  Only kappa1 = -1/2 (sum l = 0) admits the
// direct contour; kappa1 <= -1 is rejected, odd parity is rejected.
struct GeneralIntegrand {
  std::array<int, 4> l;
  cplx lambda, mu;
  std::function<cplx(cplx)> f_hk;    // caller-supplied solution form
  std::function<cplx(cplx)> d_f_hk;
};

cplx general_integrand(cplx xi, cplx z, const GeneralIntegrand& gi,
                       const PeriodLattice& L);

// Contour value for i in 0..3 at z = tilde_wp(x).  With pochhammer = true the
// value carries the double-contour multiplier (1 - exp(2 pi i kappa1)), which
// vanishes identically for odd parity.
IntegralValue y_tilde(int i, cplx x, const GeneralIntegrand& gi,
                      const PeriodLattice& L, int order = 64,
                      bool pochhammer = false);

// Algebraic reduction at kappa_tilde = 0: int_{e_j}^{z} dw/sqrt((w-z) prod (w-e_m)),
// quadrature in the w-plane with the tracked quartic root.
cplx elliptic_w_integral(int j, cplx z, const PeriodLattice& L, int order = 200);

}  // namespace fuchsmc
