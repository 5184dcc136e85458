#include "fuchsmc/heun.hpp"

#include <cmath>

#include "fuchsmc/integral.hpp"

namespace fuchsmc {

SecondOrderODE heun_ode(const HeunParams& p) {
  require(std::abs(p.fuchs_defect()) < 1e-10, "PARAM_FUCHS",
          "gamma + delta + epsilon must equal alpha + beta + 1");
  require(std::abs(p.t) > 1e-14 && std::abs(p.t - 1.0) > 1e-14, "PARAM_T",
          "t must avoid 0 and 1");
  SecondOrderODE ode;
  ode.p.poles = {{cplx(0), {p.gamma}}, {cplx(1), {p.delta}}, {p.t, {p.epsilon}}};
  // (alpha beta z - q)/(z(z-1)(z-t)) in partial fractions
  cplx ab = p.alpha * p.beta;
  cplx r0 = (ab * 0.0 - p.q) / ((0.0 - 1.0) * (0.0 - p.t));
  cplx r1 = (ab * 1.0 - p.q) / (1.0 * (1.0 - p.t));
  cplx rt = (ab * p.t - p.q) / (p.t * (p.t - 1.0));
  ode.q.poles = {{cplx(0), {r0}}, {cplx(1), {r1}}, {p.t, {rt}}};
  ode.singularities = {cplx(0), cplx(1), p.t};
  ode.infinity_singular = true;
  return ode;
}

EllipticHeunParams heun_to_elliptic(const HeunParams& p, const PeriodLattice& L) {
  EllipticHeunParams ep;
  ep.l0 = p.alpha - p.beta - 0.5;
  ep.l1 = -p.gamma + 0.5;
  ep.l2 = -p.delta + 0.5;
  ep.l3 = -p.epsilon + 0.5;
  ep.t = p.t;
  cplx ab2 = (p.alpha - p.beta) * (p.alpha - p.beta);
  cplx g = p.gamma, d = p.delta, e = p.epsilon;
  cplx c0 = (-ab2 + 2.0 * g * g + 6.0 * g * e + 2.0 * e * e - 4.0 * g - 4.0 * e -
             d * d + 2.0 * d + 1.0) / 3.0;
  cplx ct = (-ab2 + 2.0 * g * g + 6.0 * g * d + 2.0 * d * d - 4.0 * g - 4.0 * d -
             e * e + 2.0 * e + 1.0) / 3.0;
  ep.E = (L.e2() - L.e1()) * (-4.0 * p.q + c0 + ct * p.t);
  return ep;
}

HeunParams elliptic_to_heun(const EllipticHeunParams& ep, const PeriodLattice& L) {
  HeunParams p;
  p.gamma = 0.5 - ep.l1;
  p.delta = 0.5 - ep.l2;
  p.epsilon = 0.5 - ep.l3;
  p.alpha = (ep.l0 - ep.l1 - ep.l2 - ep.l3 + 1.0) / 2.0;
  p.beta = (-ep.l0 - ep.l1 - ep.l2 - ep.l3) / 2.0;
  p.t = ep.t;
  cplx ab2 = (p.alpha - p.beta) * (p.alpha - p.beta);
  cplx g = p.gamma, d = p.delta, e = p.epsilon;
  cplx c0 = (-ab2 + 2.0 * g * g + 6.0 * g * e + 2.0 * e * e - 4.0 * g - 4.0 * e -
             d * d + 2.0 * d + 1.0) / 3.0;
  cplx ct = (-ab2 + 2.0 * g * g + 6.0 * g * d + 2.0 * d * d - 4.0 * g - 4.0 * d -
             e * e + 2.0 * e + 1.0) / 3.0;
  p.q = (c0 + ct * p.t - ep.E / (L.e2() - L.e1())) / 4.0;
  return p;
}

HeunParams special_heun_kappa_tilde(cplx kt, const PeriodLattice& L) {
  HeunParams p;
  p.gamma = p.delta = p.epsilon = 1.0;
  p.alpha = 1.5;
  p.beta = 0.5;
  p.q = -(3.0 * L.e1() - kt * kt) / (4.0 * (L.e2() - L.e1()));
  p.t = L.cross_ratio();
  return p;
}

std::array<cplx, 4> e_factors(cplx alpha, cplx kappa, const PeriodLattice& L) {
  require(!L.on_lattice(alpha), "ALPHA_ON_LATTICE",
          "alpha on the lattice; use the kappa-tilde limit form");
  std::array<cplx, 4> e{1.0, 0.0, 0.0, 0.0};
  cplx c = kappa + L.zeta(alpha);
  for (int j = 1; j <= 3; ++j)
    e[j] = std::exp(2.0 * L.omega(j) * c - 2.0 * L.eta(j) * alpha);
  return e;
}

std::array<cplx, 4> e_factors_kt(cplx kt, const PeriodLattice& L) {
  std::array<cplx, 4> e{1.0, 0.0, 0.0, 0.0};
  for (int j = 1; j <= 3; ++j) e[j] = std::exp(2.0 * L.omega(j) * kt);
  return e;
}

namespace {

std::array<Matrix2, 4> closed_forms(const std::array<cplx, 4>& e, MonodromyForm form) {
  require(std::abs(e[1] - 1.0) > 1e-12, "BASIS_DEGENERATE",
          "e[1] = 1: the (f0, f1) pair is not a basis");
  std::array<Matrix2, 4> M;
  M[0] << 1.0, 2.0 * (1.0 - e[1]), 0.0, 1.0;
  M[1] << 1.0, 0.0, -2.0 * (1.0 - 1.0 / e[1]), 1.0;
  for (int j = 2; j <= 3; ++j) {
    cplx q = 1.0 - e[j];
    cplx den = (1.0 - e[1]) * e[j];
    if (form == MonodromyForm::Display) {
      cplx pd = e[1] - e[j];
      cplx a = -2.0 * pd * q / den;  // = 2(e1-ej)(ej-1)/((e1-1)ej)
      M[j] << 1.0 + a, -2.0 * pd * pd / den, 2.0 * q * q / den, 1.0 - a;
      // sign conventions of the published display
      M[j](0, 1) = 2.0 * pd * pd / ((e[1] - 1.0) * e[j]);
      M[j](1, 0) = -2.0 * q * q / ((e[1] - 1.0) * e[j]);
      M[j](0, 0) = 1.0 + 2.0 * pd * (e[j] - 1.0) / ((e[1] - 1.0) * e[j]);
      M[j](1, 1) = 1.0 - 2.0 * pd * (e[j] - 1.0) / ((e[1] - 1.0) * e[j]);
    } else {
      cplx pc = e[1] + e[j];
      cplx a = 2.0 * pc * q / den;
      if (j == 2) {
        M[j] << 1.0 - a, -2.0 * pc * pc / den, 2.0 * q * q / den, 1.0 + a;
      } else {
        M[j] << 1.0 + a, 2.0 * pc * pc / den, -2.0 * q * q / den, 1.0 - a;
      }
    }
  }
  return M;
}

}  // namespace

std::array<Matrix2, 4> closed_form_monodromy_0001(cplx alpha, cplx kappa,
                                                  const PeriodLattice& L,
                                                  MonodromyForm form) {
  return closed_forms(e_factors(alpha, kappa, L), form);
}

std::array<Matrix2, 4> closed_form_monodromy_heun(cplx kt, const PeriodLattice& L,
                                                  MonodromyForm form) {
  require(std::abs(std::exp(2.0 * L.omega1() * kt) - 1.0) > 1e-12,
          "BASIS_DEGENERATE", "exp(2 w1 kt) = 1: degenerate basis");
  return closed_forms(e_factors_kt(kt, L), form);
}

// ------------------------------------------------------------- x-plane fields

std::pair<cplx, cplx> x_coeffs_alpha(cplx x, cplx alpha, cplx kappa,
                                     const PeriodLattice& L) {
  cplx w = L.wp(x), wp1 = L.wp_prime(x);
  cplx wpa = L.wp(alpha), wppa = L.wp_prime(alpha);
  cplx P = (1.0 / (2.0 * (w - L.e1())) + 1.0 / (2.0 * (w - L.e2())) +
            1.0 / (2.0 * (w - L.e3())) - 1.0 / (w - wpa)) * wp1;
  cplx Q = -kappa * kappa - wppa * kappa / (w - wpa) + w - wpa;
  return {P, Q};
}

std::pair<cplx, cplx> x_coeffs_kappa_tilde(cplx x, cplx kt, const PeriodLattice& L) {
  cplx w = L.wp(x), wp1 = L.wp_prime(x);
  cplx P = (1.0 / (2.0 * (w - L.e1())) + 1.0 / (2.0 * (w - L.e2())) +
            1.0 / (2.0 * (w - L.e3()))) * wp1;
  cplx Q = 3.0 * w - kt * kt;
  return {P, Q};
}

std::pair<cplx, cplx> x_coeffs_omega_shift(cplx x, int j, cplx kappa,
                                           const PeriodLattice& L) {
  cplx w = L.wp(x), wp1 = L.wp_prime(x);
  cplx ej = L.e(j);
  cplx P = (1.0 / (2.0 * (w - L.e1())) + 1.0 / (2.0 * (w - L.e2())) +
            1.0 / (2.0 * (w - L.e3())) - 1.0 / (w - ej)) * wp1;
  cplx Q = -kappa * kappa + w - ej;
  return {P, Q};
}

namespace {

CoefficientFn companion_of(std::function<std::pair<cplx, cplx>(cplx)> pq) {
  return [pq](cplx x) {
    auto [P, Q] = pq(x);
    Matrix2 A;
    A << cplx(0), cplx(1), -Q, -P;
    return A;
  };
}

}  // namespace

CoefficientFn x_field_alpha(cplx alpha, cplx kappa, const PeriodLattice& L) {
  const PeriodLattice* Lp = &L;
  return companion_of([Lp, alpha, kappa](cplx x) {
    return x_coeffs_alpha(x, alpha, kappa, *Lp);
  });
}

CoefficientFn x_field_kappa_tilde(cplx kt, const PeriodLattice& L) {
  const PeriodLattice* Lp = &L;
  return companion_of([Lp, kt](cplx x) { return x_coeffs_kappa_tilde(x, kt, *Lp); });
}

CoefficientFn x_field_omega_shift(int j, cplx kappa, const PeriodLattice& L) {
  const PeriodLattice* Lp = &L;
  return companion_of(
      [Lp, j, kappa](cplx x) { return x_coeffs_omega_shift(x, j, kappa, *Lp); });
}

// ------------------------------------------------------- flagship comparison

namespace {

MonodromyComparison compare_impl(const PeriodLattice& L, const CoefficientFn& field,
                                 const std::array<Matrix2, 4>& closed,
                                 const std::function<IntegralValue(int, cplx)>& fval,
                                 const std::vector<cplx>& extra_sing, double tol) {
  cplx x0 = 0.37 * L.omega1() + 0.29 * L.omega3();

  Matrix2 W;
  IntegralValue v0 = fval(0, x0);
  IntegralValue v1 = fval(1, x0);
  W << v0.value, v1.value, v0.d1, v1.d1;
  require(std::abs(W.determinant()) > 1e-12 * W.cwiseAbs().maxCoeff(),
          "FRAME_DEGENERATE", "quadrature frame is numerically singular");
  Matrix2 Winv = W.inverse();

  std::vector<cplx> sing;
  for (long m = -2; m <= 2; ++m)
    for (long n = -2; n <= 2; ++n) {
      cplx base = 2.0 * double(m) * L.omega1() + 2.0 * double(n) * L.omega3();
      for (int jj = 0; jj <= 3; ++jj) sing.push_back(L.omega(jj) + base);
      for (cplx ex : extra_sing) sing.push_back(ex + base);
    }

  MonodromyComparison out;
  out.closed = closed;
  for (int j = 0; j <= 3; ++j) {
    cplx center = L.omega(j);
    std::vector<cplx> others;
    for (cplx s : sing)
      if (std::abs(s - center) > 1e-9) others.push_back(s);
    PathPolyline loop = loop_polyline(x0, center, others);
    Matrix2 Wend = continue_frame(field, loop, W, tol);
    out.numeric[j] = Winv * Wend;
  }

  // single frame scalar: the column-relative sign, fixed on the gamma_0 loop
  double direct = (out.numeric[0] - closed[0]).cwiseAbs().maxCoeff();
  Matrix2 D;
  D << 1.0, 0.0, 0.0, -1.0;
  double flipped = (D * out.numeric[0] * D - closed[0]).cwiseAbs().maxCoeff();
  out.frame_sign = (flipped < direct) ? -1 : +1;
  if (out.frame_sign < 0)
    for (int j = 0; j <= 3; ++j) out.numeric[j] = D * out.numeric[j] * D;

  for (int j = 0; j <= 3; ++j)
    out.max_deviation = std::max(
        out.max_deviation, (out.numeric[j] - closed[j]).cwiseAbs().maxCoeff());
  return out;
}

}  // namespace

MonodromyComparison compare_monodromy_alpha(cplx alpha, cplx kappa,
                                            const PeriodLattice& L, int order,
                                            double tol) {
  auto closed = closed_form_monodromy_0001(alpha, kappa, L);
  auto fval = [&L, alpha, kappa, order](int i, cplx x) {
    return f_alpha(i, x, alpha, kappa, L, order);
  };
  return compare_impl(L, x_field_alpha(alpha, kappa, L), closed, fval,
                      {alpha, -alpha}, tol);
}

MonodromyComparison compare_monodromy_kt(cplx kt, const PeriodLattice& L, int order,
                                         double tol) {
  auto closed = closed_form_monodromy_heun(kt, L);
  auto fval = [&L, kt, order](int i, cplx x) {
    return f_kappa_tilde(i, x, kt, L, order);
  };
  return compare_impl(L, x_field_kappa_tilde(kt, L), closed, fval, {}, tol);
}

// --------------------------------------------------------- confluent limits

namespace {

SecondOrderODE heun_like(cplx c0, cplx c1, cplx ct, cplx num1, cplx num0, cplx t) {
  // y'' + (c0/z + c1/(z-1) + ct/(z-t)) y' + (num1 z + num0)/(z(z-1)(z-t)) y
  SecondOrderODE ode;
  ode.p.poles = {{cplx(0), {c0}}, {cplx(1), {c1}}, {t, {ct}}};
  auto res = [&](cplx at, cplx other1, cplx other2) {
    return (num1 * at + num0) / ((at - other1) * (at - other2));
  };
  ode.q.poles = {{cplx(0), {res(0.0, 1.0, t)}},
                 {cplx(1), {res(1.0, 0.0, t)}},
                 {t, {res(t, 0.0, 1.0)}}};
  ode.singularities = {cplx(0), cplx(1), t};
  ode.infinity_singular = true;
  return ode;
}

}  // namespace

SecondOrderODE mu_zero_limit(const ThetaParams& td, cplx lambda, cplx t) {
  cplx k1 = td.kappa1(), k2 = td.kappa2();
  cplx num1 = k1 * (k2 + 2.0);
  cplx num0 = k1 * (1.0 - td.thinf) * lambda -
              k1 * ((k2 + td.tht + 1.0) * t + (k2 + td.th1 + 1.0));
  return heun_like(1.0 - td.th0, 1.0 - td.th1, 1.0 - td.tht, num1, num0, t);
}

SecondOrderODE mu_zero_limit_bc(const ThetaParams& td, cplx bc2, cplx t) {
  require(std::abs(td.thinf - 1.0) < 1e-10, "PARAM_THINF",
          "this limit requires theta_inf = 1");
  cplx k1 = td.kappa1(), k2 = td.kappa2();
  cplx num1 = k1 * (k2 + 2.0);
  cplx num0 = k1 * bc2 - k1 * ((k2 + td.tht + 1.0) * t + (k2 + td.th1 + 1.0));
  return heun_like(1.0 - td.th0, 1.0 - td.th1, 1.0 - td.tht, num1, num0, t);
}

SecondOrderODE lambda_to_singularity(int i, const ThetaParams& td, cplx mu, cplx t) {
  cplx k1 = td.kappa1(), k2 = td.kappa2();
  cplx A = k1 * (k2 + 1.0);
  switch (i) {
    case 0:
      return heun_like(-td.th0, 1.0 - td.th1, 1.0 - td.tht, A, t * td.th0 * mu, t);
    case 1:
      return heun_like(1.0 - td.th0, -td.th1, 1.0 - td.tht, A,
                       -A + (1.0 - t) * td.th1 * mu, t);
    case 2:
      return heun_like(1.0 - td.th0, 1.0 - td.th1, -td.tht, A,
                       -A * t + t * (t - 1.0) * td.tht * mu, t);
  }
  throw Error("BAD_INDEX", "singularity index must be 0, 1 or 2 (for 0, 1, t)");
}

SecondOrderODE lambda_to_singularity_bc(int i, const ThetaParams& td, cplx bc2,
                                        cplx t) {
  cplx k1 = td.kappa1(), k2 = td.kappa2();
  cplx A = k1 * (k2 + 1.0);
  switch (i) {
    case 0:
      require(std::abs(td.th0) < 1e-10, "PARAM_THETA", "needs theta_0 = 0");
      return heun_like(0.0, 1.0 - td.th1, 1.0 - td.tht, A, -t * bc2, t);
    case 1:
      require(std::abs(td.th1) < 1e-10, "PARAM_THETA", "needs theta_1 = 0");
      return heun_like(1.0 - td.th0, 0.0, 1.0 - td.tht, A, -A + (t - 1.0) * bc2, t);
    case 2:
      require(std::abs(td.tht) < 1e-10, "PARAM_THETA", "needs theta_t = 0");
      return heun_like(1.0 - td.th0, 1.0 - td.th1, 0.0, A, -A * t + t * (1.0 - t) * bc2,
                       t);
  }
  throw Error("BAD_INDEX", "singularity index must be 0, 1 or 2 (for 0, 1, t)");
}

cplx lambda_for_heun(const HeunParams& p) {
  require(std::abs(p.alpha - p.beta - 1.0) > 1e-12, "PARAM_RESONANT",
          "alpha - beta = 1 needs the bc^2 parametrization");
  return (p.t * (p.alpha - p.epsilon) + (p.alpha - p.delta) - p.q / p.beta) /
         (p.alpha - p.beta - 1.0);
}

}  // namespace fuchsmc
