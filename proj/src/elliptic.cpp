#include "fuchsmc/elliptic.hpp"

#include <algorithm>
#include <cmath>

namespace fuchsmc {

namespace {

// theta_2/3/4 null values and theta_1'(0), theta_1'''(0)
struct Nulls {
  cplx t2{0}, t3{1}, t4{1}, t1p{0}, t1ppp{0};
};

Nulls theta_nulls(cplx q) {
  Nulls n;
  for (int k = 0; k < 64; ++k) {
    double m = 2.0 * k + 1.0;
    cplx qc = std::pow(q, (k + 0.5) * (k + 0.5));
    double sgn = (k % 2) ? -1.0 : 1.0;
    n.t2 += 2.0 * qc;
    n.t1p += 2.0 * sgn * qc * m;
    n.t1ppp += -2.0 * sgn * qc * m * m * m;
    if (k >= 1) {
      cplx qn = std::pow(q, double(k) * double(k));
      n.t3 += 2.0 * qn;
      n.t4 += 2.0 * sgn * qn;
    }
    if (std::abs(qc) < 1e-20) break;
  }
  return n;
}

}  // namespace

PeriodLattice::PeriodLattice(cplx omega1, cplx omega3) : om1_(omega1), om3_(omega3) {
  require(std::abs(omega1) > 0, "LATTICE_DEGENERATE", "omega1 must be nonzero");
  tau_ = om3_ / om1_;
  require(tau_.imag() > 0, "LATTICE_IM_TAU", "Im(omega3/omega1) must be positive");
  q_ = std::exp(kI * kPi * tau_);
  Nulls n = theta_nulls(q_);
  t1p0_ = n.t1p;
  cplx c = kPi / (2.0 * om1_);
  eta1_ = -(c * c) * om1_ * n.t1ppp / (3.0 * n.t1p);
  eta3_ = (eta1_ * om3_ - kI * kPi / 2.0) / om1_;
  cplx cc = c * c / 3.0;
  cplx t2_4 = std::pow(n.t2, 4), t3_4 = std::pow(n.t3, 4), t4_4 = std::pow(n.t4, 4);
  e1_ = cc * (t3_4 + t4_4);
  e2_ = cc * (t2_4 - t4_4);
  e3_ = -cc * (t2_4 + t3_4);
  g2_ = -4.0 * (e1_ * e2_ + e2_ * e3_ + e3_ * e1_);
  g3_ = 4.0 * e1_ * e2_ * e3_;
  scale_ = std::min({std::abs(2.0 * om1_), std::abs(2.0 * om3_),
                     std::abs(2.0 * (om1_ + om3_)), std::abs(2.0 * (om1_ - om3_))});
}

cplx PeriodLattice::omega(int i) const {
  switch (i) {
    case 0: return 0.0;
    case 1: return om1_;
    case 2: return -om1_ - om3_;
    case 3: return om3_;
  }
  throw Error("BAD_INDEX", "half-period index must be 0..3");
}

cplx PeriodLattice::eta(int i) const {
  switch (i) {
    case 0: return 0.0;
    case 1: return eta1_;
    case 2: return -eta1_ - eta3_;
    case 3: return eta3_;
  }
  throw Error("BAD_INDEX", "quasi-period index must be 0..3");
}

cplx PeriodLattice::e(int i) const {
  switch (i) {
    case 1: return e1_;
    case 2: return e2_;
    case 3: return e3_;
  }
  throw Error("BAD_INDEX", "branch value index must be 1..3");
}

void PeriodLattice::reduce(cplx z, cplx& z0, long& m, long& n) const {
  double a_re = 2.0 * om1_.real(), a_im = 2.0 * om1_.imag();
  double b_re = 2.0 * om3_.real(), b_im = 2.0 * om3_.imag();
  double det = a_re * b_im - a_im * b_re;
  double mr = (z.real() * b_im - z.imag() * b_re) / det;
  double nr = (z.imag() * a_re - z.real() * a_im) / det;
  m = std::lround(mr);
  n = std::lround(nr);
  z0 = z - 2.0 * double(m) * om1_ - 2.0 * double(n) * om3_;
}

bool PeriodLattice::on_lattice(cplx z, double tol) const {
  cplx z0;
  long m, n;
  reduce(z, z0, m, n);
  return std::abs(z0) < tol * std::max(1.0, scale_);
}

void PeriodLattice::check_pole(cplx z0, const char* what) const {
  if (std::abs(z0) < 1e-12 * std::max(1.0, scale_))
    throw Error("ON_LATTICE", std::string(what) + ": argument within pole tolerance of a lattice point");
}

PeriodLattice::Theta PeriodLattice::theta1(cplx u, int kmax) const {
  Theta t{0, 0, 0, 0};
  double mag0 = 0.0;
  for (int k = 0; k < 64; ++k) {
    double m = 2.0 * k + 1.0;
    double sgn = (k % 2) ? -1.0 : 1.0;
    cplx coef = 2.0 * sgn * std::pow(q_, (k + 0.5) * (k + 0.5));
    cplx s = std::sin(m * u), c = std::cos(m * u);
    t.t0 += coef * s;
    if (kmax >= 1) t.t1 += coef * m * c;
    if (kmax >= 2) t.t2 += -coef * m * m * s;
    if (kmax >= 3) t.t3 += -coef * m * m * m * c;
    double term = std::abs(coef) * (std::abs(s) + std::abs(c) + 1.0) * std::pow(m, kmax);
    if (k == 0) mag0 = term;
    if (k > 1 && term < 1e-18 * std::max(1.0, mag0)) break;
  }
  return t;
}

cplx PeriodLattice::sigma(cplx z) const {
  cplx z0;
  long m, n;
  reduce(z, z0, m, n);
  cplx c = kPi / (2.0 * om1_);
  Theta t = theta1(c * z0, 0);
  cplx s0 = (2.0 * om1_ / kPi) * std::exp(eta1_ * z0 * z0 / (2.0 * om1_)) * t.t0 / t1p0_;
  if (m == 0 && n == 0) return s0;
  double sgn = ((m + n + m * n) % 2) ? -1.0 : 1.0;
  cplx fac = std::exp((2.0 * double(m) * eta1_ + 2.0 * double(n) * eta3_) *
                      (z0 + double(m) * om1_ + double(n) * om3_));
  return sgn * fac * s0;
}

cplx PeriodLattice::sigma_prime(cplx z) const {
  cplx z0;
  long m, n;
  reduce(z, z0, m, n);
  cplx c = kPi / (2.0 * om1_);
  Theta t = theta1(c * z0, 1);
  cplx pref = (2.0 * om1_ / kPi) * std::exp(eta1_ * z0 * z0 / (2.0 * om1_)) / t1p0_;
  cplx s0 = pref * t.t0;
  cplx s0p = pref * (eta1_ * z0 / om1_ * t.t0 + c * t.t1);
  if (m == 0 && n == 0) return s0p;
  double sgn = ((m + n + m * n) % 2) ? -1.0 : 1.0;
  cplx eta = 2.0 * double(m) * eta1_ + 2.0 * double(n) * eta3_;
  cplx fac = std::exp(eta * (z0 + double(m) * om1_ + double(n) * om3_));
  return sgn * fac * (s0p + eta * s0);
}

cplx PeriodLattice::sigma_second(cplx z) const {
  cplx z0;
  long m, n;
  reduce(z, z0, m, n);
  cplx c = kPi / (2.0 * om1_);
  Theta t = theta1(c * z0, 2);
  cplx pref = (2.0 * om1_ / kPi) * std::exp(eta1_ * z0 * z0 / (2.0 * om1_)) / t1p0_;
  cplx h = eta1_ * z0 / om1_;
  cplx s0 = pref * t.t0;
  cplx s0p = pref * (h * t.t0 + c * t.t1);
  cplx s0pp = pref * ((eta1_ / om1_ + h * h) * t.t0 + 2.0 * h * c * t.t1 + c * c * t.t2);
  if (m == 0 && n == 0) return s0pp;
  double sgn = ((m + n + m * n) % 2) ? -1.0 : 1.0;
  cplx eta = 2.0 * double(m) * eta1_ + 2.0 * double(n) * eta3_;
  cplx fac = std::exp(eta * (z0 + double(m) * om1_ + double(n) * om3_));
  return sgn * fac * (s0pp + 2.0 * eta * s0p + eta * eta * s0);
}

cplx PeriodLattice::zeta(cplx z) const {
  cplx z0;
  long m, n;
  reduce(z, z0, m, n);
  check_pole(z0, "zeta");
  cplx c = kPi / (2.0 * om1_);
  Theta t = theta1(c * z0, 1);
  return eta1_ * z0 / om1_ + c * t.t1 / t.t0 +
         2.0 * double(m) * eta1_ + 2.0 * double(n) * eta3_;
}

cplx PeriodLattice::wp(cplx z) const {
  cplx z0;
  long m, n;
  reduce(z, z0, m, n);
  check_pole(z0, "wp");
  cplx c = kPi / (2.0 * om1_);
  Theta t = theta1(c * z0, 2);
  cplx h = t.t1 / t.t0;
  cplx hp = t.t2 / t.t0 - h * h;
  return -eta1_ / om1_ - c * c * hp;
}

cplx PeriodLattice::wp_prime(cplx z) const {
  cplx z0;
  long m, n;
  reduce(z, z0, m, n);
  check_pole(z0, "wp_prime");
  cplx c = kPi / (2.0 * om1_);
  Theta t = theta1(c * z0, 3);
  cplx h = t.t1 / t.t0;
  cplx hp = t.t2 / t.t0 - h * h;
  cplx hpp = t.t3 / t.t0 - h * t.t2 / t.t0 - 2.0 * h * hp;
  return -c * c * c * hpp;
}

cplx PeriodLattice::cosigma(int j, cplx z) const {
  cplx wj = omega(j), ej = eta(j);
  return std::exp(-ej * z) * sigma(z + wj) / sigma(wj);
}

PeriodLattice lattice_from_tau(cplx tau, cplx scale) {
  require(std::abs(scale) > 0, "LATTICE_DEGENERATE", "scale must be nonzero");
  require(tau.imag() > 0, "LATTICE_IM_TAU", "Im tau must be positive");
  return PeriodLattice(scale / 2.0, scale * tau / 2.0);
}

PeriodLattice lattice_from_t(cplx t) {
  require(std::abs(t) > 1e-14 && std::abs(t - 1.0) > 1e-14, "T_DEGENERATE",
          "singularity position t must avoid 0 and 1");
  static const std::vector<cplx> seeds = {
      {0.3, 1.0}, {0.0, 1.0}, {0.5, 0.9}, {-0.4, 1.2}, {0.2, 0.6},
      {0.0, 1.8}, {0.9, 1.4}, {-0.8, 0.8}, {0.1, 2.5}, {1.4, 0.8},
      {-1.2, 1.1}, {0.0, 0.45}};
  double tol = 1e-13 * std::max(1.0, std::abs(t));
  for (cplx seed : seeds) {
    cplx tau = seed;
    bool ok = true;
    for (int it = 0; it < 80; ++it) {
      if (tau.imag() < 0.15) { ok = false; break; }
      cplx f;
      try {
        f = lattice_from_tau(tau).cross_ratio() - t;
      } catch (const Error&) {
        ok = false;
        break;
      }
      if (std::abs(f) < tol) break;
      double h = 1e-6;
      cplx fp = (lattice_from_tau(tau + h).cross_ratio() -
                 lattice_from_tau(tau - h).cross_ratio()) / (2.0 * h);
      if (std::abs(fp) < 1e-300) { ok = false; break; }
      cplx step = f / fp;
      if (std::abs(step) > 1.0) step *= 1.0 / std::abs(step);
      tau -= step;
    }
    if (!ok || tau.imag() < 0.15) continue;
    PeriodLattice L = lattice_from_tau(tau);
    if (std::abs(L.cross_ratio() - t) < 10.0 * tol) return L;
  }
  throw Error("T_SOLVE_FAILED", "no period ratio found realizing the requested t");
}

cplx wp_inverse(cplx w, const PeriodLattice& L, std::optional<cplx> wp_prime_target) {
  // coarse seed over the fundamental cell, chordal metric to tame the pole
  cplx best = 0.0;
  double bestv = 1e300;
  const int N = 20;
  for (int a = 1; a < N; ++a) {
    for (int b = 1; b < N; ++b) {
      cplx z = (2.0 * a / N) * L.omega1() + (2.0 * b / N) * L.omega3();
      if (L.on_lattice(z, 1e-6)) continue;
      cplx v = L.wp(z) - w;
      double score = std::abs(v) / (1.0 + std::abs(L.wp(z)));
      if (score < bestv) {
        bestv = score;
        best = z;
      }
    }
  }
  cplx z = best;
  bool converged = false;
  for (int it = 0; it < 100; ++it) {
    cplx f = L.wp(z) - w;
    if (std::abs(f) < 1e-13 * (1.0 + std::abs(w))) { converged = true; break; }
    cplx d = L.wp_prime(z);
    if (std::abs(d) < 1e-10) {
      // near a half-period: quadratic model wp ~ e + wp''/2 (z-w_i)^2
      cplx step = std::sqrt(2.0 * f / L.wp_second(z));
      z -= step;
      continue;
    }
    cplx step = f / d;
    double cap = 0.25 * L.scale();
    if (std::abs(step) > cap) step *= cap / std::abs(step);
    z -= step;
  }
  if (!converged)
    throw Error("WP_INVERSE", "Newton iteration for wp inversion did not converge");
  if (wp_prime_target) {
    if (std::abs(L.wp_prime(z) - *wp_prime_target) >
        std::abs(-L.wp_prime(z) - *wp_prime_target))
      z = -z;
  } else {
    cplx d = L.wp_prime(z);
    if (d.real() < 0 || (d.real() == 0 && d.imag() < 0)) z = -z;
  }
  cplx z0;
  long m, n;
  L.reduce(z, z0, m, n);
  return z0;
}

cplx tilde_wp_inverse(cplx z, const PeriodLattice& L, int branch) {
  cplx w = L.e1() + (L.e2() - L.e1()) * z;
  cplx x = wp_inverse(w, L);
  return branch >= 0 ? x : -x;
}

}  // namespace fuchsmc
