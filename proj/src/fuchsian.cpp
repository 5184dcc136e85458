#include "fuchsmc/fuchsian.hpp"

#include <algorithm>
#include <cmath>

namespace fuchsmc {

cplx RationalFunction::eval(cplx z) const {
  cplx out = 0.0;
  for (const auto& p : poles) {
    cplx inv = 1.0 / (z - p.location);
    cplx pw = inv;
    for (const cplx& c : p.coeffs) {
      out += c * pw;
      pw *= inv;
    }
  }
  cplx zp = 1.0;
  for (const cplx& c : poly) {
    out += c * zp;
    zp *= z;
  }
  return out;
}

std::vector<cplx> RationalFunction::taylor_at(cplx z0, int order) const {
  std::vector<cplx> out(order + 1, cplx(0));
  for (const auto& p : poles) {
    cplx d = z0 - p.location;
    require(std::abs(d) > 1e-14, "TAYLOR_AT_POLE",
            "taylor expansion requested at a pole location");
    // (z - a)^-(k+1) = sum_j binom(-(k+1), j) d^-(k+1)-j u^j
    for (size_t k = 0; k < p.coeffs.size(); ++k) {
      cplx base = std::pow(d, -double(k + 1));
      double binom = 1.0;
      cplx du = base;
      for (int j = 0; j <= order; ++j) {
        out[j] += p.coeffs[k] * binom * du;
        binom *= -double(k + 1 + j) / double(j + 1);
        du /= d;
      }
    }
  }
  // polynomial tail shifted to z0: z^m = sum_j binom(m,j) z0^(m-j) u^j
  for (size_t m = 0; m < poly.size(); ++m) {
    double binom = 1.0;
    for (size_t j = 0; j <= std::min<size_t>(m, size_t(order)); ++j) {
      cplx pw = (m == j) ? cplx(1) : std::pow(z0, double(m - j));
      out[j] += poly[m] * binom * pw;
      binom *= double(m - j) / double(j + 1);
    }
  }
  return out;
}

cplx RationalFunction::principal_coeff(cplx z0, int k) const {
  for (const auto& p : poles)
    if (std::abs(p.location - z0) < 1e-10 * (1.0 + std::abs(z0)))
      if (k >= 1 && size_t(k) <= p.coeffs.size()) return p.coeffs[k - 1];
  return 0.0;
}

cplx RationalFunction::limit_z_pow(int m) const {
  // valid when the function decays like z^-m; sums the leading moments of the
  // principal parts (poly must be empty).
  require(poly.empty(), "LIMIT_POLY", "limit requires a decaying rational function");
  cplx out = 0.0;
  if (m == 1) {
    for (const auto& p : poles)
      if (!p.coeffs.empty()) out += p.coeffs[0];
  } else if (m == 2) {
    for (const auto& p : poles) {
      if (p.coeffs.size() >= 1) out += p.coeffs[0] * p.location;
      if (p.coeffs.size() >= 2) out += p.coeffs[1];
    }
  } else {
    throw Error("LIMIT_ORDER", "only m = 1, 2 supported");
  }
  return out;
}

SecondOrderODE scalar_reduction(const FuchsianSystem& sys) {
  require(std::abs(sys.w0) + std::abs(sys.w1) + std::abs(sys.wt) > 0,
          "REDUCIBLE", "a12 vanishes identically");
  const ThetaParams& p = sys.params;
  cplx t = sys.t, lam = sys.lambda, mu = sys.mu;
  cplx k1 = p.kappa1(), k2 = p.kappa2();

  cplx H = (lam * (lam - 1.0) * (lam - t) * mu * mu -
            (p.th0 * (lam - 1.0) * (lam - t) + p.th1 * lam * (lam - t) +
             (p.tht - 1.0) * lam * (lam - 1.0)) * mu +
            k1 * (k2 + 1.0) * (lam - t)) / (t * (t - 1.0));

  SecondOrderODE ode;
  ode.p.poles = {{cplx(0), {1.0 - p.th0}},
                 {cplx(1), {1.0 - p.th1}},
                 {t, {1.0 - p.tht}},
                 {lam, {cplx(-1.0)}}};

  // q = k1(k2+1)/(z(z-1)) + lam(lam-1)mu/(z(z-1)(z-lam)) - t(t-1)H/(z(z-1)(z-t))
  // assembled in partial fractions over {0, 1, t, lam}
  cplx A = k1 * (k2 + 1.0);
  cplx B = lam * (lam - 1.0) * mu;
  cplx C = -t * (t - 1.0) * H;
  cplx q0 = -A + B / lam + C / t;
  cplx q1 = A + B / (1.0 - lam) + C / (1.0 - t);
  cplx qt = C / (t * (t - 1.0));
  cplx ql = B / (lam * (lam - 1.0));
  ode.q.poles = {{cplx(0), {q0}}, {cplx(1), {q1}}, {t, {qt}}, {lam, {ql}}};

  ode.singularities = {cplx(0), cplx(1), t, lam};
  ode.infinity_singular = true;
  return ode;
}

std::pair<cplx, cplx> local_exponents(const SecondOrderODE& ode, cplx point) {
  bool listed = false;
  for (cplx s : ode.singularities)
    if (std::abs(s - point) < 1e-10 * (1.0 + std::abs(point))) listed = true;
  require(listed, "NOT_SINGULAR", "point is not a listed singularity");
  cplx p1 = ode.p.principal_coeff(point, 1);
  cplx q2 = ode.q.principal_coeff(point, 2);
  // rho(rho-1) + p1 rho + q2 = 0
  cplx b = p1 - 1.0, disc = std::sqrt(b * b - 4.0 * q2);
  cplx r1 = (-b + disc) / 2.0, r2 = (-b - disc) / 2.0;
  if (r1.real() > r2.real() ||
      (r1.real() == r2.real() && r1.imag() > r2.imag()))
    std::swap(r1, r2);
  return {r1, r2};
}

std::pair<cplx, cplx> local_exponents(const SecondOrderODE& ode, InfinityPoint) {
  require(ode.infinity_singular, "NOT_SINGULAR", "infinity is not singular");
  cplx p1 = ode.p.limit_z_pow(1);
  cplx q2 = ode.q.limit_z_pow(2);
  // rho(rho+1) - p1 rho + q2 = 0
  cplx b = 1.0 - p1, disc = std::sqrt(b * b - 4.0 * q2);
  cplx r1 = (-b + disc) / 2.0, r2 = (-b - disc) / 2.0;
  if (r1.real() > r2.real() ||
      (r1.real() == r2.real() && r1.imag() > r2.imag()))
    std::swap(r1, r2);
  return {r1, r2};
}

bool apparent_check(const SecondOrderODE& ode, cplx point, double tol) {
  auto [r1, r2] = local_exponents(ode, point);
  cplx diff = r2 - r1;
  double dn = std::abs(diff - std::round(diff.real()));
  require(dn < 1e-8 && diff.real() > -0.5, "EXPONENT_DIFF",
          "apparency needs a non-negative integer exponent difference");
  int n = int(std::lround(diff.real()));
  if (n == 0) return false;  // the log term coefficient is the solution itself

  // Frobenius from the smaller exponent rho1; obstruction at step n.
  // Pu_j = coeff of u^j in u*p(z0+u), Qu_j = coeff of u^j in u^2*q(z0+u).
  std::vector<cplx> Pu(n + 1, 0.0), Qu(n + 1, 0.0);
  Pu[0] = ode.p.principal_coeff(point, 1);
  Qu[0] = ode.q.principal_coeff(point, 2);
  if (n >= 1) Qu[1] = ode.q.principal_coeff(point, 1);
  // analytic parts (taylor_at already skips the local pole? -- it throws;
  // so strip the local pole first)
  RationalFunction pr = ode.p, qr = ode.q;
  auto strip = [&](RationalFunction& f) {
    for (auto it = f.poles.begin(); it != f.poles.end(); ++it)
      if (std::abs(it->location - point) < 1e-10 * (1.0 + std::abs(point))) {
        f.poles.erase(it);
        break;
      }
  };
  strip(pr);
  strip(qr);
  auto Pa = pr.taylor_at(point, n);
  auto Qa = qr.taylor_at(point, n);
  for (int j = 1; j <= n; ++j) {
    Pu[j] += Pa[j - 1];
    if (j >= 2) Qu[j] += Qa[j - 2];
  }

  cplx rho = r1;
  auto indicial = [&](cplx s) { return s * (s - 1.0) + Pu[0] * s + Qu[0]; };
  std::vector<cplx> cfs(n + 1, 0.0);
  cfs[0] = 1.0;
  for (int k = 1; k < n; ++k) {
    cplx rhs = 0.0;
    for (int j = 1; j <= k; ++j)
      rhs += cfs[k - j] * ((rho + cplx(k - j)) * Pu[j] + Qu[j]);
    cfs[k] = -rhs / indicial(rho + cplx(k));
  }
  cplx obstruction = 0.0;
  for (int j = 1; j <= n; ++j)
    obstruction += cfs[n - j] * ((rho + cplx(n - j)) * Pu[j] + Qu[j]);
  double scale = 0.0;
  for (int j = 0; j < n; ++j) scale += std::abs(cfs[j]);
  return std::abs(obstruction) < tol * std::max(1.0, scale);
}

cplx y2_from_y1(const FuchsianSystem& sys, cplx y1, cplx dy1, cplx z) {
  Matrix2 A = sys.eval(z);
  require(std::abs(A(0, 1)) > 1e-14, "A12_ZERO", "a12(z) vanishes at z");
  return (dy1 - A(0, 0) * y1) / A(0, 1);
}

cplx y1_from_y2(const FuchsianSystem& sys, cplx y2, cplx dy2, cplx z) {
  Matrix2 A = sys.eval(z);
  require(std::abs(A(1, 0)) > 1e-14, "A21_ZERO", "a21(z) vanishes at z");
  return (dy2 - A(1, 1) * y2) / A(1, 0);
}

}  // namespace fuchsmc
