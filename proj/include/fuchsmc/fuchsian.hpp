#pragma once

#include <array>
#include <utility>
#include <vector>

#include "fuchsmc/rational.hpp"
#include "fuchsmc/types.hpp"

namespace fuchsmc {

// Exponent parameters of the four-point system.  kappa1/kappa2 are derived:
// kappa1 = (th_inf - th0 - th1 - tht)/2, kappa2 = -(th_inf + th0 + th1 + tht)/2.
template <typename S>
struct ThetaParamsT {
  S th0{}, th1{}, tht{}, thinf{};

  S kappa1() const { return (thinf - th0 - th1 - tht) / S(2); }
  S kappa2() const { return -(thinf + th0 + th1 + tht) / S(2); }
};

using ThetaParams = ThetaParamsT<cplx>;
using ThetaParamsQ = ThetaParamsT<GaussRat>;

// Okamoto's involution s2: th_i -> kappa1 + th_i (i = 0,1,t),
// th_inf -> -kappa2, lambda -> lambda + kappa1/mu, mu and t fixed.
template <typename S>
std::pair<ThetaParamsT<S>, std::pair<S, S>> okamoto_s2(const ThetaParamsT<S>& p,
                                                       const S& lambda, const S& mu) {
  require(!scalar_is_zero(mu), "S2_MU_ZERO", "okamoto_s2 is singular at mu = 0");
  S k1 = p.kappa1();
  ThetaParamsT<S> out;
  out.th0 = k1 + p.th0;
  out.th1 = k1 + p.th1;
  out.tht = k1 + p.tht;
  out.thinf = -p.kappa2();
  return {out, {lambda + k1 / mu, mu}};
}

// 2x2 residue tuple of the four-point system together with its defining data.
template <typename S>
struct FuchsianSystemT {
  using Mat = Eigen::Matrix<S, 2, 2>;
  Mat A0, A1, At;
  S t{}, lambda{}, mu{}, k{};
  ThetaParamsT<S> params;
  S u0{}, u1{}, ut{}, w0{}, w1{}, wt{};

  Mat Ainf() const { return -(A0 + A1 + At); }
  Mat eval(const S& z) const {
    return A0 / z + A1 / (z - S(1)) + At / (z - t);
  }
};

using FuchsianSystem = FuchsianSystemT<cplx>;
using FuchsianSystemQ = FuchsianSystemT<GaussRat>;

// Builds the residue matrices from (theta, lambda, mu, k, t); each A_i is
// rank one with trace th_i, and A0+A1+At = -diag(kappa1, kappa2).
template <typename S>
FuchsianSystemT<S> build_system(const ThetaParamsT<S>& p, const S& lambda,
                                const S& mu, const S& k, const S& t) {
  require(!scalar_is_zero(t) && !scalar_is_zero(t - S(1)), "PARAM_T",
          "t must avoid 0 and 1");
  require(!scalar_is_zero(k), "PARAM_K", "k must be nonzero");
  require(!scalar_is_zero(p.thinf), "PARAM_THINF", "theta_inf must be nonzero");
  require(!scalar_is_zero(lambda) && !scalar_is_zero(lambda - S(1)) &&
              !scalar_is_zero(lambda - t),
          "PARAM_LAMBDA", "lambda must avoid 0, 1, t (a w-entry would vanish)");

  S k1 = p.kappa1();
  FuchsianSystemT<S> sys;
  sys.t = t;
  sys.lambda = lambda;
  sys.mu = mu;
  sys.k = k;
  sys.params = p;

  sys.w0 = k * lambda / t;
  sys.w1 = -k * (lambda - S(1)) / (t - S(1));
  sys.wt = k * (lambda - t) / (t * (t - S(1)));

  S lll = lambda * (lambda - S(1)) * (lambda - t) * mu * mu;
  sys.u0 = -p.th0 + lambda / (t * p.thinf) *
      (lll + (S(2) * k1 * (lambda - S(1)) * (lambda - t) - p.th1 * (lambda - t) -
              t * p.tht * (lambda - S(1))) * mu +
       k1 * (k1 * (lambda - t - S(1)) - p.th1 - t * p.tht));
  sys.u1 = -p.th1 - (lambda - S(1)) / ((t - S(1)) * p.thinf) *
      (lll + (S(2) * k1 * (lambda - S(1)) * (lambda - t) +
              (p.thinf - p.th1) * (lambda - t) - t * p.tht * (lambda - S(1))) * mu +
       k1 * (k1 * (lambda - t + S(1)) + p.th0 - (t - S(1)) * p.tht));
  sys.ut = -p.tht + (lambda - t) / (t * (t - S(1)) * p.thinf) *
      (lll + (S(2) * k1 * (lambda - S(1)) * (lambda - t) - p.th1 * (lambda - t) +
              t * (p.thinf - p.tht) * (lambda - S(1))) * mu +
       k1 * (k1 * (lambda - t + S(1)) + p.th0 + (t - S(1)) * (p.thinf - p.tht)));

  auto fill = [](const S& u, const S& th, const S& w) {
    require(!scalar_is_zero(w), "PARAM_W", "w-entry vanished");
    Eigen::Matrix<S, 2, 2> A;
    A(0, 0) = u + th;
    A(0, 1) = -w;
    A(1, 0) = u * (u + th) / w;
    A(1, 1) = -u;
    return A;
  };
  sys.A0 = fill(sys.u0, p.th0, sys.w0);
  sys.A1 = fill(sys.u1, p.th1, sys.w1);
  sys.At = fill(sys.ut, p.tht, sys.wt);
  return sys;
}

inline FuchsianSystem to_complex(const FuchsianSystemQ& q) {
  FuchsianSystem s;
  auto conv = [](const Eigen::Matrix<GaussRat, 2, 2>& M) {
    Matrix2 out;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out(i, j) = M(i, j).to_complex();
    return out;
  };
  s.A0 = conv(q.A0);
  s.A1 = conv(q.A1);
  s.At = conv(q.At);
  s.t = q.t.to_complex();
  s.lambda = q.lambda.to_complex();
  s.mu = q.mu.to_complex();
  s.k = q.k.to_complex();
  s.params = {q.params.th0.to_complex(), q.params.th1.to_complex(),
              q.params.tht.to_complex(), q.params.thinf.to_complex()};
  s.u0 = q.u0.to_complex();
  s.u1 = q.u1.to_complex();
  s.ut = q.ut.to_complex();
  s.w0 = q.w0.to_complex();
  s.w1 = q.w1.to_complex();
  s.wt = q.wt.to_complex();
  return s;
}

// ----------------------------------------------------------------- scalar ODE

// Rational function kept in partial-fraction form: principal parts at listed
// poles plus an entire polynomial tail.
struct RationalFunction {
  struct Pole {
    cplx location;
    std::vector<cplx> coeffs;  // coeffs[k] multiplies (z - location)^-(k+1)
  };
  std::vector<Pole> poles;
  std::vector<cplx> poly;  // ascending powers

  cplx eval(cplx z) const;
  // Taylor coefficients around z0 (not a pole location) up to `order`.
  std::vector<cplx> taylor_at(cplx z0, int order) const;
  // coefficient of (z-z0)^-k at a listed pole (0 if absent)
  cplx principal_coeff(cplx z0, int k) const;
  // lim z->inf of z^m * f(z) for m = 1, 2 (requires empty poly for m=1,
  // degree-0 poly for m=... used on ODE coefficients only).
  cplx limit_z_pow(int m) const;
};

// y'' + p y' + q y = 0 with rational p, q; all finite singular points regular.
struct SecondOrderODE {
  RationalFunction p, q;
  std::vector<cplx> singularities;  // finite regular singular points
  bool infinity_singular = true;

  Matrix2 companion(cplx z) const {
    Matrix2 A;
    A << cplx(0), cplx(1), -q.eval(z), -p.eval(z);
    return A;
  }
};

// The scalar equation obtained by eliminating the second component; poles at
// {0, 1, t, lambda}, apparent at lambda with exponents {0, 2}.
SecondOrderODE scalar_reduction(const FuchsianSystem& sys);

struct InfinityPoint {};
// Indicial roots at a singular point, ordered by (Re, Im).
std::pair<cplx, cplx> local_exponents(const SecondOrderODE& ode, cplx point);
std::pair<cplx, cplx> local_exponents(const SecondOrderODE& ode, InfinityPoint);

// True iff the Frobenius recursion at the larger exponent admits a log-free
// solution.  Requires a non-negative integer exponent difference.
bool apparent_check(const SecondOrderODE& ode, cplx point, double tol = 1e-9);

// Component transfer along the first/second row of the system.
cplx y2_from_y1(const FuchsianSystem& sys, cplx y1, cplx dy1, cplx z);
cplx y1_from_y2(const FuchsianSystem& sys, cplx y2, cplx dy2, cplx z);

}  // namespace fuchsmc
