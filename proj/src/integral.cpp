#include "fuchsmc/integral.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fuchsmc/transport.hpp"

namespace fuchsmc {

namespace {

struct Node {
  cplx xi;
  cplx phi;    // normalized position: xi = w_i + (x - w_i) phi
  cplx wphi;   // quadrature weight of the phi-parametrization (per unit h)
};

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  // Golub-Welsch on the Jacobi matrix of the Legendre weight
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k - 1, k) = b;
    J(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  std::vector<double> x(n), w(n);
  for (int k = 0; k < n; ++k) {
    x[k] = es.eigenvalues()(k);
    w[k] = 2.0 * es.eigenvectors()(0, k) * es.eigenvectors()(0, k);
  }
  return {x, w};
}

const std::pair<std::vector<double>, std::vector<double>>& gl_cached(int n) {
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_legendre(n)).first;
  return it->second;
}

// Composite nodes along the routed polyline in phi-coordinates.
// First/last legs absorb the (distance)^{-1/2} endpoint behavior by the
// quadratic substitution; interior legs are plain Gauss-Legendre.  A single
// straight leg uses the Chebyshev rule directly.
std::vector<Node> build_nodes(const std::vector<cplx>& phi_way, int order,
                              bool endpoint_singular) {
  std::vector<Node> nodes;
  size_t k = phi_way.size() - 1;
  const auto& [glx, glw] = gl_cached(order);
  if (k == 1 && endpoint_singular) {
    int n = 3 * order;
    for (int j = n; j >= 1; --j) {  // ordered along the path (phi increasing)
      double nu = std::cos((2.0 * j - 1.0) * kPi / (2.0 * n));
      cplx phi = phi_way[0] + (phi_way[1] - phi_way[0]) * (0.5 * (nu + 1.0));
      double wnu = (kPi / n) * std::sqrt(1.0 - nu * nu);
      nodes.push_back({0.0, phi, 0.5 * (phi_way[1] - phi_way[0]) * wnu});
    }
    return nodes;
  }
  for (size_t leg = 0; leg < k; ++leg) {
    cplx p = phi_way[leg], q = phi_way[leg + 1];
    if (leg == 0 && endpoint_singular) {
      for (int j = 0; j < order; ++j) {
        double s01 = 0.5 * (glx[j] + 1.0);
        cplx phi = p + (q - p) * s01 * s01;
        nodes.push_back({0.0, phi, (q - p) * s01 * glw[j]});
      }
    } else if (leg == k - 1 && endpoint_singular) {
      std::vector<Node> sub;
      for (int j = 0; j < order; ++j) {
        double s01 = 0.5 * (glx[j] + 1.0);
        cplx phi = q - (q - p) * s01 * s01;
        sub.push_back({0.0, phi, (q - p) * s01 * glw[j]});
      }
      for (auto it = sub.rbegin(); it != sub.rend(); ++it) nodes.push_back(*it);
    } else {
      for (int j = 0; j < order; ++j) {
        double s01 = 0.5 * (glx[j] + 1.0);
        nodes.push_back({0.0, p + (q - p) * s01, 0.5 * (q - p) * glw[j]});
      }
    }
  }
  return nodes;
}

}  // namespace

ContourIntegrator::ContourIntegrator(const PeriodLattice& L, int i, AmpFns amp,
                                     std::vector<cplx> extra_features, int order,
                                     double clearance_factor, int branch_seed,
                                     bool endpoint_singular)
    : L_(L),
      i_(i),
      amp_(std::move(amp)),
      extra_(std::move(extra_features)),
      order_(order),
      cfac_(clearance_factor),
      seed_sign_(branch_seed),
      endpoint_singular_(endpoint_singular) {
  require(i >= 0 && i <= 3, "BAD_INDEX", "endpoint index must be 0..3");
  require(order >= 8, "ORDER", "quadrature order must be at least 8");
}

IntegralValue ContourIntegrator::evaluate(cplx x, bool want_d2) const {
  const PeriodLattice& L = L_;
  cplx omi = L.omega(i_);
  cplx a = -x + 2.0 * omi, b = x;
  cplx h = x - omi;
  require(std::abs(h) > 1e-10 * L.scale(), "CONTOUR_DEGENERATE",
          "evaluation point coincides with the contour midpoint");

  // features near the nominal segment: lattice points, the moving branch
  // zeros +-x + 2L, caller extras
  std::vector<cplx> feats;
  cplx mid = (a + b) / 2.0;
  double span = std::abs(b - a);
  for (long m = -3; m <= 3; ++m)
    for (long n = -3; n <= 3; ++n) {
      cplx base = 2.0 * double(m) * L.omega1() + 2.0 * double(n) * L.omega3();
      for (cplx cand : {base, x + base, -x + base}) {
        if (std::abs(cand - a) < 1e-9 * span || std::abs(cand - b) < 1e-9 * span)
          continue;
        if (std::abs(cand - mid) < 0.8 * span) feats.push_back(cand);
      }
      for (cplx ex : extra_) {
        cplx cand = ex + base;
        if (std::abs(cand - a) < 1e-9 * span || std::abs(cand - b) < 1e-9 * span)
          continue;
        if (std::abs(cand - mid) < 0.8 * span) feats.push_back(cand);
      }
    }
  double minsep = 1e300;
  for (size_t p = 0; p < feats.size(); ++p)
    for (size_t q = p + 1; q < feats.size(); ++q)
      minsep = std::min(minsep, std::abs(feats[p] - feats[q]));
  double clearance = cfac_ * span;
  if (minsep < 1e299) clearance = std::min(clearance, 0.45 * minsep);

  std::vector<cplx> way = route_path(a, b, feats, clearance);
  std::vector<cplx> phi_way;
  phi_way.reserve(way.size());
  for (cplx wpt : way) phi_way.push_back((wpt - omi) / h);
  std::vector<Node> nodes = build_nodes(phi_way, order_, endpoint_singular_);
  for (auto& nd : nodes) nd.xi = omi + h * nd.phi;

  // branch of sqrt(sigma(x-xi) sigma(x+xi)): principal at xi = w_i (times the
  // seed sign), carried along a short bridge to the path, then tracked both
  // ways along the node sequence
  auto sval = [&](cplx xi) { return L.sigma(x - xi) * L.sigma(x + xi); };
  cplx wref = double(seed_sign_) * std::sqrt(sval(omi));
  size_t kmin = 0;
  double dmin = 1e300;
  for (size_t k = 0; k < nodes.size(); ++k) {
    double d = std::abs(nodes[k].xi - omi);
    if (d < dmin) {
      dmin = d;
      kmin = k;
    }
  }
  auto track_step = [&](cplx s, cplx prev) {
    cplx r = std::sqrt(s);
    return (std::abs(r - prev) <= std::abs(-r - prev)) ? r : -r;
  };
  {
    int nb = std::max(3, int(dmin / std::max(1e-12, 0.02 * span)) + 1);
    cplx cur = wref;
    for (int j = 1; j <= nb; ++j)
      cur = track_step(sval(omi + (nodes[kmin].xi - omi) * (double(j) / double(nb))), cur);
    wref = cur;
  }
  std::vector<cplx> wsq(nodes.size());
  wsq[kmin] = wref;
  for (size_t k = kmin + 1; k < nodes.size(); ++k)
    wsq[k] = track_step(sval(nodes[k].xi), wsq[k - 1]);
  for (size_t k = kmin; k-- > 0;) wsq[k] = track_step(sval(nodes[k].xi), wsq[k + 1]);

  IntegralValue out;
  cplx acc = 0.0, acc1 = 0.0, acc2 = 0.0;
  for (size_t k = 0; k < nodes.size(); ++k) {
    const Node& nd = nodes[k];
    cplx W = 1.0 / wsq[k];
    cplx A = amp_.A(nd.xi);
    acc += nd.wphi * h * A * W;

    cplx zm = L.zeta(x - nd.xi), zp = L.zeta(x + nd.xi);
    cplx D1 = (1.0 - nd.phi) * zm + (1.0 + nd.phi) * zp;
    cplx Ahat = amp_.A_x(nd.xi) + nd.phi * amp_.A_xi(nd.xi);
    cplx B = Ahat - 0.5 * A * D1;
    acc1 += nd.wphi * (h * B + A) * W;

    if (want_d2) {
      require(amp_.has_second, "NO_SECOND",
              "second derivative requested without second partials");
      cplx pm = L.wp(x - nd.xi), pp = L.wp(x + nd.xi);
      cplx dAhat = amp_.A_xx(nd.xi) + 2.0 * nd.phi * amp_.A_xxi(nd.xi) +
                   nd.phi * nd.phi * amp_.A_xixi(nd.xi);
      cplx D1x = -(1.0 - nd.phi) * (1.0 - nd.phi) * pm -
                 (1.0 + nd.phi) * (1.0 + nd.phi) * pp;
      cplx Bx = dAhat - 0.5 * (Ahat * D1 + A * D1x);
      acc2 += nd.wphi * (2.0 * B + h * (Bx - 0.5 * B * D1)) * W;
    }
  }
  out.value = acc;
  out.d1 = acc1;
  if (want_d2) out.d2 = acc2;
  out.error_estimate = 1e-12 * (std::abs(acc) + 1.0);
  return out;
}

// ----------------------------------------------------------- simple kernels

namespace {

// A = exp(c xi) sigma(x) sigma(xi - a0), with all partials.
AmpFns simple_amp(const PeriodLattice& L, cplx x, cplx c, cplx a0) {
  const PeriodLattice* Lp = &L;
  cplx sx = L.sigma(x);
  cplx zx = L.zeta(x);
  cplx wx = L.wp(x);
  auto A = [Lp, sx, c, a0](cplx xi) {
    return std::exp(c * xi) * sx * Lp->sigma(xi - a0);
  };
  auto Axi = [Lp, sx, c, a0](cplx xi) {
    return std::exp(c * xi) * sx *
           (c * Lp->sigma(xi - a0) + Lp->sigma_prime(xi - a0));
  };
  AmpFns f;
  f.A = A;
  f.A_xi = Axi;
  f.A_x = [A, zx](cplx xi) { return A(xi) * zx; };
  f.A_xx = [A, zx, wx](cplx xi) { return A(xi) * (zx * zx - wx); };
  f.A_xxi = [Axi, zx](cplx xi) { return Axi(xi) * zx; };
  f.A_xixi = [Lp, sx, c, a0](cplx xi) {
    return std::exp(c * xi) * sx *
           (c * c * Lp->sigma(xi - a0) + 2.0 * c * Lp->sigma_prime(xi - a0) +
            Lp->sigma_second(xi - a0));
  };
  f.has_second = true;
  return f;
}

}  // namespace

IntegralValue f_alpha(int i, cplx x, cplx alpha, cplx kappa, const PeriodLattice& L,
                      int order, bool want_d2) {
  require(!L.on_lattice(alpha), "ALPHA_ON_LATTICE", "alpha must be off-lattice");
  cplx c = kappa + L.zeta(alpha);
  ContourIntegrator ci(L, i, simple_amp(L, x, c, alpha), {alpha, -alpha}, order);
  return ci.evaluate(x, want_d2);
}

IntegralValue g_alpha(int i, cplx x, cplx alpha, cplx kappa, cplx k_sys,
                      const PeriodLattice& L, int order) {
  require(!L.on_lattice(alpha), "ALPHA_ON_LATTICE", "alpha must be off-lattice");
  require(std::abs(k_sys) > 0, "PARAM_K", "k must be nonzero");
  cplx c = kappa + L.zeta(alpha);
  cplx za = L.zeta(alpha), wpa = L.wp(alpha);
  cplx pre = 1.0 / (4.0 * k_sys * (L.e2() - L.e1()));
  cplx sx = L.sigma(x);
  cplx zx = L.zeta(x);
  cplx base0 = kappa * kappa + 2.0 * kappa * za + wpa;

  // bracket written with the pole of zeta(xi-alpha) absorbed into sigma':
  // K sigma(xi-a) = (base0 + 2 wp(xi) - 2 kappa zeta(xi)) sigma(xi-a)
  //                 + 2 kappa sigma'(xi-a)
  auto Ks = [=, &L](cplx xi) {
    return (base0 + 2.0 * L.wp(xi) - 2.0 * kappa * L.zeta(xi)) * L.sigma(xi - alpha) +
           2.0 * kappa * L.sigma_prime(xi - alpha);
  };
  auto dKs = [=, &L](cplx xi) {
    cplx b = base0 + 2.0 * L.wp(xi) - 2.0 * kappa * L.zeta(xi);
    cplx db = 2.0 * L.wp_prime(xi) + 2.0 * kappa * L.wp(xi);
    return db * L.sigma(xi - alpha) + b * L.sigma_prime(xi - alpha) +
           2.0 * kappa * L.sigma_second(xi - alpha);
  };

  AmpFns amp;
  amp.A = [=, &L](cplx xi) { return pre * std::exp(c * xi) * sx * Ks(xi); };
  amp.A_xi = [=, &L](cplx xi) {
    return pre * std::exp(c * xi) * sx * (c * Ks(xi) + dKs(xi));
  };
  amp.A_x = [=](cplx xi) { return pre * std::exp(c * xi) * sx * Ks(xi) * zx; };
  ContourIntegrator ci(L, i, amp, {alpha, -alpha}, order);
  return ci.evaluate(x, false);
}

IntegralValue f_kappa_tilde(int i, cplx x, cplx kappa_tilde, const PeriodLattice& L,
                            int order, bool want_d2) {
  ContourIntegrator ci(L, i, simple_amp(L, x, kappa_tilde, 0.0), {}, order);
  return ci.evaluate(x, want_d2);
}

IntegralValue f_omega_shift(int i_prime, cplx x, int j, cplx kappa,
                            const PeriodLattice& L, int order, bool want_d2) {
  require(j >= 1 && j <= 3, "BAD_INDEX", "shift index must be 1..3");
  cplx c = kappa + L.eta(j);
  ContourIntegrator ci(L, i_prime, simple_amp(L, x, c, L.omega(j)), {L.omega(j)},
                       order);
  return ci.evaluate(x, want_d2);
}

// -------------------------------------------------------- general integrand

cplx general_integrand(cplx xi, cplx z, const GeneralIntegrand& gi,
                       const PeriodLattice& L) {
  int lsum = gi.l[0] + gi.l[1] + gi.l[2] + gi.l[3];
  cplx k1 = -0.5 * (lsum + 1);
  cplx de = L.e2() - L.e1();
  cplx tw = L.tilde_wp(xi);
  cplx f = gi.f_hk(xi);
  cplx fp = gi.d_f_hk(xi);
  cplx shift = tw - gi.lambda - k1 / gi.mu;
  cplx sum = 0.0;
  for (int j = 1; j <= 3; ++j)
    if (gi.l[j]) sum += double(gi.l[j]) / (2.0 * (L.wp(xi) - L.e(j)));
  cplx bracket = (k1 / de + shift * sum) * L.wp_prime(xi) * f + shift * fp;
  cplx prod = 1.0;
  for (int j = 1; j <= 3; ++j) {
    int lj = gi.l[j];
    if (lj == 0) continue;
    cplx sq = L.sqrt_wp_minus_e(j, xi);
    prod *= std::pow(sq, lj);  // (wp - e_j)^(l_j/2), fixed co-sigma branch
  }
  return bracket * prod * std::pow(z - tw, k1) / (tw - gi.lambda);
}

IntegralValue y_tilde(int i, cplx x, const GeneralIntegrand& gi,
                      const PeriodLattice& L, int order, bool pochhammer) {
  int lsum = gi.l[0] + gi.l[1] + gi.l[2] + gi.l[3];
  require((lsum % 2 + 2) % 2 == 0 || pochhammer, "PARITY",
          "odd parity: the double contour vanishes identically");
  double k1 = -0.5 * (lsum + 1);
  require(k1 > -1.0 || pochhammer, "UNSUPPORTED_REGULARIZATION",
          "kappa1 <= -1 needs the cycle regularization, not implemented");

  cplx mult = 1.0;
  if (pochhammer) mult = 1.0 - std::exp(2.0 * kPi * kI * k1);
  if (std::abs(mult) < 1e-15 && pochhammer) {
    // identically-zero contour; skip the quadrature
    return {0.0, 0.0, std::nullopt, 0.0};
  }
  require(k1 > -1.0, "UNSUPPORTED_REGULARIZATION",
          "kappa1 <= -1 needs the cycle regularization, not implemented");

  cplx de = L.e2() - L.e1();
  cplx z = L.tilde_wp(x);
  bool half = std::abs(k1 + 0.5) < 1e-12;  // endpoint exponent -1/2
  cplx sqde = std::sqrt(de);

  AmpFns amp;
  if (half) {
    // (z - tw(xi))^{-1/2} = sqrt(de) sigma(x) sigma(xi) / sqrt(s), with the
    // engine's tracked sqrt; the overall branch is the engine convention.
    cplx sx = L.sigma(x);
    amp.A = [=, &L](cplx xi) {
      cplx tw = L.tilde_wp(xi);
      cplx f = gi.f_hk(xi);
      cplx fp = gi.d_f_hk(xi);
      cplx shift = tw - gi.lambda - cplx(k1) / gi.mu;
      cplx sum = 0.0;
      for (int j = 1; j <= 3; ++j)
        if (gi.l[j]) sum += double(gi.l[j]) / (2.0 * (L.wp(xi) - L.e(j)));
      cplx bracket = (cplx(k1) / de + shift * sum) * L.wp_prime(xi) * f + shift * fp;
      cplx prod = 1.0;
      for (int j = 1; j <= 3; ++j)
        if (gi.l[j]) prod *= std::pow(L.sqrt_wp_minus_e(j, xi), gi.l[j]);
      return bracket * prod * sqde * sx * L.sigma(xi) / (tw - gi.lambda);
    };
    // derivatives are not needed on this path; fill with plain x-partials
    amp.A_x = [=, &L](cplx xi) { return amp.A(xi) * L.zeta(x); };
    amp.A_xi = [](cplx) { return cplx(0); };
  } else {
    // integer exponent: no endpoint singularity; evaluate directly
    amp.A = [=, &L](cplx xi) { return general_integrand(xi, z, gi, L); };
    amp.A_x = [](cplx) { return cplx(0); };
    amp.A_xi = [](cplx) { return cplx(0); };
  }
  std::vector<cplx> extras;
  cplx lam_pt = L.e1() + de * gi.lambda;
  // the apparent point tw = lambda and the half-period poles of the products
  try {
    cplx ax = wp_inverse(lam_pt, L);
    extras.push_back(ax);
    extras.push_back(-ax);
  } catch (const Error&) {
  }
  for (int j = 1; j <= 3; ++j)
    if (gi.l[j] != 0) extras.push_back(L.omega(j));

  if (half) {
    ContourIntegrator ci(L, i, amp, extras, order);
    IntegralValue v = ci.evaluate(x, false);
    v.value *= mult;
    v.d1 = cplx(0);  // derivatives of this kernel are test-side stencils
    return v;
  }
  ContourIntegrator ci(L, i, amp, extras, order, 0.05, +1, false);
  IntegralValue v = ci.evaluate(x, false);
  v.value *= mult;
  v.d1 = cplx(0);
  return v;
}

cplx elliptic_w_integral(int j, cplx z, const PeriodLattice& L, int order) {
  cplx a = L.e(j), b = z;
  int n = order;
  std::vector<double> nus(n);
  for (int k = 1; k <= n; ++k) nus[k - 1] = std::cos((2.0 * k - 1.0) * kPi / (2.0 * n));
  std::sort(nus.begin(), nus.end());
  std::vector<cplx> ws(n);
  for (int k = 0; k < n; ++k) ws[k] = (a + b) / 2.0 + (b - a) / 2.0 * nus[k];
  auto quart = [&](cplx w) {
    return (w - z) * (w - L.e1()) * (w - L.e2()) * (w - L.e3());
  };
  auto step = [](cplx s, cplx prev) {
    cplx r = std::sqrt(s);
    return (std::abs(r - prev) <= std::abs(-r - prev)) ? r : -r;
  };
  std::vector<cplx> sq(n);
  int kmid = n / 2;
  cplx anchor = std::sqrt(quart((a + b) / 2.0));
  sq[kmid] = step(quart(ws[kmid]), anchor);
  for (int k = kmid + 1; k < n; ++k) sq[k] = step(quart(ws[k]), sq[k - 1]);
  for (int k = kmid; k-- > 0;) sq[k] = step(quart(ws[k]), sq[k + 1]);
  cplx acc = 0.0;
  for (int k = 0; k < n; ++k)
    acc += (kPi / n) * std::sqrt(1.0 - nus[k] * nus[k]) * ((b - a) / 2.0) / sq[k];
  return acc;
}

}  // namespace fuchsmc
