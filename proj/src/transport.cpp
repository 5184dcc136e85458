#include "fuchsmc/transport.hpp"

#include <algorithm>
#include <cmath>

namespace fuchsmc {

double segment_distance(cplx a, cplx b, cplx p) {
  cplx u = b - a;
  double L2 = std::norm(u);
  if (L2 < 1e-28) return std::abs(p - a);
  double tt = ((p - a).real() * u.real() + (p - a).imag() * u.imag()) / L2;
  tt = std::clamp(tt, 0.0, 1.0);
  return std::abs(a + tt * u - p);
}

double polyline_clearance(const std::vector<cplx>& way, const std::vector<cplx>& pts) {
  double worst = 1e300;
  for (size_t i = 0; i + 1 < way.size(); ++i)
    for (cplx p : pts)
      worst = std::min(worst, segment_distance(way[i], way[i + 1], p));
  return worst;
}

double winding_number(const std::vector<cplx>& way, cplx p) {
  double acc = 0.0;
  for (size_t i = 0; i + 1 < way.size(); ++i) {
    cplx u = way[i] - p, v = way[i + 1] - p;
    acc += std::arg(v / u);
  }
  return acc / (2.0 * kPi);
}

namespace {

void route_rec(cplx a, cplx b, const std::vector<cplx>& pts, double clearance,
               int depth, std::vector<cplx>& out) {
  std::vector<cplx> blockers;
  for (cplx p : pts)
    if (std::min(std::abs(p - a), std::abs(p - b)) > 1e-12) blockers.push_back(p);
  double worst = 1e300;
  cplx offender = 0.0;
  double off_t = 0.0;
  cplx u = b - a;
  for (cplx p : blockers) {
    double d = segment_distance(a, b, p);
    if (d < worst) {
      worst = d;
      offender = p;
      double L2 = std::norm(u);
      off_t = L2 < 1e-28 ? 0.0
                         : std::clamp(((p - a).real() * u.real() +
                                       (p - a).imag() * u.imag()) / L2, 0.0, 1.0);
    }
  }
  if (depth > 8 || worst >= clearance) {
    out.push_back(b);
    return;
  }
  cplx foot = a + off_t * u;
  cplx nrm = foot - offender;
  if (std::abs(nrm) < 1e-14) nrm = u * kI / std::abs(u);
  nrm /= std::abs(nrm);
  cplx mid = offender + nrm * 1.8 * clearance;
  route_rec(a, mid, pts, clearance, depth + 1, out);
  route_rec(mid, b, pts, clearance, depth + 1, out);
}

}  // namespace

std::vector<cplx> route_path(cplx a, cplx b, const std::vector<cplx>& points,
                             double clearance) {
  std::vector<cplx> out{a};
  route_rec(a, b, points, clearance, 0, out);
  return out;
}

PathPolyline loop_polyline(cplx base, cplx singularity, const std::vector<cplx>& others,
                           double radius_factor, double clearance_factor) {
  require(std::abs(base - singularity) > 1e-12, "LOOP_BASE",
          "base point coincides with the singularity");
  double dmin = 1e300;
  for (cplx p : others)
    if (std::abs(p - singularity) > 1e-12)
      dmin = std::min(dmin, std::abs(p - singularity));
  if (dmin > 1e299) dmin = std::abs(base - singularity);
  double r = radius_factor * dmin;
  double clearance = clearance_factor * dmin;
  require(r > 0, "LOOP_GEOMETRY", "no room for a loop around the singularity");

  cplx dir = (singularity - base) / std::abs(singularity - base);
  cplx approach = singularity - r * dir;

  std::vector<cplx> blockers;
  for (cplx p : others)
    if (std::abs(p - singularity) > 1e-12) blockers.push_back(p);
  std::vector<cplx> way = route_path(base, approach, blockers, clearance);

  PathPolyline path;
  path.waypoints = way;
  double th0 = std::arg(approach - singularity);
  const int n = 24;
  for (int k = 1; k <= n; ++k)
    path.waypoints.push_back(singularity +
                             r * std::exp(kI * (th0 + 2.0 * kPi * k / n)));
  for (size_t i = way.size() - 1; i-- > 0;) path.waypoints.push_back(way[i]);

  std::vector<cplx> all = blockers;
  all.push_back(singularity);
  path.clearance = polyline_clearance(path.waypoints, all);
  require(path.clearance > 0.02 * dmin, "LOOP_GEOMETRY",
          "requested clearance cannot be met");
  // certificate: winds once around the target, not around the rest
  require(std::abs(winding_number(path.waypoints, singularity) - 1.0) < 1e-6,
          "LOOP_WINDING", "loop does not wind once around the target");
  for (cplx p : blockers)
    require(std::abs(winding_number(path.waypoints, p)) < 1e-6, "LOOP_WINDING",
            "loop winds around a foreign singularity");
  return path;
}

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

Matrix2 continue_frame(const CoefficientFn& field, const PathPolyline& path,
                       const Matrix2& initial, double tol) {
  require(tol > 0, "TOL", "tolerance must be positive");
  Matrix2 W = initial;
  for (auto [za, zb] : path.segments()) {
    cplx dz = zb - za;
    double len = std::abs(dz);
    if (len < 1e-15) continue;
    auto rhs = [&](double s, const Matrix2& Y) -> Matrix2 {
      return dz * (field(za + s * dz) * Y);
    };
    double s = 0.0, h = 0.25;
    Matrix2 k1m = rhs(s, W);
    int steps = 0;
    while (s < 1.0) {
      if (s + h > 1.0) h = 1.0 - s;
      Matrix2 k2m = rhs(s + c2 * h, W + h * (a21 * k1m));
      Matrix2 k3m = rhs(s + c3 * h, W + h * (a31 * k1m + a32 * k2m));
      Matrix2 k4m = rhs(s + c4 * h, W + h * (a41 * k1m + a42 * k2m + a43 * k3m));
      Matrix2 k5m = rhs(s + c5 * h, W + h * (a51 * k1m + a52 * k2m + a53 * k3m + a54 * k4m));
      Matrix2 k6m = rhs(s + h, W + h * (a61 * k1m + a62 * k2m + a63 * k3m + a64 * k4m + a65 * k5m));
      Matrix2 Wn = W + h * (b1 * k1m + b3 * k3m + b4 * k4m + b5 * k5m + b6 * k6m);
      Matrix2 k7m = rhs(s + h, Wn);
      Matrix2 errm = h * (e1 * k1m + e3 * k3m + e4 * k4m + e5 * k5m + e6 * k6m + e7 * k7m);
      double sc = tol * (1.0 + W.cwiseAbs().maxCoeff());
      double err = errm.cwiseAbs().maxCoeff() / sc;
      if (err <= 1.0) {
        s += h;
        W = Wn;
        k1m = k7m;  // FSAL
      }
      double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
      h *= std::clamp(fac, 0.2, 5.0);
      if (h < 1e-13)
        throw Error("CONTINUATION_UNDERFLOW",
                    "step underflow near z = " + std::to_string((za + s * dz).real()) +
                        (std::to_string((za + s * dz).imag()) + "i"));
      if (++steps > 200000)
        throw Error("CONTINUATION_STEPS", "step budget exceeded on a segment");
    }
  }
  return W;
}

namespace {

MonodromyResult monodromy_loops(const CoefficientFn& field,
                                const std::vector<std::pair<std::string, cplx>>& sings,
                                const std::vector<cplx>& avoid, cplx base, double tol) {
  MonodromyResult out;
  out.base = base;
  out.frame = "identity frame at base";
  Matrix2 prod = Matrix2::Identity();
  for (auto& [name, s] : sings) {
    std::vector<cplx> others;
    for (cplx p : avoid)
      if (std::abs(p - s) > 1e-12) others.push_back(p);
    PathPolyline loop = loop_polyline(base, s, others);
    Matrix2 M = continue_frame(field, loop, Matrix2::Identity(), tol);
    out.loops[name] = M;
    prod = M * prod;  // path order: first listed loop acts first
    out.error_estimate = std::max(out.error_estimate, tol * 100.0);
  }
  out.loops["inf"] = prod.inverse();
  return out;
}

}  // namespace

MonodromyResult monodromy_group(const FuchsianSystem& sys, cplx base, double tol) {
  std::vector<cplx> sing = {0.0, 1.0, sys.t};
  for (cplx s : sing)
    require(std::abs(base - s) > 1e-10, "BASE_SINGULAR", "base point is singular");
  return monodromy_loops(system_field(sys),
                         {{"0", 0.0}, {"1", 1.0}, {"t", sys.t}}, sing, base, tol);
}

MonodromyResult monodromy_group(const SecondOrderODE& ode, cplx base, double tol) {
  std::vector<std::pair<std::string, cplx>> named;
  std::vector<cplx> avoid = ode.singularities;
  for (size_t i = 0; i < ode.singularities.size(); ++i)
    named.emplace_back("s" + std::to_string(i), ode.singularities[i]);
  for (cplx s : avoid)
    require(std::abs(base - s) > 1e-10, "BASE_SINGULAR", "base point is singular");
  return monodromy_loops(companion_field(ode), named, avoid, base, tol);
}

}  // namespace fuchsmc
