#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fuchsmc/fuchsian.hpp"
#include "fuchsmc/types.hpp"

namespace fuchsmc {

// Piecewise-linear path with a clearance certificate against a singularity set.
struct PathPolyline {
  std::vector<cplx> waypoints;
  double clearance = 0.0;  // minimum distance of any segment to the set

  std::vector<std::pair<cplx, cplx>> segments() const {
    std::vector<std::pair<cplx, cplx>> out;
    for (size_t i = 0; i + 1 < waypoints.size(); ++i)
      out.emplace_back(waypoints[i], waypoints[i + 1]);
    return out;
  }
};

double segment_distance(cplx a, cplx b, cplx p);
double polyline_clearance(const std::vector<cplx>& way, const std::vector<cplx>& pts);

// Total winding of the polyline (assumed closed) around `p`, by argument
// accumulation.
double winding_number(const std::vector<cplx>& way, cplx p);

// Polyline from a to b keeping `clearance` from every listed point (endpoints
// excepted); bends recursively away from the worst offender.
std::vector<cplx> route_path(cplx a, cplx b, const std::vector<cplx>& points,
                             double clearance);

// Simple anticlockwise loop based at `base` around exactly `singularity`,
// avoiding `others`.  radius_factor scales the circle radius relative to the
// distance from `singularity` to the nearest other point.
PathPolyline loop_polyline(cplx base, cplx singularity,
                           const std::vector<cplx>& others,
                           double radius_factor = 0.4,
                           double clearance_factor = 0.25);

// First-order 2x2 coefficient field z -> A(z).
using CoefficientFn = std::function<Matrix2(cplx)>;

inline CoefficientFn system_field(const FuchsianSystem& sys) {
  return [sys](cplx z) { return sys.eval(z); };
}
inline CoefficientFn companion_field(const SecondOrderODE& ode) {
  return [ode](cplx z) { return ode.companion(z); };
}

// Continuation of a solution frame along the path by an embedded adaptive
// Runge-Kutta 5(4) pair; local error controlled at `tol` (mixed abs/rel).
// Throws CONTINUATION_UNDERFLOW with the location on step failure.
Matrix2 continue_frame(const CoefficientFn& field, const PathPolyline& path,
                       const Matrix2& initial, double tol = 1e-10);

struct MonodromyResult {
  std::map<std::string, Matrix2> loops;  // keys "0", "1", "t", "inf", ...
  cplx base;
  std::string frame;
  double error_estimate = 0.0;
};

// Monodromy of the 2x2 system around z = 0, 1, t and the inverse-product
// loop at infinity, on the frame that is the identity at `base`.
MonodromyResult monodromy_group(const FuchsianSystem& sys, cplx base,
                                double tol = 1e-10);
// Same for a scalar equation (continued as its companion system); loops around
// every listed finite singularity.
MonodromyResult monodromy_group(const SecondOrderODE& ode, cplx base,
                                double tol = 1e-10);

}  // namespace fuchsmc
