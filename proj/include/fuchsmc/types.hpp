#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <Eigen/Dense>

namespace fuchsmc {

using cplx = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Matrix6 = Eigen::Matrix<cplx, 6, 6>;
using Vector6 = Eigen::Matrix<cplx, 6, 1>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline const cplx kI{0.0, 1.0};

// Error taxonomy used across modules; `code` is machine readable and surfaces
// through the CLI JSON output.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

inline void require(bool cond, const char* code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}

}  // namespace fuchsmc
