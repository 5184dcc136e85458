#pragma once

#include <iosfwd>
#include <sstream>
#include <string>
#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>

namespace fuchsmc {

using Rat = boost::multiprecision::cpp_rational;

// Exact complex scalar over the Gaussian rationals.  Used for the exact-mode
// construction of residue matrices and the middle-convolution algebra, where
// identities like det A_i = 0 and the involution s2 o s2 = id are tested
// without floating error.
struct GaussRat {
  Rat re{0}, im{0};

  GaussRat() = default;
  GaussRat(long r) : re(r) {}
  GaussRat(Rat r) : re(std::move(r)) {}
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRat from_string(const std::string& r, const std::string& i = "0") {
    return GaussRat(Rat(r), Rat(i));
  }

  bool is_zero() const { return re == 0 && im == 0; }

  friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
    Rat n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  GaussRat& operator+=(const GaussRat& o) { return *this = *this + o; }
  GaussRat& operator-=(const GaussRat& o) { return *this = *this - o; }
  GaussRat& operator*=(const GaussRat& o) { return *this = *this * o; }
  GaussRat& operator/=(const GaussRat& o) { return *this = *this / o; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }

  std::string str() const {
    std::ostringstream os;
    os << re.str();
    if (im != 0) os << (im > 0 ? "+" : "") << im.str() << "i";
    return os.str();
  }
};

inline std::ostream& operator<<(std::ostream& os, const GaussRat& g) {
  return os << g.str();
}

// Zero tests used by the scalar-generic elimination routines.
inline bool scalar_is_zero(const GaussRat& v, double /*tol*/ = 0) { return v.is_zero(); }
inline bool scalar_is_zero(const std::complex<double>& v, double tol = 1e-10) {
  return std::abs(v) <= tol;
}
inline double scalar_mag(const GaussRat& v) {
  return std::abs(v.to_complex());
}
inline double scalar_mag(const std::complex<double>& v) { return std::abs(v); }

}  // namespace fuchsmc

namespace Eigen {
template <>
struct NumTraits<fuchsmc::GaussRat> {
  using Real = fuchsmc::GaussRat;
  using NonInteger = fuchsmc::GaussRat;
  using Literal = fuchsmc::GaussRat;
  using Nested = fuchsmc::GaussRat;
  enum {
    IsComplex = 1,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 30,
    MulCost = 60
  };
  static Real epsilon() { return Real(); }
  static Real dummy_precision() { return Real(); }
  static int digits10() { return 0; }
};
}  // namespace Eigen
