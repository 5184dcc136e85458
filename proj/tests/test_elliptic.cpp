#include <doctest.h>

#include <random>

#include "fuchsmc/elliptic.hpp"

using namespace fuchsmc;

namespace {

std::mt19937_64 rng(20240917);

cplx rand_tau() {
  std::uniform_real_distribution<double> re(-0.8, 0.8), im(0.6, 1.8);
  return {re(rng), im(rng)};
}

cplx rand_cell_point(const PeriodLattice& L) {
  std::uniform_real_distribution<double> u(0.08, 0.92);
  for (;;) {
    cplx z = u(rng) * 2.0 * L.omega1() + u(rng) * 2.0 * L.omega3();
    if (!L.on_lattice(z, 1e-3)) return z;
  }
}

}  // namespace

TEST_CASE("legendre relation and wp differential equation") {
  for (int trial = 0; trial < 10; ++trial) {
    PeriodLattice L = lattice_from_tau(rand_tau());
    CHECK(std::abs(L.eta1() * L.omega3() - L.eta3() * L.omega1() - kI * kPi / 2.0) <
          1e-10);
    CHECK(std::abs(L.e1() + L.e2() + L.e3()) < 1e-10);
    for (int k = 0; k < 100; ++k) {
      cplx z = rand_cell_point(L);
      cplx w = L.wp(z);
      cplx lhs = L.wp_prime(z) * L.wp_prime(z);
      cplx rhs = 4.0 * (w - L.e1()) * (w - L.e2()) * (w - L.e3());
      CHECK(std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)) < 1e-9);
    }
  }
}

TEST_CASE("branch values sit at the half-periods") {
  PeriodLattice L = lattice_from_tau({0.3, 1.1});
  CHECK(std::abs(L.wp(L.omega1()) - L.e1()) < 1e-10);
  CHECK(std::abs(L.wp(L.omega2()) - L.e2()) < 1e-10);
  CHECK(std::abs(L.wp(L.omega3()) - L.e3()) < 1e-10);
}

TEST_CASE("sigma and zeta quasi-periodicity") {
  for (int trial = 0; trial < 4; ++trial) {
    PeriodLattice L = lattice_from_tau(rand_tau());
    for (int k = 0; k < 20; ++k) {
      cplx z = rand_cell_point(L);
      cplx lhs = L.sigma(z + 2.0 * L.omega1());
      cplx rhs = -L.sigma(z) * std::exp(2.0 * L.eta1() * (z + L.omega1()));
      CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-9);
      CHECK(std::abs(L.zeta(z + 2.0 * L.omega3()) - L.zeta(z) - 2.0 * L.eta3()) <
            1e-9 * (1.0 + std::abs(L.zeta(z))));
    }
  }
}

TEST_CASE("derivative chain sigma' / sigma'' / wp'") {
  PeriodLattice L = lattice_from_tau({0.25, 1.05});
  cplx z = rand_cell_point(L);
  double h = 1e-6;
  cplx fd = (L.sigma(z + h) - L.sigma(z - h)) / (2.0 * h);
  CHECK(std::abs(L.sigma_prime(z) - fd) < 1e-8);
  fd = (L.sigma_prime(z + h) - L.sigma_prime(z - h)) / (2.0 * h);
  CHECK(std::abs(L.sigma_second(z) - fd) < 1e-8);
  // sigma'' = sigma (zeta^2 - wp)
  CHECK(std::abs(L.sigma_second(z) -
                 L.sigma(z) * (L.zeta(z) * L.zeta(z) - L.wp(z))) < 1e-10);
  // wp' central difference, O(h^2): compare two step sizes
  cplx d1 = (L.wp(z + h) - L.wp(z - h)) / (2.0 * h);
  CHECK(std::abs(d1 - L.wp_prime(z)) < 1e-6 * (1.0 + std::abs(L.wp_prime(z))));
  // wp, zeta, sigma relations
  CHECK(std::abs(L.zeta(z) - L.sigma_prime(z) / L.sigma(z)) < 1e-10);
  CHECK(std::abs(L.wp_prime(z) + L.sigma(2.0 * z) / std::pow(L.sigma(z), 4)) /
            std::abs(L.wp_prime(z)) < 1e-9);
}

TEST_CASE("lemniscatic symmetry at tau = i") {
  PeriodLattice L = lattice_from_tau(cplx(0.0, 1.0));
  CHECK(std::abs(L.e2()) < 1e-12);
  CHECK(std::abs(L.e1() + L.e3()) < 1e-12);
  CHECK(std::abs(L.cross_ratio() - 2.0) < 1e-12);
}

TEST_CASE("lattice_from_t hits the requested cross ratio") {
  for (cplx t : {cplx(2.0, 0.0), cplx(0.5, 0.0), cplx(3.0, 1.0), cplx(-1.0, 0.0),
                 cplx(0.3, -0.8)}) {
    PeriodLattice L = lattice_from_t(t);
    CHECK(std::abs(L.cross_ratio() - t) < 1e-10 * std::max(1.0, std::abs(t)));
  }
  // round trip through a known lattice: e-multiset must match
  PeriodLattice L0 = lattice_from_tau({0.21, 1.3});
  PeriodLattice L1 = lattice_from_t(L0.cross_ratio());
  CHECK(std::abs(L1.cross_ratio() - L0.cross_ratio()) < 1e-10);
}

TEST_CASE("degenerate t and tau are rejected") {
  CHECK_THROWS_AS(lattice_from_t(cplx(0.0)), Error);
  CHECK_THROWS_AS(lattice_from_t(cplx(1.0)), Error);
  CHECK_THROWS_AS(lattice_from_tau(cplx(0.4, -0.2)), Error);
  PeriodLattice L = lattice_from_tau({0.1, 1.2});
  CHECK_THROWS_AS(L.wp(2.0 * L.omega1()), Error);
  CHECK_THROWS_AS(L.zeta(cplx(0.0)), Error);
}

TEST_CASE("tilde_wp normalization and inversion") {
  PeriodLattice L = lattice_from_tau({0.15, 1.22});
  cplx t = L.cross_ratio();
  CHECK(std::abs(L.tilde_wp(L.omega1())) < 1e-10);
  CHECK(std::abs(L.tilde_wp(L.omega2()) - 1.0) < 1e-10);
  CHECK(std::abs(L.tilde_wp(L.omega3()) - t) < 1e-10);
  cplx z = rand_cell_point(L);
  CHECK(std::abs(L.tilde_wp(z) - L.tilde_wp(-z)) < 1e-9 * (1.0 + std::abs(L.tilde_wp(z))));

  cplx target{2.0, 1.0};
  cplx x = tilde_wp_inverse(target, L);
  CHECK(std::abs(L.tilde_wp(x) - target) < 1e-10 * std::abs(target));
  cplx xm = tilde_wp_inverse(target, L, -1);
  CHECK(std::abs(L.tilde_wp(xm) - target) < 1e-10 * std::abs(target));
  CHECK(std::abs(x + xm) < 1e-9);  // the two sheets differ by reflection
}

TEST_CASE("cosigma squares to wp - e_j") {
  PeriodLattice L = lattice_from_tau({-0.2, 0.9});
  for (int j = 1; j <= 3; ++j) {
    cplx z = rand_cell_point(L);
    cplx s = L.sqrt_wp_minus_e(j, z);
    CHECK(std::abs(s * s - (L.wp(z) - L.e(j))) <
          1e-9 * (1.0 + std::abs(L.wp(z))));
  }
}

TEST_CASE("wp_inverse picks the sheet matching wp_prime") {
  PeriodLattice L = lattice_from_tau({0.3, 1.4});
  cplx z = rand_cell_point(L);
  cplx x = wp_inverse(L.wp(z), L, L.wp_prime(z));
  CHECK(std::abs(L.wp(x) - L.wp(z)) < 1e-9 * (1.0 + std::abs(L.wp(z))));
  CHECK(std::abs(L.wp_prime(x) - L.wp_prime(z)) <
        1e-7 * (1.0 + std::abs(L.wp_prime(z))));
}
