#include <doctest.h>

#include <random>

#include "tcm/polyroots.hpp"

using namespace tcm;

TEST_CASE("companion roots of a cubic with known roots") {
  // (x - 1)(x - 2)(x + 3) = x^3 - 7x + 6
  const auto r = poly_roots({6, -7, 0, 1});
  REQUIRE(r.size() == 3);
  CHECK(std::abs(r[0] - std::complex<double>(-3, 0)) < 1e-12);
  CHECK(std::abs(r[1] - std::complex<double>(1, 0)) < 1e-12);
  CHECK(std::abs(r[2] - std::complex<double>(2, 0)) < 1e-12);
}

TEST_CASE("sturm interval counting agrees with companion roots") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    Poly p(4);
    for (auto& c : p) c = coef(rng);
    if (std::abs(p[3]) < 0.1) p[3] = 0.5;
    const int sturm = sturm_count_interval(p, -1.0, 1.0);
    int direct = 0;
    for (const auto& r : poly_roots(p))
      if (std::abs(r.imag()) < 1e-9 && r.real() >= -1.0 && r.real() <= 1.0)
        ++direct;
    CHECK(sturm == direct);
  }
}

TEST_CASE("gcd degree detects multiplicities") {
  // (x-1)^2 (x+2) = x^3 - 3x + 2
  CHECK(gcd_degree_with_derivative({2, -3, 0, 1}) == 1);
  // square-free
  CHECK(gcd_degree_with_derivative({6, -7, 0, 1}) == 0);
  // (x^2+1)^2 = x^4 + 2x^2 + 1 : gcd degree 2
  CHECK(gcd_degree_with_derivative({1, 0, 2, 0, 1}) == 2);
}

TEST_CASE("multiplicity clustering") {
  // (x^2 - 2x + 2)^3: triple complex pair
  Poly q{2, -2, 1};
  Poly p = poly_mul(poly_mul(q, q), q);
  const auto m = root_multiplicities(p, 1e-4);
  REQUIRE(m.size() == 2);
  CHECK(m[0] == 3);
  CHECK(m[1] == 3);
}
