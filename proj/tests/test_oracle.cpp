#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypsum/oracle.hpp"

using namespace hypsum;
using namespace hypsum::oracle;

TEST_CASE("brute hyperbolic examples") {
  FunctionSpec tau = FunctionSpec::make(Family::tau);
  CHECK(brute_hyperbolic(HyperbolicKind::gcd_f, tau, 4).ivalue == 9);
  CHECK(brute_hyperbolic(HyperbolicKind::gcd_f, tau, 1).ivalue == 1);

  FunctionSpec logf = FunctionSpec::make(Family::log);
  CHECK(brute_hyperbolic(HyperbolicKind::lcm_f, logf, 1).fvalue == 0.0);

  CHECK(brute_hyperbolic(HyperbolicKind::ratio, tau, 4).fvalue ==
        doctest::Approx(25.0 / 6.0).epsilon(1e-14));
  CHECK(brute_hyperbolic(HyperbolicKind::ratio, tau, 1).fvalue == doctest::Approx(1.0));
}

TEST_CASE("brute rectangular examples") {
  CHECK(brute_rectangular(RectangularKind::gcd, 2).ivalue == 5);
  CHECK(brute_rectangular(RectangularKind::lcm, 2).ivalue == 7);
  CHECK(brute_rectangular(RectangularKind::ratio, 1).fvalue == doctest::Approx(1.0));
}

TEST_CASE("brute convolute examples") {
  FunctionSpec tau = FunctionSpec::make(Family::tau);
  CHECK(brute_convolute(Side::gcd, tau, 4).ivalue == 4);
  CHECK(brute_convolute(Side::lcm, tau, 4).ivalue == 8);
  CHECK(brute_convolute(Side::lcm, tau, 1).ivalue == 1);
  FunctionSpec logf = FunctionSpec::make(Family::log);
  CHECK(brute_convolute(Side::gcd, logf, 1).fvalue == 0.0);
}

TEST_CASE("hyperbolic sum equals summed convolutes") {
  for (Family fam : {Family::tau, Family::omega, Family::id}) {
    FunctionSpec spec = FunctionSpec::make(fam);
    for (u64 x : {1ull, 7ull, 50ull, 200ull}) {
      i128 from_conv = 0;
      for (u64 n = 1; n <= x; ++n)
        from_conv += brute_convolute(Side::gcd, spec, n).ivalue;
      CHECK(brute_hyperbolic(HyperbolicKind::gcd_f, spec, x).ivalue == from_conv);
    }
  }
}

TEST_CASE("caps are hard") {
  FunctionSpec tau = FunctionSpec::make(Family::tau);
  CHECK_THROWS_AS(brute_hyperbolic(HyperbolicKind::gcd_f, tau, kHyperbolicCap + 1),
                  ResourceError);
  CHECK_THROWS_AS(brute_rectangular(RectangularKind::gcd, kRectangularCap + 1), ResourceError);
  CHECK_THROWS_AS(brute_convolute(Side::gcd, tau, kConvoluteCap + 1), ResourceError);
}

TEST_CASE("f evaluation by trial division") {
  CHECK(is_prime_u64(999983));
  CHECK(!is_prime_u64(999981));
  CHECK(f_value_int(FunctionSpec::make(Family::tau), 360) == 24);
  CHECK(f_value_int(FunctionSpec::make(Family::big_omega), 360) == 6);
  CHECK(f_value(FunctionSpec::make(Family::log_kappa), 12) ==
        doctest::Approx(std::log(6.0)).epsilon(1e-14));
  CHECK(f_value(FunctionSpec::s_eta(SetS({1, 3}, 5), 2.0), 8) ==
        doctest::Approx(2.0 * std::pow(std::log(2.0), 2.0)).epsilon(1e-14));
}
