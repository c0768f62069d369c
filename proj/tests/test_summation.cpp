#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hypsum/oracle.hpp"
#include "hypsum/summation.hpp"

using namespace hypsum;

TEST_CASE("gcd-side examples and x = 1") {
  Summator sums(10'000);
  FunctionSpec tau = FunctionSpec::make(Family::tau);
  CHECK(sums.sum_gcd_hyperbolic(tau, 4).ival == 9);
  CHECK(sums.sum_gcd_hyperbolic(tau, 1).ival == 1);
  CHECK(sums.sum_gcd_hyperbolic(FunctionSpec::make(Family::omega), 1).ival == 0);
  CHECK(sums.sum_gcd_hyperbolic(FunctionSpec::make(Family::log), 1).fval == 0.0);
  // floor semantics
  CHECK(sums.sum_gcd_hyperbolic(tau, 4.9).ival == 9);
  CHECK_THROWS_AS(sums.sum_gcd_hyperbolic(tau, 0.5), UsageError);
  CHECK_THROWS_AS(sums.sum_gcd_hyperbolic(tau, 1e9), ResourceError);
}

TEST_CASE("all gcd methods agree exactly on integer specs") {
  Summator sums(100'000);
  for (Family fam : {Family::id, Family::tau, Family::omega, Family::big_omega}) {
    FunctionSpec spec = FunctionSpec::make(fam);
    for (double x : {1e3, 1e4, 1e5}) {
      ExactSum a = sums.sum_gcd_hyperbolic(spec, x, GcdSumMethod::via_2omega);
      ExactSum b = sums.sum_gcd_hyperbolic(spec, x, GcdSumMethod::via_tau);
      ExactSum c = sums.sum_gcd_hyperbolic(spec, x, GcdSumMethod::direct_table);
      REQUIRE(a == b);
      REQUIRE(a == c);
    }
    ExactSum o = sums.sum_gcd_hyperbolic(spec, 20'000, GcdSumMethod::via_2omega);
    CHECK(o.ival == oracle::brute_hyperbolic(oracle::HyperbolicKind::gcd_f, spec, 20'000).ivalue);
  }
}

TEST_CASE("gcd methods agree to 1e-12 on floating specs") {
  Summator sums(100'000);
  for (Family fam : {Family::log, Family::log_kappa, Family::reciprocal}) {
    FunctionSpec spec = FunctionSpec::make(fam);
    for (double x : {1e3, 1e4, 1e5}) {
      double a = sums.sum_gcd_hyperbolic(spec, x, GcdSumMethod::via_2omega).fval;
      double b = sums.sum_gcd_hyperbolic(spec, x, GcdSumMethod::via_tau).fval;
      double c = sums.sum_gcd_hyperbolic(spec, x, GcdSumMethod::direct_table).fval;
      REQUIRE(b == doctest::Approx(a).epsilon(1e-12));
      REQUIRE(c == doctest::Approx(a).epsilon(1e-12));
    }
  }
}

TEST_CASE("lcm-side examples and identity dispatch") {
  Summator sums(50'000);
  FunctionSpec tau = FunctionSpec::make(Family::tau);
  CHECK(sums.sum_lcm_hyperbolic(tau, 4).ival == 17);
  CHECK(sums.sum_lcm_hyperbolic(FunctionSpec::make(Family::log), 1).fval == 0.0);

  for (Family fam : {Family::id, Family::tau, Family::omega, Family::big_omega}) {
    FunctionSpec spec = FunctionSpec::make(fam);
    for (double x : {1e3, 1e4, 5e4}) {
      ExactSum ident = sums.sum_lcm_hyperbolic(spec, x, LcmSumMethod::identity);
      ExactSum table = sums.sum_lcm_hyperbolic(spec, x, LcmSumMethod::direct_table);
      REQUIRE(ident == table);
    }
    ExactSum o = sums.sum_lcm_hyperbolic(spec, 10'000);
    CHECK(o.ival == oracle::brute_hyperbolic(oracle::HyperbolicKind::lcm_f, spec, 10'000).ivalue);
  }
  for (Family fam : {Family::log, Family::log_kappa}) {
    FunctionSpec spec = FunctionSpec::make(fam);
    for (double x : {1e3, 1e4}) {
      double ident = sums.sum_lcm_hyperbolic(spec, x, LcmSumMethod::identity).fval;
      double table = sums.sum_lcm_hyperbolic(spec, x, LcmSumMethod::direct_table).fval;
      REQUIRE(ident == doctest::Approx(table).epsilon(1e-12));
    }
  }
}

TEST_CASE("lcm of id: exact route vs n G_{1/n} floating route") {
  Summator sums(10'000);
  FunctionSpec id = FunctionSpec::make(Family::id);
  ExactSum exact = sums.sum_lcm_hyperbolic(id, 1e4);
  double recip_route = sums.sum_lcm_id_via_reciprocal(1e4);
  CHECK(double(exact.ival) == doctest::Approx(recip_route).epsilon(1e-12));
}

TEST_CASE("rectangular sums") {
  SummationConfig cfg;
  cfg.rectangular_cap = 3000;
  Summator sums(3000, cfg);
  CHECK(sums.sum_rectangular(RectKind::gcd, 2).ival == 5);
  CHECK(sums.sum_rectangular(RectKind::lcm, 2).ival == 7);
  CHECK(sums.sum_rectangular(RectKind::ratio, 1).fval == doctest::Approx(1.0));

  // symmetry reduction equals the naive double loop, exhaustively to 500
  for (u64 x = 1; x <= 500; ++x) {
    REQUIRE(sums.sum_rectangular(RectKind::gcd, double(x)).ival ==
            oracle::brute_rectangular(oracle::RectangularKind::gcd, x).ivalue);
    REQUIRE(sums.sum_rectangular(RectKind::lcm, double(x)).ival ==
            oracle::brute_rectangular(oracle::RectangularKind::lcm, x).ivalue);
  }
  for (u64 x : {1ull, 7ull, 100ull, 499ull}) {
    CHECK(sums.sum_rectangular(RectKind::ratio, double(x)).fval ==
          doctest::Approx(oracle::brute_rectangular(oracle::RectangularKind::ratio, x).fvalue)
              .epsilon(1e-12));
  }
  CHECK_THROWS_AS(sums.sum_rectangular(RectKind::gcd, 5000), ResourceError);
}

TEST_CASE("hyperbolic ratio sum") {
  Summator sums(10'000);
  CHECK(sums.sum_gcd_over_lcm_hyperbolic(1) == doctest::Approx(1.0));
  CHECK(sums.sum_gcd_over_lcm_hyperbolic(4) == doctest::Approx(25.0 / 6.0).epsilon(1e-14));
  for (u64 x : {100ull, 1000ull, 10000ull}) {
    double o = oracle::brute_hyperbolic(oracle::HyperbolicKind::ratio,
                                        FunctionSpec::make(Family::id), x)
                   .fvalue;
    CHECK(sums.sum_gcd_over_lcm_hyperbolic(double(x)) == doctest::Approx(o).epsilon(1e-12));
  }
}

TEST_CASE("auxiliary summatories") {
  Summator sums(100'000);
  CHECK(sums.summatory_auxiliary(AuxSum::tau, 6).ival == 14);
  CHECK(sums.summatory_auxiliary(AuxSum::omega, 1).ival == 0);

  // omega([m,n]) summed hyperbolically equals sum omega(n) tau(n)
  FunctionSpec om = FunctionSpec::make(Family::omega);
  for (double x : {100.0, 5931.0, 100000.0}) {
    CHECK(sums.sum_lcm_hyperbolic(om, x).ival ==
          sums.summatory_auxiliary(AuxSum::omega_tau, x).ival);
  }

  // jordan2: phi_2 over n <= 10 is 1,3,8,12,24,24,48,48,72,72 -> 312
  CHECK(sums.summatory_auxiliary(AuxSum::jordan2, 10).ival == 312);

  // tau_log against a direct recompute
  ValueTable tau = sieve_standard(StandardFunction::tau, 2000);
  double direct = 0.0;
  for (u64 n = 1; n <= 2000; ++n) direct += double(tau.at_int(n)) * std::log(double(n));
  CHECK(sums.summatory_auxiliary(AuxSum::tau_log, 2000).fval ==
        doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("monotonicity of nonnegative-summand curves") {
  Summator sums(20'000);
  FunctionSpec tau = FunctionSpec::make(Family::tau);
  i128 prev_gcd = 0, prev_lcm = 0;
  double prev_ratio = 0.0;
  for (double x = 1; x <= 20'000; x *= 1.7) {
    i128 g = sums.sum_gcd_hyperbolic(tau, x).ival;
    i128 l = sums.sum_lcm_hyperbolic(tau, x).ival;
    double r = sums.sum_gcd_over_lcm_hyperbolic(x);
    REQUIRE(g >= prev_gcd);
    REQUIRE(l >= prev_lcm);
    REQUIRE(r >= prev_ratio);
    prev_gcd = g;
    prev_lcm = l;
    prev_ratio = r;
  }
}

TEST_CASE("compensated accumulation matches long double reference") {
  Summator sums(100'000);
  FunctionSpec logf = FunctionSpec::make(Family::log);
  double fast = sums.sum_gcd_hyperbolic(logf, 1e5).fval;
  // reference: long double accumulation over the Gf3 identity
  ValueTable f = build_f_table(logf, 316);
  ValueTable two = sieve_standard(StandardFunction::two_pow_omega, 100'000);
  long double ref = 0.0L;
  for (u64 d = 1; d * d <= 100'000; ++d) {
    long double inner = 0.0L;
    for (u64 c = 1; c <= 100'000 / (d * d); ++c) inner += (long double)two.at_int(c);
    ref += (long double)f.at(d) * inner;
  }
  CHECK(fast == doctest::Approx(double(ref)).epsilon(1e-13));
}

TEST_CASE("general s_eta specs run through both sides") {
  Summator sums(20'000);
  FunctionSpec spec = FunctionSpec::s_eta(SetS({1, 3}, 5), 2.0);
  double g2 = sums.sum_gcd_hyperbolic(spec, 2e4, GcdSumMethod::via_2omega).fval;
  double gt = sums.sum_gcd_hyperbolic(spec, 2e4, GcdSumMethod::via_tau).fval;
  CHECK(g2 == doctest::Approx(gt).epsilon(1e-12));
  double ident = sums.sum_lcm_hyperbolic(spec, 2e4, LcmSumMethod::identity).fval;
  double table = sums.sum_lcm_hyperbolic(spec, 2e4, LcmSumMethod::direct_table).fval;
  CHECK(ident == doctest::Approx(table).epsilon(1e-12));
}
