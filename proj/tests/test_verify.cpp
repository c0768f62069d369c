#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <thread>

#include "hypsum/verify.hpp"

using namespace hypsum;

namespace {
ConstantsOptions fast_opts() {
  ConstantsOptions o;
  o.p_max = 200'000;
  o.n_terms = 200'000;
  return o;
}
}  // namespace

TEST_CASE("envelope evaluation") {
  CHECK(envelope_eval({EnvelopeSpec::Form::sqrt_x, 0, 0}, 1e4, 0.2) == doctest::Approx(100.0));
  CHECK(envelope_eval({EnvelopeSpec::Form::log_pow, 0, 2}, std::exp(3.0), 0.2) ==
        doctest::Approx(9.0));
  CHECK(envelope_eval({EnvelopeSpec::Form::x_pow, 0.4, 0}, 1e5, 0.2) ==
        doctest::Approx(std::pow(1e5, 0.4)));
  CHECK_THROWS_AS(envelope_eval({EnvelopeSpec::Form::sqrt_x_lambda, 0, 0}, 2.0, 0.2),
                  UsageError);

  // lambda(x) decreasing on [10, 1e8] for c = 0.2
  double prev = lambda_factor(10.0, 0.2);
  for (double x = 20; x <= 1e8; x *= 2.3) {
    double v = lambda_factor(x, 0.2);
    CHECK(v < prev);
    prev = v;
  }
  // x^eps lambda(x) increasing for eps = 0.05 and small c
  prev = 0.0;
  for (double x = 10; x <= 1e8; x *= 2.3) {
    double v = std::pow(x, 0.05) * lambda_factor(x, 0.02);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("main_term exact coefficient: rect_ratio at 100 is 300") {
  MainTermModel m = model_for(FormulaId{FormulaTag::rect_ratio, {}}, fast_opts());
  MainTermValue v = main_term(m, 100.0);
  CHECK(v.value == 300.0);
  CHECK(v.bound == 0.0);
}

TEST_CASE("main_term rejects unfit models; monotone for x >= 100") {
  MainTermModel fitm = model_for(FormulaId{FormulaTag::hyp_gcd_id, {}}, fast_opts());
  CHECK(fitm.has_fit_parameters());
  CHECK_THROWS_AS(main_term(fitm, 1000.0), UsageError);

  for (FormulaTag tag : {FormulaTag::tau_gcd, FormulaTag::omega_gcd, FormulaTag::recip_gcd,
                         FormulaTag::lcm_hyp, FormulaTag::aux_tau}) {
    MainTermModel m = model_for(FormulaId{tag, {}}, fast_opts());
    double prev = main_term(m, 100.0).value;
    for (double x = 130; x < 1e6; x *= 1.3) {
      double v = main_term(m, x).value;
      REQUIRE(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("growth exponent on synthetic data") {
  ResidualReport r;
  r.formula = FormulaId{FormulaTag::tau_gcd, {}};
  for (double x = 1e3; x <= 1e7; x *= 2.0) {
    r.grid.push_back(x);
    r.residual.push_back(std::sqrt(x));
  }
  auto slope = growth_exponent(r);
  REQUIRE(slope.has_value());
  CHECK(*slope == doctest::Approx(0.5).epsilon(0.01));

  // identically zero residuals: undefined
  for (auto& v : r.residual) v = 0.0;
  CHECK(!growth_exponent(r).has_value());
}

TEST_CASE("residual_scan is deterministic and sane for tau_gcd") {
  Summator sums(200'000);
  MainTermModel m = model_for(FormulaId{FormulaTag::tau_gcd, {}}, fast_opts());
  auto grid = geometric_grid(1e3, 2e5, 8);
  ResidualReport a = residual_scan(sums, m, grid);
  ResidualReport b = residual_scan(sums, m, grid);
  REQUIRE(a.grid.size() == grid.size());
  for (size_t i = 0; i < a.grid.size(); ++i) {
    REQUIRE(a.exact[i] == b.exact[i]);
    REQUIRE(a.residual[i] == b.residual[i]);
    REQUIRE(a.normalized[i] == b.normalized[i]);
    CHECK(std::isfinite(a.normalized[i]));
  }
  CHECK(a.sup_normalized > 0.0);
  CHECK(a.sup_normalized < 10.0);  // tau_gcd residual is well below sqrt(x)
  // constants error contribution far below the residual scale
  for (size_t i = 0; i < a.grid.size(); ++i)
    CHECK(a.coeff_error[i] < 0.01 * std::max(1.0, std::abs(a.residual[i])));
  std::vector<double> short_grid = {1e3, 2e3, 4e3};
  CHECK_THROWS_AS(residual_scan(sums, m, short_grid), UsageError);
}

TEST_CASE("fit recovers known coefficients") {
  // aux_tau with both coefficients freed: x log x + (2 gamma - 1) x
  MainTermModel m2 = model_for(FormulaId{FormulaTag::aux_tau, {}}, fast_opts());
  MainTermModel free = m2;
  for (auto& t : free.terms) t.coefficient = std::nullopt;
  Summator sums2(3'000'000);
  auto grid = geometric_grid(1e4, 3e6, 14);
  FitOutcome fit = fit_parameters(sums2, free, grid);
  REQUIRE(fit.values.size() == 2);
  CHECK(fit.values[0] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(fit.values[1] == doctest::Approx(2.0 * 0.5772156649 - 1.0).epsilon(2e-2));

  // single-parameter variant: keep x log x fixed, fit the x coefficient
  MainTermModel one = m2;
  one.terms[1].coefficient = std::nullopt;
  FitOutcome f1 = fit_parameters(sums2, one, grid);
  REQUIRE(f1.values.size() == 1);
  CHECK(f1.values[0] == doctest::Approx(2.0 * 0.5772156649 - 1.0).epsilon(2e-2));

  // residual_scan accepts external fit values
  ResidualReport r = residual_scan(sums2, one, grid, f1.values, 0.2);
  CHECK(r.grid.size() == grid.size());
}

TEST_CASE("fit conditioning error on a degenerate grid") {
  Summator sums(2000);
  MainTermModel free = model_for(FormulaId{FormulaTag::aux_tau, {}}, fast_opts());
  for (auto& t : free.terms) t.coefficient = std::nullopt;
  std::vector<double> degenerate = {1000, 1000, 1000, 1000};
  CHECK_THROWS_AS(fit_parameters(sums, free, degenerate), UsageError);
}

TEST_CASE("formula_exact dispatch matches the summation module") {
  SummationConfig cfg;
  cfg.rectangular_cap = 2000;
  Summator sums(20'000, cfg);
  CHECK(formula_exact(sums, FormulaId{FormulaTag::aux_tau, {}}, 6).ival == 14);
  CHECK(formula_exact(sums, FormulaId{FormulaTag::rect_gcd, {}}, 2).ival == 5);
  CHECK(formula_exact(sums, FormulaId{FormulaTag::tau_gcd, {}}, 4).ival == 9);
  CHECK(formula_exact(sums, FormulaId{FormulaTag::tau_lcm, {}}, 4).ival == 17);
  CHECK(formula_exact(sums, FormulaId{FormulaTag::ratio_hyp, {}}, 4).fval ==
        doctest::Approx(25.0 / 6.0));
  FormulaId gen{FormulaTag::generic_gcd, FunctionSpec::make(Family::omega)};
  CHECK(formula_exact(sums, gen, 1000).ival ==
        formula_exact(sums, FormulaId{FormulaTag::omega_gcd, {}}, 1000).ival);
}

TEST_CASE("model coefficients match the theorem_constants view") {
  for (const char* name : {"tau_gcd", "omega_gcd", "log_lcm", "tau_lcm", "gcd_hyp_id"}) {
    FormulaId id = FormulaId::parse(name);
    MainTermModel m = model_for(id, fast_opts());
    FormulaConstants fc = theorem_constants(id, fast_opts());
    CHECK(fc.derived.size() + fc.fit_only.size() == m.terms.size());
    CHECK(fc.fit_only.size() == m.fit_count());
  }
}

TEST_CASE("csv report carries the frozen schema") {
  Summator sums(100'000);
  MainTermModel m = model_for(FormulaId{FormulaTag::omega_gcd, {}}, fast_opts());
  ResidualReport r = residual_scan(sums, m, geometric_grid(1e3, 1e5, 6));
  std::string csv = report_csv(r, m);
  CHECK(csv.find("x,exact,main,residual,envelope,normalized") != std::string::npos);
  CHECK(csv.find("hypsum") != std::string::npos);   // version line
  CHECK(csv.find("omega_gcd") != std::string::npos);
}

TEST_CASE("summatory curves are monotone for nonnegative summands") {
  Summator sums(50'000);
  auto grid = geometric_grid(1e1, 5e4, 9);
  for (FormulaTag tag : {FormulaTag::tau_gcd, FormulaTag::tau_lcm, FormulaTag::ratio_hyp,
                         FormulaTag::aux_2omega}) {
    SummatoryCurve c = evaluate_curve(sums, FormulaId{tag, {}}, grid);
    CHECK(c.exact.size() == grid.size());
    CHECK(c.is_monotone());
  }
}

TEST_CASE("concurrent grid evaluation over one summator") {
  Summator sums(200'000);
  auto grid = geometric_grid(1e3, 2e5, 10);
  // reference pass, single-threaded
  std::vector<i128> ref;
  for (double x : grid)
    ref.push_back(sums.sum_gcd_hyperbolic(FunctionSpec::make(Family::tau), x).ival);

  Summator fresh(200'000);
  std::vector<i128> got(grid.size());
  std::vector<std::thread> workers;
  for (int t = 0; t < 4; ++t)
    workers.emplace_back([&, t] {
      for (size_t i = t; i < grid.size(); i += 4)
        got[i] = fresh.sum_gcd_hyperbolic(FunctionSpec::make(Family::tau), grid[i]).ival;
    });
  for (auto& w : workers) w.join();
  for (size_t i = 0; i < grid.size(); ++i) REQUIRE(got[i] == ref[i]);
}

TEST_CASE("geometric grid endpoints") {
  auto g = geometric_grid(1e3, 1e7, 12);
  CHECK(g.size() == 12);
  CHECK(g.front() == 1000);
  CHECK(g.back() == 10'000'000);
  for (size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
}
