#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hypsum/formula.hpp"
#include "hypsum/function_spec.hpp"

namespace hypsum {

enum class EstimateMethod {
  zeta_euler_maclaurin,
  prime_sum_direct,
  prime_sum_accelerated,
  euler_product,
  series_direct,
  composite,
  literal,
};
const char* estimate_method_name(EstimateMethod m);

// A numerical constant with a rigorous truncation bound. Two estimates of the
// same quantity must overlap within the sum of their bounds.
struct ConstantEstimate {
  std::string name;
  double value = 0.0;
  double error_bound = 0.0;
  EstimateMethod method = EstimateMethod::composite;

  Approx approx() const { return {value, error_bound}; }
  static ConstantEstimate from(std::string name, Approx a, EstimateMethod m) {
    return {std::move(name), a.value, a.bound, m};
  }
};

// Euler's constant as a 20-digit literal; recomputing it is out of scope.
ConstantEstimate euler_gamma();

enum class ZetaWant { value, first_derivative, second_derivative };

// Euler-Maclaurin evaluation, remainder bound included. s > 0, s != 1 for
// values; s > 1 for derivatives.
ConstantEstimate zeta(double s, ZetaWant want = ZetaWant::value);

enum class PrimeSumWeight {
  inv_p2,                // sum 1/p^2                  (C_omega)
  logp_over_p2m1,        // sum log p/(p^2-1)          (C_log)
  logp_over_p2,          // sum log p/p^2              (C_logkappa)
  log2p_over_p2,         // sum (log p)^2/p^2          (D_logkappa part)
  inv_p2m1,              // sum 1/(p^2-1)              (C_Omega)
  p2logp_over_p2m1_sq,   // sum p^2 log p/(p^2-1)^2    (D_Omega part)
  mertens_summand,       // sum log(1-1/p) + 1/p       (M - gamma)
  komega_summand,        // same series, K_omega form
  kbigomega_summand,     // sum log(1-1/p) + 1/(p-1)   (K_Omega part)
};
PrimeSumWeight parse_prime_sum_weight(const std::string& name);

inline constexpr u64 kDefaultPrimeSumPmax = 100'000'000;

// Direct sum over p <= p_max plus a tail from pi(t) <= 1.3 t/log t (t >= 17).
ConstantEstimate prime_sum(PrimeSumWeight w, u64 p_max);

// Zeta/prime-zeta route; bounds around 1e-12, the precision reference.
ConstantEstimate prime_sum_accelerated(PrimeSumWeight w);

// prime zeta P(s) = sum_p p^-s and log-weighted variants, all from log zeta
ConstantEstimate prime_zeta(double s);

// H_S(p) = sum_{nu in S} p^-2nu and K_S(p) = sum_{nu in S} nu p^-2nu,
// closed geometric forms for the cofinite tail.
std::pair<Approx, Approx> hs_ks(u64 p, const SetS& s);

// Rigorous upper bound for sum_{n>x} (log n)^delta / n^s (s > 1, x >= 20).
double tail_log_power(double x, double s, double delta);
// Rigorous upper bound for sum_{p>x} (log p)^eta / p^s (s > 1, x >= 20).
double tail_prime_sum(double x, double s, double eta);

enum class SeriesKind { plain, log_weighted };

// Partial sum of f(n)/n^2 (or f(n) log n/n^2) to n_terms plus a concrete
// truncation bound from the growth majorant; needs beta < 1.
ConstantEstimate series_direct(const FunctionSpec& spec, SeriesKind kind, u64 n_terms);

struct CfDf {
  ConstantEstimate c;
  ConstantEstimate d;
};

// x(C_f log x + D_f) coefficients by the zeta-series route
CfDf theorem22_constants(const FunctionSpec& spec, u64 n_terms = 1'000'000);
// ... and by the prime/(S, eta) route; needs one of the additive families
// driven by (S, eta)
CfDf theorem24_constants(const FunctionSpec& spec, u64 p_max = kDefaultPrimeSumPmax);

struct ConstantsOptions {
  u64 p_max = kDefaultPrimeSumPmax;
  u64 n_terms = 1'000'000;
  bool prefer_accelerated = true;
};

// Named constants for the CLI table and --check-paper. Names are keyed to
// the formula they belong to; several sources reuse C and C_1.
std::vector<ConstantEstimate> all_named_constants(const ConstantsOptions& opt = {});
ConstantEstimate named_constant(const std::string& name, const ConstantsOptions& opt = {});

// Every derivable coefficient of the formula's main term, in term order;
// fit_only lists coefficients only known to exist, left to the fitter.
struct FormulaConstants {
  std::vector<ConstantEstimate> derived;
  std::vector<std::string> fit_only;
};
FormulaConstants theorem_constants(const FormulaId& formula, const ConstantsOptions& opt = {});

// the six published decimals behind --check-paper
struct PrintedDecimal {
  const char* name;
  double printed;
};
std::vector<PrintedDecimal> printed_decimals();

}  // namespace hypsum
