#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hypsum/function_spec.hpp"
#include "hypsum/sieve.hpp"

namespace hypsum {

// Exact sum value: integer sums stay integer (i128), floating sums carry the
// compensated double.
struct ExactSum {
  bool integral = true;
  i128 ival = 0;
  double fval = 0.0;

  static ExactSum of_int(i128 v) { return {true, v, 0.0}; }
  static ExactSum of_real(double v) { return {false, 0, v}; }
  double as_double() const { return integral ? double(ival) : fval; }
  std::string to_string() const;
  bool operator==(const ExactSum& o) const {
    return integral == o.integral && (integral ? ival == o.ival : fval == o.fval);
  }
};

enum class GcdSumMethod { direct_table, via_2omega, via_tau };
enum class LcmSumMethod { direct_table, identity };
enum class RectKind { gcd, lcm, ratio };

enum class AuxSum {
  tau,
  two_pow_omega,
  omega,
  big_omega,
  jordan2,
  tau_squared,
  tau_log,        // sum tau(n) log n
  omega_tau,      // sum omega(n) tau(n)
  bigomega_tau,   // sum Omega(n) tau(n)
};
AuxSum parse_aux_sum(const std::string& name);

struct SummationConfig {
  u64 rectangular_cap = 100'000;
};

// Evaluates the summatory quantities at real x (floor semantics) off shared
// immutable prefix arrays; arrays are built lazily, kept for reuse across
// grid points, and lazy construction is serialized internally, so distinct
// grid points may be evaluated concurrently. Results are deterministic.
class Summator {
 public:
  explicit Summator(u64 n_max, SummationConfig cfg = {});

  u64 n_max() const { return n_max_; }
  const SummationConfig& config() const { return cfg_; }

  // sum_{mn<=x} f((m,n)); via_* loop d <= sqrt(x) against a prefix array,
  // direct_table accumulates a per-n convolute table built by Gf1.
  ExactSum sum_gcd_hyperbolic(const FunctionSpec& spec, double x,
                              GcdSumMethod method = GcdSumMethod::via_2omega);

  // sum_{mn<=x} f([m,n]); identity dispatches to psi*tau^2 for tau, the
  // additive relations for additive f, and the ac 2^omega(c) form for id.
  ExactSum sum_lcm_hyperbolic(const FunctionSpec& spec, double x,
                              LcmSumMethod method = LcmSumMethod::identity);

  // floating cross-route for f = id: sum_n n sum_{ab=n} 1/(a,b)
  double sum_lcm_id_via_reciprocal(double x);

  // sum over ordered pairs m, n <= x (triangular reduction; ratio goes
  // through (m,n)^2 = sum_{d | (m,n)} phi_2(d))
  ExactSum sum_rectangular(RectKind kind, double x);

  // sum_{mn<=x} (m,n)/[m,n] = sum_{d^2 c <= x} phi_2(d) tau(c)/(d^2 c)
  double sum_gcd_over_lcm_hyperbolic(double x);

  ExactSum summatory_auxiliary(AuxSum name, double x);

 private:
  u64 check_x(double x) const;
  u64 check_x_rect(double x) const;
  const FactorSieve* sieve();  // nullptr when construction is segmented

  const std::vector<i64>& iprefix(const std::string& key);
  const std::vector<double>& dprefix(const std::string& key);
  const ValueTable& f_small(const FunctionSpec& spec);   // f on 1..sqrt(n_max)
  const ValueTable& h_small(const FunctionSpec& spec);   // mu*f on 1..sqrt(n_max)
  const std::vector<i64>& int_full_prefix(const FunctionSpec& spec);
  const std::vector<double>& real_full_prefix(const FunctionSpec& spec);
  const std::vector<std::pair<u32, i64>>& psi_sparse();
  void ensure_rect_tables();

  ExactSum gcd_sum_weighted(const ValueTable& weights, const std::string& prefix_key, u64 y);
  i128 divisor_sum_int(const FunctionSpec& spec, u64 y);
  double divisor_sum_real(const FunctionSpec& spec, u64 y);

  u64 n_max_;
  SummationConfig cfg_;
  std::mutex build_mutex_;  // serializes lazy table construction
  std::optional<FactorSieve> fs_;
  std::map<std::string, std::vector<i64>> iprefix_;
  std::map<std::string, std::vector<double>> dprefix_;
  std::map<std::string, ValueTable> small_tables_;
  std::map<std::string, std::vector<i64>> int_full_prefix_;
  std::map<std::string, std::vector<double>> real_full_prefix_;
  std::vector<std::pair<u32, i64>> psi_sparse_;
  bool psi_sparse_built_ = false;
  std::vector<i64> jordan2_vals_;        // for the auxiliary scan
  std::vector<i128> rect_gcd_prefix_;    // prefix of Pillai (id * phi)
  std::vector<i128> rect_lcm_prefix_;    // prefix of triangular lcm sums
  std::vector<i64> rect_jordan2_;
  std::vector<double> rect_harmonic_;
  bool rect_built_ = false;
};

}  // namespace hypsum
