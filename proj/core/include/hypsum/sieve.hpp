#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "hypsum/function_spec.hpp"
#include "hypsum/value_table.hpp"

namespace hypsum {

// Exactly the primes in [2, n_max], ascending.
std::vector<u32> sieve_primes(u64 n_max);

// Streams primes in [lo, hi] segment by segment; memory stays O(sqrt(hi)).
void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& fn);

u64 isqrt(u64 n);

// Smallest-prime-factor decomposition for 2..n_max: spf[n] and low[n], the
// spf-power part of n (n = low[n] * m with spf(n) not dividing m).
class FactorSieve {
 public:
  explicit FactorSieve(u64 n_max);

  u64 n_max() const { return n_max_; }
  u32 spf(u64 n) const { return spf_[n]; }
  u32 low(u64 n) const { return low_[n]; }
  const std::vector<u32>& primes() const { return primes_; }

  // divisors of n, unordered
  std::vector<u64> divisors(u64 n) const;

 private:
  u64 n_max_;
  std::vector<u32> spf_;
  std::vector<u32> low_;
  std::vector<u32> primes_;
};

enum class StandardFunction {
  mu,
  tau,
  omega,
  big_omega,
  two_pow_omega,
  kappa,
  jordan2,
  psi,            // multiplicative, psi(p^nu) = (-1)^(nu-1) (nu-1)
  von_mangoldt,
  tau_squared,
};

StandardFunction parse_standard_function(const std::string& name);
const char* standard_function_name(StandardFunction f);

struct SieveConfig {
  // above this many entries construction goes through fixed-size segments
  // instead of a whole-range spf array
  u64 segmented_threshold = u64(1) << 25;
  u64 segment_size = u64(1) << 20;
};
SieveConfig& sieve_config();

ValueTable sieve_standard(StandardFunction name, u64 n_max);
ValueTable build_f_table(const FunctionSpec& spec, u64 n_max);
ValueTable build_h_table(const FunctionSpec& spec, u64 n_max);  // mu * f

// Reuses an existing factor sieve covering n_max (linear path only).
ValueTable sieve_standard(StandardFunction name, u64 n_max, const FactorSieve& fs);
ValueTable build_f_table(const FunctionSpec& spec, u64 n_max, const FactorSieve& fs);
ValueTable build_h_table(const FunctionSpec& spec, u64 n_max, const FactorSieve& fs);

// (f*g)(n) = sum_{de=n} f(d) g(e), O(n log n); integer inputs stay exact and
// overflow-checked, anything else accumulates in double.
ValueTable dirichlet_convolve(const ValueTable& f, const ValueTable& g);

}  // namespace hypsum
