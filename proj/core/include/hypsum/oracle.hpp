#pragma once

#include <string>
#include <vector>

#include "hypsum/function_spec.hpp"

namespace hypsum::oracle {

// Brute-force references used by tests and --oracle spot checks. Everything
// here works from trial division and Euclid only; nothing is shared with the
// sieve or the convolute identities.

struct OracleResult {
  std::string quantity;
  u64 argument = 0;
  bool integral = true;
  i128 ivalue = 0;
  double fvalue = 0.0;

  double as_double() const { return integral ? double(ivalue) : fvalue; }
};

inline constexpr u64 kHyperbolicCap = 1'000'000;     // O(x log x) pairs
inline constexpr u64 kRectangularCap = 3'000;        // O(x^2) pairs
inline constexpr u64 kConvoluteCap = 10'000'000;

u64 gcd_u64(u64 a, u64 b);
u64 lcm_u64(u64 a, u64 b);
bool is_prime_u64(u64 n);
std::vector<std::pair<u64, int>> factorize(u64 n);

// f evaluated at one point from its own factorization
double f_value(const FunctionSpec& spec, u64 n);
i64 f_value_int(const FunctionSpec& spec, u64 n);

enum class HyperbolicKind { gcd_f, lcm_f, ratio };
enum class RectangularKind { gcd, lcm, ratio };
enum class Side { gcd, lcm };

OracleResult brute_hyperbolic(HyperbolicKind kind, const FunctionSpec& spec, u64 x);
OracleResult brute_rectangular(RectangularKind kind, u64 x);
OracleResult brute_convolute(Side side, const FunctionSpec& spec, u64 n);

}  // namespace hypsum::oracle
