#pragma once

#include "hypsum/function_spec.hpp"
#include "hypsum/sieve.hpp"

namespace hypsum {

enum class ConvoluteSide { gcd, lcm };

enum class ConvoluteMethod {
  brute,              // divisor-pair enumeration
  gf1,                // sum_{a^2 b^2 c = n} f(a) mu(b) tau(c)
  gf2,                // sum_{a^2 c = n} (f*mu)(a) tau(c)
  gf3,                // sum_{a^2 c = n} f(a) 2^omega(c)
  lf1,                // sum_{a^2 b^2 c = n} f(n/a) mu(b) tau(c)
  lf2,                // sum_{a^2 c = n} f(ac) 2^omega(c)
  additive_relation,  // 2(f*1) - G_f, or f tau - G_f when completely additive
  psi_tau2,           // psi * tau^2 (tau only)
};
const char* convolute_method_name(ConvoluteMethod m);

// G_f(n) = sum_{ab=n} f((a,b)) or L_f(n) = sum_{ab=n} f([a,b]) on 1..n_max.
struct ConvoluteTable {
  FunctionSpec base_spec;
  ConvoluteSide side;
  ConvoluteMethod method;
  ValueTable table;
};

// Exact per-n value over ordered factorizations ab = n (divisors off the spf
// array, Euclid gcd). Integer results are exactly representable: n stays at
// desk scale so values are far below 2^53.
double gf_brute(const FunctionSpec& spec, u64 n, const FactorSieve& fs);
double lf_brute(const FunctionSpec& spec, u64 n, const FactorSieve& fs);

ConvoluteTable brute_table(ConvoluteSide side, const FunctionSpec& spec, u64 n_max,
                           const FactorSieve& fs);

ConvoluteTable gf_table_identity(const FunctionSpec& spec, u64 n_max, ConvoluteMethod which);
ConvoluteTable gf_table_identity(const FunctionSpec& spec, u64 n_max, ConvoluteMethod which,
                                 const FactorSieve& fs);
ConvoluteTable lf_table_identity(const FunctionSpec& spec, u64 n_max, ConvoluteMethod which);
ConvoluteTable lf_table_identity(const FunctionSpec& spec, u64 n_max, ConvoluteMethod which,
                                 const FactorSieve& fs);

// L_f from G_f: 2(f*1)(n) - G_f(n) for additive f, f(n) tau(n) - G_f(n)
// for completely additive f. Rejects additivity none.
ConvoluteTable lf_via_additive_relation(const FunctionSpec& spec, u64 n_max);
ConvoluteTable lf_via_additive_relation(const FunctionSpec& spec, u64 n_max,
                                        const FactorSieve& fs);

// L_tau = psi * tau^2, entrywise.
ConvoluteTable lf_tau_via_psi(u64 n_max);
ConvoluteTable lf_tau_via_psi(u64 n_max, const FactorSieve& fs);

// Both sides of sum_n G_f(n)/n^z = zeta^2(z)/zeta(2z) sum_n f(n)/n^{2z},
// truncated at n_terms, with rigorous truncation bounds. Absolutely
// convergent regime only; the tail machinery needs z > 3/2.
struct DirichletSeriesCheck {
  double lhs = 0.0;        // sum G_f(n)/n^z
  double lhs_bound = 0.0;
  double rhs = 0.0;        // zeta^2(z)/zeta(2z) * sum f(n)/n^{2z}
  double rhs_bound = 0.0;
  bool consistent() const {
    return std::abs(lhs - rhs) <= lhs_bound + rhs_bound;
  }
};
DirichletSeriesCheck dirichlet_series_check(const FunctionSpec& spec, double z, u64 n_terms);

// Same check against an arbitrary f table with a caller-supplied growth
// majorant |f(n)| <= growth_const n^beta (log n)^delta (n >= 2).
DirichletSeriesCheck dirichlet_series_check_table(const ValueTable& f, double growth_const,
                                                  double beta, double delta, double z);

}  // namespace hypsum
