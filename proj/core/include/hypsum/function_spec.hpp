#pragma once

#include <optional>
#include <string>

#include "hypsum/set_s.hpp"

namespace hypsum {

enum class Family {
  id,           // f(n) = n
  reciprocal,   // f(n) = 1/n
  tau,          // divisor count
  log,          // f(n) = log n
  log_kappa,    // log of the squarefree kernel
  omega,        // distinct prime factors
  big_omega,    // prime factors with multiplicity
  power_log,    // f(n) = n^beta (log n)^delta
  general_s_eta // f_{S,eta}(n) = sum_{p|n} (log p)^eta #{nu <= nu_p(n): nu in S}
};

enum class Additivity { none, additive, completely_additive };

// Descriptor of an admissible arithmetic function: family, additivity class
// and the (beta, delta) growth pair gating the x(C_f log x + D_f) estimate
// (eligible iff beta < 1).
struct FunctionSpec {
  Family family = Family::id;
  SetS s = SetS::all();     // general_s_eta only
  double eta = 0.0;         // general_s_eta only, eta >= 0
  double beta = 0.0;        // power_log; derived for the named families
  double delta = 0.0;

  static FunctionSpec make(Family f);
  static FunctionSpec power_log(double beta, double delta);
  static FunctionSpec s_eta(SetS s, double eta);
  static FunctionSpec parse(const std::string& name);  // "omega", "tau", ...

  Additivity additivity() const;
  bool is_multiplicative() const;
  bool integer_valued() const;   // table kind
  bool eligible_main_term() const { return growth_beta() < 1.0; }

  // growth majorant |f(n)| <= growth_const * n^beta (log n)^delta for n >= 2,
  // with a concrete constant so truncation tails stay rigorous
  double growth_beta() const;
  double growth_delta() const;
  double growth_const() const;

  std::string key() const;   // canonical cache/display key
  bool operator==(const FunctionSpec& o) const = default;
};

}  // namespace hypsum
