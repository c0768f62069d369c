#pragma once

#include <optional>
#include <string>

#include "hypsum/function_spec.hpp"

namespace hypsum {

// One tag per displayed asymptotic formula under verification.
enum class FormulaTag {
  rect_gcd,       // sum_{m,n<=x} (m,n)
  hyp_gcd_id,     // sum_{mn<=x} (m,n)
  rect_lcm,       // sum_{m,n<=x} [m,n]
  rect_ratio,     // sum_{m,n<=x} (m,n)/[m,n]
  tau_gcd,        // sum_{mn<=x} tau((m,n))
  generic_gcd,    // sum_{mn<=x} f((m,n)) for a caller-chosen f
  recip_gcd,      // sum_{mn<=x} 1/(m,n)
  fseta_gcd,      // sum_{mn<=x} f_{S,eta}((m,n))
  log_gcd,
  logkappa_gcd,
  omega_gcd,
  bigomega_gcd,
  lcm_hyp,        // sum_{mn<=x} [m,n]
  log_lcm,
  omega_lcm,
  bigomega_lcm,
  tau_lcm,
  ratio_hyp,      // sum_{mn<=x} (m,n)/[m,n]
  aux_2omega,     // sum_{n<=x} 2^omega(n)
  aux_tau,        // sum_{n<=x} tau(n)
};

struct FormulaId {
  FormulaTag tag = FormulaTag::tau_gcd;
  std::optional<FunctionSpec> spec;  // generic_gcd / fseta_gcd carry the f

  static FormulaId parse(const std::string& name);
  std::string name() const;
  bool operator==(const FormulaId& o) const = default;
};

std::vector<std::string> all_formula_names();

}  // namespace hypsum
