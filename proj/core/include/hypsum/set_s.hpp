#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypsum/common.hpp"

namespace hypsum {

// Exponent set S with 1 in S: finitely many explicit members plus an optional
// cofinite tail "all nu >= t". Explicit entries never duplicate the tail.
class SetS {
 public:
  // explicit members; cofinite_from = t means every nu >= t is a member.
  SetS(std::vector<u64> explicit_members, std::optional<u64> cofinite_from);

  static SetS all();                 // S = N (cofinite from 1)
  static SetS single(u64 nu = 1);    // S = {nu}; default S = {1}
  static SetS parse(const std::string& text);  // "1,3,from:5" | "all" | "1"

  bool contains(u64 nu) const;
  u64 count_upto(u64 e) const;  // #{nu in S : 1 <= nu <= e}

  const std::vector<u64>& explicit_members() const { return explicit_; }
  std::optional<u64> cofinite_from() const { return cofinite_from_; }
  bool is_all() const { return explicit_.empty() && cofinite_from_ == 1; }
  bool is_single_one() const {
    return explicit_.size() == 1 && explicit_[0] == 1 && !cofinite_from_;
  }

  std::string to_string() const;  // canonical form, parse() round-trips
  bool operator==(const SetS& o) const = default;

 private:
  std::vector<u64> explicit_;          // sorted, all < cofinite_from_
  std::optional<u64> cofinite_from_;
};

}  // namespace hypsum
