#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hypsum/common.hpp"

namespace hypsum {

enum class TableKind : std::uint8_t { integer_exact = 0, floating = 1 };

// Values of one arithmetic function on 1..n_max. Integer tables are exact
// int64 and construction fails loudly on overflow; floating tables are double.
// Immutable after construction (all accessors const).
class ValueTable {
 public:
  ValueTable(u64 n_max, TableKind kind);

  u64 n_max() const { return n_max_; }
  TableKind kind() const { return kind_; }
  bool is_integer() const { return kind_ == TableKind::integer_exact; }

  i64 at_int(u64 n) const {
    check_index(n);
    return ivals_[n];
  }
  double at(u64 n) const {
    check_index(n);
    return is_integer() ? static_cast<double>(ivals_[n]) : fvals_[n];
  }

  void set_int(u64 n, i64 v) {
    check_index(n);
    ivals_[n] = v;
  }
  void set_real(u64 n, double v) {
    check_index(n);
    fvals_[n] = v;
  }

  const std::vector<i64>& ints() const { return ivals_; }
  const std::vector<double>& reals() const { return fvals_; }
  std::vector<i64>& ints() { return ivals_; }
  std::vector<double>& reals() { return fvals_; }

  // Little-endian dump/load, header {magic "HSVT", version u32, n_max u64,
  // kind u8} then raw values; the CLI cache speaks this format.
  void dump(std::ostream& os) const;
  static ValueTable load(std::istream& is);
  void dump_file(const std::string& path) const;
  static ValueTable load_file(const std::string& path);

 private:
  void check_index(u64 n) const {
    if (n < 1 || n > n_max_)
      throw UsageError("ValueTable index out of range");
  }

  u64 n_max_;
  TableKind kind_;
  std::vector<i64> ivals_;    // index 0 unused
  std::vector<double> fvals_;
};

}  // namespace hypsum
