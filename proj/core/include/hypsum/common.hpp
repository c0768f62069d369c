#pragma once

#include <cstdint>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hypsum {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;
using i128 = __int128;
using u128 = unsigned __int128;

inline constexpr const char* kVersion = "hypsum 1.0.0";

// Exit-code taxonomy shared with the CLI: 1 usage, 2 resource, 3 inconsistency.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InconsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Memory ceiling for table/sieve construction, bytes. Overridable at runtime.
u64 memory_budget_bytes();
void set_memory_budget_bytes(u64 bytes);
void check_allocation(u64 bytes, const char* what);

inline i64 checked_add(i64 a, i64 b, const char* what = "integer sum") {
  i64 r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error(std::string(what) + ": int64 overflow");
  return r;
}
inline i64 checked_mul(i64 a, i64 b, const char* what = "integer product") {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error(std::string(what) + ": int64 overflow");
  return r;
}

std::string i128_to_string(i128 v);

// Neumaier-compensated accumulator; keeps ~1 ulp of the running sum even over
// 1e8 terms, which the 1e-12 comparisons rely on.
struct Kahan {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

// value +- bound interval used for constant propagation. Every arithmetic op
// widens the bound by the worst case plus a few ulps of rounding slop.
struct Approx {
  double value = 0.0;
  double bound = 0.0;

  static Approx exact(double v) { return {v, 0.0}; }

  Approx operator+(const Approx& o) const {
    return pad({value + o.value, bound + o.bound});
  }
  Approx operator-(const Approx& o) const {
    return pad({value - o.value, bound + o.bound});
  }
  Approx operator*(const Approx& o) const {
    double b = std::abs(value) * o.bound + std::abs(o.value) * bound + bound * o.bound;
    return pad({value * o.value, b});
  }
  Approx operator/(const Approx& o) const {
    double denom = std::abs(o.value) - o.bound;
    if (denom <= 0.0)
      throw std::domain_error("Approx division: divisor interval contains 0");
    double v = value / o.value;
    double b = (bound + std::abs(v) * o.bound) / denom;
    return pad({v, b});
  }
  Approx operator-() const { return {-value, bound}; }

 private:
  static Approx pad(Approx a) {
    a.bound += 4.0 * std::numeric_limits<double>::epsilon() * std::abs(a.value);
    return a;
  }
};

inline Approx operator*(double c, const Approx& a) {
  return Approx::exact(c) * a;
}

}  // namespace hypsum
