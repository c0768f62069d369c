#include "hypsum/common.hpp"

#include <algorithm>
#include <atomic>

namespace hypsum {

namespace {
std::atomic<u64> g_memory_budget{u64(4) << 30};  // 4 GiB default
}

u64 memory_budget_bytes() { return g_memory_budget.load(); }

void set_memory_budget_bytes(u64 bytes) { g_memory_budget.store(bytes); }

void check_allocation(u64 bytes, const char* what) {
  if (bytes > g_memory_budget.load())
    throw ResourceError(std::string(what) + ": needs " + std::to_string(bytes) +
                        " bytes, over the configured budget of " +
                        std::to_string(g_memory_budget.load()));
}

std::string i128_to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  u128 u = neg ? u128(-(v + 1)) + 1 : u128(v);
  std::string s;
  while (u > 0) {
    s.push_back(char('0' + int(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace hypsum
