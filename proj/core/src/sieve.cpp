#include "hypsum/sieve.hpp"

#include <algorithm>
#include <cmath>

namespace hypsum {

u64 isqrt(u64 n) {
  if (n == 0) return 0;
  u64 r = u64(std::sqrt(double(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

SieveConfig& sieve_config() {
  static SieveConfig cfg;
  return cfg;
}

std::vector<u32> sieve_primes(u64 n_max) {
  if (n_max < 2) throw UsageError("sieve_primes: n_max must be >= 2");
  if (n_max > 0xffffffffULL) throw ResourceError("sieve_primes: n_max above 2^32 is unsupported");
  check_allocation(n_max + 1 + (n_max / 8) * sizeof(u32), "sieve_primes");
  std::vector<char> composite(n_max + 1, 0);
  std::vector<u32> primes;
  primes.reserve(size_t(double(n_max) / std::log(double(n_max) + 2) * 1.2) + 16);
  for (u64 i = 2; i <= n_max; ++i) {
    if (composite[i]) continue;
    primes.push_back(u32(i));
    for (u64 j = i * i; j <= n_max; j += i) composite[j] = 1;
  }
  return primes;
}

void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& fn) {
  if (hi < 2 || hi < lo) return;
  lo = std::max<u64>(lo, 2);
  const u64 root = isqrt(hi);
  std::vector<u32> base = root >= 2 ? sieve_primes(root) : std::vector<u32>{};
  const u64 seg = std::max<u64>(sieve_config().segment_size, root + 1);
  std::vector<char> mark;
  for (u64 l = lo; l <= hi; l += seg) {
    u64 r = std::min(hi, l + seg - 1);
    mark.assign(r - l + 1, 0);
    for (u32 p : base) {
      u64 p2 = u64(p) * p;
      if (p2 > r) break;
      u64 start = std::max(p2, ((l + p - 1) / p) * p);
      for (u64 j = start; j <= r; j += p) mark[j - l] = 1;
    }
    for (u64 n = l; n <= r; ++n)
      if (!mark[n - l] && n >= 2) fn(n);
  }
}

FactorSieve::FactorSieve(u64 n_max) : n_max_(n_max) {
  if (n_max < 1) throw UsageError("FactorSieve: n_max must be >= 1");
  if (n_max > 0xffffffffULL) throw ResourceError("FactorSieve: n_max above 2^32 is unsupported");
  check_allocation((n_max + 1) * 2 * sizeof(u32), "FactorSieve");
  spf_.assign(n_max + 1, 0);
  low_.assign(n_max + 1, 0);
  for (u64 i = 2; i <= n_max; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = u32(i);
      low_[i] = u32(i);
      primes_.push_back(u32(i));
    }
    for (u32 p : primes_) {
      if (p > spf_[i] || u64(p) * i > n_max) break;
      u64 ip = u64(p) * i;
      spf_[ip] = p;
      low_[ip] = (p == spf_[i]) ? low_[i] * p : p;
    }
  }
}

std::vector<u64> FactorSieve::divisors(u64 n) const {
  if (n < 1 || n > n_max_) throw UsageError("FactorSieve::divisors: n out of range");
  std::vector<u64> divs{1};
  while (n > 1) {
    u64 p = spf_[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    size_t base = divs.size();
    u64 pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

namespace {

// exponent of p in the prime power n = p^e
int exponent_of(u64 n, u64 p) {
  int e = 0;
  while (n > 1) {
    n /= p;
    ++e;
  }
  return e;
}

i64 checked_pow_i64(u64 p, int e, const char* what) {
  i64 r = 1;
  for (int i = 0; i < e; ++i) r = checked_mul(r, i64(p), what);
  return r;
}

// ---- prime-power values -------------------------------------------------

i64 standard_pp_int(StandardFunction f, u64 p, int e) {
  switch (f) {
    case StandardFunction::mu:
      return e == 1 ? -1 : 0;
    case StandardFunction::tau:
      return e + 1;
    case StandardFunction::omega:
      return 1;
    case StandardFunction::big_omega:
      return e;
    case StandardFunction::two_pow_omega:
      return 2;
    case StandardFunction::kappa:
      return i64(p);
    case StandardFunction::jordan2: {
      // phi_2(p^e) = p^(2e) - p^(2e-2)
      i64 hi = checked_pow_i64(p, 2 * e, "jordan2");
      i64 lo = checked_pow_i64(p, 2 * e - 2, "jordan2");
      return checked_add(hi, -lo, "jordan2");
    }
    case StandardFunction::psi: {
      // psi(p^e) = (-1)^(e-1) (e-1)
      i64 v = e - 1;
      return (e % 2 == 1) ? v : -v;
    }
    case StandardFunction::tau_squared:
      return i64(e + 1) * i64(e + 1);
    default:
      throw UsageError("standard_pp_int: not an integer multiplicative function");
  }
}

bool standard_is_additive(StandardFunction f) {
  return f == StandardFunction::omega || f == StandardFunction::big_omega;
}

// ---- generic builders ---------------------------------------------------
//
// Multiplicative / additive tables come out of the spf decomposition:
// val[n] = val[low] op val[n/low] with low the spf-power part, and prime
// powers seeded from the prime-power formula.

template <class T, class PP, class Comb>
void fill_linear(std::vector<T>& val, const FactorSieve& fs, u64 n_max, T ident,
                 PP&& pp, Comb&& comb) {
  val[1] = ident;
  for (u64 n = 2; n <= n_max; ++n) {
    u64 low = fs.low(n);
    if (low == n) {
      u64 p = fs.spf(n);
      val[n] = pp(p, exponent_of(n, p));
    } else {
      val[n] = comb(val[low], val[n / low]);
    }
  }
}

// Segmented variant: factor every n in a window by sieving with primes
// <= sqrt(hi); whatever remains after extraction is a single large prime.
template <class T, class PP, class Comb>
void fill_segmented(std::vector<T>& val, u64 n_max, T ident, PP&& pp, Comb&& comb) {
  const u64 seg = sieve_config().segment_size;
  const std::vector<u32> base = n_max >= 4 ? sieve_primes(isqrt(n_max)) : std::vector<u32>{};
  std::vector<u64> rem(seg);
  val[1] = ident;
  for (u64 l = 2; l <= n_max; l += seg) {
    u64 r = std::min(n_max, l + seg - 1);
    for (u64 n = l; n <= r; ++n) {
      rem[n - l] = n;
      val[n] = ident;
    }
    for (u32 p : base) {
      if (u64(p) > r) break;
      u64 start = ((l + p - 1) / p) * p;
      for (u64 n = start; n <= r; n += p) {
        u64& m = rem[n - l];
        int e = 0;
        while (m % p == 0) {
          m /= p;
          ++e;
        }
        val[n] = comb(val[n], pp(p, e));
      }
    }
    for (u64 n = l; n <= r; ++n) {
      u64 m = rem[n - l];
      if (m > 1) val[n] = comb(val[n], pp(m, 1));
    }
  }
}

template <class T, class PP, class Comb>
void fill_table(std::vector<T>& val, u64 n_max, const FactorSieve* fs, T ident,
                PP&& pp, Comb&& comb) {
  if (fs && fs->n_max() >= n_max)
    fill_linear(val, *fs, n_max, ident, pp, comb);
  else if (n_max <= sieve_config().segmented_threshold) {
    FactorSieve local(n_max);
    fill_linear(val, local, n_max, ident, pp, comb);
  } else {
    fill_segmented(val, n_max, ident, pp, comb);
  }
}

// h_{S,eta}: (log p)^eta on prime powers p^nu with nu in S, zero elsewhere.
void fill_prime_power_support(ValueTable& t, u64 n_max, const SetS& s, double eta) {
  for_each_prime(2, n_max, [&](u64 p) {
    double w = eta == 0.0 ? 1.0 : std::pow(std::log(double(p)), eta);
    u64 pk = p;
    u64 nu = 1;
    while (true) {
      if (s.contains(nu)) t.set_real(pk, w);
      if (pk > n_max / p) break;
      pk *= p;
      ++nu;
    }
  });
}

}  // namespace

StandardFunction parse_standard_function(const std::string& name) {
  if (name == "mu") return StandardFunction::mu;
  if (name == "tau") return StandardFunction::tau;
  if (name == "omega") return StandardFunction::omega;
  if (name == "big_omega") return StandardFunction::big_omega;
  if (name == "two_pow_omega") return StandardFunction::two_pow_omega;
  if (name == "kappa") return StandardFunction::kappa;
  if (name == "jordan2") return StandardFunction::jordan2;
  if (name == "psi") return StandardFunction::psi;
  if (name == "von_mangoldt") return StandardFunction::von_mangoldt;
  if (name == "tau_squared") return StandardFunction::tau_squared;
  throw UsageError("unknown standard function '" + name + "'");
}

const char* standard_function_name(StandardFunction f) {
  switch (f) {
    case StandardFunction::mu: return "mu";
    case StandardFunction::tau: return "tau";
    case StandardFunction::omega: return "omega";
    case StandardFunction::big_omega: return "big_omega";
    case StandardFunction::two_pow_omega: return "two_pow_omega";
    case StandardFunction::kappa: return "kappa";
    case StandardFunction::jordan2: return "jordan2";
    case StandardFunction::psi: return "psi";
    case StandardFunction::von_mangoldt: return "von_mangoldt";
    case StandardFunction::tau_squared: return "tau_squared";
  }
  return "?";
}

static ValueTable sieve_standard_impl(StandardFunction name, u64 n_max, const FactorSieve* fs) {
  if (n_max < 1) throw UsageError("sieve_standard: n_max must be >= 1");
  if (name == StandardFunction::von_mangoldt) {
    ValueTable t(n_max, TableKind::floating);
    // Lambda(p^nu) = log p: prime-power support with S = N, eta = 1, except
    // the weight is log p for every nu
    for_each_prime(2, n_max, [&](u64 p) {
      double lp = std::log(double(p));
      u64 pk = p;
      while (true) {
        t.set_real(pk, lp);
        if (pk > n_max / p) break;
        pk *= p;
      }
    });
    return t;
  }
  ValueTable t(n_max, TableKind::integer_exact);
  auto pp = [name](u64 p, int e) { return standard_pp_int(name, p, e); };
  if (standard_is_additive(name))
    fill_table(t.ints(), n_max, fs, i64(0), pp, [](i64 a, i64 b) { return checked_add(a, b); });
  else
    fill_table(t.ints(), n_max, fs, i64(1), pp, [](i64 a, i64 b) { return checked_mul(a, b); });
  return t;
}

ValueTable sieve_standard(StandardFunction name, u64 n_max) {
  return sieve_standard_impl(name, n_max, nullptr);
}
ValueTable sieve_standard(StandardFunction name, u64 n_max, const FactorSieve& fs) {
  return sieve_standard_impl(name, n_max, &fs);
}

static ValueTable build_f_table_impl(const FunctionSpec& spec, u64 n_max, const FactorSieve* fs) {
  if (n_max < 1) throw UsageError("build_f_table: n_max must be >= 1");
  switch (spec.family) {
    case Family::id: {
      ValueTable t(n_max, TableKind::integer_exact);
      for (u64 n = 1; n <= n_max; ++n) t.set_int(n, i64(n));
      return t;
    }
    case Family::tau:
      return sieve_standard_impl(StandardFunction::tau, n_max, fs);
    case Family::omega:
      return sieve_standard_impl(StandardFunction::omega, n_max, fs);
    case Family::big_omega:
      return sieve_standard_impl(StandardFunction::big_omega, n_max, fs);
    case Family::reciprocal: {
      ValueTable t(n_max, TableKind::floating);
      for (u64 n = 1; n <= n_max; ++n) t.set_real(n, 1.0 / double(n));
      return t;
    }
    case Family::log: {
      ValueTable t(n_max, TableKind::floating);
      for (u64 n = 1; n <= n_max; ++n) t.set_real(n, std::log(double(n)));
      return t;
    }
    case Family::power_log: {
      // n^beta (log n)^delta; at n = 1 this is 1 for delta = 0 and 0 otherwise
      ValueTable t(n_max, TableKind::floating);
      t.set_real(1, spec.delta == 0.0 ? 1.0 : 0.0);
      for (u64 n = 2; n <= n_max; ++n)
        t.set_real(n, std::pow(double(n), spec.beta) *
                          std::pow(std::log(double(n)), spec.delta));
      return t;
    }
    case Family::log_kappa:
    case Family::general_s_eta: {
      const SetS& s = spec.family == Family::log_kappa ? SetS::single() : spec.s;
      double eta = spec.family == Family::log_kappa ? 1.0 : spec.eta;
      ValueTable t(n_max, TableKind::floating);
      auto pp = [&](u64 p, int e) {
        u64 hits = s.count_upto(u64(e));
        if (hits == 0) return 0.0;
        double w = eta == 0.0 ? 1.0 : std::pow(std::log(double(p)), eta);
        return w * double(hits);
      };
      fill_table(t.reals(), n_max, fs, 0.0, pp, [](double a, double b) { return a + b; });
      return t;
    }
  }
  throw UsageError("build_f_table: unhandled family");
}

ValueTable build_f_table(const FunctionSpec& spec, u64 n_max) {
  return build_f_table_impl(spec, n_max, nullptr);
}
ValueTable build_f_table(const FunctionSpec& spec, u64 n_max, const FactorSieve& fs) {
  return build_f_table_impl(spec, n_max, &fs);
}

static ValueTable build_h_table_impl(const FunctionSpec& spec, u64 n_max, const FactorSieve* fs) {
  if (n_max < 1) throw UsageError("build_h_table: n_max must be >= 1");
  switch (spec.family) {
    case Family::id: {
      // mu * id = Euler phi
      ValueTable t(n_max, TableKind::integer_exact);
      auto pp = [](u64 p, int e) {
        return checked_add(checked_pow_i64(p, e, "phi"), -checked_pow_i64(p, e - 1, "phi"));
      };
      fill_table(t.ints(), n_max, fs, i64(1), pp, [](i64 a, i64 b) { return checked_mul(a, b); });
      return t;
    }
    case Family::tau: {
      // mu * tau = 1
      ValueTable t(n_max, TableKind::integer_exact);
      for (u64 n = 1; n <= n_max; ++n) t.set_int(n, 1);
      return t;
    }
    case Family::reciprocal: {
      // (mu * f)(p^e) = p^-e - p^-(e-1) = (1 - p)/p^e
      ValueTable t(n_max, TableKind::floating);
      auto pp = [](u64 p, int e) {
        return (1.0 - double(p)) / std::pow(double(p), double(e));
      };
      fill_table(t.reals(), n_max, fs, 1.0, pp, [](double a, double b) { return a * b; });
      return t;
    }
    case Family::omega: {
      // prime indicator, integer so identity tests stay exact
      ValueTable t(n_max, TableKind::integer_exact);
      for_each_prime(2, n_max, [&](u64 p) { t.set_int(p, 1); });
      return t;
    }
    case Family::big_omega: {
      // prime-power indicator
      ValueTable t(n_max, TableKind::integer_exact);
      for_each_prime(2, n_max, [&](u64 p) {
        u64 pk = p;
        while (true) {
          t.set_int(pk, 1);
          if (pk > n_max / p) break;
          pk *= p;
        }
      });
      return t;
    }
    case Family::log: {
      ValueTable t(n_max, TableKind::floating);
      fill_prime_power_support(t, n_max, SetS::all(), 1.0);
      return t;
    }
    case Family::log_kappa: {
      ValueTable t(n_max, TableKind::floating);
      fill_prime_power_support(t, n_max, SetS::single(), 1.0);
      return t;
    }
    case Family::general_s_eta: {
      ValueTable t(n_max, TableKind::floating);
      fill_prime_power_support(t, n_max, spec.s, spec.eta);
      return t;
    }
    case Family::power_log: {
      // no closed form; fall back to the definition mu * f
      ValueTable mu = sieve_standard_impl(StandardFunction::mu, n_max, fs);
      ValueTable f = build_f_table_impl(spec, n_max, fs);
      return dirichlet_convolve(mu, f);
    }
  }
  throw UsageError("build_h_table: unhandled family");
}

ValueTable build_h_table(const FunctionSpec& spec, u64 n_max) {
  return build_h_table_impl(spec, n_max, nullptr);
}
ValueTable build_h_table(const FunctionSpec& spec, u64 n_max, const FactorSieve& fs) {
  return build_h_table_impl(spec, n_max, &fs);
}

ValueTable dirichlet_convolve(const ValueTable& f, const ValueTable& g) {
  if (f.n_max() != g.n_max())
    throw UsageError("dirichlet_convolve: tables must share n_max");
  const u64 n = f.n_max();
  if (f.is_integer() && g.is_integer()) {
    ValueTable out(n, TableKind::integer_exact);
    auto& o = out.ints();
    const auto& a = f.ints();
    const auto& b = g.ints();
    for (u64 d = 1; d <= n; ++d) {
      if (a[d] == 0) continue;
      for (u64 m = d, e = 1; m <= n; m += d, ++e)
        o[m] = checked_add(o[m], checked_mul(a[d], b[e], "dirichlet_convolve"),
                           "dirichlet_convolve");
    }
    return out;
  }
  ValueTable out(n, TableKind::floating);
  auto& o = out.reals();
  for (u64 d = 1; d <= n; ++d) {
    double ad = f.at(d);
    if (ad == 0.0) continue;
    for (u64 m = d, e = 1; m <= n; m += d, ++e) o[m] += ad * g.at(e);
  }
  return out;
}

}  // namespace hypsum
