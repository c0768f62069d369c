#include "hypsum/oracle.hpp"

#include <cmath>

namespace hypsum::oracle {

namespace {
u64 floor_sqrt(u64 n) {
  u64 r = u64(std::sqrt(double(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}
}  // namespace

u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u64 lcm_u64(u64 a, u64 b) { return a / gcd_u64(a, b) * b; }

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (u64 d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
  std::vector<std::pair<u64, int>> fac;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    fac.emplace_back(p, e);
  }
  if (n > 1) fac.emplace_back(n, 1);
  return fac;
}

i64 f_value_int(const FunctionSpec& spec, u64 n) {
  switch (spec.family) {
    case Family::id:
      return i64(n);
    case Family::tau: {
      i64 t = 1;
      for (auto [p, e] : factorize(n)) t *= (e + 1);
      return t;
    }
    case Family::omega:
      return i64(factorize(n).size());
    case Family::big_omega: {
      i64 t = 0;
      for (auto [p, e] : factorize(n)) t += e;
      return t;
    }
    default:
      throw UsageError("oracle::f_value_int: spec is not integer-valued");
  }
}

double f_value(const FunctionSpec& spec, u64 n) {
  switch (spec.family) {
    case Family::id:
    case Family::tau:
    case Family::omega:
    case Family::big_omega:
      return double(f_value_int(spec, n));
    case Family::reciprocal:
      return 1.0 / double(n);
    case Family::log:
      return std::log(double(n));
    case Family::log_kappa: {
      double s = 0.0;
      for (auto [p, e] : factorize(n)) s += std::log(double(p));
      return s;
    }
    case Family::power_log:
      if (n == 1) return spec.delta == 0.0 ? 1.0 : 0.0;
      return std::pow(double(n), spec.beta) * std::pow(std::log(double(n)), spec.delta);
    case Family::general_s_eta: {
      double s = 0.0;
      for (auto [p, e] : factorize(n)) {
        u64 hits = spec.s.count_upto(u64(e));
        if (hits)
          s += (spec.eta == 0.0 ? 1.0 : std::pow(std::log(double(p)), spec.eta)) * double(hits);
      }
      return s;
    }
  }
  throw UsageError("oracle::f_value: unhandled family");
}

namespace {

// memoized f on 1..cap, each value from its own trial division
struct FMemo {
  const FunctionSpec& spec;
  bool integral;
  std::vector<i64> iv;
  std::vector<double> fv;

  FMemo(const FunctionSpec& s, u64 cap) : spec(s), integral(s.integer_valued()) {
    check_allocation((cap + 1) * 8, "oracle memo");
    if (integral) {
      iv.resize(cap + 1);
      for (u64 n = 1; n <= cap; ++n) iv[n] = f_value_int(spec, n);
    } else {
      fv.resize(cap + 1);
      for (u64 n = 1; n <= cap; ++n) fv[n] = f_value(spec, n);
    }
  }
  i64 geti(u64 n) const { return iv[n]; }
  double getf(u64 n) const { return fv[n]; }
};

}  // namespace

OracleResult brute_hyperbolic(HyperbolicKind kind, const FunctionSpec& spec, u64 x) {
  if (x < 1) throw UsageError("brute_hyperbolic: x must be >= 1");
  if (x > kHyperbolicCap)
    throw ResourceError("brute_hyperbolic: x exceeds the oracle cap of " +
                        std::to_string(kHyperbolicCap));
  OracleResult res;
  res.argument = x;
  if (kind == HyperbolicKind::ratio) {
    res.quantity = "sum_{mn<=x} (m,n)/[m,n]";
    res.integral = false;
    double s = 0.0;
    for (u64 m = 1; m <= x; ++m)
      for (u64 n = 1; n <= x / m; ++n) {
        u64 g = gcd_u64(m, n);
        s += double(g) * double(g) / (double(m) * double(n));
      }
    res.fvalue = s;
    return res;
  }
  const bool gcd_side = kind == HyperbolicKind::gcd_f;
  res.quantity = gcd_side ? "sum_{mn<=x} f((m,n))" : "sum_{mn<=x} f([m,n])";
  const u64 arg_cap = gcd_side ? floor_sqrt(x) : x;  // (m,n) <= sqrt(mn)
  FMemo memo(spec, std::max<u64>(arg_cap, 1));
  if (spec.integer_valued()) {
    i128 s = 0;
    for (u64 m = 1; m <= x; ++m)
      for (u64 n = 1; n <= x / m; ++n)
        s += memo.geti(gcd_side ? gcd_u64(m, n) : lcm_u64(m, n));
    res.ivalue = s;
  } else {
    res.integral = false;
    double s = 0.0;
    for (u64 m = 1; m <= x; ++m)
      for (u64 n = 1; n <= x / m; ++n)
        s += memo.getf(gcd_side ? gcd_u64(m, n) : lcm_u64(m, n));
    res.fvalue = s;
  }
  return res;
}

OracleResult brute_rectangular(RectangularKind kind, u64 x) {
  if (x < 1) throw UsageError("brute_rectangular: x must be >= 1");
  if (x > kRectangularCap)
    throw ResourceError("brute_rectangular: x exceeds the oracle cap of " +
                        std::to_string(kRectangularCap));
  OracleResult res;
  res.argument = x;
  switch (kind) {
    case RectangularKind::gcd: {
      res.quantity = "sum_{m,n<=x} (m,n)";
      i128 s = 0;
      for (u64 m = 1; m <= x; ++m)
        for (u64 n = 1; n <= x; ++n) s += i128(gcd_u64(m, n));
      res.ivalue = s;
      return res;
    }
    case RectangularKind::lcm: {
      res.quantity = "sum_{m,n<=x} [m,n]";
      i128 s = 0;
      for (u64 m = 1; m <= x; ++m)
        for (u64 n = 1; n <= x; ++n) s += i128(lcm_u64(m, n));
      res.ivalue = s;
      return res;
    }
    case RectangularKind::ratio: {
      res.quantity = "sum_{m,n<=x} (m,n)/[m,n]";
      res.integral = false;
      double s = 0.0;
      for (u64 m = 1; m <= x; ++m)
        for (u64 n = 1; n <= x; ++n) {
          u64 g = gcd_u64(m, n);
          s += double(g) * double(g) / (double(m) * double(n));
        }
      res.fvalue = s;
      return res;
    }
  }
  throw UsageError("brute_rectangular: bad kind");
}

OracleResult brute_convolute(Side side, const FunctionSpec& spec, u64 n) {
  if (n < 1) throw UsageError("brute_convolute: n must be >= 1");
  if (n > kConvoluteCap)
    throw ResourceError("brute_convolute: n exceeds the oracle cap of " +
                        std::to_string(kConvoluteCap));
  // ordered divisor pairs (d, n/d)
  std::vector<u64> divs{1};
  {
    u64 m = n;
    for (u64 p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
      if (m % p) continue;
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      size_t base = divs.size();
      u64 pk = 1;
      for (int k = 1; k <= e; ++k) {
        pk *= p;
        for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
      }
    }
    if (m > 1) {
      size_t base = divs.size();
      for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * m);
    }
  }
  OracleResult res;
  res.argument = n;
  res.quantity = side == Side::gcd ? "G_f(n)" : "L_f(n)";
  if (spec.integer_valued()) {
    i128 s = 0;
    for (u64 d : divs)
      s += i128(f_value_int(spec, side == Side::gcd ? gcd_u64(d, n / d) : lcm_u64(d, n / d)));
    res.ivalue = s;
  } else {
    res.integral = false;
    double s = 0.0;
    for (u64 d : divs)
      s += f_value(spec, side == Side::gcd ? gcd_u64(d, n / d) : lcm_u64(d, n / d));
    res.fvalue = s;
  }
  return res;
}

}  // namespace hypsum::oracle
