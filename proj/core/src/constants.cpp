#include "hypsum/constants.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "hypsum/sieve.hpp"

namespace hypsum {

const char* estimate_method_name(EstimateMethod m) {
  switch (m) {
    case EstimateMethod::zeta_euler_maclaurin: return "zeta_euler_maclaurin";
    case EstimateMethod::prime_sum_direct: return "prime_sum_direct";
    case EstimateMethod::prime_sum_accelerated: return "prime_sum_accelerated";
    case EstimateMethod::euler_product: return "euler_product";
    case EstimateMethod::series_direct: return "series_direct";
    case EstimateMethod::composite: return "composite";
    case EstimateMethod::literal: return "literal";
  }
  return "?";
}

ConstantEstimate euler_gamma() {
  // 0.57721566490153286060 65120900824024310421...
  return {"gamma", 0.57721566490153286061, 1e-19, EstimateMethod::literal};
}

// ---------------------------------------------------------------------------
// Riemann zeta by Euler-Maclaurin with an explicit remainder bound
// ---------------------------------------------------------------------------

namespace {

// B_2, B_4, ..., B_32
constexpr double kBernoulli[] = {
    1.0 / 6,
    -1.0 / 30,
    1.0 / 42,
    -1.0 / 30,
    5.0 / 66,
    -691.0 / 2730,
    7.0 / 6,
    -3617.0 / 510,
    43867.0 / 798,
    -174611.0 / 330,
    854513.0 / 138,
    -236364091.0 / 2730,
    8553103.0 / 6,
    -23749461029.0 / 870,
    8615841276005.0 / 14322,
    -7709321041217.0 / 510,
};

double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

struct ZetaResult {
  double value;
  double bound;
};

// One Euler-Maclaurin pass at fixed (N, K). The remainder after the B_{2K}
// term is
//   R = -(prod_{j=0}^{2K}(s+j))/(2K+1)! * int_N^inf B_{2K+1}({t}) t^{-s-2K-1} dt,
// and |B_{2K+1}({t})| <= 2 (2K+1)! zeta(2K+1)/(2pi)^{2K+1}, which gives the
// computable bounds below (log factors appear for the s-derivatives).
ZetaResult zeta_em(double s, ZetaWant want, int N, int K) {
  const double logN = std::log(double(N));
  Kahan head;
  for (int n = 1; n < N; ++n) {
    double t = std::pow(double(n), -s);
    double ln = std::log(double(n));
    if (want == ZetaWant::value)
      head.add(t);
    else if (want == ZetaWant::first_derivative)
      head.add(-ln * t);
    else
      head.add(ln * ln * t);
  }
  double Npow = std::pow(double(N), 1.0 - s);  // N^(1-s)
  double NS = Npow / double(N);                // N^(-s)
  double sm1 = s - 1.0;
  double tail0, tail_half;
  if (want == ZetaWant::value) {
    tail0 = Npow / sm1;
    tail_half = NS / 2;
  } else if (want == ZetaWant::first_derivative) {
    tail0 = Npow * (-logN / sm1 - 1.0 / (sm1 * sm1));
    tail_half = -logN * NS / 2;
  } else {
    tail0 = Npow * (logN * logN / sm1 + 2 * logN / (sm1 * sm1) + 2.0 / (sm1 * sm1 * sm1));
    tail_half = logN * logN * NS / 2;
  }
  Kahan corr;
  double poly = 1.0;  // prod_{j=0}^{2k-2} (s+j), updated per k
  double s1 = 0.0, s2 = 0.0;
  for (int k = 1; k <= K; ++k) {
    // extend the product to 2k-1 factors
    for (int j = 2 * (k - 1) - 1; j <= 2 * k - 2; ++j) {
      if (j < 0) continue;
      double f = s + j;
      poly *= f;
      s1 += 1.0 / f;
      s2 += 1.0 / (f * f);
    }
    double npow = std::pow(double(N), -s - 2 * k + 1);
    double coef = kBernoulli[k - 1] / factorial(2 * k);
    double term;
    if (want == ZetaWant::value)
      term = coef * poly * npow;
    else if (want == ZetaWant::first_derivative)
      term = coef * poly * (s1 - logN) * npow;
    else
      term = coef * poly * ((s1 - logN) * (s1 - logN) - s2) * npow;
    corr.add(term);
  }
  // remainder bound
  double polyR = poly;
  double s1R = s1, s2R = s2;
  for (int j = 2 * K - 1; j <= 2 * K; ++j) {
    double f = s + j;
    polyR *= std::abs(f);
    s1R += 1.0 / std::abs(f);
    s2R += 1.0 / (f * f);
  }
  const double two_pi = 2.0 * std::numbers::pi;
  double cb = 2.0 * 1.21 * std::pow(two_pi, -(2 * K + 1));  // zeta(2K+1) <= 1.21
  double a = s + 2 * K;
  double Na = std::pow(double(N), -a);
  double i0 = Na / a;
  double i1 = Na * (logN / a + 1.0 / (a * a));
  double i2 = Na * (logN * logN / a + 2 * logN / (a * a) + 2.0 / (a * a * a));
  double rem;
  if (want == ZetaWant::value)
    rem = polyR * cb * i0;
  else if (want == ZetaWant::first_derivative)
    rem = polyR * cb * (s1R * i0 + i1);
  else
    rem = polyR * cb * ((s1R * s1R + s2R) * i0 + 2 * s1R * i1 + i2);
  double value = head.value() + tail0 + tail_half + corr.value();
  double bound = rem + 8 * std::numeric_limits<double>::epsilon() * (std::abs(value) + 1.0);
  return {value, bound};
}

std::mutex g_const_mutex;

}  // namespace

ConstantEstimate zeta(double s, ZetaWant want) {
  if (s <= 0.0) throw UsageError("zeta: s must be > 0");
  if (s == 1.0) throw UsageError("zeta: pole at s = 1");
  if (want != ZetaWant::value && s <= 1.0)
    throw UsageError("zeta: derivatives need s > 1");

  static std::map<std::pair<double, int>, ConstantEstimate> cache;
  {
    std::lock_guard<std::mutex> lock(g_const_mutex);
    auto it = cache.find({s, int(want)});
    if (it != cache.end()) return it->second;
  }

  ZetaResult best{0.0, std::numeric_limits<double>::infinity()};
  for (int N : {32, 64, 128, 256}) {
    for (int K = 4; K <= 14; K += 2) {
      ZetaResult r = zeta_em(s, want, N, K);
      if (r.bound < best.bound) best = r;
      if (best.bound < 1e-13) break;
    }
    if (best.bound < 1e-13) break;
  }
  std::string name = want == ZetaWant::value ? "zeta(" + std::to_string(s) + ")"
                     : want == ZetaWant::first_derivative
                         ? "zeta'(" + std::to_string(s) + ")"
                         : "zeta''(" + std::to_string(s) + ")";
  ConstantEstimate e{name, best.value, best.bound, EstimateMethod::zeta_euler_maclaurin};
  std::lock_guard<std::mutex> lock(g_const_mutex);
  cache.emplace(std::make_pair(s, int(want)), e);
  return e;
}

// ---------------------------------------------------------------------------
// truncation tails
// ---------------------------------------------------------------------------

namespace {

// I_k(x, s) = int_x^inf (log t)^k t^-s dt for integer k >= 0 (exact recursion)
double log_power_integral(double x, double s, int k) {
  double v = std::pow(x, 1.0 - s) / (s - 1.0);
  double acc = std::pow(std::log(x), double(k)) * v;
  if (k == 0) return v;
  return acc + double(k) / (s - 1.0) * log_power_integral(x, s, k - 1);
}

}  // namespace

double tail_log_power(double x, double s, double delta) {
  if (s <= 1.0) throw UsageError("tail_log_power: needs s > 1");
  if (x < 20.0) throw UsageError("tail_log_power: needs x >= 20");
  if (x <= std::exp(delta / s))
    throw UsageError("tail_log_power: summand not yet decreasing at x");
  if (delta <= 0.0)
    return std::pow(std::log(x), delta) * std::pow(x, 1.0 - s) / (s - 1.0);
  int k = int(std::ceil(delta));
  return log_power_integral(x, s, k);  // (log t)^delta <= (log t)^k for t >= e
}

double tail_prime_sum(double x, double s, double eta) {
  if (s <= 1.0) throw UsageError("tail_prime_sum: needs s > 1");
  if (x < 20.0) throw UsageError("tail_prime_sum: needs x >= 20");
  if (x <= std::exp(eta / s))
    throw UsageError("tail_prime_sum: summand not yet decreasing at x");
  // partial summation with pi(t) <= 1.3 t/log t (t >= 17):
  //   sum_{p>x} (log p)^eta p^-s <= 1.3 s int_x^inf (log t)^(eta-1) t^-s dt
  double integral;
  if (eta <= 1.0)
    integral = std::pow(std::log(x), eta - 1.0) * std::pow(x, 1.0 - s) / (s - 1.0);
  else
    integral = log_power_integral(x, s, int(std::ceil(eta - 1.0)));
  return 1.3 * s * integral;
}

// ---------------------------------------------------------------------------
// direct prime sums
// ---------------------------------------------------------------------------

namespace {

const std::vector<u32>& primes_upto_cached(u64 p_max) {
  static std::vector<u32> primes;
  static u64 have = 0;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  if (p_max > have) {
    primes = sieve_primes(p_max);
    have = p_max;
  }
  return primes;
}

const char* prime_sum_weight_name(PrimeSumWeight w) {
  switch (w) {
    case PrimeSumWeight::inv_p2: return "sum 1/p^2";
    case PrimeSumWeight::logp_over_p2m1: return "sum log p/(p^2-1)";
    case PrimeSumWeight::logp_over_p2: return "sum log p/p^2";
    case PrimeSumWeight::log2p_over_p2: return "sum log^2 p/p^2";
    case PrimeSumWeight::inv_p2m1: return "sum 1/(p^2-1)";
    case PrimeSumWeight::p2logp_over_p2m1_sq: return "sum p^2 log p/(p^2-1)^2";
    case PrimeSumWeight::mertens_summand: return "sum log(1-1/p)+1/p";
    case PrimeSumWeight::komega_summand: return "sum log(1-1/p)+1/p";
    case PrimeSumWeight::kbigomega_summand: return "sum log(1-1/p)+1/(p-1)";
  }
  return "?";
}

double weight_term(PrimeSumWeight w, double p) {
  double lp;
  switch (w) {
    case PrimeSumWeight::inv_p2:
      return 1.0 / (p * p);
    case PrimeSumWeight::logp_over_p2m1:
      return std::log(p) / (p * p - 1.0);
    case PrimeSumWeight::logp_over_p2:
      return std::log(p) / (p * p);
    case PrimeSumWeight::log2p_over_p2:
      lp = std::log(p);
      return lp * lp / (p * p);
    case PrimeSumWeight::inv_p2m1:
      return 1.0 / (p * p - 1.0);
    case PrimeSumWeight::p2logp_over_p2m1_sq: {
      double d = p * p - 1.0;
      return p * p * std::log(p) / (d * d);
    }
    case PrimeSumWeight::mertens_summand:
    case PrimeSumWeight::komega_summand:
      return std::log1p(-1.0 / p) + 1.0 / p;
    case PrimeSumWeight::kbigomega_summand:
      return std::log1p(-1.0 / p) + 1.0 / (p - 1.0);
  }
  return 0.0;
}

// rigorous tail of the direct sum past P
double weight_tail(PrimeSumWeight w, double P) {
  double fac = P * P / (P * P - 1.0);  // 1/(p^2-1) <= fac/p^2 for p > P
  double fac2 = P / (P - 1.0);
  switch (w) {
    case PrimeSumWeight::inv_p2:
      return tail_prime_sum(P, 2.0, 0.0);
    case PrimeSumWeight::logp_over_p2m1:
      return fac * tail_prime_sum(P, 2.0, 1.0);
    case PrimeSumWeight::logp_over_p2:
      return tail_prime_sum(P, 2.0, 1.0);
    case PrimeSumWeight::log2p_over_p2:
      return tail_prime_sum(P, 2.0, 2.0);
    case PrimeSumWeight::inv_p2m1:
      return fac * tail_prime_sum(P, 2.0, 0.0);
    case PrimeSumWeight::p2logp_over_p2m1_sq:
      return fac * fac * tail_prime_sum(P, 2.0, 1.0);
    case PrimeSumWeight::mertens_summand:
    case PrimeSumWeight::komega_summand:
      // |log(1-1/p)+1/p| <= 1/(2p(p-1))
      return 0.5 * fac2 * tail_prime_sum(P, 2.0, 0.0);
    case PrimeSumWeight::kbigomega_summand:
      // 0 <= log(1-1/p)+1/(p-1) <= 1/(p(p-1))
      return fac2 * tail_prime_sum(P, 2.0, 0.0);
  }
  return 0.0;
}

}  // namespace

PrimeSumWeight parse_prime_sum_weight(const std::string& name) {
  if (name == "inv_p2") return PrimeSumWeight::inv_p2;
  if (name == "logp_over_p2m1") return PrimeSumWeight::logp_over_p2m1;
  if (name == "logp_over_p2") return PrimeSumWeight::logp_over_p2;
  if (name == "log2p_over_p2") return PrimeSumWeight::log2p_over_p2;
  if (name == "inv_p2m1") return PrimeSumWeight::inv_p2m1;
  if (name == "p2logp_over_p2m1_sq") return PrimeSumWeight::p2logp_over_p2m1_sq;
  if (name == "mertens_summand") return PrimeSumWeight::mertens_summand;
  if (name == "komega_summand") return PrimeSumWeight::komega_summand;
  if (name == "kbigomega_summand") return PrimeSumWeight::kbigomega_summand;
  throw UsageError("unknown prime sum weight '" + name + "'");
}

ConstantEstimate prime_sum(PrimeSumWeight w, u64 p_max) {
  if (p_max < 1000) throw UsageError("prime_sum: p_max must be >= 1000");
  static std::map<std::pair<int, u64>, ConstantEstimate> cache;
  {
    std::lock_guard<std::mutex> lock(g_const_mutex);
    auto it = cache.find({int(w), p_max});
    if (it != cache.end()) return it->second;
  }
  Kahan sum, abs_sum;
  for (u32 p : primes_upto_cached(p_max)) {
    double t = weight_term(w, double(p));
    sum.add(t);
    abs_sum.add(std::abs(t));
  }
  double bound = weight_tail(w, double(p_max)) +
                 4 * std::numeric_limits<double>::epsilon() * abs_sum.value();
  ConstantEstimate e{prime_sum_weight_name(w), sum.value(), bound,
                     EstimateMethod::prime_sum_direct};
  std::lock_guard<std::mutex> lock(g_const_mutex);
  cache.emplace(std::make_pair(int(w), p_max), e);
  return e;
}

// ---------------------------------------------------------------------------
// accelerated routes through log zeta
// ---------------------------------------------------------------------------

namespace {

Approx approx_log(const Approx& a) {
  double lo = a.value - a.bound;
  if (lo <= 0.0) throw std::domain_error("approx_log: interval touches 0");
  return {std::log(a.value), a.bound / lo + 1e-16};
}

// zeta(t) - 1 <= z1(t), |zeta'(t)| <= z2(t), |zeta''(t)| <= z3(t); all from
// the n = 2 term plus the integral comparison past 2
double z1_bound(double t) { return std::pow(2.0, -t) * (1.0 + 2.0 / (t - 1.0)); }
double z2_bound(double t) {
  double l2 = std::numbers::ln2;
  return std::pow(2.0, -t) * (l2 + 2.0 * (l2 / (t - 1.0) + 1.0 / ((t - 1.0) * (t - 1.0))));
}
double z3_bound(double t) {
  double l2 = std::numbers::ln2;
  double u = t - 1.0;
  return std::pow(2.0, -t) *
         (l2 * l2 + 2.0 * (l2 * l2 / u + 2.0 * l2 / (u * u) + 2.0 / (u * u * u)));
}

constexpr int kMobiusTermCount = 40;

const std::vector<i64>& small_mobius() {
  static std::vector<i64> mu = [] {
    return sieve_standard(StandardFunction::mu, kMobiusTermCount + 1).ints();
  }();
  return mu;
}

// sum_p log p * p^-s = sum_k mu(k) (-zeta'/zeta)(ks)
Approx log_weighted_prime_zeta(double s) {
  if (s < 2.0) throw UsageError("log_weighted_prime_zeta: needs s >= 2");
  const auto& mu = small_mobius();
  Approx acc{0.0, 0.0};
  for (int k = 1; k <= kMobiusTermCount; ++k) {
    if (mu[k] == 0) continue;
    Approx zp = zeta(k * s, ZetaWant::first_derivative).approx();
    Approx zv = zeta(k * s).approx();
    acc = acc + double(mu[k]) * (-zp / zv);
  }
  double tail = z2_bound((kMobiusTermCount + 1) * s) / (1.0 - std::pow(2.0, -s));
  acc.bound += tail;
  return acc;
}

// sum_p (log p)^2 p^-s = sum_k mu(k) k A(ks), A = (zeta'' zeta - zeta'^2)/zeta^2
Approx log2_weighted_prime_zeta(double s) {
  if (s < 2.0) throw UsageError("log2_weighted_prime_zeta: needs s >= 2");
  const auto& mu = small_mobius();
  Approx acc{0.0, 0.0};
  for (int k = 1; k <= kMobiusTermCount; ++k) {
    if (mu[k] == 0) continue;
    double t = k * s;
    Approx z = zeta(t).approx();
    Approx zp = zeta(t, ZetaWant::first_derivative).approx();
    Approx zpp = zeta(t, ZetaWant::second_derivative).approx();
    Approx a = zpp / z - (zp / z) * (zp / z);
    acc = acc + double(mu[k] * k) * a;
  }
  double tK = (kMobiusTermCount + 1) * s;
  double term = (kMobiusTermCount + 1) * (z3_bound(tK) + z2_bound(tK) * z2_bound(tK));
  acc.bound += term / (1.0 - std::pow(2.0, 1.0 - s));
  return acc;
}

Approx prime_zeta_approx(double s) {
  if (s < 2.0) throw UsageError("prime_zeta: needs s >= 2");
  const auto& mu = small_mobius();
  Approx acc{0.0, 0.0};
  for (int k = 1; k <= kMobiusTermCount; ++k) {
    if (mu[k] == 0) continue;
    Approx lz = approx_log(zeta(k * s).approx());
    acc = acc + (double(mu[k]) / double(k)) * lz;
  }
  acc.bound += z1_bound((kMobiusTermCount + 1) * s) /
               (double(kMobiusTermCount + 1) * (1.0 - std::pow(2.0, -s)));
  return acc;
}

}  // namespace

ConstantEstimate prime_zeta(double s) {
  return ConstantEstimate::from("P(" + std::to_string(s) + ")", prime_zeta_approx(s),
                                EstimateMethod::prime_sum_accelerated);
}

ConstantEstimate prime_sum_accelerated(PrimeSumWeight w) {
  Approx a;
  switch (w) {
    case PrimeSumWeight::inv_p2:
      a = prime_zeta_approx(2.0);
      break;
    case PrimeSumWeight::logp_over_p2m1:
      // geometric expansion collapses to -zeta'(2)/zeta(2)
      a = -zeta(2.0, ZetaWant::first_derivative).approx() / zeta(2.0).approx();
      break;
    case PrimeSumWeight::logp_over_p2:
      a = log_weighted_prime_zeta(2.0);
      break;
    case PrimeSumWeight::log2p_over_p2:
      a = log2_weighted_prime_zeta(2.0);
      break;
    case PrimeSumWeight::inv_p2m1: {
      // sum_p 1/(p^2-1) = sum_{nu>=1} P(2 nu)
      a = {0.0, 0.0};
      const int V = 28;
      for (int nu = 1; nu <= V; ++nu) a = a + prime_zeta_approx(2.0 * nu);
      a.bound += z1_bound(2.0 * (V + 1)) / (1.0 - 0.25);
      break;
    }
    case PrimeSumWeight::p2logp_over_p2m1_sq: {
      // p^2/(p^2-1)^2 = sum_{nu>=1} nu p^-2nu
      a = {0.0, 0.0};
      const int V = 28;
      for (int nu = 1; nu <= V; ++nu)
        a = a + double(nu) * log_weighted_prime_zeta(2.0 * nu);
      a.bound += 2.0 * (V + 1) * z2_bound(2.0 * (V + 1));
      break;
    }
    case PrimeSumWeight::mertens_summand:
    case PrimeSumWeight::komega_summand: {
      // log(1-1/p) + 1/p = -sum_{k>=2} p^-k / k
      a = {0.0, 0.0};
      const int Kmax = 46;
      for (int k = 2; k <= Kmax; ++k)
        a = a - (1.0 / double(k)) * prime_zeta_approx(double(k));
      a.bound += z1_bound(double(Kmax + 1)) / (double(Kmax + 1) * 0.5);
      break;
    }
    case PrimeSumWeight::kbigomega_summand: {
      // log(1-1/p) + 1/(p-1) = sum_{k>=2} (1 - 1/k) p^-k
      a = {0.0, 0.0};
      const int Kmax = 46;
      for (int k = 2; k <= Kmax; ++k)
        a = a + (1.0 - 1.0 / double(k)) * prime_zeta_approx(double(k));
      a.bound += z1_bound(double(Kmax + 1)) / 0.5;
      break;
    }
  }
  return ConstantEstimate::from(prime_sum_weight_name(w), a,
                                EstimateMethod::prime_sum_accelerated);
}

// ---------------------------------------------------------------------------
// H_S(p), K_S(p)
// ---------------------------------------------------------------------------

std::pair<Approx, Approx> hs_ks(u64 p, const SetS& s) {
  if (p < 2) throw UsageError("hs_ks: p must be prime (>= 2)");
  double x = 1.0 / (double(p) * double(p));
  Approx h{0.0, 0.0}, k{0.0, 0.0};
  for (u64 nu : s.explicit_members()) {
    double xn = std::pow(x, double(nu));
    h = h + Approx::exact(xn);
    k = k + Approx::exact(double(nu) * xn);
  }
  if (auto t = s.cofinite_from()) {
    double xt = std::pow(x, double(*t));
    double geo = xt / (1.0 - x);
    h = h + Approx::exact(geo);
    // sum_{nu>=t} nu x^nu = x^t (t - (t-1) x)/(1-x)^2
    double kt = xt * (double(*t) - double(*t - 1) * x) / ((1.0 - x) * (1.0 - x));
    k = k + Approx::exact(kt);
  }
  // pure closed forms, only rounding in the bound
  h.bound += 4 * std::numeric_limits<double>::epsilon() * std::abs(h.value);
  k.bound += 4 * std::numeric_limits<double>::epsilon() * std::abs(k.value);
  return {h, k};
}

// ---------------------------------------------------------------------------
// series over f(n)/n^2
// ---------------------------------------------------------------------------

ConstantEstimate series_direct(const FunctionSpec& spec, SeriesKind kind, u64 n_terms) {
  if (!spec.eligible_main_term())
    throw UsageError("series_direct: spec has beta >= 1, series may diverge");
  if (n_terms < 100) throw UsageError("series_direct: n_terms must be >= 100");
  ValueTable f = build_f_table(spec, n_terms);
  Kahan sum, abs_sum;
  for (u64 n = 1; n <= n_terms; ++n) {
    double v = f.at(n) / (double(n) * double(n));
    if (kind == SeriesKind::log_weighted) v *= std::log(double(n));
    sum.add(v);
    abs_sum.add(std::abs(v));
  }
  double delta = spec.growth_delta() + (kind == SeriesKind::log_weighted ? 1.0 : 0.0);
  double tail = spec.growth_const() *
                tail_log_power(double(n_terms), 2.0 - spec.growth_beta(), delta);
  double bound = tail + 4 * std::numeric_limits<double>::epsilon() * abs_sum.value();
  std::string nm = std::string("sum f(n)") +
                   (kind == SeriesKind::log_weighted ? " log n" : "") + "/n^2, f=" + spec.key();
  return {nm, sum.value(), bound, EstimateMethod::series_direct};
}

CfDf theorem22_constants(const FunctionSpec& spec, u64 n_terms) {
  Approx s0 = series_direct(spec, SeriesKind::plain, n_terms).approx();
  Approx s1 = series_direct(spec, SeriesKind::log_weighted, n_terms).approx();
  Approx z2 = zeta(2.0).approx();
  Approx g = euler_gamma().approx();
  Approx zp2 = zeta(2.0, ZetaWant::first_derivative).approx();
  Approx c_def = 2.0 * g - Approx::exact(1.0) - 2.0 * (zp2 / z2);
  Approx cf = s0 / z2;
  Approx df = (c_def * s0 - 2.0 * s1) / z2;
  return {ConstantEstimate::from("C_f[" + spec.key() + "]", cf, EstimateMethod::series_direct),
          ConstantEstimate::from("D_f[" + spec.key() + "]", df, EstimateMethod::series_direct)};
}

namespace {

// (S, eta) structure behind the additive families
std::pair<SetS, double> s_eta_structure(const FunctionSpec& spec) {
  switch (spec.family) {
    case Family::omega: return {SetS::single(), 0.0};
    case Family::big_omega: return {SetS::all(), 0.0};
    case Family::log: return {SetS::all(), 1.0};
    case Family::log_kappa: return {SetS::single(), 1.0};
    case Family::general_s_eta: return {spec.s, spec.eta};
    default:
      throw UsageError("spec '" + spec.key() + "' has no (S, eta) structure");
  }
}

}  // namespace

CfDf theorem24_constants(const FunctionSpec& spec, u64 p_max) {
  auto [s, eta] = s_eta_structure(spec);
  Kahan csum, dsum, cabs, dabs;
  for (u32 p : primes_upto_cached(p_max)) {
    auto [h, k] = hs_ks(p, s);
    double lp = std::log(double(p));
    double w = eta == 0.0 ? 1.0 : std::pow(lp, eta);
    csum.add(w * h.value);
    dsum.add(w * lp * k.value);
    cabs.add(w * h.value);
    dabs.add(w * lp * k.value);
  }
  double P = double(p_max);
  double fac = P * P / (P * P - 1.0);
  double eps = std::numeric_limits<double>::epsilon();
  // H_S(p) <= 1/(p^2-1), K_S(p) <= p^2/(p^2-1)^2
  Approx c{csum.value(), fac * tail_prime_sum(P, 2.0, eta) + 4 * eps * cabs.value()};
  Approx k2{dsum.value(), fac * fac * tail_prime_sum(P, 2.0, eta + 1.0) + 4 * eps * dabs.value()};
  Approx g = euler_gamma().approx();
  Approx d = (2.0 * g - Approx::exact(1.0)) * c - 2.0 * k2;
  return {ConstantEstimate::from("C_f[" + spec.key() + "]", c, EstimateMethod::prime_sum_direct),
          ConstantEstimate::from("D_f[" + spec.key() + "]", d, EstimateMethod::prime_sum_direct)};
}

// ---------------------------------------------------------------------------
// named constants
// ---------------------------------------------------------------------------

namespace {

Approx gamma_a() { return euler_gamma().approx(); }

Approx c_eq15_a() {
  return 2.0 * gamma_a() - Approx::exact(1.0) -
         2.0 * (zeta(2.0, ZetaWant::first_derivative).approx() / zeta(2.0).approx());
}

Approx prime_part(PrimeSumWeight w, const ConstantsOptions& opt) {
  return opt.prefer_accelerated ? prime_sum_accelerated(w).approx()
                                : prime_sum(w, opt.p_max).approx();
}

Approx c1_thm213_a(const ConstantsOptions& opt) {
  // (1/pi^2) prod_p (1 - 1/(p+1)^2)
  u64 pmax = std::min<u64>(opt.p_max, 10'000'000);  // 1e-8 tail is plenty here
  double prod = 1.0;
  u64 count = 0;
  for (u32 p : primes_upto_cached(pmax)) {
    double q = double(p) + 1.0;
    prod *= 1.0 - 1.0 / (q * q);
    ++count;
  }
  double P = double(pmax);
  double log_tail = (1.0 / (1.0 - 1.0 / (P * P))) * tail_prime_sum(P, 2.0, 0.0);
  double bound = prod * (std::exp(log_tail) - 1.0) +
                 double(count) * std::numeric_limits<double>::epsilon() * prod;
  double pi2 = std::numbers::pi * std::numbers::pi;
  return Approx{prod, bound} / Approx::exact(pi2);
}

}  // namespace

std::vector<PrintedDecimal> printed_decimals() {
  return {
      {"C_log", 0.569960},  {"C_logkappa", 0.493091}, {"C_omega", 0.452247},
      {"C_Omega", 0.551693}, {"M", 0.261497},          {"C1_tau_lcm", 0.078613},
  };
}

ConstantEstimate named_constant(const std::string& name, const ConstantsOptions& opt) {
  Approx g = gamma_a();
  auto composite = [&](Approx a) {
    return ConstantEstimate::from(name, a, EstimateMethod::composite);
  };
  if (name == "gamma") return euler_gamma();
  if (name == "zeta(1/2)") return zeta(0.5);
  if (name == "zeta(3/2)") return zeta(1.5);
  if (name == "zeta(2)") return zeta(2.0);
  if (name == "zeta(3)") return zeta(3.0);
  if (name == "zeta'(2)") return zeta(2.0, ZetaWant::first_derivative);
  if (name == "zeta'(3)") return zeta(3.0, ZetaWant::first_derivative);
  if (name == "zeta''(2)") return zeta(2.0, ZetaWant::second_derivative);
  if (name == "C_2omega") return composite(c_eq15_a());
  if (name == "C1_tau") return composite(2.0 * g - Approx::exact(1.0));
  if (name == "D_recip")
    return composite(c_eq15_a() + 2.0 * (zeta(3.0, ZetaWant::first_derivative).approx() /
                                         zeta(3.0).approx()));
  if (name == "E_lcm")
    return composite(c_eq15_a() + Approx::exact(0.5) +
                     2.0 * (zeta(3.0, ZetaWant::first_derivative).approx() /
                            zeta(3.0).approx()));
  if (name == "C_log") {
    auto e = ConstantEstimate::from(
        name, prime_part(PrimeSumWeight::logp_over_p2m1, opt),
        opt.prefer_accelerated ? EstimateMethod::prime_sum_accelerated
                               : EstimateMethod::prime_sum_direct);
    return e;
  }
  if (name == "D_log") {
    // the displayed form: C_log (2 gamma - 1 - 2 zeta'(2)/zeta(2) + 2 zeta''(2)/zeta'(2))
    Approx zp2 = zeta(2.0, ZetaWant::first_derivative).approx();
    Approx zpp2 = zeta(2.0, ZetaWant::second_derivative).approx();
    Approx z2 = zeta(2.0).approx();
    Approx clog = -zp2 / z2;
    return composite(clog * (2.0 * g - Approx::exact(1.0) - 2.0 * (zp2 / z2) + 2.0 * (zpp2 / zp2)));
  }
  if (name == "C_logkappa")
    return ConstantEstimate::from(name, prime_part(PrimeSumWeight::logp_over_p2, opt),
                                  EstimateMethod::composite);
  if (name == "D_logkappa")
    return composite((2.0 * g - Approx::exact(1.0)) * prime_part(PrimeSumWeight::logp_over_p2, opt) -
                     2.0 * prime_part(PrimeSumWeight::log2p_over_p2, opt));
  if (name == "C_omega")
    return ConstantEstimate::from(name, prime_part(PrimeSumWeight::inv_p2, opt),
                                  EstimateMethod::composite);
  if (name == "D_omega")
    return composite((2.0 * g - Approx::exact(1.0)) * prime_part(PrimeSumWeight::inv_p2, opt) -
                     2.0 * prime_part(PrimeSumWeight::logp_over_p2, opt));
  if (name == "C_Omega")
    return ConstantEstimate::from(name, prime_part(PrimeSumWeight::inv_p2m1, opt),
                                  EstimateMethod::composite);
  if (name == "D_Omega")
    return composite((2.0 * g - Approx::exact(1.0)) * prime_part(PrimeSumWeight::inv_p2m1, opt) -
                     2.0 * prime_part(PrimeSumWeight::p2logp_over_p2m1_sq, opt));
  if (name == "M")
    return composite(g + prime_part(PrimeSumWeight::mertens_summand, opt));
  if (name == "K_omega")
    return composite(2.0 * (g - Approx::exact(1.0) +
                            prime_part(PrimeSumWeight::komega_summand, opt)));
  if (name == "K_Omega")
    return composite(2.0 * (g - Approx::exact(1.0) +
                            prime_part(PrimeSumWeight::kbigomega_summand, opt)));
  if (name == "C1_tau_lcm")
    return ConstantEstimate::from(name, c1_thm213_a(opt), EstimateMethod::euler_product);
  if (name == "zeta_sq_half") {
    Approx z = zeta(0.5).approx();
    return composite(z * z);
  }
  if (name == "coef_ratio_hyp") {
    Approx z32 = zeta(1.5).approx();
    return composite(z32 * z32 / zeta(3.0).approx());
  }
  throw UsageError("unknown constant '" + name + "'");
}

std::vector<ConstantEstimate> all_named_constants(const ConstantsOptions& opt) {
  static const char* names[] = {
      "gamma",      "zeta(1/2)",  "zeta(3/2)",  "zeta(2)",   "zeta(3)",
      "zeta'(2)",   "zeta'(3)",   "zeta''(2)",  "C_2omega",    "C1_tau",
      "D_recip",    "E_lcm",    "C_log",      "D_log",     "C_logkappa",
      "D_logkappa", "C_omega",    "D_omega",    "C_Omega",   "D_Omega",
      "M",          "K_omega",    "K_Omega",    "C1_tau_lcm", "zeta_sq_half",
      "coef_ratio_hyp",
  };
  std::vector<ConstantEstimate> out;
  for (const char* n : names) out.push_back(named_constant(n, opt));
  return out;
}

}  // namespace hypsum
