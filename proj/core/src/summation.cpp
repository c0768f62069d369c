#include "hypsum/summation.hpp"

#include <cmath>
#include <cstdio>

#include "hypsum/convolutes.hpp"

namespace hypsum {

std::string ExactSum::to_string() const {
  if (integral) return i128_to_string(ival);
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", fval);
  return buf;
}

AuxSum parse_aux_sum(const std::string& name) {
  if (name == "tau") return AuxSum::tau;
  if (name == "two_pow_omega") return AuxSum::two_pow_omega;
  if (name == "omega") return AuxSum::omega;
  if (name == "big_omega") return AuxSum::big_omega;
  if (name == "jordan2") return AuxSum::jordan2;
  if (name == "tau_squared") return AuxSum::tau_squared;
  if (name == "tau_log") return AuxSum::tau_log;
  if (name == "omega_tau") return AuxSum::omega_tau;
  if (name == "bigomega_tau") return AuxSum::bigomega_tau;
  throw UsageError("unknown auxiliary sum '" + name + "'");
}

Summator::Summator(u64 n_max, SummationConfig cfg) : n_max_(n_max), cfg_(cfg) {
  if (n_max < 1) throw UsageError("Summator: n_max must be >= 1");
  if (n_max <= sieve_config().segmented_threshold) fs_.emplace(n_max);
}

u64 Summator::check_x(double x) const {
  if (!(x >= 1.0)) throw UsageError("x must be >= 1");
  u64 y = u64(std::floor(x));
  if (y > n_max_)
    throw ResourceError("x = " + std::to_string(y) + " beyond table coverage n_max = " +
                        std::to_string(n_max_));
  return y;
}

u64 Summator::check_x_rect(double x) const {
  if (!(x >= 1.0)) throw UsageError("x must be >= 1");
  u64 y = u64(std::floor(x));
  if (y > cfg_.rectangular_cap)
    throw ResourceError("rectangular x = " + std::to_string(y) + " beyond the cap " +
                        std::to_string(cfg_.rectangular_cap));
  return y;
}

const FactorSieve* Summator::sieve() { return fs_ ? &*fs_ : nullptr; }

namespace {

ValueTable build_standard(StandardFunction f, u64 n_max, const FactorSieve* fs) {
  return fs ? sieve_standard(f, n_max, *fs) : sieve_standard(f, n_max);
}
ValueTable build_f(const FunctionSpec& spec, u64 n_max, const FactorSieve* fs) {
  return fs && fs->n_max() >= n_max ? build_f_table(spec, n_max, *fs)
                                    : build_f_table(spec, n_max);
}
ValueTable build_h(const FunctionSpec& spec, u64 n_max, const FactorSieve* fs) {
  return fs && fs->n_max() >= n_max ? build_h_table(spec, n_max, *fs)
                                    : build_h_table(spec, n_max);
}

std::vector<i64> prefix_of(const std::vector<i64>& vals, const char* what) {
  std::vector<i64> p(vals.size());
  p[0] = 0;
  for (u64 n = 1; n < vals.size(); ++n) p[n] = checked_add(p[n - 1], vals[n], what);
  return p;
}

}  // namespace

const std::vector<i64>& Summator::iprefix(const std::string& key) {
  std::lock_guard<std::mutex> lock(build_mutex_);
  auto it = iprefix_.find(key);
  if (it != iprefix_.end()) return it->second;

  std::vector<i64> p;
  if (key == "tau" || key == "two_omega" || key == "omega" || key == "big_omega" ||
      key == "tau_sq") {
    StandardFunction f = key == "tau"        ? StandardFunction::tau
                         : key == "two_omega" ? StandardFunction::two_pow_omega
                         : key == "omega"     ? StandardFunction::omega
                         : key == "big_omega" ? StandardFunction::big_omega
                                              : StandardFunction::tau_squared;
    p = prefix_of(build_standard(f, n_max_, sieve()).ints(), "summatory prefix");
  } else if (key == "omega_tau" || key == "bigomega_tau") {
    ValueTable w = build_standard(
        key == "omega_tau" ? StandardFunction::omega : StandardFunction::big_omega, n_max_,
        sieve());
    ValueTable tau = build_standard(StandardFunction::tau, n_max_, sieve());
    p.assign(n_max_ + 1, 0);
    for (u64 n = 1; n <= n_max_; ++n)
      p[n] = checked_add(p[n - 1], checked_mul(w.at_int(n), tau.at_int(n), "w*tau prefix"),
                         "w*tau prefix");
  } else if (key == "id_two_omega") {
    ValueTable two = build_standard(StandardFunction::two_pow_omega, n_max_, sieve());
    p.assign(n_max_ + 1, 0);
    for (u64 n = 1; n <= n_max_; ++n)
      p[n] = checked_add(p[n - 1], checked_mul(i64(n), two.at_int(n), "n 2^omega prefix"),
                         "n 2^omega prefix");
  } else {
    throw UsageError("internal: unknown integer prefix key " + key);
  }
  return iprefix_.emplace(key, std::move(p)).first->second;
}

const std::vector<double>& Summator::dprefix(const std::string& key) {
  std::lock_guard<std::mutex> lock(build_mutex_);
  auto it = dprefix_.find(key);
  if (it != dprefix_.end()) return it->second;

  std::vector<double> p(n_max_ + 1, 0.0);
  if (key == "tau_log") {
    ValueTable tau = build_standard(StandardFunction::tau, n_max_, sieve());
    Kahan acc;
    for (u64 n = 1; n <= n_max_; ++n) {
      acc.add(double(tau.at_int(n)) * std::log(double(n)));
      p[n] = acc.value();
    }
  } else if (key == "tau_over_n") {
    ValueTable tau = build_standard(StandardFunction::tau, n_max_, sieve());
    Kahan acc;
    for (u64 n = 1; n <= n_max_; ++n) {
      acc.add(double(tau.at_int(n)) / double(n));
      p[n] = acc.value();
    }
  } else {
    throw UsageError("internal: unknown real prefix key " + key);
  }
  return dprefix_.emplace(key, std::move(p)).first->second;
}

const ValueTable& Summator::f_small(const FunctionSpec& spec) {
  std::lock_guard<std::mutex> lock(build_mutex_);
  std::string key = "f:" + spec.key();
  auto it = small_tables_.find(key);
  if (it != small_tables_.end()) return it->second;
  u64 root = std::max<u64>(isqrt(n_max_), 1);
  return small_tables_.emplace(key, build_f(spec, root, sieve())).first->second;
}

const ValueTable& Summator::h_small(const FunctionSpec& spec) {
  std::lock_guard<std::mutex> lock(build_mutex_);
  std::string key = "h:" + spec.key();
  auto it = small_tables_.find(key);
  if (it != small_tables_.end()) return it->second;
  u64 root = std::max<u64>(isqrt(n_max_), 1);
  return small_tables_.emplace(key, build_h(spec, root, sieve())).first->second;
}

const std::vector<i64>& Summator::int_full_prefix(const FunctionSpec& spec) {
  std::lock_guard<std::mutex> lock(build_mutex_);
  std::string key = spec.key();
  auto it = int_full_prefix_.find(key);
  if (it != int_full_prefix_.end()) return it->second;
  std::vector<i64> p = prefix_of(build_f(spec, n_max_, sieve()).ints(), "f prefix");
  return int_full_prefix_.emplace(key, std::move(p)).first->second;
}

const std::vector<double>& Summator::real_full_prefix(const FunctionSpec& spec) {
  std::lock_guard<std::mutex> lock(build_mutex_);
  std::string key = spec.key();
  auto it = real_full_prefix_.find(key);
  if (it != real_full_prefix_.end()) return it->second;
  ValueTable f = build_f(spec, n_max_, sieve());
  std::vector<double> p(n_max_ + 1, 0.0);
  Kahan acc;
  for (u64 n = 1; n <= n_max_; ++n) {
    acc.add(f.at(n));
    p[n] = acc.value();
  }
  return real_full_prefix_.emplace(key, std::move(p)).first->second;
}

const std::vector<std::pair<u32, i64>>& Summator::psi_sparse() {
  std::lock_guard<std::mutex> lock(build_mutex_);
  if (!psi_sparse_built_) {
    ValueTable psi = build_standard(StandardFunction::psi, n_max_, sieve());
    for (u64 n = 1; n <= n_max_; ++n)
      if (psi.at_int(n) != 0) psi_sparse_.emplace_back(u32(n), psi.at_int(n));
    psi_sparse_built_ = true;
  }
  return psi_sparse_;
}

// ---------------------------------------------------------------------------
// gcd-side sums
// ---------------------------------------------------------------------------

ExactSum Summator::gcd_sum_weighted(const ValueTable& weights, const std::string& prefix_key,
                                    u64 y) {
  const std::vector<i64>& pre = iprefix(prefix_key);
  if (weights.is_integer()) {
    i128 s = 0;
    for (u64 d = 1; d * d <= y; ++d) {
      i64 w = weights.at_int(d);
      if (w) s += i128(w) * pre[y / (d * d)];
    }
    return ExactSum::of_int(s);
  }
  Kahan s;
  for (u64 d = 1; d * d <= y; ++d) {
    double w = weights.at(d);
    if (w != 0.0) s.add(w * double(pre[y / (d * d)]));
  }
  return ExactSum::of_real(s.value());
}

ExactSum Summator::sum_gcd_hyperbolic(const FunctionSpec& spec, double x, GcdSumMethod method) {
  u64 y = check_x(x);
  switch (method) {
    case GcdSumMethod::via_2omega:
      return gcd_sum_weighted(f_small(spec), "two_omega", y);
    case GcdSumMethod::via_tau:
      return gcd_sum_weighted(h_small(spec), "tau", y);
    case GcdSumMethod::direct_table: {
      // an independent accumulation path: per-n G_f by the triple-loop
      // identity, then a prefix scan
      std::string key = "gdirect:" + spec.key();
      std::lock_guard<std::mutex> lock(build_mutex_);
      if (spec.integer_valued()) {
        auto it = int_full_prefix_.find(key);
        if (it == int_full_prefix_.end()) {
          ConvoluteTable g = fs_ ? gf_table_identity(spec, n_max_, ConvoluteMethod::gf1, *fs_)
                                 : gf_table_identity(spec, n_max_, ConvoluteMethod::gf1);
          it = int_full_prefix_.emplace(key, prefix_of(g.table.ints(), "G_f prefix")).first;
        }
        return ExactSum::of_int(it->second[y]);
      }
      auto it = real_full_prefix_.find(key);
      if (it == real_full_prefix_.end()) {
        ConvoluteTable g = fs_ ? gf_table_identity(spec, n_max_, ConvoluteMethod::gf1, *fs_)
                               : gf_table_identity(spec, n_max_, ConvoluteMethod::gf1);
        std::vector<double> p(n_max_ + 1, 0.0);
        Kahan acc;
        for (u64 n = 1; n <= n_max_; ++n) {
          acc.add(g.table.at(n));
          p[n] = acc.value();
        }
        it = real_full_prefix_.emplace(key, std::move(p)).first;
      }
      return ExactSum::of_real(it->second[y]);
    }
  }
  throw UsageError("sum_gcd_hyperbolic: bad method");
}

// sum_{n<=y} (f*1)(n) = sum_{d<=y} f(d) floor(y/d), by quotient blocks
i128 Summator::divisor_sum_int(const FunctionSpec& spec, u64 y) {
  const std::vector<i64>& pre = int_full_prefix(spec);
  i128 s = 0;
  for (u64 l = 1; l <= y;) {
    u64 q = y / l;
    u64 r = y / q;
    s += i128(q) * (i128(pre[r]) - i128(pre[l - 1]));
    l = r + 1;
  }
  return s;
}

double Summator::divisor_sum_real(const FunctionSpec& spec, u64 y) {
  const std::vector<double>& pre = real_full_prefix(spec);
  Kahan s;
  for (u64 l = 1; l <= y;) {
    u64 q = y / l;
    u64 r = y / q;
    s.add(double(q) * (pre[r] - pre[l - 1]));
    l = r + 1;
  }
  return s.value();
}

ExactSum Summator::sum_lcm_hyperbolic(const FunctionSpec& spec, double x, LcmSumMethod method) {
  u64 y = check_x(x);
  if (method == LcmSumMethod::identity) {
    switch (spec.family) {
      case Family::tau: {
        // sum_n L_tau(n) = sum_{dk<=y} psi(d) tau^2(k); psi lives on
        // squarefull numbers only, so the d-loop is ~sqrt(y) terms
        const auto& pre = iprefix("tau_sq");
        i128 s = 0;
        for (auto [d, v] : psi_sparse()) {
          if (d > y) break;
          s += i128(v) * pre[y / d];
        }
        return ExactSum::of_int(s);
      }
      case Family::id: {
        // L_id(n) = sum_{a^2 c = n} a c 2^omega(c)
        const auto& pre = iprefix("id_two_omega");
        i128 s = 0;
        for (u64 a = 1; a * a <= y; ++a) s += i128(a) * pre[y / (a * a)];
        return ExactSum::of_int(s);
      }
      case Family::big_omega: {
        // completely additive: sum f(n) tau(n) - sum G_f
        i128 ft = iprefix("bigomega_tau")[y];
        ExactSum g = sum_gcd_hyperbolic(spec, double(y), GcdSumMethod::via_2omega);
        return ExactSum::of_int(ft - g.ival);
      }
      case Family::log: {
        double ft = dprefix("tau_log")[y];
        ExactSum g = sum_gcd_hyperbolic(spec, double(y), GcdSumMethod::via_2omega);
        return ExactSum::of_real(ft - g.fval);
      }
      case Family::omega: {
        // additive: 2 sum (f*1) - sum G_f
        i128 ds = divisor_sum_int(spec, y);
        ExactSum g = sum_gcd_hyperbolic(spec, double(y), GcdSumMethod::via_2omega);
        return ExactSum::of_int(2 * ds - g.ival);
      }
      case Family::log_kappa:
      case Family::general_s_eta: {
        double ds = divisor_sum_real(spec, y);
        ExactSum g = sum_gcd_hyperbolic(spec, double(y), GcdSumMethod::via_2omega);
        return ExactSum::of_real(2.0 * ds - g.fval);
      }
      default:
        break;  // no cheap identity; fall through to the table route
    }
  }
  std::string key = "ldirect:" + spec.key();
  std::lock_guard<std::mutex> lock(build_mutex_);
  if (spec.integer_valued()) {
    auto it = int_full_prefix_.find(key);
    if (it == int_full_prefix_.end()) {
      ConvoluteTable l = fs_ ? lf_table_identity(spec, n_max_, ConvoluteMethod::lf2, *fs_)
                             : lf_table_identity(spec, n_max_, ConvoluteMethod::lf2);
      it = int_full_prefix_.emplace(key, prefix_of(l.table.ints(), "L_f prefix")).first;
    }
    return ExactSum::of_int(it->second[y]);
  }
  auto it = real_full_prefix_.find(key);
  if (it == real_full_prefix_.end()) {
    ConvoluteTable l = fs_ ? lf_table_identity(spec, n_max_, ConvoluteMethod::lf2, *fs_)
                           : lf_table_identity(spec, n_max_, ConvoluteMethod::lf2);
    std::vector<double> p(n_max_ + 1, 0.0);
    Kahan acc;
    for (u64 n = 1; n <= n_max_; ++n) {
      acc.add(l.table.at(n));
      p[n] = acc.value();
    }
    it = real_full_prefix_.emplace(key, std::move(p)).first;
  }
  return ExactSum::of_real(it->second[y]);
}

double Summator::sum_lcm_id_via_reciprocal(double x) {
  u64 y = check_x(x);
  FunctionSpec recip = FunctionSpec::make(Family::reciprocal);
  ConvoluteTable g = fs_ && fs_->n_max() >= y
                         ? gf_table_identity(recip, y, ConvoluteMethod::gf3, *fs_)
                         : gf_table_identity(recip, y, ConvoluteMethod::gf3);
  Kahan s;
  for (u64 n = 1; n <= y; ++n) s.add(double(n) * g.table.at(n));
  return s.value();
}

// ---------------------------------------------------------------------------
// rectangular sums
// ---------------------------------------------------------------------------

void Summator::ensure_rect_tables() {
  std::lock_guard<std::mutex> lock(build_mutex_);
  if (rect_built_) return;
  const u64 cap = cfg_.rectangular_cap;
  FactorSieve local(cap);

  // Pillai: sum_{m<=n} (m,n) = (id * phi)(n)
  ValueTable id = build_f_table(FunctionSpec::make(Family::id), cap, local);
  ValueTable phi = build_h_table(FunctionSpec::make(Family::id), cap, local);
  ValueTable pillai = dirichlet_convolve(id, phi);
  rect_gcd_prefix_.assign(cap + 1, 0);
  for (u64 n = 1; n <= cap; ++n)
    rect_gcd_prefix_[n] = rect_gcd_prefix_[n - 1] + i128(pillai.at_int(n));

  // triangular lcm: sum_{m<=n} [m,n] = n (1 + sum_{d|n} d phi(d))/2
  ValueTable dphi(cap, TableKind::integer_exact);
  for (u64 n = 1; n <= cap; ++n)
    dphi.set_int(n, checked_mul(i64(n), phi.at_int(n), "d phi(d)"));
  ValueTable ones(cap, TableKind::integer_exact);
  for (u64 n = 1; n <= cap; ++n) ones.set_int(n, 1);
  ValueTable v = dirichlet_convolve(dphi, ones);
  rect_lcm_prefix_.assign(cap + 1, 0);
  for (u64 n = 1; n <= cap; ++n) {
    i128 q = i128(n) * (1 + i128(v.at_int(n)));
    rect_lcm_prefix_[n] = rect_lcm_prefix_[n - 1] + q / 2;
  }

  ValueTable j2 = sieve_standard(StandardFunction::jordan2, cap, local);
  rect_jordan2_.assign(cap + 1, 0);
  for (u64 n = 1; n <= cap; ++n) rect_jordan2_[n] = j2.at_int(n);

  rect_harmonic_.assign(cap + 1, 0.0);
  Kahan h;
  for (u64 n = 1; n <= cap; ++n) {
    h.add(1.0 / double(n));
    rect_harmonic_[n] = h.value();
  }
  rect_built_ = true;
}

ExactSum Summator::sum_rectangular(RectKind kind, double x) {
  u64 y = check_x_rect(x);
  ensure_rect_tables();
  switch (kind) {
    case RectKind::gcd: {
      // 2 sum_{n<=y} Pillai(n) - sum_{n<=y} n
      i128 tri = rect_gcd_prefix_[y];
      i128 diag = i128(y) * (y + 1) / 2;
      return ExactSum::of_int(2 * tri - diag);
    }
    case RectKind::lcm: {
      i128 tri = rect_lcm_prefix_[y];
      i128 diag = i128(y) * (y + 1) / 2;
      return ExactSum::of_int(2 * tri - diag);
    }
    case RectKind::ratio: {
      // (m,n)/[m,n] = (m,n)^2/(mn) and (m,n)^2 = sum_{d|(m,n)} phi_2(d):
      // sum = sum_{d<=y} phi_2(d)/d^2 * H(floor(y/d))^2
      Kahan s;
      for (u64 d = 1; d <= y; ++d) {
        double hh = rect_harmonic_[y / d];
        s.add(double(rect_jordan2_[d]) / (double(d) * double(d)) * hh * hh);
      }
      return ExactSum::of_real(s.value());
    }
  }
  throw UsageError("sum_rectangular: bad kind");
}

double Summator::sum_gcd_over_lcm_hyperbolic(double x) {
  u64 y = check_x(x);
  // jordan2 needed to sqrt(n_max) only
  std::string key = "jordan2_small";
  std::unique_lock<std::mutex> lock(build_mutex_);
  auto it = small_tables_.find(key);
  if (it == small_tables_.end()) {
    u64 root = std::max<u64>(isqrt(n_max_), 1);
    it = small_tables_.emplace(key, build_standard(StandardFunction::jordan2, root, sieve()))
             .first;
  }
  const ValueTable& j2 = it->second;
  lock.unlock();
  const auto& pre = dprefix("tau_over_n");
  Kahan s;
  for (u64 d = 1; d * d <= y; ++d)
    s.add(double(j2.at_int(d)) / (double(d) * double(d)) * pre[y / (d * d)]);
  return s.value();
}

ExactSum Summator::summatory_auxiliary(AuxSum name, double x) {
  u64 y = check_x(x);
  switch (name) {
    case AuxSum::tau: return ExactSum::of_int(iprefix("tau")[y]);
    case AuxSum::two_pow_omega: return ExactSum::of_int(iprefix("two_omega")[y]);
    case AuxSum::omega: return ExactSum::of_int(iprefix("omega")[y]);
    case AuxSum::big_omega: return ExactSum::of_int(iprefix("big_omega")[y]);
    case AuxSum::tau_squared: return ExactSum::of_int(iprefix("tau_sq")[y]);
    case AuxSum::omega_tau: return ExactSum::of_int(iprefix("omega_tau")[y]);
    case AuxSum::bigomega_tau: return ExactSum::of_int(iprefix("bigomega_tau")[y]);
    case AuxSum::tau_log: return ExactSum::of_real(dprefix("tau_log")[y]);
    case AuxSum::jordan2: {
      // prefix sums of phi_2 overflow int64 well below n_max, so scan the
      // value table and accumulate in i128
      {
        std::lock_guard<std::mutex> lock(build_mutex_);
        if (jordan2_vals_.empty())
          jordan2_vals_ = build_standard(StandardFunction::jordan2, n_max_, sieve()).ints();
      }
      i128 s = 0;
      for (u64 n = 1; n <= y; ++n) s += i128(jordan2_vals_[n]);
      return ExactSum::of_int(s);
    }
  }
  throw UsageError("summatory_auxiliary: bad name");
}

}  // namespace hypsum
