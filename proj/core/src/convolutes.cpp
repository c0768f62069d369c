#include "hypsum/convolutes.hpp"

#include <cmath>
#include <numeric>

#include "hypsum/constants.hpp"

namespace hypsum {

const char* convolute_method_name(ConvoluteMethod m) {
  switch (m) {
    case ConvoluteMethod::brute: return "brute";
    case ConvoluteMethod::gf1: return "Gf1";
    case ConvoluteMethod::gf2: return "Gf2";
    case ConvoluteMethod::gf3: return "Gf3";
    case ConvoluteMethod::lf1: return "Lf1";
    case ConvoluteMethod::lf2: return "Lf2";
    case ConvoluteMethod::additive_relation: return "additive_relation";
    case ConvoluteMethod::psi_tau2: return "psi_tau2";
  }
  return "?";
}

namespace {

// per-n brute over divisor pairs; values are small enough that double holds
// integer results exactly
double brute_value(ConvoluteSide side, const ValueTable& f, u64 n, const FactorSieve& fs) {
  double s = 0.0;
  for (u64 d : fs.divisors(n)) {
    u64 e = n / d;
    u64 g = std::gcd(d, e);
    s += f.at(side == ConvoluteSide::gcd ? g : d / g * e);
  }
  return s;
}

}  // namespace

double gf_brute(const FunctionSpec& spec, u64 n, const FactorSieve& fs) {
  if (n < 1 || n > fs.n_max()) throw UsageError("gf_brute: n out of sieve range");
  ValueTable f = build_f_table(spec, std::max<u64>(isqrt(n), 1), fs);
  return brute_value(ConvoluteSide::gcd, f, n, fs);
}

double lf_brute(const FunctionSpec& spec, u64 n, const FactorSieve& fs) {
  if (n < 1 || n > fs.n_max()) throw UsageError("lf_brute: n out of sieve range");
  ValueTable f = build_f_table(spec, n, fs);
  return brute_value(ConvoluteSide::lcm, f, n, fs);
}

ConvoluteTable brute_table(ConvoluteSide side, const FunctionSpec& spec, u64 n_max,
                           const FactorSieve& fs) {
  ValueTable f = build_f_table(spec, side == ConvoluteSide::gcd ? std::max<u64>(isqrt(n_max), 1)
                                                                : n_max,
                               fs);
  TableKind kind = spec.integer_valued() ? TableKind::integer_exact : TableKind::floating;
  ValueTable out(n_max, kind);
  for (u64 n = 1; n <= n_max; ++n) {
    if (kind == TableKind::integer_exact) {
      i64 s = 0;
      for (u64 d : fs.divisors(n)) {
        u64 e = n / d;
        u64 g = std::gcd(d, e);
        s = checked_add(s, f.at_int(side == ConvoluteSide::gcd ? g : d / g * e), "brute_table");
      }
      out.set_int(n, s);
    } else {
      out.set_real(n, brute_value(side, f, n, fs));
    }
  }
  return {spec, side, ConvoluteMethod::brute, std::move(out)};
}

namespace {

// out[a^2 c] += w[a] * t[c]; the workhorse behind Gf2/Gf3 (cost ~ zeta(2) n)
template <typename Acc>
void accumulate_sq(const ValueTable& out, Acc&& acc) {
  const u64 n = out.n_max();
  for (u64 a = 1; a * a <= n; ++a) {
    const u64 a2 = a * a;
    for (u64 c = 1; c <= n / a2; ++c) acc(a2 * c, a, c);
  }
}

ValueTable make_out(const FunctionSpec& spec, u64 n_max) {
  return ValueTable(n_max, spec.integer_valued() ? TableKind::integer_exact
                                                 : TableKind::floating);
}

}  // namespace

static ConvoluteTable gf_impl(const FunctionSpec& spec, u64 n_max, ConvoluteMethod which,
                              const FactorSieve& fs) {
  ValueTable out = make_out(spec, n_max);
  const u64 root = std::max<u64>(isqrt(n_max), 1);
  switch (which) {
    case ConvoluteMethod::gf1: {
      ValueTable f = build_f_table(spec, root, fs);
      ValueTable mu = sieve_standard(StandardFunction::mu, root, fs);
      ValueTable tau = sieve_standard(StandardFunction::tau, n_max, fs);
      // sum over a^2 b^2 c = n of f(a) mu(b) tau(c)
      if (out.is_integer()) {
        auto& o = out.ints();
        for (u64 a = 1; a * a <= n_max; ++a) {
          i64 fa = f.at_int(a);
          if (fa == 0) continue;
          for (u64 b = 1; a * a * b * b <= n_max; ++b) {
            i64 m = mu.at_int(b);
            if (m == 0) continue;
            u64 ab2 = a * a * b * b;
            i64 w = checked_mul(fa, m, "Gf1");
            for (u64 c = 1; c <= n_max / ab2; ++c)
              o[ab2 * c] = checked_add(o[ab2 * c], checked_mul(w, tau.at_int(c), "Gf1"), "Gf1");
          }
        }
      } else {
        auto& o = out.reals();
        for (u64 a = 1; a * a <= n_max; ++a) {
          double fa = f.at(a);
          if (fa == 0.0) continue;
          for (u64 b = 1; a * a * b * b <= n_max; ++b) {
            i64 m = mu.at_int(b);
            if (m == 0) continue;
            u64 ab2 = a * a * b * b;
            double w = fa * double(m);
            for (u64 c = 1; c <= n_max / ab2; ++c) o[ab2 * c] += w * double(tau.at_int(c));
          }
        }
      }
      break;
    }
    case ConvoluteMethod::gf2: {
      ValueTable h = build_h_table(spec, root, fs);
      ValueTable tau = sieve_standard(StandardFunction::tau, n_max, fs);
      if (out.is_integer()) {
        auto& o = out.ints();
        accumulate_sq(out, [&](u64 n, u64 a, u64 c) {
          o[n] = checked_add(o[n], checked_mul(h.at_int(a), tau.at_int(c), "Gf2"), "Gf2");
        });
      } else {
        auto& o = out.reals();
        accumulate_sq(out, [&](u64 n, u64 a, u64 c) {
          o[n] += h.at(a) * double(tau.at_int(c));
        });
      }
      break;
    }
    case ConvoluteMethod::gf3: {
      ValueTable f = build_f_table(spec, root, fs);
      ValueTable two = sieve_standard(StandardFunction::two_pow_omega, n_max, fs);
      if (out.is_integer()) {
        auto& o = out.ints();
        accumulate_sq(out, [&](u64 n, u64 a, u64 c) {
          o[n] = checked_add(o[n], checked_mul(f.at_int(a), two.at_int(c), "Gf3"), "Gf3");
        });
      } else {
        auto& o = out.reals();
        accumulate_sq(out, [&](u64 n, u64 a, u64 c) {
          o[n] += f.at(a) * double(two.at_int(c));
        });
      }
      break;
    }
    default:
      throw UsageError("gf_table_identity: method must be one of Gf1|Gf2|Gf3");
  }
  return {spec, ConvoluteSide::gcd, which, std::move(out)};
}

ConvoluteTable gf_table_identity(const FunctionSpec& spec, u64 n_max, ConvoluteMethod which,
                                 const FactorSieve& fs) {
  if (fs.n_max() < n_max) throw UsageError("gf_table_identity: sieve does not cover n_max");
  return gf_impl(spec, n_max, which, fs);
}
ConvoluteTable gf_table_identity(const FunctionSpec& spec, u64 n_max, ConvoluteMethod which) {
  FactorSieve fs(n_max);
  return gf_impl(spec, n_max, which, fs);
}

static ConvoluteTable lf_impl(const FunctionSpec& spec, u64 n_max, ConvoluteMethod which,
                              const FactorSieve& fs) {
  ValueTable out = make_out(spec, n_max);
  switch (which) {
    case ConvoluteMethod::lf1: {
      // literal form: n = a^2 b^2 c, add f(n/a) mu(b) tau(c)
      ValueTable f = build_f_table(spec, n_max, fs);
      const u64 root = std::max<u64>(isqrt(n_max), 1);
      ValueTable mu = sieve_standard(StandardFunction::mu, root, fs);
      ValueTable tau = sieve_standard(StandardFunction::tau, n_max, fs);
      if (out.is_integer()) {
        auto& o = out.ints();
        for (u64 a = 1; a * a <= n_max; ++a)
          for (u64 b = 1; a * a * b * b <= n_max; ++b) {
            i64 m = mu.at_int(b);
            if (m == 0) continue;
            u64 ab2 = a * a * b * b;
            for (u64 c = 1; c <= n_max / ab2; ++c) {
              u64 n = ab2 * c;
              i64 w = checked_mul(f.at_int(n / a), m, "Lf1");
              o[n] = checked_add(o[n], checked_mul(w, tau.at_int(c), "Lf1"), "Lf1");
            }
          }
      } else {
        auto& o = out.reals();
        for (u64 a = 1; a * a <= n_max; ++a)
          for (u64 b = 1; a * a * b * b <= n_max; ++b) {
            i64 m = mu.at_int(b);
            if (m == 0) continue;
            u64 ab2 = a * a * b * b;
            for (u64 c = 1; c <= n_max / ab2; ++c) {
              u64 n = ab2 * c;
              o[n] += f.at(n / a) * double(m) * double(tau.at_int(c));
            }
          }
      }
      break;
    }
    case ConvoluteMethod::lf2: {
      ValueTable f = build_f_table(spec, n_max, fs);
      ValueTable two = sieve_standard(StandardFunction::two_pow_omega, n_max, fs);
      if (out.is_integer()) {
        auto& o = out.ints();
        for (u64 a = 1; a * a <= n_max; ++a) {
          u64 a2 = a * a;
          for (u64 c = 1; c <= n_max / a2; ++c)
            o[a2 * c] = checked_add(
                o[a2 * c], checked_mul(f.at_int(a * c), two.at_int(c), "Lf2"), "Lf2");
        }
      } else {
        auto& o = out.reals();
        for (u64 a = 1; a * a <= n_max; ++a) {
          u64 a2 = a * a;
          for (u64 c = 1; c <= n_max / a2; ++c)
            o[a2 * c] += f.at(a * c) * double(two.at_int(c));
        }
      }
      break;
    }
    default:
      throw UsageError("lf_table_identity: method must be one of Lf1|Lf2");
  }
  return {spec, ConvoluteSide::lcm, which, std::move(out)};
}

ConvoluteTable lf_table_identity(const FunctionSpec& spec, u64 n_max, ConvoluteMethod which,
                                 const FactorSieve& fs) {
  if (fs.n_max() < n_max) throw UsageError("lf_table_identity: sieve does not cover n_max");
  return lf_impl(spec, n_max, which, fs);
}
ConvoluteTable lf_table_identity(const FunctionSpec& spec, u64 n_max, ConvoluteMethod which) {
  FactorSieve fs(n_max);
  return lf_impl(spec, n_max, which, fs);
}

static ConvoluteTable lf_additive_impl(const FunctionSpec& spec, u64 n_max,
                                       const FactorSieve& fs) {
  Additivity add = spec.additivity();
  if (add == Additivity::none)
    throw UsageError("lf_via_additive_relation: spec '" + spec.key() + "' is not additive");
  ConvoluteTable g = gf_impl(spec, n_max, ConvoluteMethod::gf3, fs);
  ValueTable f = build_f_table(spec, n_max, fs);
  ValueTable out = make_out(spec, n_max);
  if (add == Additivity::completely_additive) {
    // L_f(n) = f(n) tau(n) - G_f(n)
    ValueTable tau = sieve_standard(StandardFunction::tau, n_max, fs);
    if (out.is_integer()) {
      for (u64 n = 1; n <= n_max; ++n)
        out.set_int(n, checked_add(checked_mul(f.at_int(n), tau.at_int(n), "Lf additive"),
                                   -g.table.at_int(n), "Lf additive"));
    } else {
      for (u64 n = 1; n <= n_max; ++n)
        out.set_real(n, f.at(n) * double(tau.at_int(n)) - g.table.at(n));
    }
  } else {
    // L_f(n) = 2 (f*1)(n) - G_f(n)
    if (out.is_integer()) {
      auto& o = out.ints();
      for (u64 d = 1; d <= n_max; ++d) {
        i64 fd = f.at_int(d);
        if (fd == 0) continue;
        for (u64 m = d; m <= n_max; m += d)
          o[m] = checked_add(o[m], checked_mul(2, fd, "Lf additive"), "Lf additive");
      }
      for (u64 n = 1; n <= n_max; ++n)
        o[n] = checked_add(o[n], -g.table.at_int(n), "Lf additive");
    } else {
      auto& o = out.reals();
      for (u64 d = 1; d <= n_max; ++d) {
        double fd = f.at(d);
        if (fd == 0.0) continue;
        for (u64 m = d; m <= n_max; m += d) o[m] += 2.0 * fd;
      }
      for (u64 n = 1; n <= n_max; ++n) o[n] -= g.table.at(n);
    }
  }
  return {spec, ConvoluteSide::lcm, ConvoluteMethod::additive_relation, std::move(out)};
}

ConvoluteTable lf_via_additive_relation(const FunctionSpec& spec, u64 n_max,
                                        const FactorSieve& fs) {
  if (fs.n_max() < n_max)
    throw UsageError("lf_via_additive_relation: sieve does not cover n_max");
  return lf_additive_impl(spec, n_max, fs);
}
ConvoluteTable lf_via_additive_relation(const FunctionSpec& spec, u64 n_max) {
  FactorSieve fs(n_max);
  return lf_additive_impl(spec, n_max, fs);
}

static ConvoluteTable lf_psi_impl(u64 n_max, const FactorSieve& fs) {
  ValueTable psi = sieve_standard(StandardFunction::psi, n_max, fs);
  ValueTable tau2 = sieve_standard(StandardFunction::tau_squared, n_max, fs);
  ValueTable out = dirichlet_convolve(psi, tau2);
  return {FunctionSpec::make(Family::tau), ConvoluteSide::lcm, ConvoluteMethod::psi_tau2,
          std::move(out)};
}

ConvoluteTable lf_tau_via_psi(u64 n_max, const FactorSieve& fs) {
  if (fs.n_max() < n_max) throw UsageError("lf_tau_via_psi: sieve does not cover n_max");
  return lf_psi_impl(n_max, fs);
}
ConvoluteTable lf_tau_via_psi(u64 n_max) {
  FactorSieve fs(n_max);
  return lf_psi_impl(n_max, fs);
}

// ---------------------------------------------------------------------------
// Dirichlet series identity check
// ---------------------------------------------------------------------------

DirichletSeriesCheck dirichlet_series_check_table(const ValueTable& f, double growth_const,
                                                  double beta, double delta, double z) {
  if (z <= std::max(1.0, (1.0 + beta) / 2.0))
    throw UsageError("dirichlet_series_check: z is outside the convergent range");
  if (z <= 1.5)
    throw UsageError("dirichlet_series_check: tail bounds need z > 3/2");
  const u64 n_terms = f.n_max();
  if (n_terms < 400) throw UsageError("dirichlet_series_check: table too short");

  // lhs: G_f through the 2^omega identity, summed as sum_{a^2 c <= N}
  ValueTable two = sieve_standard(StandardFunction::two_pow_omega, n_terms);
  Kahan lhs;
  for (u64 a = 1; a * a <= n_terms; ++a) {
    double fa = f.at(a);
    if (fa == 0.0) continue;
    for (u64 c = 1; c <= n_terms / (a * a); ++c)
      lhs.add(fa * double(two.at_int(c)) / std::pow(double(a) * double(a) * double(c), z));
  }

  // rhs: zeta^2(z)/zeta(2z) * truncated sum f(n)/n^{2z}
  Approx zz = zeta(z).approx();
  Approx factor = zz * zz / zeta(2.0 * z).approx();
  Kahan series, series_abs;
  for (u64 n = 1; n <= n_terms; ++n) {
    double t = f.at(n) / std::pow(double(n), 2.0 * z);
    series.add(t);
    series_abs.add(std::abs(t));
  }
  double series_tail = growth_const * tail_log_power(double(n_terms), 2.0 * z - beta, delta);
  Approx rhs = factor * Approx{series.value(), series_tail + 1e-16 * series_abs.value()};

  // lhs truncation: |G_f(n)| <= sum_{a^2 c = n} |f(a)| 2^omega(c) and
  // 2^omega(c) <= tau(c) <= 2 sqrt(c), whence for y >= 1
  //   sum_{c > y} 2^omega(c)/c^z <= 2 y^{3/2 - z}/(z - 3/2).
  double lhs_tail = 0.0;
  const double zc = z - 1.5;
  for (u64 a = 1; a * a <= n_terms; ++a) {
    double fa = std::abs(f.at(a));
    if (fa == 0.0) continue;
    double y = double(n_terms) / (double(a) * double(a));
    lhs_tail += fa / std::pow(double(a), 2.0 * z) * 2.0 * std::pow(y, -zc) / zc;
  }
  // a > sqrt(N): the whole inner sum, bounded by 2 zeta(z - 1/2)
  Approx zhalf = zeta(z - 0.5).approx();
  double far = growth_const *
               tail_log_power(std::sqrt(double(n_terms)), 2.0 * z - beta, delta) * 2.0 *
               (zhalf.value + zhalf.bound);
  lhs_tail += far;

  DirichletSeriesCheck out;
  out.lhs = lhs.value();
  out.lhs_bound = lhs_tail + 1e-15 * std::abs(out.lhs);
  out.rhs = rhs.value;
  out.rhs_bound = rhs.bound;
  return out;
}

DirichletSeriesCheck dirichlet_series_check(const FunctionSpec& spec, double z, u64 n_terms) {
  ValueTable f = build_f_table(spec, n_terms);
  return dirichlet_series_check_table(f, spec.growth_const(), spec.growth_beta(),
                                      spec.growth_delta(), z);
}

}  // namespace hypsum
