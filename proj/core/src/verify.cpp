#include "hypsum/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace hypsum {

// ---------------------------------------------------------------------------
// FormulaId
// ---------------------------------------------------------------------------

namespace {

struct TagName {
  FormulaTag tag;
  const char* name;
};
constexpr TagName kTagNames[] = {
    {FormulaTag::rect_gcd, "rect_gcd"},
    {FormulaTag::hyp_gcd_id, "gcd_hyp_id"},
    {FormulaTag::rect_lcm, "rect_lcm"},
    {FormulaTag::rect_ratio, "rect_ratio"},
    {FormulaTag::tau_gcd, "tau_gcd"},
    {FormulaTag::generic_gcd, "generic_gcd"},
    {FormulaTag::recip_gcd, "recip_gcd"},
    {FormulaTag::fseta_gcd, "fseta_gcd"},
    {FormulaTag::log_gcd, "log_gcd"},
    {FormulaTag::logkappa_gcd, "logkappa_gcd"},
    {FormulaTag::omega_gcd, "omega_gcd"},
    {FormulaTag::bigomega_gcd, "bigomega_gcd"},
    {FormulaTag::lcm_hyp, "lcm_hyp"},
    {FormulaTag::log_lcm, "log_lcm"},
    {FormulaTag::omega_lcm, "omega_lcm"},
    {FormulaTag::bigomega_lcm, "bigomega_lcm"},
    {FormulaTag::tau_lcm, "tau_lcm"},
    {FormulaTag::ratio_hyp, "ratio_hyp"},
    {FormulaTag::aux_2omega, "aux_2omega"},
    {FormulaTag::aux_tau, "aux_tau"},
};

}  // namespace

FormulaId FormulaId::parse(const std::string& name) {
  for (const auto& t : kTagNames)
    if (name == t.name) return FormulaId{t.tag, std::nullopt};
  throw UsageError("unknown formula '" + name + "'");
}

std::string FormulaId::name() const {
  for (const auto& t : kTagNames)
    if (t.tag == tag) {
      std::string s = t.name;
      if (spec) s += "[" + spec->key() + "]";
      return s;
    }
  return "?";
}

std::vector<std::string> all_formula_names() {
  std::vector<std::string> out;
  for (const auto& t : kTagNames) out.emplace_back(t.name);
  return out;
}

// ---------------------------------------------------------------------------
// basis and envelopes
// ---------------------------------------------------------------------------

double basis_eval(BasisFn b, double x) {
  double lx = std::log(x);
  switch (b) {
    case BasisFn::x_log3x: return x * lx * lx * lx;
    case BasisFn::x_log2x: return x * lx * lx;
    case BasisFn::x_logx_loglogx: return x * lx * std::log(lx);
    case BasisFn::x_logx: return x * lx;
    case BasisFn::x: return x;
    case BasisFn::sqrt_x: return std::sqrt(x);
    case BasisFn::x2_logx: return x * x * lx;
    case BasisFn::x2: return x * x;
    case BasisFn::x4: return x * x * x * x;
  }
  return 0.0;
}

const char* basis_name(BasisFn b) {
  switch (b) {
    case BasisFn::x_log3x: return "x log^3 x";
    case BasisFn::x_log2x: return "x log^2 x";
    case BasisFn::x_logx_loglogx: return "x log x loglog x";
    case BasisFn::x_logx: return "x log x";
    case BasisFn::x: return "x";
    case BasisFn::sqrt_x: return "sqrt x";
    case BasisFn::x2_logx: return "x^2 log x";
    case BasisFn::x2: return "x^2";
    case BasisFn::x4: return "x^4";
  }
  return "?";
}

double lambda_factor(double x, double c) {
  if (x < 3.0) throw UsageError("lambda(x) needs x >= 3");
  double lx = std::log(x);
  return std::exp(-c * std::pow(lx, 0.6) * std::pow(std::log(lx), -0.2));
}

double envelope_eval(const EnvelopeSpec& env, double x, double lambda_c) {
  using Form = EnvelopeSpec::Form;
  bool needs_loglog = env.form == Form::sqrt_x_loglog || env.form == Form::sqrt_x_lambda ||
                      env.form == Form::x_pow_lambda || env.form == Form::x3_log23_loglog13;
  if (x < 3.0 && needs_loglog)
    throw UsageError("envelope with log log x needs x >= 3");
  if (x < 1.0) throw UsageError("envelope needs x >= 1");
  double lx = std::log(x);
  switch (env.form) {
    case Form::sqrt_x: return std::sqrt(x);
    case Form::sqrt_x_log_pow: return std::sqrt(x) * std::pow(lx, env.k);
    case Form::sqrt_x_loglog: return std::sqrt(x) * std::log(lx);
    case Form::sqrt_x_lambda: return std::sqrt(x) * lambda_factor(x, lambda_c);
    case Form::x_pow_lambda: return std::pow(x, env.a) * lambda_factor(x, lambda_c);
    case Form::log_pow: return std::pow(lx, env.k);
    case Form::x_pow: return std::pow(x, env.a);
    case Form::x_pow_log_pow: return std::pow(x, env.a) * std::pow(lx, env.k);
    case Form::x_linear: return x;
    case Form::x3_log23_loglog13:
      return x * x * x * std::pow(lx, 2.0 / 3.0) * std::pow(std::log(lx), 1.0 / 3.0);
  }
  return 0.0;
}

std::string EnvelopeSpec::to_string() const {
  using Form = EnvelopeSpec::Form;
  std::ostringstream os;
  switch (form) {
    case Form::sqrt_x: return "sqrt(x)";
    case Form::sqrt_x_log_pow:
      os << "sqrt(x) log^" << k << " x";
      return os.str();
    case Form::sqrt_x_loglog: return "sqrt(x) loglog x";
    case Form::sqrt_x_lambda: return "sqrt(x) lambda(x)";
    case Form::x_pow_lambda:
      os << "x^" << a << " lambda(x)";
      return os.str();
    case Form::log_pow:
      os << "log^" << k << " x";
      return os.str();
    case Form::x_pow:
      os << "x^" << a;
      return os.str();
    case Form::x_pow_log_pow:
      os << "x^" << a << " log^" << k << " x";
      return os.str();
    case Form::x_linear: return "x";
    case Form::x3_log23_loglog13: return "x^3 log^(2/3) x loglog^(1/3) x";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// main-term models
// ---------------------------------------------------------------------------

bool MainTermModel::has_fit_parameters() const { return fit_count() > 0; }

size_t MainTermModel::fit_count() const {
  size_t c = 0;
  for (const auto& t : terms)
    if (!t.coefficient) ++c;
  return c;
}

std::vector<std::string> MainTermModel::fit_names() const {
  std::vector<std::string> out;
  for (const auto& t : terms)
    if (!t.coefficient) out.push_back(t.name);
  return out;
}

namespace {

ModelTerm derived(std::string name, BasisFn b, Approx a) {
  return {std::move(name), b, a};
}
ModelTerm fit(std::string name, BasisFn b) { return {std::move(name), b, std::nullopt}; }

EnvelopeSpec env_sqrt() { return {EnvelopeSpec::Form::sqrt_x, 0, 0}; }
EnvelopeSpec env_sqrt_log(double k) { return {EnvelopeSpec::Form::sqrt_x_log_pow, 0, k}; }
EnvelopeSpec env_log_pow(double k) { return {EnvelopeSpec::Form::log_pow, 0, k}; }
EnvelopeSpec env_x_pow(double a) { return {EnvelopeSpec::Form::x_pow, a, 0}; }

// Envelope for an f falling under the general estimate:
// beta > 0 (or beta = 0, delta != -1) -> x^{(beta+1)/2} log^{delta+1};
// beta = 0, delta = -1 -> sqrt(x) loglog x; beta < 0 -> sqrt(x) lambda(x).
EnvelopeSpec general_envelope(const FunctionSpec& spec) {
  switch (spec.family) {
    case Family::omega:
    case Family::big_omega:
      return env_sqrt();
    case Family::log:
    case Family::log_kappa:
      return env_sqrt_log(1.0);
    case Family::general_s_eta:
      return env_sqrt_log(spec.eta);
    default:
      break;
  }
  double b = spec.growth_beta();
  double d = spec.growth_delta();
  if (b < 0.0) return {EnvelopeSpec::Form::sqrt_x_lambda, 0, 0};
  if (b == 0.0 && d == -1.0) return {EnvelopeSpec::Form::sqrt_x_loglog, 0, 0};
  return {EnvelopeSpec::Form::x_pow_log_pow, (b + 1.0) / 2.0, d + 1.0};
}

}  // namespace

MainTermModel model_for(const FormulaId& id, const ConstantsOptions& opt) {
  MainTermModel m;
  m.formula = id;
  Approx g = euler_gamma().approx();
  Approx z2 = zeta(2.0).approx();
  Approx z3 = zeta(3.0).approx();
  Approx zp2 = zeta(2.0, ZetaWant::first_derivative).approx();
  auto nc = [&](const char* n) { return named_constant(n, opt).approx(); };
  switch (id.tag) {
    case FormulaTag::rect_gcd: {
      Approx lead = Approx::exact(1.0) / z2;
      Approx second =
          (2.0 * g - Approx::exact(0.5) - Approx::exact(0.5) * z2 - zp2 / z2) / z2;
      m.terms = {derived("rect_gcd.x2logx", BasisFn::x2_logx, lead),
                 derived("rect_gcd.x2", BasisFn::x2, second)};
      m.envelope = env_x_pow(1.0 + 131.0 / 416.0);
      m.error_note = "O(x^{1+theta+eps}), theta the divisor-problem exponent";
      break;
    }
    case FormulaTag::hyp_gcd_id: {
      m.terms = {derived("gcd_hyp_id.xlog2x", BasisFn::x_log2x,
                         Approx::exact(0.25) / z2),
                 fit("gcd_hyp_id.c1", BasisFn::x_logx), fit("gcd_hyp_id.c2", BasisFn::x)};
      m.envelope = {EnvelopeSpec::Form::x_pow_log_pow, 547.0 / 832.0, 26947.0 / 8320.0};
      m.error_note = "O(x^{547/832} log^{26947/8320} x)";
      break;
    }
    case FormulaTag::rect_lcm: {
      m.terms = {derived("rect_lcm.x4", BasisFn::x4, z3 / (Approx::exact(4.0) * z2))};
      m.envelope = {EnvelopeSpec::Form::x3_log23_loglog13, 0, 0};
      m.error_note = "O(x^3 log^{2/3} x loglog^{1/3} x)";
      break;
    }
    case FormulaTag::rect_ratio: {
      m.terms = {derived("rect_ratio.x", BasisFn::x, Approx::exact(3.0))};
      m.envelope = env_log_pow(2.0);
      m.error_note = "O(log^2 x)";
      break;
    }
    case FormulaTag::tau_gcd: {
      Approx second = z2 * (2.0 * g - Approx::exact(1.0) + 2.0 * (zp2 / z2));
      m.terms = {derived("tau_gcd.xlogx", BasisFn::x_logx, z2),
                 derived("tau_gcd.x", BasisFn::x, second),
                 derived("tau_gcd.sqrtx", BasisFn::sqrt_x, nc("zeta_sq_half"))};
      m.envelope = env_sqrt();
      m.error_note = "O(x^{63/178+eps}), 63/178 = 0.353932";
      break;
    }
    case FormulaTag::generic_gcd: {
      if (!id.spec) throw UsageError("generic_gcd needs a function spec");
      CfDf cd = theorem22_constants(*id.spec, opt.n_terms);
      m.terms = {derived("generic_gcd.C_f", BasisFn::x_logx, cd.c.approx()),
                 derived("generic_gcd.D_f", BasisFn::x, cd.d.approx())};
      m.envelope = general_envelope(*id.spec);
      m.error_note = "general three-branch error";
      break;
    }
    case FormulaTag::recip_gcd: {
      Approx lead = z3 / z2;
      m.terms = {derived("recip_gcd.xlogx", BasisFn::x_logx, lead),
                 derived("recip_gcd.x", BasisFn::x, lead * nc("D_recip"))};
      m.envelope = {EnvelopeSpec::Form::sqrt_x_lambda, 0, 0};
      m.error_note = "O(sqrt(x) lambda(x)); O(x^{221/608+eps}) under RH";
      break;
    }
    case FormulaTag::fseta_gcd: {
      if (!id.spec) throw UsageError("fseta_gcd needs a function spec");
      CfDf cd = theorem24_constants(*id.spec, opt.p_max);
      m.terms = {derived("fseta_gcd.C_f", BasisFn::x_logx, cd.c.approx()),
                 derived("fseta_gcd.D_f", BasisFn::x, cd.d.approx())};
      double eta = id.spec->family == Family::general_s_eta ? id.spec->eta : 0.0;
      m.envelope = env_sqrt_log(eta);
      m.error_note = "O(sqrt(x) log^eta x)";
      break;
    }
    case FormulaTag::log_gcd: {
      m.terms = {derived("C_log", BasisFn::x_logx, nc("C_log")),
                 derived("D_log", BasisFn::x, nc("D_log"))};
      m.envelope = env_sqrt_log(1.0);
      m.error_note = "O(sqrt(x) log x)";
      break;
    }
    case FormulaTag::logkappa_gcd: {
      m.terms = {derived("C_logkappa", BasisFn::x_logx, nc("C_logkappa")),
                 derived("D_logkappa", BasisFn::x, nc("D_logkappa"))};
      m.envelope = env_sqrt_log(1.0);
      m.error_note = "O(sqrt(x) log x)";
      break;
    }
    case FormulaTag::omega_gcd: {
      m.terms = {derived("C_omega", BasisFn::x_logx, nc("C_omega")),
                 derived("D_omega", BasisFn::x, nc("D_omega"))};
      m.envelope = env_sqrt();
      m.error_note = "O(x^{1/2})";
      break;
    }
    case FormulaTag::bigomega_gcd: {
      m.terms = {derived("C_Omega", BasisFn::x_logx, nc("C_Omega")),
                 derived("D_Omega", BasisFn::x, nc("D_Omega"))};
      m.envelope = env_sqrt();
      m.error_note = "O(x^{1/2})";
      break;
    }
    case FormulaTag::lcm_hyp: {
      Approx lead = z3 / (Approx::exact(2.0) * z2);
      m.terms = {derived("lcm_hyp.x2logx", BasisFn::x2_logx, lead),
                 derived("lcm_hyp.x2", BasisFn::x2, lead * nc("E_lcm"))};
      m.envelope = {EnvelopeSpec::Form::x_pow_lambda, 1.5, 0};
      m.error_note = "O(x^{3/2} lambda(x))";
      break;
    }
    case FormulaTag::log_lcm: {
      Approx clog = nc("C_log");
      Approx dlog = nc("D_log");
      Approx two_g_m2 = 2.0 * g - Approx::exact(2.0);
      m.terms = {derived("log_lcm.xlog2x", BasisFn::x_log2x, Approx::exact(1.0)),
                 derived("log_lcm.xlogx", BasisFn::x_logx, two_g_m2 - clog),
                 derived("log_lcm.x", BasisFn::x, -(two_g_m2 + dlog))};
      m.envelope = env_sqrt_log(1.0);
      m.error_note = "O(sqrt(x) log x)";
      break;
    }
    case FormulaTag::omega_lcm: {
      m.terms = {derived("omega_lcm.xlogxloglogx", BasisFn::x_logx_loglogx,
                         Approx::exact(2.0)),
                 derived("omega_lcm.xlogx", BasisFn::x_logx, nc("K_omega") - nc("C_omega"))};
      m.envelope = {EnvelopeSpec::Form::x_linear, 0, 0};
      m.error_note = "O(x)";
      break;
    }
    case FormulaTag::bigomega_lcm: {
      m.terms = {derived("bigomega_lcm.xlogxloglogx", BasisFn::x_logx_loglogx,
                         Approx::exact(2.0)),
                 derived("bigomega_lcm.xlogx", BasisFn::x_logx,
                         nc("K_Omega") - nc("C_Omega"))};
      m.envelope = {EnvelopeSpec::Form::x_linear, 0, 0};
      m.error_note = "O(x)";
      break;
    }
    case FormulaTag::tau_lcm: {
      m.terms = {derived("tau_lcm.C1", BasisFn::x_log3x, nc("C1_tau_lcm")),
                 fit("tau_lcm.C2", BasisFn::x_log2x), fit("tau_lcm.C3", BasisFn::x_logx),
                 fit("tau_lcm.C4", BasisFn::x)};
      m.envelope = env_x_pow(0.55);  // the claimed x^{1/2+eps} with eps = 0.05
      m.error_note = "O(x^{1/2+eps})";
      break;
    }
    case FormulaTag::ratio_hyp: {
      m.terms = {derived("ratio_hyp.sqrtx", BasisFn::sqrt_x, nc("coef_ratio_hyp"))};
      m.envelope = env_log_pow(3.0);
      m.error_note = "O(log^3 x)";
      break;
    }
    case FormulaTag::aux_2omega: {
      m.terms = {derived("aux_2omega.xlogx", BasisFn::x_logx, Approx::exact(1.0) / z2),
                 derived("aux_2omega.x", BasisFn::x, nc("C_2omega") / z2)};
      m.envelope = env_sqrt();
      m.error_note = "S(x) << sqrt(x), sqrt(x) lambda(x); x^{221/608+eps} under RH";
      break;
    }
    case FormulaTag::aux_tau: {
      m.terms = {derived("aux_tau.xlogx", BasisFn::x_logx, Approx::exact(1.0)),
                 derived("aux_tau.x", BasisFn::x, nc("C1_tau"))};
      m.envelope = env_x_pow(0.4);
      m.error_note = "O(x^{theta+eps}), 1/4 < theta < 1/2";
      break;
    }
  }
  return m;
}

FormulaConstants theorem_constants(const FormulaId& formula, const ConstantsOptions& opt) {
  MainTermModel m = model_for(formula, opt);
  FormulaConstants out;
  for (const auto& t : m.terms) {
    if (t.coefficient)
      out.derived.push_back(
          ConstantEstimate::from(t.name, *t.coefficient, EstimateMethod::composite));
    else
      out.fit_only.push_back(t.name);
  }
  return out;
}

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

MainTermValue main_term(const MainTermModel& model, const std::vector<double>& fit_values,
                        double x) {
  if (x < std::numbers::e)
    throw UsageError("main_term: x must be >= e so log log x is defined");
  if (fit_values.size() != model.fit_count())
    throw UsageError("main_term: expected " + std::to_string(model.fit_count()) +
                     " fit values");
  MainTermValue out;
  out.degenerate = x < 10.0;
  size_t fi = 0;
  for (const auto& t : model.terms) {
    double b = basis_eval(t.basis, x);
    if (t.coefficient) {
      out.value += t.coefficient->value * b;
      out.bound += t.coefficient->bound * std::abs(b);
    } else {
      out.value += fit_values[fi++] * b;
    }
  }
  return out;
}

MainTermValue main_term(const MainTermModel& model, double x) {
  if (model.has_fit_parameters())
    throw UsageError("main_term: model for " + model.formula.name() +
                     " has unfit parameters; run fit_parameters first");
  return main_term(model, {}, x);
}

ExactSum formula_exact(Summator& sums, const FormulaId& id, double x) {
  switch (id.tag) {
    case FormulaTag::rect_gcd: return sums.sum_rectangular(RectKind::gcd, x);
    case FormulaTag::rect_lcm: return sums.sum_rectangular(RectKind::lcm, x);
    case FormulaTag::rect_ratio: return sums.sum_rectangular(RectKind::ratio, x);
    case FormulaTag::hyp_gcd_id:
      return sums.sum_gcd_hyperbolic(FunctionSpec::make(Family::id), x);
    case FormulaTag::tau_gcd:
      return sums.sum_gcd_hyperbolic(FunctionSpec::make(Family::tau), x);
    case FormulaTag::generic_gcd:
    case FormulaTag::fseta_gcd:
      if (!id.spec) throw UsageError(id.name() + " needs a function spec");
      return sums.sum_gcd_hyperbolic(*id.spec, x);
    case FormulaTag::recip_gcd:
      return sums.sum_gcd_hyperbolic(FunctionSpec::make(Family::reciprocal), x);
    case FormulaTag::log_gcd:
      return sums.sum_gcd_hyperbolic(FunctionSpec::make(Family::log), x);
    case FormulaTag::logkappa_gcd:
      return sums.sum_gcd_hyperbolic(FunctionSpec::make(Family::log_kappa), x);
    case FormulaTag::omega_gcd:
      return sums.sum_gcd_hyperbolic(FunctionSpec::make(Family::omega), x);
    case FormulaTag::bigomega_gcd:
      return sums.sum_gcd_hyperbolic(FunctionSpec::make(Family::big_omega), x);
    case FormulaTag::lcm_hyp:
      return sums.sum_lcm_hyperbolic(FunctionSpec::make(Family::id), x);
    case FormulaTag::log_lcm:
      return sums.sum_lcm_hyperbolic(FunctionSpec::make(Family::log), x);
    case FormulaTag::omega_lcm:
      return sums.sum_lcm_hyperbolic(FunctionSpec::make(Family::omega), x);
    case FormulaTag::bigomega_lcm:
      return sums.sum_lcm_hyperbolic(FunctionSpec::make(Family::big_omega), x);
    case FormulaTag::tau_lcm:
      return sums.sum_lcm_hyperbolic(FunctionSpec::make(Family::tau), x);
    case FormulaTag::ratio_hyp:
      return ExactSum::of_real(sums.sum_gcd_over_lcm_hyperbolic(x));
    case FormulaTag::aux_2omega:
      return sums.summatory_auxiliary(AuxSum::two_pow_omega, x);
    case FormulaTag::aux_tau:
      return sums.summatory_auxiliary(AuxSum::tau, x);
  }
  throw UsageError("formula_exact: bad tag");
}

SummatoryCurve evaluate_curve(Summator& sums, const FormulaId& id,
                              const std::vector<double>& grid) {
  SummatoryCurve c;
  c.formula = id;
  c.grid = grid;
  c.exact.reserve(grid.size());
  for (double x : grid) c.exact.push_back(formula_exact(sums, id, x));
  return c;
}

bool SummatoryCurve::is_monotone() const {
  for (size_t i = 1; i < exact.size(); ++i) {
    if (exact[i].integral && exact[i - 1].integral) {
      if (exact[i].ival < exact[i - 1].ival) return false;
    } else if (exact[i].as_double() < exact[i - 1].as_double()) {
      return false;
    }
  }
  return true;
}

ResidualReport residual_scan(Summator& sums, const MainTermModel& model,
                             const std::vector<double>& grid,
                             const std::vector<double>& fit_values, double lambda_c) {
  if (grid.size() < 5) throw UsageError("residual_scan: grid needs >= 5 points");
  if (grid.back() / grid.front() < 100.0)
    throw UsageError("residual_scan: grid must span at least two decades");
  ResidualReport r;
  r.formula = model.formula;
  r.lambda_c = lambda_c;
  SummatoryCurve curve = evaluate_curve(sums, model.formula, grid);
  for (size_t gi = 0; gi < grid.size(); ++gi) {
    double x = grid[gi];
    const ExactSum& ex = curve.exact[gi];
    MainTermValue mt = main_term(model, fit_values, x);
    long double exact_ld = ex.integral ? (long double)ex.ival : (long double)ex.fval;
    long double resid = exact_ld - (long double)mt.value;
    double env = envelope_eval(model.envelope, x, lambda_c);
    r.grid.push_back(x);
    r.exact.push_back(double(exact_ld));
    r.main.push_back(mt.value);
    r.residual.push_back(double(resid));
    r.envelope.push_back(env);
    r.normalized.push_back(double(resid) / env);
    r.coeff_error.push_back(mt.bound);
  }
  size_t n = r.grid.size();
  for (size_t i = 0; i < n; ++i) {
    double a = std::abs(r.normalized[i]);
    r.sup_normalized = std::max(r.sup_normalized, a);
    if (i < n / 2)
      r.sup_bottom_half = std::max(r.sup_bottom_half, a);
    else if (i >= n - n / 2)
      r.sup_top_half = std::max(r.sup_top_half, a);
  }
  // trend: least-squares slope over nonzero residuals
  {
    double s1 = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (size_t i = 0; i < n; ++i) {
      if (r.residual[i] == 0.0) continue;
      double lx = std::log(r.grid[i]);
      double ly = std::log(std::abs(r.residual[i]));
      s1 += 1;
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++cnt;
    }
    if (cnt >= 2) {
      double den = s1 * sxx - sx * sx;
      if (den > 0) r.trend = (s1 * sxy - sx * sy) / den;
    }
  }
  return r;
}

ResidualReport residual_scan(Summator& sums, const MainTermModel& model,
                             const std::vector<double>& grid, double lambda_c) {
  if (model.has_fit_parameters())
    throw UsageError("residual_scan: fit " + model.formula.name() + " first");
  return residual_scan(sums, model, grid, {}, lambda_c);
}

// ---------------------------------------------------------------------------
// least-squares fit of the unfit coefficients
// ---------------------------------------------------------------------------

FitOutcome fit_parameters(const MainTermModel& model, const std::vector<double>& grid,
                          const std::vector<double>& exact, double lambda_c) {
  const size_t p = model.fit_count();
  if (p == 0) throw UsageError("fit_parameters: model has no fit parameters");
  if (grid.size() < p + 2)
    throw UsageError("fit_parameters: need at least " + std::to_string(p + 2) +
                     " grid points");
  if (exact.size() != grid.size())
    throw UsageError("fit_parameters: grid and exact lengths differ");

  std::vector<BasisFn> fit_basis;
  for (const auto& t : model.terms)
    if (!t.coefficient) fit_basis.push_back(t.basis);

  const size_t n = grid.size();
  std::vector<std::vector<double>> A(n, std::vector<double>(p));
  std::vector<double> rhs(n), w(n);
  for (size_t i = 0; i < n; ++i) {
    double x = grid[i];
    long double known = 0.0L;
    for (const auto& t : model.terms)
      if (t.coefficient) known += (long double)t.coefficient->value * basis_eval(t.basis, x);
    w[i] = 1.0 / envelope_eval(model.envelope, x, lambda_c);
    rhs[i] = double((long double)exact[i] - known);
    for (size_t j = 0; j < p; ++j) A[i][j] = basis_eval(fit_basis[j], x);
  }

  // column scaling, then normal equations
  std::vector<double> scale(p, 0.0);
  for (size_t j = 0; j < p; ++j) {
    for (size_t i = 0; i < n; ++i) scale[j] += w[i] * w[i] * A[i][j] * A[i][j];
    scale[j] = std::sqrt(scale[j]);
    if (scale[j] == 0.0)
      throw UsageError("fit_parameters: basis column " + std::to_string(j) +
                       " vanishes on this grid");
  }
  std::vector<std::vector<double>> M(p, std::vector<double>(p, 0.0));
  std::vector<double> b(p, 0.0);
  for (size_t i = 0; i < n; ++i) {
    double w2 = w[i] * w[i];
    for (size_t j = 0; j < p; ++j) {
      for (size_t k = 0; k < p; ++k)
        M[j][k] += w2 * (A[i][j] / scale[j]) * (A[i][k] / scale[k]);
      b[j] += w2 * (A[i][j] / scale[j]) * rhs[i];
    }
  }
  // Gaussian elimination with partial pivoting on the scaled system
  std::vector<size_t> piv(p);
  for (size_t j = 0; j < p; ++j) piv[j] = j;
  for (size_t col = 0; col < p; ++col) {
    size_t best = col;
    for (size_t rrow = col + 1; rrow < p; ++rrow)
      if (std::abs(M[rrow][col]) > std::abs(M[best][col])) best = rrow;
    std::swap(M[col], M[best]);
    std::swap(b[col], b[best]);
    if (std::abs(M[col][col]) < 1e-10)
      throw UsageError("fit_parameters: normal equations ill-conditioned on this grid "
                       "(pivot " + std::to_string(M[col][col]) + "); use a wider grid");
    for (size_t rrow = col + 1; rrow < p; ++rrow) {
      double f = M[rrow][col] / M[col][col];
      for (size_t k = col; k < p; ++k) M[rrow][k] -= f * M[col][k];
      b[rrow] -= f * b[col];
    }
  }
  std::vector<double> theta(p, 0.0);
  for (size_t col = p; col-- > 0;) {
    double v = b[col];
    for (size_t k = col + 1; k < p; ++k) v -= M[col][k] * theta[k];
    theta[col] = v / M[col][col];
  }
  for (size_t j = 0; j < p; ++j) theta[j] /= scale[j];

  FitOutcome out;
  out.names = model.fit_names();
  out.values = theta;
  double ss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double fitv = 0.0;
    for (size_t j = 0; j < p; ++j) fitv += A[i][j] * theta[j];
    double e = (rhs[i] - fitv) * w[i];
    ss += e * e;
  }
  out.fit_residual_rms = std::sqrt(ss / double(n));
  return out;
}

std::optional<double> growth_exponent(const ResidualReport& report) {
  double s1 = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (size_t i = 0; i < report.grid.size(); ++i) {
    if (report.residual[i] == 0.0) continue;
    double lx = std::log(report.grid[i]);
    double ly = std::log(std::abs(report.residual[i]));
    s1 += 1;
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++cnt;
  }
  if (cnt == 0) return std::nullopt;  // identically zero: undefined
  if (cnt < 5)
    throw UsageError("growth_exponent: needs >= 5 points with nonzero residuals");
  double den = s1 * sxx - sx * sx;
  if (den <= 0) throw UsageError("growth_exponent: degenerate grid");
  return (s1 * sxy - sx * sy) / den;
}

std::vector<double> geometric_grid(double lo, double hi, int points) {
  if (points < 2 || lo <= 0 || hi <= lo)
    throw UsageError("geometric_grid: need lo < hi and points >= 2");
  std::vector<double> g(points);
  double r = std::pow(hi / lo, 1.0 / double(points - 1));
  double v = lo;
  for (int i = 0; i < points; ++i) {
    g[i] = std::floor(v + 0.5);
    v *= r;
  }
  g.back() = std::floor(hi + 0.5);
  return g;
}

std::string report_csv(const ResidualReport& report, const MainTermModel& model) {
  std::ostringstream os;
  char buf[64];
  os << "# " << kVersion << "\n";
  os << "# formula=" << model.formula.name() << " envelope=" << model.envelope.to_string()
     << " lambda_c=" << report.lambda_c << "\n";
  os << "# error_note=" << model.error_note << "\n";
  for (const auto& t : model.terms) {
    if (t.coefficient) {
      std::snprintf(buf, sizeof(buf), "%.12g+-%.3g", t.coefficient->value,
                    t.coefficient->bound);
      os << "# coeff " << t.name << " [" << basis_name(t.basis) << "] = " << buf << "\n";
    } else {
      os << "# coeff " << t.name << " [" << basis_name(t.basis) << "] = fit\n";
    }
  }
  os << "x,exact,main,residual,envelope,normalized\n";
  for (size_t i = 0; i < report.grid.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.0f", report.grid[i]);
    os << buf;
    for (double v : {report.exact[i], report.main[i], report.residual[i],
                     report.envelope[i], report.normalized[i]}) {
      std::snprintf(buf, sizeof(buf), ",%.15g", v);
      os << buf;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace hypsum
