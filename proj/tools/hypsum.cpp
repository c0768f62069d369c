// hypsum: build/cache tables, evaluate gcd/lcm summatory quantities, print
// the constants table, and run residual-verification scans.
//
// Exit codes: 0 ok, 1 usage, 2 resource, 3 inconsistency.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hypsum/oracle.hpp"
#include "hypsum/verify.hpp"

using namespace hypsum;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// run configuration: flat key=value text, CLI overrides, canonical form
// ---------------------------------------------------------------------------

struct GridSpec {
  double start = 1e3;
  double stop = 1e7;
  int points = 12;

  static GridSpec parse(const std::string& text) {
    GridSpec g;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d", &g.start, &g.stop, &g.points) != 3)
      throw UsageError("bad grid '" + text + "', expected start:stop:points");
    if (!(g.start >= 1.0) || g.stop <= g.start || g.points < 2)
      throw UsageError("bad grid range '" + text + "'");
    return g;
  }
  std::string to_string() const {
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%.17g:%.17g:%d", start, stop, points);
    return buf;
  }
};

struct RunConfig {
  u64 n_max = 10'000'000;
  GridSpec grid;
  std::vector<std::string> formulas;
  std::string spec_family;  // empty when the formula fixes f itself
  std::string set_s = "all";
  double eta = 0.0;
  double beta = 0.0;
  double delta = 0.0;
  double lambda_c = 0.2;
  u64 rect_cap = 100'000;
  std::string output = "table";  // table | csv | json
  std::string cache_dir;

  std::string canonical_text() const {
    std::ostringstream os;
    char buf[64];
    os << "n_max=" << n_max << "\n";
    os << "grid=" << grid.to_string() << "\n";
    os << "formulas=";
    for (size_t i = 0; i < formulas.size(); ++i) os << (i ? "," : "") << formulas[i];
    os << "\n";
    os << "spec=" << spec_family << "\n";
    os << "S=" << SetS::parse(set_s).to_string() << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", eta);
    os << "eta=" << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", beta);
    os << "beta=" << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", delta);
    os << "delta=" << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.17g", lambda_c);
    os << "lambda_c=" << buf << "\n";
    os << "rect_cap=" << rect_cap << "\n";
    os << "output=" << output << "\n";
    os << "cache_dir=" << cache_dir << "\n";
    return os.str();
  }

  static RunConfig parse_text(const std::string& text) {
    RunConfig c;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty() || line[0] == '#') continue;
      auto eq = line.find('=');
      if (eq == std::string::npos)
        throw UsageError("config line without '=': " + line);
      std::string key = line.substr(0, eq), val = line.substr(eq + 1);
      if (key == "n_max") c.n_max = std::stoull(val);
      else if (key == "grid") c.grid = GridSpec::parse(val);
      else if (key == "formulas") {
        c.formulas.clear();
        std::stringstream ss(val);
        std::string item;
        while (std::getline(ss, item, ','))
          if (!item.empty()) c.formulas.push_back(item);
      } else if (key == "spec") c.spec_family = val;
      else if (key == "S") {
        SetS::parse(val);  // reject invalid sets (1 missing) at parse time
        c.set_s = val;
      } else if (key == "eta") c.eta = std::stod(val);
      else if (key == "beta") c.beta = std::stod(val);
      else if (key == "delta") c.delta = std::stod(val);
      else if (key == "lambda_c") c.lambda_c = std::stod(val);
      else if (key == "rect_cap") c.rect_cap = std::stoull(val);
      else if (key == "output") c.output = val;
      else if (key == "cache_dir") c.cache_dir = val;
      else throw UsageError("unknown config key '" + key + "'");
    }
    if (c.output != "table" && c.output != "csv" && c.output != "json")
      throw UsageError("output must be table|csv|json");
    return c;
  }
};

std::optional<FunctionSpec> spec_from_config(const RunConfig& cfg) {
  if (cfg.spec_family.empty()) return std::nullopt;
  if (cfg.spec_family == "power_log") return FunctionSpec::power_log(cfg.beta, cfg.delta);
  if (cfg.spec_family == "s_eta")
    return FunctionSpec::s_eta(SetS::parse(cfg.set_s), cfg.eta);
  return FunctionSpec::parse(cfg.spec_family);
}

std::string cache_dir_effective(const RunConfig& cfg) {
  if (!cfg.cache_dir.empty()) return cfg.cache_dir;
  if (const char* env = std::getenv("HYPSUM_CACHE")) return env;
  return "";
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}
std::string fmt15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

FunctionSpec formula_base_spec(const FormulaId& id) {
  switch (id.tag) {
    case FormulaTag::hyp_gcd_id:
    case FormulaTag::lcm_hyp: return FunctionSpec::make(Family::id);
    case FormulaTag::tau_gcd:
    case FormulaTag::tau_lcm: return FunctionSpec::make(Family::tau);
    case FormulaTag::recip_gcd: return FunctionSpec::make(Family::reciprocal);
    case FormulaTag::log_gcd:
    case FormulaTag::log_lcm: return FunctionSpec::make(Family::log);
    case FormulaTag::logkappa_gcd: return FunctionSpec::make(Family::log_kappa);
    case FormulaTag::omega_gcd:
    case FormulaTag::omega_lcm: return FunctionSpec::make(Family::omega);
    case FormulaTag::bigomega_gcd:
    case FormulaTag::bigomega_lcm: return FunctionSpec::make(Family::big_omega);
    case FormulaTag::generic_gcd:
    case FormulaTag::fseta_gcd:
      if (!id.spec) throw UsageError(id.name() + " needs --spec");
      return *id.spec;
    default:
      throw UsageError("formula " + id.name() + " has no base function");
  }
}

bool is_lcm_side(const FormulaId& id) {
  return id.tag == FormulaTag::lcm_hyp || id.tag == FormulaTag::log_lcm ||
         id.tag == FormulaTag::omega_lcm || id.tag == FormulaTag::bigomega_lcm ||
         id.tag == FormulaTag::tau_lcm;
}

bool is_rect(const FormulaId& id) {
  return id.tag == FormulaTag::rect_gcd || id.tag == FormulaTag::rect_lcm ||
         id.tag == FormulaTag::rect_ratio;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int cmd_table(const RunConfig& cfg, const std::string& name) {
  std::string dir = cache_dir_effective(cfg);
  ValueTable t = sieve_standard(parse_standard_function(name), cfg.n_max);
  std::cout << "# " << kVersion << "\n";
  if (dir.empty()) {
    std::cout << "table " << name << " n_max=" << cfg.n_max
              << " built (no cache_dir set, nothing written)\n";
    return 0;
  }
  std::filesystem::create_directories(dir);
  std::string path = dir + "/" + name + "_" + std::to_string(cfg.n_max) + ".hsvt";
  t.dump_file(path);
  std::cout << "table " << name << " n_max=" << cfg.n_max << " cached at " << path << "\n";
  return 0;
}

int cmd_sum(const RunConfig& cfg, const std::string& formula_name, double x, bool use_oracle,
            const std::string& method_name) {
  FormulaId id = FormulaId::parse(formula_name);
  if (id.tag == FormulaTag::generic_gcd || id.tag == FormulaTag::fseta_gcd)
    id.spec = spec_from_config(cfg);
  u64 need = u64(std::floor(x));
  SummationConfig scfg;
  scfg.rectangular_cap = cfg.rect_cap;
  Summator sums(std::max<u64>(need, 1), scfg);

  ExactSum v = [&] {
    if (!method_name.empty()) {
      FunctionSpec spec = formula_base_spec(id);
      if (is_lcm_side(id)) {
        if (method_name == "direct")
          return sums.sum_lcm_hyperbolic(spec, x, LcmSumMethod::direct_table);
        if (method_name == "identity")
          return sums.sum_lcm_hyperbolic(spec, x, LcmSumMethod::identity);
        throw UsageError("lcm methods: direct|identity");
      }
      if (method_name == "direct")
        return sums.sum_gcd_hyperbolic(spec, x, GcdSumMethod::direct_table);
      if (method_name == "via_2omega")
        return sums.sum_gcd_hyperbolic(spec, x, GcdSumMethod::via_2omega);
      if (method_name == "via_tau")
        return sums.sum_gcd_hyperbolic(spec, x, GcdSumMethod::via_tau);
      throw UsageError("gcd methods: direct|via_2omega|via_tau");
    }
    return formula_exact(sums, id, x);
  }();

  std::cout << "# " << kVersion << "\n";
  if (cfg.output == "json") {
    json j{{"version", kVersion},
           {"formula", id.name()},
           {"x", x},
           {"value", v.integral ? json(v.to_string()) : json(v.fval)},
           {"integral", v.integral}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "formula=" << id.name() << " x=" << fmt(x) << " value=" << v.to_string()
              << "\n";
  }

  if (use_oracle) {
    oracle::OracleResult o = [&]() -> oracle::OracleResult {
      switch (id.tag) {
        case FormulaTag::rect_gcd:
          return oracle::brute_rectangular(oracle::RectangularKind::gcd, need);
        case FormulaTag::rect_lcm:
          return oracle::brute_rectangular(oracle::RectangularKind::lcm, need);
        case FormulaTag::rect_ratio:
          return oracle::brute_rectangular(oracle::RectangularKind::ratio, need);
        case FormulaTag::ratio_hyp:
          return oracle::brute_hyperbolic(oracle::HyperbolicKind::ratio,
                                          FunctionSpec::make(Family::id), need);
        case FormulaTag::aux_2omega:
        case FormulaTag::aux_tau:
          throw UsageError("--oracle does not cover the auxiliary sums");
        default:
          return oracle::brute_hyperbolic(is_lcm_side(id) ? oracle::HyperbolicKind::lcm_f
                                                          : oracle::HyperbolicKind::gcd_f,
                                          formula_base_spec(id), need);
      }
    }();
    bool match;
    if (v.integral && o.integral)
      match = v.ival == o.ivalue;
    else
      match = std::abs(v.as_double() - o.as_double()) <=
              1e-12 * std::max(1.0, std::abs(o.as_double()));
    std::cout << "oracle value=" << (o.integral ? i128_to_string(o.ivalue) : fmt15(o.fvalue))
              << " match=" << (match ? "yes" : "NO") << "\n";
    if (!match)
      throw InconsistencyError("oracle disagrees with the summation module at x = " +
                               std::to_string(need));
  }
  return 0;
}

json constant_json(const ConstantEstimate& e) {
  return json{{"name", e.name},
              {"value", e.value},
              {"error_bound", e.error_bound},
              {"method", estimate_method_name(e.method)}};
}

void print_constant_row(const ConstantEstimate& e) {
  std::printf("%-22s %18.12f  +-%.3e  %s\n", e.name.c_str(), e.value, e.error_bound,
              estimate_method_name(e.method));
}

int cmd_constants(const RunConfig& cfg, const std::string& name, const std::string& method,
                  bool check_paper, u64 p_arg, u64 p_max) {
  ConstantsOptions opt;
  if (p_max >= 1000) opt.p_max = p_max;
  std::cout << "# " << kVersion << "\n";

  if (check_paper) {
    bool ok = true;
    for (const auto& pd : printed_decimals()) {
      ConstantEstimate e = named_constant(pd.name, opt);
      double dev = std::abs(e.value - pd.printed);
      bool pass = dev <= 1e-6;
      ok = ok && pass;
      std::printf("%-12s paper=%.6f computed=%.9f (+-%.1e) |dev|=%.2e %s\n", pd.name,
                  pd.printed, e.value, e.error_bound, dev, pass ? "PASS" : "FAIL");
    }
    if (!ok) throw InconsistencyError("paper decimal mismatch beyond 1e-6");
    return 0;
  }

  if (name == "H_S" || name == "K_S") {
    auto [h, k] = hs_ks(p_arg, SetS::parse(cfg.set_s));
    if (cfg.output == "json") {
      json j{{"version", kVersion},
             {"p", p_arg},
             {"S", SetS::parse(cfg.set_s).to_string()},
             {"H_S", h.value},
             {"H_S_bound", h.bound},
             {"K_S", k.value},
             {"K_S_bound", k.bound}};
      std::cout << j.dump() << "\n";
    } else {
      std::printf("H_S(%llu) = %.12f +-%.3e\n", (unsigned long long)p_arg, h.value, h.bound);
      std::printf("K_S(%llu) = %.12f +-%.3e\n", (unsigned long long)p_arg, k.value, k.bound);
    }
    return 0;
  }

  std::vector<ConstantEstimate> rows;
  if (!name.empty()) {
    bool has_direct_route =
        name == "C_log" || name == "C_logkappa" || name == "C_omega" || name == "C_Omega" ||
        name == "M";
    ConstantsOptions direct = opt;
    direct.prefer_accelerated = false;
    if (method == "both" && has_direct_route) {
      rows.push_back(named_constant(name, direct));
      rows.back().name += " (direct)";
      rows.push_back(named_constant(name, opt));
      rows.back().name += " (accelerated)";
      double gap = std::abs(rows[0].value - rows[1].value);
      if (gap > rows[0].error_bound + rows[1].error_bound)
        throw InconsistencyError("methods disagree beyond summed bounds for " + name);
    } else if (method == "direct" && has_direct_route) {
      rows.push_back(named_constant(name, direct));
    } else {
      rows.push_back(named_constant(name, opt));
    }
  } else {
    rows = all_named_constants(opt);
  }

  if (cfg.output == "json") {
    json j = json::array();
    for (const auto& e : rows) j.push_back(constant_json(e));
    std::cout << json{{"version", kVersion}, {"constants", j}}.dump() << "\n";
  } else if (cfg.output == "csv") {
    std::cout << "name,value,error_bound,method\n";
    for (const auto& e : rows)
      std::cout << e.name << "," << fmt(e.value) << "," << fmt(e.error_bound) << ","
                << estimate_method_name(e.method) << "\n";
  } else {
    for (const auto& e : rows) print_constant_row(e);
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg, bool do_fit) {
  if (cfg.formulas.empty()) throw UsageError("verify needs --formula");
  ConstantsOptions opt;
  u64 grid_max = u64(cfg.grid.stop);
  SummationConfig scfg;
  scfg.rectangular_cap = cfg.rect_cap;

  for (const auto& fname : cfg.formulas) {
    FormulaId id = FormulaId::parse(fname);
    if (id.tag == FormulaTag::generic_gcd || id.tag == FormulaTag::fseta_gcd) {
      id.spec = spec_from_config(cfg);
      if (!id.spec) throw UsageError(fname + " needs --spec");
    }
    if (is_rect(id) && cfg.grid.stop > double(scfg.rectangular_cap))
      throw ResourceError("rectangular grid beyond the configured cap");
    std::vector<double> grid = geometric_grid(cfg.grid.start, cfg.grid.stop, cfg.grid.points);
    Summator sums(grid_max, scfg);

    MainTermModel model = model_for(id, opt);
    std::vector<double> fit_values;
    FitOutcome fo;
    if (model.has_fit_parameters()) {
      if (!do_fit)
        throw UsageError(fname + " has fit-only coefficients (" +
                         std::to_string(model.fit_count()) + " of them); pass --fit");
      fo = fit_parameters(sums, model, grid, cfg.lambda_c);
      fit_values = fo.values;
    }
    ResidualReport rep = model.has_fit_parameters()
                             ? residual_scan(sums, model, grid, fit_values, cfg.lambda_c)
                             : residual_scan(sums, model, grid, cfg.lambda_c);

    if (cfg.output == "json") {
      json terms = json::array();
      size_t fi = 0;
      for (const auto& t : model.terms) {
        json jt{{"name", t.name}, {"basis", basis_name(t.basis)}};
        if (t.coefficient) {
          jt["value"] = t.coefficient->value;
          jt["error_bound"] = t.coefficient->bound;
        } else {
          jt["fitted"] = fit_values[fi++];
        }
        terms.push_back(jt);
      }
      json points = json::array();
      for (size_t i = 0; i < rep.grid.size(); ++i)
        points.push_back(json{{"x", rep.grid[i]},
                              {"exact", rep.exact[i]},
                              {"main", rep.main[i]},
                              {"residual", rep.residual[i]},
                              {"envelope", rep.envelope[i]},
                              {"normalized", rep.normalized[i]}});
      json j{{"version", kVersion},
             {"formula", id.name()},
             {"envelope", model.envelope.to_string()},
             {"error_note", model.error_note},
             {"lambda_c", rep.lambda_c},
             {"terms", terms},
             {"points", points},
             {"sup_normalized", rep.sup_normalized},
             {"sup_bottom_half", rep.sup_bottom_half},
             {"sup_top_half", rep.sup_top_half}};
      if (rep.trend) j["trend"] = *rep.trend;
      if (!fo.names.empty()) j["fit_residual_rms"] = fo.fit_residual_rms;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << report_csv(rep, model);
      if (!fo.names.empty()) {
        for (size_t i = 0; i < fo.names.size(); ++i)
          std::cout << "# fitted " << fo.names[i] << " = " << fmt15(fo.values[i]) << "\n";
        // stability: refit on the even/odd interleaved half-grids
        std::vector<double> even, odd;
        for (size_t i = 0; i < grid.size(); ++i) (i % 2 ? odd : even).push_back(grid[i]);
        FitOutcome fe = fit_parameters(sums, model, even, cfg.lambda_c);
        FitOutcome fodd = fit_parameters(sums, model, odd, cfg.lambda_c);
        for (size_t i = 0; i < fo.names.size(); ++i) {
          double rel = std::abs(fe.values[i] - fodd.values[i]) /
                       std::max(std::abs(fo.values[i]), 1e-30);
          std::cout << "# stability " << fo.names[i] << " halves=" << fmt15(fe.values[i])
                    << "/" << fmt15(fodd.values[i]) << " rel_dev=" << fmt(rel) << "\n";
        }
      }
      if (rep.trend)
        std::cout << "# trend slope=" << fmt(*rep.trend) << " (claimed: " << model.error_note
                  << ")\n";
      std::cout << "# sup_normalized=" << fmt(rep.sup_normalized)
                << " bottom_half=" << fmt(rep.sup_bottom_half)
                << " top_half=" << fmt(rep.sup_top_half) << "\n";
    }
  }
  return 0;
}

int cmd_export(const RunConfig& cfg, const std::string& table_name, const std::string& out,
               const std::string& format) {
  StandardFunction f = parse_standard_function(table_name);
  std::string dir = cache_dir_effective(cfg);
  std::string cached =
      dir.empty() ? "" : dir + "/" + table_name + "_" + std::to_string(cfg.n_max) + ".hsvt";
  ValueTable t = (!cached.empty() && std::filesystem::exists(cached))
                     ? ValueTable::load_file(cached)
                     : sieve_standard(f, cfg.n_max);
  std::ofstream os(out);
  if (!os) throw ResourceError("cannot open " + out);
  if (format == "json") {
    json vals = json::array();
    for (u64 n = 1; n <= t.n_max(); ++n)
      vals.push_back(t.is_integer() ? json(t.at_int(n)) : json(t.at(n)));
    os << json{{"version", kVersion},
               {"table", table_name},
               {"n_max", t.n_max()},
               {"kind", t.is_integer() ? "integer" : "floating"},
               {"values", vals}}
              .dump()
       << "\n";
  } else {
    os << "# " << kVersion << "\n";
    os << "n," << table_name << "\n";
    for (u64 n = 1; n <= t.n_max(); ++n) {
      if (t.is_integer())
        os << n << "," << t.at_int(n) << "\n";
      else
        os << n << "," << fmt15(t.at(n)) << "\n";
    }
  }
  std::cout << "# " << kVersion << "\n";
  std::cout << "exported " << table_name << " n_max=" << t.n_max() << " to " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperbolic gcd/lcm summation toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "flat key=value config file");

  RunConfig cfg;
  unsigned long long cli_n_max = 0, cli_rect_cap = 0;
  std::string cli_grid, cli_output, cli_cache, cli_spec, cli_S;
  double cli_eta = -1, cli_beta = NAN, cli_delta = NAN, cli_lambda = -1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat key=value config file");
    sub->add_option("--n-max", cli_n_max, "table coverage");
    sub->add_option("--output", cli_output, "table|csv|json");
    sub->add_option("--cache-dir", cli_cache, "cache directory (or $HYPSUM_CACHE)");
    sub->add_option("--spec", cli_spec,
                    "function family: id|reciprocal|tau|log|log_kappa|omega|big_omega|"
                    "power_log|s_eta");
    sub->add_option("--S", cli_S, "exponent set, e.g. 1,3,from:5 or all");
    sub->add_option("--eta", cli_eta, "eta >= 0 for s_eta specs");
    sub->add_option("--beta", cli_beta, "beta for power_log");
    sub->add_option("--delta", cli_delta, "delta for power_log");
    sub->add_option("--lambda-c", cli_lambda, "constant c inside lambda(x)");
    sub->add_option("--rect-cap", cli_rect_cap, "rectangular summation cap");
  };

  auto* table_cmd = app.add_subcommand("table", "sieve a standard table and cache it");
  std::string table_name = "tau";
  table_cmd->add_option("--name", table_name, "mu|tau|omega|big_omega|two_pow_omega|kappa|"
                                              "jordan2|psi|von_mangoldt|tau_squared");
  add_common(table_cmd);

  auto* sum_cmd = app.add_subcommand("sum", "evaluate one summatory quantity");
  std::string sum_formula;
  double sum_x = 0;
  bool sum_oracle = false;
  std::string sum_method;
  sum_cmd->add_option("--formula", sum_formula, "formula tag")->required();
  sum_cmd->add_option("--x", sum_x, "evaluation point")->required();
  sum_cmd->add_flag("--oracle", sum_oracle, "cross-check against the brute-force oracle");
  sum_cmd->add_option("--method", sum_method, "direct|via_2omega|via_tau (gcd), "
                                              "direct|identity (lcm)");
  add_common(sum_cmd);

  auto* const_cmd = app.add_subcommand("constants", "evaluate the named constants");
  std::string const_name, const_method = "default";
  bool check_paper = false;
  unsigned long long const_p = 2, const_pmax = 0;
  const_cmd->add_option("--name", const_name, "one constant (or H_S/K_S with --p, --S)");
  const_cmd->add_option("--method", const_method, "default|direct|accelerated|both");
  const_cmd->add_flag("--check-paper", check_paper,
                      "compare against the printed decimals, exit 3 on mismatch");
  const_cmd->add_option("--p", const_p, "prime argument for H_S/K_S");
  const_cmd->add_option("--p-max", const_pmax, "prime cutoff for direct sums");
  add_common(const_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "residual scans against the main terms");
  std::vector<std::string> verify_formulas;
  bool verify_fit = false;
  verify_cmd->add_option("--formula", verify_formulas, "formula tag(s)")
      ->required()
      ->delimiter(',');
  verify_cmd->add_option("--grid", cli_grid, "start:stop:points (geometric)");
  verify_cmd->add_flag("--fit", verify_fit, "fit the coefficients only known to exist");
  add_common(verify_cmd);

  auto* export_cmd = app.add_subcommand("export", "write a sieved table as CSV/JSON");
  std::string export_table = "tau", export_out, export_format = "csv";
  export_cmd->add_option("--table", export_table, "standard function name");
  export_cmd->add_option("--out", export_out, "output path")->required();
  export_cmd->add_option("--format", export_format, "csv|json");
  add_common(export_cmd);

  auto* config_cmd = app.add_subcommand("config", "print the canonical configuration");
  config_cmd->add_option("--grid", cli_grid, "start:stop:points");
  add_common(config_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (!config_path.empty()) {
      std::ifstream is(config_path);
      if (!is) throw ResourceError("cannot read config " + config_path);
      std::stringstream buf;
      buf << is.rdbuf();
      cfg = RunConfig::parse_text(buf.str());
    }
    // CLI overrides over the config file
    if (cli_n_max > 0) cfg.n_max = cli_n_max;
    if (cli_rect_cap > 0) cfg.rect_cap = cli_rect_cap;
    if (!cli_grid.empty()) cfg.grid = GridSpec::parse(cli_grid);
    if (!cli_output.empty()) cfg.output = cli_output;
    if (!cli_cache.empty()) cfg.cache_dir = cli_cache;
    if (!cli_spec.empty()) cfg.spec_family = cli_spec;
    if (!cli_S.empty()) {
      SetS::parse(cli_S);
      cfg.set_s = cli_S;
    }
    if (cli_eta >= 0) cfg.eta = cli_eta;
    if (!std::isnan(cli_beta)) cfg.beta = cli_beta;
    if (!std::isnan(cli_delta)) cfg.delta = cli_delta;
    if (cli_lambda >= 0) cfg.lambda_c = cli_lambda;
    if (cfg.output != "table" && cfg.output != "csv" && cfg.output != "json")
      throw UsageError("output must be table|csv|json");
    if (!verify_formulas.empty()) cfg.formulas = verify_formulas;

    if (app.got_subcommand(table_cmd)) return cmd_table(cfg, table_name);
    if (app.got_subcommand(sum_cmd))
      return cmd_sum(cfg, sum_formula, sum_x, sum_oracle, sum_method);
    if (app.got_subcommand(const_cmd))
      return cmd_constants(cfg, const_name, const_method, check_paper, const_p, const_pmax);
    if (app.got_subcommand(verify_cmd)) return cmd_verify(cfg, verify_fit);
    if (app.got_subcommand(export_cmd))
      return cmd_export(cfg, export_table, export_out, export_format);
    if (app.got_subcommand(config_cmd)) {
      std::cout << cfg.canonical_text();
      return 0;
    }
    throw UsageError("no subcommand");
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 2;
  } catch (const InconsistencyError& e) {
    std::cerr << "INCONSISTENCY: " << e.what() << "\n";
    return 3;
  } catch (const std::overflow_error& e) {
    std::cerr << "resource error (overflow): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
