#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypsum/constants.hpp"
#include "hypsum/formula.hpp"
#include "hypsum/summation.hpp"

namespace hypsum {

enum class BasisFn {
  x_log3x,          // x (log x)^3
  x_log2x,          // x (log x)^2
  x_logx_loglogx,   // x (log x)(log log x)
  x_logx,
  x,
  sqrt_x,
  x2_logx,
  x2,
  x4,
};
double basis_eval(BasisFn b, double x);
const char* basis_name(BasisFn b);

// lambda(x) = exp(-c (log x)^{3/5} (log log x)^{-1/5})
double lambda_factor(double x, double c);

struct EnvelopeSpec {
  enum class Form {
    sqrt_x,
    sqrt_x_log_pow,       // sqrt(x) (log x)^k
    sqrt_x_loglog,        // sqrt(x) log log x
    sqrt_x_lambda,        // sqrt(x) lambda(x)
    x_pow_lambda,         // x^a lambda(x)
    log_pow,              // (log x)^k
    x_pow,                // x^a
    x_pow_log_pow,        // x^a (log x)^k
    x_linear,             // x
    x3_log23_loglog13,    // x^3 (log x)^{2/3} (log log x)^{1/3}
  };
  Form form = Form::sqrt_x;
  double a = 0.0;
  double k = 0.0;

  std::string to_string() const;
};
double envelope_eval(const EnvelopeSpec& env, double x, double lambda_c);

struct ModelTerm {
  std::string name;
  BasisFn basis;
  std::optional<Approx> coefficient;  // empty -> fit parameter
};

// A formula's main term: basis functions with derived-constant or to-be-fit
// coefficients, plus the error envelope the residual is normalized by.
struct MainTermModel {
  FormulaId formula;
  std::vector<ModelTerm> terms;
  EnvelopeSpec envelope;
  std::string error_note;  // published error claim, report metadata only

  bool has_fit_parameters() const;
  size_t fit_count() const;
  std::vector<std::string> fit_names() const;
};

MainTermModel model_for(const FormulaId& id, const ConstantsOptions& opt = {});

struct MainTermValue {
  double value = 0.0;
  double bound = 0.0;      // propagated constant-estimate error
  bool degenerate = false; // x below 10: log log x terms barely make sense
};
// Needs x >= e so log log x is defined; evaluations below x = 10 are allowed
// but flagged degenerate. Throws UsageError when the model still has unfit
// parameters.
MainTermValue main_term(const MainTermModel& model, double x);
MainTermValue main_term(const MainTermModel& model, const std::vector<double>& fit_values,
                        double x);

// exact sum behind a formula tag
ExactSum formula_exact(Summator& sums, const FormulaId& id, double x);

// exact sums along a grid; the left-hand side of one displayed formula
struct SummatoryCurve {
  FormulaId formula;
  std::vector<double> grid;
  std::vector<ExactSum> exact;

  // nondecreasing whenever the summand is nonnegative
  bool is_monotone() const;
};
SummatoryCurve evaluate_curve(Summator& sums, const FormulaId& id,
                              const std::vector<double>& grid);

struct ResidualReport {
  FormulaId formula;
  double lambda_c = 0.2;
  std::vector<double> grid;
  std::vector<double> exact;
  std::vector<double> main;
  std::vector<double> residual;     // exact - main, formed in long double
  std::vector<double> envelope;
  std::vector<double> normalized;   // residual / envelope
  std::vector<double> coeff_error;  // constant-estimate contribution at x
  double sup_normalized = 0.0;
  double sup_bottom_half = 0.0;     // sup |normalized| over the lower half
  double sup_top_half = 0.0;
  std::optional<double> trend;      // slope of log|residual| against log x
};

ResidualReport residual_scan(Summator& sums, const MainTermModel& model,
                             const std::vector<double>& grid, double lambda_c = 0.2);
ResidualReport residual_scan(Summator& sums, const MainTermModel& model,
                             const std::vector<double>& grid,
                             const std::vector<double>& fit_values, double lambda_c = 0.2);

struct FitOutcome {
  std::vector<std::string> names;
  std::vector<double> values;
  double fit_residual_rms = 0.0;  // envelope-weighted
};

// Weighted least squares for the unfit coefficients; known coefficients are
// held fixed, weights are 1/envelope.
FitOutcome fit_parameters(Summator& sums, const MainTermModel& model,
                          const std::vector<double>& grid, double lambda_c = 0.2);
// data-injected variant (exact[i] pairs with grid[i]); the tests drive this
// with synthetic curves
FitOutcome fit_parameters(const MainTermModel& model, const std::vector<double>& grid,
                          const std::vector<double>& exact, double lambda_c = 0.2);

// Least-squares slope of log|residual| vs log x. Needs >= 5 nonzero
// residuals; all-zero residuals report as nullopt.
std::optional<double> growth_exponent(const ResidualReport& report);

std::vector<double> geometric_grid(double lo, double hi, int points);

// CSV with the frozen column schema plus # metadata lines (version, formula,
// lambda_c, constants with bounds).
std::string report_csv(const ResidualReport& report, const MainTermModel& model);

}  // namespace hypsum
