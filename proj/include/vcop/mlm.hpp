#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vcop/error.hpp"
#include "vcop/panel.hpp"

namespace vcop {

// Two-level random-intercept regression of a panel column on others,
// observations nested in communities:
//   y_ij = x_ij' beta + u_j + e_ij,  u_j ~ N(0, s2_group), e_ij ~ N(0, s2_resid).
struct ModelSpec {
  std::string name = "model";
  std::string outcome = "joiners";
  std::vector<std::string> covariates;  // panel column or seasonal dummy names
};

// Preset tokens mirror the report's model columns: null, maturity, language,
// structure, full; "name:cov1+cov2" declares a custom covariate list.
ModelSpec resolve_model_token(const std::string& token);

enum class Criterion { ml, reml };

struct FixedEffect {
  std::string name;  // "constant" or a covariate name
  double estimate = 0.0;
  double std_error = 0.0;
  double t_value = 0.0;
  double p_value = 1.0;
};

struct ModelFit {
  std::string name;
  std::string outcome;
  Criterion criterion = Criterion::ml;
  std::vector<FixedEffect> fixed;
  double sigma2_group = 0.0;  // variance level 2
  double sigma2_resid = 0.0;  // variance level 1
  double icc = 0.0;
  double theta = 0.0;         // sigma2_group / sigma2_resid at the optimum
  double log_likelihood = 0.0;
  double deviance = 0.0;
  std::size_t n_obs = 0;
  std::size_t n_groups = 0;
  bool converged = false;
  int profile_evals = 0;
};

// Carries the profile trace (theta, log-likelihood) when estimation fails.
struct FitError : Error {
  FitError(const std::string& message, std::vector<std::pair<double, double>> profile)
      : Error(message), trace(std::move(profile)) {}
  std::vector<std::pair<double, double>> trace;
};

// Maximum-likelihood fit via one-dimensional profile optimization over the
// variance ratio theta: beta and sigma2_resid are closed-form at each theta,
// theta itself comes from a golden-section search on [0, 1e6] to 1e-10.
// Listwise-complete rows only; deterministic for a given panel.
ModelFit fit_lmm(const Panel& panel, const ModelSpec& spec,
                 Criterion criterion = Criterion::ml);

// Profile log-likelihood at a fixed theta (same criterion and row selection
// as fit_lmm); lets callers probe stationarity of a returned optimum.
double profile_loglik(const Panel& panel, const ModelSpec& spec, double theta,
                      Criterion criterion = Criterion::ml);

double icc(const ModelFit& fit);

struct VarianceChange {
  std::optional<double> level2_pct;  // 100 (model - null) / null
  std::optional<double> level1_pct;
};

VarianceChange variance_change(const ModelFit& fit, const ModelFit& null_fit);

// Adds 0/1 dummy columns for the named calendar months (1..12).
void add_seasonal_covariates(Panel& panel, const std::vector<int>& months = {12});

// Stable-key JSON rendering of one fit.
std::string render_fit_json(const ModelFit& fit);

}  // namespace vcop
