#pragma once

#include <string>
#include <vector>

#include "vcop/mlm.hpp"
#include "vcop/panel.hpp"

namespace vcop {

// "**" below 0.01, "*" below 0.05, two-tailed from (r, n).
std::string correlation_stars(double r, int n);

// Lower-triangular correlation table with significance stars, one numbered
// row per variable. Works from r values and pair counts alone, so published
// tables render the same way as computed ones.
std::string render_correlation_table(const std::vector<std::string>& labels,
                                     const Eigen::MatrixXd& r,
                                     const Eigen::MatrixXi& n);
std::string render_correlation_table(const CorrelationReport& report);

// Side-by-side model columns: coefficients with stars ("**" p<0.01,
// "*" p<0.1), variance components, ICC, change versus the first
// covariate-free fit, N and group counts.
std::string render_model_table(const std::vector<ModelFit>& fits);

// One-line factor summary: loadings and variance explained.
std::string render_maturity_factor(const MaturityFactor& factor);

struct ReportMetadata {
  std::string tool_version;
  std::string command_line;
  std::string input_path;
  std::string input_digest;
};

std::string render_report(const ReportMetadata& metadata,
                          const CorrelationReport& correlations,
                          const MaturityFactor& maturity,
                          const std::vector<ModelFit>& fits);

}  // namespace vcop
