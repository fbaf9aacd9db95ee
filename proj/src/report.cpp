#include "vcop/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "vcop/stats.hpp"

namespace vcop {
namespace {

// ".374" / "-.170": psychology-style stripped leading zero.
std::string stripped(double value, int decimals) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  std::string s = buf;
  if (s.rfind("0.", 0) == 0) return s.substr(1);
  if (s.rfind("-0.", 0) == 0) return "-" + s.substr(2);
  return s;
}

std::string stripped_decimal(double value) { return stripped(value, 3); }
std::string stripped_decimal2(double value) { return stripped(value, 2); }

std::string fixed(double value, int decimals) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

void pad_columns(std::vector<std::vector<std::string>>& cells, std::ostringstream& out) {
  std::vector<std::size_t> widths;
  for (const auto& row : cells) {
    if (row.size() > widths.size()) widths.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) {
      widths[i] = std::max(widths[i], row[i].size());
    }
  }
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::string cell = row[i];
      cell.resize(widths[i], ' ');
      line += cell;
      if (i + 1 < row.size()) line += "  ";
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
}

}  // namespace

std::string correlation_stars(double r, int n) {
  if (n < 3 || !std::isfinite(r)) return "";
  double p = 0.0;
  if (1.0 - r * r > 0.0) {
    const auto df = static_cast<double>(n - 2);
    p = student_t_p(r * std::sqrt(df / (1.0 - r * r)), df);
  }
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

std::string render_correlation_table(const std::vector<std::string>& labels,
                                     const Eigen::MatrixXd& r,
                                     const Eigen::MatrixXi& n) {
  const auto k = static_cast<std::size_t>(r.rows());
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{""};
  for (std::size_t j = 0; j < k; ++j) header.push_back(std::to_string(j + 1));
  cells.push_back(std::move(header));
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::string> row;
    row.push_back(std::to_string(i + 1) + " " + labels[i]);
    for (std::size_t j = 0; j <= i; ++j) {
      const auto ei = static_cast<Eigen::Index>(i);
      const auto ej = static_cast<Eigen::Index>(j);
      if (i == j) {
        row.push_back("1");
      } else if (!std::isfinite(r(ei, ej))) {
        row.push_back("na");
      } else {
        row.push_back(stripped_decimal(r(ei, ej)) + correlation_stars(r(ei, ej), n(ei, ej)));
      }
    }
    cells.push_back(std::move(row));
  }
  std::ostringstream out;
  pad_columns(cells, out);
  out << "**p<0.01; *p<0.05.\n";
  return out.str();
}

std::string render_correlation_table(const CorrelationReport& report) {
  std::vector<std::string> labels;
  for (const PanelColumn c : report.columns) labels.emplace_back(column_label(c));
  return render_correlation_table(labels, report.r, report.n);
}

std::string render_model_table(const std::vector<ModelFit>& fits) {
  // Effects in order of first appearance, constant first.
  std::vector<std::string> effects;
  for (const auto& fit : fits) {
    for (const auto& e : fit.fixed) {
      if (std::find(effects.begin(), effects.end(), e.name) == effects.end()) {
        effects.push_back(e.name);
      }
    }
  }
  const ModelFit* null_fit = nullptr;
  for (const auto& fit : fits) {
    if (fit.fixed.size() == 1) {
      null_fit = &fit;
      break;
    }
  }

  auto coefficient_cell = [](const ModelFit& fit, const std::string& name) {
    for (const auto& e : fit.fixed) {
      if (e.name != name) continue;
      std::string stars;
      if (e.p_value < 0.01) {
        stars = "**";
      } else if (e.p_value < 0.1) {
        stars = "*";
      }
      return fixed(e.estimate, 3) + stars;
    }
    return std::string();
  };

  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"Variable"};
  for (const auto& fit : fits) header.push_back(fit.name);
  cells.push_back(std::move(header));
  for (const auto& name : effects) {
    std::vector<std::string> row{name == "constant" ? "Constant" : name};
    for (const auto& fit : fits) row.push_back(coefficient_cell(fit, name));
    cells.push_back(std::move(row));
  }

  std::vector<std::string> var2{"Variance Level 2"};
  std::vector<std::string> var1{"Variance Level 1"};
  std::vector<std::string> icc_row{"ICC"};
  std::vector<std::string> change2{"Change in variance Lev. 2"};
  std::vector<std::string> change1{"Change in variance Lev. 1"};
  std::vector<std::string> n_row{"N"};
  std::vector<std::string> groups_row{"Groups"};
  for (const auto& fit : fits) {
    var2.push_back(fixed(fit.sigma2_group, 3));
    var1.push_back(fixed(fit.sigma2_resid, 3));
    icc_row.push_back(fixed(fit.icc * 100.0, 2) + "%");
    if (null_fit != nullptr && &fit != null_fit) {
      const VarianceChange change = variance_change(fit, *null_fit);
      change2.push_back(change.level2_pct ? fixed(*change.level2_pct, 2) + "%" : "na");
      change1.push_back(change.level1_pct ? fixed(*change.level1_pct, 2) + "%" : "na");
    } else {
      change2.emplace_back();
      change1.emplace_back();
    }
    n_row.push_back(std::to_string(fit.n_obs));
    groups_row.push_back(std::to_string(fit.n_groups));
  }
  cells.push_back(std::move(var2));
  cells.push_back(std::move(var1));
  cells.push_back(std::move(icc_row));
  if (null_fit != nullptr) {
    cells.push_back(std::move(change2));
    cells.push_back(std::move(change1));
  }
  cells.push_back(std::move(n_row));
  cells.push_back(std::move(groups_row));

  std::ostringstream out;
  pad_columns(cells, out);
  out << "**p<0.01; *p<0.1.\n";
  return out.str();
}

std::string render_maturity_factor(const MaturityFactor& factor) {
  std::ostringstream out;
  out << "Maturity factor: loadings " << stripped_decimal2(factor.loadings(0))
      << " age, " << stripped_decimal2(factor.loadings(1)) << " size, "
      << stripped_decimal2(factor.loadings(2)) << " launch phase; "
      << fixed(factor.variance_explained * 100.0, 0) << "% of variance\n";
  return out.str();
}

std::string render_report(const ReportMetadata& metadata,
                          const CorrelationReport& correlations,
                          const MaturityFactor& maturity,
                          const std::vector<ModelFit>& fits) {
  std::ostringstream out;
  out << "community growth report\n";
  out << "version:      " << metadata.tool_version << '\n';
  out << "command:      " << metadata.command_line << '\n';
  out << "input:        " << metadata.input_path << '\n';
  out << "input digest: " << metadata.input_digest << '\n';
  out << '\n';
  out << "Correlations (pairwise complete)\n";
  out << render_correlation_table(correlations);
  out << '\n';
  out << render_maturity_factor(maturity);
  if (!fits.empty()) {
    out << '\n';
    out << "Random-intercept models (outcome: " << fits.front().outcome << ")\n";
    out << render_model_table(fits);
  }
  return out.str();
}

}  // namespace vcop
