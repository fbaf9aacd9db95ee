#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vcop/dynamics.hpp"
#include "vcop/graph.hpp"
#include "vcop/language.hpp"

namespace vcop {

// One (community, month) observation.
struct PanelRow {
  std::string community_id;
  YearMonth month;
  int joiners = 0;
  int age = 0;
  int size = 0;
  int launch_phase = 0;  // 0/1
  std::optional<double> emotionality;
  std::optional<double> sentiment;
  std::optional<double> complexity;
  int past_activity = 0;
  std::optional<double> group_betweenness;
  double rotating_leadership = 0.0;
  std::optional<double> maturity;  // filled by apply_maturity
  std::vector<int> seasonal;       // aligned with Panel::seasonal_months
};

struct Panel {
  std::vector<PanelRow> rows;           // sorted by community, then month
  std::vector<int> seasonal_months;     // calendar months with 0/1 dummies
};

// Full outer join on (community, month). The three producers must cover the
// same community set; a mismatch is a fatal consistency error.
Panel assemble_panel(const std::vector<DynamicsRow>& dynamics,
                     const std::vector<LanguageRow>& language,
                     const std::vector<CentralizationRow>& structure);

// The ten panel variables in report order, plus the maturity control.
enum class PanelColumn {
  joiners,
  age,
  size,
  launch_phase,
  emotionality,
  sentiment,
  complexity,
  past_activity,
  group_betweenness,
  rotating_leadership,
  maturity,
};

std::string_view column_name(PanelColumn column);
std::string_view column_label(PanelColumn column);  // display form, e.g. "Group Betweenness Centrality"
std::optional<double> column_value(const PanelRow& row, PanelColumn column);

// Resolves a model covariate by name: any PanelColumn name or a seasonal
// dummy ("december"). Throws on an unknown name.
std::optional<double> panel_value(const Panel& panel, const PanelRow& row,
                                  const std::string& name);
std::string seasonal_column_name(int calendar_month);

const std::vector<PanelColumn>& report_columns();  // the ten of the correlation table

struct CorrelationReport {
  std::vector<PanelColumn> columns;
  Eigen::MatrixXd r;  // NaN where undefined
  Eigen::MatrixXd p;
  Eigen::MatrixXi n;  // complete pairs per cell
};

// Pairwise-complete by default; listwise drops any row missing one of the
// requested columns before correlating.
CorrelationReport correlation_report(const Panel& panel,
                                     const std::vector<PanelColumn>& columns,
                                     bool listwise = false);

struct MaturityFactor {
  Eigen::Vector3d loadings;  // age, size, launch_phase
  double variance_explained = 0.0;
  std::vector<double> scores;  // one per panel row
};

// Single principal component of (age, size, launch_phase), sign fixed so the
// age loading is non-negative.
MaturityFactor maturity_factor(const Panel& panel);
void apply_maturity(Panel& panel, const MaturityFactor& factor);

// CSV export/import with the fixed column order
//   community_id, month, joiners, age, size, launch_phase, emotionality,
//   sentiment, complexity, past_activity, group_betweenness,
//   rotating_leadership, maturity, <seasonal...>
// Missing values render as empty fields; doubles round-trip exactly.
void write_panel_csv(std::ostream& out, const Panel& panel);
Panel read_panel_csv(std::istream& in);

}  // namespace vcop
