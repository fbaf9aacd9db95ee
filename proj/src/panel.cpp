#include "vcop/panel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>

#include "vcop/csv.hpp"
#include "vcop/error.hpp"
#include "vcop/stats.hpp"
#include "vcop/util.hpp"

namespace vcop {
namespace {

using Key = std::pair<std::string, int>;  // community, month index

template <typename Row>
std::set<std::string> community_set(const std::vector<Row>& rows) {
  std::set<std::string> out;
  for (const auto& r : rows) out.insert(r.community_id);
  return out;
}

constexpr std::array<std::string_view, 12> kMonthNames = {
    "january", "february", "march",     "april",   "may",      "june",
    "july",    "august",   "september", "october", "november", "december"};

}  // namespace

Panel assemble_panel(const std::vector<DynamicsRow>& dynamics,
                     const std::vector<LanguageRow>& language,
                     const std::vector<CentralizationRow>& structure) {
  const auto communities = community_set(dynamics);
  if (community_set(language) != communities || community_set(structure) != communities) {
    throw Error("panel inputs disagree on the community set");
  }

  std::map<Key, PanelRow> rows;
  auto slot = [&rows](const std::string& community, YearMonth month) -> PanelRow& {
    auto& row = rows[{community, month.index()}];
    row.community_id = community;
    row.month = month;
    return row;
  };
  for (const auto& d : dynamics) {
    PanelRow& row = slot(d.community_id, d.month);
    row.joiners = d.joiners;
    row.age = d.age;
    row.size = d.size;
    row.launch_phase = d.launch_phase ? 1 : 0;
    row.past_activity = d.past_activity;
    row.rotating_leadership = d.rotating_leadership;
  }
  for (const auto& l : language) {
    PanelRow& row = slot(l.community_id, l.month);
    row.sentiment = l.sentiment;
    row.emotionality = l.emotionality;
    row.complexity = l.complexity;
  }
  for (const auto& s : structure) {
    slot(s.community_id, s.month).group_betweenness = s.group_betweenness;
  }

  Panel panel;
  panel.rows.reserve(rows.size());
  for (auto& [key, row] : rows) panel.rows.push_back(std::move(row));
  return panel;
}

std::string_view column_name(PanelColumn column) {
  switch (column) {
    case PanelColumn::joiners: return "joiners";
    case PanelColumn::age: return "age";
    case PanelColumn::size: return "size";
    case PanelColumn::launch_phase: return "launch_phase";
    case PanelColumn::emotionality: return "emotionality";
    case PanelColumn::sentiment: return "sentiment";
    case PanelColumn::complexity: return "complexity";
    case PanelColumn::past_activity: return "past_activity";
    case PanelColumn::group_betweenness: return "group_betweenness";
    case PanelColumn::rotating_leadership: return "rotating_leadership";
    case PanelColumn::maturity: return "maturity";
  }
  return "";
}

std::string_view column_label(PanelColumn column) {
  switch (column) {
    case PanelColumn::joiners: return "Joiners";
    case PanelColumn::age: return "Age";
    case PanelColumn::size: return "Size";
    case PanelColumn::launch_phase: return "Launch Phase";
    case PanelColumn::emotionality: return "Emotionality";
    case PanelColumn::sentiment: return "Sentiment";
    case PanelColumn::complexity: return "Complexity";
    case PanelColumn::past_activity: return "Past Activity";
    case PanelColumn::group_betweenness: return "Group Betweenness Centrality";
    case PanelColumn::rotating_leadership: return "Rotating Leadership";
    case PanelColumn::maturity: return "Maturity";
  }
  return "";
}

std::optional<double> column_value(const PanelRow& row, PanelColumn column) {
  switch (column) {
    case PanelColumn::joiners: return row.joiners;
    case PanelColumn::age: return row.age;
    case PanelColumn::size: return row.size;
    case PanelColumn::launch_phase: return row.launch_phase;
    case PanelColumn::emotionality: return row.emotionality;
    case PanelColumn::sentiment: return row.sentiment;
    case PanelColumn::complexity: return row.complexity;
    case PanelColumn::past_activity: return row.past_activity;
    case PanelColumn::group_betweenness: return row.group_betweenness;
    case PanelColumn::rotating_leadership: return row.rotating_leadership;
    case PanelColumn::maturity: return row.maturity;
  }
  return std::nullopt;
}

std::string seasonal_column_name(int calendar_month) {
  if (calendar_month < 1 || calendar_month > 12) {
    throw Error("calendar month out of range: " + std::to_string(calendar_month));
  }
  return std::string(kMonthNames[static_cast<std::size_t>(calendar_month - 1)]);
}

std::optional<double> panel_value(const Panel& panel, const PanelRow& row,
                                  const std::string& name) {
  for (const PanelColumn c :
       {PanelColumn::joiners, PanelColumn::age, PanelColumn::size,
        PanelColumn::launch_phase, PanelColumn::emotionality, PanelColumn::sentiment,
        PanelColumn::complexity, PanelColumn::past_activity,
        PanelColumn::group_betweenness, PanelColumn::rotating_leadership,
        PanelColumn::maturity}) {
    if (name == column_name(c)) return column_value(row, c);
  }
  for (std::size_t i = 0; i < panel.seasonal_months.size(); ++i) {
    if (name == seasonal_column_name(panel.seasonal_months[i])) {
      return i < row.seasonal.size() ? row.seasonal[i] : 0;
    }
  }
  throw Error("unknown panel column: " + name);
}

const std::vector<PanelColumn>& report_columns() {
  static const std::vector<PanelColumn> kColumns = {
      PanelColumn::joiners,       PanelColumn::age,
      PanelColumn::size,          PanelColumn::launch_phase,
      PanelColumn::emotionality,  PanelColumn::sentiment,
      PanelColumn::complexity,    PanelColumn::past_activity,
      PanelColumn::group_betweenness, PanelColumn::rotating_leadership};
  return kColumns;
}

CorrelationReport correlation_report(const Panel& panel,
                                     const std::vector<PanelColumn>& columns,
                                     bool listwise) {
  const auto k = static_cast<Eigen::Index>(columns.size());
  CorrelationReport report;
  report.columns = columns;
  report.r = Eigen::MatrixXd::Constant(k, k, std::numeric_limits<double>::quiet_NaN());
  report.p = Eigen::MatrixXd::Constant(k, k, std::numeric_limits<double>::quiet_NaN());
  report.n = Eigen::MatrixXi::Zero(k, k);

  std::vector<const PanelRow*> rows;
  rows.reserve(panel.rows.size());
  for (const auto& row : panel.rows) {
    if (listwise) {
      const bool complete = std::all_of(columns.begin(), columns.end(),
                                        [&](PanelColumn c) {
                                          return column_value(row, c).has_value();
                                        });
      if (!complete) continue;
    }
    rows.push_back(&row);
  }

  for (Eigen::Index i = 0; i < k; ++i) {
    report.r(i, i) = 1.0;
    report.p(i, i) = 0.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      std::vector<double> xs;
      std::vector<double> ys;
      for (const PanelRow* row : rows) {
        const auto x = column_value(*row, columns[static_cast<std::size_t>(i)]);
        const auto y = column_value(*row, columns[static_cast<std::size_t>(j)]);
        if (x && y) {
          xs.push_back(*x);
          ys.push_back(*y);
        }
      }
      report.n(i, j) = report.n(j, i) = static_cast<int>(xs.size());
      const auto c = pearson(Eigen::Map<const Eigen::VectorXd>(xs.data(),
                                                               static_cast<Eigen::Index>(xs.size())),
                             Eigen::Map<const Eigen::VectorXd>(ys.data(),
                                                               static_cast<Eigen::Index>(ys.size())));
      if (c) {
        report.r(i, j) = report.r(j, i) = c->r;
        report.p(i, j) = report.p(j, i) = c->p;
      }
    }
    report.n(i, i) = static_cast<int>(std::count_if(
        rows.begin(), rows.end(), [&](const PanelRow* row) {
          return column_value(*row, columns[static_cast<std::size_t>(i)]).has_value();
        }));
  }
  return report;
}

MaturityFactor maturity_factor(const Panel& panel) {
  const auto n = static_cast<Eigen::Index>(panel.rows.size());
  if (n < 2) throw Error("maturity factor needs at least two panel rows");
  Eigen::MatrixXd X(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const PanelRow& row = panel.rows[static_cast<std::size_t>(i)];
    X(i, 0) = row.age;
    X(i, 1) = row.size;
    X(i, 2) = row.launch_phase;
  }
  PrincipalAxis axis;
  try {
    axis = principal_axis(X, /*sign_column=*/0);
  } catch (const Error&) {
    constexpr std::array<const char*, 3> kNames = {"age", "size", "launch_phase"};
    for (Eigen::Index j = 0; j < 3; ++j) {
      if ((X.col(j).array() == X(0, j)).all()) {
        throw Error(std::string("maturity factor: variable is constant: ") +
                    kNames[static_cast<std::size_t>(j)]);
      }
    }
    throw;
  }
  MaturityFactor factor;
  factor.loadings = axis.loadings;
  factor.variance_explained = axis.variance_explained;
  factor.scores.assign(axis.scores.data(), axis.scores.data() + axis.scores.size());
  return factor;
}

void apply_maturity(Panel& panel, const MaturityFactor& factor) {
  if (factor.scores.size() != panel.rows.size()) {
    throw Error("maturity scores do not match the panel");
  }
  for (std::size_t i = 0; i < panel.rows.size(); ++i) {
    panel.rows[i].maturity = factor.scores[i];
  }
}

void write_panel_csv(std::ostream& out, const Panel& panel) {
  std::vector<std::string> fields = {
      "community_id",  "month",        "joiners",           "age",
      "size",          "launch_phase", "emotionality",      "sentiment",
      "complexity",    "past_activity", "group_betweenness", "rotating_leadership",
      "maturity"};
  for (const int m : panel.seasonal_months) fields.push_back(seasonal_column_name(m));
  write_csv_row(out, fields);

  auto opt = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
  };
  for (const auto& row : panel.rows) {
    fields = {row.community_id,
              row.month.label(),
              std::to_string(row.joiners),
              std::to_string(row.age),
              std::to_string(row.size),
              std::to_string(row.launch_phase),
              opt(row.emotionality),
              opt(row.sentiment),
              opt(row.complexity),
              std::to_string(row.past_activity),
              opt(row.group_betweenness),
              format_double(row.rotating_leadership),
              opt(row.maturity)};
    for (std::size_t i = 0; i < panel.seasonal_months.size(); ++i) {
      fields.push_back(std::to_string(i < row.seasonal.size() ? row.seasonal[i] : 0));
    }
    write_csv_row(out, fields);
  }
}

Panel read_panel_csv(std::istream& in) {
  CsvReader reader(in);
  std::vector<std::string> row;
  if (!reader.next_row(row)) throw Error("empty panel csv");

  constexpr std::array<std::string_view, 13> kFixed = {
      "community_id",  "month",        "joiners",           "age",
      "size",          "launch_phase", "emotionality",      "sentiment",
      "complexity",    "past_activity", "group_betweenness", "rotating_leadership",
      "maturity"};
  if (row.size() < kFixed.size()) throw Error("panel csv header too short");
  for (std::size_t i = 0; i < kFixed.size(); ++i) {
    if (row[i] != kFixed[i]) {
      throw Error("panel csv header mismatch at column " + std::to_string(i + 1) +
                  ": expected " + std::string(kFixed[i]) + ", found " + row[i]);
    }
  }
  Panel panel;
  for (std::size_t i = kFixed.size(); i < row.size(); ++i) {
    const auto it = std::find(kMonthNames.begin(), kMonthNames.end(), row[i]);
    if (it == kMonthNames.end()) throw Error("unknown seasonal column: " + row[i]);
    panel.seasonal_months.push_back(static_cast<int>(it - kMonthNames.begin()) + 1);
  }
  const std::size_t expected = kFixed.size() + panel.seasonal_months.size();

  auto req_int = [&](const std::string& field, const char* what) {
    const auto v = parse_int(field);
    if (!v) throw Error(std::string("panel csv: bad ") + what + " value: " + field);
    return static_cast<int>(*v);
  };
  auto opt_double = [&](const std::string& field) -> std::optional<double> {
    if (field.empty()) return std::nullopt;
    const auto v = parse_double(field);
    if (!v) throw Error("panel csv: bad numeric value: " + field);
    return v;
  };

  while (reader.next_row(row)) {
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != expected) {
      throw Error("panel csv: row " + std::to_string(reader.row_line()) +
                  " has " + std::to_string(row.size()) + " fields, expected " +
                  std::to_string(expected));
    }
    PanelRow r;
    r.community_id = row[0];
    const auto month = YearMonth::parse(row[1]);
    if (!month) throw Error("panel csv: bad month label: " + row[1]);
    r.month = *month;
    r.joiners = req_int(row[2], "joiners");
    r.age = req_int(row[3], "age");
    r.size = req_int(row[4], "size");
    r.launch_phase = req_int(row[5], "launch_phase");
    r.emotionality = opt_double(row[6]);
    r.sentiment = opt_double(row[7]);
    r.complexity = opt_double(row[8]);
    r.past_activity = req_int(row[9], "past_activity");
    r.group_betweenness = opt_double(row[10]);
    const auto rl = opt_double(row[11]);
    if (!rl) throw Error("panel csv: missing rotating_leadership");
    r.rotating_leadership = *rl;
    r.maturity = opt_double(row[12]);
    for (std::size_t i = 0; i < panel.seasonal_months.size(); ++i) {
      r.seasonal.push_back(req_int(row[kFixed.size() + i], "seasonal dummy"));
    }
    panel.rows.push_back(std::move(r));
  }
  return panel;
}

}  // namespace vcop
