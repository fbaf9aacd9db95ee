#include <doctest.h>

#include <cstdio>
#include <random>
#include <sstream>

#include "vcop/error.hpp"
#include "vcop/panel.hpp"
#include "vcop/report.hpp"

using namespace vcop;

namespace {

DynamicsRow dyn(const std::string& c, YearMonth m, int joiners, int age, int size) {
  DynamicsRow r;
  r.community_id = c;
  r.month = m;
  r.joiners = joiners;
  r.age = age;
  r.size = size;
  r.launch_phase = age <= 3 || size < 50;
  r.past_activity = joiners * 2;
  r.rotating_leadership = 0.25 * joiners;
  return r;
}

LanguageRow lang(const std::string& c, YearMonth m, std::optional<double> sentiment) {
  LanguageRow r;
  r.community_id = c;
  r.month = m;
  r.sentiment = sentiment;
  if (sentiment) {
    r.emotionality = 0.1;
    r.complexity = 5.0;
  }
  return r;
}

// A complete panel with correlated noise, enough for the statistics paths.
Panel random_panel(int communities, int months, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  Panel panel;
  for (int c = 0; c < communities; ++c) {
    const std::string id = "c" + std::to_string(c);
    int size = 0;
    for (int m = 0; m < months; ++m) {
      PanelRow row;
      row.community_id = id;
      row.month = YearMonth(2010 + m / 12, 1 + m % 12);
      row.joiners = static_cast<int>(rng() % 10);
      size += row.joiners;
      row.age = m + 1;
      row.size = size;
      row.launch_phase = row.age <= 3 ? 1 : 0;  // varies whenever months > 3
      row.emotionality = 0.1 + 0.2 * uniform();
      row.sentiment = 0.4 + 0.3 * uniform();
      row.complexity = 4.0 + uniform() + 0.1 * row.joiners;
      row.past_activity = static_cast<int>(rng() % 40);
      row.group_betweenness = uniform();
      row.rotating_leadership = 2.0 * uniform() + 0.05 * row.joiners;
      panel.rows.push_back(std::move(row));
    }
  }
  return panel;
}

}  // namespace

TEST_SUITE_BEGIN("panel");

TEST_CASE("join produces one row per community-month") {
  std::vector<DynamicsRow> dynamics;
  std::vector<LanguageRow> language;
  std::vector<CentralizationRow> structure;
  for (const std::string c : {"a", "b"}) {
    for (int m = 1; m <= 3; ++m) {
      const YearMonth ym(2010, m);
      dynamics.push_back(dyn(c, ym, m, m, 10 * m));
      language.push_back(lang(c, ym, m == 2 ? std::nullopt : std::optional<double>(0.6)));
      structure.push_back({c, ym, m == 2 ? std::nullopt : std::optional<double>(0.4)});
    }
  }
  const Panel panel = assemble_panel(dynamics, language, structure);
  REQUIRE(panel.rows.size() == 6);
  CHECK(panel.rows[0].community_id == "a");
  CHECK(panel.rows[3].community_id == "b");
  CHECK(panel.rows[1].month == YearMonth(2010, 2));
  // The quiet month keeps its dynamics but has no language or structure.
  CHECK(panel.rows[1].joiners == 2);
  CHECK_FALSE(panel.rows[1].sentiment.has_value());
  CHECK_FALSE(panel.rows[1].group_betweenness.has_value());
  CHECK(panel.rows[2].sentiment == 0.6);
}

TEST_CASE("mismatched community sets are fatal") {
  const YearMonth ym(2010, 1);
  std::vector<DynamicsRow> dynamics = {dyn("a", ym, 1, 1, 10)};
  std::vector<LanguageRow> language = {lang("b", ym, 0.5)};
  std::vector<CentralizationRow> structure = {{"a", ym, 0.5}};
  CHECK_THROWS_WITH_AS(assemble_panel(dynamics, language, structure),
                       "panel inputs disagree on the community set", Error);
}

TEST_CASE("correlation report is symmetric with unit diagonal") {
  const Panel panel = random_panel(6, 20, 42);
  const CorrelationReport report = correlation_report(panel, report_columns());
  const auto k = report.r.rows();
  for (Eigen::Index i = 0; i < k; ++i) {
    CHECK(report.r(i, i) == 1.0);
    for (Eigen::Index j = 0; j < k; ++j) {
      if (std::isfinite(report.r(i, j))) {
        CHECK(report.r(i, j) == report.r(j, i));
        CHECK(report.r(i, j) >= -1.0);
        CHECK(report.r(i, j) <= 1.0);
      }
    }
  }
}

TEST_CASE("listwise correlation matrix is positive semidefinite") {
  const Panel panel = random_panel(8, 30, 7);
  const CorrelationReport report =
      correlation_report(panel, report_columns(), /*listwise=*/true);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(report.r);
  CHECK(solver.eigenvalues().minCoeff() >= -1e-6);
}

TEST_CASE("pairwise correlations use all complete pairs") {
  Panel panel = random_panel(4, 10, 3);
  // Blank sentiment in half the rows; joiners-age pairs stay complete.
  for (std::size_t i = 0; i < panel.rows.size(); i += 2) {
    panel.rows[i].sentiment.reset();
  }
  const std::vector<PanelColumn> cols = {PanelColumn::joiners, PanelColumn::age,
                                         PanelColumn::sentiment};
  const CorrelationReport report = correlation_report(panel, cols);
  CHECK(report.n(0, 1) == 40);
  CHECK(report.n(0, 2) == 20);
  const CorrelationReport listwise = correlation_report(panel, cols, true);
  CHECK(listwise.n(0, 1) == 20);
}

TEST_CASE("maturity factor orients along age and standardizes scores") {
  const Panel panel = random_panel(6, 40, 11);
  const MaturityFactor factor = maturity_factor(panel);
  CHECK(factor.loadings(0) >= 0.0);
  CHECK(factor.variance_explained > 1.0 / 3.0);
  CHECK(factor.variance_explained <= 1.0 + 1e-12);
  double mean = 0.0;
  for (const double s : factor.scores) mean += s;
  mean /= static_cast<double>(factor.scores.size());
  double var = 0.0;
  for (const double s : factor.scores) var += (s - mean) * (s - mean);
  var /= static_cast<double>(factor.scores.size());
  CHECK(mean == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(var == doctest::Approx(1.0).epsilon(1e-9));

  Panel applied = panel;
  apply_maturity(applied, factor);
  CHECK(applied.rows[5].maturity == factor.scores[5]);
}

TEST_CASE("maturity factor names a degenerate variable") {
  Panel panel = random_panel(4, 10, 13);
  for (auto& row : panel.rows) row.launch_phase = 0;
  CHECK_THROWS_WITH_AS(maturity_factor(panel),
                       "maturity factor: variable is constant: launch_phase", Error);
}

TEST_CASE("panel csv round trips exactly") {
  Panel panel = random_panel(3, 8, 5);
  panel.rows[2].sentiment.reset();
  panel.rows[2].emotionality.reset();
  panel.rows[4].group_betweenness.reset();
  apply_maturity(panel, maturity_factor(panel));
  panel.seasonal_months = {12};
  for (auto& row : panel.rows) {
    row.seasonal = {row.month.month() == 12 ? 1 : 0};
  }

  std::ostringstream out;
  write_panel_csv(out, panel);
  std::istringstream in(out.str());
  const Panel reread = read_panel_csv(in);

  REQUIRE(reread.rows.size() == panel.rows.size());
  CHECK(reread.seasonal_months == panel.seasonal_months);
  for (std::size_t i = 0; i < panel.rows.size(); ++i) {
    const PanelRow& a = panel.rows[i];
    const PanelRow& b = reread.rows[i];
    CHECK(a.community_id == b.community_id);
    CHECK(a.month == b.month);
    CHECK(a.joiners == b.joiners);
    CHECK(a.age == b.age);
    CHECK(a.size == b.size);
    CHECK(a.launch_phase == b.launch_phase);
    CHECK(a.emotionality == b.emotionality);
    CHECK(a.sentiment == b.sentiment);
    CHECK(a.complexity == b.complexity);
    CHECK(a.past_activity == b.past_activity);
    CHECK(a.group_betweenness == b.group_betweenness);
    CHECK(a.rotating_leadership == b.rotating_leadership);
    CHECK(a.maturity == b.maturity);
    CHECK(a.seasonal == b.seasonal);
  }

  // Byte-identical on a second serialization.
  std::ostringstream again;
  write_panel_csv(again, reread);
  CHECK(again.str() == out.str());
}

TEST_CASE("panel csv rejects malformed input") {
  std::istringstream empty("");
  CHECK_THROWS_AS(read_panel_csv(empty), Error);
  std::istringstream bad_header("a,b,c\n");
  CHECK_THROWS_AS(read_panel_csv(bad_header), Error);
}

TEST_CASE("maturity factor summary renders the published fixture") {
  MaturityFactor factor;
  factor.loadings << 0.94, 0.93, -0.77;
  factor.variance_explained = 0.80;
  const std::string line = render_maturity_factor(factor);
  CHECK(line == "Maturity factor: loadings .94 age, .93 size, -.77 launch phase; "
                "80% of variance\n");
}

TEST_CASE("published correlation fixture renders with matching stars") {
  // Reference lower triangle at N = 754: value and expected star marks per
  // cell. Star placement must reproduce from the r values alone.
  struct Cell {
    int row;
    int col;
    double r;
    const char* stars;
  };
  const std::vector<Cell> cells = {
      {1, 0, 0.195, "**"}, {2, 0, 0.292, "**"},  {2, 1, 0.889, "**"},
      {3, 0, -0.170, "**"}, {3, 1, -0.575, "**"}, {3, 2, -0.530, "**"},
      {4, 0, -0.080, "*"},  {4, 1, 0.047, ""},    {4, 2, 0.013, ""},
      {4, 3, -0.065, ""},   {5, 0, 0.063, ""},    {5, 1, 0.055, ""},
      {5, 2, 0.105, "**"},  {5, 3, -0.053, ""},   {5, 4, -0.012, ""},
      {6, 0, -0.229, "**"}, {6, 1, -0.244, "**"}, {6, 2, -0.265, "**"},
      {6, 3, 0.129, "**"},  {6, 4, 0.046, ""},    {6, 5, -0.202, "**"},
      {7, 0, 0.300, "**"},  {7, 1, 0.261, "**"},  {7, 2, 0.396, "**"},
      {7, 3, -0.233, "**"}, {7, 4, -0.082, "*"},  {7, 5, 0.053, ""},
      {7, 6, -0.167, "**"}, {8, 0, 0.374, "**"},  {8, 1, 0.147, "**"},
      {8, 2, 0.149, "**"},  {8, 3, -0.045, ""},   {8, 4, -0.056, ""},
      {8, 5, -0.131, "**"}, {8, 6, -0.325, "**"}, {8, 7, 0.171, "**"},
      {9, 0, 0.234, "**"},  {9, 1, 0.086, "*"},   {9, 2, 0.132, "**"},
      {9, 3, -0.104, "**"}, {9, 4, -0.056, ""},   {9, 5, 0.002, ""},
      {9, 6, -0.122, "**"}, {9, 7, 0.219, "**"},  {9, 8, 0.146, "**"},
  };
  for (const auto& cell : cells) {
    CHECK(correlation_stars(cell.r, 754) == cell.stars);
  }

  // And the rendered table carries the same marks cell by cell.
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(10, 10);
  for (const auto& cell : cells) r(cell.row, cell.col) = r(cell.col, cell.row) = cell.r;
  const Eigen::MatrixXi n = Eigen::MatrixXi::Constant(10, 10, 754);
  std::vector<std::string> labels;
  for (const PanelColumn c : report_columns()) labels.emplace_back(column_label(c));
  const std::string table = render_correlation_table(labels, r, n);

  std::istringstream lines(table);
  std::string line;
  std::getline(lines, line);  // header
  std::vector<std::vector<std::string>> tokens;
  while (std::getline(lines, line) && tokens.size() < 10) {
    std::istringstream words(line);
    std::vector<std::string> row;
    std::string word;
    while (words >> word) row.push_back(word);
    tokens.push_back(std::move(row));
  }
  REQUIRE(tokens.size() == 10);
  for (const auto& cell : cells) {
    const auto& row = tokens[static_cast<std::size_t>(cell.row)];
    // Data cells are the last row+1 tokens; the label precedes them.
    const std::string got =
        row[row.size() - static_cast<std::size_t>(cell.row + 1) +
            static_cast<std::size_t>(cell.col)];
    char expected[32];
    std::snprintf(expected, sizeof(expected), "%.3f%s", cell.r, cell.stars);
    std::string want = expected;
    if (want.rfind("0.", 0) == 0) want = want.substr(1);
    if (want.rfind("-0.", 0) == 0) want = "-" + want.substr(2);
    CHECK(got == want);
  }
}

TEST_SUITE_END();
