#include "vcop/mlm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include <json.hpp>

#include "vcop/stats.hpp"
#include "vcop/util.hpp"

namespace vcop {
namespace {

constexpr double kThetaMax = 1e6;
constexpr double kThetaTol = 1e-10;

struct Design {
  Eigen::VectorXd y;
  Eigen::MatrixXd X;  // leading intercept column
  std::vector<std::string> effect_names;
  std::vector<Eigen::Index> group_sizes;
  std::size_t n_groups = 0;
};

Design extract_design(const Panel& panel, const ModelSpec& spec) {
  for (const auto& c : spec.covariates) {
    if (c == spec.outcome) throw Error("model outcome also appears as covariate: " + c);
  }

  // Listwise-complete rows, keyed by community to form the grouping.
  std::map<std::string, std::vector<std::pair<double, Eigen::VectorXd>>> groups;
  const auto p = static_cast<Eigen::Index>(spec.covariates.size()) + 1;
  for (const auto& row : panel.rows) {
    const auto y = panel_value(panel, row, spec.outcome);
    if (!y) continue;
    Eigen::VectorXd x(p);
    x(0) = 1.0;
    bool complete = true;
    for (Eigen::Index j = 1; j < p; ++j) {
      const auto v = panel_value(panel, row, spec.covariates[static_cast<std::size_t>(j - 1)]);
      if (!v) {
        complete = false;
        break;
      }
      x(j) = *v;
    }
    if (complete) groups[row.community_id].emplace_back(*y, std::move(x));
  }

  if (groups.size() < 2) {
    throw Error("random-intercept model needs at least two communities with data");
  }
  Eigen::Index n = 0;
  for (const auto& [community, rows] : groups) n += static_cast<Eigen::Index>(rows.size());
  if (n < p + 2) {
    throw Error("too few complete rows (" + std::to_string(n) + ") for " +
                std::to_string(p) + " fixed effects");
  }

  Design d;
  d.y.resize(n);
  d.X.resize(n, p);
  d.effect_names.push_back("constant");
  for (const auto& c : spec.covariates) d.effect_names.push_back(c);
  Eigen::Index at = 0;
  for (const auto& [community, rows] : groups) {
    d.group_sizes.push_back(static_cast<Eigen::Index>(rows.size()));
    for (const auto& [y, x] : rows) {
      d.y(at) = y;
      d.X.row(at) = x;
      ++at;
    }
  }
  d.n_groups = groups.size();
  return d;
}

void check_rank(const Design& d) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(d.X);
  const Eigen::Index rank = qr.rank();
  const Eigen::Index p = d.X.cols();
  if (rank >= p) return;
  std::string names;
  const auto& perm = qr.colsPermutation().indices();
  for (Eigen::Index i = rank; i < p; ++i) {
    if (!names.empty()) names += ", ";
    names += d.effect_names[static_cast<std::size_t>(perm(i))];
  }
  throw Error("rank-deficient design, collinear columns: " + names);
}

// Per-group sufficient statistics; every theta evaluation is O(groups * p^2).
struct GroupStats {
  Eigen::MatrixXd xtx;
  Eigen::VectorXd xty;
  Eigen::VectorXd xsum;
  double ysum = 0.0;
  double yty = 0.0;
  Eigen::Index n = 0;
};

std::vector<GroupStats> group_stats(const Design& d) {
  std::vector<GroupStats> stats;
  stats.reserve(d.group_sizes.size());
  Eigen::Index at = 0;
  for (const Eigen::Index nj : d.group_sizes) {
    const auto Xj = d.X.middleRows(at, nj);
    const auto yj = d.y.segment(at, nj);
    GroupStats s;
    s.xtx = Xj.transpose() * Xj;
    s.xty = Xj.transpose() * yj;
    s.xsum = Xj.colwise().sum();
    s.ysum = yj.sum();
    s.yty = yj.squaredNorm();
    s.n = nj;
    stats.push_back(std::move(s));
    at += nj;
  }
  // Accumulation order must not depend on group labels, or relabeling
  // communities would shift the profile by rounding noise. Sort by content.
  std::sort(stats.begin(), stats.end(), [](const GroupStats& a, const GroupStats& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.ysum != b.ysum) return a.ysum < b.ysum;
    if (a.yty != b.yty) return a.yty < b.yty;
    for (Eigen::Index i = 0; i < a.xsum.size(); ++i) {
      if (a.xsum(i) != b.xsum(i)) return a.xsum(i) < b.xsum(i);
    }
    return false;
  });
  return stats;
}

struct ProfilePoint {
  Eigen::VectorXd beta;
  Eigen::MatrixXd gls_information;  // X' V^-1 X at this theta
  double sigma2 = 0.0;              // profiled residual variance
  double loglik = 0.0;
};

// GLS step at a fixed variance ratio theta. With V_j = I + theta * J,
//   V_j^-1 = I - c_j J,  c_j = theta / (1 + theta n_j),
//   log|V_j| = log(1 + theta n_j),
// so the whole evaluation reduces to the per-group sums above.
ProfilePoint profile_at(const std::vector<GroupStats>& stats, double theta,
                        Eigen::Index n, Eigen::Index p, Criterion criterion) {
  const auto pf = static_cast<double>(p);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(p, p);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(p);
  double yvy = 0.0;
  double logdet_v = 0.0;
  for (const auto& s : stats) {
    const double c = theta / (1.0 + theta * static_cast<double>(s.n));
    A.noalias() += s.xtx - c * (s.xsum * s.xsum.transpose());
    b.noalias() += s.xty - c * s.ysum * s.xsum;
    yvy += s.yty - c * s.ysum * s.ysum;
    logdet_v += std::log1p(theta * static_cast<double>(s.n));
  }

  ProfilePoint point;
  const Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) {
    point.loglik = -std::numeric_limits<double>::infinity();
    return point;
  }
  point.beta = llt.solve(b);
  point.gls_information = A;
  // r' V^-1 r with beta = A^-1 b collapses to yVy - beta'b.
  const double quad = yvy - point.beta.dot(b);
  const auto nf = static_cast<double>(n);
  const double denom = criterion == Criterion::ml ? nf : nf - pf;
  // quad is a difference of like-sized sums, so anything below ~1e4 ulps of
  // yVy is cancellation residue: the model interpolates and the likelihood
  // has no finite maximum.
  if (quad <= yvy * 1e-12 || denom <= 0.0) {
    point.loglik = -std::numeric_limits<double>::infinity();
    return point;
  }
  point.sigma2 = quad / denom;
  const double log_2pi = std::log(2.0 * std::numbers::pi);
  if (criterion == Criterion::ml) {
    point.loglik = -0.5 * (nf * (log_2pi + std::log(point.sigma2)) + logdet_v + nf);
  } else {
    double logdet_a = 0.0;
    for (Eigen::Index i = 0; i < p; ++i) {
      logdet_a += 2.0 * std::log(llt.matrixLLT()(i, i));
    }
    point.loglik = -0.5 * ((nf - pf) * (log_2pi + std::log(point.sigma2)) +
                           logdet_v + logdet_a + (nf - pf));
  }
  return point;
}

}  // namespace

ModelSpec resolve_model_token(const std::string& token) {
  ModelSpec spec;
  spec.name = token;
  if (token == "null") {
    spec.covariates = {};
  } else if (token == "maturity") {
    spec.covariates = {"maturity"};
  } else if (token == "language") {
    spec.covariates = {"sentiment", "complexity", "emotionality"};
  } else if (token == "structure") {
    spec.covariates = {"past_activity", "group_betweenness", "rotating_leadership"};
  } else if (token == "full") {
    spec.covariates = {"complexity", "past_activity", "group_betweenness",
                       "rotating_leadership"};
  } else if (const auto colon = token.find(':'); colon != std::string::npos) {
    spec.name = token.substr(0, colon);
    std::string rest = token.substr(colon + 1);
    std::size_t start = 0;
    while (start <= rest.size()) {
      const std::size_t plus = rest.find('+', start);
      const std::string cov = rest.substr(start, plus == std::string::npos
                                                     ? std::string::npos
                                                     : plus - start);
      if (!cov.empty()) spec.covariates.push_back(cov);
      if (plus == std::string::npos) break;
      start = plus + 1;
    }
    if (spec.name.empty() || spec.covariates.empty()) {
      throw Error("bad model token: " + token);
    }
  } else {
    throw Error("unknown model: " + token +
                " (expected null, maturity, language, structure, full, or name:cov+cov)");
  }
  return spec;
}

ModelFit fit_lmm(const Panel& panel, const ModelSpec& spec, Criterion criterion) {
  const Design d = extract_design(panel, spec);
  check_rank(d);
  const auto stats = group_stats(d);
  const Eigen::Index n = d.y.size();
  const Eigen::Index p = d.X.cols();

  std::vector<std::pair<double, double>> trace;
  int evals = 0;
  auto objective = [&](double theta) {
    const ProfilePoint point = profile_at(stats, theta, n, p, criterion);
    ++evals;
    trace.emplace_back(theta, point.loglik);
    return point.loglik;
  };

  // Golden-section maximization on [0, kThetaMax]; unimodality of the
  // profile holds for this one-ratio model. The tolerance is relative so
  // the loop terminates even when the bracket sits where double spacing
  // exceeds an absolute 1e-10; the iteration cap is a hard stop.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = kThetaMax;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  for (int iter = 0; iter < 200 && hi - lo > kThetaTol * (1.0 + lo); ++iter) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
    }
  }
  double theta = (lo + hi) / 2.0;
  if (objective(0.0) >= objective(theta)) theta = 0.0;

  const ProfilePoint best = profile_at(stats, theta, n, p, criterion);
  if (!std::isfinite(best.loglik)) {
    throw FitError("mixed-model likelihood is degenerate (zero residual variance?)",
                   std::move(trace));
  }

  ModelFit fit;
  fit.name = spec.name;
  fit.outcome = spec.outcome;
  fit.criterion = criterion;
  fit.theta = theta;
  fit.sigma2_resid = best.sigma2;
  fit.sigma2_group = theta * best.sigma2;
  fit.icc = fit.sigma2_group / (fit.sigma2_group + fit.sigma2_resid);
  fit.log_likelihood = best.loglik;
  fit.deviance = -2.0 * best.loglik;
  fit.n_obs = static_cast<std::size_t>(n);
  fit.n_groups = d.n_groups;
  fit.converged = true;
  fit.profile_evals = evals;

  // Standard errors from the GLS information at the optimum.
  const Eigen::MatrixXd cov =
      best.sigma2 * best.gls_information.llt().solve(
                        Eigen::MatrixXd::Identity(p, p));
  const auto df = static_cast<double>(n - p);
  for (Eigen::Index j = 0; j < p; ++j) {
    FixedEffect effect;
    effect.name = d.effect_names[static_cast<std::size_t>(j)];
    effect.estimate = best.beta(j);
    effect.std_error = std::sqrt(cov(j, j));
    effect.t_value = effect.std_error > 0.0 ? effect.estimate / effect.std_error : 0.0;
    effect.p_value = student_t_p(effect.t_value, df);
    fit.fixed.push_back(std::move(effect));
  }
  return fit;
}

double profile_loglik(const Panel& panel, const ModelSpec& spec, double theta,
                      Criterion criterion) {
  const Design d = extract_design(panel, spec);
  return profile_at(group_stats(d), theta, d.y.size(), d.X.cols(), criterion).loglik;
}

double icc(const ModelFit& fit) {
  return fit.sigma2_group / (fit.sigma2_group + fit.sigma2_resid);
}

VarianceChange variance_change(const ModelFit& fit, const ModelFit& null_fit) {
  if (fit.outcome != null_fit.outcome) {
    throw Error("variance change compares fits of different outcomes");
  }
  VarianceChange change;
  if (null_fit.sigma2_group > 0.0) {
    change.level2_pct =
        100.0 * (fit.sigma2_group - null_fit.sigma2_group) / null_fit.sigma2_group;
  }
  if (null_fit.sigma2_resid > 0.0) {
    change.level1_pct =
        100.0 * (fit.sigma2_resid - null_fit.sigma2_resid) / null_fit.sigma2_resid;
  }
  return change;
}

void add_seasonal_covariates(Panel& panel, const std::vector<int>& months) {
  for (const int m : months) {
    seasonal_column_name(m);  // validates the month number
    if (std::find(panel.seasonal_months.begin(), panel.seasonal_months.end(), m) !=
        panel.seasonal_months.end()) {
      continue;
    }
    panel.seasonal_months.push_back(m);
    for (auto& row : panel.rows) {
      row.seasonal.push_back(row.month.month() == m ? 1 : 0);
    }
  }
}

std::string render_fit_json(const ModelFit& fit) {
  nlohmann::json j;
  j["model"] = fit.name;
  j["outcome"] = fit.outcome;
  j["criterion"] = fit.criterion == Criterion::ml ? "ml" : "reml";
  j["coefficients"] = nlohmann::json::array();
  for (const auto& e : fit.fixed) {
    j["coefficients"].push_back({{"name", e.name},
                                 {"estimate", e.estimate},
                                 {"std_error", e.std_error},
                                 {"t_value", e.t_value},
                                 {"p_value", e.p_value}});
  }
  j["variance_level2"] = fit.sigma2_group;
  j["variance_level1"] = fit.sigma2_resid;
  j["icc"] = fit.icc;
  j["theta"] = fit.theta;
  j["log_likelihood"] = fit.log_likelihood;
  j["deviance"] = fit.deviance;
  j["n_obs"] = fit.n_obs;
  j["n_groups"] = fit.n_groups;
  j["converged"] = fit.converged;
  j["profile_evals"] = fit.profile_evals;
  return j.dump(2) + "\n";
}

}  // namespace vcop
