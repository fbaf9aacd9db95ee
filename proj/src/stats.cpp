#include "vcop/stats.hpp"

#include <cmath>

#include "vcop/error.hpp"

namespace vcop {
namespace {

double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 400;
  constexpr double kEps = 3e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0) throw Error("incomplete_beta requires a, b > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                        a * std::log(x) + b * std::log1p(-x);
  const double bt = std::exp(log_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return bt * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - bt * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_p(double t, double df) {
  if (!std::isfinite(t)) return 0.0;
  return incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

std::optional<Correlation> pearson(const Eigen::Ref<const Eigen::VectorXd>& x,
                                   const Eigen::Ref<const Eigen::VectorXd>& y) {
  const Eigen::Index n = x.size();
  if (n != y.size()) throw Error("pearson: length mismatch");
  if (n < 3) return std::nullopt;
  const Eigen::VectorXd cx = x.array() - x.mean();
  const Eigen::VectorXd cy = y.array() - y.mean();
  const double sxx = cx.squaredNorm();
  const double syy = cy.squaredNorm();
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  const double r = cx.dot(cy) / std::sqrt(sxx * syy);
  const auto df = static_cast<double>(n - 2);
  double p = 0.0;
  if (1.0 - r * r > 0.0) {
    const double t = r * std::sqrt(df / (1.0 - r * r));
    p = student_t_p(t, df);
  }
  return Correlation{r, p, n};
}

PrincipalAxis principal_axis(const Eigen::Ref<const Eigen::MatrixXd>& X,
                             int sign_column) {
  const Eigen::Index n = X.rows();
  const Eigen::Index k = X.cols();
  if (n < 2 || k < 1) throw Error("principal_axis: need at least 2 rows and 1 column");

  Eigen::MatrixXd Z = X.rowwise() - X.colwise().mean();
  for (Eigen::Index j = 0; j < k; ++j) {
    const double sd = std::sqrt(Z.col(j).squaredNorm() / static_cast<double>(n));
    if (sd == 0.0) {
      throw Error("principal_axis: constant column " + std::to_string(j));
    }
    Z.col(j) /= sd;
  }

  const Eigen::MatrixXd corr = Z.transpose() * Z / static_cast<double>(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(corr);
  if (solver.info() != Eigen::Success) throw Error("principal_axis: eigensolver failed");

  // Eigen sorts eigenvalues ascending; the principal axis is the last one.
  const double lambda1 = solver.eigenvalues()(k - 1);
  Eigen::VectorXd v1 = solver.eigenvectors().col(k - 1);
  if (v1(sign_column) < 0.0) v1 = -v1;

  PrincipalAxis axis;
  axis.loadings = v1 * std::sqrt(lambda1);
  axis.variance_explained = lambda1 / static_cast<double>(k);
  // var(Z v1) = v1' corr v1 = lambda1, so this is exactly unit variance.
  axis.scores = Z * v1 / std::sqrt(lambda1);
  return axis;
}

}  // namespace vcop
