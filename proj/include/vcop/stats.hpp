#pragma once

#include <Eigen/Dense>
#include <optional>

namespace vcop {

// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction.
double incomplete_beta(double a, double b, double x);

// Two-tailed p-value of a Student t statistic with df degrees of freedom,
//   p = I_{df/(df+t^2)}(df/2, 1/2).
double student_t_p(double t, double df);

struct Correlation {
  double r = 0.0;
  double p = 1.0;
  Eigen::Index n = 0;
};

// Product-moment correlation with its two-tailed significance. Undefined
// (nullopt) below three pairs or when either input has zero variance.
std::optional<Correlation> pearson(const Eigen::Ref<const Eigen::VectorXd>& x,
                                   const Eigen::Ref<const Eigen::VectorXd>& y);

struct PrincipalAxis {
  Eigen::VectorXd loadings;          // first eigenvector scaled by sqrt(lambda1)
  double variance_explained = 0.0;   // lambda1 / k
  Eigen::VectorXd scores;            // mean-zero, unit-variance projections
};

// First principal axis of the correlation matrix of the columns of X.
// Eigenvector sign is fixed so loadings[sign_column] >= 0. Throws on a
// constant column (message names its index).
PrincipalAxis principal_axis(const Eigen::Ref<const Eigen::MatrixXd>& X,
                             int sign_column = 0);

}  // namespace vcop
