#pragma once

// Small dense singular-value helpers.

#include <Eigen/Dense>

namespace milnorkit {

/// Singular values in decreasing order.
Eigen::VectorXd singular_values(const Eigen::MatrixXd& a);

/// k-th largest singular value (1-based); 0 when k exceeds min(rows, cols).
double kth_singular_value(const Eigen::MatrixXd& a, std::size_t k);

/// A singular value sigma counts as zero when sigma <= 1e-8 * (sigma_max + 1).
inline constexpr double kRankRelTol = 1e-8;
inline double rank_tolerance(double sigma_max) { return kRankRelTol * (sigma_max + 1.0); }

std::size_t numeric_rank(const Eigen::MatrixXd& a);

}  // namespace milnorkit
