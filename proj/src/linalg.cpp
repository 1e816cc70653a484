#include "milnorkit/linalg.hpp"

namespace milnorkit {

Eigen::VectorXd singular_values(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues();
}

double kth_singular_value(const Eigen::MatrixXd& a, std::size_t k) {
  if (k == 0) return 0.0;
  auto s = singular_values(a);
  return k <= static_cast<std::size_t>(s.size()) ? s[static_cast<Eigen::Index>(k - 1)] : 0.0;
}

std::size_t numeric_rank(const Eigen::MatrixXd& a) {
  auto s = singular_values(a);
  if (s.size() == 0) return 0;
  double tol = rank_tolerance(s[0]);
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s[i] > tol;
  return r;
}

}  // namespace milnorkit
