#include <Eigen/Dense>

#include "tagpcp/simulator.hpp"

namespace tagpcp::simulator {

Fit fit_polynomial(const std::vector<double>& xs, const std::vector<double>& ys, int degree) {
  if (xs.size() != ys.size() || xs.size() < static_cast<std::size_t>(degree + 1) || degree < 0)
    fail(ErrorCode::InvalidArgument, "not enough points for the requested fit");
  const Eigen::Index n = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd a(n, degree + 1);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double p = 1;
    for (int d = 0; d <= degree; ++d, p *= xs[static_cast<std::size_t>(i)]) a(i, d) = p;
    b(i) = ys[static_cast<std::size_t>(i)];
  }
  Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  Eigen::VectorXd resid = b - a * c;
  double mean = b.mean();
  double ss_tot = (b.array() - mean).square().sum();
  double ss_res = resid.squaredNorm();
  Fit f;
  f.coeffs.assign(c.data(), c.data() + c.size());
  f.r2 = ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return f;
}

}  // namespace tagpcp::simulator
