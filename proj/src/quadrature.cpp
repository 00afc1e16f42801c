#include "weinstein/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "weinstein/error.hpp"

namespace weinstein {

GaussRule gauss_jacobi(std::size_t n, double a, double b) {
  if (n < 1) throw DomainError("Gauss rule needs at least one node");
  if (!(a > -1.0) || !(b > -1.0)) throw DomainError("Jacobi exponents must exceed -1");

  const double ab = a + b;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = static_cast<double>(i);
    const double s = 2.0 * k + ab;
    diag(i) = (i == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
  }
  for (std::size_t i = 1; i < n; ++i) {
    const double k = static_cast<double>(i);
    const double s = 2.0 * k + ab;
    double beta;
    if (i == 1) {
      beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub(i - 1) = std::sqrt(beta);
  }

  const double mu0 =
      std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = diag(0);
    rule.weights[0] = mu0;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NumericGuardError("Gauss-Jacobi eigensolver did not converge");
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v * v;
  }
  return rule;
}

}  // namespace weinstein
