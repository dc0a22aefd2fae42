#include "superfock/algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace superfock {

double max_abs(const Operator& x) {
  return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
}

double op_norm(const Operator& x) {
  if (x.size() == 0) return 0.0;
  Eigen::JacobiSVD<Operator> svd(x);
  return svd.singularValues()(0);
}

double hermiticity_defect(const Operator& x) {
  return max_abs(Operator(x - x.adjoint()));
}

double projected_defect(const Operator& x, const Operator& p) {
  return max_abs(Operator(p * x * p));
}

Operator exp_i_hermitian(const Operator& h, double s) {
  Eigen::SelfAdjointEigenSolver<Operator> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed");
  const auto& v = es.eigenvectors();
  Eigen::VectorXcd phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    phases(i) = std::exp(Complex(0.0, s * es.eigenvalues()(i)));
  return v * phases.asDiagonal() * v.adjoint();
}

Operator hermitian_function(const Operator& h,
                            const std::function<double(double)>& f) {
  bool diagonal = true;
  for (Eigen::Index j = 0; diagonal && j < h.cols(); ++j)
    for (Eigen::Index i = 0; i < h.rows(); ++i)
      if (i != j && h(i, j) != Complex(0.0, 0.0)) {
        diagonal = false;
        break;
      }
  if (diagonal) {
    Operator out = Operator::Zero(h.rows(), h.cols());
    for (Eigen::Index i = 0; i < h.rows(); ++i) out(i, i) = f(h(i, i).real());
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Operator> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed");
  const auto& v = es.eigenvectors();
  Eigen::VectorXd vals(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) vals(i) = f(es.eigenvalues()(i));
  return v * vals.asDiagonal().toDenseMatrix().cast<Complex>() * v.adjoint();
}

double sinc_sqrt(double lambda, double s) {
  const double l = lambda < 0.0 ? 0.0 : lambda;
  const double r = std::sqrt(l);
  if (r * std::abs(s) < 1e-8) return s * (1.0 - l * s * s / 6.0);
  return std::sin(r * s) / r;
}

double cos_sqrt(double lambda, double s) {
  const double l = lambda < 0.0 ? 0.0 : lambda;
  return std::cos(std::sqrt(l) * s);
}

double proportionality_defect(const Operator& y, const Operator& x) {
  const double nx2 = x.squaredNorm();
  const double ny = y.norm();
  if (ny == 0.0) return 0.0;
  if (nx2 == 0.0) return 1.0;
  const Complex c = (x.conjugate().cwiseProduct(y)).sum() / nx2;
  return (y - c * x).norm() / ny;
}

}  // namespace superfock
