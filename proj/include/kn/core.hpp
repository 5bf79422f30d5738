#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace kn {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Rejected input: bad arguments, unknown labels, malformed files.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold for the input.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Standard Hermitian product, linear in the first slot and conjugate-linear
/// in the second: <x, y> = sum_k x_k conj(y_k) = y^* x.
template <typename DerivedX, typename DerivedY>
auto inner(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y) {
  return y.dot(x);
}

/// omega(x, y) = Im <x, y>.
template <typename DerivedX, typename DerivedY>
typename DerivedX::RealScalar symplectic_pairing(const Eigen::MatrixBase<DerivedX>& x,
                                                 const Eigen::MatrixBase<DerivedY>& y) {
  if (x.size() != y.size()) throw InputError("symplectic_pairing: dimension mismatch");
  return std::imag(inner(x, y));
}

/// Kronecker product of two dense matrices.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                                               a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Kronecker product of a list of factors, leftmost factor most significant.
CMatrix kron_all(const std::vector<CMatrix>& factors);

/// Row-major flattening of a square matrix into a vector (M4(C) <-> C^16).
CVector flatten_row_major(const CMatrix& m);
CMatrix unflatten_row_major(const CVector& v, Eigen::Index rows);

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

}  // namespace kn
