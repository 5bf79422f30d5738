#include "kn/core.hpp"

namespace kn {

CMatrix kron_all(const std::vector<CMatrix>& factors) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

CVector flatten_row_major(const CMatrix& m) {
  CVector v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

CMatrix unflatten_row_major(const CVector& v, Eigen::Index rows) {
  if (rows <= 0 || v.size() % rows != 0) throw InputError("unflatten_row_major: size mismatch");
  const Eigen::Index cols = v.size() / rows;
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
  return m;
}

}  // namespace kn
