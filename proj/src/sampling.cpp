#include "kn/sampling.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace kn {

Rng stream_rng(std::uint64_t master, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

CVector gaussian_vector(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

CVector real_gaussian_coeffs(Eigen::Index m, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector c(m);
  for (Eigen::Index i = 0; i < m; ++i) c(i) = normal(rng);
  return c;
}

GroupElement random_group_element(const Representation& rep, Rng& rng, double radius) {
  CMatrix z = rep.lie_element(gaussian_vector(rep.group_dim(), rng));
  const double fro = z.norm();
  if (fro > 0.0) z *= radius / fro;
  return GroupElement(z.exp(), {}, "random exp(Z)");
}

}  // namespace kn
