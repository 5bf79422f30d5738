#pragma once

#include <cstdint>
#include <random>

#include "kn/rep_model.hpp"

namespace kn {

using Rng = std::mt19937_64;

/// Independent stream for sample `index` of a run seeded with `master`.
Rng stream_rng(std::uint64_t master, std::uint64_t index);

/// Standard complex Gaussian vector: real and imaginary parts N(0, 1/2).
CVector gaussian_vector(Eigen::Index n, Rng& rng);

/// Real coefficients with N(0,1) entries; exp of the combination lies in K.
CVector real_gaussian_coeffs(Eigen::Index m, Rng& rng);

/// Random element exp(Z) with Z = sum c_j X_j, c complex Gaussian, rescaled so
/// that |Z|_F = radius.
GroupElement random_group_element(const Representation& rep, Rng& rng, double radius);

}  // namespace kn
