#include "kn/rep_model.hpp"

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

namespace kn {

namespace {

constexpr double kConditionLimit = 1e12;
constexpr double kBracketTol = 1e-10;
constexpr double kIndependenceTol = 1e-8;

const Complex I(0.0, 1.0);

CMatrix pauli(int which) {
  CMatrix p = CMatrix::Zero(2, 2);
  switch (which) {
    case 0:
      p << 0.0, 1.0, 1.0, 0.0;
      break;
    case 1:
      p << 0.0, -I, I, 0.0;
      break;
    default:
      p << 1.0, 0.0, 0.0, -1.0;
      break;
  }
  return p;
}

CMatrix flattened_basis(const Representation& rep) {
  const Eigen::Index n = rep.dim_v();
  CMatrix basis(n * n, rep.group_dim());
  for (Eigen::Index j = 0; j < rep.group_dim(); ++j)
    basis.col(j) = Eigen::Map<const CVector>(rep.generator(j).data(), n * n);
  return basis;
}

}  // namespace

Representation::Representation(std::string label, std::vector<CMatrix> k_basis)
    : label_(std::move(label)), k_basis_(std::move(k_basis)) {
  if (k_basis_.empty()) throw InputError("Representation: empty basis");
  dim_v_ = k_basis_.front().rows();
  if (dim_v_ <= 0) throw InputError("Representation: zero-dimensional module");
  for (const auto& x : k_basis_) {
    if (x.rows() != dim_v_ || x.cols() != dim_v_)
      throw InputError("Representation: basis elements must be square of equal size");
    if ((x + x.adjoint()).cwiseAbs().maxCoeff() != 0.0)
      throw InputError("Representation: basis element is not skew-Hermitian");
  }
}

bool Representation::has_scalar_generator() const {
  const CMatrix scalar = I * CMatrix::Identity(dim_v_, dim_v_);
  for (const auto& x : k_basis_)
    if (x == scalar) return true;
  return false;
}

CMatrix Representation::lie_element(const CVector& coeffs) const {
  if (coeffs.size() != group_dim())
    throw InputError("lie_element: coefficient vector length does not match group_dim");
  CMatrix z = CMatrix::Zero(dim_v_, dim_v_);
  for (Eigen::Index j = 0; j < group_dim(); ++j) z += coeffs(j) * generator(j);
  return z;
}

GroupElement::GroupElement(CMatrix m, std::vector<CMatrix> f, std::string p)
    : matrix(std::move(m)), factors(std::move(f)), provenance(std::move(p)) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0)
    throw InputError("GroupElement: matrix must be square and nonempty");
  if (!matrix.allFinite()) throw InputError("GroupElement: non-finite entries");
  Eigen::JacobiSVD<CMatrix> svd(matrix);
  const RVector& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (!(smin > 0.0) || s(0) / smin > kConditionLimit)
    throw InputError("GroupElement: matrix is singular or too badly conditioned");
}

GroupElement GroupElement::adjoint() const {
  std::vector<CMatrix> adj_factors;
  adj_factors.reserve(factors.size());
  for (const auto& f : factors) adj_factors.push_back(f.adjoint());
  return GroupElement(matrix.adjoint(), std::move(adj_factors),
                      provenance.empty() ? std::string{} : provenance + "*");
}

StateVector::StateVector(CVector e) : entries(std::move(e)) {
  if (!entries.allFinite()) throw InputError("StateVector: non-finite entries");
}

Representation build_sl2_tensor_rep(int k) {
  if (k < 2 || k > 6) throw InputError("build_sl2_tensor_rep: k must be in 2..6");
  const CMatrix id2 = CMatrix::Identity(2, 2);
  std::vector<CMatrix> basis;
  basis.reserve(static_cast<std::size_t>(3 * k));
  for (int pos = 0; pos < k; ++pos) {
    for (int which = 0; which < 3; ++which) {
      std::vector<CMatrix> factors(static_cast<std::size_t>(k), id2);
      factors[static_cast<std::size_t>(pos)] = Complex(0.0, 0.5) * pauli(which);
      basis.push_back(kron_all(factors));
    }
  }
  return Representation("sl2x" + std::to_string(k), std::move(basis));
}

Representation extend_with_scalars(const Representation& rep) {
  if (rep.has_scalar_generator())
    throw InputError("extend_with_scalars: i*Identity already present in " + rep.label());
  auto basis = rep.k_basis();
  basis.push_back(I * CMatrix::Identity(rep.dim_v(), rep.dim_v()));
  return Representation(rep.label() + "+scalars", std::move(basis));
}

std::vector<CMatrix> so4_basis() {
  std::vector<CMatrix> out;
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      CMatrix m = CMatrix::Zero(4, 4);
      m(a, b) = 1.0;
      m(b, a) = -1.0;
      out.push_back(m);
    }
  }
  return out;
}

Representation build_so4_pair_rep() {
  // Row-major vec(A M B) = (A kron B^T) vec(M).
  const CMatrix id4 = CMatrix::Identity(4, 4);
  std::vector<CMatrix> basis;
  for (const auto& a : so4_basis()) basis.push_back(kron(a, id4));
  for (const auto& b : so4_basis()) basis.push_back(kron(id4, CMatrix(-b.transpose())));
  return Representation("so4pair", std::move(basis));
}

CMatrix magic_basis() {
  const double s = 1.0 / std::sqrt(2.0);
  CMatrix q(4, 4);
  q << 1.0, I, 0.0, 0.0,  //
      0.0, 0.0, I, 1.0,   //
      0.0, 0.0, I, -1.0,  //
      1.0, -I, 0.0, 0.0;
  return s * q;
}

CMatrix spin_isomorphism() {
  const CMatrix qh = magic_basis().adjoint();
  return kron(qh, qh);
}

IntertwiningReport spin_intertwining_residual(const std::vector<CVector>& tensors) {
  const Representation qubits = build_sl2_tensor_rep(4);
  const Representation pair = build_so4_pair_rep();
  const CMatrix phi = spin_isomorphism();
  IntertwiningReport report;
  for (Eigen::Index j = 0; j < qubits.group_dim(); ++j) {
    const CMatrix image = phi * qubits.generator(j) * phi.adjoint();
    const SpanProjection proj = project_onto_span(pair, image);
    report.span_residual = std::max(report.span_residual, proj.residual);
    const CMatrix x_prime = pair.lie_element(proj.coeffs);
    for (const auto& t : tensors) {
      if (t.size() != 16) throw InputError("spin_intertwining_residual: tensors must have 16 entries");
      const double r = (phi * (qubits.generator(j) * t) - x_prime * (phi * t)).norm() / t.norm();
      report.action_residual = std::max(report.action_residual, r);
    }
  }
  return report;
}

std::vector<std::string> registry_labels() {
  std::vector<std::string> labels;
  for (int k = 2; k <= 6; ++k) labels.push_back("sl2x" + std::to_string(k));
  labels.push_back("so4pair");
  const auto base = labels;
  for (const auto& l : base) labels.push_back(l + "+scalars");
  return labels;
}

Representation make_representation(const std::string& label) {
  static const std::string suffix = "+scalars";
  if (label.size() > suffix.size() && label.ends_with(suffix))
    return extend_with_scalars(make_representation(label.substr(0, label.size() - suffix.size())));
  if (label == "so4pair") return build_so4_pair_rep();
  if (label.size() == 5 && label.starts_with("sl2x") && label[4] >= '2' && label[4] <= '6')
    return build_sl2_tensor_rep(label[4] - '0');
  throw InputError("unknown representation label: " + label);
}

CMatrix exp_lie(const Representation& rep, const CVector& coeffs) {
  if (!coeffs.allFinite()) throw InputError("exp_action: non-finite coefficients");
  const CMatrix z = rep.lie_element(coeffs);
  return z.exp();
}

StateVector exp_action(const Representation& rep, const CVector& coeffs, const StateVector& v) {
  if (v.size() != rep.dim_v()) throw InputError("exp_action: vector dimension mismatch");
  return StateVector(exp_lie(rep, coeffs) * v.entries);
}

SpanProjection project_onto_span(const Representation& rep, const CMatrix& target) {
  if (target.rows() != rep.dim_v() || target.cols() != rep.dim_v())
    throw InputError("project_onto_span: target has wrong shape");
  const CMatrix basis = flattened_basis(rep);
  const Eigen::Index n2 = rep.dim_v() * rep.dim_v();
  const CVector rhs = Eigen::Map<const CVector>(target.data(), n2);
  SpanProjection out;
  out.coeffs = basis.completeOrthogonalDecomposition().solve(rhs);
  out.residual = (basis * out.coeffs - rhs).norm();
  return out;
}

RepValidation validate_rep(const Representation& rep) {
  RepValidation report;
  for (const auto& x : rep.k_basis())
    report.skew_residual = std::max(report.skew_residual, (x + x.adjoint()).cwiseAbs().maxCoeff());
  report.skew_hermitian = report.skew_residual == 0.0;

  const CMatrix basis = flattened_basis(rep);
  const auto cod = basis.completeOrthogonalDecomposition();
  const Eigen::Index n2 = rep.dim_v() * rep.dim_v();
  for (Eigen::Index a = 0; a < rep.group_dim(); ++a) {
    for (Eigen::Index b = a + 1; b < rep.group_dim(); ++b) {
      const CMatrix br = rep.generator(a) * rep.generator(b) - rep.generator(b) * rep.generator(a);
      const CVector rhs = Eigen::Map<const CVector>(br.data(), n2);
      const CVector c = cod.solve(rhs);
      report.bracket_residual = std::max(report.bracket_residual, (basis * c - rhs).norm());
    }
  }
  report.bracket_closed = report.bracket_residual <= kBracketTol;

  Eigen::JacobiSVD<CMatrix> svd(basis);
  const RVector& s = svd.singularValues();
  report.min_singular_value = s(s.size() - 1);
  report.independent = report.min_singular_value > kIndependenceTol;
  return report;
}

}  // namespace kn
