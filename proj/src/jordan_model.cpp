#include "c0lab/jordan_model.hpp"

#include "c0lab/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <limits>
#include <sstream>

namespace c0lab {

JordanModel::JordanModel(std::vector<InnerFunction> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back().is_one())
    parts_.pop_back();
  for (std::size_t n = 0; n + 1 < parts_.size(); ++n)
    if (!divides(parts_[n + 1], parts_[n]))
      throw HypothesisViolated("Jordan model parts must form a divisibility chain: " +
                               parts_[n + 1].to_string() + " does not divide " +
                               parts_[n].to_string());
}

InnerFunction JordanModel::part(std::size_t n) const {
  return n < parts_.size() ? parts_[n] : InnerFunction();
}

int JordanModel::total_degree() const {
  int s = 0;
  for (const auto& p : parts_)
    s += p.degree();
  return s;
}

std::string JordanModel::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t n = 0; n < parts_.size(); ++n)
    os << (n ? ", " : "") << parts_[n].to_string();
  os << ")";
  return os.str();
}

namespace {

struct KernelSplit {
  int nullity = 0;
  /// Orthonormal frame of the orthogonal complement of the kernel.
  Matrix complement;
};

// Rank from singular values above 1e-8 max(1, sigma_max), rejected unless the
// cut sits in a gap of at least kMinRankGap.
KernelSplit split_kernel(const Matrix& m) {
  const auto n = m.cols();
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto s = svd.singularValues();
  const double tol = linalg::kRankRelTol * std::max(1.0, s(0));
  int r = 0;
  while (r < s.size() && s(r) > tol)
    ++r;
  const double upper = r > 0 ? s(r - 1) : tol;
  const double lower = r < s.size() ? s(r) : tol;
  const double ratio = lower > 0.0 ? upper / lower : std::numeric_limits<double>::infinity();
  if (ratio < kMinRankGap) {
    std::ostringstream os;
    os << "rank decision has singular-value gap " << ratio << " (< " << kMinRankGap << ")";
    throw IllConditioned(os.str());
  }
  return {static_cast<int>(n) - r, svd.matrixV().leftCols(r)};
}

// Ranks of B^0, ..., B^count by the staircase reduction: ker B^{k+1} / ker B
// is ker of the induced map on the quotient by ker B, so only first powers
// are ever rank-decided.
std::vector<int> staircase_ranks(const Matrix& b, int count) {
  const int n = static_cast<int>(b.rows());
  std::vector<int> ranks{n};
  Matrix current = b;
  int kernel = 0;
  for (int k = 1; k <= count; ++k) {
    if (current.rows() > 0) {
      const auto split = split_kernel(current);
      kernel += split.nullity;
      current = split.complement.adjoint() * current * split.complement;
    }
    ranks.push_back(n - kernel);
  }
  return ranks;
}

} // namespace

JordanModel model_from_partitions(
    const std::vector<std::pair<Complex, std::vector<int>>>& partitions) {
  std::size_t count = 0;
  for (const auto& [a, sizes] : partitions)
    count = std::max(count, sizes.size());
  std::vector<InnerFunction> parts;
  for (std::size_t n = 0; n < count; ++n) {
    std::vector<BlaschkeZero> zs;
    for (const auto& [a, sizes] : partitions)
      if (n < sizes.size() && sizes[n] > 0)
        zs.push_back({a, sizes[n]});
    parts.emplace_back(std::move(zs));
  }
  return JordanModel(std::move(parts));
}

JordanModel nilpotent_model(const std::vector<int>& partition) {
  return model_from_partitions({{Complex(0.0, 0.0), partition}});
}

JordanModel jordan_model_of(const Matrix& a, const InnerFunction& theta_ref) {
  if (a.rows() != a.cols())
    throw PreconditionViolated("Jordan model of a non-square matrix");
  const auto n = a.rows();
  if (n == 0)
    return {};
  const double scale = std::max(1.0, linalg::op_norm(a));
  const double residual = linalg::op_norm(apply_inner(theta_ref, a));
  if (residual > kAnnihilationTol * scale) {
    std::ostringstream os;
    os << "||theta(A)|| = " << residual << " exceeds the annihilation gate for theta = "
       << theta_ref.to_string();
    throw NotAnnihilated(os.str());
  }
  const Matrix id = Matrix::Identity(n, n);
  std::vector<std::pair<Complex, std::vector<int>>> partitions;
  int accounted = 0;
  for (const auto& z : theta_ref.zeros()) {
    auto ranks = staircase_ranks(a - z.point * id, z.mult + 1);
    if (ranks[z.mult] != ranks[z.mult + 1])
      throw NotAnnihilated("Jordan chain at a zero exceeds its multiplicity");
    ranks.pop_back();
    auto sizes = exact::partition_from_ranks(ranks);
    for (int s : sizes)
      accounted += s;
    partitions.emplace_back(z.point, std::move(sizes));
  }
  if (accounted != n)
    throw IllConditioned("generalized eigenspaces do not account for the full dimension");
  return model_from_partitions(partitions);
}

InnerFunction minimal_function(const Matrix& a, const InnerFunction& theta_ref) {
  return jordan_model_of(a, theta_ref).part(0);
}

Matrix restriction_matrix(const AmbientSpace& ambient, const SubspaceFrame& m) {
  auto check = is_invariant(ambient.operator_matrix(), m.frame);
  if (!check.invariant)
    throw NotInvariant("subspace is not invariant (residual " + std::to_string(check.residual) + ")");
  return m.frame.adjoint() * ambient.operator_matrix() * m.frame;
}

Matrix compression_matrix(const AmbientSpace& ambient, const SubspaceFrame& m) {
  auto check = is_invariant(ambient.operator_matrix(), m.frame);
  if (!check.invariant)
    throw NotInvariant("subspace is not invariant (residual " + std::to_string(check.residual) + ")");
  const Matrix q = linalg::orthonormal_complement(m.frame);
  return q.adjoint() * ambient.operator_matrix() * q;
}

SubspaceModels subspace_models(const SubspaceFrame& m) {
  const auto& ambient = *m.ambient;
  return {jordan_model_of(restriction_matrix(ambient, m), ambient.theta()),
          jordan_model_of(compression_matrix(ambient, m), ambient.theta())};
}

SubspaceModels exact_subspace_models(const InnerFunction& theta, int copies,
                                     const exact::RationalMatrix& basis) {
  if (!theta.is_z_power())
    throw PreconditionViolated("exact backend needs theta = z^d");
  const auto op = exact::nilpotent_operator(std::vector<int>(copies, theta.degree()));
  if (basis.rows() != op.rows())
    throw AmbientMismatch("basis length does not match the ambient dimension");
  if (basis.cols() > 0 && exact::rank(exact::hconcat(basis, op * basis)) != exact::rank(basis))
    throw NotInvariant("subspace is not invariant (exact check)");
  return {nilpotent_model(exact::restriction_partition(op, basis)),
          nilpotent_model(exact::compression_partition(op, basis))};
}

bool injects(const JordanModel& tau, const JordanModel& psi) {
  const std::size_t n = std::max(tau.size(), psi.size());
  for (std::size_t i = 0; i < n; ++i)
    if (!divides(tau.part(i), psi.part(i)))
      return false;
  return true;
}

std::vector<std::pair<int, int>> product_divisibility_failures(const InnerFunction& theta,
                                                               const JordanModel& phi,
                                                               const JordanModel& psi) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t m = 0; m < phi.size(); ++m)
    for (std::size_t n = 0; n < psi.size(); ++n)
      if (!divides(theta, phi.part(m) * psi.part(n)))
        out.emplace_back(static_cast<int>(m), static_cast<int>(n));
  return out;
}

std::vector<InnerFunction> canonical_divisors(const InnerFunction& theta, const JordanModel& phi,
                                              const JordanModel& psi, int copies,
                                              std::optional<int> interleave_length) {
  const int len = interleave_length.value_or(2 * static_cast<int>(std::max(phi.size(), psi.size())));
  if (len > copies)
    throw ModelTooLong("canonical subspace needs " + std::to_string(len) + " copies, have " +
                       std::to_string(copies));
  if (!divides(phi.part(0), theta) || !divides(psi.part(0), theta))
    throw HypothesisViolated("phi_0 and psi_0 must divide theta");
  std::vector<InnerFunction> gamma;
  gamma.reserve(copies);
  for (int n = 0; n < copies; ++n) {
    if (n >= len)
      gamma.push_back(theta);
    else if (n % 2 == 0)
      gamma.push_back(quotient(theta, phi.part(n / 2)));
    else
      gamma.push_back(psi.part((n - 1) / 2));
  }
  return gamma;
}

SubspaceFrame canonical_subspace(const AmbientSpacePtr& ambient, const JordanModel& phi,
                                 const JordanModel& psi, std::vector<std::pair<int, int>>* warnings,
                                 std::optional<int> interleave_length) {
  auto gamma = canonical_divisors(ambient->theta(), phi, psi, ambient->copies(), interleave_length);
  if (warnings) {
    auto bad = product_divisibility_failures(ambient->theta(), phi, psi);
    warnings->insert(warnings->end(), bad.begin(), bad.end());
  }
  return block_direct_sum(ambient, gamma);
}

SubspaceFrame canonical_subspace(const InnerFunction& theta, const JordanModel& phi,
                                 const JordanModel& psi, int copies) {
  return canonical_subspace(make_ambient(theta, copies), phi, psi);
}

} // namespace c0lab
